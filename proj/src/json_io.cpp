#include "dstoch/json_io.hpp"

#include <fstream>

#include "dstoch/error.hpp"

namespace dstoch {

Rational rational_from_json(const json& j) {
  if (j.is_string()) {
    return Rational::parse(j.get<std::string>());
  }
  if (j.is_number_integer()) {
    return Rational(j.get<long>());
  }
  fail("ParseError", "expected a fraction string or integer, got " + j.dump());
}

json rational_to_json(const Rational& r) { return r.str(); }

DSMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) {
    fail("ParseError", "matrix must be a JSON object");
  }
  if (j.contains("averaging")) {
    const json& blocks = j.at("averaging");
    int n = 0;
    for (const auto& block : blocks) {
      for (const auto& idx : block) {
        n = std::max(n, idx.get<int>());
      }
    }
    if (j.contains("n")) {
      n = std::max(n, j.at("n").get<int>());
    }
    return averaging(partition_from_json(blocks, n));
  }
  if (j.contains("permutation")) {
    return permutation_matrix(permutation_from_json(j.at("permutation")));
  }
  if (!j.contains("rows")) {
    fail("ParseError", "matrix object needs \"rows\", \"averaging\" or \"permutation\"");
  }
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j.at("rows")) {
    std::vector<Rational> r;
    for (const auto& cell : row) {
      r.push_back(rational_from_json(cell));
    }
    rows.push_back(std::move(r));
  }
  if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(rows.size())) {
    fail("ParseError", "\"n\" disagrees with the number of rows");
  }
  return ds_from_rows(rows);
}

json matrix_to_json(const DSMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) {
      row.push_back(rational_to_json(m.at(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return json{{"n", m.dim()}, {"rows", std::move(rows)}};
}

SimplexVector vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coords")) {
    fail("ParseError", "vector object needs \"coords\"");
  }
  std::vector<Rational> coords;
  for (const auto& cell : j.at("coords")) {
    coords.push_back(rational_from_json(cell));
  }
  if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(coords.size())) {
    fail("ParseError", "\"n\" disagrees with the number of coordinates");
  }
  return SimplexVector(std::move(coords));
}

json vector_to_json(const SimplexVector& v) {
  json coords = json::array();
  for (int i = 0; i < v.dim(); ++i) {
    coords.push_back(rational_to_json(v.at(i)));
  }
  return json{{"n", v.dim()}, {"coords", std::move(coords)}};
}

Permutation permutation_from_json(const json& j) {
  if (!j.is_array()) {
    fail("ParseError", "permutation must be an array of 1-based images");
  }
  std::vector<int> images;
  for (const auto& idx : j) {
    images.push_back(idx.get<int>() - 1);
  }
  return Permutation(std::move(images));
}

json permutation_to_json(const Permutation& p) {
  json out = json::array();
  for (int j = 0; j < p.dim(); ++j) {
    out.push_back(p.image(j) + 1);
  }
  return out;
}

Partition partition_from_json(const json& j, int n) {
  if (!j.is_array()) {
    fail("ParseError", "partition must be an array of index blocks");
  }
  std::vector<std::vector<int>> blocks;
  for (const auto& block : j) {
    std::vector<int> b;
    for (const auto& idx : block) {
      b.push_back(idx.get<int>() - 1);
    }
    blocks.push_back(std::move(b));
  }
  return Partition(n, std::move(blocks));
}

json partition_to_json(const Partition& p) {
  json out = json::array();
  for (const auto& block : p.blocks()) {
    json b = json::array();
    for (int i : block) {
      b.push_back(i + 1);
    }
    out.push_back(std::move(b));
  }
  return out;
}

GeneratorSet generators_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators")) {
    fail("ParseError", "generator set object needs \"generators\"");
  }
  GeneratorSet out;
  for (const auto& [name, m] : j.at("generators").items()) {
    out.add(name, matrix_from_json(m));
  }
  if (out.empty()) {
    fail("ParseError", "generator set is empty");
  }
  if (j.contains("n") && j.at("n").get<int>() != out.n()) {
    fail("ParseError", "\"n\" disagrees with the generator dimensions");
  }
  return out;
}

json generators_to_json(const GeneratorSet& g) {
  json gens = json::object();
  for (const auto& [name, m] : g) {
    gens[name] = matrix_to_json(m);
  }
  return json{{"n", g.n()}, {"generators", std::move(gens)}};
}

json subset_pair_to_json(const SubsetPair& pair) {
  json x = json::array();
  json y = json::array();
  for (int i : mask_to_indices(pair.X)) {
    x.push_back(i + 1);
  }
  for (int i : mask_to_indices(pair.Y)) {
    y.push_back(i + 1);
  }
  return json{{"X", std::move(x)}, {"Y", std::move(y)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail("IoError", "cannot open \"" + path + "\"");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("ParseError", std::string("invalid JSON in \"") + path + "\": " + e.what());
  }
}

}  // namespace dstoch
