#ifndef DSTOCH_JSON_IO_HPP_
#define DSTOCH_JSON_IO_HPP_

#include <string>

#include <json.hpp>

#include "dstoch/core.hpp"

namespace dstoch {

using json = nlohmann::json;

// All external encodings are 1-based and use reduced fraction strings; parsers
// also accept plain JSON integers where a rational is expected.
//
// Matrix:     {"n": 3, "rows": [["1/2","1/2","0"], ...]}
//   shorthand {"averaging": [[1,2],[3]]} or {"permutation": [2,1,3]}
// Vector:     {"n": 3, "coords": ["1/2","1/3","1/6"]}
// Generators: {"n": 3, "generators": {"a": <matrix>, "b": <matrix>}}

Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);

DSMatrix matrix_from_json(const json& j);
json matrix_to_json(const DSMatrix& m);

SimplexVector vector_from_json(const json& j);
json vector_to_json(const SimplexVector& v);

Permutation permutation_from_json(const json& j);
json permutation_to_json(const Permutation& p);

Partition partition_from_json(const json& j, int n);
json partition_to_json(const Partition& p);

GeneratorSet generators_from_json(const json& j);
json generators_to_json(const GeneratorSet& g);

json subset_pair_to_json(const SubsetPair& pair);

// Reads and parses a JSON file; throws Error("ParseError") or Error("IoError").
json load_json_file(const std::string& path);

}  // namespace dstoch

#endif  // DSTOCH_JSON_IO_HPP_
