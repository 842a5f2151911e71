#ifndef DSTOCH_ERROR_HPP_
#define DSTOCH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace dstoch {

// All library errors carry a stable machine-readable kind (e.g. "RowSumNotOne")
// next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& detail) {
  throw Error(std::move(kind), detail);
}

}  // namespace dstoch

#endif  // DSTOCH_ERROR_HPP_
