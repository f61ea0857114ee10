#pragma once

// JSON form of a grid function:
//   {"dim": 2, "support": [{"point": [0, 1], "value": "3/4"}, ...]}
// Values are strings ("p/q", integers, or decimals converted exactly) so no
// float ever touches them.

#include "hlmax/gridfn.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlmax {

class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  /// 1-based; 0 when the problem is not tied to a position.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

GridFunction parse_document(std::string_view text);
GridFunction read_document(const std::string& path);

/// Canonical form: points in lexicographic order, canonical rationals.
std::string write_document(const GridFunction& f);

}  // namespace hlmax
