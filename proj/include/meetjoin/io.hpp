#pragma once

#include "meetjoin/matrix.hpp"
#include "meetjoin/mobius.hpp"
#include "meetjoin/poset.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace meetjoin {

/// A poset read from a file together with the set S it names.
///
/// File format (YAML):
///
///     n: 4
///     relation: [[1, 2], [1, 3], [2, 4], [3, 4]]   # 1-based, a <= b
///     labels: [a, b, c, d]                         # optional
///     set: [b, c]                                  # optional, by label
///
/// or the divisor-lattice shorthands `divisors_of: 30` and
/// `generated_by: [6, 10, 15]` (which defaults `set` to the generators).
struct PosetInput {
  std::shared_ptr<const FinitePoset> poset;
  Subset set;
};

PosetInput parse_poset_text(std::string_view text, const std::string& source = "<text>");
/// Throws IoError when the file cannot be read, ParseError with file:line
/// otherwise.
PosetInput parse_poset_file(const std::string& path);

/// A label -> rational mapping, e.g. `{1: 0, 2: 1, 6: 5, 10: -1/2}`.
/// Unknown labels raise ParseError and repeated labels DuplicateError,
/// both naming file:line. Elements not listed stay without a value.
PosetFunction parse_function_text(std::string_view text, std::shared_ptr<const FinitePoset> poset,
                                  const std::string& source = "<text>");
PosetFunction parse_function_table(const std::string& path, std::shared_ptr<const FinitePoset> poset);
/// Same, then MissingValueError naming every element of `cover` without a value.
PosetFunction parse_function_table(const std::string& path, const Subset& cover);

/// Header row `element,<labels>`, then one row per label; entries "p/q".
std::string matrix_csv(const SymMatrix& m, const std::vector<std::string>& labels);
std::string matrix_csv(const RealMatrix& m, const std::vector<std::string>& labels);

struct ParsedMatrixCsv {
  std::vector<std::string> labels;
  SymMatrix matrix;
};

/// Reads matrix_csv() output back. Decimal entries are read exactly.
ParsedMatrixCsv parse_matrix_csv(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace meetjoin
