#pragma once

#include "meetjoin/numtheory.hpp"
#include "meetjoin/poset.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meetjoin {

enum class Command { build, classify, check_pd, bounds, closure };
enum class Format { json, csv };

Command parse_command(std::string_view name);
std::string_view to_string(Command c);

/// One pipeline invocation. The input is either a poset file or an integer
/// family; the function is either a value table or a named function.
struct RunConfig {
  Command command = Command::check_pd;

  std::string poset_path;
  std::string family;
  std::vector<Natural> set;
  double alpha = 1.0;

  std::string values_path;
  /// identity, power:A or reciprocal-power:A, applied to integer labels.
  std::string function;

  /// Defaults to the family's kind, or meet for poset files.
  std::optional<ClosureKind> kind;

  Format format = Format::json;
  /// Where to write the report; empty leaves it in RunResult only.
  std::string output;
  bool include_matrix = false;

  double eigen_tol = 1e-10;
  double bound_slack = 1e-9;
  double float_tol = 1e-12;
};

struct RunResult {
  /// 0 success, 1 I/O or parse error, 2 failed precondition or hypothesis.
  int exit_code = 0;
  std::string report;
  std::string diagnostic;
};

RunResult run(const RunConfig& config);

} // namespace meetjoin
