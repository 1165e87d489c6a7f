#include "meetjoin/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace meetjoin;

  CLI::App app{"Meet and join matrices on finite posets"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string kind;
  std::string format = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--poset", config.poset_path, "Poset file (YAML)")->check(CLI::ExistingFile);
    sub->add_option("--family", config.family,
                    "power-gcd, reciprocal-power-lcm, gcud-power, min or max");
    sub->add_option("--set", config.set, "Integers for --family")->delimiter(',');
    sub->add_option("--alpha", config.alpha, "Exponent for --family");
    sub->add_option("--values", config.values_path, "Function table (label: value)")->check(CLI::ExistingFile);
    sub->add_option("--function", config.function, "identity, power:A or reciprocal-power:A");
    sub->add_option("--kind", kind, "meet or join")->check(CLI::IsMember({"meet", "join"}));
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", config.output, "Write the report here instead of stdout");
    sub->add_flag("--matrix", config.include_matrix, "Include the matrix in the report");
    sub->add_option("--eigen-tol", config.eigen_tol, "Jacobi off-diagonal tolerance");
    sub->add_option("--bound-slack", config.bound_slack, "Absolute slack for bound comparisons");
    sub->add_option("--float-tol", config.float_tol, "Cholesky pivot tolerance");
  };

  const std::pair<const char*, const char*> commands[] = {
      {"build", "Emit the meet or join matrix"},
      {"classify", "Report closedness, chain, tree-set and A-set flags"},
      {"check-pd", "Decide positive definiteness with a certificate"},
      {"bounds", "Eigenvalues against the k f(x_k) bounds"},
      {"closure", "Meet or join closure with its Hasse diagram"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  config.command = parse_command(app.get_subcommands().front()->get_name());
  if (!kind.empty()) config.kind = kind == "meet" ? ClosureKind::meet : ClosureKind::join;
  config.format = format == "csv" ? Format::csv : Format::json;

  const RunResult result = run(config);
  if (config.output.empty()) std::cout << result.report;
  if (!result.diagnostic.empty()) std::cerr << "meetjoin: " << result.diagnostic << '\n';
  return result.exit_code;
}
