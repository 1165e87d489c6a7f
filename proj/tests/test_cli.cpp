#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "meetjoin/cli.hpp"
#include "meetjoin/error.hpp"
#include "meetjoin/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>

using namespace meetjoin;
using Json = nlohmann::json;

namespace {

const std::string kData = MEETJOIN_TEST_DATA;

RunConfig d30_sample(Command c) {
  RunConfig cfg;
  cfg.command = c;
  cfg.poset_path = kData + "/d30_sample.poset";
  cfg.values_path = kData + "/d30_sample.f";
  return cfg;
}

RunConfig family(Command c, const char* name, std::vector<Natural> set, double alpha = 1.0) {
  RunConfig cfg;
  cfg.command = c;
  cfg.family = name;
  cfg.set = std::move(set);
  cfg.alpha = alpha;
  return cfg;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("meetjoin_test_" + name);
  write_file(path.string(), contents);
  return path.string();
}

} // namespace

TEST_CASE("check-pd on the stored example") {
  RunConfig cfg = d30_sample(Command::check_pd);
  cfg.include_matrix = true;
  const RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.report);
  CHECK(j["verdict"] == "positive-definite");
  CHECK(j["method"] == "minor-oracle");
  CHECK(j["det"] == "1");
  CHECK(j["psi"]["values"] == Json::array({"0", "-1", "3", "-2", "3", "5", "2"}));
  CHECK(j["matrix"] == Json::parse(R"([["5","-1","3"],["-1","2","-2"],["3","-2","3"]])"));
  CHECK(j["certificate_valid"] == true);
}

TEST_CASE("check-pd on power GCD") {
  const RunResult r = run(family(Command::check_pd, "power-gcd", {6, 10, 15}));
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.report);
  CHECK(j["verdict"] == "positive-definite");
  CHECK(j["method"] == "meet-superset-psi");

  const RunResult half = run(family(Command::check_pd, "power-gcd", {4, 6, 9}, 0.5));
  REQUIRE(half.exit_code == 0);
  CHECK(Json::parse(half.report)["method"] == "float-oracle");
}

TEST_CASE("bounds on reciprocal LCM") {
  RunConfig cfg = family(Command::bounds, "reciprocal-power-lcm", {2, 3, 4});
  const RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.report);
  CHECK(j["verified"] == true);
  CHECK(j["all_ok"] == true);
  REQUIRE(j["bounds"].size() == 3);
  CHECK(j["bounds"][0]["bound"].get<double>() == doctest::Approx(0.25));
  CHECK(j["bounds"][1]["bound"].get<double>() == doctest::Approx(2.0 / 3));
  CHECK(j["bounds"][2]["bound"].get<double>() == doctest::Approx(1.5));

  cfg.format = Format::csv;
  const RunResult csv = run(cfg);
  CHECK(csv.report.rfind("k,lambda,bound,ok\n", 0) == 0);
  CHECK(csv.report.find("1,0.0939") != std::string::npos);
}

TEST_CASE("bounds with failing hypotheses exit 2 and still report") {
  const std::string values = temp_file("bumpy.f", "1: 3\n2: 1\n3: 2\n5: 4\n6: 5\n10: 6\n15: 7\n");
  RunConfig cfg = d30_sample(Command::bounds);
  cfg.values_path = values;
  const RunResult r = run(cfg);
  CHECK(r.exit_code == 2);
  CHECK(Json::parse(r.report)["verified"] == false);
}

TEST_CASE("build round trip") {
  RunConfig cfg = d30_sample(Command::build);
  cfg.format = Format::csv;
  const RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  const ParsedMatrixCsv back = parse_matrix_csv(r.report);
  CHECK(back.labels == std::vector<std::string>{"6", "10", "15"});
  const SymMatrix expected = SymMatrix::from_rows({{5, -1, 3}, {-1, 2, -2}, {3, -2, 3}});
  CHECK(back.matrix == expected);

  RunConfig real = family(Command::build, "power-gcd", {4, 6, 9, 12}, 0.5);
  real.format = Format::csv;
  const RunResult rr = run(real);
  REQUIRE(rr.exit_code == 0);
  const ParsedMatrixCsv rb = parse_matrix_csv(rr.report);
  RunConfig json = real;
  json.format = Format::json;
  const Json j = Json::parse(run(json).report);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) CHECK(rb.matrix(i, k).get_d() == doctest::Approx(j["matrix"][i][k].get<double>()).epsilon(1e-15));
}

TEST_CASE("reports are deterministic") {
  for (Command c : {Command::build, Command::classify, Command::check_pd, Command::bounds, Command::closure}) {
    const RunResult a = run(d30_sample(c));
    const RunResult b = run(d30_sample(c));
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.report == b.report);
  }
}

TEST_CASE("classify and closure") {
  const Json c = Json::parse(run(d30_sample(Command::classify)).report)["classification"];
  CHECK(c["meet_closed"] == false);
  CHECK(c["chain"] == false);
  CHECK(c["meet_tree"] == false);
  CHECK(c["meet_closure_size"] == 7);
  CHECK(c["join_closed"].is_null());

  const Json cl = Json::parse(run(d30_sample(Command::closure)).report);
  CHECK(cl["added"] == Json::array({"1", "2", "3", "5"}));
  CHECK(cl["hasse_edges"].size() == 9);

  RunConfig tree;
  tree.command = Command::classify;
  tree.poset_path = kData + "/tree_not_aset.poset";
  const Json t = Json::parse(run(tree).report)["classification"];
  CHECK(t["meet_tree"] == true);
  CHECK(t["A_set"] == false);
}

TEST_CASE("function tables") {
  const PosetInput in = parse_poset_file(kData + "/d30_sample.poset");
  const PosetFunction f = parse_function_table(kData + "/d30_sample.f", in.poset);
  CHECK(f.at(*in.poset->find_label("10")) == 2);

  const std::string empty = temp_file("empty.f", "");
  CHECK_THROWS_AS(parse_function_table(empty, in.set), MissingValueError);
  CHECK_THROWS_WITH_AS(parse_function_table(empty, meet_closure(in.set).closed), doctest::Contains("1, 2, 3, 5"),
                       MissingValueError);

  const std::string dup = temp_file("dup.f", "6: 1\n10: 2\n6: 3\n");
  CHECK_THROWS_WITH_AS(parse_function_table(dup, in.poset), doctest::Contains(":3"), DuplicateError);

  const std::string bad = temp_file("bad.f", "6: 1\n10: x/y\n");
  CHECK_THROWS_WITH_AS(parse_function_table(bad, in.poset), doctest::Contains(":2"), ParseError);

  const std::string unknown = temp_file("unknown.f", "7: 1\n");
  CHECK_THROWS_AS(parse_function_table(unknown, in.poset), ParseError);
}

TEST_CASE("missing closure values exit 2") {
  RunConfig cfg = d30_sample(Command::check_pd);
  cfg.values_path = temp_file("partial.f", "6: 5\n10: 2\n15: 3\n");
  const RunResult r = run(cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.diagnostic.find("1, 2, 3, 5") != std::string::npos);
}

TEST_CASE("poset files") {
  CHECK(parse_poset_text("divisors_of: 30\n").set.size() == 8);
  const PosetInput g = parse_poset_text("generated_by: [6, 10, 15]\n");
  CHECK(g.poset->size() == 8);
  CHECK(g.set.size() == 3);
  CHECK_THROWS_AS(parse_poset_text("n: 2\nrelation: [[1, 2], [2, 1]]\n"), CycleError);
  CHECK_THROWS_WITH_AS(parse_poset_text("n: 2\nrelation:\n  - [1, 3]\n", "f.poset"), doctest::Contains("f.poset:3"),
                       ParseError);
  CHECK_THROWS_AS(parse_poset_text("n: [oops\n"), ParseError);
  CHECK_THROWS_AS(parse_poset_text("n: 2\nlabels: [a, a]\n"), DuplicateError);
}

TEST_CASE("exit codes") {
  RunConfig none;
  CHECK(run(none).exit_code == 1);

  RunConfig missing = d30_sample(Command::check_pd);
  missing.poset_path = kData + "/does-not-exist.poset";
  CHECK(run(missing).exit_code == 1);

  RunConfig both = family(Command::check_pd, "power-gcd", {2, 3});
  both.poset_path = kData + "/d30_sample.poset";
  CHECK(run(both).exit_code == 1);

  RunConfig bad_tol = family(Command::bounds, "power-gcd", {2, 3});
  bad_tol.eigen_tol = 0;
  CHECK(run(bad_tol).exit_code == 1);

  RunConfig no_f;
  no_f.command = Command::check_pd;
  no_f.poset_path = kData + "/d30_sample.poset";
  CHECK(run(no_f).exit_code == 2);

  CHECK_THROWS_AS(parse_command("explode"), ParseError);
}

TEST_CASE("report written to a file") {
  RunConfig cfg = d30_sample(Command::check_pd);
  cfg.output = (std::filesystem::temp_directory_path() / "meetjoin_test_report.json").string();
  const RunResult r = run(cfg);
  REQUIRE(r.exit_code == 0);
  CHECK(read_file(cfg.output) == r.report);
  std::remove(cfg.output.c_str());
}
