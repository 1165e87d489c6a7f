#include "meetjoin/cli.hpp"

#include "meetjoin/definiteness.hpp"
#include "meetjoin/error.hpp"
#include "meetjoin/io.hpp"
#include "meetjoin/spectral.hpp"

#include <json.hpp>
#include <yaml-cpp/exceptions.h>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace meetjoin {

using Json = nlohmann::ordered_json;

Command parse_command(std::string_view name) {
  if (name == "build") return Command::build;
  if (name == "classify") return Command::classify;
  if (name == "check-pd") return Command::check_pd;
  if (name == "bounds") return Command::bounds;
  if (name == "closure") return Command::closure;
  throw ParseError("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::build: return "build";
    case Command::classify: return "classify";
    case Command::check_pd: return "check-pd";
    case Command::bounds: return "bounds";
    case Command::closure: return "closure";
  }
  return "?";
}

namespace {

std::string_view kind_name(ClosureKind k) { return k == ClosureKind::meet ? "meet" : "join"; }

struct Problem {
  std::shared_ptr<const FinitePoset> poset;
  Subset set;
  ClosureKind kind = ClosureKind::meet;
  std::optional<PosetFunction> exact;
  std::optional<RealPosetFunction> real;
  Json input;
};

Natural label_value(const FinitePoset& p, Index i) {
  const std::string& l = p.label(i);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(l, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != l.size() || v == 0 || l.front() == '-')
    throw ParseError("named functions need positive integer labels; element '" + l + "' is not one");
  return v;
}

NamedFunction parse_named_function(const std::string& spec) {
  if (spec == "identity") return NamedFunction::identity();
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  if (colon == std::string::npos) throw ParseError("function '" + spec + "' needs an exponent, e.g. power:2");
  double alpha = 0.0;
  try {
    std::size_t used = 0;
    alpha = std::stod(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw ParseError("");
  } catch (const std::exception&) {
    throw ParseError("bad exponent in function '" + spec + "'");
  }
  if (name == "power") return NamedFunction::power(alpha);
  if (name == "reciprocal-power") return NamedFunction::reciprocal_power(alpha);
  throw ParseError("unknown function '" + name + "'");
}

void bind_named(Problem& pr, const NamedFunction& f) {
  const std::size_t n = pr.poset->size();
  std::vector<std::optional<double>> real(n);
  std::vector<std::optional<Rational>> exact(n);
  for (Index i = 0; i < n; ++i) {
    const Natural m = label_value(*pr.poset, i);
    real[i] = f.value(m);
    if (f.is_exact()) exact[i] = *f.exact_value(m);
  }
  pr.real.emplace(pr.poset, std::move(real));
  if (f.is_exact()) pr.exact.emplace(pr.poset, std::move(exact));
}

Problem load_problem(const RunConfig& c) {
  const bool from_file = !c.poset_path.empty();
  const bool from_family = !c.family.empty();
  if (from_file == from_family) throw ParseError("give exactly one input: --poset FILE or --family NAME --set ...");
  if (!c.values_path.empty() && !c.function.empty()) throw ParseError("give --values or --function, not both");

  Problem pr{nullptr, Subset::whole(std::make_shared<const FinitePoset>()), ClosureKind::meet, {}, {}, {}};
  if (from_family) {
    if (!c.values_path.empty() || !c.function.empty())
      throw ParseError("a family fixes its function; --values and --function apply to --poset input");
    if (c.set.empty()) throw ParseError("--family needs --set");
    const Family family = parse_family(c.family);
    NamedMatrix nm = build_named_matrix(family, c.set, c.alpha);
    pr.poset = nm.lattice.poset;
    pr.set = nm.set;
    pr.kind = c.kind.value_or(nm.kind);
    pr.input = Json{{"family", std::string(to_string(family))}, {"set", c.set}, {"alpha", c.alpha}};
    if (nm.function.is_exact()) {
      pr.exact = exact_function(nm.function, nm.lattice);
      pr.real = approx(*pr.exact);
    } else {
      pr.real = real_function(nm.function, nm.lattice);
    }
    return pr;
  }

  PosetInput in = parse_poset_file(c.poset_path);
  pr.poset = in.poset;
  pr.set = in.set;
  pr.kind = c.kind.value_or(ClosureKind::meet);
  pr.input = Json{{"poset", c.poset_path}};
  if (!c.values_path.empty()) {
    pr.exact = parse_function_table(c.values_path, pr.poset);
    pr.real = approx(*pr.exact);
    pr.input["values"] = c.values_path;
  } else if (!c.function.empty()) {
    bind_named(pr, parse_named_function(c.function));
    pr.input["function"] = c.function;
  }
  return pr;
}

ClosureResult closure_of(const Problem& pr) {
  return pr.kind == ClosureKind::meet ? meet_closure(pr.set) : join_closure(pr.set);
}

/// Every value the closure needs, with the file named on failure.
void require_closure_values(const Problem& pr, const ClosureResult& cl, const std::string& source) {
  try {
    if (pr.exact) (void)pr.exact->restrict_to(cl.closed);
    else if (pr.real) (void)pr.real->restrict_to(cl.closed);
  } catch (const MissingValueError& e) {
    throw MissingValueError(source.empty() ? e.what() : source + ": " + e.what());
  }
}

const RealPosetFunction& need_real(const Problem& pr) {
  if (!pr.real) throw PreconditionError("no function given; use --values FILE or --function NAME");
  return *pr.real;
}

Json labels_of(const FinitePoset& p, std::span<const Index> elems) {
  Json out = Json::array();
  for (Index e : elems) out.push_back(p.label(e));
  return out;
}

Json rationals(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

template <class T>
Json matrix_json(const DenseMatrix<T>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Rational>) row.push_back(to_string(m(i, j)));
      else row.push_back(m(i, j));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Json header(const RunConfig& c, const Problem& pr) {
  return Json{{"command", std::string(to_string(c.command))},
              {"input", pr.input},
              {"kind", std::string(kind_name(pr.kind))},
              {"elements", labels_of(*pr.poset, pr.set.members())}};
}

std::string csv_line(std::initializer_list<std::string> fields) {
  std::string out;
  for (const auto& f : fields) out += (out.empty() ? "" : ",") + f;
  return out + "\n";
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Output {
  int exit_code = 0;
  std::string text;
  std::string diagnostic;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Output do_build(const RunConfig& c, const Problem& pr) {
  const std::vector<std::string> labels = labels_of(*pr.poset, pr.set.members()).get<std::vector<std::string>>();
  if (pr.exact) {
    const SymMatrix m = kind_matrix(pr.set, *pr.exact, pr.kind);
    if (c.format == Format::csv) return {0, matrix_csv(m, labels), {}};
    Json j = header(c, pr);
    j["exact"] = true;
    j["matrix"] = matrix_json(m);
    j["det"] = to_string(det_general(m));
    return {0, dump(j), {}};
  }
  const RealPosetFunction& f = need_real(pr);
  const RealMatrix m = pr.kind == ClosureKind::meet ? meet_matrix<double>(*pr.poset, pr.set.members(), f)
                                                    : join_matrix<double>(*pr.poset, pr.set.members(), f);
  if (c.format == Format::csv) return {0, matrix_csv(m, labels), {}};
  Json j = header(c, pr);
  j["exact"] = false;
  j["matrix"] = matrix_json(m);
  return {0, dump(j), {}};
}

template <class F>
Json flag(F&& f) {
  try {
    return f();
  } catch (const NoMeetError&) {
    return nullptr;
  }
}

Output do_classify(const RunConfig& c, const Problem& pr) {
  const Subset& s = pr.set;
  Json flags;
  flags["meet_closed"] = flag([&] { return Json(is_meet_closed(s)); });
  flags["join_closed"] = flag([&] { return Json(is_join_closed(s)); });
  flags["chain"] = is_chain(s);
  flags["meet_tree"] = flag([&] { return Json(is_wedge_tree_set(s)); });
  flags["join_tree"] = flag([&] { return Json(is_vee_tree_set(s)); });
  flags["A_set"] = flag([&] { return Json(is_A_set(s)); });
  flags["dual_A_set"] = flag([&] { return Json(is_dual_A_set(s)); });
  flags["meet_closure_size"] = flag([&] { return Json(meet_closure(s).closed.size()); });
  flags["join_closure_size"] = flag([&] { return Json(join_closure(s).closed.size()); });

  if (c.format == Format::csv) {
    std::string out = "property,value\n";
    for (const auto& [k, v] : flags.items()) out += csv_line({k, v.is_null() ? "" : v.dump()});
    return {0, out, {}};
  }
  Json j = header(c, pr);
  j["classification"] = flags;
  return {0, dump(j), {}};
}

Output do_closure(const RunConfig& c, const Problem& pr) {
  const ClosureResult cl = closure_of(pr);
  const FinitePoset& p = *pr.poset;
  std::vector<Index> added;
  for (Index e : cl.closed.members())
    if (!pr.set.contains(e)) added.push_back(e);

  if (c.format == Format::csv) {
    std::string out = "element,in_set\n";
    for (Index e : cl.closed.members()) out += csv_line({p.label(e), pr.set.contains(e) ? "true" : "false"});
    return {0, out, {}};
  }
  Json edges = Json::array();
  for (const auto& [a, b] : cover_graph(cl.closed_poset).edges)
    edges.push_back(Json::array({cl.closed_poset.label(a), cl.closed_poset.label(b)}));
  Json j = header(c, pr);
  j["closure"] = labels_of(p, cl.closed.members());
  j["added"] = labels_of(p, added);
  j["size"] = cl.closed.size();
  j["hasse_edges"] = edges;
  j["hasse_is_tree"] = is_tree(cover_graph(cl.closed_poset), cl.closed_poset.size());
  return {0, dump(j), {}};
}

Json certificate_json(const Certificate& cert, const FinitePoset& p, const Subset& s) {
  Json j = Json::object();
  if (!cert.elements.empty()) {
    j["elements"] = labels_of(p, cert.elements);
    j["values"] = rationals(cert.values);
  }
  if (!cert.offending.empty()) j["offending"] = labels_of(p, cert.offending);
  if (!cert.minors.empty()) j["minors"] = rationals(cert.minors);
  if (!cert.failing_rows.empty()) {
    Json rows = Json::array();
    for (std::size_t r : cert.failing_rows) rows.push_back(p.label(s[r]));
    j["failing_rows"] = rows;
  }
  if (cert.failing_minor) j["failing_minor"] = to_string(*cert.failing_minor);
  if (!cert.witness.empty()) j["witness"] = rationals(cert.witness);
  if (!cert.float_pivots.empty()) j["float_pivots"] = cert.float_pivots;
  return j;
}

Json attempt_json(const PDReport& r) {
  return Json{{"method", std::string(to_string(r.method))},
              {"verdict", std::string(to_string(r.verdict))},
              {"note", r.note}};
}

Output do_check_pd(const RunConfig& c, const Problem& pr) {
  const ClosureResult cl = closure_of(pr);
  require_closure_values(pr, cl, c.values_path);
  Json j = header(c, pr);

  if (!pr.exact) {
    const RealPosetFunction& f = need_real(pr);
    const RealMatrix m = pr.kind == ClosureKind::meet ? meet_matrix<double>(*pr.poset, pr.set.members(), f)
                                                      : join_matrix<double>(*pr.poset, pr.set.members(), f);
    const PDReport r = pd_float(m, c.float_tol);
    const Spectrum sp = eigen_sym(m, c.eigen_tol);
    if (c.format == Format::csv) {
      std::string out = "k,pivot\n";
      for (std::size_t k = 0; k < r.certificate.float_pivots.size(); ++k)
        out += csv_line({std::to_string(k + 1), num(r.certificate.float_pivots[k])});
      return {0, out, {}};
    }
    if (c.include_matrix) j["matrix"] = matrix_json(m);
    j["verdict"] = std::string(to_string(r.verdict));
    j["method"] = std::string(to_string(r.method));
    j["note"] = r.note;
    j["tolerance"] = c.float_tol;
    j["certificate"] = certificate_json(r.certificate, *pr.poset, pr.set);
    j["eigenvalues"] = sp.eigenvalues;
    return {0, dump(j), {}};
  }

  const PosetFunction& f = *pr.exact;
  const SymMatrix m = kind_matrix(pr.set, f, pr.kind);
  const PDReport r = classify_and_test(pr.set, f, pr.kind);
  const bool valid = validate_certificate(r, pr.set, m, pr.kind);
  const InversionVector inv = pr.kind == ClosureKind::meet ? psi(cl.closed, f) : phi(cl.closed, f);

  if (c.format == Format::csv) {
    std::string out = std::string("element,") + (pr.kind == ClosureKind::meet ? "psi" : "phi") + "\n";
    for (std::size_t k = 0; k < inv.values.size(); ++k)
      out += csv_line({pr.poset->label(inv.over[k]), to_string(inv.values[k])});
    return {0, out, {}};
  }
  if (c.include_matrix) j["matrix"] = matrix_json(m);
  j["verdict"] = std::string(to_string(r.verdict));
  j["method"] = std::string(to_string(r.method));
  j["note"] = r.note;
  j["certificate"] = certificate_json(r.certificate, *pr.poset, pr.set);
  j["certificate_valid"] = valid;
  Json attempts = Json::array();
  for (const auto& a : r.attempts) attempts.push_back(attempt_json(a));
  j["attempts"] = attempts;
  j[pr.kind == ClosureKind::meet ? "psi" : "phi"] =
      Json{{"over", labels_of(*pr.poset, inv.over.members())}, {"values", rationals(inv.values)}};
  j["det"] = to_string(det_general(m));
  if (!valid) return {2, dump(j), "certificate failed independent validation"};
  return {0, dump(j), {}};
}

Output do_bounds(const RunConfig& c, const Problem& pr) {
  const RealPosetFunction& f = need_real(pr);
  const BoundsReport b = pr.kind == ClosureKind::meet ? meet_bounds(pr.set, f) : join_bounds(pr.set, f);
  const RealMatrix m = bounds_matrix(pr.set, f, b);
  const Spectrum sp = eigen_sym(m, c.eigen_tol);
  const BoundsCheck check = check_bounds(b, sp, c.bound_slack);

  Output out;
  if (!b.verified()) {
    out.exit_code = 2;
    out.diagnostic = "bound hypotheses do not hold; bounds are reported unverified";
  } else if (!check.all_ok()) {
    out.exit_code = 2;
    out.diagnostic = "an eigenvalue exceeds its bound";
  }

  if (c.format == Format::csv) {
    out.text = "k,lambda,bound,ok\n";
    for (const auto& row : check.rows)
      out.text += csv_line({std::to_string(row.k), num(row.lambda), num(row.bound), row.ok ? "true" : "false"});
    return out;
  }
  Json j = header(c, pr);
  j["order"] = labels_of(*pr.poset, b.reindexing.order);
  j["permutation"] = b.reindexing.permutation;
  if (c.include_matrix) j["matrix"] = matrix_json(m);
  j["hypotheses"] = Json{{"nonnegative", b.hypotheses.nonnegative},
                         {"monotone_on_closure", b.hypotheses.monotone_on_closure},
                         {"index_monotone", b.hypotheses.index_monotone},
                         {"linear_extension", b.hypotheses.linear_extension}};
  j["verified"] = b.verified();
  j["eigenvalues"] = sp.eigenvalues;
  j["residual"] = sp.residual;
  j["sweeps"] = sp.sweeps;
  Json rows = Json::array();
  for (const auto& row : check.rows)
    rows.push_back(Json{{"k", row.k}, {"lambda", row.lambda}, {"bound", row.bound}, {"ok", row.ok}});
  j["bounds"] = rows;
  j["lower"] = Json{{"value", check.lower_max}, {"lambda_max", check.lambda_max}, {"ok", check.lower_ok}};
  j["all_ok"] = check.all_ok();
  out.text = dump(j);
  return out;
}

Output dispatch(const RunConfig& c) {
  if (!(c.eigen_tol > 0) || !(c.bound_slack >= 0) || !(c.float_tol > 0))
    throw ParseError("tolerances must be positive");
  const Problem pr = load_problem(c);
  switch (c.command) {
    case Command::build: return do_build(c, pr);
    case Command::classify: return do_classify(c, pr);
    case Command::check_pd: return do_check_pd(c, pr);
    case Command::bounds: return do_bounds(c, pr);
    case Command::closure: return do_closure(c, pr);
  }
  throw ParseError("unknown command");
}

} // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    Output out = dispatch(config);
    result.exit_code = out.exit_code;
    result.report = std::move(out.text);
    result.diagnostic = std::move(out.diagnostic);
    if (!config.output.empty()) write_file(config.output, result.report);
  } catch (const ParseError& e) {
    result = {1, {}, e.what()};
  } catch (const IoError& e) {
    result = {1, {}, e.what()};
  } catch (const DuplicateError& e) {
    result = {1, {}, e.what()};
  } catch (const Error& e) {
    result = {2, {}, e.what()};
  } catch (const YAML::Exception& e) {
    result = {1, {}, e.what()};
  }
  return result;
}

} // namespace meetjoin
