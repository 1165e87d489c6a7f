// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "meetjoin/definiteness.hpp"
#include "meetjoin/error.hpp"
#include "meetjoin/io.hpp"
#include "meetjoin/numtheory.hpp"
#include "meetjoin/spectral.hpp"
#include "support/generators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace meetjoin;
using testing::Rng;

namespace {

const std::string kData = MEETJOIN_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit_s = 0;  // 0: no runtime limit
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

// Classical Moebius function by trial division, independent of the library.
int classical_mobius(Natural m) {
  int sign = 1;
  for (Natural p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  return m > 1 ? -sign : sign;
}

std::vector<Natural> random_set(Rng& rng, std::size_t max_n, Natural max_x) {
  return testing::random_integers(rng, testing::uniform(rng, 1, max_n), max_x);
}

// A closed set with at most 8 elements: the closure of a random subset.
Subset small_closed(Rng& rng, ClosureKind kind) {
  for (;;) {
    const auto p = testing::random_lattice(rng);
    const Subset s = testing::random_subset(rng, p, 8);
    Subset c = (kind == ClosureKind::meet ? meet_closure(s) : join_closure(s)).closed;
    if (c.size() <= 8) return c;
  }
}

Outcome criterion1() {
  Outcome o{true, "", 1.0};
  const Natural gens[] = {6, 10, 15};
  const DivisorLattice d = divisor_down_set(gens);
  std::vector<Rational> v;
  for (long x : {0, -1, 3, -2, 5, 2, 3}) v.emplace_back(x);
  const PosetFunction f = PosetFunction::total(d.poset, v);
  const SymMatrix m = meet_matrix(d.subset(gens), f);
  std::vector<std::vector<Rational>> want;
  for (auto row : {std::vector<long>{5, -1, 3}, {-1, 2, -2}, {3, -2, 3}}) want.emplace_back(row.begin(), row.end());
  if (!(m == SymMatrix::from_rows(want))) fail(o, "matrix differs");
  if (!pd_oracle(m).positive_definite()) fail(o, "oracle does not report PD");
  const InversionVector psi_d = psi(Subset::whole(d.poset), f);
  if (psi_d.values[d.index_of(2)] != -1) fail(o, "Psi(2) != -1");
  if (psi_d.values[d.index_of(5)] != -2) fail(o, "Psi(5) != -2");
  o.detail = o.pass ? "matrix exact, oracle PD, Psi(d_2) = -1, Psi(d_4) = -2" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o{true, "", 60.0};
  Rng rng(1001);
  const int per_kind = 1000;
  int pd = 0, total = 0;
  for (ClosureKind kind : {ClosureKind::meet, ClosureKind::join}) {
    for (int i = 0; i < per_kind; ++i) {
      const Subset s = small_closed(rng, kind);
      const PosetFunction f = i % 2 == 0 ? testing::random_function(rng, s.parent())
                                         : testing::function_from_masses(rng, s, kind, testing::coin(rng));
      const PDReport r = kind == ClosureKind::meet ? pd_meet_closed(s, f) : pd_join_closed(s, f);
      const bool oracle = pd_oracle(kind_matrix(s, f, kind)).positive_definite();
      if (r.verdict == Verdict::not_applicable || r.positive_definite() != oracle)
        fail(o, "verdict differs from oracle on instance " + std::to_string(total));
      pd += oracle;
      ++total;
    }
  }
  if (o.pass)
    o.detail = std::to_string(per_kind) + " meet-closed + " + std::to_string(per_kind) + " join-closed, " +
               std::to_string(pd) + " PD, 100% agreement";
  return o;
}

Outcome criterion3() {
  Outcome o{true, "", 60.0};
  Rng rng(1003);
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const auto p = testing::random_lattice(rng);
    const Subset s = testing::random_subset(rng, p, 8);
    const PosetFunction f = testing::random_function(rng, p);
    const SymMatrix mm = meet_matrix(s, f);
    const SymMatrix jm = join_matrix(s, f);
    const Subset mc = meet_closure(s).closed;
    const Subset jc = join_closure(s).closed;
    if (!(factored_meet_matrix(s, mc, f) == mm) || !(factored_meet_matrix(s, down_set(s), f) == mm))
      fail(o, "meet factorization differs on triple " + std::to_string(i));
    if (!(factored_join_matrix(s, jc, f) == jm) || !(factored_join_matrix(s, up_set(s), f) == jm))
      fail(o, "join factorization differs on triple " + std::to_string(i));
    if (det_closed(mc, f, ClosureKind::meet) != det_general(meet_matrix(mc, f)) ||
        det_closed(jc, f, ClosureKind::join) != det_general(join_matrix(jc, f)))
      fail(o, "determinant product differs on triple " + std::to_string(i));
  }
  if (o.pass) o.detail = std::to_string(n) + " triples, factorizations and determinants exact";
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(1004);
  const int n = 1000;
  int trees = 0;
  for (int i = 0; i < n; ++i) {
    const auto p = i % 2 ? testing::random_lattice(rng) : testing::random_tree_poset(rng, testing::uniform(rng, 2, 12));
    const Subset s = testing::random_subset(rng, p, 8);
    const TreeCharacterizations t = tree_characterizations(meet_closure(s).closed_poset);
    if (!t.agree()) fail(o, "characterizations disagree on subset " + std::to_string(i));
    trees += t.hasse_is_tree;
  }
  const PosetInput left = parse_poset_file(kData + "/tree_not_aset.poset");
  const PosetInput right = parse_poset_file(kData + "/aset.poset");
  if (!is_wedge_tree_set(left.set) || is_A_set(left.set)) fail(o, "tree_not_aset.poset misclassified");
  if (!is_A_set(right.set) || !is_wedge_tree_set(right.set)) fail(o, "aset.poset misclassified");
  if (o.pass)
    o.detail = std::to_string(n) + " subsets agree (" + std::to_string(trees) +
               " tree-shaped); stored posets: (tree, not A-set) and (A-set, tree)";
  return o;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(1005);
  const int want = 1000;

  int forward = 0;
  while (forward < want) {
    const auto p = forward % 2 ? testing::random_lattice(rng) : testing::random_tree_poset(rng, testing::uniform(rng, 2, 12));
    const Subset s = testing::random_subset(rng, p, 8);
    if (!is_wedge_tree_set(s)) continue;
    const PosetFunction f = testing::strictly_monotone_positive(rng, p, true);
    if (!pd_oracle(meet_matrix(s, f)).positive_definite()) fail(o, "tree set with monotone f is not PD");
    if (!pd_tree(s, f).positive_definite()) fail(o, "tree test does not report PD");
    ++forward;
  }

  int converse = 0, tries = 0;
  while (converse < want) {
    ++tries;
    const auto p = converse % 2 ? testing::random_lattice(rng) : testing::random_tree_poset(rng, testing::uniform(rng, 2, 12));
    const Subset raw = testing::random_subset(rng, p, 8);
    // Give the set a minimum: the meet of its members.
    std::vector<Index> m = raw.members();
    Index low = m[0];
    for (Index e : m) low = meet(*p, low, e);
    if (std::find(m.begin(), m.end(), low) == m.end()) m.push_back(low);
    const Subset s(p, m);
    const FinitePoset own = s.induced();
    if (!is_tree(cover_graph(own), own.size())) continue;
    PosetFunction f = testing::random_function(rng, p);
    switch (tries % 3) {
      case 0: f = testing::function_from_masses(rng, meet_closure(s).closed, ClosureKind::meet, false); break;
      case 1: f = testing::random_function(rng, p, -2, 6); break;
      default: break;
    }
    if (!pd_oracle(meet_matrix(s, f)).positive_definite()) continue;
    if (!monotonicity_from_pd(s, f)) fail(o, "PD tree instance without strictly order-preserving positive f");
    ++converse;
  }
  if (o.pass)
    o.detail = std::to_string(forward) + " tree sets PD, " + std::to_string(converse) +
               " PD tree-Hasse sets monotone, 0 counterexamples";
  return o;
}

struct SpectralTally {
  int instances = 0;
  int det_checked = 0;
  bool ok = true;
  std::string why;
};

// Criteria 6 and 9 share their instances.
void spectral_instances(SpectralTally& bounds, SpectralTally& self) {
  Rng rng(1006);
  const Family families[] = {Family::power_gcd, Family::gcud_power, Family::power_lcm_reciprocal};
  const double alphas[] = {0.5, 1.0, 2.0};
  for (int i = 0; i < 600; ++i) {
    const Family family = families[i % 3];
    const double alpha = alphas[(i / 3) % 3];
    const std::vector<Natural> x = random_set(rng, 8, 100);
    const NamedMatrix nm = build_named_matrix(family, x, alpha);
    const RealPosetFunction f = real_function(nm.function, nm.lattice);
    const BoundsReport b = nm.kind == ClosureKind::meet ? meet_bounds(nm.set, f) : join_bounds(nm.set, f);
    const RealMatrix m = bounds_matrix(nm.set, f, b);
    const Spectrum sp = eigen_sym(m);
    ++bounds.instances;
    const std::string tag = std::string(to_string(family)) + " alpha=" + std::to_string(alpha) + " #" + std::to_string(i);
    if (!b.verified() && bounds.ok) bounds = {bounds.instances, 0, false, "hypotheses fail for " + tag};
    if (!check_bounds(b, sp, 1e-9).all_ok() && bounds.ok) bounds = {bounds.instances, 0, false, "bound violated for " + tag};

    ++self.instances;
    double trace = 0, sum = 0, prod = 1;
    for (std::size_t k = 0; k < m.rows(); ++k) trace += m(k, k);
    for (double l : sp.eigenvalues) {
      sum += l;
      prod *= l;
    }
    if (std::abs(sum - trace) > 1e-9 * std::abs(trace) && self.ok) {
      self.ok = false;
      self.why = "trace mismatch for " + tag;
    }
    const double lmin = sp.eigenvalues.front(), lmax = sp.eigenvalues.back();
    if (lmin != 0 && lmax / std::abs(lmin) <= 1e8) {
      ++self.det_checked;
      const double det = det_general(exact(m)).get_d();
      if (std::abs(prod - det) > 1e-6 * std::abs(det) && self.ok) {
        self.ok = false;
        self.why = "determinant mismatch for " + tag;
      }
    }
  }
}

SpectralTally g_self;

Outcome criterion6() {
  Outcome o{true, "", 120.0};
  SpectralTally bounds;
  spectral_instances(bounds, g_self);
  o.pass = bounds.ok;
  o.detail = bounds.ok ? std::to_string(bounds.instances) +
                             " instances (power GCD, GCUD, reciprocal LCM; alpha 0.5, 1, 2), all bounds hold"
                       : bounds.why;
  return o;
}

Outcome criterion9() {
  Outcome o;
  o.pass = g_self.ok && g_self.instances > 0;
  o.detail = o.pass ? std::to_string(g_self.instances) + " trace checks, " + std::to_string(g_self.det_checked) +
                          " determinant checks (ratio <= 1e8), all consistent"
                    : (g_self.instances ? g_self.why : "criterion 6 instances missing");
  return o;
}

Outcome criterion7() {
  Outcome o;
  Rng rng(1007);
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    const long alpha = static_cast<long>(testing::uniform(rng, 1, 3));
    const std::vector<Natural> x = random_set(rng, 8, 100);
    const NamedMatrix nm = build_named_matrix(Family::power_gcd, x, static_cast<double>(alpha));
    const PosetFunction f = exact_function(nm.function, nm.lattice);
    const PDReport r = pd_superset_sufficient(nm.set, Subset::whole(nm.lattice.poset), f);
    if (!r.positive_definite() || r.method != Method::meet_superset_psi)
      fail(o, "power GCD set " + std::to_string(i) + " not PD by the superset test");
    if (!validate_certificate(r, nm.set, meet_matrix(nm.set, f))) fail(o, "power GCD certificate rejected");
  }
  for (int i = 0; i < n; ++i) {
    const long alpha = static_cast<long>(testing::uniform(rng, 1, 3));
    const std::vector<Natural> x = random_set(rng, 8, 100);
    const NamedMatrix nm = build_named_matrix(Family::power_lcm_reciprocal, x, static_cast<double>(alpha));
    const PosetFunction f = exact_function(nm.function, nm.lattice);
    const PDReport r = pd_superset_sufficient(nm.set, Subset::whole(nm.lattice.poset), f, ClosureKind::join);
    if (!r.positive_definite() || r.method != Method::join_superset_phi)
      fail(o, "reciprocal LCM set " + std::to_string(i) + " not PD by the superset test");
    if (!validate_certificate(r, nm.set, join_matrix(nm.set, f), ClosureKind::join)) fail(o, "reciprocal LCM certificate rejected");
    const Natural big_l = nm.lattice.values.back();
    for (std::size_t k = 0; k < r.certificate.elements.size(); ++k) {
      const Natural b = nm.lattice.values[r.certificate.elements[k]];
      const Rational closed_form = exact_power(big_l, -alpha) * jordan_totient_exact(alpha, big_l / b);
      if (r.certificate.values[k] != closed_form) fail(o, "Phi(" + std::to_string(b) + ") differs from closed form");
    }
  }
  if (o.pass)
    o.detail = std::to_string(n) + " power GCD sets PD via meet-superset-psi, " + std::to_string(n) +
               " reciprocal LCM sets PD via join-superset-phi, Phi closed form exact";
  return o;
}

Outcome criterion8() {
  Outcome o;
  int checks = 0;
  for (long alpha : {1L, 2L, 3L})
    for (Natural m = 1; m <= 200; ++m) {
      Rational conv(0);
      for (Natural d = 1; d <= m; ++d)
        if (m % d == 0) conv += exact_power(d, alpha) * classical_mobius(m / d);
      if (jordan_totient_exact(alpha, m) != conv)
        fail(o, "J_" + std::to_string(alpha) + "(" + std::to_string(m) + ") differs");
      ++checks;
    }
  if (o.pass) o.detail = std::to_string(checks) + " values (m <= 200, alpha 1, 2, 3) equal exactly";
  return o;
}

} // namespace

int main() {
  const std::pair<int, std::function<Outcome()>> criteria[] = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9},
  };
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && o.limit_s > 0 && secs >= o.limit_s) {
      o.pass = false;
      o.detail = "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(o.limit_s) + " s; " + o.detail;
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs);
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed ? 1 : 0;
}
