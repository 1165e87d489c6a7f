#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "meetjoin/error.hpp"
#include "meetjoin/matrix.hpp"
#include "meetjoin/numtheory.hpp"
#include "meetjoin/spectral.hpp"
#include "support/generators.hpp"

#include <cmath>

using namespace meetjoin;

namespace {

SymMatrix rows(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : r) {
    out.emplace_back();
    for (long x : row) out.back().emplace_back(x);
  }
  return SymMatrix::from_rows(out);
}

struct Example {
  DivisorLattice d;
  PosetFunction f;
  Subset s;
};

Example d30_sample() {
  const Natural gens[] = {6, 10, 15};
  DivisorLattice d = divisor_down_set(gens);
  std::vector<Rational> v;
  for (long x : {0, -1, 3, -2, 5, 2, 3}) v.emplace_back(x);
  PosetFunction f = PosetFunction::total(d.poset, v);
  Subset s = d.subset(gens);
  return {std::move(d), std::move(f), std::move(s)};
}

} // namespace

TEST_CASE("meet matrix of 6, 10, 15") {
  const Example ex = d30_sample();
  const SymMatrix m = meet_matrix(ex.s, ex.f);
  CHECK(m == rows({{5, -1, 3}, {-1, 2, -2}, {3, -2, 3}}));
  CHECK(det_general(m) == 1);
  CHECK(leading_principal_minors(m) == std::vector<Rational>{5, 9, 1});
  CHECK(factored_meet_matrix(ex.s, Subset::whole(ex.d.poset), ex.f) == m);
  CHECK(factored_meet_matrix(ex.s, meet_closure(ex.s).closed, ex.f) == m);
}

TEST_CASE("MIN matrix and the all-ones matrix") {
  const Natural s[] = {1, 2, 3};
  const DivisorLattice c = integer_chain(s);
  const PosetFunction id = exact_function(NamedFunction::identity(), c);
  const SymMatrix m = meet_matrix(Subset::whole(c.poset), id);
  CHECK(m == rows({{1, 1, 1}, {1, 2, 2}, {1, 2, 3}}));
  CHECK(det_closed(Subset::whole(c.poset), id) == 1);
  CHECK(det_general(m) == 1);
  CHECK(factored_meet_matrix(Subset::whole(c.poset), Subset::whole(c.poset), id) == m);

  const PosetFunction one = PosetFunction::total(c.poset, {1, 1, 1});
  CHECK(meet_matrix(Subset::whole(c.poset), one) == rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  const PosetFunction zero = PosetFunction::total(c.poset, {0, 0, 0});
  CHECK(factored_meet_matrix(Subset::whole(c.poset), Subset::whole(c.poset), zero) == SymMatrix(3));
  CHECK(det_closed(Subset::whole(c.poset), zero) == 0);
  CHECK(factored_join_matrix(Subset::whole(c.poset), Subset::whole(c.poset), id) ==
        join_matrix(Subset::whole(c.poset), id));
}

TEST_CASE("incidence matrices") {
  const Example ex = d30_sample();
  const Subset d = Subset::whole(ex.d.poset);
  const IncMatrix e = incidence_matrix(ex.s, d, ClosureKind::meet);
  CHECK(e.rows == 3);
  CHECK(e.cols == 7);
  // row of 6 marks 1, 2, 3, 6
  const std::vector<bool> six{true, true, true, false, true, false, false};
  for (std::size_t j = 0; j < 7; ++j) CHECK(e(0, j) == six[j]);

  const Natural s[] = {1, 2, 3};
  const DivisorLattice c = integer_chain(s);
  const IncMatrix lower = incidence_matrix(Subset::whole(c.poset), Subset::whole(c.poset), ClosureKind::meet);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(lower(i, j) == (j <= i));

  const Subset single(c.poset, {1});
  CHECK(incidence_matrix(single, single, ClosureKind::meet).bits == std::vector<bool>{true});

  CHECK_THROWS_AS(incidence_matrix(ex.s, ex.s, ClosureKind::meet), NotSupersetError);
}

TEST_CASE("determinants") {
  CHECK(det_general(SymMatrix::identity(4)) == 1);
  CHECK(det_general(SymMatrix(3)) == 0);
  CHECK(det_general(rows({{0, 1}, {1, 0}})) == -1);
  CHECK(det_general(rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})) == -1);

  const Example ex = d30_sample();
  const Subset d = Subset::whole(ex.d.poset);
  CHECK(det_closed(d, ex.f) == 0);
  CHECK(det_general(meet_matrix(d, ex.f)) == 0);
  CHECK_THROWS_AS(det_closed(ex.s, ex.f), NotClosedError);

  // a zero pivot in the middle still gives every minor
  const SymMatrix m = rows({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}});
  CHECK(leading_principal_minors(m) == std::vector<Rational>{1, 0, -1});
  CHECK(leading_principal_minors(m, true) == std::vector<Rational>{1, 0});
}

TEST_CASE("random: factorization, determinant formula, permutation similarity") {
  testing::Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_lattice(rng);
    const Subset s = testing::random_subset(rng, p, 9);
    const PosetFunction f = testing::random_function(rng, p);
    const SymMatrix mm = meet_matrix(s, f);
    const SymMatrix jm = join_matrix(s, f);
    CHECK(factored_meet_matrix(s, meet_closure(s).closed, f) == mm);
    CHECK(factored_meet_matrix(s, down_set(s), f) == mm);
    CHECK(factored_join_matrix(s, join_closure(s).closed, f) == jm);
    CHECK(factored_join_matrix(s, up_set(s), f) == jm);

    const Subset mc = meet_closure(s).closed;
    CHECK(det_closed(mc, f, ClosureKind::meet) == det_general(meet_matrix(mc, f)));
    const Subset jc = join_closure(s).closed;
    CHECK(det_closed(jc, f, ClosureKind::join) == det_general(join_matrix(jc, f)));

    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const SymMatrix pm = mm.permuted(order);
    CHECK(det_general(pm) == det_general(mm));
    const auto e1 = eigen_sym(approx(mm)).eigenvalues;
    const auto e2 = eigen_sym(approx(pm)).eigenvalues;
    for (std::size_t k = 0; k < e1.size(); ++k) CHECK(std::abs(e1[k] - e2[k]) <= 1e-9 * std::max(1.0, std::abs(e1[k])));
  }
}
