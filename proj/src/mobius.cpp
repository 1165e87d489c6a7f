#include "meetjoin/mobius.hpp"

namespace meetjoin {

RealPosetFunction approx(const PosetFunction& f) {
  std::vector<std::optional<double>> v;
  v.reserve(f.values().size());
  for (const auto& q : f.values()) v.push_back(q ? std::optional<double>(to_double(*q)) : std::nullopt);
  return RealPosetFunction(f.shared_poset(), std::move(v));
}

MobiusTable mobius_table(const FinitePoset& p) {
  const std::size_t n = p.size();
  MobiusTable t{n, std::vector<long long>(n * n, 0)};
  for (Index a = 0; a < n; ++a) {
    t.mu[a * n + a] = 1;
    for (Index b = a + 1; b < n; ++b) {
      if (!p.leq(a, b)) continue;
      long long acc = 0;
      for (Index z = a; z < b; ++z)
        if (p.leq(a, z) && p.leq(z, b)) acc += t.mu[a * n + z];
      t.mu[a * n + b] = -acc;
    }
  }
  return t;
}

MobiusTable zeta_inverse(const FinitePoset& p) {
  const std::size_t n = p.size();
  const std::vector<int> z = p.zeta();
  MobiusTable t{n, std::vector<long long>(n * n, 0)};
  // zeta is unit upper triangular; solve zeta * X = I column by column.
  for (Index j = 0; j < n; ++j)
    for (Index i = n; i-- > 0;) {
      long long acc = (i == j) ? 1 : 0;
      for (Index k = i + 1; k < n; ++k) acc -= z[i * n + k] * t.mu[k * n + j];
      t.mu[i * n + j] = acc;
    }
  return t;
}

namespace {

InversionVector invert(const Subset& d, const PosetFunction& f, ClosureKind kind) {
  const FinitePoset poset = d.induced();
  const std::vector<Rational> values = f.restrict_to(d);
  const MobiusTable mu = mobius_table(poset);
  std::vector<Rational> rec, mob;
  if (kind == ClosureKind::meet) {
    rec = psi_recursive<Rational>(poset, values);
    mob = psi_mobius<Rational>(poset, mu, values);
  } else {
    rec = phi_recursive<Rational>(poset, values);
    mob = phi_mobius<Rational>(poset, mu, values);
  }
  if (rec != mob) throw InternalConsistencyError("recursive and Moebius-sum inversions disagree");
  return InversionVector{kind, d, std::move(rec)};
}

} // namespace

InversionVector psi(const Subset& d, const PosetFunction& f) { return invert(d, f, ClosureKind::meet); }
InversionVector phi(const Subset& b, const PosetFunction& f) { return invert(b, f, ClosureKind::join); }

} // namespace meetjoin
