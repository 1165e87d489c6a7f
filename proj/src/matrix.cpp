#include "meetjoin/matrix.hpp"

#include "meetjoin/error.hpp"

namespace meetjoin {

RealMatrix approx(const SymMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
  return r;
}

SymMatrix exact(const RealMatrix& m) {
  SymMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = from_double(m(i, j));
  return r;
}

SymMatrix meet_matrix(const Subset& s, const PosetFunction& f) {
  return meet_matrix<Rational>(s.poset(), s.members(), f);
}

SymMatrix join_matrix(const Subset& s, const PosetFunction& f) {
  return join_matrix<Rational>(s.poset(), s.members(), f);
}

SymMatrix kind_matrix(const Subset& s, const PosetFunction& f, ClosureKind kind) {
  return kind == ClosureKind::meet ? meet_matrix(s, f) : join_matrix(s, f);
}

IncMatrix incidence_matrix(const Subset& s, const Subset& d, ClosureKind kind) {
  const FinitePoset& p = s.poset();
  if (&d.poset() != &p) throw PreconditionError("incidence matrix needs both sets in the same poset");
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a; b < s.size(); ++b) {
      Index r = kind == ClosureKind::meet ? meet(p, s[a], s[b]) : join(p, s[a], s[b]);
      if (!d.contains(r))
        throw NotSupersetError("set is missing the " + std::string(kind == ClosureKind::meet ? "meet" : "join") +
                               " '" + p.label(r) + "'");
    }
  IncMatrix e{s.size(), d.size(), std::vector<bool>(s.size() * d.size(), false)};
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      e.bits[i * d.size() + j] = kind == ClosureKind::meet ? p.leq(d[j], s[i]) : p.leq(s[i], d[j]);
  return e;
}

SymMatrix factored_matrix(const Subset& s, const Subset& d, const PosetFunction& f, ClosureKind kind) {
  const IncMatrix e = incidence_matrix(s, d, kind);
  const InversionVector diag = kind == ClosureKind::meet ? psi(d, f) : phi(d, f);
  SymMatrix m(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) {
      Rational acc = 0;
      for (std::size_t k = 0; k < d.size(); ++k)
        if (e(i, k) && e(j, k)) acc += diag.values[k];
      m(i, j) = m(j, i) = acc;
    }
  return m;
}

Rational det_closed(const Subset& s, const PosetFunction& f, ClosureKind kind) {
  const bool closed = kind == ClosureKind::meet ? is_meet_closed(s) : is_join_closed(s);
  if (!closed)
    throw NotClosedError(std::string("set is not ") + (kind == ClosureKind::meet ? "meet" : "join") + " closed");
  const InversionVector v = kind == ClosureKind::meet ? psi(s, f) : phi(s, f);
  Rational det = 1;
  for (const auto& x : v.values) det *= x;
  return det;
}

Rational det_general(const SymMatrix& input) {
  if (!input.square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  SymMatrix m = input;
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  Rational det = m(n - 1, n - 1);
  return sign < 0 ? Rational(-det) : det;
}

std::vector<Rational> leading_principal_minors(const SymMatrix& input, bool stop_at_nonpositive) {
  if (!input.square()) throw PreconditionError("minors of a non-square matrix");
  const std::size_t n = input.rows();
  SymMatrix m = input;
  std::vector<Rational> minors;
  minors.reserve(n);
  Rational prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    // After eliminating columns 0..k-1, m(k,k) is the (k+1)-th leading minor.
    minors.push_back(m(k, k));
    if (stop_at_nonpositive && m(k, k) <= 0) break;
    if (m(k, k) == 0) {
      // Elimination cannot continue without pivoting; finish each remaining
      // minor directly.
      for (std::size_t r = k + 2; r <= n; ++r) minors.push_back(det_general(input.leading(r)));
      break;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return minors;
}

} // namespace meetjoin
