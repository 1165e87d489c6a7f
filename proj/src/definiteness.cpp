#include "meetjoin/definiteness.hpp"

#include "meetjoin/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace meetjoin {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::positive_definite: return "positive-definite";
    case Verdict::not_positive_definite: return "not-positive-definite";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::meet_closed_psi: return "meet-closed-psi";
    case Method::join_closed_phi: return "join-closed-phi";
    case Method::meet_superset_psi: return "meet-superset-psi";
    case Method::join_superset_phi: return "join-superset-phi";
    case Method::meet_tree_monotone: return "meet-tree-monotone";
    case Method::join_tree_monotone: return "join-tree-monotone";
    case Method::minor_oracle: return "minor-oracle";
    case Method::float_oracle: return "float-oracle";
  }
  return "?";
}

namespace {

// Solves a x = b exactly; a must be nonsingular.
std::vector<Rational> solve(SymMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) throw InternalConsistencyError("singular block while building a witness");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b[i] -= factor * b[k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

Rational quadratic_form(const SymMatrix& m, const std::vector<Rational>& y) {
  Rational acc = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (y[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (y[j] != 0) row += m(i, j) * y[j];
    acc += y[i] * row;
  }
  return acc;
}

// Fills the failing minor and a Schur-complement witness. Every leading
// part of the principal block on `rows` except the full block is PD.
void refute(Certificate& c, const SymMatrix& m, std::vector<std::size_t> rows) {
  const SymMatrix block = m.permuted(rows);
  const std::size_t k = rows.size();
  c.failing_minor = det_general(block);
  std::vector<Rational> y(m.rows(), Rational(0));
  y[rows.back()] = 1;
  if (k > 1) {
    SymMatrix a = block.leading(k - 1);
    std::vector<Rational> b(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) b[i] = block(i, k - 1);
    const std::vector<Rational> x = solve(std::move(a), std::move(b));
    for (std::size_t i = 0; i + 1 < k; ++i) y[rows[i]] = -x[i];
  }
  c.failing_rows = std::move(rows);
  c.witness = std::move(y);
}

std::vector<std::size_t> iota_rows(std::size_t from, std::size_t to) {
  std::vector<std::size_t> r(to - from);
  std::iota(r.begin(), r.end(), from);
  return r;
}

bool all_positive(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q > 0; });
}

} // namespace

bool strictly_order_preserving(const FinitePoset& p, std::span<const Rational> f) {
  for (Index i = 0; i < p.size(); ++i)
    for (Index j = i + 1; j < p.size(); ++j)
      if (p.less(i, j) && !(f[i] < f[j])) return false;
  return true;
}

bool strictly_order_reversing(const FinitePoset& p, std::span<const Rational> f) {
  for (Index i = 0; i < p.size(); ++i)
    for (Index j = i + 1; j < p.size(); ++j)
      if (p.less(i, j) && !(f[j] < f[i])) return false;
  return true;
}

PDReport pd_oracle(const SymMatrix& m) {
  if (!m.is_symmetric()) throw PreconditionError("definiteness test needs a symmetric matrix");
  PDReport r;
  r.method = Method::minor_oracle;
  r.certificate.minors = leading_principal_minors(m, true);
  const std::size_t k = r.certificate.minors.size();
  if (k == m.rows() && (k == 0 || r.certificate.minors.back() > 0)) {
    r.verdict = Verdict::positive_definite;
  } else {
    r.verdict = Verdict::not_positive_definite;
    refute(r.certificate, m, iota_rows(0, k));
    r.note = "leading principal minor of order " + std::to_string(k) + " is " + to_string(*r.certificate.failing_minor);
  }
  return r;
}

PDReport pd_float(const RealMatrix& m, double tol) {
  if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
  const std::size_t n = m.rows();
  PDReport r;
  r.method = Method::float_oracle;
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(m(i, i)));
  RealMatrix l(n);
  r.verdict = Verdict::positive_definite;
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    r.certificate.float_pivots.push_back(d);
    if (!(d > tol * scale)) {
      r.verdict = Verdict::not_positive_definite;
      r.note = "Cholesky pivot " + std::to_string(j + 1) + " is not above tolerance";
      return r;
    }
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return r;
}

namespace {

PDReport pd_closed(const Subset& s, const PosetFunction& f, ClosureKind kind) {
  PDReport r;
  const bool meet_kind = kind == ClosureKind::meet;
  r.method = meet_kind ? Method::meet_closed_psi : Method::join_closed_phi;
  if (!(meet_kind ? is_meet_closed(s) : is_join_closed(s))) {
    r.verdict = Verdict::not_applicable;
    r.note = std::string("set is not ") + (meet_kind ? "meet" : "join") + " closed";
    return r;
  }
  const InversionVector v = meet_kind ? psi(s, f) : phi(s, f);
  r.certificate.elements = s.members();
  r.certificate.values = v.values;
  if (all_positive(v.values)) {
    r.verdict = Verdict::positive_definite;
    return r;
  }
  r.verdict = Verdict::not_positive_definite;
  const std::size_t n = s.size();
  const SymMatrix m = kind_matrix(s, f, kind);
  // Meet: leading blocks S_1 c S_2 c ... ; join: trailing blocks from the top.
  std::vector<std::size_t> rows;
  if (meet_kind) {
    std::size_t i = 0;
    while (v.values[i] > 0) ++i;
    rows = iota_rows(0, i + 1);
  } else {
    std::size_t i = n - 1;
    while (v.values[i] > 0) --i;
    for (std::size_t t = n; t-- > i;) rows.push_back(t);
  }
  refute(r.certificate, m, rows);
  r.note = std::string(meet_kind ? "Psi" : "Phi") + " is not positive at '" + s.poset().label(s[rows.back()]) + "'";
  return r;
}

} // namespace

PDReport pd_meet_closed(const Subset& s, const PosetFunction& f) { return pd_closed(s, f, ClosureKind::meet); }
PDReport pd_join_closed(const Subset& s, const PosetFunction& f) { return pd_closed(s, f, ClosureKind::join); }

PDReport pd_superset_sufficient(const Subset& s, const Subset& d, const PosetFunction& f, ClosureKind kind) {
  const bool meet_kind = kind == ClosureKind::meet;
  if (&s.poset() != &d.poset()) throw PreconditionError("superset must live in the same poset");
  if (!d.includes(s)) throw NotSupersetError("candidate superset does not contain every member of the set");
  if (!(meet_kind ? is_meet_closed(d) : is_join_closed(d)))
    throw NotClosedError(std::string("candidate superset is not ") + (meet_kind ? "meet" : "join") + " closed");

  PDReport r;
  r.method = meet_kind ? Method::meet_superset_psi : Method::join_superset_phi;
  const InversionVector v = meet_kind ? psi(d, f) : phi(d, f);
  r.certificate.elements = d.members();
  r.certificate.values = v.values;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (v.values[k] <= 0) r.certificate.offending.push_back(d[k]);
  if (r.certificate.offending.empty()) {
    r.verdict = Verdict::positive_definite;
  } else {
    r.verdict = Verdict::not_applicable;
    r.note = "inconclusive: " + std::to_string(r.certificate.offending.size()) + " value(s) of " +
             (meet_kind ? "Psi" : "Phi") + " are not positive";
  }
  return r;
}

PDReport pd_tree(const Subset& s, const PosetFunction& f, ClosureKind kind) {
  const bool meet_kind = kind == ClosureKind::meet;
  PDReport r;
  r.method = meet_kind ? Method::meet_tree_monotone : Method::join_tree_monotone;
  r.verdict = Verdict::not_applicable;

  const ClosureResult cl = meet_kind ? meet_closure(s) : join_closure(s);
  std::vector<Rational> values;
  try {
    values = f.restrict_to(cl.closed);
  } catch (const MissingValueError& e) {
    r.note = e.what();
    return r;
  }
  if (!all_positive(values)) {
    r.note = "f is not positive on the closure";
    return r;
  }
  if (!(meet_kind ? is_wedge_tree_set(s) : is_vee_tree_set(s))) {
    r.note = std::string("set is not a ") + (meet_kind ? "wedge" : "vee") + "-tree set";
    return r;
  }
  if (!(meet_kind ? strictly_order_preserving(cl.closed_poset, values)
                  : strictly_order_reversing(cl.closed_poset, values))) {
    r.note = std::string("f is not strictly order-") + (meet_kind ? "preserving" : "reversing") + " on the closure";
    return r;
  }
  const InversionVector v = meet_kind ? psi(cl.closed, f) : phi(cl.closed, f);
  if (!all_positive(v.values))
    throw InternalConsistencyError("tree hypotheses hold but an inversion value is not positive");
  r.verdict = Verdict::positive_definite;
  r.certificate.elements = cl.closed.members();
  r.certificate.values = v.values;
  return r;
}

bool monotonicity_from_pd(const Subset& s, const PosetFunction& f) {
  if (s.size() == 0) throw PreconditionError("empty set");
  const FinitePoset& p = s.poset();
  for (Index m : s.members())
    if (!p.leq(s[0], m)) throw PreconditionError("first element is not the minimum of the set");
  const FinitePoset own = s.induced();
  if (!is_tree(cover_graph(own), own.size())) throw PreconditionError("Hasse diagram of the set is not a tree");
  if (!pd_oracle(meet_matrix(s, f)).positive_definite())
    throw PreconditionError("meet matrix is not positive definite");
  const std::vector<Rational> values = f.restrict_to(s);
  return all_positive(values) && strictly_order_preserving(own, values);
}

PDReport classify_and_test(const Subset& s, const PosetFunction& f, ClosureKind kind) {
  const bool meet_kind = kind == ClosureKind::meet;
  std::vector<PDReport> attempts;

  PDReport closed = pd_closed(s, f, kind);
  if (closed.verdict != Verdict::not_applicable) return closed;
  attempts.push_back(std::move(closed));

  const Subset closure = (meet_kind ? meet_closure(s) : join_closure(s)).closed;
  std::vector<Subset> supersets{closure};
  try {
    Subset canonical = meet_kind ? down_set(s) : up_set(s);
    if (canonical.members() != closure.members()) supersets.push_back(std::move(canonical));
  } catch (const Error&) {
  }
  for (const Subset& d : supersets) {
    PDReport r;
    try {
      r = pd_superset_sufficient(s, d, f, kind);
    } catch (const Error& e) {
      r.method = meet_kind ? Method::meet_superset_psi : Method::join_superset_phi;
      r.verdict = Verdict::not_applicable;
      r.note = e.what();
    }
    if (r.positive_definite()) {
      r.attempts = std::move(attempts);
      return r;
    }
    attempts.push_back(std::move(r));
  }

  PDReport tree = pd_tree(s, f, kind);
  if (tree.positive_definite()) {
    tree.attempts = std::move(attempts);
    return tree;
  }
  attempts.push_back(std::move(tree));

  PDReport oracle = pd_oracle(kind_matrix(s, f, kind));
  oracle.attempts = std::move(attempts);
  return oracle;
}

bool validate_certificate(const PDReport& r, const Subset& s, const SymMatrix& m, ClosureKind kind) {
  const Certificate& c = r.certificate;
  const FinitePoset& p = s.poset();
  if (m.rows() != s.size() || !m.is_symmetric()) return false;

  if (r.verdict == Verdict::positive_definite) {
    if (r.method == Method::float_oracle) return false;
    if (r.method == Method::minor_oracle) {
      if (c.minors.size() != m.rows()) return false;
      for (std::size_t k = 1; k <= m.rows(); ++k) {
        const Rational d = det_general(m.leading(k));
        if (d != c.minors[k - 1] || d <= 0) return false;
      }
      return true;
    }
    // E diag(values) E^T == m with values > 0; E has full row rank because
    // s is contained in the certificate's element set.
    if (c.elements.size() != c.values.size() || !all_positive(c.values)) return false;
    for (Index x : s.members())
      if (std::find(c.elements.begin(), c.elements.end(), x) == c.elements.end()) return false;
    auto incident = [&](Index row_elem, Index col_elem) {
      return kind == ClosureKind::meet ? p.leq(col_elem, row_elem) : p.leq(row_elem, col_elem);
    };
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) {
        Rational acc = 0;
        for (std::size_t k = 0; k < c.elements.size(); ++k)
          if (incident(s[i], c.elements[k]) && incident(s[j], c.elements[k])) acc += c.values[k];
        if (acc != m(i, j)) return false;
      }
    return true;
  }

  if (r.verdict == Verdict::not_positive_definite) {
    if (r.method == Method::float_oracle) return false;
    if (c.failing_rows.empty() || !c.failing_minor) return false;
    const SymMatrix block = m.permuted(c.failing_rows);
    if (det_general(block) != *c.failing_minor || *c.failing_minor > 0) return false;
    if (c.witness.size() != m.rows()) return false;
    if (std::all_of(c.witness.begin(), c.witness.end(), [](const Rational& q) { return q == 0; })) return false;
    return quadratic_form(m, c.witness) <= 0;
  }

  // not_applicable: offending entries really are non-positive.
  for (Index e : c.offending) {
    auto it = std::find(c.elements.begin(), c.elements.end(), e);
    if (it == c.elements.end() || c.values[static_cast<std::size_t>(it - c.elements.begin())] > 0) return false;
  }
  return true;
}

} // namespace meetjoin
