#include "meetjoin/spectral.hpp"

#include "meetjoin/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace meetjoin {

namespace {

double frobenius(const RealMatrix& a, bool off_diagonal_only) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!off_diagonal_only || i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

} // namespace

Spectrum eigen_sym(const RealMatrix& m, double tol, std::size_t max_sweeps) {
  if (!(tol > 0)) throw PreconditionError("eigen_sym: tolerance must be positive");
  if (!m.square()) throw PreconditionError("eigen_sym: matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != m(j, i)) throw PreconditionError("eigen_sym: matrix is not symmetric");

  const std::size_t n = m.rows();
  RealMatrix a = m;
  RealMatrix v = RealMatrix::identity(n);
  const double norm = frobenius(m, false);
  const double target = tol * norm;

  Spectrum out;
  while (frobenius(a, true) > target) {
    if (out.sweeps == max_sweeps)
      throw ConvergenceError("Jacobi iteration did not converge in " + std::to_string(max_sweeps) + " sweeps");
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  out.eigenvalues.reserve(n);
  for (std::size_t k : idx) {
    const double lambda = a(k, k);
    out.eigenvalues.push_back(lambda);
    for (std::size_t i = 0; i < n; ++i) {
      double r = -lambda * v(i, k);
      for (std::size_t j = 0; j < n; ++j) r += m(i, j) * v(j, k);
      out.residual = std::max(out.residual, std::abs(r));
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> stable_order(const std::vector<double>& values, Direction direction) {
  std::vector<std::size_t> perm(values.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return direction == Direction::increasing ? values[a] < values[b] : values[a] > values[b];
  });
  return perm;
}

// Non-strict monotonicity over a closure.
bool monotone_on(const FinitePoset& p, std::span<const double> f, Direction direction) {
  for (Index i = 0; i < p.size(); ++i)
    for (Index j = i + 1; j < p.size(); ++j)
      if (p.less(i, j) && (direction == Direction::increasing ? f[i] > f[j] : f[i] < f[j])) return false;
  return true;
}

bool closure_monotone(const Subset& s, const RealPosetFunction& f, Direction direction) {
  const ClosureResult cl = direction == Direction::increasing ? meet_closure(s) : join_closure(s);
  const std::vector<double> values = f.restrict_to(cl.closed);
  return monotone_on(cl.closed_poset, values, direction);
}

Reindexing apply_order(const Subset& s, const std::vector<std::size_t>& perm) {
  Reindexing r;
  r.permutation = perm;
  for (std::size_t k : perm) r.order.push_back(s[k]);
  return r;
}

BoundsReport bounds(const Subset& s, const RealPosetFunction& f, ClosureKind kind, HypothesisPolicy policy) {
  if (s.size() == 0) throw PreconditionError("bounds of an empty set");
  const bool meet_kind = kind == ClosureKind::meet;
  const Direction direction = meet_kind ? Direction::increasing : Direction::decreasing;

  BoundsReport b;
  b.kind = kind;
  const std::vector<double> values = f.restrict_to(s);
  b.reindexing = apply_order(s, stable_order(values, direction));

  const ClosureResult cl = meet_kind ? meet_closure(s) : join_closure(s);
  const std::vector<double> closure_values = f.restrict_to(cl.closed);
  b.hypotheses.nonnegative =
      std::all_of(closure_values.begin(), closure_values.end(), [](double x) { return x >= 0.0; });
  b.hypotheses.monotone_on_closure = monotone_on(cl.closed_poset, closure_values, direction);

  const std::size_t n = s.size();
  std::vector<double> ordered(n);
  for (std::size_t k = 0; k < n; ++k) ordered[k] = f.at(b.reindexing.order[k]);
  b.hypotheses.index_monotone = true;
  for (std::size_t k = 1; k < n; ++k)
    if (meet_kind ? ordered[k - 1] > ordered[k] : ordered[k - 1] < ordered[k]) b.hypotheses.index_monotone = false;
  b.hypotheses.linear_extension = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < x; ++y)
      if (s.poset().less(b.reindexing.order[x], b.reindexing.order[y])) b.hypotheses.linear_extension = false;

  if (policy == HypothesisPolicy::strict) {
    if (!b.hypotheses.nonnegative) throw HypothesisError("f takes a negative value on the closure");
    if (!b.hypotheses.monotone_on_closure)
      throw HypothesisError(std::string("f is not order-") + (meet_kind ? "preserving on the meet" : "reversing on the join") +
                            " closure");
    if (!b.hypotheses.index_monotone || !b.hypotheses.linear_extension)
      throw HypothesisError("no monotone re-indexing compatible with the order exists");
  }

  b.upper.resize(n);
  for (std::size_t k = 1; k <= n; ++k)
    b.upper[k - 1] = static_cast<double>(k) * (meet_kind ? ordered[k - 1] : ordered[n - k]);
  b.lower_max = meet_kind ? ordered[n - 1] : ordered[0];
  return b;
}

} // namespace

Reindexing reindex_monotone(const Subset& s, const RealPosetFunction& f, Direction direction) {
  if (!closure_monotone(s, f, direction))
    throw MonotonicityError(std::string("f is not order-") +
                            (direction == Direction::increasing ? "preserving on the meet" : "reversing on the join") +
                            " closure");
  return apply_order(s, stable_order(f.restrict_to(s), direction));
}

BoundsReport meet_bounds(const Subset& s, const RealPosetFunction& f, HypothesisPolicy policy) {
  return bounds(s, f, ClosureKind::meet, policy);
}

BoundsReport join_bounds(const Subset& s, const RealPosetFunction& f, HypothesisPolicy policy) {
  return bounds(s, f, ClosureKind::join, policy);
}

RealMatrix bounds_matrix(const Subset& s, const RealPosetFunction& f, const BoundsReport& b) {
  return b.kind == ClosureKind::meet ? meet_matrix<double>(s.poset(), b.reindexing.order, f)
                                     : join_matrix<double>(s.poset(), b.reindexing.order, f);
}

bool BoundsCheck::all_ok() const {
  return lower_ok && std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.ok; });
}

BoundsCheck check_bounds(const BoundsReport& b, const Spectrum& spectrum, double slack) {
  if (spectrum.eigenvalues.size() != b.upper.size()) throw PreconditionError("spectrum size does not match bounds");
  BoundsCheck c;
  for (std::size_t k = 0; k < b.upper.size(); ++k) {
    const double lambda = spectrum.eigenvalues[k];
    c.rows.push_back(BoundRow{k + 1, lambda, b.upper[k], lambda <= b.upper[k] + slack});
  }
  c.lambda_max = spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.back();
  c.lower_max = b.lower_max;
  c.lower_ok = b.lower_max <= c.lambda_max + slack;
  return c;
}

double quadratic_form_check(const RealMatrix& m, std::span<const std::complex<double>> y, std::size_t k,
                            ClosureKind kind) {
  const std::size_t n = m.rows();
  if (y.size() != n) throw SupportError("vector length does not match matrix");
  if (k == 0 || k > n) throw SupportError("subspace dimension out of range");
  bool nonzero = false;
  for (std::size_t i = 0; i < n; ++i) {
    const bool inside = kind == ClosureKind::meet ? i < k : i >= n - k;
    if (y[i] != 0.0) {
      if (!inside) throw SupportError("vector has a nonzero entry outside the allowed coordinates");
      nonzero = true;
    }
  }
  if (!nonzero) throw SupportError("vector is zero");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc += std::conj(y[i]) * m(i, j) * y[j];
  return acc.real();
}

} // namespace meetjoin
