#pragma once

#include "meetjoin/matrix.hpp"
#include "meetjoin/mobius.hpp"
#include "meetjoin/poset.hpp"

#include <complex>
#include <span>
#include <vector>

namespace meetjoin {

struct Spectrum {
  std::vector<double> eigenvalues;  ///< ascending
  double residual = 0.0;            ///< max_k |M v_k - lambda_k v_k|_inf
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// tol * |M|_F. Throws ConvergenceError after max_sweeps.
Spectrum eigen_sym(const RealMatrix& m, double tol = 1e-10, std::size_t max_sweeps = 100);

enum class Direction { increasing, decreasing };

struct Reindexing {
  std::vector<Index> order;               ///< ambient elements in the new order
  std::vector<std::size_t> permutation;   ///< permutation[k] = position of order[k] in s
};

/// Stable sort of s by f (ties by position). Throws MonotonicityError unless
/// f is order-preserving on meetcl(s) (increasing) or order-reversing on
/// joincl(s) (decreasing); the result then satisfies leq(a,b) => a <= b.
Reindexing reindex_monotone(const Subset& s, const RealPosetFunction& f, Direction direction);

struct BoundHypotheses {
  bool nonnegative = false;         ///< f >= 0 on the closure
  bool monotone_on_closure = false; ///< order-preserving on meetcl / order-reversing on joincl
  bool index_monotone = false;      ///< f increasing (meet) / decreasing (join) along the order
  bool linear_extension = false;    ///< the order keeps leq(a,b) => a <= b

  bool all() const { return nonnegative && monotone_on_closure && index_monotone && linear_extension; }
};

/// Eigenvalue bounds lambda_k <= upper[k-1] and lower_max <= lambda_n.
struct BoundsReport {
  ClosureKind kind = ClosureKind::meet;
  Reindexing reindexing;
  std::vector<double> upper;
  double lower_max = 0.0;
  BoundHypotheses hypotheses;

  /// False means the bounds are reported but not guaranteed.
  bool verified() const { return hypotheses.all(); }
};

enum class HypothesisPolicy { annotate, strict };

/// Meet form: reindex so f ascends, upper[k-1] = k f(x_k), lower_max = f(x_n).
/// Under HypothesisPolicy::strict a failed hypothesis throws HypothesisError.
BoundsReport meet_bounds(const Subset& s, const RealPosetFunction& f,
                         HypothesisPolicy policy = HypothesisPolicy::annotate);
/// Join form: reindex so f descends, upper[k-1] = k f(x_{n-k+1}), lower_max = f(x_1).
BoundsReport join_bounds(const Subset& s, const RealPosetFunction& f,
                         HypothesisPolicy policy = HypothesisPolicy::annotate);

/// The meet (join) matrix in the report's order.
RealMatrix bounds_matrix(const Subset& s, const RealPosetFunction& f, const BoundsReport& b);

struct BoundRow {
  std::size_t k = 0;
  double lambda = 0.0;
  double bound = 0.0;
  bool ok = false;
};

struct BoundsCheck {
  std::vector<BoundRow> rows;
  double lambda_max = 0.0;
  double lower_max = 0.0;
  bool lower_ok = false;

  bool all_ok() const;
};

BoundsCheck check_bounds(const BoundsReport& b, const Spectrum& spectrum, double slack = 1e-9);

/// y* M y for y supported on the first k coordinates (meet) or the last k
/// (join). Throws SupportError for y = 0 or support outside that range.
double quadratic_form_check(const RealMatrix& m, std::span<const std::complex<double>> y, std::size_t k,
                            ClosureKind kind = ClosureKind::meet);

} // namespace meetjoin
