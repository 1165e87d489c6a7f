#pragma once

#include "meetjoin/mobius.hpp"
#include "meetjoin/poset.hpp"
#include "meetjoin/rational.hpp"

#include <span>
#include <vector>

namespace meetjoin {

/// Dense row-major matrix.
template <class T>
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  explicit DenseMatrix(std::size_t n) : DenseMatrix(n, n) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static DenseMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    DenseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw IndexError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  /// Top-left k x k block.
  DenseMatrix leading(std::size_t k) const {
    DenseMatrix m(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  /// P M P^T for the ordering `order`: result(a,b) = M(order[a], order[b]).
  DenseMatrix permuted(std::span<const std::size_t> order) const {
    DenseMatrix m(order.size());
    for (std::size_t a = 0; a < order.size(); ++a)
      for (std::size_t b = 0; b < order.size(); ++b) m(a, b) = (*this)(order[a], order[b]);
    return m;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  bool operator==(const DenseMatrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Exact symmetric matrix; (S)_f and [S]_f live here.
using SymMatrix = DenseMatrix<Rational>;
using RealMatrix = DenseMatrix<double>;

RealMatrix approx(const SymMatrix& m);
/// Exact rational image of every double entry.
SymMatrix exact(const RealMatrix& m);

/// 0/1 incidence of the set D (or B) against S: bit(i,j) = d_j <= x_i for
/// the meet kind, b_j >= x_i for the join kind.
struct IncMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<bool> bits;

  bool operator()(std::size_t i, std::size_t j) const { return bits[i * cols + j]; }
};

/// entries(a,b) = f(elems[a] ^ elems[b]). `elems` may be in any order.
template <class T>
DenseMatrix<T> meet_matrix(const FinitePoset& p, std::span<const Index> elems,
                           const BasicPosetFunction<T>& f) {
  DenseMatrix<T> m(elems.size());
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = a; b < elems.size(); ++b) m(a, b) = m(b, a) = f.at(meet(p, elems[a], elems[b]));
  return m;
}

/// entries(a,b) = f(elems[a] v elems[b]).
template <class T>
DenseMatrix<T> join_matrix(const FinitePoset& p, std::span<const Index> elems,
                           const BasicPosetFunction<T>& f) {
  DenseMatrix<T> m(elems.size());
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = a; b < elems.size(); ++b) m(a, b) = m(b, a) = f.at(join(p, elems[a], elems[b]));
  return m;
}

SymMatrix meet_matrix(const Subset& s, const PosetFunction& f);
SymMatrix join_matrix(const Subset& s, const PosetFunction& f);
SymMatrix kind_matrix(const Subset& s, const PosetFunction& f, ClosureKind kind);

/// Throws NotSupersetError when d misses a pairwise meet (join) of s.
IncMatrix incidence_matrix(const Subset& s, const Subset& d, ClosureKind kind);

/// E diag(Psi_D) E^T (meet) or E diag(Phi_B) E^T (join), exact.
SymMatrix factored_matrix(const Subset& s, const Subset& d, const PosetFunction& f, ClosureKind kind);
inline SymMatrix factored_meet_matrix(const Subset& s, const Subset& d, const PosetFunction& f) {
  return factored_matrix(s, d, f, ClosureKind::meet);
}
inline SymMatrix factored_join_matrix(const Subset& s, const Subset& b, const PosetFunction& f) {
  return factored_matrix(s, b, f, ClosureKind::join);
}

/// Product of Psi_{S,f} (meet) or Phi_{S,f} (join) over a closed s.
/// Throws NotClosedError otherwise.
Rational det_closed(const Subset& s, const PosetFunction& f, ClosureKind kind = ClosureKind::meet);

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
Rational det_general(const SymMatrix& m);

/// Leading principal minors 1..n via Bareiss without pivoting. With
/// stop_at_nonpositive the list ends at the first minor <= 0.
std::vector<Rational> leading_principal_minors(const SymMatrix& m, bool stop_at_nonpositive = false);

} // namespace meetjoin
