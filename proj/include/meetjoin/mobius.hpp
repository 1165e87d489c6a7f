#pragma once

#include "meetjoin/error.hpp"
#include "meetjoin/poset.hpp"
#include "meetjoin/rational.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace meetjoin {

/// A real-valued function on (part of) a poset. Elements without a value are
/// allowed; reading one throws MissingValueError.
template <class T>
class BasicPosetFunction {
public:
  BasicPosetFunction(std::shared_ptr<const FinitePoset> poset, std::vector<std::optional<T>> values)
      : poset_(std::move(poset)), values_(std::move(values)) {
    if (!poset_) throw PreconditionError("function needs a poset");
    if (values_.size() != poset_->size()) throw IndexError("function table length does not match poset");
  }

  static BasicPosetFunction total(std::shared_ptr<const FinitePoset> poset, std::vector<T> values) {
    std::vector<std::optional<T>> v(values.begin(), values.end());
    return BasicPosetFunction(std::move(poset), std::move(v));
  }

  const FinitePoset& poset() const noexcept { return *poset_; }
  const std::shared_ptr<const FinitePoset>& shared_poset() const noexcept { return poset_; }

  bool has(Index i) const { return values_.at(i).has_value(); }

  const T& at(Index i) const {
    const auto& v = values_.at(i);
    if (!v) throw MissingValueError("no function value for element '" + poset_->label(i) + "'");
    return *v;
  }

  /// Values on the members of s, in member order. Every missing element is
  /// named in the error.
  std::vector<T> restrict_to(const Subset& s) const { return restrict_to(std::span<const Index>(s.members())); }

  std::vector<T> restrict_to(std::span<const Index> elements) const {
    std::vector<T> out;
    out.reserve(elements.size());
    std::string missing;
    for (Index e : elements) {
      if (!values_.at(e)) {
        missing += (missing.empty() ? "" : ", ") + poset_->label(e);
        continue;
      }
      out.push_back(*values_[e]);
    }
    if (!missing.empty()) throw MissingValueError("missing function values for: " + missing);
    return out;
  }

  const std::vector<std::optional<T>>& values() const noexcept { return values_; }

private:
  std::shared_ptr<const FinitePoset> poset_;
  std::vector<std::optional<T>> values_;
};

using PosetFunction = BasicPosetFunction<Rational>;
using RealPosetFunction = BasicPosetFunction<double>;

/// Float view of an exact function.
RealPosetFunction approx(const PosetFunction& f);

/// mu(i, j) for every pair; zero when i is not below j.
struct MobiusTable {
  std::size_t n = 0;
  std::vector<long long> mu;  ///< row-major

  long long operator()(Index i, Index j) const { return mu[i * n + j]; }
  bool operator==(const MobiusTable&) const = default;
};

/// mu(a,a) = 1, mu(a,b) = -sum_{a <= z < b} mu(a,z).
MobiusTable mobius_table(const FinitePoset& p);

/// Inverse of the zeta matrix by back substitution over the integers.
MobiusTable zeta_inverse(const FinitePoset& p);

// Psi: f(d_k) = sum_{d_v <= d_k} psi(d_v).   Phi: f(b_k) = sum_{b_k <= b_v} phi(b_v).

template <class T>
std::vector<T> psi_recursive(const FinitePoset& d, std::span<const T> f) {
  const std::size_t n = d.size();
  if (f.size() != n) throw IndexError("psi: value count does not match poset");
  std::vector<T> psi(n);
  for (Index k = 0; k < n; ++k) {
    T acc = f[k];
    for (Index v = 0; v < k; ++v)
      if (d.leq(v, k)) acc -= psi[v];
    psi[k] = acc;
  }
  return psi;
}

template <class T>
std::vector<T> psi_mobius(const FinitePoset& d, const MobiusTable& mu, std::span<const T> f) {
  const std::size_t n = d.size();
  std::vector<T> psi(n);
  for (Index k = 0; k < n; ++k) {
    T acc = T(0);
    for (Index v = 0; v <= k; ++v)
      if (d.leq(v, k) && mu(v, k) != 0) acc += f[v] * T(static_cast<long>(mu(v, k)));
    psi[k] = acc;
  }
  return psi;
}

template <class T>
std::vector<T> phi_recursive(const FinitePoset& b, std::span<const T> f) {
  const std::size_t n = b.size();
  if (f.size() != n) throw IndexError("phi: value count does not match poset");
  std::vector<T> phi(n);
  for (Index k = n; k-- > 0;) {
    T acc = f[k];
    for (Index v = k + 1; v < n; ++v)
      if (b.leq(k, v)) acc -= phi[v];
    phi[k] = acc;
  }
  return phi;
}

template <class T>
std::vector<T> phi_mobius(const FinitePoset& b, const MobiusTable& mu, std::span<const T> f) {
  const std::size_t n = b.size();
  std::vector<T> phi(n);
  for (Index k = 0; k < n; ++k) {
    T acc = T(0);
    for (Index v = k; v < n; ++v)
      if (b.leq(k, v) && mu(k, v) != 0) acc += f[v] * T(static_cast<long>(mu(k, v)));
    phi[k] = acc;
  }
  return phi;
}

/// f(d_k) = sum over d_v <= d_k of psi(d_v).
template <class T>
std::vector<T> sum_below(const FinitePoset& d, std::span<const T> psi) {
  std::vector<T> f(d.size(), T(0));
  for (Index k = 0; k < d.size(); ++k)
    for (Index v = 0; v <= k; ++v)
      if (d.leq(v, k)) f[k] += psi[v];
  return f;
}

/// f(b_k) = sum over b_k <= b_v of phi(b_v).
template <class T>
std::vector<T> sum_above(const FinitePoset& b, std::span<const T> phi) {
  std::vector<T> f(b.size(), T(0));
  for (Index k = 0; k < b.size(); ++k)
    for (Index v = k; v < b.size(); ++v)
      if (b.leq(k, v)) f[k] += phi[v];
  return f;
}

/// Psi (meet kind) or Phi (join kind) over a set D, indexed like D.
struct InversionVector {
  ClosureKind kind;
  Subset over;
  std::vector<Rational> values;
};

/// Psi_{D,f} by the recursion, cross-checked exactly against the Moebius
/// sum; InternalConsistencyError if they differ.
InversionVector psi(const Subset& d, const PosetFunction& f);
/// Phi_{B,f}, dual of psi().
InversionVector phi(const Subset& b, const PosetFunction& f);

} // namespace meetjoin
