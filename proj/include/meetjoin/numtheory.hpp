#pragma once

#include "meetjoin/matrix.hpp"
#include "meetjoin/mobius.hpp"
#include "meetjoin/poset.hpp"
#include "meetjoin/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace meetjoin {

using Natural = std::uint64_t;

inline constexpr std::size_t kDefaultUniverseCap = 10'000;

/// A finite set of positive integers ordered arithmetically (divisibility,
/// unitary divisibility, or the usual <=), sorted ascending so that the
/// order's indexing is a linear extension.
struct DivisorLattice {
  std::shared_ptr<const FinitePoset> poset;
  std::vector<Natural> values;

  std::size_t size() const { return values.size(); }
  /// Throws IndexError when v is not in the universe.
  Index index_of(Natural v) const;
  Subset subset(std::span<const Natural> members) const;
};

/// Every divisor of every member of s, under divisibility.
DivisorLattice divisor_down_set(std::span<const Natural> s, std::size_t cap = kDefaultUniverseCap);
/// Multiples of some member of s that divide lcm(s), under divisibility.
DivisorLattice lcm_up_set(std::span<const Natural> s, std::size_t cap = kDefaultUniverseCap);
/// Every unitary divisor of every member of s, under unitary divisibility.
DivisorLattice unitary_down_set(std::span<const Natural> s, std::size_t cap = kDefaultUniverseCap);
/// The members of s under the usual order <=.
DivisorLattice integer_chain(std::span<const Natural> s);

Natural gcd(Natural a, Natural b);
/// Throws CapacityError on overflow.
Natural lcm(Natural a, Natural b);
bool divides_unitarily(Natural d, Natural m);
/// Greatest common unitary divisor, by scanning the unitary divisors of a.
Natural gcud(Natural a, Natural b);
std::vector<Natural> divisors(Natural m);
std::vector<Natural> prime_divisors(Natural m);

/// J_alpha(m) = m^alpha prod_{p | m} (1 - p^-alpha).
double jordan_totient(double alpha, Natural m);
/// Same product evaluated exactly for an integer exponent.
Rational jordan_totient_exact(long alpha, Natural m);

/// m^alpha exactly for an integer exponent (negative allowed).
Rational exact_power(Natural m, long alpha);

/// A named arithmetic function f: Z+ -> R.
struct NamedFunction {
  enum class Tag { power, reciprocal_power, identity };
  Tag tag = Tag::identity;
  double alpha = 1.0;

  static NamedFunction power(double a) { return {Tag::power, a}; }
  static NamedFunction reciprocal_power(double a) { return {Tag::reciprocal_power, a}; }
  static NamedFunction identity() { return {Tag::identity, 1.0}; }

  /// Values are rational exactly when the exponent is an integer.
  bool is_exact() const;
  std::optional<Rational> exact_value(Natural m) const;
  double value(Natural m) const;
};

/// f on every element of the lattice. Throws PreconditionError if f is not exact.
PosetFunction exact_function(const NamedFunction& f, const DivisorLattice& lattice);
RealPosetFunction real_function(const NamedFunction& f, const DivisorLattice& lattice);

enum class Family { power_gcd, power_lcm_reciprocal, gcud_power, min, max };

/// Accepts power-gcd, reciprocal-power-lcm (or power-lcm-reciprocal),
/// gcud-power, min, max, with '-' or '_'. Throws ParseError.
Family parse_family(std::string_view name);
std::string_view to_string(Family f);

/// A named matrix with the poset and function that generate it, so the
/// generic meet/join machinery applies.
struct NamedMatrix {
  Family family;
  ClosureKind kind;
  DivisorLattice lattice;
  Subset set;
  NamedFunction function;
  RealMatrix approx;
  std::optional<SymMatrix> exact;  ///< present for integer exponents
};

/// s must be distinct positive integers. min/max order s by <=.
NamedMatrix build_named_matrix(Family family, std::span<const Natural> s, double alpha = 1.0,
                               std::size_t cap = kDefaultUniverseCap);

} // namespace meetjoin
