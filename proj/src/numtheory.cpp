#include "meetjoin/numtheory.hpp"

#include "meetjoin/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace meetjoin {

Index DivisorLattice::index_of(Natural v) const {
  auto it = std::lower_bound(values.begin(), values.end(), v);
  if (it == values.end() || *it != v) throw IndexError(std::to_string(v) + " is not in the universe");
  return static_cast<Index>(it - values.begin());
}

Subset DivisorLattice::subset(std::span<const Natural> members) const {
  std::vector<Index> idx;
  idx.reserve(members.size());
  for (Natural m : members) idx.push_back(index_of(m));
  return Subset(poset, std::move(idx));
}

Natural gcd(Natural a, Natural b) { return std::gcd(a, b); }

Natural lcm(Natural a, Natural b) {
  if (a == 0 || b == 0) return 0;
  const unsigned __int128 l = static_cast<unsigned __int128>(a / gcd(a, b)) * b;
  if (l > static_cast<unsigned __int128>(UINT64_MAX)) throw CapacityError("lcm overflows 64 bits");
  return static_cast<Natural>(l);
}

bool divides_unitarily(Natural d, Natural m) { return d != 0 && m % d == 0 && gcd(d, m / d) == 1; }

namespace {

std::vector<std::pair<Natural, unsigned>> factorize(Natural m) {
  std::vector<std::pair<Natural, unsigned>> out;
  for (Natural p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

} // namespace

std::vector<Natural> divisors(Natural m) {
  if (m == 0) throw PreconditionError("divisors of zero");
  std::vector<Natural> out{1};
  for (const auto& [p, e] : factorize(m)) {
    const std::size_t before = out.size();
    Natural power = 1;
    for (unsigned k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < before; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Natural> prime_divisors(Natural m) {
  std::vector<Natural> ps;
  for (const auto& f : factorize(m)) ps.push_back(f.first);
  return ps;
}

Natural gcud(Natural a, Natural b) {
  if (a == 0 || b == 0) throw PreconditionError("gcud needs positive integers");
  Natural best = 1;
  for (Natural d : divisors(a))
    if (divides_unitarily(d, a) && divides_unitarily(d, b)) best = std::max(best, d);
  return best;
}

double jordan_totient(double alpha, Natural m) {
  if (m == 0) throw PreconditionError("jordan_totient needs m >= 1");
  double value = std::pow(static_cast<double>(m), alpha);
  for (Natural p : prime_divisors(m)) value *= 1.0 - std::pow(static_cast<double>(p), -alpha);
  return value;
}

Rational exact_power(Natural m, long alpha) {
  mpz_class base(std::to_string(m));
  mpz_class raised;
  mpz_pow_ui(raised.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(alpha < 0 ? -alpha : alpha));
  if (alpha >= 0) return Rational(raised);
  Rational r(mpz_class(1), raised);
  r.canonicalize();
  return r;
}

Rational jordan_totient_exact(long alpha, Natural m) {
  if (m == 0) throw PreconditionError("jordan_totient needs m >= 1");
  Rational value = exact_power(m, alpha);
  for (Natural p : prime_divisors(m)) value *= Rational(1) - exact_power(p, -alpha);
  value.canonicalize();
  return value;
}

namespace {

void check_members(std::span<const Natural> s) {
  if (s.empty()) throw PreconditionError("empty integer set");
  std::set<Natural> seen;
  for (Natural x : s) {
    if (x == 0) throw PreconditionError("integers must be positive");
    if (!seen.insert(x).second) throw DuplicateError(std::to_string(x) + " listed twice");
  }
}

template <class Leq>
DivisorLattice make_lattice(std::vector<Natural> universe, std::size_t cap, Leq leq) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (universe.size() > cap)
    throw CapacityError("universe has " + std::to_string(universe.size()) + " elements, cap is " +
                        std::to_string(cap));
  const std::size_t n = universe.size();
  std::vector<bool> rel(n * n, false);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(universe[i]));
    for (std::size_t j = i; j < n; ++j) rel[i * n + j] = leq(universe[i], universe[j]);
  }
  auto poset = std::make_shared<const FinitePoset>(
      FinitePoset::from_trusted_order(n, std::move(rel), std::move(labels)));
  return DivisorLattice{std::move(poset), std::move(universe)};
}

bool divides(Natural a, Natural b) { return b % a == 0; }

} // namespace

DivisorLattice divisor_down_set(std::span<const Natural> s, std::size_t cap) {
  check_members(s);
  std::vector<Natural> universe;
  for (Natural x : s) {
    auto ds = divisors(x);
    universe.insert(universe.end(), ds.begin(), ds.end());
    if (universe.size() > cap * 4) throw CapacityError("divisor universe exceeds the cap");
  }
  return make_lattice(std::move(universe), cap, divides);
}

DivisorLattice lcm_up_set(std::span<const Natural> s, std::size_t cap) {
  check_members(s);
  Natural l = 1;
  for (Natural x : s) l = lcm(l, x);
  std::vector<Natural> universe;
  for (Natural d : divisors(l))
    if (std::any_of(s.begin(), s.end(), [&](Natural x) { return d % x == 0; })) universe.push_back(d);
  return make_lattice(std::move(universe), cap, divides);
}

DivisorLattice unitary_down_set(std::span<const Natural> s, std::size_t cap) {
  check_members(s);
  std::vector<Natural> universe;
  for (Natural x : s)
    for (Natural d : divisors(x))
      if (divides_unitarily(d, x)) universe.push_back(d);
  return make_lattice(std::move(universe), cap, divides_unitarily);
}

DivisorLattice integer_chain(std::span<const Natural> s) {
  check_members(s);
  return make_lattice(std::vector<Natural>(s.begin(), s.end()), kDefaultUniverseCap,
                      [](Natural a, Natural b) { return a <= b; });
}

bool NamedFunction::is_exact() const {
  return tag == Tag::identity || alpha == std::round(alpha);
}

std::optional<Rational> NamedFunction::exact_value(Natural m) const {
  if (!is_exact()) return std::nullopt;
  switch (tag) {
    case Tag::identity: return exact_power(m, 1);
    case Tag::power: return exact_power(m, static_cast<long>(alpha));
    case Tag::reciprocal_power: return exact_power(m, -static_cast<long>(alpha));
  }
  return std::nullopt;
}

double NamedFunction::value(Natural m) const {
  const double x = static_cast<double>(m);
  switch (tag) {
    case Tag::identity: return x;
    case Tag::power: return std::pow(x, alpha);
    case Tag::reciprocal_power: return std::pow(x, -alpha);
  }
  return 0.0;
}

PosetFunction exact_function(const NamedFunction& f, const DivisorLattice& lattice) {
  if (!f.is_exact()) throw PreconditionError("function has no exact rational values for a non-integer exponent");
  std::vector<Rational> v;
  v.reserve(lattice.size());
  for (Natural m : lattice.values) v.push_back(*f.exact_value(m));
  return PosetFunction::total(lattice.poset, std::move(v));
}

RealPosetFunction real_function(const NamedFunction& f, const DivisorLattice& lattice) {
  std::vector<double> v;
  v.reserve(lattice.size());
  for (Natural m : lattice.values) v.push_back(f.value(m));
  return RealPosetFunction::total(lattice.poset, std::move(v));
}

Family parse_family(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "power-gcd") return Family::power_gcd;
  if (key == "reciprocal-power-lcm" || key == "power-lcm-reciprocal") return Family::power_lcm_reciprocal;
  if (key == "gcud-power" || key == "power-gcud") return Family::gcud_power;
  if (key == "min") return Family::min;
  if (key == "max") return Family::max;
  throw ParseError("unknown matrix family '" + std::string(name) + "'");
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::power_gcd: return "power-gcd";
    case Family::power_lcm_reciprocal: return "reciprocal-power-lcm";
    case Family::gcud_power: return "gcud-power";
    case Family::min: return "min";
    case Family::max: return "max";
  }
  return "?";
}

NamedMatrix build_named_matrix(Family family, std::span<const Natural> s, double alpha, std::size_t cap) {
  check_members(s);
  DivisorLattice lattice;
  ClosureKind kind = ClosureKind::meet;
  NamedFunction f = NamedFunction::power(alpha);
  switch (family) {
    case Family::power_gcd: lattice = divisor_down_set(s, cap); break;
    case Family::power_lcm_reciprocal:
      lattice = lcm_up_set(s, cap);
      kind = ClosureKind::join;
      f = NamedFunction::reciprocal_power(alpha);
      break;
    case Family::gcud_power: lattice = unitary_down_set(s, cap); break;
    case Family::min: lattice = integer_chain(s); break;
    case Family::max:
      lattice = integer_chain(s);
      kind = ClosureKind::join;
      break;
  }
  // Keep the caller's order for the rows; Subset itself is sorted.
  Subset set = lattice.subset(s);
  std::vector<Index> rows;
  rows.reserve(s.size());
  for (Natural x : s) rows.push_back(lattice.index_of(x));

  const RealPosetFunction real = real_function(f, lattice);
  RealMatrix approx = kind == ClosureKind::meet ? meet_matrix<double>(*lattice.poset, rows, real)
                                                : join_matrix<double>(*lattice.poset, rows, real);
  std::optional<SymMatrix> exact;
  if (f.is_exact()) {
    const PosetFunction ex = exact_function(f, lattice);
    exact = kind == ClosureKind::meet ? meet_matrix<Rational>(*lattice.poset, rows, ex)
                                      : join_matrix<Rational>(*lattice.poset, rows, ex);
  }
  return NamedMatrix{family, kind, std::move(lattice), std::move(set), f, std::move(approx), std::move(exact)};
}

} // namespace meetjoin
