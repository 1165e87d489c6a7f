#pragma once

#include "meetjoin/matrix.hpp"
#include "meetjoin/mobius.hpp"
#include "meetjoin/poset.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meetjoin {

enum class Verdict { positive_definite, not_positive_definite, not_applicable };

/// Which test decided a verdict.
enum class Method {
  meet_closed_psi,     ///< meet-closed set: PD iff every Psi_{S,f} > 0
  join_closed_phi,     ///< join-closed set: PD iff every Phi_{S,f} > 0
  meet_superset_psi,   ///< Psi > 0 on a meet-closed superset => PD (sufficient only)
  join_superset_phi,   ///< Phi > 0 on a join-closed superset => PD (sufficient only)
  meet_tree_monotone,  ///< wedge-tree set + strictly order-preserving positive f => PD
  join_tree_monotone,  ///< vee-tree set + strictly order-reversing positive f => PD
  minor_oracle,        ///< exact leading principal minors
  float_oracle,        ///< Cholesky pivots in floating point
};

std::string_view to_string(Verdict v);
std::string_view to_string(Method m);

struct Certificate {
  /// Ambient elements the Psi/Phi values belong to, and the values.
  std::vector<Index> elements;
  std::vector<Rational> values;
  /// Elements whose Psi/Phi value is <= 0 (inconclusive sufficient tests).
  std::vector<Index> offending;

  /// Exact leading principal minors computed by the oracle.
  std::vector<Rational> minors;

  /// A principal submatrix (row positions, in elimination order) whose
  /// determinant is <= 0 while every proper leading part of it is > 0.
  std::vector<std::size_t> failing_rows;
  std::optional<Rational> failing_minor;
  /// y with y^T M y <= 0, y != 0.
  std::vector<Rational> witness;

  std::vector<double> float_pivots;
};

struct PDReport {
  Verdict verdict = Verdict::not_applicable;
  Method method = Method::minor_oracle;
  Certificate certificate;
  std::string note;
  /// Earlier tests tried by classify_and_test() that did not decide.
  std::vector<PDReport> attempts;

  bool positive_definite() const { return verdict == Verdict::positive_definite; }
};

/// PD iff every leading principal minor is > 0, all exact.
PDReport pd_oracle(const SymMatrix& m);

/// Cholesky in doubles; a pivot must exceed tol * max(1, max |diagonal|).
PDReport pd_float(const RealMatrix& m, double tol = 1e-12);

/// Decisive test for a meet-closed s; not_applicable otherwise.
PDReport pd_meet_closed(const Subset& s, const PosetFunction& f);
/// Decisive test for a join-closed s; not_applicable otherwise.
PDReport pd_join_closed(const Subset& s, const PosetFunction& f);

/// Sufficient test through a closed superset d of s. Never reports
/// not_positive_definite: a failed condition is not_applicable with the
/// offending entries listed. Throws NotClosedError / NotSupersetError.
PDReport pd_superset_sufficient(const Subset& s, const Subset& d, const PosetFunction& f,
                                ClosureKind kind = ClosureKind::meet);

/// Tree-set + strict monotonicity + positivity on the closure => PD. Any
/// failed hypothesis gives not_applicable naming it.
PDReport pd_tree(const Subset& s, const PosetFunction& f, ClosureKind kind = ClosureKind::meet);

/// For s whose first element is its minimum, whose own Hasse diagram is a
/// tree, and whose meet matrix is PD: returns whether f is strictly
/// order-preserving and positive on s (it always should be).
/// Throws PreconditionError naming the failed hypothesis.
bool monotonicity_from_pd(const Subset& s, const PosetFunction& f);

/// Runs the closed-set test, the superset tests over meetcl(s) and the
/// down-set (joincl(s) and the up-set for join), the tree test, and finally
/// the oracle; the first decisive one is reported.
PDReport classify_and_test(const Subset& s, const PosetFunction& f, ClosureKind kind = ClosureKind::meet);

/// Re-checks a report against the matrix without reusing the producing code
/// path: Psi/Phi certificates are re-multiplied through the incidence
/// matrix, minors are recomputed by det_general, witnesses are evaluated.
bool validate_certificate(const PDReport& r, const Subset& s, const SymMatrix& m,
                          ClosureKind kind = ClosureKind::meet);

bool strictly_order_preserving(const FinitePoset& p, std::span<const Rational> f);
bool strictly_order_reversing(const FinitePoset& p, std::span<const Rational> f);

} // namespace meetjoin
