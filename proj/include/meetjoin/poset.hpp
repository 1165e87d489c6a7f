#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meetjoin {

using Index = std::size_t;
using OrderPair = std::pair<Index, Index>;

/// A finite partial order on elements 0..n-1.
///
/// Elements are always indexed along a linear extension: leq(i, j) implies
/// i <= j. Construction through build_poset() re-indexes arbitrary input to
/// satisfy this and keeps the permutation in original_index().
class FinitePoset {
public:
  FinitePoset() = default;

  /// Wraps an already index-compatible partial order. The relation is
  /// validated (reflexive, antisymmetric, transitive, leq(i,j) => i <= j).
  static FinitePoset from_order(std::size_t n, const std::vector<bool>& leq_rowmajor,
                                std::vector<std::string> labels = {});

  /// Same as from_order() but only the O(n^2) checks run (reflexivity and
  /// index compatibility). For orders that are transitive by construction,
  /// such as divisibility, where n can be in the thousands.
  static FinitePoset from_trusted_order(std::size_t n, std::vector<bool> leq_rowmajor,
                                        std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  bool leq(Index i, Index j) const { return leq_[i * n_ + j]; }
  bool less(Index i, Index j) const { return i != j && leq(i, j); }
  bool comparable(Index i, Index j) const { return leq(i, j) || leq(j, i); }

  const std::string& label(Index i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Index> find_label(std::string_view name) const;

  /// Position of element i in the input given to build_poset().
  Index original_index(Index i) const { return original_[i]; }

  /// The sub-order on `members`, which must be strictly increasing indices.
  /// Element k of the result is members[k].
  FinitePoset induced(std::span<const Index> members) const;

  /// Order dual; element k of the dual is element n-1-k of this poset.
  FinitePoset dual() const;

  /// 0/1 zeta matrix, row-major.
  std::vector<int> zeta() const;

  bool operator==(const FinitePoset&) const = default;

private:
  std::size_t n_ = 0;
  std::vector<bool> leq_;
  std::vector<std::string> labels_;
  std::vector<Index> original_;

  friend FinitePoset build_poset(std::size_t, std::span<const OrderPair>,
                                 std::vector<std::string>);
};

/// Reflexive-transitive closure of `relation` (0-based pairs, (a,b) means
/// a <= b), re-indexed along a linear extension. Ties between elements of
/// equal height keep their input order.
/// Throws IndexError on out-of-range pairs and CycleError when the closure
/// is not antisymmetric.
FinitePoset build_poset(std::size_t n, std::span<const OrderPair> relation,
                        std::vector<std::string> labels = {});

/// Greatest common lower bound. Throws NoMeetError when none is unique.
Index meet(const FinitePoset& p, Index i, Index j);
/// Least common upper bound. Throws NoMeetError when none is unique.
Index join(const FinitePoset& p, Index i, Index j);

std::optional<Index> try_meet(const FinitePoset& p, Index i, Index j);
std::optional<Index> try_join(const FinitePoset& p, Index i, Index j);

/// A set of elements of a shared ambient poset, kept in ambient index order.
class Subset {
public:
  Subset(std::shared_ptr<const FinitePoset> parent, std::vector<Index> members);

  /// Every element of the parent.
  static Subset whole(std::shared_ptr<const FinitePoset> parent);

  const FinitePoset& poset() const noexcept { return *parent_; }
  const std::shared_ptr<const FinitePoset>& parent() const noexcept { return parent_; }
  const std::vector<Index>& members() const noexcept { return members_; }

  std::size_t size() const noexcept { return members_.size(); }
  Index operator[](std::size_t k) const { return members_[k]; }

  bool contains(Index element) const;
  std::optional<std::size_t> position_of(Index element) const;
  bool includes(const Subset& other) const;

  FinitePoset induced() const { return parent_->induced(members_); }

private:
  std::shared_ptr<const FinitePoset> parent_;
  std::vector<Index> members_;
};

/// The same set viewed inside the order dual of its parent.
Subset to_dual(const Subset& s);

enum class ClosureKind { meet, join };

struct ClosureResult {
  ClosureKind kind;
  Subset closed;             ///< closure as a subset of the ambient poset
  FinitePoset closed_poset;  ///< the closure as a poset in its own right
  std::vector<Index> embed;  ///< position of s[k] inside `closed`
};

ClosureResult meet_closure(const Subset& s);
ClosureResult join_closure(const Subset& s);

/// All ambient elements below (above) some member of s.
Subset down_set(const Subset& s);
Subset up_set(const Subset& s);

bool is_meet_closed(const Subset& s);
bool is_join_closed(const Subset& s);
bool is_chain(const Subset& s);

struct CoverGraph {
  std::vector<OrderPair> edges;  ///< (lower, upper), sorted
};

CoverGraph cover_graph(const FinitePoset& p);

/// Undirected: connected with exactly n-1 edges.
bool is_tree(const CoverGraph& g, std::size_t n);

/// The four equivalent descriptions of a tree-shaped meet semilattice,
/// each evaluated independently on a finite meet-closed poset.
struct TreeCharacterizations {
  bool hasse_is_tree = false;             ///< undirected cover graph is a tree
  bool covers_at_most_one = false;        ///< every element covers <= 1 element
  bool principal_down_sets_chains = false;
  bool bounded_pairs_comparable = false;  ///< x,y <= z  =>  x,y comparable

  bool agree() const;
};

TreeCharacterizations tree_characterizations(const FinitePoset& meet_closed);

/// True when the Hasse diagram of meetcl(s) is a tree. All four
/// characterizations are evaluated; CharacterizationMismatch if they differ.
bool is_wedge_tree_set(const Subset& s);
/// Dual: the Hasse diagram of joincl(s) is a tree.
bool is_vee_tree_set(const Subset& s);

/// Off-diagonal pairwise meets form a chain.
bool is_A_set(const Subset& s);
/// Off-diagonal pairwise joins form a chain.
bool is_dual_A_set(const Subset& s);

} // namespace meetjoin
