#include "meetjoin/poset.hpp"

#include "meetjoin/error.hpp"

#include <algorithm>
#include <numeric>

namespace meetjoin {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i + 1);
  return out;
}

void validate_order(std::size_t n, const std::vector<bool>& leq) {
  auto at = [&](Index i, Index j) { return leq[i * n + j]; };
  for (Index i = 0; i < n; ++i) {
    if (!at(i, i)) throw PreconditionError("relation is not reflexive at element " + std::to_string(i));
    for (Index j = 0; j < n; ++j) {
      if (!at(i, j)) continue;
      if (j < i) {
        if (at(j, i)) throw CycleError("relation is not antisymmetric");
        throw PreconditionError("indexing is not a linear extension");
      }
      for (Index k = 0; k < n; ++k)
        if (at(j, k) && !at(i, k)) throw PreconditionError("relation is not transitive");
    }
  }
}

} // namespace

FinitePoset FinitePoset::from_order(std::size_t n, const std::vector<bool>& leq_rowmajor,
                                    std::vector<std::string> labels) {
  if (leq_rowmajor.size() != n * n) throw IndexError("relation matrix has wrong size");
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) throw IndexError("label count does not match element count");
  validate_order(n, leq_rowmajor);
  FinitePoset p;
  p.n_ = n;
  p.leq_ = leq_rowmajor;
  p.labels_ = std::move(labels);
  p.original_.resize(n);
  std::iota(p.original_.begin(), p.original_.end(), Index{0});
  return p;
}

FinitePoset FinitePoset::from_trusted_order(std::size_t n, std::vector<bool> leq_rowmajor,
                                            std::vector<std::string> labels) {
  if (leq_rowmajor.size() != n * n) throw IndexError("relation matrix has wrong size");
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) throw IndexError("label count does not match element count");
  for (Index i = 0; i < n; ++i) {
    if (!leq_rowmajor[i * n + i]) throw PreconditionError("relation is not reflexive");
    for (Index j = 0; j < i; ++j)
      if (leq_rowmajor[i * n + j]) throw PreconditionError("indexing is not a linear extension");
  }
  FinitePoset p;
  p.n_ = n;
  p.leq_ = std::move(leq_rowmajor);
  p.labels_ = std::move(labels);
  p.original_.resize(n);
  std::iota(p.original_.begin(), p.original_.end(), Index{0});
  return p;
}

std::optional<Index> FinitePoset::find_label(std::string_view name) const {
  for (Index i = 0; i < n_; ++i)
    if (labels_[i] == name) return i;
  return std::nullopt;
}

FinitePoset FinitePoset::induced(std::span<const Index> members) const {
  FinitePoset p;
  p.n_ = members.size();
  p.leq_.assign(p.n_ * p.n_, false);
  p.labels_.reserve(p.n_);
  p.original_.reserve(p.n_);
  for (std::size_t a = 0; a < p.n_; ++a) {
    if (members[a] >= n_) throw IndexError("subset member out of range");
    if (a > 0 && members[a] <= members[a - 1]) throw IndexError("subset members must be strictly increasing");
    p.labels_.push_back(labels_[members[a]]);
    p.original_.push_back(original_[members[a]]);
    for (std::size_t b = 0; b < p.n_; ++b) p.leq_[a * p.n_ + b] = leq(members[a], members[b]);
  }
  return p;
}

FinitePoset FinitePoset::dual() const {
  FinitePoset p;
  p.n_ = n_;
  p.leq_.assign(n_ * n_, false);
  p.labels_.assign(labels_.rbegin(), labels_.rend());
  p.original_.assign(original_.rbegin(), original_.rend());
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) p.leq_[i * n_ + j] = leq(n_ - 1 - j, n_ - 1 - i);
  return p;
}

std::vector<int> FinitePoset::zeta() const {
  std::vector<int> z(n_ * n_, 0);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = leq_[k] ? 1 : 0;
  return z;
}

FinitePoset build_poset(std::size_t n, std::span<const OrderPair> relation,
                        std::vector<std::string> labels) {
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) throw IndexError("label count does not match element count");

  std::vector<bool> rel(n * n, false);
  for (Index i = 0; i < n; ++i) rel[i * n + i] = true;
  for (const auto& [a, b] : relation) {
    if (a >= n || b >= n)
      throw IndexError("relation pair (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") references an element outside 0.." + std::to_string(n));
    rel[a * n + b] = true;
  }
  // Warshall
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      if (rel[i * n + k])
        for (Index j = 0; j < n; ++j)
          if (rel[k * n + j]) rel[i * n + j] = true;

  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (rel[i * n + j] && rel[j * n + i])
        throw CycleError("relation has a cycle through elements '" + labels[i] + "' and '" + labels[j] + "'");

  // Height = length of the longest chain ending at the element. Strictly
  // increases along the order, so sorting by it gives a linear extension.
  std::vector<std::size_t> height(n, 0);
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<std::size_t> below(n, 0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j && rel[j * n + i]) ++below[i];
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return below[a] < below[b]; });
  for (Index v : order)
    for (Index u = 0; u < n; ++u)
      if (u != v && rel[u * n + v]) height[v] = std::max(height[v], height[u] + 1);

  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::stable_sort(perm.begin(), perm.end(), [&](Index a, Index b) { return height[a] < height[b]; });

  FinitePoset p;
  p.n_ = n;
  p.leq_.assign(n * n, false);
  p.labels_.resize(n);
  p.original_ = perm;
  for (Index a = 0; a < n; ++a) {
    p.labels_[a] = labels[perm[a]];
    for (Index b = 0; b < n; ++b) p.leq_[a * n + b] = rel[perm[a] * n + perm[b]];
  }
  return p;
}

std::optional<Index> try_meet(const FinitePoset& p, Index i, Index j) {
  if (i >= p.size() || j >= p.size()) throw IndexError("meet: index out of range");
  // A unique maximum of the common lower bounds must carry the largest
  // index among them, so only that candidate needs checking.
  std::optional<Index> best;
  for (Index z = std::min(i, j) + 1; z-- > 0;) {
    if (p.leq(z, i) && p.leq(z, j)) {
      best = z;
      break;
    }
  }
  if (!best) return std::nullopt;
  for (Index z = 0; z < *best; ++z)
    if (p.leq(z, i) && p.leq(z, j) && !p.leq(z, *best)) return std::nullopt;
  return best;
}

std::optional<Index> try_join(const FinitePoset& p, Index i, Index j) {
  if (i >= p.size() || j >= p.size()) throw IndexError("join: index out of range");
  std::optional<Index> best;
  for (Index z = std::max(i, j); z < p.size(); ++z) {
    if (p.leq(i, z) && p.leq(j, z)) {
      best = z;
      break;
    }
  }
  if (!best) return std::nullopt;
  for (Index z = *best + 1; z < p.size(); ++z)
    if (p.leq(i, z) && p.leq(j, z) && !p.leq(*best, z)) return std::nullopt;
  return best;
}

Index meet(const FinitePoset& p, Index i, Index j) {
  if (auto m = try_meet(p, i, j)) return *m;
  throw NoMeetError("elements '" + p.label(i) + "' and '" + p.label(j) + "' have no meet");
}

Index join(const FinitePoset& p, Index i, Index j) {
  if (auto m = try_join(p, i, j)) return *m;
  throw NoMeetError("elements '" + p.label(i) + "' and '" + p.label(j) + "' have no join");
}

Subset::Subset(std::shared_ptr<const FinitePoset> parent, std::vector<Index> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (!parent_) throw PreconditionError("subset needs a parent poset");
  std::sort(members_.begin(), members_.end());
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (members_[k] >= parent_->size()) throw IndexError("subset member out of range");
    if (k > 0 && members_[k] == members_[k - 1]) throw DuplicateError("subset member listed twice");
  }
}

Subset Subset::whole(std::shared_ptr<const FinitePoset> parent) {
  std::vector<Index> all(parent ? parent->size() : 0);
  std::iota(all.begin(), all.end(), Index{0});
  return Subset(std::move(parent), std::move(all));
}

bool Subset::contains(Index element) const {
  return std::binary_search(members_.begin(), members_.end(), element);
}

std::optional<std::size_t> Subset::position_of(Index element) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), element);
  if (it == members_.end() || *it != element) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

bool Subset::includes(const Subset& other) const {
  return std::includes(members_.begin(), members_.end(), other.members_.begin(), other.members_.end());
}

Subset to_dual(const Subset& s) {
  auto dual = std::make_shared<const FinitePoset>(s.poset().dual());
  const std::size_t n = s.poset().size();
  std::vector<Index> members;
  members.reserve(s.size());
  for (Index m : s.members()) members.push_back(n - 1 - m);
  return Subset(std::move(dual), std::move(members));
}

namespace {

ClosureResult close_under(const Subset& s, ClosureKind kind) {
  const FinitePoset& p = s.poset();
  std::vector<bool> in(p.size(), false);
  std::vector<Index> current(s.members());
  for (Index m : current) in[m] = true;

  // Each new element is combined with everything present; pairs among old
  // elements were handled when the later of the two arrived.
  for (std::size_t next = 0; next < current.size(); ++next) {
    for (std::size_t other = 0; other <= next; ++other) {
      Index r = kind == ClosureKind::meet ? meet(p, current[next], current[other])
                                          : join(p, current[next], current[other]);
      if (!in[r]) {
        in[r] = true;
        current.push_back(r);
      }
    }
  }
  Subset closed(s.parent(), std::move(current));
  std::vector<Index> embed;
  embed.reserve(s.size());
  for (Index m : s.members()) embed.push_back(*closed.position_of(m));
  FinitePoset closed_poset = closed.induced();
  return ClosureResult{kind, std::move(closed), std::move(closed_poset), std::move(embed)};
}

bool closed_under(const Subset& s, ClosureKind kind) {
  const FinitePoset& p = s.poset();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      Index r = kind == ClosureKind::meet ? meet(p, s[a], s[b]) : join(p, s[a], s[b]);
      if (!s.contains(r)) return false;
    }
  return true;
}

} // namespace

ClosureResult meet_closure(const Subset& s) { return close_under(s, ClosureKind::meet); }
ClosureResult join_closure(const Subset& s) { return close_under(s, ClosureKind::join); }

bool is_meet_closed(const Subset& s) { return closed_under(s, ClosureKind::meet); }
bool is_join_closed(const Subset& s) { return closed_under(s, ClosureKind::join); }

Subset down_set(const Subset& s) {
  const FinitePoset& p = s.poset();
  std::vector<Index> out;
  for (Index z = 0; z < p.size(); ++z)
    for (Index m : s.members())
      if (p.leq(z, m)) {
        out.push_back(z);
        break;
      }
  return Subset(s.parent(), std::move(out));
}

Subset up_set(const Subset& s) {
  const FinitePoset& p = s.poset();
  std::vector<Index> out;
  for (Index z = 0; z < p.size(); ++z)
    for (Index m : s.members())
      if (p.leq(m, z)) {
        out.push_back(z);
        break;
      }
  return Subset(s.parent(), std::move(out));
}

bool is_chain(const Subset& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (!s.poset().comparable(s[a], s[b])) return false;
  return true;
}

CoverGraph cover_graph(const FinitePoset& p) {
  CoverGraph g;
  const std::size_t n = p.size();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (!p.less(i, j)) continue;
      bool between = false;
      for (Index z = i + 1; z < j && !between; ++z) between = p.less(i, z) && p.less(z, j);
      if (!between) g.edges.emplace_back(i, j);
    }
  return g;
}

bool is_tree(const CoverGraph& g, std::size_t n) {
  if (n == 0) return false;
  if (g.edges.size() != n - 1) return false;
  // union-find connectivity
  std::vector<Index> root(n);
  std::iota(root.begin(), root.end(), Index{0});
  auto find = [&](Index x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& [a, b] : g.edges) {
    Index ra = find(a), rb = find(b);
    if (ra != rb) {
      root[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

bool TreeCharacterizations::agree() const {
  return hasse_is_tree == covers_at_most_one && covers_at_most_one == principal_down_sets_chains &&
         principal_down_sets_chains == bounded_pairs_comparable;
}

TreeCharacterizations tree_characterizations(const FinitePoset& d) {
  const std::size_t n = d.size();
  TreeCharacterizations t;
  const CoverGraph g = cover_graph(d);
  t.hasse_is_tree = is_tree(g, n);

  std::vector<std::size_t> covered(n, 0);
  for (const auto& e : g.edges) ++covered[e.second];
  t.covers_at_most_one = std::all_of(covered.begin(), covered.end(), [](std::size_t c) { return c <= 1; });

  t.principal_down_sets_chains = true;
  for (Index x = 0; x < n && t.principal_down_sets_chains; ++x)
    for (Index a = 0; a <= x && t.principal_down_sets_chains; ++a)
      for (Index b = a + 1; b <= x; ++b)
        if (d.leq(a, x) && d.leq(b, x) && !d.comparable(a, b)) {
          t.principal_down_sets_chains = false;
          break;
        }

  t.bounded_pairs_comparable = true;
  for (Index x = 0; x < n && t.bounded_pairs_comparable; ++x)
    for (Index y = 0; y < n && t.bounded_pairs_comparable; ++y)
      for (Index z = 0; z < n; ++z)
        if (d.leq(x, z) && d.leq(y, z) && !(d.leq(x, y) || d.leq(y, x))) {
          t.bounded_pairs_comparable = false;
          break;
        }
  return t;
}

namespace {

bool tree_verdict(const FinitePoset& closure, const char* what) {
  const TreeCharacterizations t = tree_characterizations(closure);
  if (!t.agree())
    throw CharacterizationMismatch(std::string(what) + ": tree characterizations disagree (hasse=" +
                                   std::to_string(t.hasse_is_tree) + ", covers=" +
                                   std::to_string(t.covers_at_most_one) + ", downsets=" +
                                   std::to_string(t.principal_down_sets_chains) + ", bounded=" +
                                   std::to_string(t.bounded_pairs_comparable) + ")");
  return t.hasse_is_tree;
}

bool pairwise_results_form_chain(const Subset& s, ClosureKind kind) {
  const FinitePoset& p = s.poset();
  std::vector<Index> a;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      a.push_back(kind == ClosureKind::meet ? meet(p, s[i], s[j]) : join(p, s[i], s[j]));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!p.comparable(a[i], a[j])) return false;
  return true;
}

} // namespace

bool is_wedge_tree_set(const Subset& s) {
  if (s.size() == 0) return false;
  return tree_verdict(meet_closure(s).closed_poset, "meet closure");
}

bool is_vee_tree_set(const Subset& s) {
  if (s.size() == 0) return false;
  // The join closure's order dual is a meet-closed poset with the same
  // Hasse diagram, so the same four tests apply to it.
  return tree_verdict(join_closure(s).closed_poset.dual(), "join closure");
}

bool is_A_set(const Subset& s) { return pairwise_results_form_chain(s, ClosureKind::meet); }
bool is_dual_A_set(const Subset& s) { return pairwise_results_form_chain(s, ClosureKind::join); }

} // namespace meetjoin
