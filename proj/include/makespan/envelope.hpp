#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "makespan/error.hpp"
#include "makespan/numeric.hpp"

namespace makespan {

/// The affine function x -> slope * x + intercept, tagged with the machine it stands for.
template <Scalar S>
struct Line {
    S slope{};
    S intercept{};
    std::size_t owner = 0;

    S at(const S &x) const { return slope * x + intercept; }

    friend bool operator==(const Line &, const Line &) = default;
};

struct EnvelopeCounters {
    std::uint64_t inserts = 0;
    std::uint64_t deletes = 0;
    std::uint64_t queries = 0;
    std::uint64_t comparisons = 0;
};

template <Scalar S>
struct EnvelopeHit {
    std::size_t owner = 0;
    S value{};
};

/// Envelope piece that starts at `x` (nullopt stands for minus infinity).
template <Scalar S>
struct Breakpoint {
    std::optional<S> x;
    std::size_t owner = 0;

    friend bool operator==(const Breakpoint &, const Breakpoint &) = default;
};

namespace detail {

// Relaxed counter that can be bumped from const query paths and still copied.
class QueryCounter {
  public:
    QueryCounter() = default;
    QueryCounter(const QueryCounter &o) : v_(o.load()) {}
    QueryCounter &operator=(const QueryCounter &o) {
        v_.store(o.load(), std::memory_order_relaxed);
        return *this;
    }
    void add(std::uint64_t d) const { v_.fetch_add(d, std::memory_order_relaxed); }
    std::uint64_t load() const { return v_.load(std::memory_order_relaxed); }
    void reset() { v_.store(0, std::memory_order_relaxed); }

  private:
    mutable std::atomic<std::uint64_t> v_{0};
};

}  // namespace detail

/**
 * @brief Fully dynamic lower envelope of lines.
 *
 * Lines with equal slope share one leaf of a leaf-oriented AVL tree ordered by
 * slope; the leaf carries the dominant line of its group (smallest intercept,
 * then smallest owner) and the rest of the group is kept aside so that deletes
 * can bring shadowed lines back.
 *
 * Every internal node stores only the crossover of its two children's
 * envelopes: left of the crossover the right child (steeper lines) is lower,
 * right of it the left child is. The envelope of a subtree is therefore
 * navigable by descending from its root, which gives O(log N) queries, and the
 * crossover of two sibling envelopes is found by a simultaneous descent of both
 * subtrees in O(log N) steps. An update re-establishes the crossovers on one
 * root path, so inserts and deletes cost O(log^2 N). Nodes whose crossover is
 * provably unaffected by an update (the changed line is not one of the two
 * lines meeting there and does not pass below it) are skipped.
 *
 * Ties at a query point go to the smallest slope, then the smallest owner.
 * Mutations are single-writer; concurrent const queries are safe.
 */
template <Scalar S>
class LowerEnvelope {
  public:
    LowerEnvelope() = default;

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    bool contains(std::size_t owner) const { return entries_.count(owner) != 0; }

    const Line<S> &line(std::size_t owner) const {
        const auto it = entries_.find(owner);
        if (it == entries_.end()) {
            throw UsageError("no line with owner " + std::to_string(owner));
        }
        return it->second.line;
    }

    void insert(const Line<S> &line) {
        if (contains(line.owner)) {
            throw UsageError("a line with owner " + std::to_string(line.owner) + " is already stored");
        }
        ++inserts_;
        insert_line(line);
    }

    void erase(std::size_t owner) {
        if (!contains(owner)) {
            throw UsageError("no line with owner " + std::to_string(owner));
        }
        ++deletes_;
        erase_line(owner);
    }

    /// Same effect and counters as erase(line.owner) followed by insert(line).
    void replace(const Line<S> &line) {
        const auto it = entries_.find(line.owner);
        if (it == entries_.end()) {
            throw UsageError("no line with owner " + std::to_string(line.owner));
        }
        ++deletes_;
        ++inserts_;
        Entry &entry = it->second;
        if (!(entry.line.slope == line.slope)) {
            erase_line(line.owner);
            insert_line(line);
            return;
        }
        Group &group = entry.group->second;
        auto handle = group.lines.extract(LineKey{entry.line.intercept, line.owner});
        handle.value() = LineKey{line.intercept, line.owner};
        group.lines.insert(std::move(handle));
        entry.line = line;
        promote_dominant(group, line.slope);
    }

    EnvelopeHit<S> query_min(const S &x) const {
        if (root_ == kNone) {
            throw UsageError("query on an empty envelope");
        }
        if (x < S(0)) {
            throw UsageError("query point must be non-negative");
        }
        std::uint64_t cmp = 0;
        Index u = root_;
        while (!nodes_[u].leaf()) {
            ++cmp;
            u = x >= nodes_[u].cross ? nodes_[u].left : nodes_[u].right;
        }
        queries_.add(1);
        query_comparisons_.add(cmp);
        const Line<S> &best = nodes_[u].line;
        return {best.owner, best.at(x)};
    }

    /// Envelope pieces over the whole real line, ordered by x.
    std::vector<Breakpoint<S>> breakpoints() const {
        std::vector<Breakpoint<S>> out;
        if (root_ != kNone) {
            collect(root_, Bound{}, Bound{}, out);
        }
        return out;
    }

    EnvelopeCounters counters() const {
        return {inserts_, deletes_, queries_.load(), comparisons_ + query_comparisons_.load()};
    }

    void reset_counters() {
        inserts_ = deletes_ = comparisons_ = 0;
        queries_.reset();
        query_comparisons_.reset();
    }

    /// Tree height (0 for a single leaf, -1 when empty).
    int height() const { return root_ == kNone ? -1 : nodes_[root_].height; }

    /**
     * Recomputes every stored crossover from scratch and checks AVL balance and
     * slope order. Meant for tests: exact in rational mode only.
     */
    bool audit() const {
        if (root_ == kNone) {
            return entries_.empty() && groups_.empty();
        }
        LowerEnvelope &self = const_cast<LowerEnvelope &>(*this);
        return self.audit_node(root_);
    }

  private:
    using Index = std::int32_t;
    static constexpr Index kNone = -1;

    struct Node {
        Index left = kNone;
        Index right = kNone;
        int height = 0;
        Index bridge_left = kNone;   // leaf of the left subtree meeting at `cross`
        Index bridge_right = kNone;  // leaf of the right subtree meeting at `cross`
        S max_slope{};
        S cross{};
        S value{};
        Line<S> line{};  // leaves only

        bool leaf() const noexcept { return left == kNone; }
    };

    struct LineKey {
        S intercept;
        std::size_t owner;
        friend bool operator<(const LineKey &a, const LineKey &b) {
            if (a.intercept == b.intercept) {
                return a.owner < b.owner;
            }
            return a.intercept < b.intercept;
        }
    };

    struct Group {
        std::set<LineKey> lines;
        Index leaf = kNone;
    };

    using GroupMap = std::map<S, Group>;

    struct Entry {
        Line<S> line;
        typename GroupMap::iterator group;
    };

    // What changed below a node: the line at `leaf` was replaced by `line`
    // (inserted leaves included) or the leaf was removed (`has_line` false).
    struct Event {
        Index leaf = kNone;
        bool has_line = false;
        Line<S> line{};
    };

    struct Bound {
        bool finite = false;
        S x{};
    };

    void insert_line(const Line<S> &line) {
        auto [git, created] = groups_.try_emplace(line.slope);
        Group &group = git->second;
        group.lines.insert(LineKey{line.intercept, line.owner});
        entries_.emplace(line.owner, Entry{line, git});
        if (!created) {
            promote_dominant(group, line.slope);
            return;
        }
        const Index leaf = allocate();
        nodes_[leaf].line = line;
        nodes_[leaf].max_slope = line.slope;
        group.leaf = leaf;
        if (root_ == kNone) {
            root_ = leaf;
            return;
        }
        const Event event{leaf, true, line};
        root_ = insert_rec(root_, event);
    }

    void erase_line(std::size_t owner) {
        const auto it = entries_.find(owner);
        const Line<S> old = it->second.line;
        const auto git = it->second.group;
        entries_.erase(it);
        Group &group = git->second;
        group.lines.erase(LineKey{old.intercept, owner});
        if (!group.lines.empty()) {
            promote_dominant(group, old.slope);
            return;
        }
        const Index leaf = group.leaf;
        groups_.erase(git);
        const Event event{leaf, false, {}};
        root_ = remove_rec(root_, old.slope, event);
        release(leaf);
    }

    // Makes the group's leaf carry its current dominant line, fixing crossovers if it changed.
    void promote_dominant(Group &group, const S &slope) {
        const LineKey &top = *group.lines.begin();
        Line<S> &current = nodes_[group.leaf].line;
        if (current.owner == top.owner && current.intercept == top.intercept) {
            return;
        }
        current = Line<S>{slope, top.intercept, top.owner};
        const Event event{group.leaf, true, current};
        refresh(root_, slope, event);
    }

    Index allocate() {
        if (!free_.empty()) {
            const Index i = free_.back();
            free_.pop_back();
            nodes_[i] = Node{};
            return i;
        }
        nodes_.emplace_back();
        return static_cast<Index>(nodes_.size() - 1);
    }

    void release(Index i) { free_.push_back(i); }

    bool goes_left(Index u, const S &slope) {
        ++comparisons_;
        return !(nodes_[nodes_[u].left].max_slope < slope);
    }

    void refresh(Index u, const S &slope, const Event &event) {
        if (nodes_[u].leaf()) {
            return;
        }
        refresh(goes_left(u, slope) ? nodes_[u].left : nodes_[u].right, slope, event);
        if (!bridge_survives(u, event)) {
            compute_bridge(u);
        }
    }

    Index insert_rec(Index u, const Event &event) {
        const S &slope = event.line.slope;
        if (nodes_[u].leaf()) {
            const Index w = allocate();
            ++comparisons_;
            if (slope < nodes_[u].line.slope) {
                nodes_[w].left = event.leaf;
                nodes_[w].right = u;
            } else {
                nodes_[w].left = u;
                nodes_[w].right = event.leaf;
            }
            pull(w);
            compute_bridge(w);
            return w;
        }
        if (goes_left(u, slope)) {
            const Index c = insert_rec(nodes_[u].left, event);
            nodes_[u].left = c;
        } else {
            const Index c = insert_rec(nodes_[u].right, event);
            nodes_[u].right = c;
        }
        return fix_up(u, event);
    }

    Index remove_rec(Index u, const S &slope, const Event &event) {
        if (nodes_[u].leaf()) {
            return kNone;
        }
        const bool left = goes_left(u, slope);
        const Index child = remove_rec(left ? nodes_[u].left : nodes_[u].right, slope, event);
        if (child == kNone) {
            const Index sibling = left ? nodes_[u].right : nodes_[u].left;
            release(u);
            return sibling;
        }
        (left ? nodes_[u].left : nodes_[u].right) = child;
        return fix_up(u, event);
    }

    Index fix_up(Index u, const Event &event) {
        pull(u);
        const int balance = nodes_[nodes_[u].left].height - nodes_[nodes_[u].right].height;
        if (balance > 1 || balance < -1) {
            return rebalance(u, balance);
        }
        if (!bridge_survives(u, event)) {
            compute_bridge(u);
        }
        return u;
    }

    void pull(Index u) {
        Node &n = nodes_[u];
        n.height = 1 + std::max(nodes_[n.left].height, nodes_[n.right].height);
        n.max_slope = nodes_[n.right].max_slope;
    }

    Index rotate_right(Index u) {
        const Index l = nodes_[u].left;
        nodes_[u].left = nodes_[l].right;
        nodes_[l].right = u;
        pull(u);
        compute_bridge(u);
        pull(l);
        compute_bridge(l);
        return l;
    }

    Index rotate_left(Index u) {
        const Index r = nodes_[u].right;
        nodes_[u].right = nodes_[r].left;
        nodes_[r].left = u;
        pull(u);
        compute_bridge(u);
        pull(r);
        compute_bridge(r);
        return r;
    }

    Index rebalance(Index u, int balance) {
        if (balance > 1) {
            const Index l = nodes_[u].left;
            if (nodes_[nodes_[l].left].height < nodes_[nodes_[l].right].height) {
                nodes_[u].left = rotate_left(l);
            }
            return rotate_right(u);
        }
        const Index r = nodes_[u].right;
        if (nodes_[nodes_[r].right].height < nodes_[nodes_[r].left].height) {
            nodes_[u].right = rotate_right(r);
        }
        return rotate_left(u);
    }

    // The stored crossover of `u` is still correct if the changed line is not one of
    // the two lines meeting there and does not pass strictly below the meeting point.
    bool bridge_survives(Index u, const Event &event) {
        const Node &n = nodes_[u];
        if (n.bridge_left == event.leaf || n.bridge_right == event.leaf) {
            return false;
        }
        if (!event.has_line) {
            return true;
        }
        ++comparisons_;
        return !(event.line.at(n.cross) < n.value);
    }

    static bool inside(const S &c, const Bound &lo, const Bound &hi) {
        return (!lo.finite || lo.x < c) && (!hi.finite || c < hi.x);
    }

    // Moves down from `a` while the node's crossover lies outside (lo, hi); the
    // envelope of the subtree equals that of the chosen child on [lo, hi].
    Index narrow(Index a, const Bound &lo, const Bound &hi, std::uint64_t &cmp) const {
        while (!nodes_[a].leaf()) {
            const S &c = nodes_[a].cross;
            cmp += 2;
            if (lo.finite && !(lo.x < c)) {
                a = nodes_[a].left;
            } else if (hi.finite && !(c < hi.x)) {
                a = nodes_[a].right;
            } else {
                break;
            }
        }
        return a;
    }

    /**
     * Finds where the left child's envelope (flatter lines) and the right child's
     * envelope (steeper lines) cross. Their difference g = env_L - env_R is
     * strictly decreasing, so the crossover x* is unique. Each step knows an
     * interval [lo, hi] containing x* and descends one of the two subtrees:
     * sign information comes either from exact values (one side is a single
     * line) or from the slope separator sigma, which bounds env_L's slopes from
     * above and env_R's from below.
     */
    void compute_bridge(Index u) {
        std::uint64_t cmp = 0;
        Index a = nodes_[u].left;
        Index b = nodes_[u].right;
        const S sigma = nodes_[a].max_slope;
        Bound lo;
        Bound hi;
        for (;;) {
            a = narrow(a, lo, hi, cmp);
            b = narrow(b, lo, hi, cmp);
            const Node &na = nodes_[a];
            const Node &nb = nodes_[b];
            if (na.leaf() && nb.leaf()) {
                break;
            }
            ++cmp;
            if (nb.leaf()) {
                if (na.value >= nb.line.at(na.cross)) {
                    lo = {true, na.cross};
                    a = na.left;
                } else {
                    hi = {true, na.cross};
                    a = na.right;
                }
            } else if (na.leaf()) {
                if (na.line.at(nb.cross) > nb.value) {
                    lo = {true, nb.cross};
                    b = nb.left;
                } else {
                    hi = {true, nb.cross};
                    b = nb.right;
                }
            } else if (na.cross < nb.cross) {
                ++cmp;
                if (nb.value - na.value >= sigma * (nb.cross - na.cross)) {
                    hi = {true, nb.cross};
                    b = nb.right;
                } else {
                    lo = {true, na.cross};
                    a = na.left;
                }
            } else if (nb.cross < na.cross) {
                cmp += 2;
                if (na.value - nb.value <= sigma * (na.cross - nb.cross)) {
                    hi = {true, na.cross};
                    a = na.right;
                } else {
                    lo = {true, nb.cross};
                    b = nb.left;
                }
            } else {
                cmp += 2;
                if (na.value >= nb.value) {
                    lo = {true, na.cross};
                    a = na.left;
                } else {
                    hi = {true, na.cross};
                    a = na.right;
                }
            }
        }
        const Line<S> &la = nodes_[a].line;
        const Line<S> &lb = nodes_[b].line;
        Node &n = nodes_[u];
        n.cross = (lb.intercept - la.intercept) / (la.slope - lb.slope);
        n.value = la.at(n.cross);
        n.bridge_left = a;
        n.bridge_right = b;
        comparisons_ += cmp;
    }

    void collect(Index u, Bound lo, Bound hi, std::vector<Breakpoint<S>> &out) const {
        const Node &n = nodes_[u];
        if (n.leaf()) {
            if (out.empty() || out.back().owner != n.line.owner) {
                out.push_back({lo.finite ? std::optional<S>(lo.x) : std::nullopt, n.line.owner});
            }
            return;
        }
        if (lo.finite && !(lo.x < n.cross)) {
            collect(n.left, lo, hi, out);
        } else if (hi.finite && !(n.cross < hi.x)) {
            collect(n.right, lo, hi, out);
        } else {
            collect(n.right, lo, Bound{true, n.cross}, out);
            collect(n.left, Bound{true, n.cross}, hi, out);
        }
    }

    bool audit_node(Index u) {
        Node &n = nodes_[u];
        if (n.leaf()) {
            return n.height == 0 && n.max_slope == n.line.slope;
        }
        if (!audit_node(n.left) || !audit_node(n.right)) {
            return false;
        }
        const Node &l = nodes_[n.left];
        const Node &r = nodes_[n.right];
        if (!(l.max_slope < nodes_[leftmost(n.right)].line.slope)) {
            return false;
        }
        if (n.height != 1 + std::max(l.height, r.height) || std::abs(l.height - r.height) > 1 ||
            !(n.max_slope == r.max_slope)) {
            return false;
        }
        const Node stored = n;
        const std::uint64_t saved = comparisons_;
        compute_bridge(u);
        comparisons_ = saved;
        const bool same = nodes_[u].cross == stored.cross && nodes_[u].value == stored.value;
        nodes_[u] = stored;
        return same;
    }

    Index leftmost(Index u) const {
        while (!nodes_[u].leaf()) {
            u = nodes_[u].left;
        }
        return u;
    }

    std::vector<Node> nodes_;
    std::vector<Index> free_;
    Index root_ = kNone;
    GroupMap groups_;
    std::unordered_map<std::size_t, Entry> entries_;

    std::uint64_t inserts_ = 0;
    std::uint64_t deletes_ = 0;
    std::uint64_t comparisons_ = 0;
    detail::QueryCounter queries_;
    detail::QueryCounter query_comparisons_;
};

}  // namespace makespan
