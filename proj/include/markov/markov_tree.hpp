#ifndef MARKOV_MARKOV_TREE_HPP
#define MARKOV_MARKOV_TREE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace markov {

/// Rooted tree as a parent array; parent[root] == -1.
struct MarkovTree {
    std::vector<int> parent;
    int depth = 0;  // height of the root

    explicit MarkovTree(std::vector<int> p) : parent(std::move(p)) {
        const int n = static_cast<int>(parent.size());
        if (n == 0) throw std::invalid_argument("tree: empty");
        for (int v = 0; v < n; ++v) {
            if (parent[v] == -1) {
                if (root_ >= 0) throw std::invalid_argument("tree: two roots");
                root_ = v;
            } else if (parent[v] < 0 || parent[v] >= n) {
                throw std::invalid_argument("tree: parent out of range");
            }
        }
        if (root_ < 0) throw std::invalid_argument("tree: no root");
        children_.resize(n);
        for (int v = 0; v < n; ++v)
            if (v != root_) children_[parent[v]].push_back(v);
        std::vector<int> order{root_};
        order.reserve(n);
        for (std::size_t head = 0; head < order.size(); ++head)
            for (int u : children_[order[head]]) order.push_back(u);
        if (static_cast<int>(order.size()) != n)
            throw std::invalid_argument("tree: parent pointers contain a cycle");
        height_.assign(n, 0);
        for (std::size_t i = order.size(); i-- > 0;) {
            int v = order[i];
            for (int u : children_[v]) height_[v] = std::max(height_[v], height_[u] + 1);
        }
        depth = height_[root_];
    }

    int root() const { return root_; }
    const std::vector<std::vector<int>>& children() const { return children_; }
    int height(int v) const { return height_[v]; }

private:
    int root_ = -1;
    std::vector<std::vector<int>> children_;
    std::vector<int> height_;
};

struct TransitionMatrix {
    std::vector<std::vector<long long>> counts;  // row: parent class, column: child class
    std::vector<std::string> labels;             // canonical form per class
};

struct TreeClasses {
    std::vector<int> class_of;        // per vertex
    std::vector<std::string> labels;  // per class, canonical form at the cap
    std::optional<TransitionMatrix> transitions;
};

namespace detail {

/// Interned canonical forms of rooted subtrees truncated at a horizon. Id 0
/// is the horizon mark: everything at distance exactly the horizon becomes
/// the mark, leaf or not, so two subtrees compare only on what lies strictly
/// inside it. Leaves inside the horizon keep their own id and never collide
/// with the mark.
class TreeCanon {
public:
    explicit TreeCanon(const MarkovTree& t) : tree_(t) {}

    const std::vector<int>& forms(int c) {
        while (static_cast<int>(forms_.size()) <= c) {
            const int level = static_cast<int>(forms_.size());
            std::vector<int> cur(tree_.parent.size());
            for (std::size_t v = 0; v < tree_.parent.size(); ++v) {
                const auto& ch = tree_.children()[v];
                if (level == 0) {
                    cur[v] = 0;
                } else if (ch.empty()) {
                    cur[v] = intern({});
                } else {
                    std::vector<int> key;
                    for (int u : ch) key.push_back(forms_[level - 1][u]);
                    std::sort(key.begin(), key.end());
                    cur[v] = intern(std::move(key));
                }
            }
            forms_.push_back(std::move(cur));
        }
        return forms_[c];
    }

    std::string render(int v, int c) const {
        if (c == 0) return "*";
        const auto& ch = tree_.children()[v];
        if (ch.empty()) return "()";
        std::vector<std::string> parts;
        for (int u : ch) parts.push_back(render(u, c - 1));
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (const std::string& p : parts) out += p;
        return out + ")";
    }

private:
    int intern(std::vector<int> key) {
        auto [it, fresh] =
            ids_.try_emplace(std::move(key), static_cast<int>(ids_.size()) + 1);
        (void)fresh;
        return it->second;
    }

    const MarkovTree& tree_;
    std::map<std::vector<int>, int> ids_;
    std::vector<std::vector<int>> forms_;
};

}  // namespace detail

/**
 * Vertex classes by rooted-subtree isomorphism truncated at depth_cap.
 *
 * The transition matrix covers the full-horizon classes (vertices of height
 * at least the cap) and is emitted only when the evidence is closed: each
 * such class must truncate to a distinct cap-1 form, and every member whose
 * children all reach the cap must see the same class multiset among its
 * children, with at least one such member per class. A finite tree that
 * keeps splitting classes as the horizon deepens fails these checks and
 * yields no matrix; the verdict is about the built horizon, nothing more.
 */
inline TreeClasses tree_classes(const MarkovTree& t, int depth_cap) {
    if (depth_cap < 1) throw std::invalid_argument("tree_classes: cap must be positive");
    const int n = static_cast<int>(t.parent.size());
    detail::TreeCanon canon(t);
    const std::vector<int> deep = canon.forms(depth_cap);
    const std::vector<int> shallow = canon.forms(depth_cap - 1);

    TreeClasses out;
    out.class_of.assign(n, -1);
    std::map<int, int> class_id;
    for (int v = 0; v < n; ++v) {
        auto [it, fresh] = class_id.try_emplace(deep[v], static_cast<int>(class_id.size()));
        out.class_of[v] = it->second;
        if (fresh) out.labels.push_back(canon.render(v, depth_cap));
    }

    std::vector<int> interior;
    for (int v = 0; v < n; ++v)
        if (t.height(v) >= depth_cap) interior.push_back(v);
    if (interior.empty()) return out;

    std::vector<int> iforms, irep;
    std::map<int, int> irow;
    for (int v : interior) {
        auto [it, fresh] = irow.try_emplace(deep[v], static_cast<int>(irow.size()));
        if (fresh) {
            iforms.push_back(deep[v]);
            irep.push_back(v);
        }
    }
    std::map<int, int> col_of;  // cap-1 form -> column of the class it cuts to
    for (int v : interior) {
        auto [it, fresh] = col_of.try_emplace(shallow[v], irow.at(deep[v]));
        if (it->second != irow.at(deep[v])) return out;  // classes merge one level down
    }
    if (col_of.size() != iforms.size()) return out;

    const int k = static_cast<int>(iforms.size());
    std::vector<std::vector<long long>> counts(k);
    for (int v : interior) {
        bool all_deep = true;
        for (int u : t.children()[v])
            if (t.height(u) < depth_cap) { all_deep = false; break; }
        if (!all_deep) continue;  // boundary ring: children carry leaf evidence
        std::vector<long long> row(k, 0);
        for (int u : t.children()[v]) ++row[col_of.at(shallow[u])];
        auto& have = counts[irow.at(deep[v])];
        if (have.empty()) have = std::move(row);
        else if (have != row) return out;  // members disagree: not stabilized
    }
    for (const auto& row : counts)
        if (row.empty()) return out;  // a class no member certifies

    TransitionMatrix m;
    m.counts = std::move(counts);
    for (int v : irep) m.labels.push_back(canon.render(v, depth_cap));
    out.transitions = std::move(m);
    return out;
}

}  // namespace markov

#endif
