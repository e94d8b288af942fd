#pragma once

// Reduced ordered binary decision diagrams over interned symbols.
// The node store is a process-wide hash-consed arena: equal Boolean
// functions always share one node index, so equality of functions is
// equality of handles. The symbol interning order is the variable order
// (smaller ids are tested first). All public entry points lock a single
// mutex; nodes are never freed.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>
#include <vector>

#include "symbols.hpp"

namespace terminfer::bdd {

using node_ref = std::uint32_t;

inline constexpr node_ref false_ref = 0;
inline constexpr node_ref true_ref = 1;
inline constexpr std::uint32_t terminal_var = UINT32_MAX;

namespace detail {

struct node {
    std::uint32_t var;
    node_ref lo;  // value of the function when var = 0
    node_ref hi;  // value of the function when var = 1
};

struct triple_hash {
    std::size_t operator()(const std::array<std::uint32_t, 3>& k) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (std::uint32_t v : k) h = (h ^ v) * 0x100000001b3ull;
        return h;
    }
};

class manager {
public:
    static manager& get() {
        static manager m;
        return m;
    }

    std::mutex mu;

    node_ref mk(std::uint32_t var, node_ref lo, node_ref hi) {
        if (lo == hi) return lo;
        assert(nodes_[lo].var > var && nodes_[hi].var > var);
        std::array<std::uint32_t, 3> key{var, lo, hi};
        auto it = unique_.find(key);
        if (it != unique_.end()) return it->second;
        node_ref r = static_cast<node_ref>(nodes_.size());
        nodes_.push_back(node{var, lo, hi});
        unique_.emplace(key, r);
        return r;
    }

    node_ref var_node(std::uint32_t var) { return mk(var, false_ref, true_ref); }

    const node& at(node_ref r) const { return nodes_[r]; }
    bool is_terminal(node_ref r) const { return r <= true_ref; }

    node_ref ite(node_ref f, node_ref g, node_ref h) {
        if (f == true_ref) return g;
        if (f == false_ref) return h;
        if (g == h) return g;
        if (g == true_ref && h == false_ref) return f;
        std::array<std::uint32_t, 3> key{f, g, h};
        auto it = ite_cache_.find(key);
        if (it != ite_cache_.end()) return it->second;
        std::uint32_t v = top_var(f, g, h);
        node_ref lo = ite(cof(f, v, false), cof(g, v, false), cof(h, v, false));
        node_ref hi = ite(cof(f, v, true), cof(g, v, true), cof(h, v, true));
        node_ref r = mk(v, lo, hi);
        ite_cache_.emplace(key, r);
        return r;
    }

    node_ref neg(node_ref f) { return ite(f, false_ref, true_ref); }

    node_ref restrict1(node_ref f, std::uint32_t var, bool val) {
        if (is_terminal(f) || nodes_[f].var > var) return f;
        std::array<std::uint32_t, 3> key{f, var, static_cast<std::uint32_t>(val)};
        auto it = restrict_cache_.find(key);
        if (it != restrict_cache_.end()) return it->second;
        const node n = nodes_[f];
        node_ref r;
        if (n.var == var) {
            r = val ? n.hi : n.lo;
        } else {
            r = mk(n.var, restrict1(n.lo, var, val), restrict1(n.hi, var, val));
        }
        restrict_cache_.emplace(key, r);
        return r;
    }

    void support(node_ref f, std::set<std::uint32_t>& out) {
        if (is_terminal(f)) return;
        if (!support_seen_.insert(f).second) return;
        out.insert(nodes_[f].var);
        support(nodes_[f].lo, out);
        support(nodes_[f].hi, out);
    }
    void support_reset() { support_seen_.clear(); }

private:
    manager() {
        nodes_.push_back(node{terminal_var, false_ref, false_ref});  // 0
        nodes_.push_back(node{terminal_var, true_ref, true_ref});    // 1
    }

    std::uint32_t top_var(node_ref f, node_ref g, node_ref h) const {
        std::uint32_t v = terminal_var;
        if (!is_terminal(f)) v = std::min(v, nodes_[f].var);
        if (!is_terminal(g)) v = std::min(v, nodes_[g].var);
        if (!is_terminal(h)) v = std::min(v, nodes_[h].var);
        return v;
    }

    node_ref cof(node_ref f, std::uint32_t v, bool val) const {
        if (is_terminal(f) || nodes_[f].var != v) return f;
        return val ? nodes_[f].hi : nodes_[f].lo;
    }

    std::vector<node> nodes_;
    std::unordered_map<std::array<std::uint32_t, 3>, node_ref, triple_hash> unique_;
    std::unordered_map<std::array<std::uint32_t, 3>, node_ref, triple_hash> ite_cache_;
    std::unordered_map<std::array<std::uint32_t, 3>, node_ref, triple_hash> restrict_cache_;
    std::set<node_ref> support_seen_;
};

}  // namespace detail

// --- public entry points -------------------------------------------------

inline node_ref mk_var(symbol v) {
    auto& m = detail::manager::get();
    std::lock_guard<std::mutex> lock(m.mu);
    return m.var_node(v.id());
}

inline node_ref ite(node_ref f, node_ref g, node_ref h) {
    auto& m = detail::manager::get();
    std::lock_guard<std::mutex> lock(m.mu);
    return m.ite(f, g, h);
}

inline node_ref land(node_ref f, node_ref g) { return ite(f, g, false_ref); }
inline node_ref lor(node_ref f, node_ref g) { return ite(f, true_ref, g); }
inline node_ref lnot(node_ref f) { return ite(f, false_ref, true_ref); }
inline node_ref limp(node_ref f, node_ref g) { return ite(f, g, true_ref); }
inline node_ref liff(node_ref f, node_ref g) { return ite(f, g, lnot(g)); }

inline node_ref restrict1(node_ref f, symbol v, bool val) {
    auto& m = detail::manager::get();
    std::lock_guard<std::mutex> lock(m.mu);
    return m.restrict1(f, v.id(), val);
}

inline node_ref exists(node_ref f, symbol v) {
    auto& m = detail::manager::get();
    std::lock_guard<std::mutex> lock(m.mu);
    node_ref lo = m.restrict1(f, v.id(), false);
    node_ref hi = m.restrict1(f, v.id(), true);
    return m.ite(lo, true_ref, hi);
}

inline node_ref forall(node_ref f, symbol v) {
    auto& m = detail::manager::get();
    std::lock_guard<std::mutex> lock(m.mu);
    node_ref lo = m.restrict1(f, v.id(), false);
    node_ref hi = m.restrict1(f, v.id(), true);
    return m.ite(lo, hi, false_ref);
}

// Evaluates the function at the all-true point.
inline bool eval_all_true(node_ref f) {
    auto& m = detail::manager::get();
    std::lock_guard<std::mutex> lock(m.mu);
    while (!m.is_terminal(f)) f = m.at(f).hi;
    return f == true_ref;
}

// Evaluates under an assignment; unmentioned variables default to `deflt`.
inline bool eval(node_ref f, const std::map<symbol, bool>& assignment, bool deflt = false) {
    auto& m = detail::manager::get();
    std::lock_guard<std::mutex> lock(m.mu);
    while (!m.is_terminal(f)) {
        const auto& n = m.at(f);
        auto it = assignment.find(symbol::from_id(n.var));
        bool val = (it != assignment.end()) ? it->second : deflt;
        f = val ? n.hi : n.lo;
    }
    return f == true_ref;
}

// Variables the function actually depends on, in variable order.
inline std::vector<symbol> support(node_ref f) {
    auto& m = detail::manager::get();
    std::lock_guard<std::mutex> lock(m.mu);
    std::set<std::uint32_t> ids;
    m.support_reset();
    m.support(f, ids);
    m.support_reset();
    std::vector<symbol> out;
    out.reserve(ids.size());
    for (std::uint32_t id : ids) out.push_back(symbol::from_id(id));
    return out;
}

}  // namespace terminfer::bdd
