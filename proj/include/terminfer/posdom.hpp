#pragma once

// The abstract domain Pos: positive Boolean functions (true at the
// all-true point) over interned variables, plus a bottom element that is
// the constant-false function. Elements are canonical decision diagrams,
// so logical equivalence is handle equality. Every operation clamps its
// result back into Pos-or-bottom: a result that is false at the all-true
// point collapses to bottom.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bdd.hpp"
#include "symbols.hpp"

namespace terminfer {

class pos_formula {
public:
    pos_formula() : node_(bdd::true_ref) {}

    static pos_formula top() { return pos_formula(bdd::true_ref); }
    static pos_formula bottom() { return pos_formula(bdd::false_ref); }
    static pos_formula var(symbol v) { return pos_formula(bdd::mk_var(v)); }

    bool is_top() const { return node_ == bdd::true_ref; }
    bool is_bottom() const { return node_ == bdd::false_ref; }

    bdd::node_ref node() const { return node_; }

    std::vector<symbol> support() const { return bdd::support(node_); }

    friend bool operator==(const pos_formula& a, const pos_formula& b) { return a.node_ == b.node_; }
    friend bool operator!=(const pos_formula& a, const pos_formula& b) { return a.node_ != b.node_; }
    friend bool operator<(const pos_formula& a, const pos_formula& b) { return a.node_ < b.node_; }

    // Wraps a raw diagram, collapsing non-positive functions to bottom.
    static pos_formula clamp(bdd::node_ref f) {
        return pos_formula(bdd::eval_all_true(f) ? f : bdd::false_ref);
    }

    std::string render() const;
    static pos_formula parse(const std::string& text);

private:
    explicit pos_formula(bdd::node_ref n) : node_(n) {}
    bdd::node_ref node_;
};

inline pos_formula mk_true() { return pos_formula::top(); }
inline pos_formula mk_false() { return pos_formula::bottom(); }
inline pos_formula mk_var(symbol v) { return pos_formula::var(v); }
inline pos_formula mk_var(std::string_view name) { return pos_formula::var(symbol::intern(name)); }

inline pos_formula conj(const pos_formula& f, const pos_formula& g) {
    return pos_formula::clamp(bdd::land(f.node(), g.node()));
}

inline pos_formula disj(const pos_formula& f, const pos_formula& g) {
    return pos_formula::clamp(bdd::lor(f.node(), g.node()));
}

inline pos_formula iff(const pos_formula& f, const pos_formula& g) {
    return pos_formula::clamp(bdd::liff(f.node(), g.node()));
}

// Weakest element s of Pos-or-bottom with conj(s, psi) entailing e;
// classical implication when that is positive, bottom otherwise.
inline pos_formula pseudo_complement(const pos_formula& psi, const pos_formula& e) {
    return pos_formula::clamp(bdd::limp(psi.node(), e.node()));
}

inline bool entails(const pos_formula& f, const pos_formula& g) {
    return bdd::limp(f.node(), g.node()) == bdd::true_ref;
}

inline pos_formula exists(const pos_formula& f, symbol v) {
    return pos_formula::clamp(bdd::exists(f.node(), v));
}

template <typename Iterable>
inline pos_formula exists_all(const pos_formula& f, const Iterable& vars) {
    bdd::node_ref n = f.node();
    for (symbol v : vars) n = bdd::exists(n, v);
    return pos_formula::clamp(n);
}

// Largest element of Pos-or-bottom implying the universal quantification
// of f over vars; bottom when that quantification leaves Pos.
template <typename Iterable>
inline pos_formula forall_project(const pos_formula& f, const Iterable& vars) {
    bdd::node_ref n = f.node();
    for (symbol v : vars) n = bdd::forall(n, v);
    return pos_formula::clamp(n);
}

inline pos_formula forall_project(const pos_formula& f, std::initializer_list<symbol> vars) {
    return forall_project<std::initializer_list<symbol>>(f, vars);
}

namespace detail {

inline bdd::node_ref rename_rec(bdd::node_ref f, const std::map<symbol, symbol>& mapping,
                                std::unordered_map<bdd::node_ref, bdd::node_ref>& memo) {
    if (f <= bdd::true_ref) return f;
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    const auto& m = bdd::detail::manager::get();
    std::uint32_t var;
    bdd::node_ref lo, hi;
    {
        std::lock_guard<std::mutex> lock(bdd::detail::manager::get().mu);
        const auto& n = m.at(f);
        var = n.var;
        lo = n.lo;
        hi = n.hi;
    }
    bdd::node_ref rlo = rename_rec(lo, mapping, memo);
    bdd::node_ref rhi = rename_rec(hi, mapping, memo);
    symbol v = symbol::from_id(var);
    auto mit = mapping.find(v);
    if (mit != mapping.end()) v = mit->second;
    bdd::node_ref r = bdd::ite(bdd::mk_var(v), rhi, rlo);
    memo.emplace(f, r);
    return r;
}

}  // namespace detail

// Variable renaming; the mapping must be injective on vars(f).
inline pos_formula rename(const pos_formula& f, const std::map<symbol, symbol>& mapping) {
    std::set<symbol> targets;
    std::vector<symbol> sup = f.support();
    std::set<symbol> sup_set(sup.begin(), sup.end());
    for (symbol v : sup) {
        auto it = mapping.find(v);
        symbol tgt = (it != mapping.end()) ? it->second : v;
        if (!targets.insert(tgt).second)
            throw std::invalid_argument("rename: mapping not injective on formula variables");
    }
    std::unordered_map<bdd::node_ref, bdd::node_ref> memo;
    return pos_formula::clamp(detail::rename_rec(f.node(), mapping, memo));
}

// General substitution: maps argument variables to (possibly repeated)
// target variables. Computed as exists(dom(f)). (f /\ /\_i (v_i <-> w_i)),
// routing through temporaries when source and target sets overlap.
inline pos_formula instantiate(const pos_formula& f, const std::map<symbol, symbol>& mapping) {
    std::vector<symbol> sup = f.support();
    bool overlap = false;
    std::set<symbol> dsts;
    for (const auto& [src, dst] : mapping) dsts.insert(dst);
    for (symbol v : sup)
        if (dsts.count(v) && !(mapping.count(v) && mapping.at(v) == v)) overlap = true;

    if (overlap) {
        std::map<symbol, symbol> to_tmp, from_tmp;
        int k = 0;
        for (const auto& [src, dst] : mapping) {
            symbol t = symbol::intern("$t" + std::to_string(k++));
            to_tmp.emplace(src, t);
            from_tmp.emplace(t, dst);
        }
        return instantiate(rename(f, to_tmp), from_tmp);
    }

    bdd::node_ref n = f.node();
    for (const auto& [src, dst] : mapping)
        n = bdd::land(n, bdd::liff(bdd::mk_var(src), bdd::mk_var(dst)));
    for (const auto& [src, dst] : mapping) n = bdd::exists(n, src);
    return pos_formula::clamp(n);
}

// --- prime implicants, rendering, parsing ---------------------------------

namespace detail {

// A cube: variable -> polarity. Implicitly a conjunction of literals.
using cube = std::map<symbol, bool>;

inline bool cube_subsumes(const cube& small, const cube& big) {
    for (const auto& [v, pol] : small) {
        auto it = big.find(v);
        if (it == big.end() || it->second != pol) return false;
    }
    return true;
}

inline bool cube_implies(const cube& c, bdd::node_ref g) {
    for (const auto& [v, pol] : c) g = bdd::restrict1(g, v, pol);
    return g == bdd::true_ref;
}

// All prime implicants of g (Morreale-style recursion on the diagram).
inline std::vector<cube> primes(bdd::node_ref g,
                                std::unordered_map<bdd::node_ref, std::vector<cube>>& memo) {
    if (g == bdd::true_ref) return {cube{}};
    if (g == bdd::false_ref) return {};
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    symbol v;
    bdd::node_ref lo, hi;
    {
        auto& m = bdd::detail::manager::get();
        std::lock_guard<std::mutex> lock(m.mu);
        const auto& n = m.at(g);
        v = symbol::from_id(n.var);
        lo = n.lo;
        hi = n.hi;
    }
    bdd::node_ref both = bdd::land(lo, hi);
    std::vector<cube> result = primes(both, memo);
    for (bool pol : {false, true}) {
        bdd::node_ref side = pol ? hi : lo;
        for (const cube& c : primes(side, memo)) {
            if (cube_implies(c, both)) continue;  // absorbed: v not needed
            cube ext = c;
            ext.emplace(v, pol);
            result.push_back(ext);
        }
    }
    memo.emplace(g, result);
    return result;
}

inline std::vector<cube> primes(bdd::node_ref g) {
    std::unordered_map<bdd::node_ref, std::vector<cube>> memo;
    return primes(g, memo);
}

inline bool is_monotone(bdd::node_ref f) {
    for (symbol v : bdd::support(f)) {
        bdd::node_ref lo = bdd::restrict1(f, v, false);
        bdd::node_ref hi = bdd::restrict1(f, v, true);
        if (bdd::limp(lo, hi) != bdd::true_ref) return false;
    }
    return true;
}

inline std::string join_vars(const std::vector<symbol>& vs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += sep;
        out += std::string(vs[i].name());
    }
    return out;
}

}  // namespace detail

// Deterministic canonical rendering. Monotone functions print as the
// unique minimal disjunction of variable conjunctions; other positive
// functions print as the conjunction of their prime implicates, each an
// implication with the negative literals on the left.
inline std::string pos_formula::render() const {
    if (is_bottom()) return "false";
    if (is_top()) return "true";

    auto sorted_cubes = [](std::vector<detail::cube> cs) {
        std::vector<std::pair<std::vector<std::pair<symbol, bool>>, detail::cube>> keyed;
        for (auto& c : cs) {
            std::vector<std::pair<symbol, bool>> key(c.begin(), c.end());
            keyed.emplace_back(std::move(key), std::move(c));
        }
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
            if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
            return a.first < b.first;
        });
        std::vector<detail::cube> out;
        for (auto& [k, c] : keyed) out.push_back(std::move(c));
        return out;
    };

    if (detail::is_monotone(node_)) {
        std::vector<detail::cube> ps = sorted_cubes(detail::primes(node_));
        std::vector<std::string> parts;
        for (const auto& c : ps) {
            std::vector<symbol> vs;
            for (const auto& [v, pol] : c) vs.push_back(v);
            std::string s = detail::join_vars(vs, " & ");
            if (ps.size() > 1 && vs.size() > 1) s = "(" + s + ")";
            parts.push_back(s);
        }
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " | ";
            out += parts[i];
        }
        return out;
    }

    // Prime implicates of f are the negations of the prime implicants of ~f.
    std::vector<detail::cube> impls = sorted_cubes(detail::primes(bdd::lnot(node_)));
    std::vector<std::string> parts;
    for (const auto& c : impls) {
        std::vector<symbol> antecedent, consequent;
        for (const auto& [v, pol] : c) (pol ? antecedent : consequent).push_back(v);
        std::string s;
        if (antecedent.empty()) {
            s = detail::join_vars(consequent, " | ");
        } else {
            s = detail::join_vars(antecedent, " & ") + " -> " + detail::join_vars(consequent, " | ");
        }
        if (impls.size() > 1) s = "(" + s + ")";
        parts.push_back(s);
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " & ";
        out += parts[i];
    }
    return out;
}

namespace detail {

// Grammar: iff := imp ('<->' imp)* ; imp := or ('->' imp)? ;
// or := and ('|' and)* ; and := primary ('&' primary)* ;
// primary := 'true' | 'false' | ident | '(' iff ')'
class formula_parser {
public:
    explicit formula_parser(const std::string& text) : text_(text), pos_(0) {}

    bdd::node_ref parse() {
        bdd::node_ref r = parse_iff();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return r;
    }

private:
    bdd::node_ref parse_iff() {
        bdd::node_ref lhs = parse_imp();
        while (eat("<->")) lhs = bdd::liff(lhs, parse_imp());
        return lhs;
    }
    bdd::node_ref parse_imp() {
        bdd::node_ref lhs = parse_or();
        if (eat("->")) return bdd::limp(lhs, parse_imp());
        return lhs;
    }
    bdd::node_ref parse_or() {
        bdd::node_ref lhs = parse_and();
        while (eat("|")) lhs = bdd::lor(lhs, parse_and());
        return lhs;
    }
    bdd::node_ref parse_and() {
        bdd::node_ref lhs = parse_primary();
        while (eat("&")) lhs = bdd::land(lhs, parse_primary());
        return lhs;
    }
    bdd::node_ref parse_primary() {
        skip_ws();
        if (eat("(")) {
            bdd::node_ref r = parse_iff();
            if (!eat(")")) fail("expected ')'");
            return r;
        }
        std::string id = ident();
        if (id == "true") return bdd::true_ref;
        if (id == "false") return bdd::false_ref;
        return bdd::mk_var(symbol::intern(id));
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected identifier");
        return text_.substr(start, pos_ - start);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(const std::string& tok) {
        skip_ws();
        if (text_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("formula parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    std::string text_;
    std::size_t pos_;
};

}  // namespace detail

inline pos_formula pos_formula::parse(const std::string& text) {
    detail::formula_parser p(text);
    return clamp(p.parse());
}

}  // namespace terminfer
