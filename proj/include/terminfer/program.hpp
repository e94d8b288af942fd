#pragma once

// Clause and program representation, shared by the parsed and the
// normalized stages. A normalized clause has pairwise-distinct variables
// as head arguments, variables as call arguments, and explicit
// unification literals for everything else; an optional assertion (a Pos
// formula over the canonical argument variables x1..xn) rides on each
// clause.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "posdom.hpp"
#include "symbols.hpp"
#include "term.hpp"

namespace terminfer {

class analysis_error : public std::runtime_error {
public:
    explicit analysis_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct pred_ref {
    symbol name;
    std::uint32_t arity = 0;

    std::string render() const {
        return std::string(name.name()) + "/" + std::to_string(arity);
    }

    friend bool operator==(const pred_ref& a, const pred_ref& b) {
        return a.name == b.name && a.arity == b.arity;
    }
    friend bool operator!=(const pred_ref& a, const pred_ref& b) { return !(a == b); }
    friend bool operator<(const pred_ref& a, const pred_ref& b) {
        if (a.name != b.name) return a.name < b.name;
        return a.arity < b.arity;
    }
};

struct literal {
    enum class kind { call, unify };

    kind k;
    // call
    pred_ref pred;
    std::vector<term_ptr> args;
    // unify (normalized: lhs is a variable); the parser represents a raw
    // T1 = T2 goal as a unify literal whose lhs rides in `raw_lhs`.
    symbol lhs;
    term_ptr rhs;
    term_ptr raw_lhs;  // only before normalization

    static literal call_lit(pred_ref p, std::vector<term_ptr> as) {
        literal l;
        l.k = kind::call;
        l.pred = p;
        l.args = std::move(as);
        return l;
    }
    static literal unify_lit(symbol lhs, term_ptr rhs) {
        literal l;
        l.k = kind::unify;
        l.lhs = lhs;
        l.rhs = std::move(rhs);
        l.raw_lhs = term::var(l.lhs);
        return l;
    }
    static literal raw_unification(term_ptr lhs, term_ptr rhs) {
        literal l;
        l.k = kind::unify;
        l.raw_lhs = std::move(lhs);
        l.rhs = std::move(rhs);
        if (l.raw_lhs->is_var()) l.lhs = l.raw_lhs->name;
        return l;
    }

    bool is_call() const { return k == kind::call; }
    bool is_unify() const { return k == kind::unify; }
};

struct clause {
    pred_ref pred;
    std::vector<term_ptr> head_args;
    std::optional<pos_formula> assertion;  // over head_var(0..arity-1)
    std::vector<literal> body;
    int line = 0;

    std::vector<symbol> head_vars() const {
        std::vector<symbol> out;
        for (const auto& t : head_args)
            if (t->is_var()) out.push_back(t->name);
        return out;
    }

    bool head_is_normal() const {
        std::set<symbol> seen;
        for (const auto& t : head_args) {
            if (!t->is_var()) return false;
            if (!seen.insert(t->name).second) return false;
        }
        return true;
    }

    std::vector<symbol> all_vars() const {
        std::vector<symbol> out;
        for (const auto& t : head_args) collect_vars(t, out);
        for (const auto& l : body) {
            if (l.is_call()) {
                for (const auto& a : l.args) collect_vars(a, out);
            } else {
                if (l.raw_lhs) collect_vars(l.raw_lhs, out);
                collect_vars(l.rhs, out);
            }
        }
        return out;
    }
};

struct program {
    std::vector<clause> clauses;
    std::vector<pred_ref> predicates;              // first definition order
    std::map<pred_ref, std::set<pred_ref>> calls;  // dependency graph

    void index_predicates() {
        predicates.clear();
        calls.clear();
        std::set<pred_ref> seen;
        for (const auto& cl : clauses) {
            if (seen.insert(cl.pred).second) predicates.push_back(cl.pred);
            for (const auto& l : cl.body)
                if (l.is_call()) calls[cl.pred].insert(l.pred);
        }
    }

    bool defines(const pred_ref& p) const {
        for (const auto& q : predicates)
            if (q == p) return true;
        return false;
    }

    std::vector<const clause*> clauses_of(const pred_ref& p) const {
        std::vector<const clause*> out;
        for (const auto& cl : clauses)
            if (cl.pred == p) out.push_back(&cl);
        return out;
    }
};

namespace detail {

class fresh_names {
public:
    explicit fresh_names(const std::set<symbol>& used) : used_(used) {}

    symbol head_name() {
        for (;;) {
            std::string cand = head_counter_ < 26
                                   ? std::string(1, static_cast<char>('A' + head_counter_))
                                   : "H" + std::to_string(head_counter_ - 25);
            ++head_counter_;
            symbol s = symbol::intern(cand);
            if (used_.insert(s).second) return s;
        }
    }

    symbol body_name() {
        for (;;) {
            std::string cand = "V" + std::to_string(++body_counter_);
            symbol s = symbol::intern(cand);
            if (used_.insert(s).second) return s;
        }
    }

private:
    std::set<symbol> used_;
    int head_counter_ = 0;
    int body_counter_ = 0;
};

inline clause normalize_clause(const clause& in) {
    std::vector<symbol> vs = in.all_vars();
    fresh_names fresh(std::set<symbol>(vs.begin(), vs.end()));

    clause out;
    out.pred = in.pred;
    out.line = in.line;
    out.assertion = in.assertion;

    // Head arguments become pairwise-distinct variables. A head that is
    // already in normal form is kept; otherwise every argument position
    // gets a fresh variable and one unification, in argument order.
    if (in.head_is_normal()) {
        out.head_args = in.head_args;
    } else {
        for (std::size_t i = 0; i < in.head_args.size(); ++i) {
            symbol h = fresh.head_name();
            out.head_args.push_back(term::var(h));
            out.body.push_back(literal::unify_lit(h, in.head_args[i]));
        }
    }

    for (const auto& l : in.body) {
        if (l.is_unify()) {
            term_ptr a = l.raw_lhs ? l.raw_lhs : term::var(l.lhs);
            term_ptr b = l.rhs;
            if (a->is_var()) {
                out.body.push_back(literal::unify_lit(a->name, b));
            } else if (b->is_var()) {
                out.body.push_back(literal::unify_lit(b->name, a));
            } else {
                symbol v = fresh.body_name();
                out.body.push_back(literal::unify_lit(v, a));
                out.body.push_back(literal::unify_lit(v, b));
            }
            continue;
        }
        std::vector<term_ptr> args;
        for (const auto& arg : l.args) {
            if (arg->is_var()) {
                args.push_back(arg);
            } else {
                symbol v = fresh.body_name();
                out.body.push_back(literal::unify_lit(v, arg));
                args.push_back(term::var(v));
            }
        }
        out.body.push_back(literal::call_lit(l.pred, std::move(args)));
    }
    return out;
}

}  // namespace detail

// Normalizes every clause and checks that all called predicates are
// defined; unknown predicates are hard errors.
inline program normalize(const program& in) {
    program out;
    for (const auto& cl : in.clauses) out.clauses.push_back(detail::normalize_clause(cl));
    out.index_predicates();
    for (const auto& [caller, callees] : out.calls)
        for (const auto& callee : callees)
            if (!out.defines(callee))
                throw analysis_error("unknown predicate " + callee.render() + " called from " +
                                     caller.render());
    return out;
}

// Attaches the per-predicate assertions (formulas over x1..xn) to every
// clause of that predicate; predicates not in the map keep mu = true.
inline program attach_assertions(const program& in,
                                 const std::map<pred_ref, pos_formula>& assertions) {
    for (const auto& [p, mu] : assertions) {
        if (!in.defines(p)) throw analysis_error("assertion for unknown predicate " + p.render());
        std::set<symbol> allowed;
        for (std::uint32_t i = 0; i < p.arity; ++i) allowed.insert(head_var(i));
        for (symbol v : mu.support())
            if (!allowed.count(v))
                throw analysis_error("assertion for " + p.render() +
                                     " mentions non-argument variable " + std::string(v.name()));
    }
    program out = in;
    for (auto& cl : out.clauses) {
        auto it = assertions.find(cl.pred);
        cl.assertion = (it != assertions.end()) ? it->second : mk_true();
    }
    return out;
}

// --- rendering and structural equality -------------------------------------

inline std::string render(const literal& l) {
    if (l.is_unify()) {
        term_ptr lhs = l.raw_lhs ? l.raw_lhs : term::var(l.lhs);
        return render(lhs) + " = " + render(l.rhs);
    }
    if (l.args.empty()) return std::string(l.pred.name.name());
    std::string out = std::string(l.pred.name.name()) + "(";
    for (std::size_t i = 0; i < l.args.size(); ++i) {
        if (i) out += ",";
        out += render(l.args[i]);
    }
    return out + ")";
}

inline std::string render(const clause& cl) {
    std::string out(cl.pred.name.name());
    if (!cl.head_args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < cl.head_args.size(); ++i) {
            if (i) out += ",";
            out += render(cl.head_args[i]);
        }
        out += ")";
    }
    if (!cl.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < cl.body.size(); ++i) {
            if (i) out += ", ";
            out += render(cl.body[i]);
        }
    }
    return out + ".";
}

inline std::string render(const program& p) {
    std::string out;
    for (const auto& cl : p.clauses) out += render(cl) + "\n";
    return out;
}

inline bool literal_equal(const literal& a, const literal& b) {
    if (a.k != b.k) return false;
    if (a.is_call()) {
        if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!term_equal(a.args[i], b.args[i])) return false;
        return true;
    }
    term_ptr la = a.raw_lhs ? a.raw_lhs : term::var(a.lhs);
    term_ptr lb = b.raw_lhs ? b.raw_lhs : term::var(b.lhs);
    return term_equal(la, lb) && term_equal(a.rhs, b.rhs);
}

inline bool clause_equal(const clause& a, const clause& b) {
    if (a.pred != b.pred || a.head_args.size() != b.head_args.size() ||
        a.body.size() != b.body.size())
        return false;
    for (std::size_t i = 0; i < a.head_args.size(); ++i)
        if (!term_equal(a.head_args[i], b.head_args[i])) return false;
    for (std::size_t i = 0; i < a.body.size(); ++i)
        if (!literal_equal(a.body[i], b.body[i])) return false;
    return true;
}

inline bool program_equal(const program& a, const program& b) {
    if (a.clauses.size() != b.clauses.size()) return false;
    for (std::size_t i = 0; i < a.clauses.size(); ++i)
        if (!clause_equal(a.clauses[i], b.clauses[i])) return false;
    return true;
}

}  // namespace terminfer
