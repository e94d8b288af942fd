#pragma once

// The whole-program analyses: the groundness/rigidity success set over
// Pos, goal-dependent call patterns for leftmost execution, and the size
// binary-clause semantics that exposes every loop as an abstract clause
// p(x1..xn) <- pi, p(y1..yn).
//
// The polyhedral size-success fixpoint uses the convex-hull join with
// periodic widening. Emitted binary clauses are abstracted to
// order/equality relations between pairs of argument-size variables;
// that language is finite per predicate pair, so the composition closure
// terminates by subsumption alone.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mode.hpp"
#include "norms.hpp"
#include "posdom.hpp"
#include "program.hpp"
#include "sizedom.hpp"

namespace terminfer {

struct analysis_options {
    norm_kind norm = norm_kind::term_size;
    int widen_every = 3;
    linear_conjunction::join_mode join = linear_conjunction::join_mode::hull;
};

using success_map = std::map<pred_ref, pos_formula>;

namespace detail {

inline std::map<symbol, symbol> arg_to_vars(const std::vector<term_ptr>& args) {
    std::map<symbol, symbol> m;
    for (std::size_t i = 0; i < args.size(); ++i) m.emplace(head_var(i), args[i]->name);
    return m;
}

inline std::map<symbol, symbol> vars_to_args(const std::vector<term_ptr>& head_args) {
    std::map<symbol, symbol> m;
    for (std::size_t i = 0; i < head_args.size(); ++i) m.emplace(head_args[i]->name, head_var(i));
    return m;
}

// Projects a clause-level formula onto the argument tuple of a call,
// expressed over the canonical x1..xn.
inline pos_formula project_onto_args(const pos_formula& f, const std::vector<term_ptr>& args) {
    bdd::node_ref g = f.node();
    for (std::size_t i = 0; i < args.size(); ++i)
        g = bdd::land(g, bdd::liff(bdd::mk_var(head_var(i)), bdd::mk_var(args[i]->name)));
    std::set<symbol> keep;
    for (std::size_t i = 0; i < args.size(); ++i) keep.insert(head_var(i));
    for (symbol v : bdd::support(g))
        if (!keep.count(v)) g = bdd::exists(g, v);
    return pos_formula::clamp(g);
}

}  // namespace detail

// Least fixed point of the abstract immediate-consequence operator over
// Pos; one formula over x1..xn per predicate.
inline success_map success_analysis(const program& p, norm_kind norm) {
    success_map S;
    for (const auto& pr : p.predicates) S.emplace(pr, mk_false());

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& pr : p.predicates) {
            pos_formula acc = mk_false();
            for (const clause* cl : p.clauses_of(pr)) {
                pos_formula val = mk_true();
                for (const auto& lit : cl->body) {
                    if (lit.is_unify()) {
                        val = conj(val, unification_rigidity(norm, lit.lhs, lit.rhs));
                    } else {
                        val = conj(val, instantiate(S.at(lit.pred), detail::arg_to_vars(lit.args)));
                    }
                    if (val.is_bottom()) break;
                }
                val = detail::project_onto_args(val, cl->head_args);
                acc = disj(acc, val);
            }
            if (acc != S.at(pr)) {
                S.at(pr) = acc;
                changed = true;
            }
        }
    }
    return S;
}

using call_pattern_map = std::map<pred_ref, std::vector<pos_formula>>;

// Goal-dependent call patterns for leftmost execution, grouped by
// predicate (the goal's own pattern included). Distinct patterns stay
// separate elements: the termination condition is checked against each
// of them, and collapsing them into one disjunction would dilute the
// instantiated argument sets. The pattern sets are finite because Pos
// over a fixed argument tuple is.
inline call_pattern_map call_analysis(const program& p, const mode& goal, const success_map& S,
                                      norm_kind norm) {
    if (!p.defines(goal.pred))
        throw analysis_error("unknown predicate in goal: " + goal.pred.render());
    call_pattern_map C;
    std::vector<std::pair<pred_ref, pos_formula>> worklist;
    auto add = [&](const pred_ref& pr, const pos_formula& kappa) {
        std::vector<pos_formula>& set = C[pr];
        if (std::find(set.begin(), set.end(), kappa) != set.end()) return;
        set.push_back(kappa);
        worklist.emplace_back(pr, kappa);
    };
    add(goal.pred, goal.formula());

    while (!worklist.empty()) {
        auto [pr, kappa] = worklist.back();
        worklist.pop_back();
        for (const clause* cl : p.clauses_of(pr)) {
            pos_formula acc = rename(kappa, detail::arg_to_vars(cl->head_args));
            for (const auto& lit : cl->body) {
                if (lit.is_unify()) {
                    acc = conj(acc, unification_rigidity(norm, lit.lhs, lit.rhs));
                    continue;
                }
                add(lit.pred, detail::project_onto_args(acc, lit.args));
                acc = conj(acc, instantiate(S.at(lit.pred), detail::arg_to_vars(lit.args)));
            }
        }
    }
    return C;
}

// --- size analysis and binary clauses --------------------------------------

struct binary_clause {
    pred_ref src;  // head predicate, arguments x1..x{src.arity}
    pred_ref dst;  // body predicate, arguments y1..y{dst.arity}
    linear_conjunction pi;

    std::string render() const;
};

struct binary_result {
    std::vector<binary_clause> loops;  // same-predicate clauses only
    std::map<pred_ref, linear_conjunction> size_success;
    int widenings = 0;
};

namespace detail {

inline std::set<symbol> arg_universe(std::uint32_t arity, bool body) {
    std::set<symbol> u;
    for (std::uint32_t i = 0; i < arity; ++i) u.insert(body ? body_var(i) : head_var(i));
    return u;
}

// Per-predicate least fixed point over size relations, hull join across
// clauses, widening every `widen_every`-th update per predicate.
inline std::map<pred_ref, linear_conjunction> size_success_analysis(const program& p,
                                                                    const analysis_options& opt,
                                                                    int& widenings) {
    std::map<pred_ref, linear_conjunction> Z;
    std::map<pred_ref, int> updates;
    for (const auto& pr : p.predicates) Z.emplace(pr, linear_conjunction::unsat(arg_universe(pr.arity, false)));

    auto clause_contrib = [&](const clause& cl) -> linear_conjunction {
        linear_conjunction val = linear_conjunction::top({});
        for (const auto& lit : cl.body) {
            if (val.is_unsat()) break;
            if (lit.is_unify()) {
                linear_conjunction c = linear_conjunction::top({});
                c.add(mk_eq(linear_expr(lit.lhs), measure(opt.norm, lit.rhs)));
                val = meet(val, c);
            } else {
                std::map<symbol, symbol> sub;
                for (std::size_t i = 0; i < lit.args.size(); ++i)
                    sub.emplace(head_var(i), lit.args[i]->name);
                val = meet(val, Z.at(lit.pred).rename(sub, false));
            }
        }
        if (val.is_unsat()) return linear_conjunction::unsat(arg_universe(cl.pred.arity, false));
        // Link head argument positions to the head variables, then project.
        linear_conjunction eqs = linear_conjunction::top({});
        for (std::size_t i = 0; i < cl.head_args.size(); ++i)
            eqs.add(mk_eq(linear_expr(head_var(i)), linear_expr(cl.head_args[i]->name)));
        val = meet(val, eqs);
        return val.project(arg_universe(cl.pred.arity, false));
    };

    int pass = 0;
    bool changed = true;
    while (changed) {
        ++pass;
        changed = false;
        for (const auto& pr : p.predicates) {
            linear_conjunction contrib = linear_conjunction::unsat(arg_universe(pr.arity, false));
            for (const clause* cl : p.clauses_of(pr))
                contrib = join(contrib, clause_contrib(*cl), opt.join);
            linear_conjunction& cur = Z.at(pr);
            if (contrib.entails_all(cur)) continue;  // F(Z) below Z: stable here
            linear_conjunction grown = join(cur, contrib, opt.join);
            int n = ++updates[pr];
            bool force_widen = pass > 200;
            // One full period runs unwidened so that the stable relations
            // surface as explicit rows before constraint-dropping starts.
            if (force_widen || (opt.widen_every > 0 && n >= 2 * opt.widen_every &&
                                n % opt.widen_every == 0)) {
                linear_conjunction widened = widen(cur, grown);
                if (!equivalent(widened, grown)) ++widenings;
                grown = widened;
            }
            if (pass > 400) grown = linear_conjunction::top(arg_universe(pr.arity, false));
            if (!equivalent(grown, cur)) {
                cur = grown;
                changed = true;
            }
        }
    }
    return Z;
}

// Strongest order/equality relations between pairs of variables.
inline linear_conjunction pairwise_abstraction(const linear_conjunction& pi,
                                               const std::set<symbol>& vars) {
    if (pi.is_unsat()) return linear_conjunction::unsat(vars);
    linear_conjunction out = linear_conjunction::top(vars);
    std::vector<symbol> vs(vars.begin(), vars.end());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            linear_expr u = linear_expr(vs[i]), v = linear_expr(vs[j]);
            if (pi.entails(mk_eq(u, v))) {
                out.add(mk_eq(u, v));
                continue;
            }
            if (pi.entails(mk_lt(u, v)))
                out.add(mk_lt(u, v));
            else if (pi.entails(mk_le(u, v)))
                out.add(mk_le(u, v));
            if (pi.entails(mk_lt(v, u)))
                out.add(mk_lt(v, u));
            else if (pi.entails(mk_le(v, u)))
                out.add(mk_le(v, u));
        }
    }
    return out;
}

}  // namespace detail

inline std::string binary_clause::render() const {
    auto head = [&](const pred_ref& pr, bool body) {
        std::string out(pr.name.name());
        if (pr.arity == 0) return out;
        out += "(";
        for (std::uint32_t i = 0; i < pr.arity; ++i) {
            if (i) out += ",";
            out += std::string((body ? body_var(i) : head_var(i)).name());
        }
        return out + ")";
    };
    return head(src, false) + " :- " + pi.render() + ", " + head(dst, true) + ".";
}

// The size binary-clause semantics: (1) polyhedral size-success fixpoint,
// (2) one direct abstraction per body call, (3) closure under
// composition, (4) keep satisfiable same-predicate clauses.
inline binary_result binary_semantics(const program& p, const analysis_options& opt) {
    binary_result result;
    result.size_success = detail::size_success_analysis(p, opt, result.widenings);

    struct entry {
        pred_ref src, dst;
        linear_conjunction pi;
    };
    std::vector<entry> pool;
    std::vector<std::size_t> worklist;

    auto insert = [&](pred_ref src, pred_ref dst, const linear_conjunction& pi) {
        if (pi.is_unsat()) return;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (pool[k].src == src && pool[k].dst == dst && pi.entails_all(pool[k].pi))
                return;  // covered by an existing, weaker clause
        }
        for (std::size_t k = 0; k < pool.size();) {
            if (pool[k].src == src && pool[k].dst == dst && pool[k].pi.entails_all(pi)) {
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
                worklist.erase(std::remove(worklist.begin(), worklist.end(), k), worklist.end());
                for (auto& w : worklist)
                    if (w > k) --w;
            } else {
                ++k;
            }
        }
        pool.push_back(entry{src, dst, pi});
        worklist.push_back(pool.size() - 1);
    };

    // Direct abstractions: for each call position, the unifications and
    // call successes to its left, linked to x (head) and y (call) vars.
    for (const auto& cl : p.clauses) {
        linear_conjunction before = linear_conjunction::top({});
        for (const auto& lit : cl.body) {
            if (lit.is_unify()) {
                linear_conjunction c = linear_conjunction::top({});
                c.add(mk_eq(linear_expr(lit.lhs), measure(opt.norm, lit.rhs)));
                before = meet(before, c);
                continue;
            }
            if (!before.is_unsat()) {
                linear_conjunction link = before;
                linear_conjunction eqs = linear_conjunction::top({});
                for (std::size_t i = 0; i < cl.head_args.size(); ++i)
                    eqs.add(mk_eq(linear_expr(head_var(i)), linear_expr(cl.head_args[i]->name)));
                for (std::size_t i = 0; i < lit.args.size(); ++i)
                    eqs.add(mk_eq(linear_expr(body_var(i)), linear_expr(lit.args[i]->name)));
                link = meet(link, eqs);
                std::set<symbol> keep = detail::arg_universe(cl.pred.arity, false);
                for (symbol v : detail::arg_universe(lit.pred.arity, true)) keep.insert(v);
                linear_conjunction pi = link.project(keep);
                insert(cl.pred, lit.pred, detail::pairwise_abstraction(pi, keep));
            }
            std::map<symbol, symbol> sub;
            for (std::size_t i = 0; i < lit.args.size(); ++i)
                sub.emplace(head_var(i), lit.args[i]->name);
            before = meet(before, result.size_success.at(lit.pred).rename(sub, false));
        }
    }

    // Close under composition.
    auto compose = [&](const entry& a, const entry& b) -> linear_conjunction {
        std::map<symbol, symbol> a_body_to_mid, b_head_to_mid;
        for (std::uint32_t i = 0; i < a.dst.arity; ++i) {
            a_body_to_mid.emplace(body_var(i), mid_var(i));
            b_head_to_mid.emplace(head_var(i), mid_var(i));
        }
        linear_conjunction joined =
            meet(a.pi.rename(a_body_to_mid), b.pi.rename(b_head_to_mid));
        std::set<symbol> keep = detail::arg_universe(a.src.arity, false);
        for (symbol v : detail::arg_universe(b.dst.arity, true)) keep.insert(v);
        return detail::pairwise_abstraction(joined.project(keep), keep);
    };

    while (!worklist.empty()) {
        std::size_t idx = worklist.back();
        worklist.pop_back();
        entry cur = pool[idx];
        std::vector<entry> snapshot = pool;
        for (const entry& other : snapshot) {
            if (cur.dst == other.src) insert(cur.src, other.dst, compose(cur, other));
            if (other.dst == cur.src && !(cur.src == other.src && cur.dst == other.dst))
                insert(other.src, cur.dst, compose(other, cur));
        }
    }

    for (const auto& e : pool)
        if (e.src == e.dst) result.loops.push_back(binary_clause{e.src, e.dst, e.pi});
    std::sort(result.loops.begin(), result.loops.end(), [](const binary_clause& a, const binary_clause& b) {
        if (a.src != b.src) return a.src < b.src;
        return a.pi.render() < b.pi.render();
    });
    return result;
}

}  // namespace terminfer
