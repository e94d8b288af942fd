#pragma once

// Termination inference: extract decreasing argument sets from every
// loop (fast INF), build the initial termination assertions, then run the
// backwards greatest-fixed-point analysis to obtain the weakest
// instantiation condition per predicate, and enumerate its minimal
// terminating modes.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "check.hpp"
#include "mode.hpp"

namespace terminfer {

using inf_procedure = std::function<std::vector<arg_set>(const binary_clause&)>;

// Fast INF. Step 1: every position whose size strictly decreases is a
// singleton decreasing set. Step 2: if the summed size of the remaining
// positions strictly decreases, they form a decreasing set together.
inline std::vector<arg_set> inf_fast(const binary_clause& beta) {
    std::vector<arg_set> out;
    arg_set decreasing;
    for (std::size_t i = 0; i < beta.src.arity; ++i) {
        if (beta.pi.entails(mk_lt(linear_expr(body_var(i)), linear_expr(head_var(i))))) {
            decreasing.insert(i);
            out.push_back({i});
        }
    }
    arg_set rest;
    for (std::size_t i = 0; i < beta.src.arity; ++i)
        if (!decreasing.count(i)) rest.insert(i);
    if (!rest.empty()) {
        linear_expr xs, ys;
        for (std::size_t i : rest) {
            xs += linear_expr(head_var(i));
            ys += linear_expr(body_var(i));
        }
        if (beta.pi.entails(mk_lt(ys, xs))) out.push_back(rest);
    }
    return out;
}

// mu(beta) = OR over INF(beta) of the AND of the set's variables;
// mu(p) = AND over p's loops of mu(beta). No loops means true.
inline pos_formula initial_assertion(const std::vector<const binary_clause*>& loops,
                                     const inf_procedure& inf = inf_fast) {
    pos_formula mu = mk_true();
    for (const binary_clause* beta : loops) {
        pos_formula mu_beta = mk_false();
        for (const arg_set& I : inf(*beta)) {
            pos_formula cube = mk_true();
            for (std::size_t i : I) cube = conj(cube, mk_var(head_var(i)));
            mu_beta = disj(mu_beta, cube);
        }
        mu = conj(mu, mu_beta);
    }
    return mu;
}

// One right-to-left pass over a clause body. Returns the intermediate
// conditions e[0..n] (e[i] holds just before body literal i+1, e[0] is
// the assertion conjoined in) and the head contribution over x1..xn.
struct clause_pass {
    std::vector<pos_formula> e;  // e[i] = condition e_i; size n+1
    pos_formula contribution;    // forall-projection of e[0], over x1..xn
};

inline clause_pass backwards_clause_pass(const clause& cl,
                                         const std::map<pred_ref, pos_formula>& Phi,
                                         const success_map& Psi, norm_kind norm) {
    const std::size_t n = cl.body.size();
    clause_pass out;
    out.e.assign(n + 1, mk_true());
    pos_formula e = mk_true();  // e_{n+1}
    for (std::size_t idx = n; idx-- > 0;) {
        const literal& lit = cl.body[idx];
        pos_formula phi = mk_true(), psi = mk_true();
        if (lit.is_unify()) {
            psi = unification_rigidity(norm, lit.lhs, lit.rhs);
        } else {
            phi = instantiate(Phi.at(lit.pred), detail::arg_to_vars(lit.args));
            psi = instantiate(Psi.at(lit.pred), detail::arg_to_vars(lit.args));
        }
        e = conj(phi, pseudo_complement(psi, e));
        out.e[idx + 1] = e;
    }
    pos_formula mu = cl.assertion ? *cl.assertion : mk_true();
    mu = rename(mu, detail::arg_to_vars(cl.head_args));
    out.e[0] = conj(mu, e);

    std::vector<symbol> hv = cl.head_vars();
    std::set<symbol> head(hv.begin(), hv.end());
    std::vector<symbol> eliminate;
    for (symbol v : out.e[0].support())
        if (!head.count(v)) eliminate.push_back(v);
    pos_formula projected = forall_project(out.e[0], eliminate);
    out.contribution = rename(projected, detail::vars_to_args(cl.head_args));
    return out;
}

// Greatest fixed point: preconditions start at true and descend until
// stable; clauses are processed right to left.
inline std::map<pred_ref, pos_formula> backwards_analysis(const program& p, const success_map& Psi,
                                                          norm_kind norm) {
    std::map<pred_ref, pos_formula> Phi;
    for (const auto& pr : p.predicates) Phi.emplace(pr, mk_true());
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& cl : p.clauses) {
            clause_pass pass = backwards_clause_pass(cl, Phi, Psi, norm);
            pos_formula next = conj(Phi.at(cl.pred), pass.contribution);
            if (next != Phi.at(cl.pred)) {
                Phi.at(cl.pred) = next;
                changed = true;
            }
        }
    }
    return Phi;
}

// All subset-minimal bound-sets whose conjunction entails the condition,
// rendered as modes. Exhaustive for arity <= 8; otherwise disabled.
inline std::optional<std::vector<mode>> terminating_modes(const pos_formula& condition,
                                                          const pred_ref& pred) {
    const std::size_t n = pred.arity;
    if (n > 8) return std::nullopt;
    std::vector<mode> out;
    std::vector<std::uint32_t> minimal;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        bool has_smaller = false;
        for (std::uint32_t m : minimal)
            if ((m & bits) == m) {
                has_smaller = true;
                break;
            }
        if (has_smaller) continue;
        pos_formula cube = mk_true();
        for (std::size_t i = 0; i < n; ++i)
            if (bits & (1u << i)) cube = conj(cube, mk_var(head_var(i)));
        if (entails(cube, condition)) {
            minimal.push_back(bits);
            mode m;
            m.pred = pred;
            for (std::size_t i = 0; i < n; ++i) m.bound.push_back((bits & (1u << i)) != 0);
            out.push_back(std::move(m));
        }
    }
    // Clearing a bit always decreases the mask, so every proper subset of
    // `bits` was visited before it and the minimality filter is exact.
    return out;
}

struct pred_report {
    pred_ref pred;
    pos_formula condition;
    std::optional<std::vector<mode>> minimal_modes;
    int loops = 0;
};

struct termination_report {
    std::vector<pred_report> preds;  // first-definition order
    int widenings = 0;
    std::vector<std::string> notes;
    std::vector<binary_clause> loops;
    success_map successes;
    std::map<pred_ref, pos_formula> assertions;
};

// The inference pipeline: loops, initial assertions, groundness success
// analysis, backwards analysis, then mode extraction.
inline termination_report infer_termination(const program& input, const analysis_options& opt,
                                            const inf_procedure& inf = inf_fast) {
    program p = normalize(input);
    termination_report report;

    binary_result bin = binary_semantics(p, opt);
    report.widenings = bin.widenings;
    report.loops = bin.loops;

    std::map<pred_ref, pos_formula> assertions;
    for (const auto& pr : p.predicates) {
        std::vector<const binary_clause*> loops;
        for (const auto& b : bin.loops)
            if (b.src == pr) loops.push_back(&b);
        assertions.emplace(pr, initial_assertion(loops, inf));
    }
    report.assertions = assertions;
    program annotated = attach_assertions(p, assertions);

    success_map S = success_analysis(annotated, opt.norm);
    report.successes = S;
    std::map<pred_ref, pos_formula> Phi = backwards_analysis(annotated, S, opt.norm);

    if (opt.norm == norm_kind::list_length) {
        bool lossy = false;
        for (const auto& cl : p.clauses)
            for (const auto& lit : cl.body)
                lossy |= lit.is_unify() && listlength_loses_information(lit.rhs);
        if (lossy)
            report.notes.push_back(
                "list-length norm: some non-list unifications carry no rigidity information");
    }
    if (report.widenings > 0)
        report.notes.push_back("widening fired " + std::to_string(report.widenings) +
                               " time(s) during size analysis");

    for (const auto& pr : p.predicates) {
        pred_report r;
        r.pred = pr;
        r.condition = Phi.at(pr);
        r.minimal_modes = terminating_modes(r.condition, pr);
        for (const auto& b : bin.loops)
            if (b.src == pr) ++r.loops;
        if (!r.minimal_modes)
            report.notes.push_back(pr.render() + ": arity above 8, mode enumeration skipped");
        report.preds.push_back(std::move(r));
    }
    return report;
}

}  // namespace terminfer
