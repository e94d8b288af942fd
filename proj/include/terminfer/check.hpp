#pragma once

// Goal-dependent termination checking: for each call pattern reached
// from the initial mode and each matching loop, the fast decision
// procedure answers "yes" when the instantiated argument positions
// cannot keep their summed size from decreasing.

#include <set>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "mode.hpp"

namespace terminfer {

using arg_set = std::set<std::size_t>;  // 0-based argument positions

// { i | phi entails x_i } -- bottom instantiates every position.
inline arg_set instantiated_set(const pos_formula& phi, std::size_t arity) {
    arg_set out;
    for (std::size_t i = 0; i < arity; ++i)
        if (entails(phi, mk_var(head_var(i)))) out.insert(i);
    return out;
}

enum class chk_result { yes, unknown };

// Fast CHK: yes iff pi does not entail sum(y_I) >= sum(x_I). An empty I
// can never witness a decrease.
inline chk_result chk_fast(const arg_set& I, const binary_clause& beta) {
    if (I.empty()) return chk_result::unknown;
    linear_expr xs, ys;
    for (std::size_t i : I) {
        xs += linear_expr(head_var(i));
        ys += linear_expr(body_var(i));
    }
    return beta.pi.entails(mk_le(xs, ys)) ? chk_result::unknown : chk_result::yes;
}

using chk_procedure = std::function<chk_result(const arg_set&, const binary_clause&)>;

struct check_pair {
    pred_ref pred;
    pos_formula pattern;
    arg_set instantiated;
    binary_clause loop;
    chk_result verdict;
};

struct check_report {
    mode goal;
    bool terminates = false;
    std::vector<check_pair> pairs;

    std::string render() const {
        std::string out = "check " + goal.render() + ": " +
                          (terminates ? "terminates" : "unknown") + "\n";
        for (const auto& p : pairs) {
            out += "  call " + p.pred.render() + " <- " + p.pattern.render() + "  I={";
            bool first = true;
            for (std::size_t i : p.instantiated) {
                if (!first) out += ",";
                out += std::string(head_var(i).name());
                first = false;
            }
            out += "}  loop " + p.loop.pi.render() + "  -> ";
            out += p.verdict == chk_result::yes ? "yes" : "unknown";
            out += "\n";
        }
        return out;
    }
};

// Decides the sufficient termination condition for the initial mode:
// every (call pattern, matching loop) pair must pass CHK.
inline check_report check_termination(const program& normalized, const mode& g,
                                      const analysis_options& opt,
                                      const chk_procedure& chk = chk_fast) {
    check_report report;
    report.goal = g;
    success_map S = success_analysis(normalized, opt.norm);
    call_pattern_map calls = call_analysis(normalized, g, S, opt.norm);
    binary_result bin = binary_semantics(normalized, opt);

    report.terminates = true;
    for (const auto& [pred, patterns] : calls) {
        for (const pos_formula& pattern : patterns) {
            for (const auto& loop : bin.loops) {
                if (loop.src != pred) continue;
                check_pair pair{pred, pattern, instantiated_set(pattern, pred.arity), loop,
                                chk_result::unknown};
                pair.verdict = chk(pair.instantiated, loop);
                if (pair.verdict != chk_result::yes) report.terminates = false;
                report.pairs.push_back(std::move(pair));
            }
        }
    }
    return report;
}

}  // namespace terminfer
