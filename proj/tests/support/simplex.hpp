#pragma once

// Independent LP feasibility oracle over exact rationals: a dense
// two-phase simplex with Bland's rule. Used to cross-check the
// Fourier-Motzkin based entailment/projection code, so it shares no
// machinery with it. Variables are implicitly non-negative; one shared
// epsilon dimension turns strict inequalities into an optimization
// question (feasible with epsilon > 0).

#include <map>
#include <set>
#include <vector>

#include "terminfer/sizedom.hpp"

namespace oracle {

using terminfer::linear_constraint;
using terminfer::rational;
using terminfer::rel_op;
using terminfer::symbol;

namespace detail {

class simplex {
public:
    // A has m rows over n columns plus rhs at index n; basis[i] is the
    // basic column of row i; rhs must be non-negative and basis columns
    // must form an identity.
    simplex(std::vector<std::vector<rational>> A, std::vector<int> basis, int n)
        : A_(std::move(A)), basis_(std::move(basis)), n_(n) {}

    // Maximizes c over the current feasible basis; returns the optimum.
    rational maximize(const std::vector<rational>& c) {
        obj_.assign(n_ + 1, rational(0));
        for (int j = 0; j < n_; ++j) obj_[j] = c[j];
        obj_[n_] = 0;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            rational cb = c[static_cast<std::size_t>(basis_[i])];
            if (cb == 0) continue;
            for (int j = 0; j <= n_; ++j) obj_[j] -= cb * A_[i][j];
        }
        for (;;) {
            int enter = -1;
            for (int j = 0; j < n_; ++j)
                if (obj_[j] > 0) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            if (enter < 0) break;
            int leave = -1;
            rational best;
            for (std::size_t i = 0; i < A_.size(); ++i) {
                if (A_[i][static_cast<std::size_t>(enter)] <= 0) continue;
                rational ratio = A_[i][static_cast<std::size_t>(n_)] /
                                 A_[i][static_cast<std::size_t>(enter)];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[static_cast<std::size_t>(leave)])) {
                    best = ratio;
                    leave = static_cast<int>(i);
                }
            }
            if (leave < 0) return rational(1);  // unbounded; callers only test > 0
            pivot(static_cast<std::size_t>(leave), enter);
        }
        return -obj_[static_cast<std::size_t>(n_)];
    }

    void pivot(std::size_t row, int col) {
        rational p = A_[row][static_cast<std::size_t>(col)];
        for (int j = 0; j <= n_; ++j) A_[row][static_cast<std::size_t>(j)] /= p;
        for (std::size_t i = 0; i < A_.size(); ++i) {
            if (i == row) continue;
            rational f = A_[i][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int j = 0; j <= n_; ++j)
                A_[i][static_cast<std::size_t>(j)] -= f * A_[row][static_cast<std::size_t>(j)];
        }
        rational f = obj_[static_cast<std::size_t>(col)];
        if (f != 0)
            for (int j = 0; j <= n_; ++j)
                obj_[static_cast<std::size_t>(j)] -= f * A_[row][static_cast<std::size_t>(j)];
        basis_[row] = col;
    }

    // Pivots zero-valued artificial variables out of the basis; rows that
    // cannot be cleaned are redundant and dropped.
    void expel_artificials(int first_artificial) {
        for (std::size_t i = 0; i < A_.size();) {
            if (basis_[i] < first_artificial) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < first_artificial; ++j)
                if (A_[i][static_cast<std::size_t>(j)] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(i, col);
                ++i;
            } else {
                A_.erase(A_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    void shrink_columns(int new_n) {
        for (auto& row : A_) {
            row[static_cast<std::size_t>(new_n)] = row[static_cast<std::size_t>(n_)];
            row.resize(static_cast<std::size_t>(new_n) + 1);
        }
        n_ = new_n;
    }

private:
    std::vector<std::vector<rational>> A_;
    std::vector<int> basis_;
    std::vector<rational> obj_;
    int n_;
};

}  // namespace detail

// Feasibility of the conjunction over non-negative rationals, strict
// inequalities included.
inline bool lp_feasible(const std::vector<linear_constraint>& rows_in,
                        const std::set<symbol>& vars_in) {
    std::map<symbol, int> col;
    for (symbol v : vars_in) col.emplace(v, static_cast<int>(col.size()));
    for (const auto& r : rows_in)
        for (symbol v : r.vars()) col.emplace(v, static_cast<int>(col.size()));

    bool strict = false;
    for (const auto& r : rows_in) strict |= r.rel() == rel_op::lt;
    int eps = -1;
    if (strict) {
        eps = static_cast<int>(col.size());
        col.emplace(symbol::intern("$oracle_eps"), eps);
    }
    int nstruct = static_cast<int>(col.size());

    struct prow {
        std::vector<rational> a;
        rational b;
        rel_op rel;  // le or eq after strict lifting
    };
    std::vector<prow> rows;
    auto push = [&](const linear_constraint& c, bool lift_strict) {
        prow r;
        r.a.assign(static_cast<std::size_t>(nstruct), rational(0));
        for (const auto& [v, k] : c.terms()) r.a[static_cast<std::size_t>(col.at(v))] = k;
        r.b = c.bound();
        r.rel = c.rel();
        if (c.rel() == rel_op::lt && lift_strict) {
            r.a[static_cast<std::size_t>(eps)] += 1;
            r.rel = rel_op::le;
        }
        rows.push_back(std::move(r));
    };
    for (const auto& c : rows_in) push(c, true);
    if (strict) {
        prow cap;
        cap.a.assign(static_cast<std::size_t>(nstruct), rational(0));
        cap.a[static_cast<std::size_t>(eps)] = 1;
        cap.b = 1;
        cap.rel = rel_op::le;
        rows.push_back(std::move(cap));
    }

    // Standard form: rhs >= 0, slacks for <=, surplus+artificial for >=,
    // artificial for =.
    int m = static_cast<int>(rows.size());
    for (auto& r : rows) {
        bool flip = r.b < 0;
        if (flip) {
            for (auto& a : r.a) a = -a;
            r.b = -r.b;
        }
        // a flipped <= becomes >=, encoded as lt below
        r.rel = (r.rel == rel_op::eq) ? rel_op::eq : (flip ? rel_op::lt : rel_op::le);
    }
    // columns: structural | slack/surplus (one per row, may be unused) | artificials
    int slack0 = nstruct;
    int art0 = nstruct + m;
    int ncols = nstruct + m + m;
    std::vector<std::vector<rational>> A;
    std::vector<int> basis;
    std::vector<bool> art_used(static_cast<std::size_t>(m), false);
    for (int i = 0; i < m; ++i) {
        std::vector<rational> row(static_cast<std::size_t>(ncols) + 1, rational(0));
        for (int j = 0; j < nstruct; ++j) row[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(ncols)] = rows[static_cast<std::size_t>(i)].b;
        rel_op rel = rows[static_cast<std::size_t>(i)].rel;
        if (rel == rel_op::le) {
            row[static_cast<std::size_t>(slack0 + i)] = 1;
            basis.push_back(slack0 + i);
        } else if (rel == rel_op::lt) {  // encodes ">=" here
            row[static_cast<std::size_t>(slack0 + i)] = -1;
            row[static_cast<std::size_t>(art0 + i)] = 1;
            basis.push_back(art0 + i);
            art_used[static_cast<std::size_t>(i)] = true;
        } else {
            row[static_cast<std::size_t>(art0 + i)] = 1;
            basis.push_back(art0 + i);
            art_used[static_cast<std::size_t>(i)] = true;
        }
        A.push_back(std::move(row));
    }

    detail::simplex sx(std::move(A), std::move(basis), ncols);
    std::vector<rational> phase1(static_cast<std::size_t>(ncols), rational(0));
    bool any_art = false;
    for (int i = 0; i < m; ++i)
        if (art_used[static_cast<std::size_t>(i)]) {
            phase1[static_cast<std::size_t>(art0 + i)] = -1;
            any_art = true;
        }
    if (any_art) {
        rational opt = sx.maximize(phase1);
        if (opt != 0) return false;  // some artificial stuck positive
        sx.expel_artificials(art0);
    }
    sx.shrink_columns(art0);
    if (!strict) return true;
    std::vector<rational> phase2(static_cast<std::size_t>(art0), rational(0));
    phase2[static_cast<std::size_t>(eps)] = 1;
    return sx.maximize(phase2) > 0;
}

// rows |= c over the non-negative rationals, decided by the oracle.
inline bool lp_entails(const std::vector<linear_constraint>& rows, const linear_constraint& c,
                       const std::set<symbol>& vars) {
    for (const auto& neg : c.negations()) {
        std::vector<linear_constraint> sys = rows;
        sys.push_back(neg);
        if (lp_feasible(sys, vars)) return false;
    }
    return true;
}

}  // namespace oracle
