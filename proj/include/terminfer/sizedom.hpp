#pragma once

// Conjunctions of linear constraints over non-negative rational size
// variables. Non-negativity is implicit: it is injected during variable
// elimination rather than stored. All arithmetic is exact; entailment and
// projection are decided by Fourier-Motzkin elimination, the join is the
// convex hull via the lambda-combination encoding (with an epsilon
// dimension carrying strict inequalities), and the widening drops the
// constraints of the old value not entailed by the new one.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "symbols.hpp"

namespace terminfer {

using rational = boost::multiprecision::cpp_rational;
using integer = boost::multiprecision::cpp_int;

class linear_expr {
public:
    linear_expr() : constant_(0) {}
    /*implicit*/ linear_expr(int c) : constant_(c) {}
    /*implicit*/ linear_expr(rational c) : constant_(std::move(c)) {}
    /*implicit*/ linear_expr(symbol v) : constant_(0) { coeffs_[v] = 1; }

    const std::map<symbol, rational>& coeffs() const { return coeffs_; }
    const rational& constant() const { return constant_; }

    rational coeff(symbol v) const {
        auto it = coeffs_.find(v);
        return it == coeffs_.end() ? rational(0) : it->second;
    }

    linear_expr& operator+=(const linear_expr& o) {
        for (const auto& [v, c] : o.coeffs_) add_term(v, c);
        constant_ += o.constant_;
        return *this;
    }
    linear_expr& operator-=(const linear_expr& o) {
        for (const auto& [v, c] : o.coeffs_) add_term(v, -c);
        constant_ -= o.constant_;
        return *this;
    }
    linear_expr& operator*=(const rational& k) {
        if (k == 0) {
            coeffs_.clear();
            constant_ = 0;
            return *this;
        }
        for (auto& [v, c] : coeffs_) c *= k;
        constant_ *= k;
        return *this;
    }

    friend linear_expr operator+(linear_expr a, const linear_expr& b) { return a += b; }
    friend linear_expr operator-(linear_expr a, const linear_expr& b) { return a -= b; }
    friend linear_expr operator*(linear_expr a, const rational& k) { return a *= k; }
    friend linear_expr operator*(const rational& k, linear_expr a) { return a *= k; }

    void add_term(symbol v, const rational& c) {
        if (c == 0) return;
        auto [it, fresh] = coeffs_.emplace(v, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

private:
    std::map<symbol, rational> coeffs_;
    rational constant_;
};

enum class rel_op { eq, le, lt };

// A single constraint in the canonical form  sum(c_i * v_i)  rel  bound
// with integer coefficients of gcd 1; equalities additionally have a
// positive leading coefficient.
class linear_constraint {
public:
    linear_constraint(const linear_expr& lhs, rel_op rel, const linear_expr& rhs) : rel_(rel) {
        linear_expr d = lhs - rhs;
        bound_ = -d.constant();
        for (const auto& [v, c] : d.coeffs()) terms_.emplace_back(v, c);
        canonicalize();
    }

    const std::vector<std::pair<symbol, rational>>& terms() const { return terms_; }
    const rational& bound() const { return bound_; }
    rel_op rel() const { return rel_; }

    bool is_trivial() const { return terms_.empty(); }
    bool trivially_true() const {
        if (!is_trivial()) return false;
        switch (rel_) {
            case rel_op::eq: return bound_ == 0;
            case rel_op::le: return bound_ >= 0;
            case rel_op::lt: return bound_ > 0;
        }
        return false;
    }

    rational coeff(symbol v) const {
        for (const auto& [s, c] : terms_)
            if (s == v) return c;
        return 0;
    }

    std::vector<symbol> vars() const {
        std::vector<symbol> out;
        for (const auto& [s, c] : terms_) out.push_back(s);
        return out;
    }

    // The constraints whose disjunction is the negation of this one.
    std::vector<linear_constraint> negations() const {
        linear_expr e;
        for (const auto& [v, c] : terms_) e.add_term(v, c);
        switch (rel_) {
            case rel_op::le: return {linear_constraint(linear_expr(bound_), rel_op::lt, e)};
            case rel_op::lt: return {linear_constraint(e * rational(-1), rel_op::le, linear_expr(-bound_))};
            case rel_op::eq:
                return {linear_constraint(e, rel_op::lt, linear_expr(bound_)),
                        linear_constraint(linear_expr(bound_), rel_op::lt, e)};
        }
        throw std::logic_error("unreachable");
    }

    linear_constraint substituted(const std::map<symbol, symbol>& mapping) const {
        linear_expr e;
        for (const auto& [v, c] : terms_) {
            auto it = mapping.find(v);
            e.add_term(it == mapping.end() ? v : it->second, c);
        }
        return linear_constraint(e, rel_, linear_expr(bound_));
    }

    std::string render() const;

    friend bool operator==(const linear_constraint& a, const linear_constraint& b) {
        return a.rel_ == b.rel_ && a.bound_ == b.bound_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const linear_constraint& a, const linear_constraint& b) {
        if (a.terms_ != b.terms_) return a.terms_ < b.terms_;
        if (a.rel_ != b.rel_) return a.rel_ < b.rel_;
        return a.bound_ < b.bound_;
    }

private:
    void canonicalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (terms_.empty()) return;
        // Scale to integer coefficients with gcd 1.
        integer lcm_den = 1;
        for (const auto& [v, c] : terms_) {
            integer den = denominator(c);
            lcm_den = lcm(lcm_den, den);
        }
        rational scale(lcm_den, 1);
        integer g = 0;
        for (auto& [v, c] : terms_) {
            c *= scale;
            g = gcd(g, numerator(c));
        }
        bound_ *= scale;
        if (g > 1) {
            rational inv(1, g);
            for (auto& [v, c] : terms_) c *= inv;
            bound_ *= inv;
        }
        if (rel_ == rel_op::eq && numerator(terms_.front().second) < 0) {
            for (auto& [v, c] : terms_) c = -c;
            bound_ = -bound_;
        }
    }

    std::vector<std::pair<symbol, rational>> terms_;
    rational bound_;
    rel_op rel_;
};

inline linear_constraint mk_eq(const linear_expr& a, const linear_expr& b) {
    return linear_constraint(a, rel_op::eq, b);
}
inline linear_constraint mk_le(const linear_expr& a, const linear_expr& b) {
    return linear_constraint(a, rel_op::le, b);
}
inline linear_constraint mk_lt(const linear_expr& a, const linear_expr& b) {
    return linear_constraint(a, rel_op::lt, b);
}

namespace detail {

// Adds a*row1 + b*row2 (a,b > 0); the relation is eq only if both are.
inline linear_constraint combine(const linear_constraint& r1, const rational& a,
                                 const linear_constraint& r2, const rational& b) {
    linear_expr e;
    for (const auto& [v, c] : r1.terms()) e.add_term(v, c * a);
    for (const auto& [v, c] : r2.terms()) e.add_term(v, c * b);
    rational bound = r1.bound() * a + r2.bound() * b;
    rel_op rel;
    if (r1.rel() == rel_op::lt || r2.rel() == rel_op::lt)
        rel = rel_op::lt;
    else if (r1.rel() == rel_op::le || r2.rel() == rel_op::le)
        rel = rel_op::le;
    else
        rel = rel_op::eq;
    return linear_constraint(e, rel, linear_expr(bound));
}

// Cheap structural reduction: duplicates, trivially-true rows, and rows
// with identical term vectors dominated by a stronger bound.
inline bool cheap_reduce(std::vector<linear_constraint>& rows) {
    std::vector<linear_constraint> out;
    for (const auto& r : rows) {
        if (r.is_trivial()) {
            if (!r.trivially_true()) return false;  // contradiction
            continue;
        }
        out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // Same-terms dominance: eq pins the value; among le/lt keep strongest.
    std::vector<linear_constraint> kept;
    for (std::size_t i = 0; i < out.size();) {
        std::size_t j = i;
        while (j < out.size() && out[j].terms() == out[i].terms()) ++j;
        std::optional<rational> eq_bound;
        std::optional<std::pair<rational, bool>> upper;  // bound, strict
        for (std::size_t k = i; k < j; ++k) {
            const auto& r = out[k];
            if (r.rel() == rel_op::eq) {
                if (eq_bound && *eq_bound != r.bound()) return false;
                eq_bound = r.bound();
            } else {
                bool strict = r.rel() == rel_op::lt;
                if (!upper || r.bound() < upper->first ||
                    (r.bound() == upper->first && strict))
                    upper = {r.bound(), strict};
            }
        }
        if (eq_bound) {
            if (upper && (*eq_bound > upper->first ||
                          (*eq_bound == upper->first && upper->second)))
                return false;
            linear_expr e;
            for (const auto& [v, c] : out[i].terms()) e.add_term(v, c);
            kept.push_back(linear_constraint(e, rel_op::eq, linear_expr(*eq_bound)));
        } else if (upper) {
            linear_expr e;
            for (const auto& [v, c] : out[i].terms()) e.add_term(v, c);
            kept.push_back(linear_constraint(e, upper->second ? rel_op::lt : rel_op::le,
                                             linear_expr(upper->first)));
        }
        i = j;
    }
    rows = std::move(kept);
    return true;
}

// Eliminates one implicitly non-negative variable. Returns false when the
// system is detected unsatisfiable.
inline bool eliminate_var(std::vector<linear_constraint>& rows, symbol v) {
    // Prefer a Gauss step through an equality.
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].rel() != rel_op::eq) continue;
        rational a = rows[i].coeff(v);
        if (a == 0) continue;
        linear_constraint eq = rows[i];
        std::vector<linear_constraint> out;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (j == i) continue;
            rational c = rows[j].coeff(v);
            if (c == 0) {
                out.push_back(rows[j]);
            } else {
                // rows[j] - (c/a)*eq : multiplier sign is irrelevant for eq.
                linear_expr e;
                rational m = c / a;
                for (const auto& [s, cc] : rows[j].terms()) e.add_term(s, cc);
                for (const auto& [s, cc] : eq.terms()) e.add_term(s, -m * cc);
                out.push_back(linear_constraint(e, rows[j].rel(),
                                                linear_expr(rows[j].bound() - m * eq.bound())));
            }
        }
        // v >= 0 still constrains the others: v = (bound - rest)/a >= 0.
        {
            linear_expr e;
            rational s = (a > 0) ? rational(1) : rational(-1);
            for (const auto& [sym, cc] : eq.terms())
                if (sym != v) e.add_term(sym, cc * s);
            // a*v + rest = bound  =>  v = (bound - rest)/a;  v >= 0 means
            // sign(a)*(rest) <= sign(a)*bound.
            out.push_back(linear_constraint(e, rel_op::le, linear_expr(eq.bound() * s)));
        }
        rows = std::move(out);
        return cheap_reduce(rows);
    }

    std::vector<linear_constraint> uppers, lowers, rest;
    for (const auto& r : rows) {
        rational c = r.coeff(v);
        if (c == 0)
            rest.push_back(r);
        else if (c > 0)
            uppers.push_back(r);
        else
            lowers.push_back(r);
    }
    // Implicit non-negativity: 0 <= v, i.e. -v <= 0 as a lower bound.
    {
        linear_expr e;
        e.add_term(v, rational(-1));
        lowers.push_back(linear_constraint(e, rel_op::le, linear_expr(0)));
    }
    std::vector<linear_constraint> out = std::move(rest);
    for (const auto& up : uppers) {
        rational au = up.coeff(v);
        for (const auto& lo : lowers) {
            rational al = lo.coeff(v);  // negative
            out.push_back(combine(up, -al, lo, au));
        }
    }
    rows = std::move(out);
    return cheap_reduce(rows);
}

inline symbol pick_elimination_var(const std::vector<linear_constraint>& rows,
                                   const std::set<symbol>& candidates) {
    symbol best;
    long best_score = -1;
    for (symbol v : candidates) {
        long ups = 0, downs = 0, eqs = 0;
        for (const auto& r : rows) {
            rational c = r.coeff(v);
            if (c == 0) continue;
            if (r.rel() == rel_op::eq)
                ++eqs;
            else if (c > 0)
                ++ups;
            else
                ++downs;
        }
        long score = eqs > 0 ? 0 : ups * (downs + 1);
        if (best_score < 0 || score < best_score) {
            best_score = score;
            best = v;
        }
    }
    return best;
}

inline bool satisfiable(std::vector<linear_constraint> rows, std::set<symbol> vars) {
    if (!cheap_reduce(rows)) return false;
    while (!vars.empty()) {
        symbol v = pick_elimination_var(rows, vars);
        vars.erase(v);
        if (!eliminate_var(rows, v)) return false;
    }
    return true;
}

}  // namespace detail

class linear_conjunction {
public:
    linear_conjunction() = default;

    static linear_conjunction top(std::set<symbol> universe) {
        linear_conjunction r;
        r.universe_ = std::move(universe);
        return r;
    }
    static linear_conjunction unsat(std::set<symbol> universe) {
        linear_conjunction r;
        r.universe_ = std::move(universe);
        r.unsat_ = true;
        return r;
    }

    bool is_unsat() const { return unsat_; }
    bool is_top() const { return !unsat_ && cs_.empty(); }
    const std::vector<linear_constraint>& constraints() const { return cs_; }
    const std::set<symbol>& universe() const { return universe_; }

    void add(const linear_constraint& c) {
        if (unsat_) return;
        for (symbol v : c.vars()) universe_.insert(v);
        if (c.is_trivial()) {
            if (!c.trivially_true()) mark_unsat();
            return;
        }
        cs_.push_back(c);
        normalize_rows();
        if (!detail::satisfiable(cs_, universe_)) mark_unsat();
    }

    friend linear_conjunction meet(const linear_conjunction& a, const linear_conjunction& b) {
        if (a.unsat_) return a.with_universe(b.universe_);
        if (b.unsat_) return b.with_universe(a.universe_);
        linear_conjunction r = a;
        for (symbol v : b.universe_) r.universe_.insert(v);
        bool ok = true;
        for (const auto& c : b.cs_) {
            if (c.is_trivial() && !c.trivially_true()) ok = false;
            if (!c.is_trivial()) r.cs_.push_back(c);
        }
        r.normalize_rows();
        if (!ok || !detail::satisfiable(r.cs_, r.universe_)) r.mark_unsat();
        return r;
    }

    bool entails(const linear_constraint& c) const {
        if (unsat_) return true;
        if (c.is_trivial()) return c.trivially_true();
        for (const auto& neg : c.negations()) {
            std::vector<linear_constraint> rows = cs_;
            rows.push_back(neg);
            std::set<symbol> vars = universe_;
            for (symbol v : neg.vars()) vars.insert(v);
            if (detail::satisfiable(std::move(rows), std::move(vars))) return false;
        }
        return true;
    }

    bool entails_all(const linear_conjunction& o) const {
        if (o.unsat_) return unsat_;
        for (const auto& c : o.cs_)
            if (!entails(c)) return false;
        return true;
    }

    friend bool equivalent(const linear_conjunction& a, const linear_conjunction& b) {
        if (a.unsat_ || b.unsat_) return a.unsat_ == b.unsat_;
        return a.entails_all(b) && b.entails_all(a);
    }

    // Exact projection onto `keep` over the non-negative rationals.
    linear_conjunction project(const std::set<symbol>& keep) const {
        std::set<symbol> kept;
        for (symbol v : universe_)
            if (keep.count(v)) kept.insert(v);
        if (unsat_) return unsat(kept);
        std::vector<linear_constraint> rows = cs_;
        std::set<symbol> gone;
        for (symbol v : universe_)
            if (!keep.count(v)) gone.insert(v);
        while (!gone.empty()) {
            symbol v = detail::pick_elimination_var(rows, gone);
            gone.erase(v);
            if (!detail::eliminate_var(rows, v)) return unsat(kept);
        }
        linear_conjunction r;
        r.universe_ = kept;
        r.cs_ = std::move(rows);
        r.normalize_rows();
        r.minimize();
        return r;
    }

    enum class join_mode { hull, entailed };

    friend linear_conjunction join(const linear_conjunction& a, const linear_conjunction& b,
                                   join_mode mode = join_mode::hull) {
        std::set<symbol> uni = a.universe_;
        for (symbol v : b.universe_) uni.insert(v);
        if (a.unsat_) return b.with_universe(uni);
        if (b.unsat_) return a.with_universe(uni);

        if (mode == join_mode::entailed) {
            linear_conjunction r = top(uni);
            for (const auto& c : a.cs_)
                if (b.entails(c)) r.cs_.push_back(c);
            for (const auto& c : b.cs_)
                if (a.entails(c)) r.cs_.push_back(c);
            r.normalize_rows();
            r.minimize();
            return r;
        }
        return hull_join(a, b, uni);
    }

    // Keeps exactly the constraints of *this entailed by `next`.
    friend linear_conjunction widen(const linear_conjunction& old, const linear_conjunction& next) {
        if (old.unsat_) return next;
        if (next.unsat_) return old;
        linear_conjunction r = top(old.universe_);
        for (symbol v : next.universe_) r.universe_.insert(v);
        for (const auto& c : old.cs_)
            if (next.entails(c)) r.cs_.push_back(c);
        r.normalize_rows();
        return r;
    }

    linear_conjunction rename(const std::map<symbol, symbol>& mapping,
                              bool require_injective = true) const {
        if (require_injective) {
            std::set<symbol> seen;
            for (symbol v : universe_) {
                auto it = mapping.find(v);
                symbol tgt = it == mapping.end() ? v : it->second;
                if (!seen.insert(tgt).second)
                    throw std::invalid_argument("rename: mapping not injective on variables");
            }
        }
        linear_conjunction r;
        for (symbol v : universe_) {
            auto it = mapping.find(v);
            r.universe_.insert(it == mapping.end() ? v : it->second);
        }
        if (unsat_) {
            r.unsat_ = true;
            return r;
        }
        bool ok = true;
        for (const auto& c : cs_) {
            linear_constraint s = c.substituted(mapping);
            if (s.is_trivial()) {
                if (!s.trivially_true()) ok = false;
                continue;
            }
            r.cs_.push_back(s);
        }
        r.normalize_rows();
        if (!ok || !detail::satisfiable(r.cs_, r.universe_)) r.mark_unsat();
        return r;
    }

    // Drops constraints entailed by the remaining ones.
    void minimize() {
        if (unsat_) return;
        for (std::size_t i = 0; i < cs_.size();) {
            linear_conjunction rest = *this;
            rest.cs_.erase(rest.cs_.begin() + static_cast<std::ptrdiff_t>(i));
            if (rest.entails(cs_[i]))
                cs_.erase(cs_.begin() + static_cast<std::ptrdiff_t>(i));
            else
                ++i;
        }
    }

    std::string render() const;

private:
    linear_conjunction with_universe(const std::set<symbol>& extra) const {
        linear_conjunction r = *this;
        for (symbol v : extra) r.universe_.insert(v);
        return r;
    }

    void mark_unsat() {
        unsat_ = true;
        cs_.clear();
    }

    void normalize_rows() {
        if (!detail::cheap_reduce(cs_)) mark_unsat();
    }

    static linear_conjunction hull_join(const linear_conjunction& a, const linear_conjunction& b,
                                        const std::set<symbol>& uni);

    bool unsat_ = false;
    std::set<symbol> universe_;
    std::vector<linear_constraint> cs_;
};

inline linear_conjunction linear_conjunction::hull_join(const linear_conjunction& a,
                                                        const linear_conjunction& b,
                                                        const std::set<symbol>& uni) {
    const symbol eps = symbol::intern("$eps");
    const symbol lam = symbol::intern("$lam");
    auto lvar = [](symbol v) { return symbol::intern("$l:" + std::string(v.name())); };
    auto rvar = [](symbol v) { return symbol::intern("$r:" + std::string(v.name())); };

    bool strict = false;
    for (const auto& c : a.cs_) strict |= c.rel() == rel_op::lt;
    for (const auto& c : b.cs_) strict |= c.rel() == rel_op::lt;

    // Closed lift: e < b becomes e + eps <= b; both sides get eps <= 1.
    auto lift = [&](const linear_conjunction& side) {
        std::vector<linear_constraint> rows;
        for (const auto& c : side.cs_) {
            if (c.rel() == rel_op::lt) {
                linear_expr e;
                for (const auto& [v, k] : c.terms()) e.add_term(v, k);
                e.add_term(eps, rational(1));
                rows.push_back(linear_constraint(e, rel_op::le, linear_expr(c.bound())));
            } else {
                rows.push_back(c);
            }
        }
        if (strict) rows.push_back(mk_le(linear_expr(eps), linear_expr(1)));
        return rows;
    };

    std::set<symbol> dims = uni;
    if (strict) dims.insert(eps);

    std::vector<linear_constraint> sys;
    std::set<symbol> aux;
    // Side A scaled by lambda: sum(c * l_v) - bound*lam  rel  0.
    for (const auto& c : lift(a)) {
        linear_expr e;
        for (const auto& [v, k] : c.terms()) e.add_term(lvar(v), k);
        e.add_term(lam, -c.bound());
        sys.push_back(linear_constraint(e, c.rel(), linear_expr(0)));
    }
    // Side B scaled by (1 - lambda): sum(c * r_v) + bound*lam  rel  bound.
    for (const auto& c : lift(b)) {
        linear_expr e;
        for (const auto& [v, k] : c.terms()) e.add_term(rvar(v), k);
        e.add_term(lam, c.bound());
        sys.push_back(linear_constraint(e, c.rel(), linear_expr(c.bound())));
    }
    // Glue: v = l_v + r_v for every dimension; 0 <= lam <= 1 (lower implicit).
    for (symbol v : dims) {
        linear_expr e;
        e.add_term(v, rational(1));
        e.add_term(lvar(v), rational(-1));
        e.add_term(rvar(v), rational(-1));
        sys.push_back(linear_constraint(e, rel_op::eq, linear_expr(0)));
        aux.insert(lvar(v));
        aux.insert(rvar(v));
    }
    sys.push_back(mk_le(linear_expr(lam), linear_expr(1)));
    aux.insert(lam);

    while (!aux.empty()) {
        symbol v = detail::pick_elimination_var(sys, aux);
        aux.erase(v);
        if (!detail::eliminate_var(sys, v)) return unsat(uni);  // cannot happen for nonempty inputs
    }

    if (strict) {
        // Read strictness back: project out eps under the side condition eps > 0.
        linear_expr e;
        e.add_term(eps, rational(-1));
        sys.push_back(linear_constraint(e, rel_op::lt, linear_expr(0)));
        if (!detail::eliminate_var(sys, eps)) return unsat(uni);
    }

    linear_conjunction r = top(uni);
    r.cs_ = std::move(sys);
    r.normalize_rows();
    r.minimize();
    return r;
}

// --- rendering -------------------------------------------------------------

namespace detail {

inline std::string render_rational(const rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

inline std::string render_side(const std::vector<std::pair<symbol, rational>>& terms,
                               const rational& constant) {
    std::string out;
    bool first = true;
    for (const auto& [v, c] : terms) {
        if (!first) out += "+";
        if (c != 1) out += render_rational(c) + "*";
        out += std::string(v.name());
        first = false;
    }
    if (constant != 0 || first) {
        if (!first) out += "+";
        out += render_rational(constant);
    }
    return out;
}

}  // namespace detail

inline std::string linear_constraint::render() const {
    std::vector<std::pair<symbol, rational>> pos, neg;
    for (const auto& [v, c] : terms_) {
        if (c > 0)
            pos.emplace_back(v, c);
        else
            neg.emplace_back(v, -c);
    }
    rational lhs_const = bound_ < 0 ? -bound_ : rational(0);
    rational rhs_const = bound_ > 0 ? bound_ : rational(0);
    std::string lhs = detail::render_side(pos, lhs_const);
    std::string rhs = detail::render_side(neg, rhs_const);
    const char* op = rel_ == rel_op::eq ? "=" : rel_ == rel_op::le ? "<=" : "<";
    return lhs + op + rhs;
}

inline std::string linear_conjunction::render() const {
    if (unsat_) return "[unsat]";
    std::string out = "[";
    for (std::size_t i = 0; i < cs_.size(); ++i) {
        if (i) out += ", ";
        out += cs_[i].render();
    }
    return out + "]";
}

}  // namespace terminfer
