#pragma once

// Size norms and their instantiation abstractions. The term-size norm
// counts constructors (constants weigh 0, a compound weighs 1 plus its
// arguments), so rigidity coincides with groundness; the list-length norm
// counts list cells only.

#include <optional>
#include <vector>

#include "posdom.hpp"
#include "sizedom.hpp"
#include "term.hpp"

namespace terminfer {

enum class norm_kind { term_size, list_length };

inline linear_expr measure(norm_kind norm, const term_ptr& t) {
    if (t->is_var()) return linear_expr(t->name);
    if (norm == norm_kind::term_size) {
        if (t->is_constant()) return linear_expr(0);
        linear_expr e(1);
        for (const auto& a : t->args) e += measure(norm, a);
        return e;
    }
    // list-length
    if (t->is_cons()) return linear_expr(1) + measure(norm, t->args[1]);
    return linear_expr(0);
}

namespace detail {

// Variables controlling the list-length rigidity of a term: the chain of
// tail positions. A tail that is neither a variable nor a list yields
// "no information" (nullopt).
inline std::optional<std::vector<symbol>> tail_rigidity_vars(const term_ptr& t) {
    if (t->is_var()) return std::vector<symbol>{t->name};
    if (t->is_nil()) return std::vector<symbol>{};
    if (t->is_cons()) return tail_rigidity_vars(t->args[1]);
    return std::nullopt;
}

}  // namespace detail

// Abstraction of the unification x = t as an instantiation dependency.
inline pos_formula unification_rigidity(norm_kind norm, symbol lhs, const term_ptr& rhs) {
    if (norm == norm_kind::term_size) {
        pos_formula vs = mk_true();
        for (symbol v : vars_of(rhs)) vs = conj(vs, mk_var(v));
        return iff(mk_var(lhs), vs);
    }
    auto tails = detail::tail_rigidity_vars(rhs);
    if (!tails) return mk_true();  // conservative: nothing known
    pos_formula vs = mk_true();
    for (symbol v : *tails) vs = conj(vs, mk_var(v));
    return iff(mk_var(lhs), vs);
}

// True when the list-length abstraction of some unification in the
// program degrades to "no information" (worth a notice in reports).
inline bool listlength_loses_information(const term_ptr& rhs) {
    return !detail::tail_rigidity_vars(rhs).has_value();
}

}  // namespace terminfer
