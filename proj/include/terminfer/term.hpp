#pragma once

// First-order terms for the pure-Prolog subset. Lists are ordinary
// compounds with functor '.'/2 and the constant []; integers are
// constants. Terms are immutable and shared.

#include <memory>
#include <string>
#include <vector>

#include "symbols.hpp"

namespace terminfer {

struct term;
using term_ptr = std::shared_ptr<const term>;

struct term {
    enum class kind { variable, constant, compound };

    kind k;
    symbol name;                 // variable name, constant symbol, or functor
    std::vector<term_ptr> args;  // compound arguments

    static term_ptr var(symbol v) { return std::make_shared<term>(term{kind::variable, v, {}}); }
    static term_ptr var(std::string_view v) { return var(symbol::intern(v)); }
    static term_ptr constant(symbol c) { return std::make_shared<term>(term{kind::constant, c, {}}); }
    static term_ptr constant(std::string_view c) { return constant(symbol::intern(c)); }
    static term_ptr compound(symbol f, std::vector<term_ptr> as) {
        return std::make_shared<term>(term{kind::compound, f, std::move(as)});
    }
    static term_ptr compound(std::string_view f, std::vector<term_ptr> as) {
        return compound(symbol::intern(f), std::move(as));
    }

    static term_ptr nil() { return constant("[]"); }
    static term_ptr cons(term_ptr head, term_ptr tail) {
        return compound(".", {std::move(head), std::move(tail)});
    }

    bool is_var() const { return k == kind::variable; }
    bool is_constant() const { return k == kind::constant; }
    bool is_compound() const { return k == kind::compound; }
    bool is_nil() const { return is_constant() && name == symbol::intern("[]"); }
    bool is_cons() const { return is_compound() && args.size() == 2 && name == symbol::intern("."); }
};

inline void collect_vars(const term_ptr& t, std::vector<symbol>& out) {
    if (t->is_var()) {
        out.push_back(t->name);
        return;
    }
    for (const auto& a : t->args) collect_vars(a, out);
}

inline std::vector<symbol> vars_of(const term_ptr& t) {
    std::vector<symbol> out;
    collect_vars(t, out);
    return out;
}

inline bool term_equal(const term_ptr& a, const term_ptr& b) {
    if (a->k != b->k || a->name != b->name || a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
    return true;
}

inline std::string render(const term_ptr& t) {
    if (t->is_var() || t->is_constant()) return std::string(t->name.name());
    if (t->is_cons()) {
        std::string out = "[" + render(t->args[0]);
        term_ptr rest = t->args[1];
        while (rest->is_cons()) {
            out += "," + render(rest->args[0]);
            rest = rest->args[1];
        }
        if (!rest->is_nil()) out += "|" + render(rest);
        return out + "]";
    }
    std::string out = std::string(t->name.name()) + "(";
    for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ",";
        out += render(t->args[i]);
    }
    return out + ")";
}

}  // namespace terminfer
