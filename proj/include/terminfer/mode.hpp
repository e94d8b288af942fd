#pragma once

// A mode is a bound/free pattern for one predicate, viewed as the call
// pattern whose formula is the conjunction of the bound positions.

#include <stdexcept>
#include <string>
#include <vector>

#include "posdom.hpp"
#include "program.hpp"

namespace terminfer {

struct mode {
    pred_ref pred;
    std::vector<bool> bound;  // one flag per argument, true = b

    pos_formula formula() const {
        pos_formula f = mk_true();
        for (std::size_t i = 0; i < bound.size(); ++i)
            if (bound[i]) f = conj(f, mk_var(head_var(i)));
        return f;
    }

    std::string render() const {
        std::string out(pred.name.name());
        if (bound.empty()) return out;
        out += "(";
        for (std::size_t i = 0; i < bound.size(); ++i) {
            if (i) out += ",";
            out += bound[i] ? "b" : "f";
        }
        return out + ")";
    }

    friend bool operator==(const mode& a, const mode& b) {
        return a.pred == b.pred && a.bound == b.bound;
    }
};

// Parses "append(b,b,f)" (or "p" for arity 0).
inline mode parse_mode(const std::string& text) {
    auto fail = [&]() -> void {
        throw std::invalid_argument("malformed mode '" + text + "' (expected name(b,f,...))");
    };
    std::size_t open = text.find('(');
    mode m;
    if (open == std::string::npos) {
        std::string name = text;
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        if (name.empty()) fail();
        m.pred = pred_ref{symbol::intern(name), 0};
        return m;
    }
    if (text.back() != ')') fail();
    std::string name = text.substr(0, open);
    if (name.empty()) fail();
    m.pred.name = symbol::intern(name);
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::string cur;
    auto take = [&](const std::string& item) {
        std::string s;
        for (char c : item)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        if (s == "b")
            m.bound.push_back(true);
        else if (s == "f")
            m.bound.push_back(false);
        else
            fail();
    };
    for (char c : inner) {
        if (c == ',') {
            take(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    take(cur);
    m.pred.arity = static_cast<std::uint32_t>(m.bound.size());
    return m;
}

}  // namespace terminfer
