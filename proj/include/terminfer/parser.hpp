#pragma once

// Parser for the supported pure-Prolog subset: facts and rules over
// atoms, variables, integers (constants of size 0), compound terms and
// lists, with '='/2 as the only infix body goal and '%' line comments.
// Unsupported constructs (cut, negation, disjunction, arithmetic) get a
// dedicated diagnostic instead of a generic syntax error.

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "program.hpp"
#include "term.hpp"

namespace terminfer {

class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line, int col, bool unsupported_construct = false)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line_(line),
          col_(col),
          unsupported_(unsupported_construct) {}

    int line() const { return line_; }
    int column() const { return col_; }
    bool unsupported_construct() const { return unsupported_; }

private:
    int line_;
    int col_;
    bool unsupported_;
};

namespace detail {

struct token {
    enum class kind { atom, variable, integer, punct, neck, eq, end, op, eof };
    kind k;
    std::string text;
    int line;
    int col;
};

class lexer {
public:
    explicit lexer(std::string_view text) : text_(text) {}

    token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {token::kind::eof, "", line, col};
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                num += advance();
            return {token::kind::integer, num, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                id += advance();
            bool var = std::isupper(static_cast<unsigned char>(id[0])) || id[0] == '_';
            return {var ? token::kind::variable : token::kind::atom, id, line, col};
        }
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') {
            return {token::kind::punct, std::string(1, advance()), line, col};
        }
        if (is_symbolic(c)) {
            std::string run;
            while (pos_ < text_.size() && is_symbolic(text_[pos_])) run += advance();
            if (run == ":-") return {token::kind::neck, run, line, col};
            if (run == "=") return {token::kind::eq, run, line, col};
            if (run == ".") return {token::kind::end, run, line, col};
            return {token::kind::op, run, line, col};
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "'", line, col);
    }

private:
    static bool is_symbolic(char c) {
        return std::string_view("+-*/\\=<>~:.?@#&;!^").find(c) != std::string_view::npos;
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class clause_parser {
public:
    explicit clause_parser(std::string_view text) : lex_(text) { shift(); }

    program parse() {
        program p;
        while (cur_.k != token::kind::eof) p.clauses.push_back(parse_clause());
        p.index_predicates();
        return p;
    }

private:
    void shift() { cur_ = lex_.next(); }

    [[noreturn]] void unsupported(const std::string& what) {
        throw parse_error("unsupported construct: " + what, cur_.line, cur_.col, true);
    }
    [[noreturn]] void syntax(const std::string& msg) {
        throw parse_error(msg, cur_.line, cur_.col);
    }

    clause parse_clause() {
        int line = cur_.line;
        term_ptr head = parse_term();
        if (head->is_var()) syntax("clause head cannot be a variable");
        if (head->is_cons() || (head->is_constant() && std::isdigit(static_cast<unsigned char>(head->name.name()[0]))))
            syntax("clause head must be an atom or compound term");
        clause cl;
        cl.line = line;
        cl.pred = pred_ref{head->name, static_cast<std::uint32_t>(head->args.size())};
        cl.head_args = head->args;
        if (cur_.k == token::kind::neck) {
            shift();
            cl.body.push_back(parse_body_literal());
            while (cur_.k == token::kind::punct && cur_.text == ",") {
                shift();
                cl.body.push_back(parse_body_literal());
            }
        }
        if (cur_.k == token::kind::op) unsupported("'" + cur_.text + "'");
        if (cur_.k != token::kind::end) syntax("expected '.' at end of clause");
        shift();
        return cl;
    }

    literal parse_body_literal() {
        if (cur_.k == token::kind::op) unsupported("'" + cur_.text + "'");
        term_ptr t = parse_term();
        if (cur_.k == token::kind::eq) {
            shift();
            term_ptr rhs = parse_term();
            return literal::raw_unification(t, rhs);
        }
        if (cur_.k == token::kind::op) unsupported("'" + cur_.text + "'");
        if (cur_.k == token::kind::atom && cur_.text == "is") unsupported("'is'");
        if (t->is_var()) syntax("body goal cannot be a plain variable");
        if (t->is_constant() && std::isdigit(static_cast<unsigned char>(t->name.name()[0])))
            syntax("body goal cannot be an integer");
        if (t->is_cons()) syntax("body goal cannot be a list");
        if (t->is_constant() && (t->name.name() == "is")) unsupported("'is'");
        return literal::call_lit(pred_ref{t->name, static_cast<std::uint32_t>(t->args.size())},
                                 t->args);
    }

    term_ptr parse_term() {
        switch (cur_.k) {
            case token::kind::variable: {
                std::string name = cur_.text;
                shift();
                return term::var(name);
            }
            case token::kind::integer: {
                std::string digits = cur_.text;
                shift();
                return term::constant(digits);
            }
            case token::kind::atom: {
                std::string name = cur_.text;
                shift();
                if (cur_.k == token::kind::punct && cur_.text == "(") {
                    shift();
                    std::vector<term_ptr> args;
                    args.push_back(parse_term());
                    while (cur_.k == token::kind::punct && cur_.text == ",") {
                        shift();
                        args.push_back(parse_term());
                    }
                    expect_punct(")");
                    return term::compound(name, std::move(args));
                }
                return term::constant(name);
            }
            case token::kind::punct:
                if (cur_.text == "[") return parse_list();
                syntax("unexpected '" + cur_.text + "'");
            case token::kind::op:
                if (cur_.text == "!" || cur_.text == "\\+" || cur_.text == ";" ||
                    cur_.text == "->")
                    unsupported("'" + cur_.text + "'");
                syntax("unexpected operator '" + cur_.text + "'");
            default:
                syntax("expected a term");
        }
    }

    term_ptr parse_list() {
        expect_punct("[");
        if (cur_.k == token::kind::punct && cur_.text == "]") {
            shift();
            return term::nil();
        }
        std::vector<term_ptr> items;
        items.push_back(parse_term());
        while (cur_.k == token::kind::punct && cur_.text == ",") {
            shift();
            items.push_back(parse_term());
        }
        term_ptr tail = term::nil();
        if (cur_.k == token::kind::punct && cur_.text == "|") {
            shift();
            tail = parse_term();
        }
        expect_punct("]");
        for (auto it = items.rbegin(); it != items.rend(); ++it) tail = term::cons(*it, tail);
        return tail;
    }

    void expect_punct(const std::string& p) {
        if (cur_.k != token::kind::punct || cur_.text != p) syntax("expected '" + p + "'");
        shift();
    }

    lexer lex_;
    token cur_;
};

}  // namespace detail

// Parses a program source into a structurally faithful (not yet
// normalized) clause list; clause order is preserved.
inline program parse_program(std::string_view text) {
    detail::clause_parser p(text);
    return p.parse();
}

}  // namespace terminfer
