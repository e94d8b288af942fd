#pragma once

// Interned identifiers. A symbol is a small integer handle into a global
// name table; the interning order doubles as the global decision-diagram
// variable order, so it is fixed for the lifetime of the process.

#include <cstdint>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace terminfer {

class symbol {
public:
    symbol() : id_(UINT32_MAX) {}

    static symbol intern(std::string_view name);
    static symbol from_id(std::uint32_t id) { return symbol(id); }

    std::string_view name() const;
    std::uint32_t id() const { return id_; }
    bool valid() const { return id_ != UINT32_MAX; }

    friend bool operator==(symbol a, symbol b) { return a.id_ == b.id_; }
    friend bool operator!=(symbol a, symbol b) { return a.id_ != b.id_; }
    friend bool operator<(symbol a, symbol b) { return a.id_ < b.id_; }

private:
    explicit symbol(std::uint32_t id) : id_(id) {}

    struct table {
        std::mutex mu;
        std::deque<std::string> names;  // deque: stored strings never move
        std::unordered_map<std::string_view, std::uint32_t> index;

        table() {
            // Canonical argument variables come first so that the
            // diagram variable order (and with it, report rendering) does
            // not depend on what a client interned earlier.
            for (int i = 1; i <= 32; ++i) put("x" + std::to_string(i));
            for (int i = 1; i <= 32; ++i) put("y" + std::to_string(i));
        }
        void put(std::string name) {
            names.push_back(std::move(name));
            index.emplace(std::string_view(names.back()), static_cast<std::uint32_t>(names.size() - 1));
        }
    };
    static table& tab() {
        static table t;
        return t;
    }

    std::uint32_t id_;
};

inline symbol symbol::intern(std::string_view name) {
    table& t = tab();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.index.find(name);
    if (it != t.index.end()) return symbol(it->second);
    std::uint32_t id = static_cast<std::uint32_t>(t.names.size());
    t.names.push_back(std::string(name));
    t.index.emplace(std::string_view(t.names.back()), id);
    return symbol(id);
}

inline std::string_view symbol::name() const {
    table& t = tab();
    std::lock_guard<std::mutex> lock(t.mu);
    if (id_ >= t.names.size()) throw std::logic_error("invalid symbol handle");
    return std::string_view(t.names[id_]);
}

// Canonical argument-position variables shared by all per-predicate
// formulas and size relations: x1..xn for head positions, y1..yn for the
// body call of a binary clause, $m1.. for composition intermediates.
inline symbol head_var(std::size_t pos) { return symbol::intern("x" + std::to_string(pos + 1)); }
inline symbol body_var(std::size_t pos) { return symbol::intern("y" + std::to_string(pos + 1)); }
inline symbol mid_var(std::size_t pos) { return symbol::intern("$m" + std::to_string(pos + 1)); }

}  // namespace terminfer

template <>
struct std::hash<terminfer::symbol> {
    std::size_t operator()(terminfer::symbol s) const noexcept {
        return std::hash<std::uint32_t>()(s.id());
    }
};
