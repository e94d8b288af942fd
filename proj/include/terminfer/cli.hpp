#pragma once

// Command-line front door: inference (default), single-mode checking,
// the three semantic dumps, JSON output, and the benchmark harness with
// expected-condition sidecar files.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "check.hpp"
#include "infer.hpp"
#include "parser.hpp"

namespace terminfer::cli {

struct config {
    enum class action_kind { infer, check, dump_binary, dump_success, dump_calls, bench };

    action_kind action = action_kind::infer;
    analysis_options options;
    std::string check_mode;
    std::string input_file;
    std::string bench_dir;
    bool json = false;
};

namespace detail {

inline std::string pred_with_args(const pred_ref& pr) {
    std::string out(pr.name.name());
    if (pr.arity == 0) return out;
    out += "(";
    for (std::uint32_t i = 0; i < pr.arity; ++i) {
        if (i) out += ",";
        out += std::string(head_var(i).name());
    }
    return out + ")";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

inline std::string render_text(const termination_report& report) {
    std::string out;
    for (const auto& pr : report.preds) {
        out += detail::pred_with_args(pr.pred) + " <- " + pr.condition.render() + "\n";
        if (pr.minimal_modes) {
            out += "  minimal modes:";
            if (pr.minimal_modes->empty()) out += " (none)";
            for (const auto& m : *pr.minimal_modes) out += " " + m.render();
            out += "\n";
        }
        out += "  loops: " + std::to_string(pr.loops) + "\n";
    }
    for (const auto& note : report.notes) out += "note: " + note + "\n";
    return out;
}

inline nlohmann::ordered_json render_json(const termination_report& report) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& pr : report.preds) {
        nlohmann::ordered_json j;
        j["predicate"] = std::string(pr.pred.name.name());
        j["arity"] = pr.pred.arity;
        j["condition"] = pr.condition.render();
        nlohmann::ordered_json modes = nlohmann::ordered_json::array();
        if (pr.minimal_modes)
            for (const auto& m : *pr.minimal_modes) modes.push_back(m.render());
        j["minimal_modes"] = modes;
        j["loops"] = pr.loops;
        arr.push_back(std::move(j));
    }
    return arr;
}

// --- benchmark harness ------------------------------------------------------

struct bench_entry {
    std::string file;
    bool skipped = false;
    bool matched = false;
    std::vector<std::string> mismatches;
    double seconds = 0.0;
};

struct sidecar {
    analysis_options options;
    std::map<pred_ref, pos_formula> expected;
};

// Sidecar grammar: '# norm: termsize|listlength', '# widen-every: N',
// other '#' lines are comments; then one 'name/arity: condition' per line.
inline sidecar parse_sidecar(const std::string& text, const analysis_options& base) {
    sidecar sc;
    sc.options = base;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed += c;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
            trimmed.pop_back();
        if (trimmed.empty()) continue;
        if (trimmed[0] == '#') {
            auto directive = [&](const std::string& key) -> std::optional<std::string> {
                std::string prefix = "# " + key + ":";
                if (trimmed.compare(0, prefix.size(), prefix) == 0) {
                    std::string v = trimmed.substr(prefix.size());
                    std::string s;
                    for (char c : v)
                        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
                    return s;
                }
                return std::nullopt;
            };
            if (auto v = directive("norm")) {
                if (*v == "listlength")
                    sc.options.norm = norm_kind::list_length;
                else if (*v == "termsize")
                    sc.options.norm = norm_kind::term_size;
                else
                    throw std::runtime_error("sidecar line " + std::to_string(lineno) +
                                             ": unknown norm '" + *v + "'");
            } else if (auto w = directive("widen-every")) {
                sc.options.widen_every = std::stoi(*w);
            }
            continue;
        }
        std::size_t colon = trimmed.find(':');
        std::size_t slash = trimmed.find('/');
        if (colon == std::string::npos || slash == std::string::npos || slash > colon)
            throw std::runtime_error("sidecar line " + std::to_string(lineno) +
                                     ": expected 'name/arity: condition'");
        pred_ref pr;
        pr.name = symbol::intern(trimmed.substr(0, slash));
        pr.arity = static_cast<std::uint32_t>(std::stoul(trimmed.substr(slash + 1, colon - slash - 1)));
        sc.expected.emplace(pr, pos_formula::parse(trimmed.substr(colon + 1)));
    }
    return sc;
}

inline std::vector<bench_entry> run_bench(const std::string& dir, const analysis_options& base,
                                          std::ostream& err) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".pl") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::vector<bench_entry> results;
    for (const auto& path : files) {
        bench_entry entry;
        entry.file = path.filename().string();
        fs::path side = path;
        side.replace_extension(".expect");
        if (!fs::exists(side)) {
            err << "warning: no sidecar for " << entry.file << ", skipped\n";
            entry.skipped = true;
            results.push_back(std::move(entry));
            continue;
        }
        sidecar sc = parse_sidecar(detail::read_file(side.string()), base);
        auto start = std::chrono::steady_clock::now();
        program p = normalize(parse_program(detail::read_file(path.string())));
        termination_report report = infer_termination(p, sc.options);
        entry.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        entry.matched = true;
        for (const auto& [pred, want] : sc.expected) {
            const pred_report* found = nullptr;
            for (const auto& pr : report.preds)
                if (pr.pred == pred) found = &pr;
            if (!found) {
                entry.matched = false;
                entry.mismatches.push_back(pred.render() + ": not in report");
                continue;
            }
            if (found->condition != want) {
                entry.matched = false;
                entry.mismatches.push_back(pred.render() + ": got " + found->condition.render() +
                                           ", expected " + want.render());
            }
        }
        results.push_back(std::move(entry));
    }
    return results;
}

// --- entry point ------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"termination inference for pure logic programs", "terminfer"};
    config cfg;

    bool flag_infer = false, dump_binary = false, dump_success = false, dump_calls = false;
    std::string norm = "termsize", join = "hull";

    app.add_flag("--infer", flag_infer, "infer termination conditions (default action)");
    app.add_option("--check", cfg.check_mode, "check one mode, e.g. \"append(b,b,f)\"");
    app.add_flag("--dump-binary", dump_binary, "print the abstract loops");
    app.add_flag("--dump-success", dump_success, "print the success-set abstraction");
    app.add_flag("--dump-calls", dump_calls, "print call patterns (needs --check for the goal)");
    app.add_option("--norm", norm, "size norm: termsize | listlength")
        ->check(CLI::IsMember({"termsize", "listlength"}));
    app.add_option("--widen-every", cfg.options.widen_every, "widening period (default 3)")
        ->check(CLI::PositiveNumber);
    app.add_option("--join", join, "size join: hull | entailed")
        ->check(CLI::IsMember({"hull", "entailed"}));
    app.add_flag("--json", cfg.json, "JSON report");
    app.add_option("--bench", cfg.bench_dir, "run the benchmark directory");
    app.add_option("file", cfg.input_file, "program file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    cfg.options.norm = (norm == "listlength") ? norm_kind::list_length : norm_kind::term_size;
    cfg.options.join = (join == "entailed") ? linear_conjunction::join_mode::entailed
                                            : linear_conjunction::join_mode::hull;

    try {
        if (!cfg.bench_dir.empty()) {
            std::vector<bench_entry> results = run_bench(cfg.bench_dir, cfg.options, err);
            int matched = 0, mismatched = 0, skipped = 0;
            for (const auto& e : results) {
                if (e.skipped) {
                    ++skipped;
                    out << e.file << ": skipped\n";
                } else if (e.matched) {
                    ++matched;
                    out << e.file << ": match (" << e.seconds << "s)\n";
                } else {
                    ++mismatched;
                    out << e.file << ": MISMATCH (" << e.seconds << "s)\n";
                    for (const auto& m : e.mismatches) out << "    " << m << "\n";
                }
            }
            out << "bench: " << matched << " matched, " << mismatched << " mismatched, " << skipped
                << " skipped\n";
            return 0;
        }

        if (cfg.input_file.empty()) {
            err << "error: no input file\n";
            return 1;
        }
        program p = normalize(parse_program(detail::read_file(cfg.input_file)));

        if (dump_binary || dump_success || dump_calls) {
            if (dump_binary) {
                binary_result bin = binary_semantics(p, cfg.options);
                for (const auto& l : bin.loops) out << l.render() << "\n";
            }
            if (dump_success) {
                success_map S = success_analysis(p, cfg.options.norm);
                for (const auto& pr : p.predicates)
                    out << detail::pred_with_args(pr) << " <- " << S.at(pr).render() << "\n";
            }
            if (dump_calls) {
                if (cfg.check_mode.empty()) {
                    err << "error: --dump-calls needs --check \"pred(b,f,...)\" for the goal\n";
                    return 1;
                }
                mode g = parse_mode(cfg.check_mode);
                success_map S = success_analysis(p, cfg.options.norm);
                call_pattern_map calls = call_analysis(p, g, S, cfg.options.norm);
                for (const auto& [pr, patterns] : calls)
                    for (const auto& f : patterns)
                        out << detail::pred_with_args(pr) << " <- " << f.render() << "\n";
            }
            return 0;
        }

        if (!cfg.check_mode.empty()) {
            mode g = parse_mode(cfg.check_mode);
            check_report report = check_termination(p, g, cfg.options);
            out << report.render();
            return report.terminates ? 0 : 2;
        }

        termination_report report = infer_termination(p, cfg.options);
        if (cfg.json)
            out << render_json(report).dump(2) << "\n";
        else
            out << render_text(report);
        return 0;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace terminfer::cli
