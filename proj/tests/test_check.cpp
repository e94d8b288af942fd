#include <catch_amalgamated.hpp>

#include "support/simplex.hpp"
#include "terminfer/check.hpp"
#include "terminfer/parser.hpp"

using namespace terminfer;

namespace {

symbol S(const char* n) { return symbol::intern(n); }

binary_clause append_loop() {
    linear_conjunction pi = linear_conjunction::top({});
    pi.add(mk_lt(body_var(0), head_var(0)));
    pi.add(mk_lt(body_var(2), head_var(2)));
    pi.add(mk_eq(head_var(1), body_var(1)));
    return binary_clause{pred_ref{S("append"), 3}, pred_ref{S("append"), 3}, pi};
}

const char* kSection = R"(
append([X|Xs],Ys,[X|Zs]) :- append(Xs,Ys,Zs).
append([],Ys,Ys).
member(X,Xs) :- append(A,[X|B],Xs).
subset([X|Xs],Ys) :- member(X,Ys), subset(Xs,Ys).
subset([],Ys).
s(X,Y,Z) :- append(X,Y,T), subset(T,Z).
)";

}  // namespace

TEST_CASE("instantiated argument set") {
    CHECK(instantiated_set(pos_formula::parse("x1 & x2"), 3) == arg_set{0, 1});
    CHECK(instantiated_set(mk_true(), 3).empty());
    CHECK(instantiated_set(mk_false(), 3) == arg_set{0, 1, 2});
    CHECK(instantiated_set(pos_formula::parse("x1 & (x2 | x3)"), 3) == arg_set{0});
}

TEST_CASE("fast CHK on the append loop") {
    binary_clause beta = append_loop();
    CHECK(chk_fast({0, 1}, beta) == chk_result::yes);
    CHECK(chk_fast({0}, beta) == chk_result::yes);
    CHECK(chk_fast({1}, beta) == chk_result::unknown);  // sizes preserved
    CHECK(chk_fast({}, beta) == chk_result::unknown);
}

TEST_CASE("mode checking end to end") {
    program p = normalize(parse_program(kSection));
    analysis_options opt;

    check_report r1 = check_termination(p, parse_mode("append(b,b,f)"), opt);
    CHECK(r1.terminates);
    CHECK_FALSE(r1.pairs.empty());
    for (const auto& pair : r1.pairs) CHECK(pair.verdict == chk_result::yes);

    check_report r2 = check_termination(p, parse_mode("append(f,b,f)"), opt);
    CHECK_FALSE(r2.terminates);

    check_report r3 = check_termination(p, parse_mode("subset(b,b)"), opt);
    CHECK(r3.terminates);

    CHECK_THROWS_AS(check_termination(p, parse_mode("nosuch(b)"), opt), analysis_error);
}

TEST_CASE("fast CHK yes answers on arising pairs are confirmed by the oracle") {
    program p = normalize(parse_program(kSection));
    analysis_options opt;
    int checked = 0;
    for (const char* m : {"append(b,b,f)", "append(b,f,f)", "append(f,f,b)", "subset(b,b)",
                          "s(b,b,b)", "member(f,b)"}) {
        check_report report = check_termination(p, parse_mode(m), opt);
        for (const auto& pair : report.pairs) {
            if (pair.verdict != chk_result::yes) continue;
            ++checked;
            std::set<symbol> vars;
            for (std::uint32_t i = 0; i < pair.pred.arity; ++i) {
                vars.insert(head_var(i));
                vars.insert(body_var(i));
            }
            // either some instantiated singleton strictly decreases, or the
            // summed non-decrease assumption is infeasible
            bool singleton = false;
            for (std::size_t i : pair.instantiated)
                singleton |= oracle::lp_entails(pair.loop.pi.constraints(),
                                                mk_lt(body_var(i), head_var(i)), vars);
            std::vector<linear_constraint> sys = pair.loop.pi.constraints();
            for (std::size_t i : pair.instantiated)
                sys.push_back(mk_le(head_var(i), body_var(i)));
            bool disjunction = !oracle::lp_feasible(sys, vars);
            CHECK((singleton || disjunction));
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("decreasing sets are closed under extension") {
    // a discovered witness extends with zero coefficients, so any superset
    // of a decreasing singleton passes the oracle with the same combination
    binary_clause beta = append_loop();
    std::set<symbol> vars;
    for (std::uint32_t i = 0; i < 3; ++i) {
        vars.insert(head_var(i));
        vars.insert(body_var(i));
    }
    linear_constraint dec0 = mk_lt(body_var(0), head_var(0));
    REQUIRE(oracle::lp_entails(beta.pi.constraints(), dec0, vars));
    // extend {0} by position 1 with coefficient 0: same constraint stays valid
    for (arg_set superset : {arg_set{0, 1}, arg_set{0, 2}, arg_set{0, 1, 2}}) {
        CHECK(oracle::lp_entails(beta.pi.constraints(), dec0, vars));
        CHECK(superset.count(0) == 1);
    }
}
