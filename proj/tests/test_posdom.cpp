#include <catch_amalgamated.hpp>

#include <random>

#include "support/truth_tables.hpp"
#include "terminfer/posdom.hpp"

using namespace terminfer;
using oracle::table_fn;

namespace {

symbol S(const char* n) { return symbol::intern(n); }

// Builds the formula with the given truth table (minterm expansion on the
// raw diagram, clamped at the end).
pos_formula from_mask(const table_fn& f, const std::vector<symbol>& vars) {
    bdd::node_ref acc = bdd::false_ref;
    for (std::uint32_t a = 0; a < f.points(); ++a) {
        if (!f.at(a)) continue;
        bdd::node_ref cube = bdd::true_ref;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            bdd::node_ref v = bdd::mk_var(vars[i]);
            cube = bdd::land(cube, (a >> i) & 1u ? v : bdd::lnot(v));
        }
        acc = bdd::lor(acc, cube);
    }
    return pos_formula::clamp(acc);
}

std::vector<symbol> test_vars(int n) {
    static const char* names[] = {"ta", "tb", "tc", "td", "te"};
    std::vector<symbol> out;
    for (int i = 0; i < n; ++i) out.push_back(S(names[i]));
    return out;
}

}  // namespace

TEST_CASE("constants and variables") {
    CHECK(mk_true().is_top());
    CHECK(mk_false().is_bottom());
    CHECK(conj(mk_var("x"), mk_true()) == mk_var("x"));
    CHECK(mk_var("x") != mk_true());
    // projection function: true at 1, false at 0
    pos_formula x = mk_var("x");
    CHECK(bdd::eval(x.node(), {{S("x"), true}}));
    CHECK_FALSE(bdd::eval(x.node(), {{S("x"), false}}));
}

TEST_CASE("connectives") {
    pos_formula x = mk_var("x"), y = mk_var("y"), z = mk_var("z"), t = mk_var("t");
    CHECK(conj(x, y) == pos_formula::parse("x & y"));
    CHECK(disj(x, z) == pos_formula::parse("x | z"));
    CHECK(iff(t, conj(x, y)) == pos_formula::parse("(x & y) <-> t"));
    CHECK(conj(x, y) != disj(x, y));
}

TEST_CASE("pseudo-complement") {
    pos_formula e = pos_formula::parse("ta & tb");
    CHECK(pseudo_complement(mk_true(), e) == e);

    // the weakest sigma with sigma & psi |= e, from a backwards step
    pos_formula psi = pos_formula::parse("B <-> Ys");
    pos_formula inner = pos_formula::parse("Ys & (X -> Xs)");
    pos_formula sigma = pseudo_complement(psi, inner);
    CHECK(sigma == pos_formula::parse("(B <-> Ys) -> (Ys & (X -> Xs))"));
    CHECK(entails(conj(sigma, psi), inner));

    // no positive function conjoined with x gives bottom, so the
    // pseudo-complement of x wrt false is bottom itself
    pos_formula x = mk_var("tpc");
    CHECK(pseudo_complement(x, mk_false()).is_bottom());
    for (const table_fn& g : oracle::all_positive(1)) {
        pos_formula gf = from_mask(g, {S("tpc")});
        CHECK_FALSE(conj(gf, x).is_bottom());
    }
}

TEST_CASE("entailment") {
    CHECK(entails(pos_formula::parse("x & y"), pos_formula::parse("x | y")));
    CHECK(entails(pos_formula::parse("x"), pos_formula::parse("x | (y & z)")));
    CHECK_FALSE(entails(pos_formula::parse("x | y"), pos_formula::parse("x")));
    CHECK(entails(mk_false(), mk_var("x")));
}

TEST_CASE("existential quantification") {
    CHECK(exists(pos_formula::parse("x & y"), S("x")) == mk_var("y"));
    CHECK(exists(mk_var("x"), S("x")) == mk_true());
    CHECK(exists(pos_formula::parse("(x & y) <-> t"), S("t")) == mk_true());
}

TEST_CASE("universal projection") {
    CHECK(forall_project(pos_formula::parse("A | Xs"), {S("A")}) == mk_var("Xs"));
    CHECK(forall_project(pos_formula::parse("(x | t) & (((x & y) <-> t) -> (t & z))"), {S("t")}) ==
          pos_formula::parse("x & y & z"));
    CHECK(forall_project(mk_var("x"), {S("x")}).is_bottom());
    CHECK(forall_project(mk_false(), {S("x")}).is_bottom());
}

TEST_CASE("renaming") {
    std::map<symbol, symbol> m{{S("x"), S("a")}, {S("y"), S("b")}};
    CHECK(rename(pos_formula::parse("x & y"), m) == pos_formula::parse("a & b"));
    CHECK(rename(mk_false(), m).is_bottom());
    CHECK(rename(pos_formula::parse("x | z"), {{S("x"), S("A")}, {S("z"), S("C")}}) ==
          pos_formula::parse("A | C"));
    CHECK_THROWS_AS(rename(pos_formula::parse("x & y"), {{S("x"), S("y")}}),
                    std::invalid_argument);
}

TEST_CASE("instantiate merges variables") {
    pos_formula f = pos_formula::parse("x1 <-> (x2 & x3)");
    pos_formula g = instantiate(f, {{S("x1"), S("W")}, {S("x2"), S("W")}, {S("x3"), S("U")}});
    // W <-> (W & U) simplifies to W -> U
    CHECK(g == pos_formula::parse("W -> U"));
}

TEST_CASE("canonicity: equal functions share one representation") {
    // exhaustive over all positive functions of 4 variables
    std::vector<symbol> vars = test_vars(4);
    std::map<std::uint32_t, bdd::node_ref> seen;
    for (const table_fn& f : oracle::all_positive(4)) {
        pos_formula pf = from_mask(f, vars);
        REQUIRE_FALSE(pf.is_bottom());
        CHECK(oracle::from_formula(pf, vars).mask == f.mask);
        auto [it, fresh] = seen.emplace(f.mask, pf.node());
        CHECK(it->second == pf.node());
    }
    CHECK(seen.size() == oracle::all_positive(4).size());
}

TEST_CASE("closure: operations stay inside Pos plus bottom") {
    std::vector<symbol> vars = test_vars(3);
    std::mt19937 rng(7);
    std::vector<table_fn> pool = oracle::all_positive(3);
    for (int round = 0; round < 500; ++round) {
        table_fn a = pool[rng() % pool.size()], b = pool[rng() % pool.size()];
        pos_formula fa = from_mask(a, vars), fb = from_mask(b, vars);
        for (const pos_formula& r :
             {conj(fa, fb), disj(fa, fb), iff(fa, fb), pseudo_complement(fa, fb),
              exists(fa, vars[rng() % 3]), forall_project(fa, {vars[rng() % 3]})}) {
            CHECK((r.is_bottom() || bdd::eval_all_true(r.node())));
        }
    }
}

TEST_CASE("pseudo-complement law, exhaustive on 3 variables") {
    std::vector<symbol> vars = test_vars(3);
    std::vector<table_fn> pool = oracle::all_positive(3);
    for (const table_fn& psi_t : pool) {
        pos_formula psi = from_mask(psi_t, vars);
        for (const table_fn& e_t : pool) {
            pos_formula e = from_mask(e_t, vars);
            pos_formula pc = pseudo_complement(psi, e);
            // oracle: weakest admissible element is clamp(~psi | e)
            table_fn want = oracle::tt_clamp(oracle::tt_implies(psi_t, e_t));
            CHECK(oracle::from_formula(pc, vars).mask == want.mask);
            CHECK(entails(conj(pc, psi), e));
        }
    }
    // maximality, spot-checked against every positive candidate
    std::mt19937 rng(11);
    for (int round = 0; round < 40; ++round) {
        table_fn psi_t = pool[rng() % pool.size()], e_t = pool[rng() % pool.size()];
        pos_formula psi = from_mask(psi_t, vars), e = from_mask(e_t, vars);
        pos_formula pc = pseudo_complement(psi, e);
        for (const table_fn& g_t : pool) {
            pos_formula g = from_mask(g_t, vars);
            if (entails(conj(g, psi), e)) CHECK(entails(g, pc));
        }
    }
}

TEST_CASE("pseudo-complement law, sampled on 4 variables") {
    std::vector<symbol> vars = test_vars(4);
    std::mt19937 rng(13);
    std::vector<table_fn> pool = oracle::all_positive(4);
    for (int round = 0; round < 4000; ++round) {
        table_fn psi_t = pool[rng() % pool.size()], e_t = pool[rng() % pool.size()];
        pos_formula pc = pseudo_complement(from_mask(psi_t, vars), from_mask(e_t, vars));
        table_fn want = oracle::tt_clamp(oracle::tt_implies(psi_t, e_t));
        CHECK(oracle::from_formula(pc, vars).mask == want.mask);
    }
}

TEST_CASE("universal projection maximality") {
    // exhaustive on 3 variables: result is the largest positive function
    // implying the quantification
    std::vector<symbol> vars = test_vars(3);
    std::vector<table_fn> pool = oracle::all_positive(3);
    for (const table_fn& f_t : pool) {
        pos_formula f = from_mask(f_t, vars);
        for (int v = 0; v < 3; ++v) {
            pos_formula got = forall_project(f, {vars[static_cast<std::size_t>(v)]});
            table_fn want = oracle::tt_clamp(oracle::tt_forall(f_t, v));
            CHECK(oracle::from_formula(got, vars).mask == want.mask);
            for (const table_fn& g_t : pool) {
                if (oracle::tt_entails(g_t, oracle::tt_forall(f_t, v)))
                    CHECK(oracle::tt_entails(g_t, want));
            }
        }
    }
    // sampled var-subset projections on 4 variables
    std::vector<symbol> vars4 = test_vars(4);
    std::mt19937 rng(17);
    std::vector<table_fn> pool4 = oracle::all_positive(4);
    for (int round = 0; round < 2000; ++round) {
        table_fn f_t = pool4[rng() % pool4.size()];
        std::uint32_t subset = rng() % 16;
        std::vector<symbol> vs;
        table_fn want = f_t;
        for (int i = 0; i < 4; ++i)
            if ((subset >> i) & 1u) {
                vs.push_back(vars4[static_cast<std::size_t>(i)]);
                want = oracle::tt_forall(want, i);
            }
        want = oracle::tt_clamp(want);
        pos_formula got = forall_project(from_mask(f_t, vars4), vs);
        CHECK(oracle::from_formula(got, vars4).mask == want.mask);
    }
}

TEST_CASE("lattice sanity: conj is the meet, disj an upper bound") {
    std::vector<symbol> vars = test_vars(3);
    std::vector<table_fn> pool = oracle::all_positive(3);
    std::mt19937 rng(19);
    for (int round = 0; round < 300; ++round) {
        pos_formula f = from_mask(pool[rng() % pool.size()], vars);
        pos_formula g = from_mask(pool[rng() % pool.size()], vars);
        pos_formula h = from_mask(pool[rng() % pool.size()], vars);
        pos_formula m = conj(f, g);
        CHECK(entails(m, f));
        CHECK(entails(m, g));
        if (entails(h, f) && entails(h, g)) CHECK(entails(h, m));
        pos_formula j = disj(f, g);
        CHECK(entails(f, j));
        CHECK(entails(g, j));
    }
}

TEST_CASE("rendering is canonical and parses back") {
    CHECK(mk_true().render() == "true");
    CHECK(mk_false().render() == "false");
    CHECK(pos_formula::parse("x1 | x3").render() == "x1 | x3");
    CHECK(pos_formula::parse("x1 & x2").render() == "x1 & x2");
    CHECK(pos_formula::parse("x1 | (x2 & x3)").render() == "x1 | (x2 & x3)");
    CHECK(pos_formula::parse("(x2 & x3) | x1").render() == "x1 | (x2 & x3)");

    std::vector<symbol> vars = test_vars(4);
    std::mt19937 rng(23);
    std::vector<table_fn> pool = oracle::all_positive(4);
    for (int round = 0; round < 1500; ++round) {
        pos_formula f = from_mask(pool[rng() % pool.size()], vars);
        pos_formula back = pos_formula::parse(f.render());
        CHECK(back == f);
    }
}
