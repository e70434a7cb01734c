#include <catch2/catch_amalgamated.hpp>

#include "causal/intervention.hpp"
#include "causal/io.hpp"
#include "causal/parser.hpp"
#include "causal/semantics.hpp"

#include "support/generators.hpp"

using namespace causal;

namespace {

CausalTeam example3() { return load_team(std::string(CAUSAL_DATA_DIR) + "/example3.json"); }
CausalTeam example5() { return load_team(std::string(CAUSAL_DATA_DIR) + "/example5.json"); }
CausalTeam sec9() { return load_team(std::string(CAUSAL_DATA_DIR) + "/sec9.json"); }

CausalTeam two_row_x() {
    TeamBuilder b;
    b.variable("X", {1, 2});
    b.row({{"X", 1}}).row({{"X", 2}});
    return b.build();
}

} // namespace

TEST_CASE("literals quantify over the whole support") {
    CausalTeam team = two_row_x();
    REQUIRE_FALSE(satisfies(team, parse_formula("X=1")));
    REQUIRE_FALSE(satisfies(team, parse_formula("X!=1")));
    REQUIRE(satisfies(team, parse_formula("X=1 | X=2")));
    REQUIRE(satisfies(team, parse_formula("X=1 | X!=1")));
}

TEST_CASE("selective implication restricts, counterfactual intervenes") {
    REQUIRE(satisfies(example5(), parse_formula("Z=3 => Y=2")));
    REQUIRE_FALSE(satisfies(example5(), parse_formula("Z=3 => X=1")));

    CausalTeam completed = complete_partial(example3());
    REQUIRE(satisfies(completed, parse_formula("X=1 ~> Y=2")));
    // The Z column of the intervened team contains a formal entry.
    REQUIRE_THROWS_AS(satisfies(completed, parse_formula("X=1 ~> Z=4")), Error);
}

TEST_CASE("counterfactuals with inconsistent antecedents hold") {
    REQUIRE(satisfies(example5(), parse_formula("X=1 & X=2 ~> Y=1")));
    REQUIRE(satisfies(two_row_x(), parse_formula("X=1 & X=2 ~> X=1 & X!=1")));
}

TEST_CASE("counterfactuals on partial teams need completion") {
    try {
        satisfies(example3(), parse_formula("X=1 ~> Y=2"));
        FAIL("expected UnsupportedPolicy");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::UnsupportedPolicy);
    }
}

TEST_CASE("the empty team satisfies every CD formula") {
    TeamBuilder b;
    b.variable("X", {1, 2}).variable("Y", {1, 2});
    b.function("Y", {"X"}, {{{1}, 1}, {{2}, 2}});
    CausalTeam empty = b.build();
    REQUIRE(empty.rows.empty());
    testgen::Rng rng(5150);
    for (int i = 0; i < 200; ++i) {
        Formula f = testgen::random_formula(rng, empty, 4, LanguageTag::CD);
        INFO(print(f));
        REQUIRE(satisfies(empty, f));
    }
    // Probabilistic atoms are false on the empty support.
    REQUIRE_FALSE(satisfies(empty, parse_formula("Pr(X=1) <= 1/2")));
    REQUIRE_FALSE(satisfies(empty, parse_formula("Pr(X=1) >= Pr(Y=1)")));
    REQUIRE(satisfies(empty, parse_formula("!Pr(X=1) <= 1/2")));
}

TEST_CASE("dual negation refutes at every singleton") {
    CausalTeam team = two_row_x();
    REQUIRE_FALSE(satisfies(team, parse_formula("-X=1")));  // row 1 satisfies X=1
    REQUIRE(satisfies(team, parse_formula("-X=3")));
    // S-EM fails while the internalized law holds.
    REQUIRE_FALSE(satisfies(team, parse_formula("X=1")));
    REQUIRE_FALSE(satisfies(team, parse_formula("-X=1")));
    REQUIRE(satisfies(team, parse_formula("X=1 | -X=1")));
}

TEST_CASE("boolean disjunction is a verdict disjunction") {
    CausalTeam team = two_row_x();
    REQUIRE_FALSE(satisfies(team, parse_formula("X=1 || X=2")));
    REQUIRE(satisfies(team, parse_formula("X=1 || X!=3")));
}

TEST_CASE("dependence atoms under truth") {
    CausalTeam team = example3();
    REQUIRE(satisfies(team, parse_formula("dep(X; Y)")));
    REQUIRE(satisfies(team, parse_formula("dep(U,X,Y; Z)")));
    REQUIRE_FALSE(satisfies(team, parse_formula("dep(U; X)")));
}

TEST_CASE("probability is an exact row count") {
    CausalTeam team = example5();
    REQUIRE(probability(team, parse_formula("Z=3")) == Rational(1, 2));
    REQUIRE(probability(team, parse_formula("Z=3 & Y=2")) == Rational(1, 2));
    REQUIRE(probability(team, parse_formula("X=1 | X!=1")) == Rational(1));
    REQUIRE(probability(team, parse_formula("X=1 & X!=1")) == Rational(0));

    TeamBuilder b;
    b.mode(TeamMode::Multiteam).variable("X", {1, 2, 3});
    b.row({{"X", 1}}).row({{"X", 1}}).row({{"X", 2}}).row({{"X", 3}});
    REQUIRE(probability(b.build(), parse_formula("X=1")) == Rational(1, 2));

    SECTION("errors") {
        TeamBuilder empty;
        empty.variable("X", {1});
        REQUIRE_THROWS_AS(probability(empty.build(), parse_formula("X=1")), Error);
        REQUIRE_THROWS_AS(probability(team, parse_formula("dep(X; Y)")), Error);
        REQUIRE_THROWS_AS(probability(team, parse_formula("Pr(X=1) <= 1/2")), Error);
    }
}

TEST_CASE("probabilistic literals and their negations") {
    TeamBuilder b;
    b.mode(TeamMode::Multiteam).variable("X", {1, 2});
    b.row({{"X", 1}}).row({{"X", 1}}).row({{"X", 2}});
    CausalTeam team = b.build();
    REQUIRE(satisfies(team, parse_formula("Pr(X=1) >= 2/3")));
    REQUIRE(satisfies(team, parse_formula("Pr(X=1) <= 2/3")));
    REQUIRE_FALSE(satisfies(team, parse_formula("Pr(X=1) < 2/3")));
    REQUIRE(satisfies(team, parse_formula("Pr(X=1) = 2/3")));
    REQUIRE(satisfies(team, parse_formula("Pr(X=2) < 1/2")));
    REQUIRE(satisfies(team, parse_formula("Pr(X=2) <= Pr(X=1)")));
    REQUIRE_FALSE(satisfies(team, parse_formula("Pr(X=2) >= Pr(X=1)")));
}

TEST_CASE("the PCD fragment is not downward closed") {
    // Less than half the rows satisfy X=1, so Pr(X=1) <= 1/2 holds; the
    // subteam of exactly those rows pushes the probability to 1.
    TeamBuilder b;
    b.variable("X", {1, 2, 3});
    b.row({{"X", 1}}).row({{"X", 2}}).row({{"X", 3}});
    CausalTeam team = b.build();
    Formula bound = parse_formula("Pr(X=1) <= 1/2");
    REQUIRE(satisfies(team, bound));
    CausalTeam sub = restricted(team, parse_formula("X=1"));
    REQUIRE_FALSE(satisfies(sub, bound));
}

TEST_CASE("conditional probability works through selective implication") {
    CausalTeam team = example5();
    // Pr(Y=2 | Z=3) = 1 and Pr(X=1 | Z=3) = 1/2.
    REQUIRE(satisfies(team, parse_formula("Z=3 => Pr(Y=2) >= 1")));
    REQUIRE(satisfies(team, parse_formula("Z=3 => Pr(X=1) = 1/2")));
    REQUIRE_FALSE(satisfies(team, parse_formula("Z=3 => Pr(X=1) < 1/2")));
}

TEST_CASE("truth on formal entries is refused") {
    CausalTeam team = sec9();
    try {
        satisfies(team, parse_formula("Y=1"));
        FAIL("expected FormalEntryEncountered");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::FormalEntryEncountered);
    }
    // Columns without formal entries still evaluate.
    REQUIRE_FALSE(satisfies(team, parse_formula("X=1")));
    REQUIRE(satisfies(team, parse_formula("X=1 | X=2")));
}

TEST_CASE("falsifiability on the running two-row example") {
    CausalTeam team = sec9();
    REQUIRE_FALSE(falsifies(team, parse_formula("Y=1 => X=2")));
    REQUIRE(falsifies(team, parse_formula("X=1")));
    REQUIRE(falsifies(team, parse_formula("X=2")));
    REQUIRE_FALSE(falsifies(team, parse_formula("Y=1")));  // the only concrete Y is 1
    REQUIRE(falsifies(team, parse_formula("Y!=1")));
    REQUIRE_FALSE(falsifies(team, parse_formula("Y!=2")));

    SECTION("conjunction falsifies if either side does") {
        REQUIRE(falsifies(team, parse_formula("X=1 & Y=1")));
        REQUIRE_FALSE(falsifies(team, parse_formula("Y=1 & Y!=2")));
    }
    SECTION("empty support falsifies nothing") {
        TeamBuilder b;
        b.variable("X", {1});
        REQUIRE_FALSE(falsifies(b.build(), parse_formula("X=1")));
    }
    SECTION("unsupported fragments are rejected") {
        REQUIRE_THROWS_AS(falsifies(team, parse_formula("-X=1")), Error);
        REQUIRE_THROWS_AS(falsifies(team, parse_formula("Pr(X=1) <= 1/2")), Error);
    }
}

TEST_CASE("falsifiability of dependence and disjunction") {
    TeamBuilder b;
    b.variable("X", {1, 2}).variable("Y", {1, 2});
    b.row({{"X", 1}, {"Y", 1}}).row({{"X", 1}, {"Y", 2}});
    CausalTeam team = b.build();
    REQUIRE(falsifies(team, parse_formula("dep(X; Y)")));
    REQUIRE_FALSE(falsifies(team, parse_formula("dep(Y; X)")));
    // Every cover must falsify one side.
    REQUIRE(falsifies(team, parse_formula("Y=1 | Y=1")));
    REQUIRE_FALSE(falsifies(team, parse_formula("Y=1 | Y=2")));
}

TEST_CASE("admissibility on atoms") {
    CausalTeam team = sec9();
    REQUIRE(admits(team, parse_formula("Y=1")));
    REQUIRE_FALSE(admits(team, parse_formula("X=3")));
    REQUIRE(admits(team, parse_formula("dep(X; Y)")));

    SECTION("dependence with concrete disagreement is inadmissible") {
        TeamBuilder b;
        b.variable("X", {1}).variable("Y", {1, 2});
        b.row({{"X", 1}, {"Y", 1}}).row({{"X", 1}, {"Y", 2}});
        REQUIRE_FALSE(admits(b.build(), parse_formula("dep(X; Y)")));
    }
}

TEST_CASE("admissibility of DNF formulas uses syntactic disequality") {
    // One row where X and Y hold the same formal term: X=1 & Y=2 would need
    // the two columns to differ on every row.
    FormalTerm shared;
    shared.symbol = "f";
    shared.args.push_back(ExtendedValue(3));
    TeamBuilder b;
    b.variable("X", {1}).variable("Y", {2});
    b.row({{"X", ExtendedValue(shared)}, {"Y", ExtendedValue(shared)}});
    CausalTeam team = b.build();
    REQUIRE_FALSE(admits(team, parse_formula("X=1 & Y=2")));
    REQUIRE(admits(team, parse_formula("X=1")));
    REQUIRE(admits(team, parse_formula("Y=2")));

    SECTION("clause 3: equality against inequality of the same value") {
        REQUIRE_FALSE(admits(team, parse_formula("X=1 & Y!=1")));
    }
    SECTION("a disjunct can cover what another cannot") {
        REQUIRE(admits(team, parse_formula("X=1 & Y=2 | X=1")));
    }
    SECTION("other shapes are rejected") {
        REQUIRE_THROWS_AS(admits(team, parse_formula("X=1 => Y=2")), Error);
        REQUIRE_THROWS_AS(admits(team, parse_formula("dep(X; Y) | X=1")), Error);
    }
}

TEST_CASE("strong conditional excluded middle fails") {
    // After do(Y=1) the X column still splits the team, so neither
    // Y=1 ~> X=1 nor Y=1 ~> -X=1 holds.
    TeamBuilder b;
    b.variable("X", {1, 2}).variable("Y", {1, 2});
    b.row({{"X", 1}, {"Y", 1}}).row({{"X", 2}, {"Y", 2}});
    CausalTeam team = b.build();
    REQUIRE_FALSE(satisfies(team, parse_formula("Y=1 ~> X=1")));
    REQUIRE_FALSE(satisfies(team, parse_formula("Y=1 ~> -X=1")));
    REQUIRE(satisfies(team, parse_formula("Y=1 ~> (X=1 | -X=1)")));
}

TEST_CASE("internalized excluded middle holds for arbitrary dual-negation formulas") {
    testgen::Rng rng(1729);
    for (int i = 0; i < 300; ++i) {
        CausalTeam team = testgen::random_team(rng);
        Formula psi = testgen::random_formula(rng, team, 3, LanguageTag::CO_NEG);
        INFO(print(psi));
        REQUIRE(satisfies(team, Formula::tensor(psi, Formula::dual_neg(psi))));
    }
}

TEST_CASE("flatness of the dual-negation fragment (spot check)") {
    testgen::Rng rng(616);
    for (int i = 0; i < 300; ++i) {
        CausalTeam team = testgen::random_team(rng);
        Formula f = testgen::random_formula(rng, team, 3, LanguageTag::CO_NEG);
        bool whole = satisfies(team, f);
        bool each = true;
        for (std::size_t r = 0; r < team.rows.size(); ++r)
            each = each && satisfies(team.singleton(static_cast<int>(r)), f);
        INFO(print(f));
        REQUIRE(whole == each);
    }
}

TEST_CASE("downward closure of CD (spot check)") {
    testgen::Rng rng(911);
    for (int i = 0; i < 300; ++i) {
        CausalTeam team = testgen::random_team(rng);
        Formula f = testgen::random_formula(rng, team, 3, LanguageTag::CD);
        if (!satisfies(team, f)) continue;
        CausalTeam sub = testgen::random_subteam(rng, team);
        INFO(print(f));
        REQUIRE(satisfies(sub, f));
    }
}

TEST_CASE("explanations collect the tables the evaluation visits") {
    std::vector<TraceEntry> trace;
    EvalOptions opts;
    opts.trace = &trace;
    REQUIRE(satisfies(example5(), parse_formula("Z=3 => Y=2"), opts));
    REQUIRE(trace.size() == 1);
    REQUIRE(trace[0].label == "T^{Z=3}");
    REQUIRE(trace[0].team.rows.size() == 2);
}
