#include "ucmbt/guard.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

using namespace ucmbt;
using namespace ucmbt::testing;

TEST_CASE("parse: slash-decorated atom") {
    GuardExpr e = parse_guard("/PR_Request");
    REQUIRE(e.is_literal());
    CHECK(e.lit() == lit("PR_Request"));
}

TEST_CASE("parse: negated atom in a conjunction") {
    GuardExpr e = parse_guard("Not /Exist(i) and /Add(i)");
    REQUIRE(e.kind() == GuardExpr::Kind::And);
    REQUIRE(e.operands().size() == 2);
    CHECK(e.operands()[0].lit() == neg("Exist", {"i"}));
    CHECK(e.operands()[1].lit() == lit("Add", {"i"}));
}

TEST_CASE("parse: and binds tighter than or, parens override") {
    GuardExpr e = parse_guard("a and (b or c)");
    REQUIRE(e.kind() == GuardExpr::Kind::And);
    REQUIRE(e.operands().size() == 2);
    CHECK(e.operands()[0].lit() == lit("a"));
    REQUIRE(e.operands()[1].kind() == GuardExpr::Kind::Or);
    CHECK(e.operands()[1].operands()[0].lit() == lit("b"));
    CHECK(e.operands()[1].operands()[1].lit() == lit("c"));

    GuardExpr flat = parse_guard("a and b or c");
    REQUIRE(flat.kind() == GuardExpr::Kind::Or);
    REQUIRE(flat.operands()[0].kind() == GuardExpr::Kind::And);
}

TEST_CASE("parse: keyword case-insensitivity, atom case-sensitivity") {
    CHECK(parse_guard("a AND b") == parse_guard("a and b"));
    CHECK(parse_guard("a Or b") == parse_guard("a or b"));
    CHECK(parse_guard("Exist(i)") != parse_guard("exist(i)"));
}

TEST_CASE("parse: multi-argument atoms") {
    GuardExpr e = parse_guard("Transfer(U, i)");
    CHECK(e.lit() == lit("Transfer", {"U", "i"}));
    CHECK(render_guard(e) == "Transfer(U,i)");
}

TEST_CASE("parse: syntax errors carry offset and expected set") {
    try {
        parse_guard("a and ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 6);
        CHECK(!e.expected().empty());
    }

    try {
        parse_guard("a ^ b");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }

    CHECK_THROWS_AS(parse_guard("not (a and b)"), ParseError); // negation is literal-only
    CHECK_THROWS_AS(parse_guard("a and (b"), ParseError);
    CHECK_THROWS_AS(parse_guard("Exist()"), ParseError);
    CHECK_THROWS_AS(parse_guard("a b"), ParseError);
    CHECK_THROWS_AS(parse_guard("(a"), ParseError);
    CHECK_THROWS_AS(parse_guard("1a"), ParseError);
}

TEST_CASE("parse: blank input is EmptyExpression") {
    CHECK_THROWS_AS(parse_guard(""), EmptyExpressionError);
    CHECK_THROWS_AS(parse_guard("   \t\n"), EmptyExpressionError);
}

TEST_CASE("parse_guard_literal rejects compounds") {
    CHECK(parse_guard_literal("not PR(i)") == neg("PR", {"i"}));
    CHECK_THROWS_AS(parse_guard_literal("a and b"), ParseError);
}

TEST_CASE("eval: literal polarity") {
    GuardEnv env;
    env[GuardAtom{"PR_Request", {}}] = true;
    CHECK(eval_guard(GuardExpr::literal(lit("PR_Request")), env) == true);

    GuardEnv env2;
    env2[GuardAtom{"Exist", {"i"}}] = true;
    CHECK(eval_guard(GuardExpr::literal(neg("Exist", {"i"})), env2) == false);
}

TEST_CASE("eval: unbound atom throws") {
    GuardEnv env;
    CHECK_THROWS_AS(eval_guard(GuardExpr::atom("missing"), env), UnboundAtomError);
}

TEST_CASE("eval: PR contract satisfied through the cancel branch") {
    GuardExpr contract = parse_guard(pr_contract_text());

    GuardEnv env;
    for (const auto& atom : collect_atoms(contract)) env[atom] = false;
    env[GuardAtom{"PR_Request", {}}] = true;
    // Validated_User(U) and PR(i) stay false: the cancel disjunct holds.
    CHECK(eval_guard(contract, env) == true);

    // Independent confirmation through direct clause evaluation.
    CHECK(eval_dnf(to_dnf(contract), env) == true);
}

TEST_CASE("to_dnf: distribution, identity, absorption, contradiction") {
    GuardExpr dist = parse_guard("a and (b or c)");
    DnfForm expected;
    expected.clauses = {{lit("a"), lit("b")}, {lit("a"), lit("c")}};
    CHECK(to_dnf(dist) == expected);

    DnfForm identity;
    identity.clauses = {{lit("x")}};
    CHECK(to_dnf(parse_guard("x")) == identity);

    // (a) or (a and b): the superset clause is absorbed.
    DnfForm absorbed;
    absorbed.clauses = {{lit("a")}};
    CHECK(to_dnf(parse_guard("a or (a and b)")) == absorbed);

    // (a and not a) is contradictory and drops out.
    DnfForm contradiction;
    contradiction.clauses = {{lit("b")}};
    CHECK(to_dnf(parse_guard("(a and not a) or b")) == contradiction);
}

TEST_CASE("to_dnf: PR contract has exactly the three goal clauses") {
    GuardExpr contract = parse_guard(pr_contract_text());
    DnfForm dnf = to_dnf(contract);

    DnfForm expected;
    expected.clauses = {
        {lit("PR_Request"), lit("Validated_User", {"U"}), lit("Add_PR", {"i"}),
         lit("Exist", {"i"}), lit("PR", {"i"})},
        {lit("PR_Request"), lit("Validated_User", {"U"}), lit("Add_PR", {"i"}),
         neg("Exist", {"i"}), lit("Add", {"i"}), lit("PR", {"i"})},
        {lit("PR_Request"), neg("Validated_User", {"U"}), neg("PR", {"i"})},
    };
    CHECK(dnf == expected);

    // Truth-table agreement between the contract and its DNF over all
    // assignments of its six atoms.
    auto atoms = collect_atoms(contract);
    REQUIRE(atoms.size() == 6);
    for_each_env(atoms, [&](const GuardEnv& env) {
        CHECK(eval_guard(contract, env) == eval_dnf(dnf, env));
    });
}

TEST_CASE("render: literals, conjunctions, precedence parens") {
    CHECK(render_guard(GuardExpr::literal(neg("PR", {"i"}))) == "not PR(i)");
    CHECK(render_guard(parse_guard("a and b")) == "a and b");
    CHECK(render_guard(parse_guard("(a and b) or c")) == "(a and b) or c");
    CHECK(render_guard(parse_guard("a and (b or c)")) == "a and (b or c)");
}

TEST_CASE("property: parse/render round-trip") {
    Rng rng(20240901);
    for (int i = 0; i < 400; ++i) {
        GuardExpr e = random_expr(rng);
        CHECK(parse_guard(render_guard(e)) == e);
    }
}

TEST_CASE("property: DNF truth-table soundness") {
    Rng rng(7711);
    for (int i = 0; i < 200; ++i) {
        GuardExpr e = random_expr(rng, 3, 8);
        DnfForm dnf = to_dnf(e);
        for_each_env(collect_atoms(e), [&](const GuardEnv& env) {
            CHECK(eval_guard(e, env) == eval_dnf(dnf, env));
        });
    }
}

TEST_CASE("property: DnfForm invariants hold on random expressions") {
    Rng rng(4242);
    for (int i = 0; i < 200; ++i) {
        DnfForm dnf = to_dnf(random_expr(rng, 3, 6));
        for (const auto& clause : dnf.clauses) {
            for (const auto& l : clause)
                CHECK(clause.count(GuardLiteral{l.atom, !l.negated}) == 0);
            for (const auto& other : dnf.clauses) {
                if (&other == &clause || other.size() >= clause.size()) continue;
                CHECK(!std::includes(clause.begin(), clause.end(), other.begin(), other.end()));
            }
        }
    }
}

TEST_CASE("fuzz: parser never crashes on arbitrary bytes") {
    std::mt19937_64 rng(0xF00D);
    std::uniform_int_distribution<int> len(0, 40);
    std::uniform_int_distribution<int> byte(0, 255);
    const std::string chunks = "and or not ()/,ab_1 ";
    for (int i = 0; i < 5000; ++i) {
        std::string input;
        const int n = len(rng);
        for (int k = 0; k < n; ++k) {
            if (i % 2 == 0) input += chunks[static_cast<std::size_t>(byte(rng)) % chunks.size()];
            else input += static_cast<char>(byte(rng));
        }
        try {
            GuardExpr e = parse_guard(input);
            // whatever parsed must round-trip
            CHECK(parse_guard(render_guard(e)) == e);
        } catch (const ParseError&) {
            // fine: any string either parses or reports a position
        }
    }
}
