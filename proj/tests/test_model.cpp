#include "ucmbt/model.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace ucmbt;
using namespace ucmbt::testing;

namespace {

ScenarioGraph linear_scenario() {
    ScenarioGraph g;
    g.steps = {{"a", "A"}, {"b", "B"}, {"c", "C"}};
    g.edges = {{"a", "b", lit("g1")}, {"b", "c", lit("g2")}};
    g.entry = "a";
    g.finals = {"c"};
    return g;
}

ScenarioGraph diamond_scenario() {
    ScenarioGraph g;
    g.steps = {{"entry", "Entry"}, {"left", "Left"}, {"right", "Right"}, {"final", "Final"}};
    g.edges = {{"entry", "left", lit("go_left")},
               {"entry", "right", neg("go_left")},
               {"left", "final", std::nullopt},
               {"right", "final", std::nullopt}};
    g.entry = "entry";
    g.finals = {"final"};
    return g;
}

std::vector<std::string> codes_of(const std::vector<Diagnostic>& diags, Severity severity) {
    std::vector<std::string> out;
    for (const auto& d : diags)
        if (d.severity == severity) out.push_back(d.code);
    return out;
}

} // namespace

TEST_CASE("validate: bundled model has no errors") {
    SystemModel model = load_fixture();
    auto diags = validate_model(model);
    for (const auto& d : diags) {
        INFO(diagnostic_to_string(d));
        CHECK(d.severity != Severity::Error);
    }
}

TEST_CASE("validate: dangling edge") {
    ScenarioGraph g = linear_scenario();
    g.edges.push_back({"b", "ghost", std::nullopt});
    auto codes = codes_of(validate_scenario(g, "scenario"), Severity::Error);
    CHECK(std::count(codes.begin(), codes.end(), "E_DANGLING_EDGE") == 1);
}

TEST_CASE("validate: ambiguous branch guards") {
    ScenarioGraph g = diamond_scenario();
    g.edges[1].guard = lit("go_left"); // same literal on both branch edges
    auto codes = codes_of(validate_scenario(g, "scenario"), Severity::Error);
    CHECK(std::count(codes.begin(), codes.end(), "E_AMBIGUOUS_BRANCH") == 1);
}

TEST_CASE("validate: unguarded branch edge") {
    ScenarioGraph g = diamond_scenario();
    g.edges[0].guard = std::nullopt;
    auto codes = codes_of(validate_scenario(g, "scenario"), Severity::Error);
    CHECK(std::count(codes.begin(), codes.end(), "E_UNGUARDED_BRANCH") == 1);
}

TEST_CASE("validate: cycles, duplicate ids, duplicate labels") {
    ScenarioGraph cyclic = linear_scenario();
    cyclic.edges.push_back({"c", "a", std::nullopt});
    auto codes = codes_of(validate_scenario(cyclic, "s"), Severity::Error);
    CHECK(std::count(codes.begin(), codes.end(), "E_CYCLE") >= 1);

    ScenarioGraph dup = linear_scenario();
    dup.steps.push_back({"a", "A2"});
    codes = codes_of(validate_scenario(dup, "s"), Severity::Error);
    CHECK(std::count(codes.begin(), codes.end(), "E_DUPLICATE_ID") == 1);

    ScenarioGraph dup_label = linear_scenario();
    dup_label.steps[1].label = "A"; // same label as step a
    codes = codes_of(validate_scenario(dup_label, "s"), Severity::Error);
    CHECK(std::count(codes.begin(), codes.end(), "E_DUPLICATE_LABEL") == 1);
}

TEST_CASE("validate: entry/final discipline") {
    ScenarioGraph g = linear_scenario();
    g.entry = "b"; // a -> b gives the entry an incoming edge; a unreachable
    auto codes = codes_of(validate_scenario(g, "s"), Severity::Error);
    CHECK(std::count(codes.begin(), codes.end(), "E_ENTRY_HAS_INCOMING") == 1);
    CHECK(std::count(codes.begin(), codes.end(), "E_UNREACHABLE_STEP") == 1);

    ScenarioGraph out_final = linear_scenario();
    out_final.finals = {"b"};
    codes = codes_of(validate_scenario(out_final, "s"), Severity::Error);
    CHECK(std::count(codes.begin(), codes.end(), "E_FINAL_HAS_OUTGOING") == 1);
    // c no longer reaches a declared final
    CHECK(std::count(codes.begin(), codes.end(), "E_DEAD_END") == 1);
}

TEST_CASE("validate: isolated final is a warning, not an error") {
    ScenarioGraph g = linear_scenario();
    g.steps.push_back({"spare", "Spare"});
    g.finals.push_back("spare");
    auto diags = validate_scenario(g, "s");
    CHECK(codes_of(diags, Severity::Error).empty());
    auto warnings = codes_of(diags, Severity::Warning);
    CHECK(std::count(warnings.begin(), warnings.end(), "W_UNREACHABLE_FINAL") == 1);
}

TEST_CASE("validate: single-use atom warning") {
    SystemModel model;
    model.name = "m";
    UseCase uc;
    uc.id = "UC0";
    uc.title = "t";
    uc.scenario = linear_scenario(); // atoms g1, g2, each used once
    model.usecases.push_back(uc);
    model.flow.nodes = {"UC0"};
    model.flow.entry = "UC0";
    auto warnings = codes_of(validate_model(model), Severity::Warning);
    CHECK(std::count(warnings.begin(), warnings.end(), "W_ATOM_USED_ONCE") == 2);
}

TEST_CASE("enumerate_paths: bundled PR scenario has the three known paths") {
    SystemModel model = load_fixture();
    const UseCase* pr = model.find_usecase("PR");
    REQUIRE(pr != nullptr);

    auto paths = enumerate_paths(pr->scenario);
    REQUIRE(paths.size() == 3);

    // nominal, item-not-exist, user-not-validated — in file edge order
    CHECK(paths[0].size() == 8);
    CHECK(paths[0].front().step == "Purchase_Requisition_Request");
    CHECK(paths[0].back().step == "End_PR_Request");
    CHECK(paths[1].size() == 9);
    CHECK(paths[1][6].step == "Add_Item_To_System");
    CHECK(paths[2].size() == 4);
    CHECK(paths[2][2].step == "Cancel_PR_Request");

    // first element is the entry, without an incoming guard
    for (const auto& p : paths) {
        CHECK(p.front().step == pr->scenario.entry);
        CHECK(!p.front().guard.has_value());
    }
}

TEST_CASE("enumerate_paths: linear and diamond") {
    CHECK(enumerate_paths(linear_scenario()).size() == 1);
    CHECK(enumerate_paths(diamond_scenario()).size() == 2);
}

TEST_CASE("enumerate_paths: defensive cycle detection") {
    ScenarioGraph g = linear_scenario();
    g.edges.push_back({"c", "a", std::nullopt});
    CHECK_THROWS_AS(enumerate_paths(g), CycleDetectedError);
}

TEST_CASE("property: path count matches the brute-force oracle") {
    Rng rng(1295);
    for (int i = 0; i < 150; ++i) {
        ScenarioGraph g = random_scenario(rng);
        REQUIRE(codes_of(validate_scenario(g, "gen"), Severity::Error).empty());
        CHECK(enumerate_paths(g).size() == brute_force_paths(g).size());
    }
}

TEST_CASE("property: enumeration is deterministic and covers every edge") {
    Rng rng(60309);
    for (int i = 0; i < 100; ++i) {
        ScenarioGraph g = random_scenario(rng);
        auto first = enumerate_paths(g);
        auto second = enumerate_paths(g);
        CHECK(first == second);

        // every edge of a valid scenario lies on at least one path
        std::set<std::pair<std::string, std::string>> walked;
        for (const auto& p : first)
            for (std::size_t k = 1; k < p.size(); ++k)
                walked.insert({p[k - 1].step, p[k].step});
        for (const auto& e : g.edges)
            CHECK(walked.count({e.from, e.to}) == 1);
    }
}
