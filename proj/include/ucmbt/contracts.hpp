#pragma once

// Contract synthesis: the system-level sequential contract, per-scenario
// execution contracts, and test-goal extraction.
//
// Both contracts use the same fold: along a linear chain the edge guards are
// conjoined (unguarded edges contribute nothing); at a branch the per-edge
// sub-expressions are disjoined, each conjoined with its branch guard. The
// resulting expression is logically equivalent to the OR of all entry-to-final
// path conjunctions.

#include "ucmbt/model.hpp"

#include <string>
#include <vector>

namespace ucmbt {

struct ExecutionContract {
    std::string usecase_id;
    std::optional<GuardExpr> pre;  // attached, not conjoined into body
    std::optional<GuardExpr> post;
    GuardExpr body;
};

/// One entry-to-final path's guards as an ordered conjunction.
struct TestGoal {
    std::string id; // TG_<usecase>_<n>, n from 1 in path order
    std::vector<GuardLiteral> literals;
    ScenarioPath path;

    bool operator==(const TestGoal&) const = default;
};

/// There is nothing to conjoin: the walked graph carries no guards at all.
class EmptyFlowError : public Error {
public:
    explicit EmptyFlowError(const std::string& what_arg) : Error(what_arg) {}
};

/// Fold of the system flow from its entry. Throws EmptyFlowError when the
/// flow has no guarded edges.
GuardExpr system_contract(const SystemModel& model);

/// Fold of the use case's scenario graph. Throws EmptyFlowError when the
/// scenario carries no guards (e.g. a placeholder one-step scenario).
ExecutionContract scenario_contract(const UseCase& uc);

/// One goal per enumerated path, in path order; literals are the guards on
/// the path's edges, unguarded edges skipped.
std::vector<TestGoal> extract_test_goals(const UseCase& uc);

/// Plain-text rendering: "TG_PR_1 = [PR_Request and Validated_User(U)]".
std::string goal_to_text(const TestGoal& goal);

} // namespace ucmbt
