#pragma once

// Test-goal execution against a statechart, plus all-states/all-transitions
// coverage over the union of execution traces.
//
// A goal's literals form an ordered word. Execution starts at the initial
// state; a state with a single unguarded outgoing transition is stepped
// through automatically, otherwise the next pending literal picks the unique
// outgoing transition carrying it. The run passes when every literal is
// consumed, and is "completed" when the walk then rests on a final state.

#include "ucmbt/charts.hpp"
#include "ucmbt/contracts.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ucmbt {

enum class Verdict { Pass, Fail };

struct FailureReason {
    enum class Kind {
        NoEnabledTransition, // no outgoing guard matches the pending literal
        AmbiguousUnguarded,  // several unguarded successors (invalid chart)
        LeftoverLiterals,    // a final state was reached with literals pending
    };

    Kind kind;
    std::string state;
    std::optional<GuardLiteral> literal; // the pending literal, when relevant
    int leftover = 0;

    bool operator==(const FailureReason&) const = default;
};

struct GoalRun {
    std::string goal_id;
    Verdict verdict = Verdict::Fail;
    bool completed = false;
    std::vector<ChartTransition> trace;
    std::optional<FailureReason> failure;
};

struct CoverageReport {
    int states_total = 0;
    int states_visited = 0;
    int transitions_total = 0;
    int transitions_visited = 0;
    double state_coverage = 0.0;
    double transition_coverage = 0.0;
    std::vector<std::string> uncovered_states;
    std::vector<ChartTransition> uncovered_transitions;
};

/// The chart loops through unguarded transitions without consuming anything;
/// only a hand-built chart violating the determinism invariants can do this.
class UnguardedCycleError : public Error {
public:
    explicit UnguardedCycleError(const std::string& state)
        : Error("unguarded transition cycle detected at state '" + state + "'") {}
};

/// Run one goal from the initial state. Total on valid charts: every outcome
/// is a verdict, never an exception.
GoalRun execute_goal(const StateChart& chart, const TestGoal& goal);

/// Run each goal independently and union the traces into a coverage report.
std::pair<std::vector<GoalRun>, CoverageReport> execute_all(const StateChart& chart,
                                                            const std::vector<TestGoal>& goals);

const char* verdict_name(Verdict v);
const char* failure_kind_name(FailureReason::Kind k);

} // namespace ucmbt
