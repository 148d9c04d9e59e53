#include "ucmbt/executor.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ucmbt {

const char* verdict_name(Verdict v) {
    return v == Verdict::Pass ? "PASS" : "FAIL";
}

const char* failure_kind_name(FailureReason::Kind k) {
    switch (k) {
        case FailureReason::Kind::NoEnabledTransition: return "NoEnabledTransition";
        case FailureReason::Kind::AmbiguousUnguarded:  return "AmbiguousUnguarded";
        case FailureReason::Kind::LeftoverLiterals:    return "LeftoverLiterals";
    }
    return "?";
}

GoalRun execute_goal(const StateChart& chart, const TestGoal& goal) {
    std::map<std::string, std::vector<const ChartTransition*>> outgoing;
    for (const auto& t : chart.transitions) outgoing[t.src].push_back(&t);
    std::set<std::string> finals(chart.finals.begin(), chart.finals.end());

    GoalRun run;
    run.goal_id = goal.id;

    std::string current = chart.initial;
    std::size_t next_literal = 0;
    std::size_t auto_steps = 0;

    for (;;) {
        const auto it = outgoing.find(current);
        const bool is_sink = it == outgoing.end() || it->second.empty();

        if (is_sink) {
            if (next_literal < goal.literals.size()) {
                run.verdict = Verdict::Fail;
                run.failure = FailureReason{
                    FailureReason::Kind::LeftoverLiterals, current,
                    goal.literals[next_literal],
                    static_cast<int>(goal.literals.size() - next_literal)};
            } else {
                run.verdict = Verdict::Pass;
            }
            break;
        }

        const auto& ts = it->second;
        const auto unguarded_count =
            std::count_if(ts.begin(), ts.end(),
                          [](const ChartTransition* t) { return !t->guard; });

        if (ts.size() == 1 && unguarded_count == 1) {
            // Single unguarded successor: step through it automatically.
            if (++auto_steps > chart.states.size()) throw UnguardedCycleError(current);
            run.trace.push_back(*ts.front());
            current = ts.front()->dst;
            continue;
        }
        if (unguarded_count > 0) {
            run.verdict = Verdict::Fail;
            run.failure = FailureReason{FailureReason::Kind::AmbiguousUnguarded, current,
                                        std::nullopt, 0};
            break;
        }

        if (next_literal == goal.literals.size()) {
            // All literals consumed; the walk rests here.
            run.verdict = Verdict::Pass;
            break;
        }

        const GuardLiteral& pending = goal.literals[next_literal];
        const ChartTransition* match = nullptr;
        for (const ChartTransition* t : ts) {
            if (t->guard && *t->guard == pending) {
                if (match)
                    throw DeterminismViolationError(current, "guard '" + pending.str() +
                                                                 "' appears twice");
                match = t;
            }
        }
        if (!match) {
            run.verdict = Verdict::Fail;
            run.failure = FailureReason{FailureReason::Kind::NoEnabledTransition, current,
                                        pending, 0};
            break;
        }
        run.trace.push_back(*match);
        current = match->dst;
        ++next_literal;
        auto_steps = 0;
    }

    run.completed = run.verdict == Verdict::Pass && finals.count(current) > 0;
    return run;
}

std::pair<std::vector<GoalRun>, CoverageReport> execute_all(
    const StateChart& chart, const std::vector<TestGoal>& goals) {
    std::vector<GoalRun> runs;
    runs.reserve(goals.size());

    std::set<std::string> visited_states;
    std::set<ChartTransition> visited_transitions;
    for (const auto& goal : goals) {
        GoalRun run = execute_goal(chart, goal);
        visited_states.insert(chart.initial);
        for (const auto& t : run.trace) {
            visited_states.insert(t.src);
            visited_states.insert(t.dst);
            visited_transitions.insert(t);
        }
        runs.push_back(std::move(run));
    }

    CoverageReport cov;
    cov.states_total = static_cast<int>(chart.states.size());
    cov.transitions_total = static_cast<int>(chart.transitions.size());
    cov.states_visited = static_cast<int>(visited_states.size());
    cov.transitions_visited = static_cast<int>(visited_transitions.size());
    cov.state_coverage =
        cov.states_total == 0 ? 0.0 : static_cast<double>(cov.states_visited) / cov.states_total;
    cov.transition_coverage = cov.transitions_total == 0
                                  ? 0.0
                                  : static_cast<double>(cov.transitions_visited) /
                                        cov.transitions_total;
    for (const auto& s : chart.states)
        if (!visited_states.count(s)) cov.uncovered_states.push_back(s);
    for (const auto& t : chart.transitions)
        if (!visited_transitions.count(t)) cov.uncovered_transitions.push_back(t);
    return {std::move(runs), std::move(cov)};
}

} // namespace ucmbt
