#include "ucmbt/contracts.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace ucmbt {

namespace {

struct GuardedEdge {
    std::string to;
    std::optional<GuardLiteral> guard;
};

// Memoized fold over a DAG. nullopt means "trivially true": no guards were
// met on any walk from the node. Shared suffixes are computed once, which
// factors them in the resulting expression; equivalence to the OR of path
// conjunctions is what the contract guarantees, not a specific shape.
class DagFolder {
public:
    explicit DagFolder(std::map<std::string, std::vector<GuardedEdge>> adjacency)
        : adjacency_(std::move(adjacency)) {}

    std::optional<GuardExpr> fold(const std::string& node) {
        auto memo = cache_.find(node);
        if (memo != cache_.end()) return memo->second;

        std::optional<GuardExpr> result;
        const auto it = adjacency_.find(node);
        if (it != adjacency_.end() && !it->second.empty()) {
            std::vector<std::optional<GuardExpr>> branches;
            for (const auto& edge : it->second) {
                std::optional<GuardExpr> sub = fold(edge.to);
                if (edge.guard) {
                    GuardExpr lit = GuardExpr::literal(*edge.guard);
                    branches.push_back(sub ? GuardExpr::conj({std::move(lit), std::move(*sub)})
                                           : std::move(lit));
                } else {
                    branches.push_back(std::move(sub));
                }
            }
            bool any_trivial = std::any_of(branches.begin(), branches.end(),
                                           [](const auto& b) { return !b.has_value(); });
            if (branches.size() == 1) {
                result = std::move(branches.front());
            } else if (any_trivial) {
                // An unguarded alternative is always satisfiable, so the
                // disjunction collapses to "true".
                result = std::nullopt;
            } else {
                std::vector<GuardExpr> ops;
                ops.reserve(branches.size());
                for (auto& b : branches) ops.push_back(std::move(*b));
                result = GuardExpr::disj(std::move(ops));
            }
        }
        cache_[node] = result;
        return result;
    }

private:
    std::map<std::string, std::vector<GuardedEdge>> adjacency_;
    std::map<std::string, std::optional<GuardExpr>> cache_;
};

} // namespace

GuardExpr system_contract(const SystemModel& model) {
    std::map<std::string, std::vector<GuardedEdge>> adjacency;
    for (const auto& e : model.flow.edges)
        adjacency[e.from].push_back(GuardedEdge{e.to, e.guard});

    DagFolder folder(std::move(adjacency));
    auto result = folder.fold(model.flow.entry);
    if (!result)
        throw EmptyFlowError("system flow has no guarded edges; nothing to conjoin");
    return std::move(*result);
}

ExecutionContract scenario_contract(const UseCase& uc) {
    std::map<std::string, std::vector<GuardedEdge>> adjacency;
    for (const auto& e : uc.scenario.edges)
        adjacency[e.from].push_back(GuardedEdge{e.to, e.guard});

    DagFolder folder(std::move(adjacency));
    auto body = folder.fold(uc.scenario.entry);
    if (!body)
        throw EmptyFlowError("scenario of use case '" + uc.id +
                             "' has no guarded edges; nothing to conjoin");
    return ExecutionContract{uc.id, uc.precondition, uc.postcondition, std::move(*body)};
}

std::vector<TestGoal> extract_test_goals(const UseCase& uc) {
    std::vector<TestGoal> goals;
    auto paths = enumerate_paths(uc.scenario);
    goals.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        TestGoal goal;
        goal.id = "TG_" + uc.id + "_" + std::to_string(i + 1);
        for (const auto& elem : paths[i])
            if (elem.guard) goal.literals.push_back(*elem.guard);
        goal.path = std::move(paths[i]);
        goals.push_back(std::move(goal));
    }
    return goals;
}

std::string goal_to_text(const TestGoal& goal) {
    std::string out = goal.id + " = [";
    for (std::size_t i = 0; i < goal.literals.size(); ++i) {
        if (i > 0) out += " and ";
        out += goal.literals[i].str();
    }
    out += "]";
    return out;
}

} // namespace ucmbt
