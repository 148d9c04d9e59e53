#pragma once

// Core data model: use cases with pre/post contracts, the guarded sequential
// use-case flow, and per-use-case guarded scenario graphs. Everything here is
// immutable after load; validation reports diagnostics instead of throwing.

#include "ucmbt/guard.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ucmbt {

struct ScenarioStep {
    std::string id;
    std::string label; // display/state name, unique per scenario

    bool operator==(const ScenarioStep&) const = default;
};

struct ScenarioEdge {
    std::string from;
    std::string to;
    std::optional<GuardLiteral> guard;

    bool operator==(const ScenarioEdge&) const = default;
};

/// Directed acyclic graph of scenario steps. Edge order is semantic: it
/// defines the nominal-first ordering of enumerated paths.
struct ScenarioGraph {
    std::vector<ScenarioStep> steps;
    std::vector<ScenarioEdge> edges;
    std::string entry;
    std::vector<std::string> finals;

    bool operator==(const ScenarioGraph&) const = default;

    const ScenarioStep* find_step(const std::string& id) const;
    bool is_final(const std::string& id) const;
};

struct UseCase {
    std::string id;
    std::string title;
    std::optional<GuardExpr> precondition;
    std::optional<GuardExpr> postcondition;
    ScenarioGraph scenario;

    bool operator==(const UseCase&) const = default;
};

struct FlowEdge {
    std::string from;
    std::string to;
    std::optional<GuardLiteral> guard;

    bool operator==(const FlowEdge&) const = default;
};

/// Sequential use-case flow: how the use cases track each other.
struct SystemFlow {
    std::vector<std::string> nodes; // use-case ids, declaration order
    std::vector<FlowEdge> edges;
    std::string entry;

    bool operator==(const SystemFlow&) const = default;
};

struct SystemModel {
    std::string name;
    std::vector<UseCase> usecases; // declaration order, ids unique
    SystemFlow flow;

    bool operator==(const SystemModel&) const = default;

    const UseCase* find_usecase(const std::string& id) const;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity;
    std::string code;    // stable machine code, E_* or W_*
    std::string path;    // offending element, e.g. "usecases.PR.scenario.edges[3]"
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// One line per diagnostic: "<severity> <code> <path>: <message>".
std::string diagnostic_to_string(const Diagnostic& d);

/// Check every structural invariant of the model. Returns no error-severity
/// diagnostics iff the model is valid; warnings flag anomalies that do not
/// block the pipeline (isolated finals, single-use guard atoms).
std::vector<Diagnostic> validate_model(const SystemModel& model);

/// Scenario-only subset of validate_model, with diagnostics rooted at
/// `path_prefix`.
std::vector<Diagnostic> validate_scenario(const ScenarioGraph& scenario,
                                          const std::string& path_prefix);

struct PathElement {
    std::string step;                  // step id
    std::optional<GuardLiteral> guard; // guard of the incoming edge

    bool operator==(const PathElement&) const = default;
};

/// One entry-to-final walk; the first element is the entry with no guard.
using ScenarioPath = std::vector<PathElement>;

/// Scenario acyclicity was violated at enumeration time (defensive; a
/// validated scenario cannot trigger this).
class CycleDetectedError : public Error {
public:
    explicit CycleDetectedError(const std::string& step)
        : Error("cycle detected through step '" + step + "'") {}
};

/// Every entry-to-final path exactly once, depth-first with edges taken in
/// declaration order. Deterministic: equal inputs give equal orderings.
std::vector<ScenarioPath> enumerate_paths(const ScenarioGraph& scenario);

} // namespace ucmbt
