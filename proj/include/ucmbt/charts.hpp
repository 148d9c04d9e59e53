#pragma once

// Statechart synthesis: sequence diagrams from scenario paths, the 5-column
// transition table built from their combination, the statechart itself, and
// cross-diagram inconsistency detection.

#include "ucmbt/contracts.hpp"
#include "ucmbt/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ucmbt {

/// One (previous, guard, state) record of a contractual sequence diagram.
/// All names are step labels, not ids.
struct SeqNode {
    std::optional<std::string> previous; // none on the first node of a diagram
    std::optional<GuardLiteral> guard;
    std::string state;

    auto operator<=>(const SeqNode&) const = default;
};

struct SequenceDiagram {
    std::string usecase_id;
    int path_index = 1; // 1-based, path order
    std::vector<SeqNode> nodes;

    bool operator==(const SequenceDiagram&) const = default;
};

/// One row of the statechart transition table: main successor in columns
/// 2-3, alternative successor in columns 4-5.
struct TransitionRow {
    std::string state;
    std::optional<GuardLiteral> guard;
    std::string next;
    std::optional<std::string> alt_state;
    std::optional<GuardLiteral> alt_guard;

    bool operator==(const TransitionRow&) const = default;
};

struct ChartTransition {
    std::string src;
    std::optional<GuardLiteral> guard;
    std::string dst;

    auto operator<=>(const ChartTransition&) const = default;
};

/// Guard-labeled finite state machine. Deterministic by construction: a
/// state has either one unguarded outgoing transition or only guarded ones
/// with pairwise-distinct literals.
struct StateChart {
    std::vector<std::string> states; // first-appearance order
    std::string initial;
    std::vector<std::string> finals;
    std::vector<ChartTransition> transitions;

    bool operator==(const StateChart&) const = default;
};

enum class ConflictKind {
    Nondeterminism,  // one (state, guard) pair leads to two different states
    MixedUnguarded,  // a state combines an unguarded successor with others
};

struct Conflict {
    ConflictKind kind;
    std::string state;
    std::optional<GuardLiteral> guard; // the ambiguous guard, for Nondeterminism
    std::vector<std::string> next_states;

    std::string describe() const;
};

/// Two sequence diagrams disagree on a successor; the message names the
/// offending (state, guard) pair.
class ConflictError : public Error {
public:
    explicit ConflictError(std::vector<Conflict> conflicts);
    const std::vector<Conflict>& conflicts() const noexcept { return conflicts_; }

private:
    std::vector<Conflict> conflicts_;
};

/// Strict table mode met a third successor for one state; the paper-shaped
/// 5-column row cannot hold it.
class TableOverflowError : public Error {
public:
    explicit TableOverflowError(const std::string& state)
        : Error("state '" + state + "' has more than two successors; "
                "row spilling is disabled in strict mode"),
          state_(state) {}
    const std::string& state() const noexcept { return state_; }

private:
    std::string state_;
};

class NoUniqueInitialError : public Error {
public:
    explicit NoUniqueInitialError(std::vector<std::string> candidates);
    const std::vector<std::string>& candidates() const noexcept { return candidates_; }

private:
    std::vector<std::string> candidates_;
};

class DeterminismViolationError : public Error {
public:
    explicit DeterminismViolationError(const std::string& state, const std::string& detail)
        : Error("nondeterministic transitions out of state '" + state + "': " + detail),
          state_(state) {}
    const std::string& state() const noexcept { return state_; }

private:
    std::string state_;
};

class UnreachableStateError : public Error {
public:
    explicit UnreachableStateError(const std::string& state)
        : Error("state '" + state + "' is not reachable from the initial state") {}
};

/// One diagram per enumerated path, same order; the k-th node records the
/// k-th step label, its predecessor's label, and the incoming edge's guard.
std::vector<SequenceDiagram> derive_sequence_diagrams(const UseCase& uc);

/// Combine the diagrams into the 5-column table: concatenate all nodes,
/// stable-order by first appearance, deduplicate identical triples, then
/// assign the first-seen successor of each state to the main columns and the
/// second to the alt columns. Further successors spill into extra rows
/// unless `strict_pairs` is set. Throws ConflictError on any inconsistency.
std::vector<TransitionRow> generate_transition_table(
    const std::vector<SequenceDiagram>& diagrams, bool strict_pairs = false);

/// Build the chart from a conflict-free table. The initial state is the
/// unique state without incoming transitions; finals are the states without
/// outgoing ones.
StateChart build_state_chart(const std::vector<TransitionRow>& table);

/// Every inconsistency generate_transition_table would reject, as data:
/// empty iff table generation succeeds on the same diagrams.
std::vector<Conflict> detect_conflicts(const std::vector<SequenceDiagram>& diagrams);

/// CSV with header "state,guard,next,alt_state,alt_guard"; empty cells for
/// absent options, UTF-8, LF line endings.
std::string table_to_csv(const std::vector<TransitionRow>& table);

/// Graphviz digraph, one edge per transition, guard literal as edge label.
std::string chart_to_dot(const StateChart& chart, const std::string& name);

/// Graphviz digraph of one diagram's state sequence.
std::string diagram_to_dot(const SequenceDiagram& diagram);

} // namespace ucmbt
