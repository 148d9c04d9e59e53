#include "ucmbt/charts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ucmbt {

std::string Conflict::describe() const {
    std::ostringstream out;
    if (kind == ConflictKind::Nondeterminism) {
        out << "conflicting successors from state '" << state << "' under guard '"
            << (guard ? guard->str() : "<none>") << "':";
    } else {
        out << "state '" << state << "' mixes an unguarded successor with others:";
    }
    for (const auto& s : next_states) out << " " << s;
    return out.str();
}

ConflictError::ConflictError(std::vector<Conflict> conflicts)
    : Error([&conflicts] {
          std::string msg = "sequence diagrams are inconsistent: ";
          for (std::size_t i = 0; i < conflicts.size(); ++i) {
              if (i > 0) msg += "; ";
              msg += conflicts[i].describe();
          }
          return msg;
      }()),
      conflicts_(std::move(conflicts)) {}

NoUniqueInitialError::NoUniqueInitialError(std::vector<std::string> candidates)
    : Error([&candidates] {
          if (candidates.empty())
              return std::string("no initial state: every state has incoming transitions");
          std::string msg = "no unique initial state; candidates:";
          for (const auto& c : candidates) msg += " " + c;
          return msg;
      }()),
      candidates_(std::move(candidates)) {}

std::vector<SequenceDiagram> derive_sequence_diagrams(const UseCase& uc) {
    std::map<std::string, std::string> label_of;
    for (const auto& step : uc.scenario.steps) label_of[step.id] = step.label;

    std::vector<SequenceDiagram> diagrams;
    auto paths = enumerate_paths(uc.scenario);
    diagrams.reserve(paths.size());
    for (std::size_t p = 0; p < paths.size(); ++p) {
        SequenceDiagram d;
        d.usecase_id = uc.id;
        d.path_index = static_cast<int>(p) + 1;
        for (std::size_t k = 0; k < paths[p].size(); ++k) {
            SeqNode node;
            node.state = label_of[paths[p][k].step];
            node.guard = paths[p][k].guard;
            if (k > 0) node.previous = label_of[paths[p][k - 1].step];
            d.nodes.push_back(std::move(node));
        }
        diagrams.push_back(std::move(d));
    }
    return diagrams;
}

namespace {

// Concatenate all diagrams' nodes in diagram order, then drop duplicate
// (previous, guard, state) triples, keeping first appearances. This is the
// SortSeqNodes step: stable order by (first diagram of appearance, position).
std::vector<SeqNode> sorted_unique_nodes(const std::vector<SequenceDiagram>& diagrams) {
    std::vector<SeqNode> nodes;
    std::set<SeqNode> seen;
    for (const auto& d : diagrams)
        for (const auto& n : d.nodes)
            if (seen.insert(n).second) nodes.push_back(n);
    return nodes;
}

std::vector<Conflict> find_conflicts(const std::vector<SeqNode>& nodes) {
    std::vector<Conflict> out;

    // (previous, guard) -> successor states, in appearance order.
    std::vector<std::pair<std::pair<std::string, std::optional<GuardLiteral>>,
                          std::vector<std::string>>> by_trigger;
    std::map<std::string, std::vector<const SeqNode*>> by_state;
    for (const auto& n : nodes) {
        if (!n.previous) continue;
        auto key = std::make_pair(*n.previous, n.guard);
        auto it = std::find_if(by_trigger.begin(), by_trigger.end(),
                               [&](const auto& entry) { return entry.first == key; });
        if (it == by_trigger.end())
            by_trigger.push_back({key, {n.state}});
        else
            it->second.push_back(n.state);
        by_state[*n.previous].push_back(&n);
    }

    for (const auto& [key, states] : by_trigger) {
        if (states.size() > 1)
            out.push_back(Conflict{ConflictKind::Nondeterminism, key.first, key.second, states});
    }

    for (const auto& [state, succs] : by_state) {
        bool any_unguarded = std::any_of(succs.begin(), succs.end(),
                                         [](const SeqNode* n) { return !n->guard; });
        if (any_unguarded && succs.size() > 1) {
            std::vector<std::string> states;
            for (const SeqNode* n : succs) states.push_back(n->state);
            out.push_back(Conflict{ConflictKind::MixedUnguarded, state, std::nullopt, states});
        }
    }
    return out;
}

} // namespace

std::vector<Conflict> detect_conflicts(const std::vector<SequenceDiagram>& diagrams) {
    return find_conflicts(sorted_unique_nodes(diagrams));
}

std::vector<TransitionRow> generate_transition_table(
    const std::vector<SequenceDiagram>& diagrams, bool strict_pairs) {
    std::vector<SeqNode> nodes = sorted_unique_nodes(diagrams);

    auto conflicts = find_conflicts(nodes);
    if (!conflicts.empty()) throw ConflictError(std::move(conflicts));

    // First successor of a state claims the main columns, the second the alt
    // columns; any further successor spills into a fresh row for the same
    // state at its encounter position.
    std::vector<TransitionRow> rows;
    std::map<std::string, std::size_t> main_row_of;
    for (const auto& n : nodes) {
        if (!n.previous) continue; // the paper's "If SortSeqNode[Previous] = null" skip
        auto it = main_row_of.find(*n.previous);
        if (it == main_row_of.end()) {
            main_row_of[*n.previous] = rows.size();
            rows.push_back(TransitionRow{*n.previous, n.guard, n.state, std::nullopt,
                                         std::nullopt});
        } else if (!rows[it->second].alt_state) {
            rows[it->second].alt_state = n.state;
            rows[it->second].alt_guard = n.guard;
        } else {
            if (strict_pairs) throw TableOverflowError(*n.previous);
            rows.push_back(TransitionRow{*n.previous, n.guard, n.state, std::nullopt,
                                         std::nullopt});
        }
    }
    return rows;
}

StateChart build_state_chart(const std::vector<TransitionRow>& table) {
    StateChart chart;
    std::set<std::string> seen_states;
    auto add_state = [&](const std::string& s) {
        if (seen_states.insert(s).second) chart.states.push_back(s);
    };

    for (const auto& row : table) {
        if (row.alt_state.has_value() != row.alt_guard.has_value())
            throw Error("malformed transition row for state '" + row.state +
                        "': alt_state and alt_guard must be present together");
        add_state(row.state);
        add_state(row.next);
        chart.transitions.push_back(ChartTransition{row.state, row.guard, row.next});
        if (row.alt_state) {
            add_state(*row.alt_state);
            chart.transitions.push_back(ChartTransition{row.state, row.alt_guard,
                                                        *row.alt_state});
        }
    }

    // Determinism: per state either one unguarded successor or distinct
    // guarded ones.
    std::map<std::string, std::vector<const ChartTransition*>> outgoing;
    for (const auto& t : chart.transitions) outgoing[t.src].push_back(&t);
    for (const auto& [state, ts] : outgoing) {
        std::set<GuardLiteral> literals;
        int unguarded = 0;
        for (const ChartTransition* t : ts) {
            if (!t->guard) {
                ++unguarded;
            } else if (!literals.insert(*t->guard).second) {
                throw DeterminismViolationError(state,
                                                "guard '" + t->guard->str() + "' appears twice");
            }
        }
        if (unguarded > 0 && ts.size() > 1)
            throw DeterminismViolationError(
                state, "an unguarded transition coexists with other transitions");
    }

    std::set<std::string> has_incoming;
    std::set<std::string> has_outgoing;
    for (const auto& t : chart.transitions) {
        has_incoming.insert(t.dst);
        has_outgoing.insert(t.src);
    }

    std::vector<std::string> initial_candidates;
    for (const auto& s : chart.states)
        if (!has_incoming.count(s)) initial_candidates.push_back(s);
    if (initial_candidates.size() != 1) throw NoUniqueInitialError(std::move(initial_candidates));
    chart.initial = initial_candidates.front();

    for (const auto& s : chart.states)
        if (!has_outgoing.count(s)) chart.finals.push_back(s);

    // Reachability from the initial state.
    std::set<std::string> reached{chart.initial};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& t : chart.transitions)
            if (reached.count(t.src) && reached.insert(t.dst).second) grew = true;
    }
    for (const auto& s : chart.states)
        if (!reached.count(s)) throw UnreachableStateError(s);

    return chart;
}

namespace {

std::string csv_cell(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string table_to_csv(const std::vector<TransitionRow>& table) {
    std::string out = "state,guard,next,alt_state,alt_guard\n";
    for (const auto& row : table) {
        out += csv_cell(row.state);
        out += ',';
        out += csv_cell(row.guard ? row.guard->str() : "");
        out += ',';
        out += csv_cell(row.next);
        out += ',';
        out += csv_cell(row.alt_state.value_or(""));
        out += ',';
        out += csv_cell(row.alt_guard ? row.alt_guard->str() : "");
        out += '\n';
    }
    return out;
}

std::string chart_to_dot(const StateChart& chart, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << dot_quote(name) << " {\n";
    out << "  rankdir=LR;\n";
    out << "  __start [shape=point, label=\"\"];\n";
    for (const auto& s : chart.states) {
        bool is_final = std::find(chart.finals.begin(), chart.finals.end(), s) !=
                        chart.finals.end();
        out << "  " << dot_quote(s) << " [shape=" << (is_final ? "doublecircle" : "box") << "];\n";
    }
    out << "  __start -> " << dot_quote(chart.initial) << ";\n";
    for (const auto& t : chart.transitions) {
        out << "  " << dot_quote(t.src) << " -> " << dot_quote(t.dst);
        if (t.guard) out << " [label=" << dot_quote(t.guard->str()) << "]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string diagram_to_dot(const SequenceDiagram& diagram) {
    std::ostringstream out;
    out << "digraph " << dot_quote("seq_" + diagram.usecase_id + "_" +
                                   std::to_string(diagram.path_index))
        << " {\n";
    out << "  rankdir=LR;\n";
    for (const auto& n : diagram.nodes) out << "  " << dot_quote(n.state) << " [shape=box];\n";
    for (const auto& n : diagram.nodes) {
        if (!n.previous) continue;
        out << "  " << dot_quote(*n.previous) << " -> " << dot_quote(n.state);
        if (n.guard) out << " [label=" << dot_quote(n.guard->str()) << "]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace ucmbt
