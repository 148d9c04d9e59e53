#include "ucmbt/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ucmbt {

const ScenarioStep* ScenarioGraph::find_step(const std::string& id) const {
    for (const auto& s : steps)
        if (s.id == id) return &s;
    return nullptr;
}

bool ScenarioGraph::is_final(const std::string& id) const {
    return std::find(finals.begin(), finals.end(), id) != finals.end();
}

const UseCase* SystemModel::find_usecase(const std::string& id) const {
    for (const auto& uc : usecases)
        if (uc.id == id) return &uc;
    return nullptr;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string diagnostic_to_string(const Diagnostic& d) {
    std::string out = d.severity == Severity::Error ? "error " : "warning ";
    out += d.code;
    out += ' ';
    out += d.path;
    out += ": ";
    out += d.message;
    return out;
}

namespace {

void emit(std::vector<Diagnostic>& out, Severity sev, std::string code, std::string path,
          std::string message) {
    out.push_back(Diagnostic{sev, std::move(code), std::move(path), std::move(message)});
}

// Adjacency as edge indices so declaration order is preserved everywhere.
std::map<std::string, std::vector<std::size_t>> out_edges(const ScenarioGraph& g) {
    std::map<std::string, std::vector<std::size_t>> adj;
    for (std::size_t i = 0; i < g.edges.size(); ++i) adj[g.edges[i].from].push_back(i);
    return adj;
}

// DFS cycle check over the subgraph of declared steps. Returns a step on a
// cycle, if any.
std::optional<std::string> find_cycle(const ScenarioGraph& g) {
    std::map<std::string, std::vector<std::string>> adj;
    std::set<std::string> known;
    for (const auto& s : g.steps) known.insert(s.id);
    for (const auto& e : g.edges)
        if (known.count(e.from) && known.count(e.to)) adj[e.from].push_back(e.to);

    enum class Color { White, Grey, Black };
    std::map<std::string, Color> color;
    for (const auto& s : g.steps) color[s.id] = Color::White;

    // Iterative DFS; grey = on the current stack.
    for (const auto& s : g.steps) {
        if (color[s.id] != Color::White) continue;
        std::vector<std::pair<std::string, std::size_t>> stack{{s.id, 0}};
        color[s.id] = Color::Grey;
        while (!stack.empty()) {
            auto& [node, idx] = stack.back();
            auto& next = adj[node];
            if (idx < next.size()) {
                const std::string& succ = next[idx++];
                if (color[succ] == Color::Grey) return succ;
                if (color[succ] == Color::White) {
                    color[succ] = Color::Grey;
                    stack.emplace_back(succ, 0);
                }
            } else {
                color[node] = Color::Black;
                stack.pop_back();
            }
        }
    }
    return std::nullopt;
}

std::set<std::string> reachable_from(const ScenarioGraph& g, const std::string& start) {
    std::set<std::string> known;
    for (const auto& s : g.steps) known.insert(s.id);
    std::set<std::string> seen;
    if (!known.count(start)) return seen;
    std::vector<std::string> work{start};
    seen.insert(start);
    while (!work.empty()) {
        std::string cur = work.back();
        work.pop_back();
        for (const auto& e : g.edges) {
            if (e.from != cur || !known.count(e.to)) continue;
            if (seen.insert(e.to).second) work.push_back(e.to);
        }
    }
    return seen;
}

} // namespace

std::vector<Diagnostic> validate_scenario(const ScenarioGraph& g, const std::string& prefix) {
    std::vector<Diagnostic> out;

    if (g.steps.empty()) {
        emit(out, Severity::Error, "E_EMPTY_SCENARIO", prefix, "scenario has no steps");
        return out;
    }

    std::set<std::string> ids;
    std::set<std::string> labels;
    for (const auto& step : g.steps) {
        std::string path = prefix + ".steps." + (step.id.empty() ? "<empty>" : step.id);
        if (!is_identifier(step.id))
            emit(out, Severity::Error, "E_BAD_IDENTIFIER", path,
                 "step id '" + step.id + "' is not a valid identifier");
        if (step.label.empty())
            emit(out, Severity::Error, "E_EMPTY_LABEL", path, "step label must be non-empty");
        if (!ids.insert(step.id).second)
            emit(out, Severity::Error, "E_DUPLICATE_ID", path,
                 "duplicate step id '" + step.id + "'");
        if (!step.label.empty() && !labels.insert(step.label).second)
            emit(out, Severity::Error, "E_DUPLICATE_LABEL", path,
                 "duplicate step label '" + step.label + "'");
    }

    if (!ids.count(g.entry))
        emit(out, Severity::Error, "E_UNDECLARED_ENTRY", prefix + ".entry",
             "entry step '" + g.entry + "' is not declared");
    if (g.finals.empty())
        emit(out, Severity::Error, "E_NO_FINALS", prefix + ".finals",
             "scenario declares no final steps");
    for (const auto& f : g.finals)
        if (!ids.count(f))
            emit(out, Severity::Error, "E_UNDECLARED_FINAL", prefix + ".finals",
                 "final step '" + f + "' is not declared");

    bool dangling = false;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        std::string path = prefix + ".edges[" + std::to_string(i) + "]";
        if (!ids.count(e.from) || !ids.count(e.to)) {
            emit(out, Severity::Error, "E_DANGLING_EDGE", path,
                 "edge " + e.from + " -> " + e.to + " references an undeclared step");
            dangling = true;
        }
    }

    if (auto cyc = find_cycle(g)) {
        emit(out, Severity::Error, "E_CYCLE", prefix,
             "scenario graph is cyclic (cycle through step '" + *cyc + "')");
        return out; // reachability analysis below assumes a DAG
    }

    std::map<std::string, int> in_degree;
    std::map<std::string, int> out_degree;
    for (const auto& e : g.edges) {
        if (!ids.count(e.from) || !ids.count(e.to)) continue;
        ++out_degree[e.from];
        ++in_degree[e.to];
    }

    if (ids.count(g.entry) && in_degree[g.entry] > 0)
        emit(out, Severity::Error, "E_ENTRY_HAS_INCOMING", prefix + ".entry",
             "entry step '" + g.entry + "' has incoming edges");

    auto reached = reachable_from(g, g.entry);
    for (const auto& step : g.steps) {
        if (reached.count(step.id)) continue;
        bool isolated_final = g.is_final(step.id) && in_degree[step.id] == 0 &&
                              out_degree[step.id] == 0;
        if (isolated_final)
            emit(out, Severity::Warning, "W_UNREACHABLE_FINAL",
                 prefix + ".steps." + step.id,
                 "final step '" + step.id + "' is isolated and can never be reached");
        else
            emit(out, Severity::Error, "E_UNREACHABLE_STEP", prefix + ".steps." + step.id,
                 "step '" + step.id + "' is not reachable from the entry");
    }

    for (const auto& f : g.finals)
        if (ids.count(f) && out_degree[f] > 0)
            emit(out, Severity::Error, "E_FINAL_HAS_OUTGOING", prefix + ".steps." + f,
                 "final step '" + f + "' has outgoing edges");

    // Every reachable step must reach some final (backward reachability).
    if (!dangling) {
        std::set<std::string> reaches_final(g.finals.begin(), g.finals.end());
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& e : g.edges) {
                if (reaches_final.count(e.to) && reaches_final.insert(e.from).second) grew = true;
            }
        }
        for (const auto& step : g.steps) {
            if (!reached.count(step.id)) continue;
            if (!reaches_final.count(step.id))
                emit(out, Severity::Error, "E_DEAD_END", prefix + ".steps." + step.id,
                     "step '" + step.id + "' cannot reach any final step");
        }
    }

    // Branch discipline: every edge of a branching step guarded, guards
    // pairwise distinct.
    auto adj = out_edges(g);
    for (const auto& [from, edge_idx] : adj) {
        if (!ids.count(from)) continue;
        if (edge_idx.size() < 2) continue;
        std::set<GuardLiteral> seen_guards;
        for (std::size_t i : edge_idx) {
            const auto& e = g.edges[i];
            std::string path = prefix + ".edges[" + std::to_string(i) + "]";
            if (!e.guard) {
                emit(out, Severity::Error, "E_UNGUARDED_BRANCH", path,
                     "branching step '" + from + "' has an unguarded outgoing edge");
            } else if (!seen_guards.insert(*e.guard).second) {
                emit(out, Severity::Error, "E_AMBIGUOUS_BRANCH", path,
                     "branching step '" + from + "' repeats guard '" + e.guard->str() + "'");
            }
        }
    }

    return out;
}

namespace {

void validate_flow(const SystemModel& model, std::vector<Diagnostic>& out) {
    const SystemFlow& flow = model.flow;
    std::set<std::string> declared;
    for (const auto& uc : model.usecases) declared.insert(uc.id);

    if (!declared.count(flow.entry))
        emit(out, Severity::Error, "E_UNDECLARED_ENTRY", "flow.entry",
             "flow entry '" + flow.entry + "' is not a declared use case");

    bool dangling = false;
    for (std::size_t i = 0; i < flow.edges.size(); ++i) {
        const auto& e = flow.edges[i];
        if (!declared.count(e.from) || !declared.count(e.to)) {
            emit(out, Severity::Error, "E_DANGLING_EDGE",
                 "flow.edges[" + std::to_string(i) + "]",
                 "flow edge " + e.from + " -> " + e.to + " references an undeclared use case");
            dangling = true;
        }
    }
    if (dangling) return;

    // Reuse the scenario graph machinery for the flow DAG checks.
    ScenarioGraph as_graph;
    for (const auto& uc : model.usecases)
        as_graph.steps.push_back(ScenarioStep{uc.id, uc.id});
    for (const auto& e : flow.edges)
        as_graph.edges.push_back(ScenarioEdge{e.from, e.to, e.guard});
    as_graph.entry = flow.entry;

    if (auto cyc = find_cycle(as_graph)) {
        emit(out, Severity::Error, "E_CYCLE", "flow",
             "use-case flow is cyclic (cycle through '" + *cyc + "')");
        return;
    }

    std::map<std::string, int> in_degree;
    for (const auto& e : flow.edges) ++in_degree[e.to];
    if (declared.count(flow.entry) && in_degree[flow.entry] > 0)
        emit(out, Severity::Error, "E_ENTRY_HAS_INCOMING", "flow.entry",
             "flow entry '" + flow.entry + "' has incoming edges");

    auto reached = reachable_from(as_graph, flow.entry);
    for (const auto& uc : model.usecases)
        if (!reached.count(uc.id))
            emit(out, Severity::Error, "E_UNREACHABLE_USECASE", "flow",
                 "use case '" + uc.id + "' is not reachable from the flow entry");
}

// Single-use guard atoms across every guard surface of the model usually
// indicate a misspelled atom; the pipeline itself does not care.
void warn_single_use_atoms(const SystemModel& model, std::vector<Diagnostic>& out) {
    std::map<GuardAtom, int> counts;
    std::map<GuardAtom, std::string> first_site;
    auto count_atom = [&](const GuardAtom& atom, const std::string& where) {
        if (++counts[atom] == 1) first_site[atom] = where;
    };
    auto count_expr = [&](const std::optional<GuardExpr>& e, const std::string& where) {
        if (!e) return;
        for (const auto& atom : collect_atoms(*e)) count_atom(atom, where);
    };

    for (const auto& uc : model.usecases) {
        std::string base = "usecases." + uc.id;
        count_expr(uc.precondition, base + ".pre");
        count_expr(uc.postcondition, base + ".post");
        for (std::size_t i = 0; i < uc.scenario.edges.size(); ++i)
            if (uc.scenario.edges[i].guard)
                count_atom(uc.scenario.edges[i].guard->atom,
                           base + ".scenario.edges[" + std::to_string(i) + "]");
    }
    for (std::size_t i = 0; i < model.flow.edges.size(); ++i)
        if (model.flow.edges[i].guard)
            count_atom(model.flow.edges[i].guard->atom,
                       "flow.edges[" + std::to_string(i) + "]");

    for (const auto& [atom, n] : counts)
        if (n == 1)
            emit(out, Severity::Warning, "W_ATOM_USED_ONCE", first_site[atom],
                 "guard atom '" + atom.str() + "' is used exactly once in the model");
}

} // namespace

std::vector<Diagnostic> validate_model(const SystemModel& model) {
    std::vector<Diagnostic> out;

    std::set<std::string> uc_ids;
    for (const auto& uc : model.usecases) {
        std::string base = "usecases." + (uc.id.empty() ? "<empty>" : uc.id);
        if (!is_identifier(uc.id))
            emit(out, Severity::Error, "E_BAD_IDENTIFIER", base,
                 "use-case id '" + uc.id + "' is not a valid identifier");
        if (!uc_ids.insert(uc.id).second)
            emit(out, Severity::Error, "E_DUPLICATE_ID", base,
                 "duplicate use-case id '" + uc.id + "'");
        auto sub = validate_scenario(uc.scenario, base + ".scenario");
        out.insert(out.end(), sub.begin(), sub.end());
    }

    validate_flow(model, out);
    warn_single_use_atoms(model, out);
    return out;
}

std::vector<ScenarioPath> enumerate_paths(const ScenarioGraph& g) {
    auto adj = out_edges(g);
    std::vector<ScenarioPath> result;
    ScenarioPath current{PathElement{g.entry, std::nullopt}};
    std::set<std::string> on_stack{g.entry};

    // Depth-first, edges in declaration order: the first-listed alternative
    // of every branch is explored first, so the nominal path comes out first.
    auto recurse = [&](auto&& self, const std::string& step) -> void {
        auto it = adj.find(step);
        if (it == adj.end() || it->second.empty()) {
            if (g.is_final(step)) result.push_back(current);
            return;
        }
        for (std::size_t edge_idx : it->second) {
            const ScenarioEdge& e = g.edges[edge_idx];
            if (on_stack.count(e.to)) throw CycleDetectedError(e.to);
            on_stack.insert(e.to);
            current.push_back(PathElement{e.to, e.guard});
            self(self, e.to);
            current.pop_back();
            on_stack.erase(e.to);
        }
    };
    recurse(recurse, g.entry);
    return result;
}

} // namespace ucmbt
