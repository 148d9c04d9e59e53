#include "support/generators.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ucmbt::testing {

int Rng::below(int n) {
    return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(eng_));
}

int Rng::between(int lo, int hi) {
    return static_cast<int>(std::uniform_int_distribution<int>(lo, hi)(eng_));
}

bool Rng::chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p;
}

namespace {

GuardAtom pool_atom(int k) {
    GuardAtom atom;
    atom.name = "g" + std::to_string(k);
    if (k % 3 == 1) atom.args = {"i"};
    else if (k % 3 == 2) atom.args = {"U", "i"};
    return atom;
}

GuardExpr random_expr_rec(Rng& rng, int depth, int max_atoms) {
    if (depth == 0 || rng.chance(0.35))
        return GuardExpr::literal(GuardLiteral{pool_atom(rng.below(max_atoms)), rng.chance(0.3)});
    const bool use_and = rng.chance(0.5);
    const int arity = rng.between(2, 3);
    std::vector<GuardExpr> ops;
    ops.reserve(arity);
    for (int i = 0; i < arity; ++i) ops.push_back(random_expr_rec(rng, depth - 1, max_atoms));
    return use_and ? GuardExpr::conj(std::move(ops)) : GuardExpr::disj(std::move(ops));
}

GuardAtom fresh_atom(int k) {
    GuardAtom atom;
    atom.name = "q" + std::to_string(k);
    if (k % 2 == 1) atom.args = {"i"};
    return atom;
}

} // namespace

GuardExpr random_expr(Rng& rng, int max_depth, int max_atoms) {
    return random_expr_rec(rng, max_depth, max_atoms);
}

ScenarioGraph random_scenario(Rng& rng, int max_steps, int max_atoms) {
    const int n = rng.between(2, max_steps);

    ScenarioGraph g;
    for (int i = 0; i < n; ++i)
        g.steps.push_back(ScenarioStep{"s" + std::to_string(i), "S" + std::to_string(i)});
    g.entry = "s0";

    // Edges point from lower to higher index, so the graph is acyclic and
    // every step is reachable from s0 through its tree parent.
    std::vector<int> out_degree(n, 0);
    std::vector<std::pair<int, int>> edges; // (from, to)
    std::set<std::pair<int, int>> edge_set;
    for (int i = 1; i < n; ++i) {
        int parent = rng.below(i);
        for (int tries = 0; out_degree[parent] >= 3 && tries < 8; ++tries) parent = rng.below(i);
        if (out_degree[parent] >= 3)
            for (int j = 0; j < i; ++j)
                if (out_degree[j] < 3) parent = j;
        edges.emplace_back(parent, i);
        edge_set.insert({parent, i});
        ++out_degree[parent];
    }

    const std::size_t tree_edges = edges.size();
    const int extra_attempts = rng.between(0, n / 3);
    for (int k = 0; k < extra_attempts; ++k) {
        int to = rng.between(1, n - 1);
        int from = rng.below(to);
        if (out_degree[from] >= 3 || edge_set.count({from, to})) continue;
        edges.emplace_back(from, to);
        edge_set.insert({from, to});
        ++out_degree[from];
    }

    // Branch guards are mandatory; stay within the atom budget by dropping
    // extra (non-tree) edges until the branching fits.
    auto atoms_needed = [&] {
        int total = 0;
        for (int d : out_degree) {
            if (d == 2) total += 1;
            else if (d >= 3) total += 2;
        }
        return total;
    };
    while (atoms_needed() > max_atoms && edges.size() > tree_edges) {
        auto [from, to] = edges.back();
        edges.pop_back();
        edge_set.erase({from, to});
        --out_degree[from];
    }

    // Guard assignment. Fresh atoms per branching step: a 2-way branch takes
    // one atom's two polarities, a 3-way branch adds a second atom. Atoms
    // are never shared between steps, so no path carries a contradiction and
    // no path's literal set subsumes another's.
    int next_atom = 0;
    std::map<int, std::vector<std::size_t>> edges_of; // from -> edge indices
    for (std::size_t e = 0; e < edges.size(); ++e) edges_of[edges[e].first].push_back(e);

    std::vector<std::optional<GuardLiteral>> guards(edges.size());
    for (const auto& [from, idxs] : edges_of) {
        if (idxs.size() < 2) continue;
        GuardAtom a = fresh_atom(next_atom++);
        std::vector<GuardLiteral> lits{GuardLiteral{a, false}, GuardLiteral{a, true}};
        if (idxs.size() == 3) lits.push_back(GuardLiteral{fresh_atom(next_atom++), false});
        // shuffle which alternative carries which literal
        for (std::size_t i = lits.size(); i > 1; --i)
            std::swap(lits[i - 1], lits[static_cast<std::size_t>(rng.below(static_cast<int>(i)))]);
        for (std::size_t i = 0; i < idxs.size(); ++i) guards[idxs[i]] = lits[i];
    }
    for (const auto& [from, idxs] : edges_of) {
        if (idxs.size() != 1) continue;
        if (next_atom < max_atoms && rng.chance(0.35))
            guards[idxs.front()] = GuardLiteral{fresh_atom(next_atom++), rng.chance(0.3)};
    }
    if (next_atom == 0) guards[0] = GuardLiteral{fresh_atom(next_atom++), false};

    for (std::size_t e = 0; e < edges.size(); ++e)
        g.edges.push_back(ScenarioEdge{"s" + std::to_string(edges[e].first),
                                       "s" + std::to_string(edges[e].second), guards[e]});

    for (int i = 0; i < n; ++i)
        if (out_degree[i] == 0) g.finals.push_back("s" + std::to_string(i));
    return g;
}

SystemModel random_model(Rng& rng) {
    SystemModel model;
    model.name = "generated";

    const int n_usecases = rng.between(1, 3);
    for (int i = 0; i < n_usecases; ++i) {
        UseCase uc;
        uc.id = "UC" + std::to_string(i);
        uc.title = "Use case " + std::to_string(i);
        if (rng.chance(0.5)) uc.precondition = random_expr(rng, 2, 4);
        if (rng.chance(0.5)) uc.postcondition = random_expr(rng, 2, 4);
        uc.scenario = random_scenario(rng, 8, 8);
        model.usecases.push_back(std::move(uc));
        model.flow.nodes.push_back("UC" + std::to_string(i));
    }
    model.flow.entry = "UC0";
    for (int i = 0; i + 1 < n_usecases; ++i) {
        FlowEdge e;
        e.from = "UC" + std::to_string(i);
        e.to = "UC" + std::to_string(i + 1);
        if (rng.chance(0.7))
            e.guard = GuardLiteral{GuardAtom{"Flow" + std::to_string(i), {}}, false};
        model.flow.edges.push_back(std::move(e));
    }
    return model;
}

} // namespace ucmbt::testing
