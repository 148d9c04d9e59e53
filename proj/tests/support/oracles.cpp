#include "support/oracles.hpp"

#include <algorithm>
#include <deque>

namespace ucmbt::testing {

std::vector<std::vector<std::size_t>> brute_force_paths(const ScenarioGraph& g) {
    std::set<std::string> finals(g.finals.begin(), g.finals.end());

    std::vector<std::vector<std::size_t>> done;
    std::deque<std::vector<std::size_t>> work;

    auto tip = [&](const std::vector<std::size_t>& walk) {
        return walk.empty() ? g.entry : g.edges[walk.back()].to;
    };
    auto extend = [&](const std::vector<std::size_t>& walk) {
        const std::string& at = tip(walk);
        bool extended = false;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            if (g.edges[e].from != at) continue;
            auto longer = walk;
            longer.push_back(e);
            work.push_back(std::move(longer));
            extended = true;
        }
        if (!extended && finals.count(at)) done.push_back(walk);
    };

    extend({});
    while (!work.empty()) {
        auto walk = work.front();
        work.pop_front();
        extend(walk);
    }
    return done;
}

bool eval_dnf(const DnfForm& dnf, const GuardEnv& env) {
    for (const auto& clause : dnf.clauses) {
        bool all = true;
        for (const auto& lit : clause) {
            bool value = env.at(lit.atom);
            if (lit.negated ? value : !value) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

std::set<GuardAtom> scenario_atoms(const ScenarioGraph& g) {
    std::set<GuardAtom> atoms;
    for (const auto& e : g.edges)
        if (e.guard) atoms.insert(e.guard->atom);
    return atoms;
}

bool eval_paths_or(const ScenarioGraph& g, const GuardEnv& env) {
    for (const auto& walk : brute_force_paths(g)) {
        bool all = true;
        for (std::size_t e : walk) {
            const auto& guard = g.edges[e].guard;
            if (!guard) continue;
            bool value = env.at(guard->atom);
            if (guard->negated ? value : !value) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

} // namespace ucmbt::testing
