#include "ucmbt/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace ucmbt {

namespace {

ojson opt_guard(const std::optional<GuardLiteral>& g) {
    return g ? ojson(g->str()) : ojson(nullptr);
}

ojson transition_to_json(const ChartTransition& t) {
    return ojson{{"src", t.src}, {"guard", opt_guard(t.guard)}, {"dst", t.dst}};
}

std::string transition_arrow(const std::optional<GuardLiteral>& guard) {
    return guard ? " -[" + guard->str() + "]-> " : " -> ";
}

std::string ratio_text(int visited, int total, double ratio) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d/%d (%.3f)", visited, total, ratio);
    return buf;
}

} // namespace

ojson goals_to_json(const std::vector<TestGoal>& goals) {
    ojson out = ojson::array();
    for (const auto& g : goals) {
        ojson literals = ojson::array();
        for (const auto& lit : g.literals) literals.push_back(lit.str());
        ojson path = ojson::array();
        for (const auto& elem : g.path) path.push_back(elem.step);
        out.push_back(ojson{{"id", g.id}, {"literals", std::move(literals)},
                            {"path", std::move(path)}});
    }
    return out;
}

std::string goals_to_text(const std::vector<TestGoal>& goals) {
    std::string out;
    for (const auto& g : goals) out += goal_to_text(g) + "\n";
    return out;
}

ojson contract_to_json(const ExecutionContract& c) {
    return ojson{{"usecase", c.usecase_id},
                 {"pre", c.pre ? ojson(render_guard(*c.pre)) : ojson(nullptr)},
                 {"body", render_guard(c.body)},
                 {"post", c.post ? ojson(render_guard(*c.post)) : ojson(nullptr)}};
}

std::string contract_to_text(const ExecutionContract& c) {
    std::string out = "usecase " + c.usecase_id + "\n";
    if (c.pre) out += "  pre:  " + render_guard(*c.pre) + "\n";
    out += "  body: [" + render_guard(c.body) + "]\n";
    if (c.post) out += "  post: " + render_guard(*c.post) + "\n";
    return out;
}

ojson diagrams_to_json(const std::vector<SequenceDiagram>& diagrams) {
    ojson out = ojson::array();
    for (const auto& d : diagrams) {
        ojson nodes = ojson::array();
        for (const auto& n : d.nodes)
            nodes.push_back(ojson{{"previous", n.previous ? ojson(*n.previous) : ojson(nullptr)},
                                  {"guard", opt_guard(n.guard)},
                                  {"state", n.state}});
        out.push_back(ojson{{"usecase", d.usecase_id},
                            {"index", d.path_index},
                            {"nodes", std::move(nodes)}});
    }
    return out;
}

std::string diagrams_to_text(const std::vector<SequenceDiagram>& diagrams) {
    std::string out;
    for (const auto& d : diagrams) {
        out += "diagram " + d.usecase_id + "/" + std::to_string(d.path_index) + ": ";
        for (std::size_t i = 0; i < d.nodes.size(); ++i) {
            if (i > 0) out += transition_arrow(d.nodes[i].guard);
            out += d.nodes[i].state;
        }
        out += "\n";
    }
    return out;
}

ojson table_to_json(const std::vector<TransitionRow>& table) {
    ojson out = ojson::array();
    for (const auto& row : table)
        out.push_back(ojson{{"state", row.state},
                            {"guard", opt_guard(row.guard)},
                            {"next", row.next},
                            {"alt_state", row.alt_state ? ojson(*row.alt_state) : ojson(nullptr)},
                            {"alt_guard", opt_guard(row.alt_guard)}});
    return out;
}

std::string table_to_text(const std::vector<TransitionRow>& table) {
    const std::vector<std::string> header{"state", "guard", "next", "alt_state", "alt_guard"};
    std::vector<std::vector<std::string>> cells;
    cells.push_back(header);
    for (const auto& row : table)
        cells.push_back({row.state, row.guard ? row.guard->str() : "", row.next,
                         row.alt_state.value_or(""),
                         row.alt_guard ? row.alt_guard->str() : ""});

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

    std::string out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            if (i + 1 < row.size()) out += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out += "\n";
    }
    return out;
}

ojson chart_to_json(const StateChart& chart) {
    ojson transitions = ojson::array();
    for (const auto& t : chart.transitions) transitions.push_back(transition_to_json(t));
    return ojson{{"states", chart.states},
                 {"initial", chart.initial},
                 {"finals", chart.finals},
                 {"transitions", std::move(transitions)}};
}

std::string chart_to_text(const StateChart& chart) {
    std::string out = "initial: " + chart.initial + "\n";
    out += "finals:";
    for (const auto& f : chart.finals) out += " " + f;
    out += "\n";
    out += "states: " + std::to_string(chart.states.size()) +
           ", transitions: " + std::to_string(chart.transitions.size()) + "\n";
    for (const auto& t : chart.transitions)
        out += "  " + t.src + transition_arrow(t.guard) + t.dst + "\n";
    return out;
}

ojson run_report_to_json(const std::vector<GoalRun>& runs, const CoverageReport& coverage) {
    ojson jruns = ojson::array();
    for (const auto& run : runs) {
        ojson trace = ojson::array();
        for (const auto& t : run.trace) trace.push_back(transition_to_json(t));
        ojson failure(nullptr);
        if (run.failure) {
            failure = ojson{{"kind", failure_kind_name(run.failure->kind)},
                            {"state", run.failure->state}};
            if (run.failure->literal) failure["literal"] = run.failure->literal->str();
            if (run.failure->kind == FailureReason::Kind::LeftoverLiterals)
                failure["leftover"] = run.failure->leftover;
        }
        jruns.push_back(ojson{{"goal", run.goal_id},
                              {"verdict", verdict_name(run.verdict)},
                              {"completed", run.completed},
                              {"trace", std::move(trace)},
                              {"failure_reason", std::move(failure)}});
    }

    ojson uncovered_transitions = ojson::array();
    for (const auto& t : coverage.uncovered_transitions)
        uncovered_transitions.push_back(transition_to_json(t));

    return ojson{
        {"runs", std::move(jruns)},
        {"coverage",
         ojson{{"states", ojson{{"visited", coverage.states_visited},
                                {"total", coverage.states_total}}},
               {"transitions", ojson{{"visited", coverage.transitions_visited},
                                     {"total", coverage.transitions_total}}},
               {"uncovered", ojson{{"states", coverage.uncovered_states},
                                   {"transitions", std::move(uncovered_transitions)}}}}}};
}

std::string run_report_to_text(const std::vector<GoalRun>& runs, const CoverageReport& coverage) {
    std::string out;
    for (const auto& run : runs) {
        out += run.goal_id;
        out += ' ';
        out += verdict_name(run.verdict);
        out += run.completed ? " completed" : " incomplete";
        out += " steps=" + std::to_string(run.trace.size());
        if (run.failure) {
            out += " (";
            out += failure_kind_name(run.failure->kind);
            out += " at " + run.failure->state;
            if (run.failure->literal) out += ", literal " + run.failure->literal->str();
            out += ")";
        }
        out += "\n";
    }
    out += "state coverage: " +
           ratio_text(coverage.states_visited, coverage.states_total, coverage.state_coverage) +
           "\n";
    out += "transition coverage: " +
           ratio_text(coverage.transitions_visited, coverage.transitions_total,
                      coverage.transition_coverage) +
           "\n";
    for (const auto& s : coverage.uncovered_states) out += "uncovered state: " + s + "\n";
    for (const auto& t : coverage.uncovered_transitions)
        out += "uncovered transition: " + t.src + transition_arrow(t.guard) + t.dst + "\n";
    return out;
}

} // namespace ucmbt
