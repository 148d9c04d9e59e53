// ucmbt — use-case model-based testing toolkit.
//
// One subcommand per pipeline stage, so each stage is independently
// invocable: validate, system-contract, contract, goals, seqdiags, table,
// statechart, run-goals, export.
//
// Exit codes: 0 success, 1 semantic/synthesis error, 2 I/O or parse error,
// 3 bad arguments (including an unknown use-case id).

#include "ucmbt/charts.hpp"
#include "ucmbt/contracts.hpp"
#include "ucmbt/executor.hpp"
#include "ucmbt/loader.hpp"
#include "ucmbt/model.hpp"
#include "ucmbt/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 3;

bool color_enabled() {
    const char* v = std::getenv("UCMBT_COLOR");
    return v != nullptr && std::string(v) == "1";
}

void print_diagnostics(const std::vector<ucmbt::Diagnostic>& diags) {
    const bool color = color_enabled();
    for (const auto& d : diags) {
        if (color) {
            const char* code = d.severity == ucmbt::Severity::Error ? "\033[31m" : "\033[33m";
            std::cerr << code << (d.severity == ucmbt::Severity::Error ? "error" : "warning")
                      << "\033[0m " << d.code << ' ' << d.path << ": " << d.message << '\n';
        } else {
            std::cerr << ucmbt::diagnostic_to_string(d) << '\n';
        }
    }
}

struct Options {
    std::string model_path;
    std::string usecase;       // optional filter
    std::string format;        // per-command default applied later
    std::string output;        // empty = stdout
    bool strict_table = false;
};

// Failure carrying the process exit code; the JSON error envelope is emitted
// by the top-level handler so artifacts never mix with errors on stdout.
struct CliFailure {
    int exit_code;
    std::string code;
    std::string message;
};

int emit(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) {
        std::cerr << "error E_IO " << opt.output << ": cannot open for writing\n";
        return kExitIo;
    }
    out << text;
    return kExitOk;
}

ucmbt::SystemModel load_or_fail(const Options& opt) {
    ucmbt::LoadResult result = ucmbt::load_model_file(opt.model_path);
    print_diagnostics(result.diagnostics);
    if (result.ok()) return *std::move(result.model);

    bool format_problem = false;
    for (const auto& d : result.diagnostics)
        if (d.severity == ucmbt::Severity::Error && ucmbt::is_format_code(d.code))
            format_problem = true;
    throw CliFailure{format_problem ? kExitIo : kExitSemantic, "E_LOAD",
                     "model '" + opt.model_path + "' failed to load"};
}

// Use cases a scenario-level command applies to: the named one, or every
// use case with a non-trivial scenario (placeholder one-step scenarios are
// flow stubs and produce no scenario artifacts).
std::vector<const ucmbt::UseCase*> select_usecases(const ucmbt::SystemModel& model,
                                                   const Options& opt) {
    std::vector<const ucmbt::UseCase*> selected;
    if (!opt.usecase.empty()) {
        const ucmbt::UseCase* uc = model.find_usecase(opt.usecase);
        if (!uc)
            throw CliFailure{kExitUsage, "E_UNKNOWN_USECASE",
                             "unknown use-case id '" + opt.usecase + "'"};
        selected.push_back(uc);
        return selected;
    }
    for (const auto& uc : model.usecases)
        if (!uc.scenario.edges.empty()) selected.push_back(&uc);
    return selected;
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (opt.format == f) return;
    std::string msg = "unsupported format '" + opt.format + "' (expected";
    for (const char* f : allowed) msg += std::string(" ") + f;
    msg += ")";
    throw CliFailure{kExitUsage, "E_BAD_FORMAT", msg};
}

int cmd_validate(const Options& opt) {
    ucmbt::LoadResult result = ucmbt::load_model_file(opt.model_path);
    print_diagnostics(result.diagnostics);
    if (result.ok()) {
        std::cout << "OK " << result.model->name << "\n";
        return kExitOk;
    }
    for (const auto& d : result.diagnostics)
        if (d.severity == ucmbt::Severity::Error && ucmbt::is_format_code(d.code))
            return kExitIo;
    return kExitSemantic;
}

int cmd_system_contract(const Options& opt) {
    require_format(opt, {"text", "json"});
    auto model = load_or_fail(opt);
    ucmbt::GuardExpr contract = [&] {
        try {
            return ucmbt::system_contract(model);
        } catch (const ucmbt::EmptyFlowError& e) {
            throw CliFailure{kExitSemantic, "E_EMPTY_FLOW", e.what()};
        }
    }();
    if (opt.format == "json")
        return emit(opt, ucmbt::ojson{{"contract", ucmbt::render_guard(contract)}}.dump(2) + "\n");
    return emit(opt, ucmbt::render_guard(contract) + "\n");
}

int cmd_contract(const Options& opt) {
    require_format(opt, {"text", "json"});
    auto model = load_or_fail(opt);
    auto selected = select_usecases(model, opt);

    std::string text;
    ucmbt::ojson arr = ucmbt::ojson::array();
    for (const ucmbt::UseCase* uc : selected) {
        ucmbt::ExecutionContract contract = [&] {
            try {
                return ucmbt::scenario_contract(*uc);
            } catch (const ucmbt::EmptyFlowError& e) {
                throw CliFailure{kExitSemantic, "E_EMPTY_FLOW", e.what()};
            }
        }();
        if (opt.format == "json") arr.push_back(ucmbt::contract_to_json(contract));
        else text += ucmbt::contract_to_text(contract);
    }
    if (opt.format == "json") return emit(opt, arr.dump(2) + "\n");
    return emit(opt, text);
}

int cmd_goals(const Options& opt) {
    require_format(opt, {"text", "json"});
    auto model = load_or_fail(opt);
    auto selected = select_usecases(model, opt);

    std::vector<ucmbt::TestGoal> goals;
    for (const ucmbt::UseCase* uc : selected) {
        auto sub = ucmbt::extract_test_goals(*uc);
        goals.insert(goals.end(), std::make_move_iterator(sub.begin()),
                     std::make_move_iterator(sub.end()));
    }
    if (opt.format == "json") return emit(opt, ucmbt::goals_to_json(goals).dump(2) + "\n");
    return emit(opt, ucmbt::goals_to_text(goals));
}

int cmd_seqdiags(const Options& opt) {
    require_format(opt, {"text", "json", "dot"});
    auto model = load_or_fail(opt);
    auto selected = select_usecases(model, opt);

    std::vector<ucmbt::SequenceDiagram> diagrams;
    for (const ucmbt::UseCase* uc : selected) {
        auto sub = ucmbt::derive_sequence_diagrams(*uc);
        diagrams.insert(diagrams.end(), std::make_move_iterator(sub.begin()),
                        std::make_move_iterator(sub.end()));
    }
    if (opt.format == "json") return emit(opt, ucmbt::diagrams_to_json(diagrams).dump(2) + "\n");
    if (opt.format == "dot") {
        std::string out;
        for (const auto& d : diagrams) out += ucmbt::diagram_to_dot(d);
        return emit(opt, out);
    }
    return emit(opt, ucmbt::diagrams_to_text(diagrams));
}

std::vector<ucmbt::TransitionRow> table_for(const ucmbt::UseCase& uc, const Options& opt) {
    try {
        return ucmbt::generate_transition_table(ucmbt::derive_sequence_diagrams(uc),
                                                opt.strict_table);
    } catch (const ucmbt::ConflictError& e) {
        throw CliFailure{kExitSemantic, "E_CONFLICT", e.what()};
    } catch (const ucmbt::TableOverflowError& e) {
        throw CliFailure{kExitSemantic, "E_TABLE_OVERFLOW", e.what()};
    }
}

ucmbt::StateChart chart_for(const ucmbt::UseCase& uc, const Options& opt) {
    try {
        return ucmbt::build_state_chart(table_for(uc, opt));
    } catch (const ucmbt::Error& e) {
        throw CliFailure{kExitSemantic, "E_CHART", e.what()};
    }
}

int cmd_table(const Options& opt) {
    require_format(opt, {"csv", "text", "json"});
    auto model = load_or_fail(opt);
    auto selected = select_usecases(model, opt);
    if (opt.format == "csv" && selected.size() != 1)
        throw CliFailure{kExitUsage, "E_BAD_FORMAT",
                         "csv output covers a single use case; pass --usecase"};

    std::string text;
    ucmbt::ojson obj = ucmbt::ojson::object();
    for (const ucmbt::UseCase* uc : selected) {
        auto table = table_for(*uc, opt);
        if (opt.format == "json") obj[uc->id] = ucmbt::table_to_json(table);
        else if (opt.format == "csv") text += ucmbt::table_to_csv(table);
        else text += "usecase " + uc->id + "\n" + ucmbt::table_to_text(table);
    }
    if (opt.format == "json") return emit(opt, obj.dump(2) + "\n");
    return emit(opt, text);
}

int cmd_statechart(const Options& opt) {
    require_format(opt, {"text", "json", "dot"});
    auto model = load_or_fail(opt);
    auto selected = select_usecases(model, opt);

    std::string text;
    ucmbt::ojson obj = ucmbt::ojson::object();
    for (const ucmbt::UseCase* uc : selected) {
        ucmbt::StateChart chart = chart_for(*uc, opt);
        if (opt.format == "json") obj[uc->id] = ucmbt::chart_to_json(chart);
        else if (opt.format == "dot") text += ucmbt::chart_to_dot(chart, uc->id);
        else text += "usecase " + uc->id + "\n" + ucmbt::chart_to_text(chart);
    }
    if (opt.format == "json") return emit(opt, obj.dump(2) + "\n");
    return emit(opt, text);
}

int cmd_run_goals(const Options& opt) {
    require_format(opt, {"text", "json"});
    auto model = load_or_fail(opt);
    auto selected = select_usecases(model, opt);

    std::string text;
    ucmbt::ojson obj = ucmbt::ojson::object();
    for (const ucmbt::UseCase* uc : selected) {
        ucmbt::StateChart chart = chart_for(*uc, opt);
        auto goals = ucmbt::extract_test_goals(*uc);
        auto [runs, coverage] = ucmbt::execute_all(chart, goals);
        if (opt.format == "json") obj[uc->id] = ucmbt::run_report_to_json(runs, coverage);
        else text += "usecase " + uc->id + "\n" + ucmbt::run_report_to_text(runs, coverage);
    }
    if (opt.format == "json") {
        // Single use case: emit the report directly, as the schema documents.
        if (selected.size() == 1) return emit(opt, obj.begin().value().dump(2) + "\n");
        return emit(opt, obj.dump(2) + "\n");
    }
    return emit(opt, text);
}

int cmd_export(const Options& opt) {
    require_format(opt, {"json"});
    auto model = load_or_fail(opt);
    return emit(opt, ucmbt::dump_model(model));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"use-case scenario contracts, test goals and statechart synthesis"};
    app.require_subcommand(1);

    Options opt;
    std::string command;

    struct Spec {
        const char* name;
        const char* help;
        const char* default_format;
        int (*run)(const Options&);
    };
    const std::vector<Spec> commands{
        {"validate", "check a model file and print diagnostics", "text", cmd_validate},
        {"system-contract", "sequential contract of the use-case flow", "text",
         cmd_system_contract},
        {"contract", "execution contract of each use-case scenario", "text", cmd_contract},
        {"goals", "test goals, one per scenario path", "text", cmd_goals},
        {"seqdiags", "contractual sequence diagrams, one per path", "text", cmd_seqdiags},
        {"table", "statechart transition table", "csv", cmd_table},
        {"statechart", "synthesized statechart", "text", cmd_statechart},
        {"run-goals", "execute the goals on the synthesized statechart", "text", cmd_run_goals},
        {"export", "re-emit the model in canonical form", "json", cmd_export},
    };

    for (const auto& spec : commands) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->add_option("model", opt.model_path, "model file (.ucm.json)")->required();
        sub->add_option("--usecase", opt.usecase, "restrict to one use case");
        sub->add_option("--format", opt.format, "output format");
        sub->add_option("-o,--output", opt.output, "write to file instead of stdout");
        if (std::string(spec.name) == "table" || std::string(spec.name) == "statechart" ||
            std::string(spec.name) == "run-goals")
            sub->add_flag("--strict-table", opt.strict_table,
                          "reject states with more than two successors");
        sub->callback([&command, name = std::string(spec.name)] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    const Spec* spec = nullptr;
    for (const auto& s : commands)
        if (command == s.name) spec = &s;
    if (!spec) return kExitUsage;
    if (opt.format.empty()) opt.format = spec->default_format;

    try {
        return spec->run(opt);
    } catch (const CliFailure& failure) {
        std::cerr << "error " << failure.code << ": " << failure.message << '\n';
        if (opt.format == "json")
            std::cout << ucmbt::ojson{{"error", ucmbt::ojson{{"code", failure.code},
                                                             {"message", failure.message}}}}
                             .dump(2)
                      << "\n";
        return failure.exit_code;
    } catch (const ucmbt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (opt.format == "json")
            std::cout << ucmbt::ojson{{"error", ucmbt::ojson{{"code", "E_INTERNAL"},
                                                             {"message", e.what()}}}}
                             .dump(2)
                      << "\n";
        return kExitSemantic;
    }
}
