#include "ucmbt/loader.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ucmbt {

using json = nlohmann::ordered_json;

namespace {

struct Collector {
    std::vector<Diagnostic> diags;

    void error(std::string code, std::string path, std::string message) {
        diags.push_back(Diagnostic{Severity::Error, std::move(code), std::move(path),
                                   std::move(message)});
    }
};

std::string type_name(const json& j) {
    return j.type_name();
}

// Strict schema checking: every required key present, no keys outside
// required+optional. Returns false when the node is not even an object.
bool check_object(const json& j, const std::string& path,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional, Collector& c) {
    if (!j.is_object()) {
        c.error("E_FORMAT", path, "expected an object, got " + type_name(j));
        return false;
    }
    bool ok = true;
    for (const auto& key : required) {
        if (!j.contains(key)) {
            c.error("E_FORMAT", path, "missing required key \"" + key + "\"");
            ok = false;
        }
    }
    for (const auto& item : j.items()) {
        const std::string& key = item.key();
        bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                     std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) {
            c.error("E_FORMAT", path, "unknown key \"" + key + "\"");
            ok = false;
        }
    }
    return ok;
}

std::optional<std::string> get_string(const json& j, const std::string& key,
                                      const std::string& path, Collector& c) {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_string()) {
        c.error("E_FORMAT", path + "." + key,
                "expected a string, got " + type_name(j.at(key)));
        return std::nullopt;
    }
    return j.at(key).get<std::string>();
}

std::optional<GuardLiteral> parse_edge_guard(const json& j, const std::string& path,
                                             Collector& c) {
    if (!j.contains("guard") || j.at("guard").is_null()) return std::nullopt;
    if (!j.at("guard").is_string()) {
        c.error("E_FORMAT", path + ".guard",
                "expected a guard string or null, got " + type_name(j.at("guard")));
        return std::nullopt;
    }
    std::string text = j.at("guard").get<std::string>();
    try {
        return parse_guard_literal(text);
    } catch (const ParseError& e) {
        bool compound = std::string(e.what()).find("compound") != std::string::npos;
        c.error(compound ? "E_GUARD_NOT_LITERAL" : "E_GUARD_SYNTAX", path + ".guard",
                "guard \"" + text + "\": " + e.what());
        return std::nullopt;
    }
}

std::optional<GuardExpr> parse_condition(const json& j, const std::string& key,
                                         const std::string& path, Collector& c) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_string()) {
        c.error("E_FORMAT", path + "." + key,
                "expected a guard string or null, got " + type_name(j.at(key)));
        return std::nullopt;
    }
    std::string text = j.at(key).get<std::string>();
    try {
        return parse_guard(text);
    } catch (const ParseError& e) {
        c.error("E_GUARD_SYNTAX", path + "." + key, "guard \"" + text + "\": " + e.what());
        return std::nullopt;
    }
}

ScenarioGraph load_scenario(const json& j, const std::string& path, Collector& c) {
    ScenarioGraph g;
    if (!check_object(j, path, {"entry", "finals", "steps", "edges"}, {}, c)) return g;

    if (auto entry = get_string(j, "entry", path, c)) g.entry = *entry;

    if (j.contains("finals")) {
        if (!j.at("finals").is_array()) {
            c.error("E_FORMAT", path + ".finals", "expected an array of step ids");
        } else {
            for (const auto& f : j.at("finals")) {
                if (f.is_string()) g.finals.push_back(f.get<std::string>());
                else c.error("E_FORMAT", path + ".finals", "final entries must be strings");
            }
        }
    }

    if (j.contains("steps")) {
        if (!j.at("steps").is_array()) {
            c.error("E_FORMAT", path + ".steps", "expected an array of steps");
        } else {
            std::size_t i = 0;
            for (const auto& sj : j.at("steps")) {
                std::string spath = path + ".steps[" + std::to_string(i++) + "]";
                if (!check_object(sj, spath, {"id", "label"}, {}, c)) continue;
                ScenarioStep step;
                if (auto id = get_string(sj, "id", spath, c)) step.id = *id;
                if (auto label = get_string(sj, "label", spath, c)) step.label = *label;
                g.steps.push_back(std::move(step));
            }
        }
    }

    if (j.contains("edges")) {
        if (!j.at("edges").is_array()) {
            c.error("E_FORMAT", path + ".edges", "expected an array of edges");
        } else {
            std::size_t i = 0;
            for (const auto& ej : j.at("edges")) {
                std::string epath = path + ".edges[" + std::to_string(i++) + "]";
                if (!check_object(ej, epath, {"from", "to"}, {"guard"}, c)) continue;
                ScenarioEdge edge;
                if (auto from = get_string(ej, "from", epath, c)) edge.from = *from;
                if (auto to = get_string(ej, "to", epath, c)) edge.to = *to;
                edge.guard = parse_edge_guard(ej, epath, c);
                g.edges.push_back(std::move(edge));
            }
        }
    }
    return g;
}

SystemModel load_document(const json& doc, Collector& c) {
    SystemModel model;
    if (!check_object(doc, "$", {"name", "usecases", "flow"}, {"version"}, c)) return model;

    if (doc.contains("version") && doc.at("version") != json(1))
        c.error("E_BAD_VERSION", "$.version", "unsupported model version (expected 1)");

    if (auto name = get_string(doc, "name", "$", c)) model.name = *name;

    if (doc.contains("usecases")) {
        if (!doc.at("usecases").is_array()) {
            c.error("E_FORMAT", "$.usecases", "expected an array of use cases");
        } else {
            std::size_t i = 0;
            for (const auto& uj : doc.at("usecases")) {
                std::string upath = "usecases[" + std::to_string(i++) + "]";
                if (!check_object(uj, upath, {"id", "title", "scenario"}, {"pre", "post"}, c))
                    continue;
                UseCase uc;
                if (auto id = get_string(uj, "id", upath, c)) uc.id = *id;
                if (auto title = get_string(uj, "title", upath, c)) uc.title = *title;
                uc.precondition = parse_condition(uj, "pre", upath, c);
                uc.postcondition = parse_condition(uj, "post", upath, c);
                if (uj.contains("scenario"))
                    uc.scenario = load_scenario(uj.at("scenario"), upath + ".scenario", c);
                model.usecases.push_back(std::move(uc));
            }
        }
    }

    if (doc.contains("flow")) {
        const json& fj = doc.at("flow");
        if (check_object(fj, "flow", {"entry", "edges"}, {}, c)) {
            if (auto entry = get_string(fj, "entry", "flow", c)) model.flow.entry = *entry;
            if (fj.contains("edges")) {
                if (!fj.at("edges").is_array()) {
                    c.error("E_FORMAT", "flow.edges", "expected an array of edges");
                } else {
                    std::size_t i = 0;
                    for (const auto& ej : fj.at("edges")) {
                        std::string epath = "flow.edges[" + std::to_string(i++) + "]";
                        if (!check_object(ej, epath, {"from", "to"}, {"guard"}, c)) continue;
                        FlowEdge edge;
                        if (auto from = get_string(ej, "from", epath, c)) edge.from = *from;
                        if (auto to = get_string(ej, "to", epath, c)) edge.to = *to;
                        edge.guard = parse_edge_guard(ej, epath, c);
                        model.flow.edges.push_back(std::move(edge));
                    }
                }
            }
        }
    }

    // Flow nodes are the declared use cases, in declaration order.
    for (const auto& uc : model.usecases) model.flow.nodes.push_back(uc.id);
    return model;
}

} // namespace

LoadResult load_model_text(std::string_view text) {
    LoadResult result;
    Collector c;

    json doc;
    try {
        doc = json::parse(text, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error& e) {
        c.error("E_FORMAT", "$", e.what());
        result.diagnostics = std::move(c.diags);
        return result;
    }

    SystemModel model = load_document(doc, c);
    if (!has_errors(c.diags)) {
        auto semantic = validate_model(model);
        c.diags.insert(c.diags.end(), semantic.begin(), semantic.end());
    }

    result.diagnostics = std::move(c.diags);
    if (!has_errors(result.diagnostics)) result.model = std::move(model);
    return result;
}

LoadResult load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        LoadResult result;
        result.diagnostics.push_back(
            Diagnostic{Severity::Error, "E_IO", path, "cannot open file"});
        return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model_text(buf.str());
}

std::string dump_model(const SystemModel& model) {
    json doc;
    doc["version"] = 1;
    doc["name"] = model.name;

    json usecases = json::array();
    for (const auto& uc : model.usecases) {
        json uj;
        uj["id"] = uc.id;
        uj["title"] = uc.title;
        uj["pre"] = uc.precondition ? json(render_guard(*uc.precondition)) : json(nullptr);
        uj["post"] = uc.postcondition ? json(render_guard(*uc.postcondition)) : json(nullptr);

        json sj;
        sj["entry"] = uc.scenario.entry;
        sj["finals"] = uc.scenario.finals;
        json steps = json::array();
        for (const auto& step : uc.scenario.steps)
            steps.push_back(json{{"id", step.id}, {"label", step.label}});
        sj["steps"] = std::move(steps);
        json edges = json::array();
        for (const auto& e : uc.scenario.edges)
            edges.push_back(json{{"from", e.from},
                                 {"to", e.to},
                                 {"guard", e.guard ? json(e.guard->str()) : json(nullptr)}});
        sj["edges"] = std::move(edges);
        uj["scenario"] = std::move(sj);
        usecases.push_back(std::move(uj));
    }
    doc["usecases"] = std::move(usecases);

    json fj;
    fj["entry"] = model.flow.entry;
    json fedges = json::array();
    for (const auto& e : model.flow.edges)
        fedges.push_back(json{{"from", e.from},
                              {"to", e.to},
                              {"guard", e.guard ? json(e.guard->str()) : json(nullptr)}});
    fj["edges"] = std::move(fedges);
    doc["flow"] = std::move(fj);

    return doc.dump(2) + "\n";
}

bool is_format_code(const std::string& code) {
    return code == "E_FORMAT" || code == "E_BAD_VERSION" || code == "E_IO";
}

} // namespace ucmbt
