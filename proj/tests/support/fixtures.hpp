#pragma once

// Shared helpers for the test suites: fixture loading, terse literal
// builders, file reading.

#include "ucmbt/loader.hpp"
#include "ucmbt/model.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucmbt::testing {

inline std::string project_root() {
    return UCMBT_PROJECT_ROOT;
}

inline std::string fixture_path() {
    return project_root() + "/examples/inventory_pr.ucm.json";
}

inline std::string golden_path(const std::string& name) {
    return project_root() + "/tests/golden/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline SystemModel load_fixture() {
    LoadResult result = load_model_file(fixture_path());
    if (!result.ok()) {
        std::string msg = "fixture failed to load:";
        for (const auto& d : result.diagnostics) msg += "\n  " + diagnostic_to_string(d);
        throw std::runtime_error(msg);
    }
    return *std::move(result.model);
}

inline GuardLiteral lit(std::string name, std::vector<std::string> args = {},
                        bool negated = false) {
    return GuardLiteral{GuardAtom{std::move(name), std::move(args)}, negated};
}

inline GuardLiteral neg(std::string name, std::vector<std::string> args = {}) {
    return lit(std::move(name), std::move(args), true);
}

/// The PR execution contract in canonical spelling, with the cancel branch
/// carrying its transition-table guard.
inline const char* pr_contract_text() {
    return "PR_Request and ((Validated_User(U) and Add_PR(i) and "
           "(Exist(i) or (not Exist(i) and Add(i))) and PR(i)) or "
           "(not Validated_User(U) and not PR(i)))";
}

} // namespace ucmbt::testing
