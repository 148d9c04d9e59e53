#pragma once

// Canonical on-disk model format (.ucm.json), loader and serializer.
//
// {
//   "version": 1,
//   "name": "...",
//   "usecases": [ { "id", "title", "pre", "post",
//                   "scenario": { "entry", "finals", "steps", "edges" } } ],
//   "flow": { "entry", "edges" }
// }
//
// Guards appear as strings in the guard grammar; scenario and flow edges take
// a single literal, "pre"/"post" take full expressions. "pre", "post" and
// "guard" may be null or omitted. "//"-style comments are tolerated on load;
// dump_model emits none.

#include "ucmbt/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ucmbt {

struct LoadResult {
    std::optional<SystemModel> model; // engaged iff no error diagnostics
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

/// Parse and validate model text. On failure the result carries every
/// diagnostic that could be collected, not just the first.
LoadResult load_model_text(std::string_view text);

/// Like load_model_text, reading from a file. An unreadable path yields a
/// single E_IO diagnostic.
LoadResult load_model_file(const std::string& path);

/// Deterministic canonical serialization; load_model_text(dump_model(m))
/// yields a model structurally equal to m.
std::string dump_model(const SystemModel& model);

/// True for diagnostic codes that indicate an unreadable or malformed
/// document rather than a semantically invalid model.
bool is_format_code(const std::string& code);

} // namespace ucmbt
