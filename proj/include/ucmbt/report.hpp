#pragma once

// Presentation layer: JSON and plain-text renderings of every pipeline
// artifact. All output is deterministic; JSON objects keep insertion order.

#include "ucmbt/charts.hpp"
#include "ucmbt/contracts.hpp"
#include "ucmbt/executor.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ucmbt {

using ojson = nlohmann::ordered_json;

// --- goals -------------------------------------------------------------

/// [ { "id", "literals": [string...], "path": [step-id...] }, ... ]
ojson goals_to_json(const std::vector<TestGoal>& goals);
std::string goals_to_text(const std::vector<TestGoal>& goals);

// --- contracts ---------------------------------------------------------

ojson contract_to_json(const ExecutionContract& contract);
std::string contract_to_text(const ExecutionContract& contract);

// --- sequence diagrams ---------------------------------------------------

ojson diagrams_to_json(const std::vector<SequenceDiagram>& diagrams);
std::string diagrams_to_text(const std::vector<SequenceDiagram>& diagrams);

// --- transition table -----------------------------------------------------

ojson table_to_json(const std::vector<TransitionRow>& table);
std::string table_to_text(const std::vector<TransitionRow>& table);

// --- statechart ----------------------------------------------------------

ojson chart_to_json(const StateChart& chart);
std::string chart_to_text(const StateChart& chart);

// --- goal runs ------------------------------------------------------------

/// { "runs": [...], "coverage": { "states": {...}, "transitions": {...},
///   "uncovered": {...} } }
ojson run_report_to_json(const std::vector<GoalRun>& runs, const CoverageReport& coverage);
std::string run_report_to_text(const std::vector<GoalRun>& runs, const CoverageReport& coverage);

} // namespace ucmbt
