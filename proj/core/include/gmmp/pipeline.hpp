#pragma once

#include "gmmp/problem.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace gmmp {

using Json = nlohmann::ordered_json;

// One CLI invocation worth of work: resolve | ext | cup-table | hull | versal.
struct RunOptions {
    std::string command;
    std::optional<unsigned> order;                    // hull/versal target order
    std::optional<std::vector<std::size_t>> restrict_override;
    std::optional<std::string> fixture_override;      // path; empty string = none
    std::optional<MonomialOrder> monomial_order;
    std::size_t resolution_length = 3;
    bool include_timing = true;
};

struct RunResult {
    Json report;
    std::string text;
};

// Executes the pipeline stage for the command. Reports are deterministic:
// identical inputs produce byte-identical JSON up to the trailing timing
// field (which include_timing=false suppresses).
RunResult run_pipeline(const ProblemFile& pf, const RunOptions& opt);

} // namespace gmmp
