// Batch execution of scenario tasks with deterministic text and JSON
// reports.  Tasks run in file order; a failing task is recorded and the run
// continues.  Given identical inputs and seeds, reports are byte-identical
// across runs: every numeric value is printed through one fixed format and
// carries its provenance tag.

#pragma once

#include "etale/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace etale {

inline constexpr const char* kWorkbenchVersion = "0.1.0";

struct RunFlags {
    std::uint64_t seed = 17;
    std::string format = "text";  // text | json
    EvaluationOptions eval;
};

struct TaskOutcome {
    std::string heading;
    std::vector<std::string> lines;
    bool failed = false;
    std::string error;
};

struct RunReport {
    std::vector<TaskOutcome> tasks;
    std::uint64_t seed = 0;

    bool any_failed() const;
    std::string to_text() const;
    std::string to_json() const;  // field-for-field mirror of the text report
};

RunReport run_scenario(const Scenario& scenario, const RunFlags& flags);

// Shared deterministic float formatting ("%.12g").
std::string fmt_value(double v);
std::string fmt_bracket(const Bracket& b);

}  // namespace etale
