// Scenario files: a small sectioned key=value format (UTF-8, '#' comments)
// describing systems, covers, compactifications, correspondences, monomial
// maps, pullbacks and the tasks to run on them.  Parsing is total: every
// line is either consumed or reported with its line number.
//
//   [system golden]
//   kind = sft
//   matrix = 1 1 / 1 0
//
//   [cover c0]
//   kind = identity
//   system = golden
//
//   [compactification z0]
//   cover = c0
//   host = golden
//   density = exact
//
//   [task]
//   op = h_omega
//   system = golden
//   family = z0

#pragma once

#include "etale/correspondence.hpp"
#include "etale/degrees.hpp"
#include "etale/etale.hpp"

#include <map>
#include <string>
#include <vector>

namespace etale {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int l, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};

struct PullbackSpec {
    std::string id;
    std::string correspondence;   // base correspondence id (canonical pullback)
    std::vector<int> fiber_map;   // z -> p(z); empty for declared entries
    // declared-degree escape hatch: explicit upstairs multiplicity + degree
    IntMatrix declared_multiplicity;
    long declared_degree = 0;

    bool declared() const { return declared_degree > 0; }
};

struct ScenarioTask {
    int line = 0;
    std::string op;  // h_omega | h_cr | entropy | word_count | bowen |
                     // verify_cover | gamma_entropy | degrees | h_et
    std::string system;
    std::string cover;
    std::string correspondence;
    std::string monomial;
    std::vector<std::string> family;
    bool family_complete = false;
    std::vector<CompactCandidate> candidates;
    std::vector<std::string> pullbacks;  // h_et family entries
    long n = 0;                          // word_count horizon
    int horizon = 20;
    double epsilon = 0.015625;
    double grid = 0.0001220703125;
    CompactificationSpec::Estimator estimator = CompactificationSpec::Estimator::Slope;

    bool operator==(const ScenarioTask&) const = default;
};

struct Scenario {
    Registry registry;
    std::map<std::string, FiniteCorrespondence> correspondences;
    std::map<std::string, MonomialMap> monomials;
    std::map<std::string, PullbackSpec> pullbacks;
    std::vector<ScenarioTask> tasks;
};

// Throws ParseError on malformed input, unknown keys, duplicate ids, or
// unresolved references.  Constructed cover sources are materialized, so
// "<cover>.source" is a valid host id afterwards.
Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

std::string serialize_scenario(const Scenario& s);

bool scenario_equal(const Scenario& a, const Scenario& b);

}  // namespace etale
