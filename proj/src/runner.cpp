#include "etale/runner.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace etale {

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_bracket(const Bracket& b) {
    return "[" + fmt_value(b.lo) + ", " + fmt_value(b.hi) + "]";
}

namespace {

std::string fmt_entropy_value(const EntropyValue& v) {
    return fmt_bracket(v.bracket) + " (" + provenance_name(v.tag) + ")";
}

void run_entropy(const Scenario& sc, const ScenarioTask& t, const RunFlags& flags,
                 TaskOutcome& out) {
    const SystemDescriptor& sys = sc.registry.system(t.system);
    const Sft* sft = std::get_if<Sft>(&sys.system);
    if (!sft) throw std::invalid_argument("op entropy needs an SFT system");
    SftEntropy e = sft_entropy(*sft, flags.eval.perron);
    if (e.empty) out.lines.push_back("empty = true (entropy defined as 0)");
    out.lines.push_back("entropy = " + fmt_bracket(e.value) + " (certified)");
    out.lines.push_back("perron_root = " + fmt_bracket(e.rho.bracket) +
                        (e.rho.exact_zero ? " exact_zero" : ""));
    out.lines.push_back("width = " + fmt_value(e.value.width()));
}

void run_word_count(const Scenario& sc, const ScenarioTask& t, TaskOutcome& out) {
    const SystemDescriptor& sys = sc.registry.system(t.system);
    const Sft* sft = std::get_if<Sft>(&sys.system);
    if (!sft) throw std::invalid_argument("op word_count needs an SFT system");
    out.lines.push_back("n = " + std::to_string(t.n));
    out.lines.push_back("count = " + word_count(*sft, t.n).str() + " (certified)");
}

void run_bowen(const Scenario& sc, const ScenarioTask& t, TaskOutcome& out) {
    const SystemDescriptor& sys = sc.registry.system(t.system);
    const MetricSystemSpec* ms = std::get_if<MetricSystemSpec>(&sys.system);
    if (!ms) throw std::invalid_argument("op bowen needs a metric system");
    BowenEstimate e = bowen_entropy_estimate(ms->instantiate(), t.horizon, t.epsilon, t.grid);
    out.lines.push_back("span_prev = " + std::to_string(e.span_prev) + " span_last = " +
                        std::to_string(e.span_last));
    out.lines.push_back("rate = " + fmt_value(e.rate_last) + " (NUMERIC)");
    out.lines.push_back("slope = " + fmt_value(e.increment) + " (NUMERIC)");
    out.lines.push_back("diagnostic = " + fmt_value(e.diagnostic) +
                        (e.diagnostic_decreasing() ? " decreasing" : " increasing"));
}

void run_h_cr(const Scenario& sc, const ScenarioTask& t, const RunFlags& flags, TaskOutcome& out) {
    HcrResult r = h_cr(sc.registry.system(t.system), t.candidates, flags.eval);
    for (const CandidateOutcome& c : r.candidates) {
        if (sc.registry.system(t.system).kind_name() == std::string("sft") && c.accepted)
            continue;  // auto-enumerated subsets are summarized, not listed
        out.lines.push_back("candidate " + c.description + ": " +
                            (c.accepted ? "accepted, h_top = " + fmt_entropy_value(c.value)
                                        : "rejected (" + c.reason + ")"));
    }
    out.lines.push_back("h_cr = " + fmt_entropy_value(r.value));
    if (!r.note.empty()) out.lines.push_back("note: " + r.note);
}

void run_verify_cover(const Scenario& sc, const ScenarioTask& t, const RunFlags& flags,
                      TaskOutcome& out) {
    CoverVerification v =
        verify_etale_cover(sc.registry, sc.registry.cover(t.cover), flags.eval);
    out.lines.push_back(std::string("verdict = ") + verdict_name(v.verdict));
    if (!v.reason.empty()) out.lines.push_back("reason: " + v.reason);
    if (v.fiber_bound) out.lines.push_back("fiber_bound = " + std::to_string(*v.fiber_bound));
    for (const std::string& n : v.notes) out.lines.push_back("note: " + n);
}

void run_h_omega(const Scenario& sc, const ScenarioTask& t, const RunFlags& flags,
                 TaskOutcome& out) {
    EntropyReport r =
        h_omega(sc.registry, t.system, t.candidates, t.family, flags.eval, t.family_complete);
    out.lines.push_back("h_cr = " + fmt_entropy_value(r.h_cr_value));
    for (const FamilyEvaluation& f : r.family) {
        std::string line = "family " + f.compactification_id + ": " + verdict_name(f.cover_verdict);
        if (f.excluded)
            line += " excluded (" + f.note + ")";
        else
            line += " h_top(host) = " + fmt_entropy_value(f.host_value) +
                    (f.note.empty() ? "" : " [" + f.note + "]");
        out.lines.push_back(line);
    }
    out.lines.push_back("value = " + fmt_entropy_value(r.value));
    out.lines.push_back(std::string("exact = ") + (r.exact ? "true" : "false"));
    for (const std::string& c : r.caveats) out.lines.push_back("caveat: " + c);
}

void run_gamma_entropy(const Scenario& sc, const ScenarioTask& t, const RunFlags& flags,
                       TaskOutcome& out) {
    GammaEntropy g = gamma_infinity_entropy(sc.correspondences.at(t.correspondence),
                                            flags.eval.perron);
    if (g.empty) out.lines.push_back("empty = true (entropy defined as 0)");
    out.lines.push_back("orbit_shift_entropy = " + fmt_bracket(g.value) + " (certified)");
}

void run_degrees(const Scenario& sc, const ScenarioTask& t, TaskOutcome& out) {
    const MonomialMap& m = sc.monomials.at(t.monomial);
    DegreeProfile p = monomial_dynamical_degrees(m);
    for (std::size_t i = 0; i < p.lambdas.size(); ++i) {
        std::string line = "lambda_" + std::to_string(i) + " = " + fmt_bracket(p.lambdas[i]) +
                           (p.exact[i] ? " (certified exact)" : " (certified)");
        if (i < p.oracle_gap.size())
            line += " growth_gap = " + fmt_value(p.oracle_gap[i]);
        out.lines.push_back(line);
    }
    out.lines.push_back("det = " + p.det.str());
}

WeightedFamilyEntry build_pullback_entry(const Scenario& sc, const PullbackSpec& p,
                                         const RunFlags& flags) {
    if (p.declared())
        return declared_entry(make_correspondence(p.declared_multiplicity), p.declared_degree,
                              p.id, flags.eval.perron);
    return pullback_correspondence(sc.correspondences.at(p.correspondence), p.fiber_map,
                                   flags.eval.perron);
}

void run_h_et(const Scenario& sc, const ScenarioTask& t, const RunFlags& flags, TaskOutcome& out) {
    const FiniteCorrespondence& base = sc.correspondences.at(t.correspondence);
    std::vector<WeightedFamilyEntry> family;
    family.push_back(identity_entry(base, flags.eval.perron));
    for (const std::string& pid : t.pullbacks)
        family.push_back(build_pullback_entry(sc, sc.pullbacks.at(pid), flags));
    HEtResult r = h_et(family);
    for (const WeightedFamilyEntry& e : family)
        out.lines.push_back("entry " + e.description + ": h_top = " + fmt_bracket(e.upstairs.value) +
                            " degree = " + std::to_string(e.degree) + " weighted = " +
                            fmt_bracket(e.weighted_value));
    out.lines.push_back("h_et = " + fmt_bracket(r.value) + " (certified)");
    out.lines.push_back("argmax = " + family[r.argmax].description);
    if (!t.monomial.empty()) {
        DegreeProfile prof = monomial_dynamical_degrees(sc.monomials.at(t.monomial));
        GapReport gap = gromov_yomdin_gap(prof, r.value);
        out.lines.push_back("degree_bound = " + fmt_bracket(prof.max_log()) + " gap = " +
                            fmt_bracket(gap.gap) + " at p = " + std::to_string(gap.achieving_p));
        out.lines.push_back(std::string("within_bound = ") + (gap.within_bound ? "true" : "false"));
        if (gap.inconsistency) out.lines.push_back("INCONSISTENCY: " + gap.note);
    }
}

std::string task_heading(const ScenarioTask& t, std::size_t index) {
    std::string h = "task " + std::to_string(index + 1) + ": " + t.op;
    if (!t.system.empty()) h += " system=" + t.system;
    if (!t.cover.empty()) h += " cover=" + t.cover;
    if (!t.correspondence.empty()) h += " correspondence=" + t.correspondence;
    if (!t.monomial.empty()) h += " monomial=" + t.monomial;
    return h;
}

}  // namespace

bool RunReport::any_failed() const {
    for (const TaskOutcome& t : tasks)
        if (t.failed) return true;
    return false;
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "entropy workbench " << kWorkbenchVersion << "\n";
    os << "seed = " << seed << "\n";
    for (const TaskOutcome& t : tasks) {
        os << "-- " << t.heading << "\n";
        if (t.failed) os << "FAILED: " << t.error << "\n";
        for (const std::string& l : t.lines) os << l << "\n";
    }
    os << "status = " << (any_failed() ? "failed" : "ok") << "\n";
    return os.str();
}

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = kWorkbenchVersion;
    j["seed"] = seed;
    j["tasks"] = nlohmann::ordered_json::array();
    for (const TaskOutcome& t : tasks) {
        nlohmann::ordered_json tj;
        tj["heading"] = t.heading;
        tj["failed"] = t.failed;
        if (t.failed) tj["error"] = t.error;
        tj["lines"] = t.lines;
        j["tasks"].push_back(std::move(tj));
    }
    j["status"] = any_failed() ? "failed" : "ok";
    return j.dump(2) + "\n";
}

RunReport run_scenario(const Scenario& scenario, const RunFlags& flags) {
    RunReport report;
    report.seed = flags.seed;
    RunFlags f = flags;
    f.eval.seed = flags.seed;
    for (std::size_t i = 0; i < scenario.tasks.size(); ++i) {
        const ScenarioTask& t = scenario.tasks[i];
        TaskOutcome out;
        out.heading = task_heading(t, i);
        try {
            if (t.op == "entropy") run_entropy(scenario, t, f, out);
            else if (t.op == "word_count") run_word_count(scenario, t, out);
            else if (t.op == "bowen") run_bowen(scenario, t, out);
            else if (t.op == "h_cr") run_h_cr(scenario, t, f, out);
            else if (t.op == "verify_cover") run_verify_cover(scenario, t, f, out);
            else if (t.op == "h_omega") run_h_omega(scenario, t, f, out);
            else if (t.op == "gamma_entropy") run_gamma_entropy(scenario, t, f, out);
            else if (t.op == "degrees") run_degrees(scenario, t, out);
            else if (t.op == "h_et") run_h_et(scenario, t, f, out);
            else throw std::invalid_argument("unknown op '" + t.op + "'");
        } catch (const std::exception& e) {
            out.failed = true;
            out.error = e.what();
        }
        report.tasks.push_back(std::move(out));
    }
    return report;
}

}  // namespace etale
