#include "etale/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace etale {

namespace {

std::string trim_ws(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        std::string t = trim_ws(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

long parse_long(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        long r = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return r;
    } catch (const std::exception&) {
        throw ParseError(line, "key '" + key + "': expected an integer, got '" + v + "'");
    }
}

double parse_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return r;
    } catch (const std::exception&) {
        throw ParseError(line, "key '" + key + "': expected a number, got '" + v + "'");
    }
}

Rat parse_rat(const std::string& v, int line, const std::string& key) {
    try {
        return Rat(v);
    } catch (const std::exception&) {
        throw ParseError(line, "key '" + key + "': expected a rational, got '" + v + "'");
    }
}

IntMatrix parse_matrix_at(const std::string& v, int line, const std::string& key) {
    try {
        return parse_matrix(v);
    } catch (const std::exception& e) {
        throw ParseError(line, "key '" + key + "': " + e.what());
    }
}

// words are single digits concatenated ("010") or dot-separated ("0.10.2")
std::vector<int> parse_word(const std::string& w, int line) {
    std::vector<int> out;
    if (w.find('.') != std::string::npos) {
        for (const std::string& p : split(w, '.'))
            out.push_back(static_cast<int>(parse_long(p, line, "word")));
        return out;
    }
    for (char c : w) {
        if (c < '0' || c > '9') throw ParseError(line, "bad word symbol '" + std::string(1, c) + "'");
        out.push_back(c - '0');
    }
    if (out.empty()) throw ParseError(line, "empty word");
    return out;
}

struct Section {
    std::string kind;
    std::string id;
    int line = 0;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> entries;  // line, key, value

    const std::string* find(const std::string& key) const {
        for (const auto& e : entries)
            if (e.second.first == key) return &e.second.second;
        return nullptr;
    }
    int line_of(const std::string& key) const {
        for (const auto& e : entries)
            if (e.second.first == key) return e.first;
        return line;
    }
    std::string require(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw ParseError(line, kind + " section missing required key '" + key + "'");
        return *v;
    }
    void check_keys(std::initializer_list<const char*> allowed) const {
        for (const auto& e : entries) {
            bool ok = false;
            for (const char* k : allowed)
                if (e.second.first == k) ok = true;
            if (!ok)
                throw ParseError(e.first, "unknown key '" + e.second.first + "' in [" + kind + "]");
        }
    }
};

std::vector<Section> lex_sections(const std::string& text) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim_ws(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
            std::string inner = trim_ws(line.substr(1, line.size() - 2));
            auto parts = split(inner, ' ');
            if (parts.empty()) throw ParseError(lineno, "empty section header");
            Section s;
            s.kind = parts[0];
            if (parts.size() > 2) throw ParseError(lineno, "section header has too many tokens");
            if (parts.size() == 2) s.id = parts[1];
            s.line = lineno;
            sections.push_back(std::move(s));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, "unrecognized line (expected section header or key = value)");
        if (sections.empty()) throw ParseError(lineno, "key = value before any section header");
        std::string key = trim_ws(line.substr(0, eq));
        std::string value = trim_ws(line.substr(eq + 1));
        if (key.empty()) throw ParseError(lineno, "empty key");
        sections.back().entries.push_back({lineno, {key, value}});
    }
    return sections;
}

SystemDescriptor parse_system(const Section& s) {
    SystemDescriptor d;
    d.id = s.id;
    std::string kind = s.require("kind");
    if (kind == "sft") {
        s.check_keys({"kind", "matrix", "sided"});
        IntMatrix m = parse_matrix_at(s.require("matrix"), s.line_of("matrix"), "matrix");
        Sided sided = Sided::One;
        if (const std::string* v = s.find("sided")) {
            if (*v == "one") sided = Sided::One;
            else if (*v == "two") sided = Sided::Two;
            else throw ParseError(s.line_of("sided"), "sided must be 'one' or 'two'");
        }
        try {
            d.system = make_sft(std::move(m), sided);
        } catch (const std::exception& e) {
            throw ParseError(s.line_of("matrix"), e.what());
        }
    } else if (kind == "metric") {
        s.check_keys({"kind", "builtin", "a", "b"});
        MetricSystemSpec spec;
        spec.builtin = s.require("builtin");
        if (const std::string* v = s.find("a")) spec.a = parse_double(*v, s.line_of("a"), "a");
        if (const std::string* v = s.find("b")) spec.b = parse_double(*v, s.line_of("b"), "b");
        try {
            spec.instantiate();
        } catch (const std::exception& e) {
            throw ParseError(s.line_of("builtin"), e.what());
        }
        d.system = std::move(spec);
    } else if (kind == "affine") {
        s.check_keys({"kind", "domain", "a", "b"});
        AffineSystem a;
        std::string dom = s.require("domain");
        if (dom == "N") a.domain = AffineDomain::Naturals;
        else if (dom == "Z") a.domain = AffineDomain::Integers;
        else if (dom == "R") a.domain = AffineDomain::Reals;
        else throw ParseError(s.line_of("domain"), "domain must be N, Z or R");
        if (const std::string* v = s.find("a")) a.a = parse_rat(*v, s.line_of("a"), "a");
        if (const std::string* v = s.find("b")) a.b = parse_rat(*v, s.line_of("b"), "b");
        if (auto err = validate_affine(a)) throw ParseError(s.line, *err);
        d.system = a;
    } else if (kind == "finitetop") {
        s.check_keys({"kind", "points", "opens", "map"});
        FiniteTopSystem sys;
        sys.space.points = static_cast<int>(parse_long(s.require("points"), s.line_of("points"), "points"));
        std::string opens = s.require("opens");
        if (opens == "all") {
            if (sys.space.points > 16) throw ParseError(s.line_of("opens"), "discrete topology supported up to 16 points");
            sys.space = discrete_topology(sys.space.points);
        } else if (opens == "trivial") {
            sys.space = indiscrete_topology(sys.space.points);
        } else {
            for (const std::string& setstr : split(opens, ';')) {
                std::string t = trim_ws(setstr);
                if (t.empty() || t.front() != '{' || t.back() != '}')
                    throw ParseError(s.line_of("opens"), "open sets must be {..} or 'all'/'trivial'");
                std::set<int> o;
                for (const std::string& p : split(t.substr(1, t.size() - 2), ','))
                    o.insert(static_cast<int>(parse_long(p, s.line_of("opens"), "opens")));
                sys.space.opens.push_back(std::move(o));
            }
        }
        for (const std::string& p : split(s.require("map"), ' '))
            sys.map.push_back(static_cast<int>(parse_long(p, s.line_of("map"), "map")));
        if (auto err = validate_continuous(sys)) throw ParseError(s.line, *err);
        d.system = std::move(sys);
    } else {
        throw ParseError(s.line_of("kind"), "unknown system kind '" + kind + "'");
    }
    return d;
}

CoverSpec parse_cover(const Section& s) {
    CoverSpec c;
    c.id = s.id;
    std::string kind = s.require("kind");
    auto parse_fibers = [&](const std::string& v, int line) {
        if (v == "exact") c.fibers.kind = FiberEvidenceKind::ExactDecision;
        else if (v == "infinite") c.fibers.kind = FiberEvidenceKind::DeclaredInfinite;
        else if (v.rfind("constant:", 0) == 0) {
            c.fibers.kind = FiberEvidenceKind::ConstantG;
            c.fibers.g = static_cast<int>(parse_long(v.substr(9), line, "fibers"));
        } else if (v.rfind("sampled:", 0) == 0) {
            c.fibers.kind = FiberEvidenceKind::Sampled;
            c.fibers.budget = parse_long(v.substr(8), line, "fibers");
        } else {
            throw ParseError(line, "fibers must be exact, infinite, constant:<g> or sampled:<budget>");
        }
    };
    if (kind == "identity") {
        s.check_keys({"kind", "system", "source", "target", "fibers"});
        c.kind = CoverKind::Identity;
        if (const std::string* v = s.find("system")) c.source_id = c.target_id = *v;
        if (const std::string* v = s.find("source")) c.source_id = *v;
        if (const std::string* v = s.find("target")) c.target_id = *v;
    } else if (kind == "mod1") {
        s.check_keys({"kind", "source", "target", "fibers"});
        c.kind = CoverKind::Mod1;
        c.source_id = s.require("source");
        c.target_id = s.require("target");
    } else if (kind == "group_extension") {
        s.check_keys({"kind", "base", "g", "cocycle", "fibers"});
        c.kind = CoverKind::GroupExtension;
        c.target_id = s.require("base");
        c.g = static_cast<int>(parse_long(s.require("g"), s.line_of("g"), "g"));
        if (const std::string* v = s.find("cocycle")) {
            for (const std::string& entry : split(*v, ',')) {
                std::size_t gt = entry.find('>');
                std::size_t colon = entry.find(':');
                if (gt == std::string::npos || colon == std::string::npos || colon < gt)
                    throw ParseError(s.line_of("cocycle"), "cocycle entries look like s>t:v");
                int from = static_cast<int>(parse_long(trim_ws(entry.substr(0, gt)), s.line_of("cocycle"), "cocycle"));
                int to = static_cast<int>(parse_long(trim_ws(entry.substr(gt + 1, colon - gt - 1)), s.line_of("cocycle"), "cocycle"));
                int val = static_cast<int>(parse_long(trim_ws(entry.substr(colon + 1)), s.line_of("cocycle"), "cocycle"));
                c.cocycle[{from, to}] = val;
            }
        }
    } else if (kind == "higher_block") {
        s.check_keys({"kind", "base", "k", "fibers"});
        c.kind = CoverKind::HigherBlock;
        c.target_id = s.require("base");
        c.k = static_cast<int>(parse_long(s.require("k"), s.line_of("k"), "k"));
    } else if (kind == "code") {
        s.check_keys({"kind", "source", "target", "memory", "anticipation", "block_map", "fibers"});
        c.kind = CoverKind::Code;
        c.source_id = s.require("source");
        c.target_id = s.require("target");
        if (const std::string* v = s.find("memory"))
            c.memory = static_cast<int>(parse_long(*v, s.line_of("memory"), "memory"));
        if (const std::string* v = s.find("anticipation"))
            c.anticipation = static_cast<int>(parse_long(*v, s.line_of("anticipation"), "anticipation"));
        for (const std::string& entry : split(s.require("block_map"), ',')) {
            std::size_t colon = entry.find(':');
            if (colon == std::string::npos)
                throw ParseError(s.line_of("block_map"), "block_map entries look like word:symbol");
            std::vector<int> w = parse_word(trim_ws(entry.substr(0, colon)), s.line_of("block_map"));
            int sym = static_cast<int>(parse_long(trim_ws(entry.substr(colon + 1)), s.line_of("block_map"), "block_map"));
            c.block_map[w] = sym;
        }
    } else {
        throw ParseError(s.line_of("kind"), "unknown cover kind '" + kind + "'");
    }
    if (const std::string* v = s.find("fibers")) parse_fibers(*v, s.line_of("fibers"));
    return c;
}

CompactificationSpec parse_compactification(const Section& s) {
    s.check_keys({"cover", "host", "density", "host_entropy", "estimator", "horizon", "epsilon", "grid"});
    CompactificationSpec c;
    c.id = s.id;
    c.cover_id = s.require("cover");
    c.host_id = s.require("host");
    if (const std::string* v = s.find("density")) {
        if (*v == "exact") c.density = CompactificationSpec::Density::Exact;
        else if (*v == "declared") c.density = CompactificationSpec::Density::Declared;
        else throw ParseError(s.line_of("density"), "density must be exact or declared");
    }
    if (const std::string* v = s.find("host_entropy")) {
        if (*v == "certified") c.host_entropy = CompactificationSpec::HostEntropy::Certified;
        else if (*v == "bowen") c.host_entropy = CompactificationSpec::HostEntropy::Bowen;
        else if (v->rfind("declared:", 0) == 0) {
            c.host_entropy = CompactificationSpec::HostEntropy::DeclaredValue;
            c.declared_value = parse_double(v->substr(9), s.line_of("host_entropy"), "host_entropy");
        } else {
            throw ParseError(s.line_of("host_entropy"),
                             "host_entropy must be certified, bowen or declared:<value>");
        }
    }
    if (const std::string* v = s.find("estimator")) {
        if (*v == "slope") c.estimator = CompactificationSpec::Estimator::Slope;
        else if (*v == "rate") c.estimator = CompactificationSpec::Estimator::Rate;
        else throw ParseError(s.line_of("estimator"), "estimator must be slope or rate");
    }
    if (const std::string* v = s.find("horizon"))
        c.horizon = static_cast<int>(parse_long(*v, s.line_of("horizon"), "horizon"));
    if (const std::string* v = s.find("epsilon"))
        c.epsilon = parse_double(*v, s.line_of("epsilon"), "epsilon");
    if (const std::string* v = s.find("grid")) c.grid = parse_double(*v, s.line_of("grid"), "grid");
    return c;
}

PullbackSpec parse_pullback(const Section& s) {
    s.check_keys({"correspondence", "map", "multiplicity", "degree"});
    PullbackSpec p;
    p.id = s.id;
    p.correspondence = s.require("correspondence");
    if (const std::string* v = s.find("map")) {
        for (const std::string& t : split(*v, ' '))
            p.fiber_map.push_back(static_cast<int>(parse_long(t, s.line_of("map"), "map")));
    }
    if (const std::string* v = s.find("degree")) {
        p.declared_degree = parse_long(*v, s.line_of("degree"), "degree");
        if (p.declared_degree < 1) throw ParseError(s.line_of("degree"), "degree must be >= 1");
        if (const std::string* m = s.find("multiplicity"))
            p.declared_multiplicity = parse_matrix_at(*m, s.line_of("multiplicity"), "multiplicity");
        else
            throw ParseError(s.line, "declared pullback entries need an explicit multiplicity");
    } else if (p.fiber_map.empty()) {
        throw ParseError(s.line, "pullback needs either map = ... or degree+multiplicity");
    }
    return p;
}

CompactCandidate parse_candidate(const std::string& text, int line) {
    auto toks = split(text, ' ');
    if (toks.empty()) throw ParseError(line, "empty candidate");
    CompactCandidate c;
    if (toks[0] == "whole") {
        c.kind = CompactCandidate::Kind::WholeSpace;
    } else if (toks[0] == "interval") {
        if (toks.size() != 3) throw ParseError(line, "interval candidate: interval <lo> <hi>");
        c.kind = CompactCandidate::Kind::IntervalRange;
        c.lo = parse_rat(toks[1], line, "candidates");
        c.hi = parse_rat(toks[2], line, "candidates");
    } else if (toks[0] == "finite") {
        c.kind = CompactCandidate::Kind::FinitePointSet;
        for (std::size_t i = 1; i < toks.size(); ++i)
            c.points.push_back(parse_rat(toks[i], line, "candidates"));
    } else if (toks[0] == "subset") {
        c.kind = CompactCandidate::Kind::SymbolSubset;
        for (std::size_t i = 1; i < toks.size(); ++i)
            c.symbols.push_back(static_cast<int>(parse_long(toks[i], line, "candidates")));
    } else if (toks[0] == "points") {
        c.kind = CompactCandidate::Kind::PointSubset;
        for (std::size_t i = 1; i < toks.size(); ++i)
            c.symbols.push_back(static_cast<int>(parse_long(toks[i], line, "candidates")));
    } else {
        throw ParseError(line, "unknown candidate kind '" + toks[0] +
                                   "' (expected whole, interval, finite, subset or points)");
    }
    return c;
}

ScenarioTask parse_task(const Section& s) {
    s.check_keys({"op", "system", "cover", "correspondence", "monomial", "family",
                  "family_complete", "candidates", "pullbacks", "n", "horizon", "epsilon",
                  "grid", "estimator"});
    ScenarioTask t;
    t.line = s.line;
    t.op = s.require("op");
    const std::vector<std::string> ops = {"h_omega", "h_cr", "entropy", "word_count", "bowen",
                                          "verify_cover", "gamma_entropy", "degrees", "h_et"};
    if (std::find(ops.begin(), ops.end(), t.op) == ops.end())
        throw ParseError(s.line_of("op"), "unknown op '" + t.op + "'");
    if (const std::string* v = s.find("system")) t.system = *v;
    if (const std::string* v = s.find("cover")) t.cover = *v;
    if (const std::string* v = s.find("correspondence")) t.correspondence = *v;
    if (const std::string* v = s.find("monomial")) t.monomial = *v;
    if (const std::string* v = s.find("family")) t.family = split(*v, ',');
    if (const std::string* v = s.find("family_complete")) {
        if (*v == "true") t.family_complete = true;
        else if (*v == "false") t.family_complete = false;
        else throw ParseError(s.line_of("family_complete"), "family_complete must be true or false");
    }
    if (const std::string* v = s.find("candidates"))
        for (const std::string& c : split(*v, ';'))
            t.candidates.push_back(parse_candidate(c, s.line_of("candidates")));
    if (const std::string* v = s.find("pullbacks")) t.pullbacks = split(*v, ',');
    if (const std::string* v = s.find("n")) t.n = parse_long(*v, s.line_of("n"), "n");
    if (const std::string* v = s.find("horizon"))
        t.horizon = static_cast<int>(parse_long(*v, s.line_of("horizon"), "horizon"));
    if (const std::string* v = s.find("epsilon")) t.epsilon = parse_double(*v, s.line_of("epsilon"), "epsilon");
    if (const std::string* v = s.find("grid")) t.grid = parse_double(*v, s.line_of("grid"), "grid");
    if (const std::string* v = s.find("estimator")) {
        if (*v == "slope") t.estimator = CompactificationSpec::Estimator::Slope;
        else if (*v == "rate") t.estimator = CompactificationSpec::Estimator::Rate;
        else throw ParseError(s.line_of("estimator"), "estimator must be slope or rate");
    }
    // candidates inherit the task's metric estimator parameters
    for (CompactCandidate& c : t.candidates) {
        c.horizon = t.horizon;
        c.epsilon = t.epsilon;
        c.grid = t.grid;
        c.estimator = t.estimator;
    }
    return t;
}

void validate_references(const Scenario& sc) {
    auto need_system = [&](const std::string& id, int line) {
        if (!sc.registry.systems.count(id))
            throw ParseError(line, "reference to undefined system '" + id + "'");
    };
    for (const auto& [id, c] : sc.registry.covers) {
        if (!c.constructs_source()) need_system(c.source_id, 0);
        need_system(c.target_id, 0);
    }
    for (const auto& [id, comp] : sc.registry.compactifications) {
        if (!sc.registry.covers.count(comp.cover_id))
            throw ParseError(0, "compactification '" + id + "' references undefined cover '" +
                                    comp.cover_id + "'");
        need_system(comp.host_id, 0);
    }
    for (const auto& [id, p] : sc.pullbacks)
        if (!sc.correspondences.count(p.correspondence))
            throw ParseError(0, "pullback '" + id + "' references undefined correspondence '" +
                                    p.correspondence + "'");
    for (const ScenarioTask& t : sc.tasks) {
        if (!t.system.empty()) need_system(t.system, t.line);
        if (!t.cover.empty() && !sc.registry.covers.count(t.cover))
            throw ParseError(t.line, "reference to undefined cover '" + t.cover + "'");
        if (!t.correspondence.empty() && !sc.correspondences.count(t.correspondence))
            throw ParseError(t.line, "reference to undefined correspondence '" + t.correspondence + "'");
        if (!t.monomial.empty() && !sc.monomials.count(t.monomial))
            throw ParseError(t.line, "reference to undefined monomial '" + t.monomial + "'");
        for (const std::string& f : t.family)
            if (!sc.registry.compactifications.count(f))
                throw ParseError(t.line, "reference to undefined compactification '" + f + "'");
        for (const std::string& p : t.pullbacks)
            if (!sc.pullbacks.count(p))
                throw ParseError(t.line, "reference to undefined pullback '" + p + "'");
        if ((t.op == "h_omega" || t.op == "h_cr" || t.op == "entropy" || t.op == "word_count" ||
             t.op == "bowen") && t.system.empty())
            throw ParseError(t.line, "op " + t.op + " needs a system");
        if (t.op == "verify_cover" && t.cover.empty())
            throw ParseError(t.line, "op verify_cover needs a cover");
        if ((t.op == "gamma_entropy" || t.op == "h_et") && t.correspondence.empty())
            throw ParseError(t.line, "op " + t.op + " needs a correspondence");
        if (t.op == "degrees" && t.monomial.empty())
            throw ParseError(t.line, "op degrees needs a monomial");
        if (t.op == "word_count" && t.n < 1)
            throw ParseError(t.line, "op word_count needs n >= 1");
    }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    auto check_new_id = [&](const std::string& kind, const std::string& id, int line) {
        if (id.empty()) throw ParseError(line, kind + " section needs an id");
        bool dup = sc.registry.systems.count(id) || sc.registry.covers.count(id) ||
                   sc.registry.compactifications.count(id) || sc.correspondences.count(id) ||
                   sc.monomials.count(id) || sc.pullbacks.count(id);
        if (dup) throw ParseError(line, "duplicate id '" + id + "'");
    };
    for (const Section& s : lex_sections(text)) {
        if (s.kind == "system") {
            check_new_id(s.kind, s.id, s.line);
            sc.registry.systems[s.id] = parse_system(s);
        } else if (s.kind == "cover") {
            check_new_id(s.kind, s.id, s.line);
            sc.registry.covers[s.id] = parse_cover(s);
        } else if (s.kind == "compactification") {
            check_new_id(s.kind, s.id, s.line);
            sc.registry.compactifications[s.id] = parse_compactification(s);
        } else if (s.kind == "correspondence") {
            check_new_id(s.kind, s.id, s.line);
            s.check_keys({"multiplicity"});
            try {
                sc.correspondences[s.id] = make_correspondence(
                    parse_matrix_at(s.require("multiplicity"), s.line_of("multiplicity"), "multiplicity"));
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw ParseError(s.line, e.what());
            }
        } else if (s.kind == "monomial") {
            check_new_id(s.kind, s.id, s.line);
            s.check_keys({"matrix"});
            try {
                sc.monomials.emplace(
                    s.id, make_monomial_map(parse_matrix_at(s.require("matrix"), s.line_of("matrix"), "matrix")));
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw ParseError(s.line, e.what());
            }
        } else if (s.kind == "pullback") {
            check_new_id(s.kind, s.id, s.line);
            sc.pullbacks[s.id] = parse_pullback(s);
        } else if (s.kind == "task") {
            if (!s.id.empty()) throw ParseError(s.line, "task sections take no id");
            sc.tasks.push_back(parse_task(s));
        } else {
            throw ParseError(s.line, "unknown section kind '" + s.kind + "'");
        }
    }
    try {
        materialize_cover_sources(sc.registry);
    } catch (const std::exception& e) {
        throw ParseError(0, e.what());
    }
    validate_references(sc);
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string rat_text(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

void serialize_system(std::ostream& os, const SystemDescriptor& d) {
    os << "[system " << d.id << "]\n";
    if (const auto* sft = std::get_if<Sft>(&d.system)) {
        os << "kind = sft\n";
        os << "sided = " << (sft->sided == Sided::One ? "one" : "two") << "\n";
        os << "matrix = " << format_matrix(sft->transition) << "\n";
    } else if (const auto* ms = std::get_if<MetricSystemSpec>(&d.system)) {
        os << "kind = metric\nbuiltin = " << ms->builtin << "\n";
        os << "a = " << fmt_double(ms->a) << "\nb = " << fmt_double(ms->b) << "\n";
    } else if (const auto* a = std::get_if<AffineSystem>(&d.system)) {
        os << "kind = affine\ndomain = "
           << (a->domain == AffineDomain::Naturals ? "N"
                                                   : a->domain == AffineDomain::Integers ? "Z" : "R")
           << "\n";
        os << "a = " << rat_text(a->a) << "\nb = " << rat_text(a->b) << "\n";
    } else if (const auto* ft = std::get_if<FiniteTopSystem>(&d.system)) {
        os << "kind = finitetop\npoints = " << ft->space.points << "\n";
        os << "opens = ";
        for (std::size_t i = 0; i < ft->space.opens.size(); ++i) {
            if (i) os << "; ";
            os << "{";
            bool first = true;
            for (int p : ft->space.opens[i]) {
                if (!first) os << ",";
                os << p;
                first = false;
            }
            os << "}";
        }
        os << "\nmap =";
        for (int v : ft->map) os << " " << v;
        os << "\n";
    }
    os << "\n";
}

std::string word_text(const std::vector<int>& w) {
    bool multi = std::any_of(w.begin(), w.end(), [](int v) { return v > 9; });
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (multi && i) s += ".";
        s += std::to_string(w[i]);
    }
    return s;
}

void serialize_cover(std::ostream& os, const CoverSpec& c) {
    os << "[cover " << c.id << "]\n";
    switch (c.kind) {
        case CoverKind::Identity:
            os << "kind = identity\nsource = " << c.source_id << "\ntarget = " << c.target_id << "\n";
            break;
        case CoverKind::Mod1:
            os << "kind = mod1\nsource = " << c.source_id << "\ntarget = " << c.target_id << "\n";
            break;
        case CoverKind::GroupExtension: {
            os << "kind = group_extension\nbase = " << c.target_id << "\ng = " << c.g << "\n";
            os << "cocycle = ";
            bool first = true;
            for (const auto& [e, v] : c.cocycle) {
                if (!first) os << ", ";
                os << e.first << ">" << e.second << ":" << v;
                first = false;
            }
            os << "\n";
            break;
        }
        case CoverKind::HigherBlock:
            os << "kind = higher_block\nbase = " << c.target_id << "\nk = " << c.k << "\n";
            break;
        case CoverKind::Code: {
            os << "kind = code\nsource = " << c.source_id << "\ntarget = " << c.target_id << "\n";
            os << "memory = " << c.memory << "\nanticipation = " << c.anticipation << "\n";
            os << "block_map = ";
            bool first = true;
            for (const auto& [w, sym] : c.block_map) {
                if (!first) os << ", ";
                os << word_text(w) << ":" << sym;
                first = false;
            }
            os << "\n";
            break;
        }
    }
    switch (c.fibers.kind) {
        case FiberEvidenceKind::ExactDecision: os << "fibers = exact\n"; break;
        case FiberEvidenceKind::ConstantG: os << "fibers = constant:" << c.fibers.g << "\n"; break;
        case FiberEvidenceKind::Sampled: os << "fibers = sampled:" << c.fibers.budget << "\n"; break;
        case FiberEvidenceKind::DeclaredInfinite: os << "fibers = infinite\n"; break;
    }
    os << "\n";
}

void serialize_compactification(std::ostream& os, const CompactificationSpec& c) {
    os << "[compactification " << c.id << "]\n";
    os << "cover = " << c.cover_id << "\nhost = " << c.host_id << "\n";
    os << "density = " << (c.density == CompactificationSpec::Density::Exact ? "exact" : "declared")
       << "\n";
    switch (c.host_entropy) {
        case CompactificationSpec::HostEntropy::Certified: os << "host_entropy = certified\n"; break;
        case CompactificationSpec::HostEntropy::Bowen: os << "host_entropy = bowen\n"; break;
        case CompactificationSpec::HostEntropy::DeclaredValue:
            os << "host_entropy = declared:" << fmt_double(c.declared_value) << "\n";
            break;
    }
    os << "estimator = " << (c.estimator == CompactificationSpec::Estimator::Slope ? "slope" : "rate")
       << "\n";
    os << "horizon = " << c.horizon << "\nepsilon = " << fmt_double(c.epsilon) << "\ngrid = "
       << fmt_double(c.grid) << "\n\n";
}

std::string candidate_text(const CompactCandidate& c) {
    switch (c.kind) {
        case CompactCandidate::Kind::WholeSpace: return "whole";
        case CompactCandidate::Kind::IntervalRange:
            return "interval " + rat_text(c.lo) + " " + rat_text(c.hi);
        case CompactCandidate::Kind::FinitePointSet: {
            std::string s = "finite";
            for (const Rat& p : c.points) s += " " + rat_text(p);
            return s;
        }
        case CompactCandidate::Kind::SymbolSubset: {
            std::string s = "subset";
            for (int v : c.symbols) s += " " + std::to_string(v);
            return s;
        }
        case CompactCandidate::Kind::PointSubset: {
            std::string s = "points";
            for (int v : c.symbols) s += " " + std::to_string(v);
            return s;
        }
    }
    return "whole";
}

void serialize_task(std::ostream& os, const ScenarioTask& t) {
    os << "[task]\nop = " << t.op << "\n";
    if (!t.system.empty()) os << "system = " << t.system << "\n";
    if (!t.cover.empty()) os << "cover = " << t.cover << "\n";
    if (!t.correspondence.empty()) os << "correspondence = " << t.correspondence << "\n";
    if (!t.monomial.empty()) os << "monomial = " << t.monomial << "\n";
    if (!t.family.empty()) {
        os << "family = ";
        for (std::size_t i = 0; i < t.family.size(); ++i) os << (i ? ", " : "") << t.family[i];
        os << "\n";
    }
    if (t.family_complete) os << "family_complete = true\n";
    if (!t.candidates.empty()) {
        os << "candidates = ";
        for (std::size_t i = 0; i < t.candidates.size(); ++i)
            os << (i ? "; " : "") << candidate_text(t.candidates[i]);
        os << "\n";
    }
    if (!t.pullbacks.empty()) {
        os << "pullbacks = ";
        for (std::size_t i = 0; i < t.pullbacks.size(); ++i) os << (i ? ", " : "") << t.pullbacks[i];
        os << "\n";
    }
    if (t.n > 0) os << "n = " << t.n << "\n";
    if (t.op == "bowen" || t.op == "h_cr" || t.op == "h_omega") {
        os << "horizon = " << t.horizon << "\nepsilon = " << fmt_double(t.epsilon) << "\ngrid = "
           << fmt_double(t.grid) << "\n";
        os << "estimator = "
           << (t.estimator == CompactificationSpec::Estimator::Slope ? "slope" : "rate") << "\n";
    }
    os << "\n";
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream os;
    for (const auto& [id, d] : s.registry.systems) {
        if (id.size() > 7 && id.substr(id.size() - 7) == ".source" &&
            s.registry.covers.count(id.substr(0, id.size() - 7)))
            continue;  // materialized cover sources are reconstructed on parse
        serialize_system(os, d);
    }
    for (const auto& [id, c] : s.correspondences) {
        os << "[correspondence " << id << "]\nmultiplicity = " << format_matrix(c.multiplicity)
           << "\n\n";
    }
    for (const auto& [id, m] : s.monomials)
        os << "[monomial " << id << "]\nmatrix = " << format_matrix(m.m) << "\n\n";
    for (const auto& [id, p] : s.pullbacks) {
        os << "[pullback " << id << "]\ncorrespondence = " << p.correspondence << "\n";
        if (p.declared()) {
            os << "multiplicity = " << format_matrix(p.declared_multiplicity) << "\n";
            os << "degree = " << p.declared_degree << "\n";
        } else {
            os << "map =";
            for (int v : p.fiber_map) os << " " << v;
            os << "\n";
        }
        os << "\n";
    }
    for (const auto& [id, c] : s.registry.covers) serialize_cover(os, c);
    for (const auto& [id, c] : s.registry.compactifications) serialize_compactification(os, c);
    for (const ScenarioTask& t : s.tasks) serialize_task(os, t);
    return os.str();
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
    auto systems_equal = [](const SystemDescriptor& x, const SystemDescriptor& y) {
        return x.id == y.id && x.system == y.system;
    };
    if (a.registry.systems.size() != b.registry.systems.size()) return false;
    for (const auto& [id, d] : a.registry.systems) {
        auto it = b.registry.systems.find(id);
        if (it == b.registry.systems.end() || !systems_equal(d, it->second)) return false;
    }
    if (!(a.registry.covers == b.registry.covers)) return false;
    if (!(a.registry.compactifications == b.registry.compactifications)) return false;
    if (a.correspondences.size() != b.correspondences.size()) return false;
    for (const auto& [id, c] : a.correspondences) {
        auto it = b.correspondences.find(id);
        if (it == b.correspondences.end() || !same_matrix(c.multiplicity, it->second.multiplicity))
            return false;
    }
    if (a.monomials.size() != b.monomials.size()) return false;
    for (const auto& [id, m] : a.monomials) {
        auto it = b.monomials.find(id);
        if (it == b.monomials.end() || !same_matrix(m.m, it->second.m)) return false;
    }
    if (a.pullbacks.size() != b.pullbacks.size()) return false;
    for (const auto& [id, p] : a.pullbacks) {
        auto it = b.pullbacks.find(id);
        if (it == b.pullbacks.end()) return false;
        const PullbackSpec& q = it->second;
        if (p.correspondence != q.correspondence || p.fiber_map != q.fiber_map ||
            p.declared_degree != q.declared_degree ||
            !same_matrix(p.declared_multiplicity, q.declared_multiplicity))
            return false;
    }
    return a.tasks == b.tasks;
}

}  // namespace etale
