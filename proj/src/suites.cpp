#include "etale/suites.hpp"

#include <random>
#include <sstream>

namespace etale {

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 step
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {

bool is_irreducible(const Sft& s) {
    if (s.alphabet_size() == 0) return false;
    SccDecomposition d = scc_decompose(s.transition);
    return d.components.size() == 1;
}

}  // namespace

Sft random_irreducible_sft(std::uint64_t seed, int min_states, int max_states) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size_dist(min_states, max_states);
    std::uniform_real_distribution<double> density_dist(0.3, 0.8);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        int n = size_dist(rng);
        double density = density_dist(rng);
        IntMatrix t = IntMatrix::Zero(n, n);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (coin(rng) < density) t(i, j) = 1;
        TrimResult tr = trim(Sft{t, Sided::One});
        if (tr.empty) continue;
        if (is_irreducible(tr.sft)) return tr.sft;
    }
    // fall back to the full shift on 2 symbols; unreachable in practice
    return full_shift(2);
}

namespace {

void record_failure(PartResult& part, const std::string& what) {
    ++part.fail;
    if (part.failures.size() < 5) part.failures.push_back(what);
}

std::map<std::pair<int, int>, int> random_cocycle(const Sft& s, int g, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> val(0, g - 1);
    std::map<std::pair<int, int>, int> c;
    for (int a = 0; a < s.alphabet_size(); ++a)
        for (int b = 0; b < s.alphabet_size(); ++b)
            if (s.edge(a, b)) c[{a, b}] = val(rng);
    return c;
}

}  // namespace

Theorem1Report theorem1_suite(const SuiteOptions& opts) {
    Theorem1Report report;
    report.trials = opts.trials;
    for (int trial = 0; trial < opts.trials; ++trial) {
        std::uint64_t seed = trial_seed(opts.seed, static_cast<std::uint64_t>(trial));
        std::mt19937_64 rng(seed);
        Sft a = random_irreducible_sft(seed, opts.min_states, opts.max_states);
        SftEntropy ha = sft_entropy(a, opts.eval.perron);
        std::string tag = "trial " + std::to_string(trial) + " [" + format_matrix(a.transition) + "]";

        // Part 1 (compact space): the report over a compact shift with the
        // identity compactification must coincide with its entropy bracket.
        {
            Registry reg;
            reg.systems["x"] = SystemDescriptor{"x", a};
            CoverSpec c;
            c.id = "c";
            c.kind = CoverKind::Identity;
            c.source_id = c.target_id = "x";
            reg.covers["c"] = c;
            CompactificationSpec comp;
            comp.id = "z";
            comp.cover_id = "c";
            comp.host_id = "x";
            comp.density = CompactificationSpec::Density::Exact;
            reg.compactifications["z"] = comp;
            EntropyReport r = h_omega(reg, "x", {}, {"z"}, opts.eval, true);
            if (r.value.bracket == ha.value && r.exact)
                ++report.compact_space.pass;
            else
                record_failure(report.compact_space, tag + " report bracket differs from entropy");
        }

        // Part 2 (invariant subspace): every alphabet restriction has
        // entropy at most the ambient entropy (bracket comparison).
        {
            std::uniform_int_distribution<int> pick(0, (1 << a.alphabet_size()) - 2);
            int mask = pick(rng) + 1;
            std::vector<int> symbols;
            for (int i = 0; i < a.alphabet_size(); ++i)
                if (mask & (1 << i)) symbols.push_back(i);
            SubSft sub = sub_sft(a, symbols);
            Bracket sub_value =
                sub.empty ? Bracket::point(0.0) : sft_entropy(sub.sft, opts.eval.perron).value;
            if (sub_value.hi <= ha.value.hi + 1e-12)
                ++report.invariant_subspace.pass;
            else
                record_failure(report.invariant_subspace, tag + " restriction exceeded ambient");
        }

        // Part 3 (special etale cover): finite-to-one SFT covers are proper,
        // and the base entropy never exceeds the cover entropy.
        {
            std::uniform_int_distribution<int> g_dist(2, 4);
            int g = g_dist(rng);
            GroupExtension ext = group_extension(a, g, random_cocycle(a, g, rng), opts.eval.sft_caps);
            SftEntropy hext = sft_entropy(ext.sft, opts.eval.perron);
            if (ha.value.lo <= hext.value.hi + 1e-9)
                ++report.special_etale_cover.pass;
            else
                record_failure(report.special_etale_cover, tag + " base exceeded extension");
        }

        // Part 4 (iterates): h(sigma^n) = n h(sigma) for shifts, via exact
        // matrix powers.
        {
            std::uniform_int_distribution<int> n_dist(2, 5);
            int n = n_dist(rng);
            Sft an{matrix_power(a.transition, static_cast<unsigned long>(n)), a.sided};
            SftEntropy han = sft_entropy(an, opts.eval.perron);
            Bracket scaled = scale(ha.value, static_cast<double>(n));
            bool le = han.value.lo <= scaled.hi + 1e-6;           // h(f^n) <= n h(f)
            bool eq = std::abs(han.value.mid() - scaled.mid()) <= 1e-6;
            if (le && eq)
                ++report.iterates.pass;
            else
                record_failure(report.iterates,
                               tag + " iterate n=" + std::to_string(n) + " mismatch");
        }

        // Part 5 (product): max(h_A, h_B) <= h(A x B) <= h_A + h_B, with
        // equality on the right for shifts.
        {
            Sft b = random_irreducible_sft(trial_seed(seed, 1), opts.min_states, opts.max_states);
            SftEntropy hb = sft_entropy(b, opts.eval.perron);
            Sft prod{kronecker(a.transition, b.transition), a.sided};
            SftEntropy hp = sft_entropy(prod, opts.eval.perron);
            Bracket sum = add(ha.value, hb.value);
            Bracket mx = bracket_max(ha.value, hb.value);
            bool lower_ok = mx.lo <= hp.value.hi + 1e-9;
            bool upper_ok = hp.value.lo <= sum.hi + 1e-9;
            bool sum_eq = std::abs(hp.value.mid() - sum.mid()) <= 1e-6;
            if (lower_ok && upper_ok && sum_eq)
                ++report.product.pass;
            else
                record_failure(report.product, tag + " product bounds failed");
        }
    }
    return report;
}

namespace {

// Periodic orbits of length <= 2 available for puncturing.
std::vector<std::vector<int>> short_orbits(const Sft& s) {
    std::vector<std::vector<int>> orbits;
    for (int i = 0; i < s.alphabet_size(); ++i)
        if (s.edge(i, i)) orbits.push_back({i});
    for (int i = 0; i < s.alphabet_size(); ++i)
        for (int j = i + 1; j < s.alphabet_size(); ++j)
            if (s.edge(i, j) && s.edge(j, i)) orbits.push_back({i, j});
    return orbits;
}

}  // namespace

Conjecture1Report conjecture1_search(const SuiteOptions& opts) {
    Conjecture1Report report;
    report.records.reserve(static_cast<std::size_t>(opts.trials));
    for (int trial = 0; trial < opts.trials; ++trial) {
        std::uint64_t seed = trial_seed(opts.seed, static_cast<std::uint64_t>(trial));
        std::mt19937_64 rng(seed);
        Sft base = random_irreducible_sft(seed, opts.min_states, opts.max_states);
        Conjecture1Record rec;
        rec.seed = seed;
        rec.base_matrix = format_matrix(base.transition);

        std::uniform_int_distribution<int> kind_dist(0, 2);
        int kind = kind_dist(rng);
        auto orbits = short_orbits(base);
        if (kind == 2 && orbits.empty()) kind = 1;

        Sft host;
        if (kind == 0) {
            std::uniform_int_distribution<int> k_dist(2, 3);
            int k = k_dist(rng);
            host = higher_block(base, k, opts.eval.sft_caps).sft;
            rec.cover_kind = "higher_block";
            rec.detail = "k=" + std::to_string(k);
        } else if (kind == 1) {
            std::uniform_int_distribution<int> g_dist(2, 4);
            int g = g_dist(rng);
            auto cocycle = random_cocycle(base, g, rng);
            host = group_extension(base, g, cocycle, opts.eval.sft_caps).sft;
            rec.cover_kind = "group_extension";
            std::ostringstream os;
            os << "g=" << g << " cocycle=";
            for (const auto& [e, v] : cocycle) os << e.first << ">" << e.second << ":" << v << ",";
            rec.detail = os.str();
        } else {
            // puncture: remove a short periodic orbit; the closure of the
            // punctured cover inside the shift is the shift itself
            std::uniform_int_distribution<std::size_t> o_dist(0, orbits.size() - 1);
            const auto& orbit = orbits[o_dist(rng)];
            host = base;
            rec.cover_kind = "puncture";
            std::string d = "removed orbit {";
            for (std::size_t i = 0; i < orbit.size(); ++i)
                d += (i ? "," : "") + std::to_string(orbit[i]);
            rec.detail = d + "}";
        }
        rec.host_matrix = format_matrix(host.transition);
        rec.base_entropy = sft_entropy(base, opts.eval.perron).value;
        rec.host_entropy = sft_entropy(host, opts.eval.perron).value;
        rec.violation = rec.base_entropy.lo > rec.host_entropy.hi;  // certified strict
        if (rec.violation) ++report.violations;
        report.records.push_back(std::move(rec));
    }
    return report;
}

bool replay_conjecture1(const Conjecture1Record& rec, const EvaluationOptions& opts) {
    Sft base = make_sft(parse_matrix(rec.base_matrix));
    Sft host = make_sft(parse_matrix(rec.host_matrix));
    Bracket hb = sft_entropy(base, opts.perron).value;
    Bracket hh = sft_entropy(host, opts.perron).value;
    bool violation = hb.lo > hh.hi;
    return violation == rec.violation && hb.overlaps(rec.base_entropy, 1e-12) &&
           hh.overlaps(rec.host_entropy, 1e-12);
}

}  // namespace etale
