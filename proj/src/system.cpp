#include "etale/system.hpp"

#include <algorithm>

namespace etale {

bool FiniteTopSpace::is_open(const std::set<int>& s) const {
    return std::find(opens.begin(), opens.end(), s) != opens.end();
}

std::optional<std::string> validate_topology(const FiniteTopSpace& t) {
    if (t.points < 0) return "negative point count";
    std::set<int> full;
    for (int i = 0; i < t.points; ++i) full.insert(i);
    for (const auto& o : t.opens)
        for (int p : o)
            if (p < 0 || p >= t.points) return "open set contains out-of-range point";
    if (!t.is_open({})) return "empty set not open";
    if (!t.is_open(full)) return "whole space not open";
    for (const auto& a : t.opens)
        for (const auto& b : t.opens) {
            std::set<int> u = a, inter;
            u.insert(b.begin(), b.end());
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(inter, inter.begin()));
            if (!t.is_open(u)) return "family not closed under union";
            if (!t.is_open(inter)) return "family not closed under intersection";
        }
    return std::nullopt;
}

FiniteTopSpace discrete_topology(int points) {
    FiniteTopSpace t;
    t.points = points;
    const unsigned total = 1u << points;
    for (unsigned mask = 0; mask < total; ++mask) {
        std::set<int> s;
        for (int i = 0; i < points; ++i)
            if (mask & (1u << i)) s.insert(i);
        t.opens.push_back(std::move(s));
    }
    return t;
}

FiniteTopSpace indiscrete_topology(int points) {
    FiniteTopSpace t;
    t.points = points;
    t.opens.push_back({});
    std::set<int> full;
    for (int i = 0; i < points; ++i) full.insert(i);
    t.opens.push_back(std::move(full));
    return t;
}

std::optional<std::string> validate_continuous(const FiniteTopSystem& s) {
    if (static_cast<int>(s.map.size()) != s.space.points) return "map table size mismatch";
    for (int v : s.map)
        if (v < 0 || v >= s.space.points) return "map image out of range";
    if (auto err = validate_topology(s.space)) return err;
    for (const auto& o : s.space.opens) {
        std::set<int> pre;
        for (int x = 0; x < s.space.points; ++x)
            if (o.count(s.map[static_cast<std::size_t>(x)])) pre.insert(x);
        if (!s.space.is_open(pre)) return "preimage of an open set is not open";
    }
    return std::nullopt;
}

std::optional<std::string> validate_affine(const AffineSystem& s) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    switch (s.domain) {
        case AffineDomain::Naturals:
            if (s.a < 0 || s.b < 0) return "map does not preserve N";
            if (denominator(s.a) != 1 || denominator(s.b) != 1)
                return "non-integer coefficients do not preserve N";
            break;
        case AffineDomain::Integers:
            if (denominator(s.a) != 1 || denominator(s.b) != 1)
                return "non-integer coefficients do not preserve Z";
            break;
        case AffineDomain::Reals:
            break;
    }
    return std::nullopt;
}

const char* SystemDescriptor::kind_name() const {
    if (std::holds_alternative<FiniteTopSystem>(system)) return "finitetop";
    if (std::holds_alternative<Sft>(system)) return "sft";
    if (std::holds_alternative<MetricSystemSpec>(system)) return "metric";
    return "affine";
}

}  // namespace etale
