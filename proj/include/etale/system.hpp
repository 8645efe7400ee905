// Descriptors for every representable dynamical system: finite topological
// spaces with a continuous self-map, subshifts of finite type, compact
// metric builtins, and affine maps x -> a x + b on N, Z or R.  Descriptors
// are plain values (metric systems are stored as builtin name + parameters)
// so registries can be compared and serialized.

#pragma once

#include "etale/metric.hpp"
#include "etale/sft.hpp"

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace etale {

struct FiniteTopSpace {
    int points = 0;
    std::vector<std::set<int>> opens;  // must contain {} and X, closed under
                                       // pairwise union and intersection

    bool is_open(const std::set<int>& s) const;
};

// nullopt when valid, otherwise a description of the violation.
std::optional<std::string> validate_topology(const FiniteTopSpace& t);

FiniteTopSpace discrete_topology(int points);
FiniteTopSpace indiscrete_topology(int points);

struct FiniteTopSystem {
    FiniteTopSpace space;
    std::vector<int> map;  // image of each point

    bool operator==(const FiniteTopSystem& o) const {
        return space.points == o.space.points && space.opens == o.space.opens && map == o.map;
    }
};

// preimage of every open is open, checked exhaustively
std::optional<std::string> validate_continuous(const FiniteTopSystem& s);

enum class AffineDomain { Naturals, Integers, Reals };

// x -> a x + b on the given domain (non-compact for every domain here).
struct AffineSystem {
    AffineDomain domain = AffineDomain::Reals;
    Rat a = 1, b = 0;

    Rat apply(const Rat& x) const { return a * x + b; }
    bool operator==(const AffineSystem&) const = default;
};

std::optional<std::string> validate_affine(const AffineSystem& s);

// A metric builtin by name + parameters; instantiate() produces the
// evaluable system.
struct MetricSystemSpec {
    std::string builtin;
    double a = 0.0, b = 0.0;

    MetricSystem instantiate() const { return builtin_metric_system(builtin, a, b); }
    bool operator==(const MetricSystemSpec&) const = default;
};

struct SystemDescriptor {
    std::string id;
    std::variant<FiniteTopSystem, Sft, MetricSystemSpec, AffineSystem> system;

    bool compact() const {
        return !std::holds_alternative<AffineSystem>(system);
    }
    const char* kind_name() const;
};

}  // namespace etale
