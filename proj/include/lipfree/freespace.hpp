#pragma once

#include "lipfree/core.hpp"
#include "lipfree/lp.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace lipfree {

/// Summary of a De Leeuw representation.
struct RepresentationReport {
    Measure measure;
    Rational mass;
    Rational free_norm;
    bool optimal = false;
    bool minimal = false;
    std::set<std::size_t> shadow;
    std::map<std::size_t, Rational> marginal_first;
    std::map<std::size_t, Rational> marginal_second;
};

/// sup{<f, m> : Lip(f) <= 1, f(0) = 0}, solved on the Lipschitz side.
Rational free_norm(const FiniteMetricSpace& space, const FreeVector& m);

/// The Lipschitz maximisation behind free_norm (variables: f at non-base points, in index order).
lp::Problem lipschitz_norm_program(const FiniteMetricSpace& space, const FreeVector& m);

/// min total mass subject to push_forward(mu) = m, mu >= 0 (variables by pair index).
lp::Problem mass_minimization_program(const FiniteMetricSpace& space, const FreeVector& m);

/// A vertex solution of the mass minimisation: an optimal representation of m.
Measure optimal_representation(const FiniteMetricSpace& space, const FreeVector& m);

/// Minimal measure below an optimal representation of m, with its report.
RepresentationReport minimal_optimal_representation(const FiniteMetricSpace& space, const FreeVector& m);

/// Report for an arbitrary representation.
RepresentationReport describe(const FiniteMetricSpace& space, const Measure& mu);

bool is_optimal(const FiniteMetricSpace& space, const Measure& mu);

/// d(x,y) < d(x,u) + d(u,y) for every u outside {x,y}.
bool is_extreme_molecule(const FiniteMetricSpace& space, PairId pair);

class SpaceTooLarge : public std::runtime_error {
public:
    explicit SpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t extreme_oracle_max_points = 8;

/// Pairs whose molecule is not a convex combination of the other molecules,
/// decided by one feasibility program per pair. Throws SpaceTooLarge above
/// extreme_oracle_max_points points.
std::set<PairId> extreme_points_oracle(const FiniteMetricSpace& space);

/// Points appearing as either coordinate of a pair carrying mass.
std::set<std::size_t> shadow(const Measure& mu);

struct Marginals {
    std::map<std::size_t, Rational> first;
    std::map<std::size_t, Rational> second;
};
Marginals marginals(const Measure& mu);

} // namespace lipfree
