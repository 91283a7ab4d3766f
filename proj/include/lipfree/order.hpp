#pragma once

#include "lipfree/cone.hpp"
#include "lipfree/core.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace lipfree {

/// Evidence for a comparison mu <= nu (or its failure).
struct OrderWitness {
    enum class Kind { GeneratorCombination, SeparatingG };

    Kind kind = Kind::GeneratorCombination;
    /// nu - mu = sum of t * v_{x,u,y}; only positive weights are stored.
    std::map<Triple, Rational> weights;
    /// A member of G with <g, nu - mu> < 0.
    std::optional<ConeFunction> separator;
};

struct Comparison {
    bool holds = false;
    OrderWitness witness;
};

/// mu <= nu iff nu - mu lies in the cone spanned by the triple generators.
Comparison precedes(const FiniteMetricSpace& space, const Measure& mu, const Measure& nu);

/// mu <= nu decided directly: min <g, nu - mu> over g in G with |g| <= 1 is >= 0.
bool precedes_via_cone(const FiniteMetricSpace& space, const Measure& mu, const Measure& nu);

/// True iff no nonnegative measure other than mu precedes mu.
bool is_minimal(const FiniteMetricSpace& space, const Measure& mu);

/// A minimal measure below nu: the vertex minimiser of <c, nu - sum t v>
/// subject to nu - sum t v >= 0, t >= 0, with c the interior direction of G.
Measure minimize_below(const FiniteMetricSpace& space, const Measure& nu);

/// inf{<g, mu> : g in G, g >= f} - <f, mu>. Zero for every f iff mu is minimal.
Rational minimality_gap(const FiniteMetricSpace& space, const Measure& mu, const ConeFunction& f);

class StepError : public std::runtime_error {
public:
    explicit StepError(const std::string& what) : std::runtime_error(what) {}
};

/// mu - t * v_{x,u,y}: moves mass from (x,u) and (u,y) onto (x,y). Throws
/// StepError if a mass would become negative.
Measure eliminate_step(const FiniteMetricSpace& space, const Measure& mu, const Triple& triple,
                       const Rational& t);

/// nu - mu as a dense signed vector indexed by pair index.
std::vector<Rational> signed_difference(const FiniteMetricSpace& space, const Measure& nu, const Measure& mu);

} // namespace lipfree
