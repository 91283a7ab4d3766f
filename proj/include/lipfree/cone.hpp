#pragma once

#include "lipfree/core.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipfree {

class ConeError : public std::runtime_error {
public:
    enum class Kind {
        NotInCone,
        NegativeInput,
        SlopeTooSmall,
        NotInIntersection,
        NegativeOnA,
        DegenerateCone,
    };

    ConeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// d(x,u) e(x,u) + d(u,y) e(u,y) - d(x,y) e(x,y). Pairing a function g with
/// this vector gives the slack of the cone inequality at (x,u,y).
struct TripleGenerator {
    Triple triple;

    /// Dense signed vector indexed by pair index.
    std::vector<Rational> dense(const FiniteMetricSpace& space) const;
    Rational pair_with(const FiniteMetricSpace& space, const ConeFunction& g) const;
};

/// First triple (x,u,y), in lexicographic order, with
/// d(x,y) g(x,y) > d(x,u) g(x,u) + d(u,y) g(u,y); nullopt when g is in G.
std::optional<Triple> find_cone_violation(const FiniteMetricSpace& space, const ConeFunction& g);
bool in_cone(const FiniteMetricSpace& space, const ConeFunction& g);

/// Associated map h(x,y) = d(x,y) g(x,y), h(x,x) = 0, as an n x n table.
std::vector<std::vector<Rational>> associated_map(const FiniteMetricSpace& space, const ConeFunction& g);

/// Pointwise min{g, b/d} for nonnegative g in G and b >= 0.
ConeFunction clamp(const FiniteMetricSpace& space, const ConeFunction& g, const Rational& b);

enum class Coordinate { First, Second };

/// min{a, f(x)/d(x,y)} (First) or min{a, f(y)/d(x,y)} (Second) for a
/// nonnegative point function f and a >= Lip(f). f need not vanish at the base.
ConeFunction distance_function(const FiniteMetricSpace& space, const std::vector<Rational>& f,
                               const Rational& a, Coordinate side);

/// The family {f_u : u in M}, f_u(x) = h(x,u) - h(0,u), indexed by u. Each
/// transform is dominated by g and their pointwise max equals g.
std::vector<LipFunction> decompose(const FiniteMetricSpace& space, const ConeFunction& g);

/// For g with g and -g in G, the unique f with de_leeuw(f) = g.
LipFunction phi_recover(const FiniteMetricSpace& space, const ConeFunction& g);

struct InteriorPoint {
    ConeFunction direction;
    Rational slack;
};

/// Maximises the uniform slack s of all triple inequalities over -1 <= c <= 1.
/// Pairing with `direction` is then strictly positive on the nonzero dual cone.
InteriorPoint interior_point(const FiniteMetricSpace& space);

/// f(x) = min_{a in A} h(x,a). Requires the base in A and g >= 0 on pairs from A.
LipFunction support_minorant(const FiniteMetricSpace& space, const ConeFunction& g,
                             const std::set<std::size_t>& subset);

/// All n(n-1)(n-2) triple vectors, in lexicographic (x,u,y) order. They
/// generate the dual cone {lambda : <g,lambda> >= 0 for all g in G}.
std::vector<TripleGenerator> dual_generators(const FiniteMetricSpace& space);

/// Decides whether a signed vector lies in the cone spanned by the generators.
struct CombinationResult {
    bool member = false;
    /// Nonnegative weights per generator (dual_generators order) when member.
    std::vector<Rational> weights;
    /// A verified g in G with <g, lambda> < 0 otherwise.
    std::optional<ConeFunction> separator;
};
CombinationResult generator_combination(const FiniteMetricSpace& space, const std::vector<Rational>& lambda);

/// min <g, lambda> over g in G with -1 <= g <= 1, with a minimiser.
struct BoxedMinimum {
    Rational value;
    ConeFunction argmin;
};
BoxedMinimum boxed_cone_minimum(const FiniteMetricSpace& space, const std::vector<Rational>& lambda);

} // namespace lipfree
