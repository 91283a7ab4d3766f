#include "lipfree/order.hpp"

#include "lipfree/lp.hpp"

#include <memory>
#include <mutex>

namespace lipfree {

std::vector<Rational> signed_difference(const FiniteMetricSpace& space, const Measure& nu, const Measure& mu)
{
    std::vector<Rational> out = nu.to_dense(space);
    for (const auto& [p, m] : mu.masses())
        out[space.index(p)] -= m;
    return out;
}

Comparison precedes(const FiniteMetricSpace& space, const Measure& mu, const Measure& nu)
{
    const auto result = generator_combination(space, signed_difference(space, nu, mu));
    Comparison out;
    out.holds = result.member;
    if (result.member) {
        out.witness.kind = OrderWitness::Kind::GeneratorCombination;
        const auto gens = dual_generators(space);
        for (std::size_t k = 0; k < gens.size(); ++k) {
            if (result.weights[k] > 0)
                out.witness.weights.emplace(gens[k].triple, result.weights[k]);
        }
    } else {
        out.witness.kind = OrderWitness::Kind::SeparatingG;
        out.witness.separator = result.separator;
    }
    return out;
}

bool precedes_via_cone(const FiniteMetricSpace& space, const Measure& mu, const Measure& nu)
{
    return boxed_cone_minimum(space, signed_difference(space, nu, mu)).value >= 0;
}

namespace {

struct Descent {
    Rational decrease;
    Measure below;
};

// Generators and interior direction depend only on the space, and the
// interior LP dominates the cost of a minimality query. Entries are
// immutable once built; the cache keeps the most recent few spaces.
struct SpaceData {
    std::vector<TripleGenerator> gens;
    ConeFunction direction;
};

std::shared_ptr<const SpaceData> space_data(const FiniteMetricSpace& space)
{
    static std::mutex mutex;
    static std::vector<std::pair<FiniteMetricSpace, std::shared_ptr<const SpaceData>>> cache;
    constexpr std::size_t capacity = 8;
    {
        const std::lock_guard lock(mutex);
        for (const auto& [key, data] : cache) {
            if (key == space)
                return data;
        }
    }
    auto data = std::make_shared<const SpaceData>(SpaceData{dual_generators(space), interior_point(space).direction});
    const std::lock_guard lock(mutex);
    if (cache.size() == capacity)
        cache.erase(cache.begin());
    cache.emplace_back(space, data);
    return data;
}

// max <c, sum t v> s.t. sum t v <= nu, t >= 0.
Descent steepest_descent(const FiniteMetricSpace& space, const Measure& nu)
{
    const auto data = space_data(space);
    const auto& gens = data->gens;
    const ConeFunction& c = data->direction;
    const std::size_t pairs = space.pair_count();
    const std::vector<Rational> nu_dense = nu.to_dense(space);

    lp::Problem problem(gens.size(), lp::Sense::Maximize);
    std::vector<std::vector<Rational>> rows(pairs, std::vector<Rational>(gens.size(), Rational(0)));
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto v = gens[k].dense(space);
        problem.objective[k] = pairing(c, v);
        for (std::size_t p = 0; p < pairs; ++p) {
            if (v[p] != 0)
                rows[p][k] = v[p];
        }
    }
    for (std::size_t p = 0; p < pairs; ++p)
        problem.add(std::move(rows[p]), lp::Relation::LessEqual, nu_dense[p]);

    const lp::Outcome outcome = lp::solve(problem);
    if (outcome.status != lp::Status::Optimal)
        throw std::logic_error("elimination program is not bounded: " + lp::to_string(outcome.status));

    std::vector<Rational> below = nu_dense;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (outcome.solution[k] == 0)
            continue;
        const auto v = gens[k].dense(space);
        for (std::size_t p = 0; p < pairs; ++p)
            below[p] -= outcome.solution[k] * v[p];
    }
    return {outcome.objective_value, Measure::from_dense(space, below)};
}

} // namespace

bool is_minimal(const FiniteMetricSpace& space, const Measure& mu)
{
    if (mu.is_zero())
        return true;
    return steepest_descent(space, mu).decrease == 0;
}

Measure minimize_below(const FiniteMetricSpace& space, const Measure& nu)
{
    if (nu.is_zero())
        return nu;
    return steepest_descent(space, nu).below;
}

Rational minimality_gap(const FiniteMetricSpace& space, const Measure& mu, const ConeFunction& f)
{
    if (f.point_count() != space.size())
        throw std::invalid_argument("function lives on a different space");
    const std::size_t pairs = space.pair_count();
    lp::Problem problem(pairs, lp::Sense::Minimize);
    problem.objective = mu.to_dense(space);
    for (std::size_t k = 0; k < pairs; ++k)
        problem.bounds[k] = lp::Bounds::at_least(f.at(k));
    for (const auto& gen : dual_generators(space))
        problem.add(gen.dense(space), lp::Relation::GreaterEqual, 0);

    const lp::Outcome outcome = lp::solve(problem);
    if (outcome.status != lp::Status::Optimal)
        throw std::logic_error("majorant program failed: " + lp::to_string(outcome.status));
    return outcome.objective_value - pairing(f, mu);
}

Measure eliminate_step(const FiniteMetricSpace& space, const Measure& mu, const Triple& triple,
                       const Rational& t)
{
    if (t <= 0)
        throw std::invalid_argument("elimination weight must be positive");
    const auto& [x, u, y] = triple;
    if (x == u || u == y || x == y)
        throw std::invalid_argument("elimination needs three distinct points");
    const Rational take_first = t * space.distance(x, u);
    const Rational take_second = t * space.distance(u, y);
    if (mu.mass({x, u}) < take_first || mu.mass({u, y}) < take_second)
        throw StepError("elimination step of weight " + to_string(t) + " at (" + space.id(x) + "," +
                        space.id(u) + "," + space.id(y) + ") leaves negative mass");
    Measure out(mu);
    out.add({x, u}, -take_first);
    out.add({u, y}, -take_second);
    out.add({x, y}, t * space.distance(x, y));
    return out;
}

} // namespace lipfree
