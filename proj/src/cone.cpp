#include "lipfree/cone.hpp"

#include "lipfree/lp.hpp"

#include <algorithm>

namespace lipfree {

std::vector<Rational> TripleGenerator::dense(const FiniteMetricSpace& space) const
{
    std::vector<Rational> v(space.pair_count(), Rational(0));
    const auto& [x, u, y] = triple;
    v[space.index({x, u})] += space.distance(x, u);
    v[space.index({u, y})] += space.distance(u, y);
    v[space.index({x, y})] -= space.distance(x, y);
    return v;
}

Rational TripleGenerator::pair_with(const FiniteMetricSpace& space, const ConeFunction& g) const
{
    const auto& [x, u, y] = triple;
    return space.distance(x, u) * g({x, u}) + space.distance(u, y) * g({u, y}) -
           space.distance(x, y) * g({x, y});
}

std::optional<Triple> find_cone_violation(const FiniteMetricSpace& space, const ConeFunction& g)
{
    const std::size_t n = space.size();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t u = 0; u < n; ++u) {
            if (u == x)
                continue;
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x || y == u)
                    continue;
                if (TripleGenerator{{x, u, y}}.pair_with(space, g) < 0)
                    return Triple{x, u, y};
            }
        }
    }
    return std::nullopt;
}

bool in_cone(const FiniteMetricSpace& space, const ConeFunction& g)
{
    return !find_cone_violation(space, g).has_value();
}

std::vector<std::vector<Rational>> associated_map(const FiniteMetricSpace& space, const ConeFunction& g)
{
    const std::size_t n = space.size();
    std::vector<std::vector<Rational>> h(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (x != y)
                h[x][y] = space.distance(x, y) * g({x, y});
        }
    }
    return h;
}

namespace {

void require_in_cone(const FiniteMetricSpace& space, const ConeFunction& g)
{
    if (const auto t = find_cone_violation(space, g)) {
        throw ConeError(ConeError::Kind::NotInCone, "function violates the cone inequality at (" +
                                                        space.id(t->x) + "," + space.id(t->u) + "," +
                                                        space.id(t->y) + ")");
    }
}

} // namespace

ConeFunction clamp(const FiniteMetricSpace& space, const ConeFunction& g, const Rational& b)
{
    if (b < 0)
        throw ConeError(ConeError::Kind::NegativeInput, "clamp level must be nonnegative");
    for (const auto& v : g.values()) {
        if (v < 0)
            throw ConeError(ConeError::Kind::NegativeInput, "clamp needs a nonnegative function");
    }
    require_in_cone(space, g);
    ConeFunction out(g);
    for (std::size_t k = 0; k < space.pair_count(); ++k)
        out.at(k) = std::min(g.at(k), Rational(b / space.distance(space.pair(k))));
    return out;
}

ConeFunction distance_function(const FiniteMetricSpace& space, const std::vector<Rational>& f,
                               const Rational& a, Coordinate side)
{
    if (f.size() != space.size())
        throw std::invalid_argument("point function has the wrong number of values");
    for (const auto& v : f) {
        if (v < 0)
            throw ConeError(ConeError::Kind::NegativeInput, "distance functions need f >= 0");
    }
    Rational lip = 0;
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (std::size_t y = x + 1; y < space.size(); ++y)
            lip = std::max(lip, Rational(abs(f[x] - f[y]) / space.distance(x, y)));
    }
    if (a < lip)
        throw ConeError(ConeError::Kind::SlopeTooSmall,
                        "cap " + to_string(a) + " is below the Lipschitz constant " + to_string(lip));

    ConeFunction g(space);
    for (std::size_t k = 0; k < space.pair_count(); ++k) {
        const PairId p = space.pair(k);
        const Rational& value = side == Coordinate::First ? f[p.from] : f[p.to];
        g.at(k) = std::min(a, Rational(value / space.distance(p)));
    }
    return g;
}

std::vector<LipFunction> decompose(const FiniteMetricSpace& space, const ConeFunction& g)
{
    require_in_cone(space, g);
    const auto h = associated_map(space, g);
    const std::size_t n = space.size();
    const std::size_t base = space.base();
    std::vector<LipFunction> family;
    family.reserve(n);
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<Rational> values(n);
        for (std::size_t x = 0; x < n; ++x)
            values[x] = h[x][u] - h[base][u];
        family.emplace_back(space, std::move(values));
    }
    return family;
}

LipFunction phi_recover(const FiniteMetricSpace& space, const ConeFunction& g)
{
    if (!in_cone(space, g) || !in_cone(space, -g))
        throw ConeError(ConeError::Kind::NotInIntersection, "function is not in G and -G simultaneously");
    const auto h = associated_map(space, g);
    std::vector<Rational> values(space.size());
    for (std::size_t x = 0; x < space.size(); ++x)
        values[x] = h[x][space.base()];
    return LipFunction(space, std::move(values));
}

InteriorPoint interior_point(const FiniteMetricSpace& space)
{
    const std::size_t pairs = space.pair_count();
    const std::size_t slack_var = pairs;
    lp::Problem problem(pairs + 1, lp::Sense::Maximize);
    problem.objective[slack_var] = 1;
    for (std::size_t k = 0; k < pairs; ++k)
        problem.bounds[k] = lp::Bounds::box(-1, 1);
    problem.bounds[slack_var] = lp::Bounds::free();

    for (const auto& gen : dual_generators(space)) {
        std::vector<Rational> row = gen.dense(space);
        row.push_back(-1);
        problem.add(std::move(row), lp::Relation::GreaterEqual, 0);
    }
    const lp::Outcome outcome = lp::solve(problem);
    if (outcome.status != lp::Status::Optimal || outcome.objective_value <= 0)
        throw ConeError(ConeError::Kind::DegenerateCone, "no strictly interior direction found");

    std::vector<Rational> values(outcome.solution.begin(), outcome.solution.begin() + pairs);
    return {ConeFunction(space, std::move(values)), outcome.objective_value};
}

LipFunction support_minorant(const FiniteMetricSpace& space, const ConeFunction& g,
                             const std::set<std::size_t>& subset)
{
    if (!subset.contains(space.base()))
        throw std::invalid_argument("the subset must contain the base point");
    for (std::size_t a : subset) {
        if (a >= space.size())
            throw std::invalid_argument("subset point out of range");
    }
    require_in_cone(space, g);
    for (std::size_t a : subset) {
        for (std::size_t b : subset) {
            if (a != b && g({a, b}) < 0)
                throw ConeError(ConeError::Kind::NegativeOnA,
                                "g(" + space.id(a) + "," + space.id(b) + ") is negative on the subset");
        }
    }
    const auto h = associated_map(space, g);
    std::vector<Rational> values(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        std::optional<Rational> best;
        for (std::size_t a : subset) {
            if (!best || h[x][a] < *best)
                best = h[x][a];
        }
        values[x] = *best;
    }
    return LipFunction(space, std::move(values));
}

std::vector<TripleGenerator> dual_generators(const FiniteMetricSpace& space)
{
    const std::size_t n = space.size();
    std::vector<TripleGenerator> out;
    out.reserve(n * (n - 1) * (n - 2));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t u = 0; u < n; ++u) {
            if (u == x)
                continue;
            for (std::size_t y = 0; y < n; ++y) {
                if (y != x && y != u)
                    out.push_back({{x, u, y}});
            }
        }
    }
    return out;
}

CombinationResult generator_combination(const FiniteMetricSpace& space, const std::vector<Rational>& lambda)
{
    if (lambda.size() != space.pair_count())
        throw std::invalid_argument("signed vector has the wrong length");
    const auto gens = dual_generators(space);
    const std::size_t pairs = space.pair_count();

    // Rows: one equality per pair; columns: generator weights t >= 0.
    lp::Problem problem(gens.size(), lp::Sense::Minimize);
    std::vector<std::vector<Rational>> rows(pairs, std::vector<Rational>(gens.size(), Rational(0)));
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto v = gens[k].dense(space);
        for (std::size_t p = 0; p < pairs; ++p) {
            if (v[p] != 0)
                rows[p][k] = v[p];
        }
    }
    for (std::size_t p = 0; p < pairs; ++p)
        problem.add(std::move(rows[p]), lp::Relation::Equal, lambda[p]);

    const lp::Outcome outcome = lp::solve(problem);
    CombinationResult result;
    if (outcome.status == lp::Status::Optimal) {
        result.member = true;
        result.weights = outcome.solution;
        return result;
    }
    // Farkas multipliers y satisfy <y, v_k> <= 0 for all k and <y, lambda> > 0,
    // so -y is in G and separates.
    ConeFunction separator(space);
    for (std::size_t p = 0; p < pairs; ++p)
        separator.at(p) = -outcome.farkas[p];
    result.separator = std::move(separator);
    return result;
}

BoxedMinimum boxed_cone_minimum(const FiniteMetricSpace& space, const std::vector<Rational>& lambda)
{
    if (lambda.size() != space.pair_count())
        throw std::invalid_argument("signed vector has the wrong length");
    const std::size_t pairs = space.pair_count();
    lp::Problem problem(pairs, lp::Sense::Minimize);
    problem.objective = lambda;
    for (std::size_t k = 0; k < pairs; ++k)
        problem.bounds[k] = lp::Bounds::box(-1, 1);
    for (const auto& gen : dual_generators(space))
        problem.add(gen.dense(space), lp::Relation::GreaterEqual, 0);

    const lp::Outcome outcome = lp::solve(problem);
    // g = 0 is feasible and the box bounds the objective.
    return {outcome.objective_value, ConeFunction(space, outcome.solution)};
}

} // namespace lipfree
