#include "lipfree/freespace.hpp"

#include "lipfree/order.hpp"

namespace lipfree {

namespace {

// Non-base points in index order, and the inverse map.
struct PointVariables {
    std::vector<std::size_t> points;
    std::vector<std::size_t> slot;

    explicit PointVariables(const FiniteMetricSpace& space) : slot(space.size(), space.size())
    {
        for (std::size_t x = 0; x < space.size(); ++x) {
            if (x != space.base()) {
                slot[x] = points.size();
                points.push_back(x);
            }
        }
    }
    bool has(std::size_t x) const { return slot[x] < points.size(); }
};

} // namespace

lp::Problem lipschitz_norm_program(const FiniteMetricSpace& space, const FreeVector& m)
{
    const PointVariables vars(space);
    lp::Problem problem(vars.points.size(), lp::Sense::Maximize);
    for (const auto& [point, coeff] : m.terms())
        problem.objective[vars.slot.at(point)] = coeff;
    for (auto& b : problem.bounds)
        b = lp::Bounds::free();
    for (const PairId p : space.pairs()) {
        std::vector<Rational> row(vars.points.size(), Rational(0));
        if (vars.has(p.from))
            row[vars.slot[p.from]] += 1;
        if (vars.has(p.to))
            row[vars.slot[p.to]] -= 1;
        problem.add(std::move(row), lp::Relation::LessEqual, space.distance(p));
    }
    return problem;
}

lp::Problem mass_minimization_program(const FiniteMetricSpace& space, const FreeVector& m)
{
    const PointVariables vars(space);
    const std::size_t pairs = space.pair_count();
    lp::Problem problem(pairs, lp::Sense::Minimize);
    for (auto& c : problem.objective)
        c = 1;
    std::vector<std::vector<Rational>> rows(vars.points.size(), std::vector<Rational>(pairs, Rational(0)));
    for (std::size_t k = 0; k < pairs; ++k) {
        const PairId p = space.pair(k);
        const Rational scale = 1 / space.distance(p);
        if (vars.has(p.from))
            rows[vars.slot[p.from]][k] += scale;
        if (vars.has(p.to))
            rows[vars.slot[p.to]][k] -= scale;
    }
    for (std::size_t i = 0; i < vars.points.size(); ++i)
        problem.add(std::move(rows[i]), lp::Relation::Equal, m.coefficient(vars.points[i]));
    return problem;
}

Rational free_norm(const FiniteMetricSpace& space, const FreeVector& m)
{
    const lp::Outcome outcome = lp::solve(lipschitz_norm_program(space, m));
    if (outcome.status != lp::Status::Optimal)
        throw std::logic_error("Lipschitz program failed: " + lp::to_string(outcome.status));
    return outcome.objective_value;
}

Measure optimal_representation(const FiniteMetricSpace& space, const FreeVector& m)
{
    const lp::Outcome outcome = lp::solve(mass_minimization_program(space, m));
    if (outcome.status != lp::Status::Optimal)
        throw std::logic_error("mass minimisation failed: " + lp::to_string(outcome.status));
    return Measure::from_dense(space, outcome.solution);
}

RepresentationReport describe(const FiniteMetricSpace& space, const Measure& mu)
{
    RepresentationReport report;
    report.measure = mu;
    report.mass = mu.total_mass();
    report.free_norm = free_norm(space, push_forward(space, mu));
    report.optimal = report.mass == report.free_norm;
    report.minimal = is_minimal(space, mu);
    report.shadow = shadow(mu);
    auto [first, second] = marginals(mu);
    report.marginal_first = std::move(first);
    report.marginal_second = std::move(second);
    return report;
}

RepresentationReport minimal_optimal_representation(const FiniteMetricSpace& space, const FreeVector& m)
{
    return describe(space, minimize_below(space, optimal_representation(space, m)));
}

bool is_optimal(const FiniteMetricSpace& space, const Measure& mu)
{
    return mu.total_mass() == free_norm(space, push_forward(space, mu));
}

bool is_extreme_molecule(const FiniteMetricSpace& space, PairId pair)
{
    const auto [x, y] = pair;
    for (std::size_t u = 0; u < space.size(); ++u) {
        if (u == x || u == y)
            continue;
        if (space.distance(x, y) >= space.distance(x, u) + space.distance(u, y))
            return false;
    }
    return true;
}

std::set<PairId> extreme_points_oracle(const FiniteMetricSpace& space)
{
    if (space.size() > extreme_oracle_max_points)
        throw SpaceTooLarge("vertex oracle is limited to " + std::to_string(extreme_oracle_max_points) +
                            " points, got " + std::to_string(space.size()));
    const PointVariables vars(space);
    const auto pairs = space.pairs();
    std::set<PairId> extreme;
    for (const PairId target : pairs) {
        // target molecule = sum of lambda_q molecule_q over q != target, lambda >= 0, sum lambda = 1
        std::vector<PairId> others;
        for (const PairId q : pairs) {
            if (q != target)
                others.push_back(q);
        }
        lp::Problem problem(others.size(), lp::Sense::Minimize);
        std::vector<std::vector<Rational>> rows(vars.points.size(), std::vector<Rational>(others.size(), Rational(0)));
        for (std::size_t k = 0; k < others.size(); ++k) {
            const FreeVector m = molecule(space, others[k]);
            for (const auto& [point, coeff] : m.terms())
                rows[vars.slot[point]][k] = coeff;
        }
        const FreeVector goal = molecule(space, target);
        for (std::size_t i = 0; i < vars.points.size(); ++i)
            problem.add(std::move(rows[i]), lp::Relation::Equal, goal.coefficient(vars.points[i]));
        problem.add(std::vector<Rational>(others.size(), Rational(1)), lp::Relation::Equal, 1);

        if (lp::solve(problem).status == lp::Status::Infeasible)
            extreme.insert(target);
    }
    return extreme;
}

std::set<std::size_t> shadow(const Measure& mu)
{
    std::set<std::size_t> out;
    for (const auto& [p, m] : mu.masses()) {
        out.insert(p.from);
        out.insert(p.to);
    }
    return out;
}

Marginals marginals(const Measure& mu)
{
    Marginals out;
    for (const auto& [p, m] : mu.masses()) {
        out.first[p.from] += m;
        out.second[p.to] += m;
    }
    return out;
}

} // namespace lipfree
