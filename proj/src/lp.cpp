#include "lipfree/lp.hpp"

#include <limits>

namespace lipfree::lp {

std::string to_string(Status status)
{
    switch (status) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
    }
    return "Unknown";
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// How an original variable maps onto nonnegative standard-form columns.
struct ColumnMap {
    enum class Kind { Shift, Reflect, Split } kind = Kind::Shift;
    std::size_t column = 0; // x' (or x+ for Split)
    std::size_t minus = 0;  // x- for Split
    Rational offset = 0;    // l for Shift, u for Reflect
};

void check_shape(const Problem& problem)
{
    const std::size_t n = problem.variable_count();
    if (problem.bounds.size() != n)
        throw MalformedProblem("bounds list has " + std::to_string(problem.bounds.size()) +
                               " entries for " + std::to_string(n) + " variables");
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        if (problem.constraints[i].coeffs.size() != n)
            throw MalformedProblem("constraint " + std::to_string(i) + " has width " +
                                   std::to_string(problem.constraints[i].coeffs.size()) + ", expected " +
                                   std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto& b = problem.bounds[j];
        if (b.lower && b.upper && *b.lower > *b.upper)
            throw MalformedProblem("variable " + std::to_string(j) + " has an empty bound interval");
    }
}

bool is_zero_row(const std::vector<Rational>& coeffs)
{
    for (const auto& c : coeffs) {
        if (c != 0)
            return false;
    }
    return true;
}

// Dense tableau over the standard form min c'x' s.t. A'x' = b', x' >= 0.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows, std::vector<Rational>(cols, Rational(0))), rhs_(rows, Rational(0)),
          reduced_(cols, Rational(0)), basis_(rows, npos), cols_(cols)
    {
    }

    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<Rational> reduced_;
    Rational value_ = 0;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
    std::size_t pivots_ = 0;

    void set_costs(const std::vector<Rational>& cost)
    {
        reduced_ = cost;
        value_ = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0)
                continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (rows_[i][j] != 0)
                    reduced_[j] -= cb * rows_[i][j];
            }
            value_ += cb * rhs_[i];
        }
    }

    void pivot(std::size_t r, std::size_t e)
    {
        ++pivots_;
        auto& prow = rows_[r];
        const Rational inv = 1 / prow[e];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (prow[j] != 0) {
                prow[j] *= inv;
                nz.push_back(j);
            }
        }
        rhs_[r] *= inv;

        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][e] == 0)
                continue;
            const Rational factor = rows_[i][e];
            for (std::size_t j : nz)
                rows_[i][j] -= factor * prow[j];
            rhs_[i] -= factor * rhs_[r];
        }
        if (reduced_[e] != 0) {
            const Rational factor = reduced_[e];
            for (std::size_t j : nz)
                reduced_[j] -= factor * prow[j];
            value_ += factor * rhs_[r];
        }
        basis_[r] = e;
    }

    // Bland's rule iterations. Returns the unbounded entering column, or npos
    // at optimality. Columns with allowed[j] == false never enter.
    std::size_t run(const std::vector<bool>& allowed)
    {
        while (true) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (allowed[j] && reduced_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == npos)
                return npos;

            std::size_t leave = npos;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][enter] <= 0)
                    continue;
                Rational ratio = rhs_[i] / rows_[i][enter];
                if (leave == npos || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (leave == npos)
                return enter;
            pivot(leave, enter);
        }
    }

    std::vector<Rational> primal() const
    {
        std::vector<Rational> x(cols_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            x[basis_[i]] = rhs_[i];
        return x;
    }
};

Problem as_minimisation(const Problem& problem)
{
    if (problem.sense == Sense::Minimize)
        return problem;
    Problem out = problem;
    out.sense = Sense::Minimize;
    for (auto& c : out.objective)
        c = -c;
    return out;
}

Outcome solve_min(const Problem& problem)
{
    const std::size_t n = problem.variable_count();

    // Columns for the original variables.
    std::vector<ColumnMap> maps(n);
    std::size_t cols = 0;
    std::vector<std::size_t> upper_rows; // variables needing an explicit x' <= u - l row
    for (std::size_t j = 0; j < n; ++j) {
        const auto& b = problem.bounds[j];
        auto& m = maps[j];
        if (b.lower) {
            m.kind = ColumnMap::Kind::Shift;
            m.offset = *b.lower;
            m.column = cols++;
            if (b.upper)
                upper_rows.push_back(j);
        } else if (b.upper) {
            m.kind = ColumnMap::Kind::Reflect;
            m.offset = *b.upper;
            m.column = cols++;
        } else {
            m.kind = ColumnMap::Kind::Split;
            m.column = cols++;
            m.minus = cols++;
        }
    }
    const std::size_t structural = cols;

    Outcome outcome;

    // Rows kept in the tableau; empty rows are decided immediately.
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        const auto& con = problem.constraints[i];
        if (!is_zero_row(con.coeffs)) {
            kept.push_back(i);
            continue;
        }
        Rational y = 0;
        if (con.relation == Relation::LessEqual && con.rhs < 0)
            y = -1;
        else if (con.relation == Relation::GreaterEqual && con.rhs > 0)
            y = 1;
        else if (con.relation == Relation::Equal && con.rhs != 0)
            y = con.rhs > 0 ? 1 : -1;
        if (y != 0) {
            outcome.status = Status::Infeasible;
            outcome.farkas.assign(problem.constraints.size(), Rational(0));
            outcome.farkas[i] = y;
            return outcome;
        }
    }

    const std::size_t m = kept.size() + upper_rows.size();
    std::size_t slack_count = upper_rows.size();
    for (std::size_t i : kept) {
        if (problem.constraints[i].relation != Relation::Equal)
            ++slack_count;
    }
    const std::size_t first_artificial = structural + slack_count;
    // One potential artificial per row; unused ones stay zero columns.
    const std::size_t total_cols = first_artificial + m;

    Tableau t(m, total_cols);
    std::vector<Rational> row_sign(m, Rational(1));
    std::vector<std::size_t> init_col(m, npos);
    std::vector<bool> has_artificial(m, false);

    std::size_t next_slack = structural;
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const auto& con = problem.constraints[kept[r]];
        auto& row = t.rows_[r];
        Rational rhs = con.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& a = con.coeffs[j];
            if (a == 0)
                continue;
            const auto& mp = maps[j];
            switch (mp.kind) {
            case ColumnMap::Kind::Shift:
                row[mp.column] += a;
                rhs -= a * mp.offset;
                break;
            case ColumnMap::Kind::Reflect:
                row[mp.column] -= a;
                rhs -= a * mp.offset;
                break;
            case ColumnMap::Kind::Split:
                row[mp.column] += a;
                row[mp.minus] -= a;
                break;
            }
        }
        std::size_t slack = npos;
        if (con.relation == Relation::LessEqual) {
            slack = next_slack++;
            row[slack] = 1;
        } else if (con.relation == Relation::GreaterEqual) {
            slack = next_slack++;
            row[slack] = -1;
        }
        if (rhs < 0) {
            row_sign[r] = -1;
            for (auto& v : row)
                v = -v;
            rhs = -rhs;
        }
        t.rhs_[r] = rhs;
        if (slack != npos && row[slack] == 1) {
            init_col[r] = slack;
        } else {
            init_col[r] = first_artificial + r;
            row[init_col[r]] = 1;
            has_artificial[r] = true;
        }
        t.basis_[r] = init_col[r];
    }
    for (std::size_t k = 0; k < upper_rows.size(); ++k) {
        const std::size_t r = kept.size() + k;
        const auto& mp = maps[upper_rows[k]];
        const auto& b = problem.bounds[upper_rows[k]];
        t.rows_[r][mp.column] = 1;
        const std::size_t slack = next_slack++;
        t.rows_[r][slack] = 1;
        t.rhs_[r] = *b.upper - *b.lower;
        init_col[r] = slack;
        t.basis_[r] = slack;
    }

    auto row_multipliers = [&](const std::vector<Rational>& costs) {
        // pi_r = c_init - reduced_init; original y_i = sign_r * pi_r.
        std::vector<Rational> y(problem.constraints.size(), Rational(0));
        for (std::size_t r = 0; r < kept.size(); ++r)
            y[kept[r]] = row_sign[r] * (costs[init_col[r]] - t.reduced_[init_col[r]]);
        return y;
    };

    // Phase I
    std::vector<Rational> phase1_cost(total_cols, Rational(0));
    bool any_artificial = false;
    for (std::size_t r = 0; r < m; ++r) {
        if (has_artificial[r]) {
            phase1_cost[first_artificial + r] = 1;
            any_artificial = true;
        }
    }
    std::vector<bool> allowed(total_cols, true);
    for (std::size_t j = first_artificial; j < total_cols; ++j)
        allowed[j] = false;

    if (any_artificial) {
        t.set_costs(phase1_cost);
        t.run(allowed);
        if (t.value_ > 0) {
            outcome.status = Status::Infeasible;
            outcome.farkas = row_multipliers(phase1_cost);
            outcome.pivots = t.pivots_;
            return outcome;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t r = 0; r < m; ++r) {
            if (t.basis_[r] < first_artificial)
                continue;
            for (std::size_t j = 0; j < first_artificial; ++j) {
                if (t.rows_[r][j] != 0) {
                    t.pivot(r, j);
                    break;
                }
            }
        }
    }

    // Phase II
    std::vector<Rational> cost(total_cols, Rational(0));
    Rational constant = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const Rational& c = problem.objective[j];
        const auto& mp = maps[j];
        switch (mp.kind) {
        case ColumnMap::Kind::Shift:
            cost[mp.column] = c;
            constant += c * mp.offset;
            break;
        case ColumnMap::Kind::Reflect:
            cost[mp.column] = -c;
            constant += c * mp.offset;
            break;
        case ColumnMap::Kind::Split:
            cost[mp.column] = c;
            cost[mp.minus] = -c;
            break;
        }
    }
    t.set_costs(cost);
    const std::size_t unbounded_col = t.run(allowed);
    outcome.pivots = t.pivots_;

    const std::vector<Rational> xs = t.primal();
    auto to_original = [&](const std::vector<Rational>& v, bool direction) {
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            const auto& mp = maps[j];
            switch (mp.kind) {
            case ColumnMap::Kind::Shift:
                x[j] = (direction ? Rational(0) : mp.offset) + v[mp.column];
                break;
            case ColumnMap::Kind::Reflect:
                x[j] = (direction ? Rational(0) : mp.offset) - v[mp.column];
                break;
            case ColumnMap::Kind::Split:
                x[j] = v[mp.column] - v[mp.minus];
                break;
            }
        }
        return x;
    };
    outcome.solution = to_original(xs, false);

    if (unbounded_col != npos) {
        std::vector<Rational> dir(total_cols, Rational(0));
        dir[unbounded_col] = 1;
        for (std::size_t r = 0; r < m; ++r)
            dir[t.basis_[r]] -= t.rows_[r][unbounded_col];
        outcome.status = Status::Unbounded;
        outcome.ray = to_original(dir, true);
        outcome.objective_value = 0;
        for (std::size_t j = 0; j < n; ++j)
            outcome.objective_value += problem.objective[j] * outcome.solution[j];
        return outcome;
    }

    outcome.status = Status::Optimal;
    outcome.objective_value = t.value_ + constant;
    outcome.duals = row_multipliers(cost);
    return outcome;
}

// min over [lo, hi] of r * x; nullopt when unbounded below.
std::optional<Rational> box_min(const Rational& r, const Bounds& b)
{
    if (r > 0) {
        if (!b.lower)
            return std::nullopt;
        return r * *b.lower;
    }
    if (r < 0) {
        if (!b.upper)
            return std::nullopt;
        return r * *b.upper;
    }
    return Rational(0);
}

// Lagrangian lower bound for a minimisation, or nullopt if -infinity or the
// multipliers have the wrong signs.
std::optional<Rational> lagrangian_bound(const Problem& p, const std::vector<Rational>& y,
                                         const std::vector<Rational>& cost)
{
    if (y.size() != p.constraints.size())
        return std::nullopt;
    std::vector<Rational> r = cost;
    Rational total = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto& con = p.constraints[i];
        if (con.relation == Relation::LessEqual && y[i] > 0)
            return std::nullopt;
        if (con.relation == Relation::GreaterEqual && y[i] < 0)
            return std::nullopt;
        if (y[i] == 0)
            continue;
        total += y[i] * con.rhs;
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (con.coeffs[j] != 0)
                r[j] -= y[i] * con.coeffs[j];
        }
    }
    for (std::size_t j = 0; j < r.size(); ++j) {
        auto term = box_min(r[j], p.bounds[j]);
        if (!term)
            return std::nullopt;
        total += *term;
    }
    return total;
}

bool is_feasible(const Problem& p, const std::vector<Rational>& x)
{
    if (x.size() != p.variable_count())
        return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto& b = p.bounds[j];
        if ((b.lower && x[j] < *b.lower) || (b.upper && x[j] > *b.upper))
            return false;
    }
    for (const auto& con : p.constraints) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (con.coeffs[j] != 0)
                lhs += con.coeffs[j] * x[j];
        }
        switch (con.relation) {
        case Relation::LessEqual:
            if (lhs > con.rhs)
                return false;
            break;
        case Relation::Equal:
            if (lhs != con.rhs)
                return false;
            break;
        case Relation::GreaterEqual:
            if (lhs < con.rhs)
                return false;
            break;
        }
    }
    return true;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    Rational total = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        total += a[j] * b[j];
    return total;
}

} // namespace

Outcome solve(const Problem& problem)
{
    check_shape(problem);
    if (problem.sense == Sense::Minimize)
        return solve_min(problem);

    Outcome outcome = solve_min(as_minimisation(problem));
    outcome.objective_value = -outcome.objective_value;
    for (auto& y : outcome.duals)
        y = -y;
    return outcome;
}

bool verify_certificate(const Problem& problem, const Outcome& outcome)
{
    try {
        check_shape(problem);
    } catch (const MalformedProblem&) {
        return false;
    }
    const Problem min_form = as_minimisation(problem);
    const Rational sign = problem.sense == Sense::Minimize ? 1 : -1;

    switch (outcome.status) {
    case Status::Optimal: {
        if (!is_feasible(problem, outcome.solution))
            return false;
        if (dot(problem.objective, outcome.solution) != outcome.objective_value)
            return false;
        std::vector<Rational> y = outcome.duals;
        for (auto& v : y)
            v *= sign;
        const auto bound = lagrangian_bound(min_form, y, min_form.objective);
        return bound && *bound == sign * outcome.objective_value;
    }
    case Status::Infeasible: {
        const std::vector<Rational> zero(problem.variable_count(), Rational(0));
        const auto bound = lagrangian_bound(problem, outcome.farkas, zero);
        return bound && *bound > 0;
    }
    case Status::Unbounded: {
        if (!is_feasible(problem, outcome.solution) || outcome.ray.size() != problem.variable_count())
            return false;
        for (std::size_t j = 0; j < outcome.ray.size(); ++j) {
            const auto& b = problem.bounds[j];
            if ((b.lower && outcome.ray[j] < 0) || (b.upper && outcome.ray[j] > 0))
                return false;
        }
        for (const auto& con : problem.constraints) {
            const Rational lhs = dot(con.coeffs, outcome.ray);
            if ((con.relation == Relation::LessEqual && lhs > 0) ||
                (con.relation == Relation::GreaterEqual && lhs < 0) ||
                (con.relation == Relation::Equal && lhs != 0))
                return false;
        }
        return dot(min_form.objective, outcome.ray) < 0;
    }
    }
    return false;
}

} // namespace lipfree::lp
