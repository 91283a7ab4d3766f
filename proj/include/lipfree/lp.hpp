#pragma once

#include "lipfree/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipfree::lp {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
    std::vector<Rational> coeffs;
    Relation relation = Relation::LessEqual;
    Rational rhs = 0;
};

/// Per-variable bounds. The default is x >= 0; a missing bound is infinite.
struct Bounds {
    std::optional<Rational> lower = Rational(0);
    std::optional<Rational> upper;

    static Bounds free() { return {std::nullopt, std::nullopt}; }
    static Bounds box(Rational lo, Rational hi) { return {std::move(lo), std::move(hi)}; }
    static Bounds at_least(Rational lo) { return {std::move(lo), std::nullopt}; }
};

/// Linear program in generic form: optimise objective . x subject to rows and
/// variable bounds.
struct Problem {
    Sense sense = Sense::Minimize;
    std::vector<Rational> objective;
    std::vector<Constraint> constraints;
    std::vector<Bounds> bounds;

    Problem() = default;
    Problem(std::size_t variable_count, Sense s)
        : sense(s), objective(variable_count, Rational(0)), bounds(variable_count)
    {
    }

    std::size_t variable_count() const { return objective.size(); }
    void add(std::vector<Rational> coeffs, Relation relation, Rational rhs)
    {
        constraints.push_back({std::move(coeffs), relation, std::move(rhs)});
    }
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string to_string(Status status);

/// Result of `solve`.
///
/// Row multipliers follow one convention for every status. For a minimisation
/// and multipliers y (y_i >= 0 on >= rows, y_i <= 0 on <= rows, free on
/// equalities) the bound
///
///     L(y) = y.b + sum_j min_{l_j <= x_j <= u_j} (c - A^T y)_j x_j
///
/// holds for every feasible x. `duals` attains L(y) = objective_value. For a
/// maximisation, signs flip: y_i >= 0 on <= rows, y_i <= 0 on >= rows, and the
/// upper bound uses max over the box. `farkas` certifies infeasibility with
/// the minimisation convention and c = 0, i.e. L(farkas) > 0.
struct Outcome {
    Status status = Status::Infeasible;
    /// Optimal vertex, or a feasible vertex when Unbounded.
    std::vector<Rational> solution;
    Rational objective_value = 0;
    std::vector<Rational> duals;
    std::vector<Rational> farkas;
    /// Improving direction when Unbounded.
    std::vector<Rational> ray;
    std::size_t pivots = 0;
};

class MalformedProblem : public std::invalid_argument {
public:
    explicit MalformedProblem(const std::string& what) : std::invalid_argument(what) {}
};

/// Two-phase primal simplex over exact rationals with Bland's rule (smallest
/// eligible index enters; ties in the ratio test leave by smallest basic
/// index). Deterministic and terminates on degenerate problems.
/// Throws MalformedProblem on a width mismatch or an empty bound interval.
Outcome solve(const Problem& problem);

/// Exact check of the outcome against the problem: feasibility and the dual
/// bound for Optimal, the Farkas inequality for Infeasible, the ray for
/// Unbounded.
bool verify_certificate(const Problem& problem, const Outcome& outcome);

} // namespace lipfree::lp
