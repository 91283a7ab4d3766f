#pragma once

#include "lipfree/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipfree {

/// Ordered pair (from, to) of distinct point indices; an element of the
/// off-diagonal pair set.
struct PairId {
    std::size_t from = 0;
    std::size_t to = 0;

    PairId reflected() const { return {to, from}; }
    auto operator<=>(const PairId&) const = default;
};

/// Three distinct point indices (x, u, y); u is the "middle" point.
struct Triple {
    std::size_t x = 0;
    std::size_t u = 0;
    std::size_t y = 0;

    auto operator<=>(const Triple&) const = default;
};

/// Dense index of a pair among the n(n-1) ordered pairs of an n-point space.
/// Pairs are ordered lexicographically by (from, to).
inline std::size_t pair_index(std::size_t point_count, PairId p)
{
    return p.from * (point_count - 1) + (p.to < p.from ? p.to : p.to - 1);
}

inline PairId pair_at(std::size_t point_count, std::size_t index)
{
    const std::size_t from = index / (point_count - 1);
    std::size_t to = index % (point_count - 1);
    if (to >= from)
        ++to;
    return {from, to};
}

class MetricError : public std::runtime_error {
public:
    enum class Kind {
        NotSymmetric,
        NegativeOrZeroOffDiagonal,
        NonzeroDiagonal,
        TriangleViolation,
        TooFewPoints,
        UnknownBasePoint,
        DuplicatePoint,
        ShapeMismatch,
    };

    MetricError(Kind kind, const std::string& what, std::optional<Triple> triple = std::nullopt)
        : std::runtime_error(what), kind_(kind), triple_(triple)
    {
    }

    Kind kind() const { return kind_; }
    /// Offending (x, u, y) for TriangleViolation, where d(x,y) > d(x,u) + d(u,y).
    const std::optional<Triple>& triple() const { return triple_; }

private:
    Kind kind_;
    std::optional<Triple> triple_;
};

std::string to_string(MetricError::Kind kind);

/// Finite pointed metric space with exact rational distances. Immutable after
/// construction; only `validate_metric` builds one.
class FiniteMetricSpace {
public:
    std::size_t size() const { return ids_.size(); }
    std::size_t base() const { return base_; }
    const std::string& id(std::size_t i) const { return ids_.at(i); }
    const std::vector<std::string>& ids() const { return ids_; }
    std::optional<std::size_t> index_of(const std::string& id) const;

    const Rational& distance(std::size_t x, std::size_t y) const { return dist_[x * ids_.size() + y]; }
    const Rational& distance(PairId p) const { return distance(p.from, p.to); }

    std::size_t pair_count() const { return ids_.size() * (ids_.size() - 1); }
    std::size_t index(PairId p) const { return pair_index(size(), p); }
    PairId pair(std::size_t index) const { return pair_at(size(), index); }
    std::vector<PairId> pairs() const;

    bool operator==(const FiniteMetricSpace&) const = default;

private:
    friend FiniteMetricSpace validate_metric(std::vector<std::string> ids, const std::string& base_id,
                                             const std::vector<std::vector<Rational>>& table);

    FiniteMetricSpace(std::vector<std::string> ids, std::size_t base, std::vector<Rational> dist)
        : ids_(std::move(ids)), base_(base), dist_(std::move(dist))
    {
    }

    std::vector<std::string> ids_;
    std::size_t base_ = 0;
    std::vector<Rational> dist_;
};

/// Checks every metric axiom exactly and builds the space. Throws MetricError.
FiniteMetricSpace validate_metric(std::vector<std::string> ids, const std::string& base_id,
                                  const std::vector<std::vector<Rational>>& table);

/// Real function on the points vanishing at the base point.
class LipFunction {
public:
    /// Zero function.
    explicit LipFunction(const FiniteMetricSpace& space);
    /// Throws std::invalid_argument on a size mismatch or a nonzero base value.
    LipFunction(const FiniteMetricSpace& space, std::vector<Rational> values);

    const Rational& operator[](std::size_t point) const { return values_[point]; }
    std::size_t size() const { return values_.size(); }
    const std::vector<Rational>& values() const { return values_; }

    LipFunction operator+(const LipFunction& other) const;
    LipFunction operator-(const LipFunction& other) const;
    LipFunction operator*(const Rational& scale) const;
    bool operator==(const LipFunction&) const = default;

private:
    explicit LipFunction(std::vector<Rational> values) : values_(std::move(values)) {}
    std::vector<Rational> values_;
};

/// Finitely supported element of the free space: coefficients of the point
/// evaluations delta(x). Only nonzero coefficients at non-base points are
/// stored, so equal vectors compare equal.
class FreeVector {
public:
    FreeVector() = default;

    /// Adds coeff * delta(point); contributions at the base point vanish.
    void add(const FiniteMetricSpace& space, std::size_t point, const Rational& coeff);

    Rational coefficient(std::size_t point) const;
    const std::map<std::size_t, Rational>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    FreeVector operator+(const FreeVector& other) const;
    FreeVector operator*(const Rational& scale) const;
    bool operator==(const FreeVector&) const = default;

private:
    std::map<std::size_t, Rational> coeffs_;
};

/// Finitely supported nonnegative measure on the pair set. Only strictly
/// positive masses are stored.
class Measure {
public:
    Measure() = default;

    static Measure dirac(PairId p, const Rational& mass = 1);
    /// Builds a measure from a dense vector indexed by pair index. Throws
    /// std::invalid_argument on a negative entry.
    static Measure from_dense(const FiniteMetricSpace& space, const std::vector<Rational>& dense);

    /// Adds mass at p. Throws std::invalid_argument if the result is negative.
    void add(PairId p, const Rational& mass);

    Rational mass(PairId p) const;
    Rational total_mass() const;
    const std::map<PairId, Rational>& masses() const { return masses_; }
    bool is_zero() const { return masses_.empty(); }
    std::vector<Rational> to_dense(const FiniteMetricSpace& space) const;

    Measure operator+(const Measure& other) const;
    /// Throws std::invalid_argument for a negative scale.
    Measure operator*(const Rational& scale) const;
    bool operator==(const Measure&) const = default;

private:
    std::map<PairId, Rational> masses_;
};

/// Rational function on the pair set, stored densely by pair index. Membership
/// in the cone G is checked separately (see cone.hpp).
class ConeFunction {
public:
    ConeFunction() = default;
    /// Zero function on an n-point space.
    explicit ConeFunction(const FiniteMetricSpace& space);
    ConeFunction(const FiniteMetricSpace& space, std::vector<Rational> values);
    /// Constant function.
    static ConeFunction constant(const FiniteMetricSpace& space, const Rational& value);

    std::size_t point_count() const { return point_count_; }
    const Rational& operator()(PairId p) const { return values_[pair_index(point_count_, p)]; }
    Rational& operator()(PairId p) { return values_[pair_index(point_count_, p)]; }
    const Rational& at(std::size_t index) const { return values_[index]; }
    Rational& at(std::size_t index) { return values_[index]; }
    const std::vector<Rational>& values() const { return values_; }

    ConeFunction operator+(const ConeFunction& other) const;
    ConeFunction operator-(const ConeFunction& other) const;
    ConeFunction operator-() const;
    ConeFunction operator*(const Rational& scale) const;
    bool operator==(const ConeFunction&) const = default;

    /// Composition with the reflection (x,y) -> (y,x).
    ConeFunction reflected() const;
    Rational sup_norm() const;
    /// Pointwise comparison.
    bool dominated_by(const ConeFunction& other) const;

private:
    std::size_t point_count_ = 0;
    std::vector<Rational> values_;
};

ConeFunction pointwise_max(const ConeFunction& a, const ConeFunction& b);

/// max over pairs of |f(x) - f(y)| / d(x,y).
Rational lip_norm(const FiniteMetricSpace& space, const LipFunction& f);

/// Normalised elementary molecule (delta(x) - delta(y)) / d(x,y).
FreeVector molecule(const FiniteMetricSpace& space, PairId pair);

/// De Leeuw transform: (x,y) -> (f(x) - f(y)) / d(x,y).
ConeFunction de_leeuw(const FiniteMetricSpace& space, const LipFunction& f);

/// Sum of mass(x,y) * molecule(x,y).
FreeVector push_forward(const FiniteMetricSpace& space, const Measure& mu);

/// Non-base points carrying a nonzero coefficient.
std::set<std::size_t> support(const FreeVector& m);

/// inf over distinct triples of (d(x,u) + d(u,y)) / d(x,y).
Rational gamma_modulus(const FiniteMetricSpace& space);

Rational pairing(const LipFunction& f, const FreeVector& m);
Rational pairing(const ConeFunction& g, const Measure& mu);
/// Pairing with a dense signed vector indexed by pair index.
Rational pairing(const ConeFunction& g, const std::vector<Rational>& dense);

} // namespace lipfree
