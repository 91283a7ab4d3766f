#include "lipfree/core.hpp"

#include <algorithm>
#include <unordered_set>

namespace lipfree {

std::string to_string(MetricError::Kind kind)
{
    switch (kind) {
    case MetricError::Kind::NotSymmetric: return "NotSymmetric";
    case MetricError::Kind::NegativeOrZeroOffDiagonal: return "NegativeOrZeroOffDiagonal";
    case MetricError::Kind::NonzeroDiagonal: return "NonzeroDiagonal";
    case MetricError::Kind::TriangleViolation: return "TriangleViolation";
    case MetricError::Kind::TooFewPoints: return "TooFewPoints";
    case MetricError::Kind::UnknownBasePoint: return "UnknownBasePoint";
    case MetricError::Kind::DuplicatePoint: return "DuplicatePoint";
    case MetricError::Kind::ShapeMismatch: return "ShapeMismatch";
    }
    return "Unknown";
}

std::optional<std::size_t> FiniteMetricSpace::index_of(const std::string& id) const
{
    const auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
}

std::vector<PairId> FiniteMetricSpace::pairs() const
{
    std::vector<PairId> out;
    out.reserve(pair_count());
    for (std::size_t k = 0; k < pair_count(); ++k)
        out.push_back(pair(k));
    return out;
}

FiniteMetricSpace validate_metric(std::vector<std::string> ids, const std::string& base_id,
                                  const std::vector<std::vector<Rational>>& table)
{
    using Kind = MetricError::Kind;
    const std::size_t n = ids.size();
    if (n < 3)
        throw MetricError(Kind::TooFewPoints, "a metric space needs at least three points, got " +
                                                  std::to_string(n));
    std::unordered_set<std::string> seen;
    for (const auto& id : ids) {
        if (!seen.insert(id).second)
            throw MetricError(Kind::DuplicatePoint, "duplicate point id '" + id + "'");
    }
    const auto base_it = std::find(ids.begin(), ids.end(), base_id);
    if (base_it == ids.end())
        throw MetricError(Kind::UnknownBasePoint, "base point '" + base_id + "' is not a point");
    if (table.size() != n)
        throw MetricError(Kind::ShapeMismatch, "distance table has " + std::to_string(table.size()) +
                                                   " rows for " + std::to_string(n) + " points");
    for (const auto& row : table) {
        if (row.size() != n)
            throw MetricError(Kind::ShapeMismatch, "distance table is not square");
    }

    // GMP arithmetic assumes canonical operands.
    auto d = table;
    for (auto& row : d)
        for (auto& v : row)
            v.canonicalize();

    for (std::size_t x = 0; x < n; ++x) {
        if (d[x][x] != 0)
            throw MetricError(Kind::NonzeroDiagonal, "d(" + ids[x] + "," + ids[x] + ") must be 0");
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y)
                continue;
            if (d[x][y] != d[y][x])
                throw MetricError(Kind::NotSymmetric,
                                  "d(" + ids[x] + "," + ids[y] + ") != d(" + ids[y] + "," + ids[x] + ")");
            if (d[x][y] <= 0)
                throw MetricError(Kind::NegativeOrZeroOffDiagonal,
                                  "d(" + ids[x] + "," + ids[y] + ") must be positive");
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t y = 0; y < n; ++y) {
                if (d[x][y] > d[x][u] + d[u][y]) {
                    throw MetricError(Kind::TriangleViolation,
                                      "triangle inequality fails: d(" + ids[x] + "," + ids[y] + ") > d(" +
                                          ids[x] + "," + ids[u] + ") + d(" + ids[u] + "," + ids[y] + ")",
                                      Triple{x, u, y});
                }
            }
        }
    }

    std::vector<Rational> dist;
    dist.reserve(n * n);
    for (const auto& row : d)
        dist.insert(dist.end(), row.begin(), row.end());
    const auto base = static_cast<std::size_t>(base_it - ids.begin());
    return FiniteMetricSpace(std::move(ids), base, std::move(dist));
}

LipFunction::LipFunction(const FiniteMetricSpace& space) : values_(space.size(), Rational(0)) {}

LipFunction::LipFunction(const FiniteMetricSpace& space, std::vector<Rational> values)
    : values_(std::move(values))
{
    if (values_.size() != space.size())
        throw std::invalid_argument("function has " + std::to_string(values_.size()) + " values for " +
                                    std::to_string(space.size()) + " points");
    if (values_[space.base()] != 0)
        throw std::invalid_argument("function must vanish at the base point");
    for (auto& v : values_)
        v.canonicalize();
}

LipFunction LipFunction::operator+(const LipFunction& other) const
{
    std::vector<Rational> out(values_);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += other.values_.at(i);
    return LipFunction(std::move(out));
}

LipFunction LipFunction::operator-(const LipFunction& other) const
{
    std::vector<Rational> out(values_);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] -= other.values_.at(i);
    return LipFunction(std::move(out));
}

LipFunction LipFunction::operator*(const Rational& scale) const
{
    std::vector<Rational> out(values_);
    for (auto& v : out)
        v *= scale;
    return LipFunction(std::move(out));
}

void FreeVector::add(const FiniteMetricSpace& space, std::size_t point, const Rational& raw)
{
    Rational coeff(raw);
    coeff.canonicalize();
    if (point == space.base() || coeff == 0)
        return;
    auto [it, inserted] = coeffs_.try_emplace(point, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            coeffs_.erase(it);
    }
}

Rational FreeVector::coefficient(std::size_t point) const
{
    const auto it = coeffs_.find(point);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

FreeVector FreeVector::operator+(const FreeVector& other) const
{
    FreeVector out(*this);
    for (const auto& [point, coeff] : other.coeffs_) {
        auto [it, inserted] = out.coeffs_.try_emplace(point, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0)
                out.coeffs_.erase(it);
        }
    }
    return out;
}

FreeVector FreeVector::operator*(const Rational& scale) const
{
    FreeVector out;
    if (scale == 0)
        return out;
    for (const auto& [point, coeff] : coeffs_)
        out.coeffs_.emplace(point, coeff * scale);
    return out;
}

Measure Measure::dirac(PairId p, const Rational& mass)
{
    Measure out;
    out.add(p, mass);
    return out;
}

Measure Measure::from_dense(const FiniteMetricSpace& space, const std::vector<Rational>& dense)
{
    if (dense.size() != space.pair_count())
        throw std::invalid_argument("dense measure has the wrong length");
    Measure out;
    for (std::size_t k = 0; k < dense.size(); ++k) {
        if (dense[k] < 0)
            throw std::invalid_argument("measure entries must be nonnegative");
        if (dense[k] > 0)
            out.masses_.emplace(space.pair(k), dense[k]);
    }
    return out;
}

void Measure::add(PairId p, const Rational& raw)
{
    Rational mass(raw);
    mass.canonicalize();
    if (p.from == p.to)
        throw std::invalid_argument("measure pairs must have distinct coordinates");
    if (mass == 0)
        return;
    auto it = masses_.find(p);
    const Rational updated = (it == masses_.end() ? Rational(0) : it->second) + mass;
    if (updated < 0)
        throw std::invalid_argument("measure mass would become negative");
    if (updated == 0)
        masses_.erase(it);
    else if (it == masses_.end())
        masses_.emplace(p, updated);
    else
        it->second = updated;
}

Rational Measure::mass(PairId p) const
{
    const auto it = masses_.find(p);
    return it == masses_.end() ? Rational(0) : it->second;
}

Rational Measure::total_mass() const
{
    Rational total = 0;
    for (const auto& [p, m] : masses_)
        total += m;
    return total;
}

std::vector<Rational> Measure::to_dense(const FiniteMetricSpace& space) const
{
    std::vector<Rational> dense(space.pair_count(), Rational(0));
    for (const auto& [p, m] : masses_)
        dense.at(space.index(p)) = m;
    return dense;
}

Measure Measure::operator+(const Measure& other) const
{
    Measure out(*this);
    for (const auto& [p, m] : other.masses_)
        out.add(p, m);
    return out;
}

Measure Measure::operator*(const Rational& scale) const
{
    if (scale < 0)
        throw std::invalid_argument("measures can only be scaled by nonnegative numbers");
    Measure out;
    if (scale == 0)
        return out;
    for (const auto& [p, m] : masses_)
        out.masses_.emplace(p, m * scale);
    return out;
}

ConeFunction::ConeFunction(const FiniteMetricSpace& space)
    : point_count_(space.size()), values_(space.pair_count(), Rational(0))
{
}

ConeFunction::ConeFunction(const FiniteMetricSpace& space, std::vector<Rational> values)
    : point_count_(space.size()), values_(std::move(values))
{
    if (values_.size() != space.pair_count())
        throw std::invalid_argument("pair function has the wrong number of values");
    for (auto& v : values_)
        v.canonicalize();
}

ConeFunction ConeFunction::constant(const FiniteMetricSpace& space, const Rational& value)
{
    return ConeFunction(space, std::vector<Rational>(space.pair_count(), value));
}

ConeFunction ConeFunction::operator+(const ConeFunction& other) const
{
    ConeFunction out(*this);
    for (std::size_t k = 0; k < values_.size(); ++k)
        out.values_[k] += other.values_.at(k);
    return out;
}

ConeFunction ConeFunction::operator-(const ConeFunction& other) const
{
    ConeFunction out(*this);
    for (std::size_t k = 0; k < values_.size(); ++k)
        out.values_[k] -= other.values_.at(k);
    return out;
}

ConeFunction ConeFunction::operator-() const
{
    ConeFunction out(*this);
    for (auto& v : out.values_)
        v = -v;
    return out;
}

ConeFunction ConeFunction::operator*(const Rational& scale) const
{
    ConeFunction out(*this);
    for (auto& v : out.values_)
        v *= scale;
    return out;
}

ConeFunction ConeFunction::reflected() const
{
    ConeFunction out(*this);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const PairId p = pair_at(point_count_, k);
        out.values_[k] = values_[pair_index(point_count_, p.reflected())];
    }
    return out;
}

Rational ConeFunction::sup_norm() const
{
    Rational best = 0;
    for (const auto& v : values_)
        best = std::max(best, abs(v));
    return best;
}

bool ConeFunction::dominated_by(const ConeFunction& other) const
{
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (values_[k] > other.values_.at(k))
            return false;
    }
    return true;
}

ConeFunction pointwise_max(const ConeFunction& a, const ConeFunction& b)
{
    ConeFunction out(a);
    for (std::size_t k = 0; k < a.values().size(); ++k)
        out.at(k) = std::max(a.at(k), b.at(k));
    return out;
}

Rational lip_norm(const FiniteMetricSpace& space, const LipFunction& f)
{
    Rational best = 0;
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (std::size_t y = x + 1; y < space.size(); ++y)
            best = std::max(best, Rational(abs(f[x] - f[y]) / space.distance(x, y)));
    }
    return best;
}

FreeVector molecule(const FiniteMetricSpace& space, PairId pair)
{
    const Rational scale = 1 / space.distance(pair);
    FreeVector m;
    m.add(space, pair.from, scale);
    m.add(space, pair.to, -scale);
    return m;
}

ConeFunction de_leeuw(const FiniteMetricSpace& space, const LipFunction& f)
{
    ConeFunction g(space);
    for (std::size_t k = 0; k < space.pair_count(); ++k) {
        const PairId p = space.pair(k);
        g.at(k) = (f[p.from] - f[p.to]) / space.distance(p);
    }
    return g;
}

FreeVector push_forward(const FiniteMetricSpace& space, const Measure& mu)
{
    FreeVector out;
    for (const auto& [p, mass] : mu.masses()) {
        const Rational scale = mass / space.distance(p);
        out.add(space, p.from, scale);
        out.add(space, p.to, -scale);
    }
    return out;
}

std::set<std::size_t> support(const FreeVector& m)
{
    std::set<std::size_t> out;
    for (const auto& [point, coeff] : m.terms())
        out.insert(point);
    return out;
}

Rational gamma_modulus(const FiniteMetricSpace& space)
{
    const std::size_t n = space.size();
    std::optional<Rational> best;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x)
                continue;
            for (std::size_t u = 0; u < n; ++u) {
                if (u == x || u == y)
                    continue;
                Rational ratio = (space.distance(x, u) + space.distance(u, y)) / space.distance(x, y);
                if (!best || ratio < *best)
                    best = std::move(ratio);
            }
        }
    }
    return *best;
}

Rational pairing(const LipFunction& f, const FreeVector& m)
{
    Rational total = 0;
    for (const auto& [point, coeff] : m.terms())
        total += coeff * f[point];
    return total;
}

Rational pairing(const ConeFunction& g, const Measure& mu)
{
    Rational total = 0;
    for (const auto& [p, mass] : mu.masses())
        total += mass * g(p);
    return total;
}

Rational pairing(const ConeFunction& g, const std::vector<Rational>& dense)
{
    Rational total = 0;
    for (std::size_t k = 0; k < dense.size(); ++k) {
        if (dense[k] != 0)
            total += dense[k] * g.at(k);
    }
    return total;
}

} // namespace lipfree
