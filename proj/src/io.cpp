#include "lipfree/io.hpp"

#include <map>
#include <optional>

namespace lipfree::io {

using nlohmann::json;
using nlohmann::ordered_json;
using Kind = ParseError::Kind;

namespace {

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports "at line L, column C" in the message.
        std::string message = e.what();
        std::string context = "byte " + std::to_string(e.byte);
        const auto at = message.find("at line ");
        if (at != std::string::npos) {
            const auto colon = message.find(':', at);
            context = message.substr(at + 3, colon == std::string::npos ? std::string::npos : colon - at - 3);
        }
        throw ParseError(Kind::SyntaxError, context, "malformed JSON");
    }
}

Rational rational_field(const json& value, const std::string& context)
{
    if (value.is_number_integer())
        return Rational(value.dump(), 10);
    if (!value.is_string())
        throw ParseError(Kind::SyntaxError, context, "expected a rational string such as \"3/2\"");
    try {
        return parse_rational(value.get<std::string>());
    } catch (const RationalSyntaxError& e) {
        throw ParseError(Kind::SyntaxError, context, e.what());
    }
}

const json& field(const json& object, const char* key, const std::string& context)
{
    if (!object.is_object())
        throw ParseError(Kind::SyntaxError, context, "expected an object");
    const auto it = object.find(key);
    if (it == object.end())
        throw ParseError(Kind::SyntaxError, context.empty() ? key : context + "." + key, "missing field");
    return *it;
}

std::string string_field(const json& object, const char* key, const std::string& context)
{
    const json& value = field(object, key, context);
    if (!value.is_string())
        throw ParseError(Kind::SyntaxError, context.empty() ? key : context + "." + key, "expected a string");
    return value.get<std::string>();
}

std::size_t point_index(const FiniteMetricSpace& space, const std::string& id, const std::string& context)
{
    const auto idx = space.index_of(id);
    if (!idx)
        throw ParseError(Kind::SemanticError, context, "unknown point '" + id + "'");
    return *idx;
}

} // namespace

FiniteMetricSpace parse_space(std::string_view text)
{
    const json doc = parse_json(text);
    if (!doc.is_object())
        throw ParseError(Kind::SyntaxError, "", "space document must be a JSON object");

    const json& points_json = field(doc, "points", "");
    if (!points_json.is_array())
        throw ParseError(Kind::SyntaxError, "points", "expected an array of ids");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < points_json.size(); ++i) {
        if (!points_json[i].is_string())
            throw ParseError(Kind::SyntaxError, "points[" + std::to_string(i) + "]", "expected a string");
        ids.push_back(points_json[i].get<std::string>());
    }
    const std::string base = string_field(doc, "base", "");
    const std::size_t n = ids.size();

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i)
        index.emplace(ids[i], i);

    std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n, Rational(0)));
    const json& dist = field(doc, "distances", "");
    if (!dist.is_array())
        throw ParseError(Kind::SyntaxError, "distances", "expected a matrix or a list of entries");

    const bool sparse = !dist.empty() && dist[0].is_object();
    if (!sparse) {
        if (dist.size() != n)
            throw ParseError(Kind::SemanticError, "distances",
                             "matrix has " + std::to_string(dist.size()) + " rows for " + std::to_string(n) +
                                 " points");
        for (std::size_t x = 0; x < n; ++x) {
            const std::string row_ctx = "distances[" + std::to_string(x) + "]";
            if (!dist[x].is_array())
                throw ParseError(Kind::SyntaxError, row_ctx, "expected an array");
            if (dist[x].size() != n)
                throw ParseError(Kind::SemanticError, row_ctx, "row has the wrong length");
            for (std::size_t y = 0; y < n; ++y)
                table[x][y] = rational_field(dist[x][y], row_ctx + "[" + std::to_string(y) + "]");
        }
    } else {
        std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
        for (std::size_t k = 0; k < dist.size(); ++k) {
            const std::string ctx = "distances[" + std::to_string(k) + "]";
            const std::string from = string_field(dist[k], "from", ctx);
            const std::string to = string_field(dist[k], "to", ctx);
            const Rational d = rational_field(field(dist[k], "distance", ctx), ctx + ".distance");
            const auto fi = index.find(from);
            const auto ti = index.find(to);
            if (fi == index.end() || ti == index.end())
                throw ParseError(Kind::SemanticError, ctx, "unknown point in entry");
            const std::size_t x = fi->second;
            const std::size_t y = ti->second;
            if (x == y)
                throw ParseError(Kind::SemanticError, ctx, "entries must join distinct points");
            if (seen[x][y])
                throw ParseError(Kind::SemanticError, ctx, "pair listed twice");
            seen[x][y] = seen[y][x] = true;
            table[x][y] = table[y][x] = d;
        }
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = x + 1; y < n; ++y) {
                if (!seen[x][y])
                    throw ParseError(Kind::SemanticError, "distances",
                                     "missing distance between '" + ids[x] + "' and '" + ids[y] + "'");
            }
        }
    }

    try {
        return validate_metric(std::move(ids), base, table);
    } catch (const MetricError& e) {
        throw ParseError(Kind::SemanticError, to_string(e.kind()), e.what());
    }
}

std::string emit_space(const FiniteMetricSpace& space)
{
    ordered_json doc;
    doc["points"] = space.ids();
    doc["base"] = space.id(space.base());
    ordered_json rows = ordered_json::array();
    for (std::size_t x = 0; x < space.size(); ++x) {
        ordered_json row = ordered_json::array();
        for (std::size_t y = 0; y < space.size(); ++y)
            row.push_back(to_string(space.distance(x, y)));
        rows.push_back(std::move(row));
    }
    doc["distances"] = std::move(rows);
    return doc.dump(2) + "\n";
}

Measure parse_measure(const FiniteMetricSpace& space, std::string_view text)
{
    const json doc = parse_json(text);
    if (!doc.is_array())
        throw ParseError(Kind::SyntaxError, "", "measure document must be a JSON array");
    Measure mu;
    for (std::size_t k = 0; k < doc.size(); ++k) {
        const std::string ctx = "[" + std::to_string(k) + "]";
        const std::size_t x = point_index(space, string_field(doc[k], "from", ctx), ctx + ".from");
        const std::size_t y = point_index(space, string_field(doc[k], "to", ctx), ctx + ".to");
        const Rational mass = rational_field(field(doc[k], "mass", ctx), ctx + ".mass");
        if (x == y)
            throw ParseError(Kind::SemanticError, ctx, "pair coordinates must differ");
        if (mass <= 0)
            throw ParseError(Kind::SemanticError, ctx + ".mass", "mass must be positive");
        mu.add({x, y}, mass);
    }
    return mu;
}

ordered_json measure_json(const FiniteMetricSpace& space, const Measure& mu)
{
    ordered_json out = ordered_json::array();
    for (const auto& [p, mass] : mu.masses())
        out.push_back({{"from", space.id(p.from)}, {"to", space.id(p.to)}, {"mass", to_string(mass)}});
    return out;
}

std::string emit_measure(const FiniteMetricSpace& space, const Measure& mu)
{
    return measure_json(space, mu).dump(2) + "\n";
}

ordered_json vector_json(const FiniteMetricSpace& space, const FreeVector& m)
{
    ordered_json out = ordered_json::object();
    for (const auto& [point, coeff] : m.terms())
        out[space.id(point)] = to_string(coeff);
    return out;
}

ordered_json pair_function_json(const FiniteMetricSpace& space, const ConeFunction& g)
{
    ordered_json out = ordered_json::array();
    for (std::size_t k = 0; k < space.pair_count(); ++k) {
        const PairId p = space.pair(k);
        out.push_back({{"from", space.id(p.from)}, {"to", space.id(p.to)}, {"value", to_string(g.at(k))}});
    }
    return out;
}

namespace {

std::vector<std::string_view> split_top_level(std::string_view spec)
{
    std::vector<std::string_view> terms;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (spec[i] == '(')
            ++depth;
        else if (spec[i] == ')')
            --depth;
        else if (spec[i] == ',' && depth == 0) {
            terms.push_back(spec.substr(start, i - start));
            start = i + 1;
        }
    }
    terms.push_back(spec.substr(start));
    return terms;
}

Rational spec_rational(std::string_view text, const std::string& ctx)
{
    try {
        return parse_rational(text);
    } catch (const RationalSyntaxError& e) {
        throw ParseError(Kind::SyntaxError, ctx, e.what());
    }
}

} // namespace

FreeVector parse_vector_spec(const FiniteMetricSpace& space, std::string_view spec)
{
    FreeVector m;
    if (spec.empty())
        return m;
    const auto terms = split_top_level(spec);
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string ctx = "term " + std::to_string(k + 1);
        std::string_view term = terms[k];
        if (term.empty())
            throw ParseError(Kind::SyntaxError, ctx, "empty term");

        const auto eq = term.find('=');
        if (eq != std::string_view::npos) {
            const std::size_t x = point_index(space, std::string(term.substr(0, eq)), ctx);
            m.add(space, x, spec_rational(term.substr(eq + 1), ctx));
            continue;
        }

        Rational scale = 1;
        const auto star = term.find('*');
        if (star != std::string_view::npos) {
            scale = spec_rational(term.substr(0, star), ctx);
            term = term.substr(star + 1);
        }
        if (term.size() < 5 || term.substr(0, 2) != "m(" || term.back() != ')')
            throw ParseError(Kind::SyntaxError, ctx, "expected ID=RAT or [RAT*]m(X,Y)");
        const std::string_view inner = term.substr(2, term.size() - 3);
        const auto comma = inner.find(',');
        if (comma == std::string_view::npos)
            throw ParseError(Kind::SyntaxError, ctx, "molecule needs two points");
        const std::size_t x = point_index(space, std::string(inner.substr(0, comma)), ctx);
        const std::size_t y = point_index(space, std::string(inner.substr(comma + 1)), ctx);
        if (x == y)
            throw ParseError(Kind::SemanticError, ctx, "molecule needs distinct points");
        m = m + molecule(space, {x, y}) * scale;
    }
    return m;
}

FreeVector parse_vector_document(const FiniteMetricSpace& space, std::string_view text)
{
    const json doc = parse_json(text);
    if (!doc.is_object())
        throw ParseError(Kind::SyntaxError, "", "vector document must be a JSON object");
    FreeVector m;
    for (const auto& [id, value] : doc.items())
        m.add(space, point_index(space, id, id), rational_field(value, id));
    return m;
}

} // namespace lipfree::io
