#pragma once

#include "lipfree/core.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lipfree::io {

/// Document errors. `context` names the offending field ("distances[1][2]")
/// or the line/column for malformed JSON.
class ParseError : public std::runtime_error {
public:
    enum class Kind { SyntaxError, SemanticError };

    ParseError(Kind kind, std::string context, const std::string& message)
        : std::runtime_error(context.empty() ? message : context + ": " + message), kind_(kind),
          context_(std::move(context))
    {
    }

    Kind kind() const { return kind_; }
    const std::string& context() const { return context_; }

private:
    Kind kind_;
    std::string context_;
};

/// Space document:
///
///     {"points": ["0", "h", "1"], "base": "0",
///      "distances": [["0", "1/2", "1"], ["1/2", "0", "1/2"], ["1", "1/2", "0"]]}
///
/// `distances` may instead be a list of {"from", "to", "distance"} entries
/// covering every unordered pair once. Rationals are "p/q" or integer strings
/// (JSON integers are accepted too). Metric failures surface as
/// SemanticError carrying the MetricError message.
FiniteMetricSpace parse_space(std::string_view text);

/// Canonical form: full matrix, canonical rationals, keys in fixed order.
std::string emit_space(const FiniteMetricSpace& space);

/// Measure document: [{"from": "1", "to": "0", "mass": "1/2"}, ...].
/// Repeated pairs add up.
Measure parse_measure(const FiniteMetricSpace& space, std::string_view text);
std::string emit_measure(const FiniteMetricSpace& space, const Measure& mu);

/// Inline free-vector syntax: comma-separated terms, each either `ID=RAT`
/// (a multiple of delta(ID)) or `[RAT*]m(X,Y)` (a multiple of the molecule).
/// A spec starting with '@' is not handled here (see the CLI).
FreeVector parse_vector_spec(const FiniteMetricSpace& space, std::string_view spec);

/// {"ID": "coeff", ...} object form of a free vector.
FreeVector parse_vector_document(const FiniteMetricSpace& space, std::string_view text);

nlohmann::ordered_json measure_json(const FiniteMetricSpace& space, const Measure& mu);
nlohmann::ordered_json vector_json(const FiniteMetricSpace& space, const FreeVector& m);
nlohmann::ordered_json pair_function_json(const FiniteMetricSpace& space, const ConeFunction& g);

} // namespace lipfree::io
