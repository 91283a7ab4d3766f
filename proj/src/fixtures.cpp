#include "lipfree/fixtures.hpp"

namespace lipfree::fixtures {

namespace {

using Table = std::vector<std::vector<Rational>>;

} // namespace

FiniteMetricSpace line3()
{
    const Rational half(1, 2);
    return validate_metric({"0", "h", "1"}, "0", Table{{0, half, 1}, {half, 0, half}, {1, half, 0}});
}

FiniteMetricSpace wedge4()
{
    const Rational half(1, 2);
    return validate_metric({"0", "a", "b", "c"}, "0",
                           Table{{0, 1, 1, 1}, {1, 0, half, 1}, {1, half, 0, 1}, {1, 1, 1, 0}});
}

FiniteMetricSpace discrete4()
{
    return validate_metric({"0", "1", "2", "3"}, "0",
                           Table{{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}});
}

PairId pair(const FiniteMetricSpace& space, const std::string& from, const std::string& to)
{
    const auto x = space.index_of(from);
    const auto y = space.index_of(to);
    if (!x || !y || *x == *y)
        throw std::invalid_argument("no pair (" + from + "," + to + ")");
    return {*x, *y};
}

} // namespace lipfree::fixtures
