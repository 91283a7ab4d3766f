#include "lipfree/cli.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <sstream>

using nlohmann::json;
namespace exit_code = lipfree::cli::exit_code;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;

    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = lipfree::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name)
{
    return std::string(LIPFREE_FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST_CASE("check-metric")
{
    const auto ok = run({"check-metric", fixture("line3.json")});
    REQUIRE(ok.code == exit_code::ok);
    REQUIRE(ok.report()["valid"] == true);
    REQUIRE(ok.report()["points"] == 3);
    REQUIRE(ok.report().contains("summary"));

    const auto bad = run({"check-metric", fixture("not_metric.json")});
    REQUIRE(bad.code == exit_code::predicate_false);
    REQUIRE(bad.report()["valid"] == false);

    const auto syntax = run({"check-metric", fixture("bad_rational.json")});
    REQUIRE(syntax.code == exit_code::error);
    REQUIRE(syntax.err.find("distances[0][1]") != std::string::npos);
}

TEST_CASE("exit codes for usage and I/O failures")
{
    REQUIRE(run({}).code == exit_code::usage);
    REQUIRE(run({"no-such-command"}).code == exit_code::usage);
    REQUIRE(run({"free-norm", fixture("wedge4.json")}).code == exit_code::usage);
    REQUIRE(run({"demo", "nope"}).code == exit_code::usage);
    REQUIRE(run({"gamma", fixture("missing.json")}).code == exit_code::io);
    REQUIRE(run({"free-norm", fixture("wedge4.json"), "--vector", "@" + fixture("missing.json")}).code ==
            exit_code::io);
}

TEST_CASE("gamma and free-norm")
{
    const auto gamma = run({"gamma", fixture("discrete4.json")});
    REQUIRE(gamma.code == exit_code::ok);
    REQUIRE(gamma.report()["gamma"] == "2");

    const auto norm = run({"free-norm", fixture("wedge4.json"), "--vector", "m(0,a),m(b,c)"});
    REQUIRE(norm.code == exit_code::ok);
    REQUIRE(norm.report()["free_norm"] == "3/2");

    const auto from_file = run({"free-norm", fixture("wedge4.json"), "--vector", "@" + fixture("wedge4_vector.json")});
    REQUIRE(from_file.report()["free_norm"] == "3/2");

    const auto decimal = run({"--decimal", "3", "free-norm", fixture("wedge4.json"), "--vector", "a=1"});
    REQUIRE(decimal.code == exit_code::ok);
    REQUIRE(decimal.report()["free_norm"] == "1");
    REQUIRE(decimal.report().contains("decimal_approximation_non_authoritative"));
}

TEST_CASE("predicates")
{
    const auto minimal = run({"is-minimal", fixture("line3.json"), "--measure", fixture("line3_dirac.json")});
    REQUIRE(minimal.code == exit_code::ok);
    REQUIRE(minimal.report()["minimal"] == true);

    const auto not_minimal = run({"is-minimal", fixture("line3.json"), "--measure", fixture("line3_nu.json")});
    REQUIRE(not_minimal.code == exit_code::predicate_false);
    REQUIRE(not_minimal.report()["strictly_below"] == json::parse(R"([{"from": "1", "to": "0", "mass": "1"}])"));

    REQUIRE(run({"is-optimal", fixture("wedge4.json"), "--measure", fixture("wedge4_lambda.json")}).code ==
            exit_code::ok);
    REQUIRE(run({"is-optimal", fixture("wedge4.json"), "--measure", fixture("wedge4_mu.json")}).code ==
            exit_code::predicate_false);

    const auto prec = run({"precedes", fixture("line3.json"), "--left", fixture("line3_dirac.json"), "--right",
                           fixture("line3_nu.json")});
    REQUIRE(prec.code == exit_code::ok);
    REQUIRE(prec.report()["witness"]["kind"] == "generator_combination");

    const auto back = run({"precedes", fixture("line3.json"), "--left", fixture("line3_nu.json"), "--right",
                           fixture("line3_dirac.json")});
    REQUIRE(back.code == exit_code::predicate_false);
    REQUIRE(back.report()["witness"]["kind"] == "separating_g");
}

TEST_CASE("represent and extreme")
{
    const auto rep = run({"represent", fixture("wedge4.json"), "--vector", "m(0,a),m(b,c)", "--minimal"});
    REQUIRE(rep.code == exit_code::ok);
    REQUIRE(rep.report()["optimal"] == true);
    REQUIRE(rep.report()["minimal"] == true);

    const auto ext = run({"extreme", fixture("line3.json")});
    REQUIRE(ext.code == exit_code::ok);
    REQUIRE(ext.report()["extreme_pairs"].size() == 4);
    REQUIRE(ext.report()["vertex_oracle_agrees"] == true);
}

TEST_CASE("demos print the example constants")
{
    const auto choquet = run({"demo", "choquet-motivation"}).report();
    REQUIRE(choquet["g_at_dirac"] == "1");
    REQUIRE(choquet["g_at_nu"] == "2");
    REQUIRE(choquet["dirac_precedes_nu"] == true);
    REQUIRE(choquet["nu_precedes_dirac"] == false);
    REQUIRE(choquet["dirac_minimal"] == true);
    REQUIRE(choquet["nu_minimal"] == false);
    REQUIRE(choquet["minimize_below_nu"] == json::parse(R"([{"from": "1", "to": "0", "mass": "1"}])"));

    const auto wedge = run({"demo", "minimal-nonoptimal"}).report();
    REQUIRE(wedge["mass_mu"] == "2");
    REQUIRE(wedge["mass_lambda"] == "3/2");
    REQUIRE(wedge["free_norm"] == "3/2");
    REQUIRE(wedge["pushforwards_equal"] == true);
    REQUIRE(wedge["minimal_mu"] == true);
    REQUIRE(wedge["optimal_mu"] == false);
    REQUIRE(wedge["optimal_lambda"] == true);

    const auto discrete = run({"demo", "min-opt-non-unique"}).report();
    REQUIRE(discrete["gamma"] == "2");
    REQUIRE(discrete["free_norm"] == "2");
    for (const auto& row : discrete["representations"]) {
        REQUIRE(row["optimal"] == true);
        REQUIRE(row["minimal"] == true);
    }
    REQUIRE(lipfree::cli::demo_names().size() == 3);
}
