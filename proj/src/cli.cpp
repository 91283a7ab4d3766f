#include "lipfree/cli.hpp"

#include "lipfree/cone.hpp"
#include "lipfree/fixtures.hpp"
#include "lipfree/freespace.hpp"
#include "lipfree/io.hpp"
#include "lipfree/order.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace lipfree::cli {

using nlohmann::ordered_json;

namespace {

class IoFailure : public std::runtime_error {
public:
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

class UsageFailure : public std::runtime_error {
public:
    explicit UsageFailure(const std::string& what) : std::runtime_error(what) {}
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoFailure("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoFailure("cannot read '" + path + "'");
    return buffer.str();
}

// JSON report with a side table of rational values for --decimal.
class Report {
public:
    explicit Report(const std::string& command) { doc_["command"] = command; }

    ordered_json& operator[](const char* key) { return doc_[key]; }

    void rational(const char* key, const Rational& value)
    {
        doc_[key] = to_string(value);
        rationals_.emplace_back(key, value);
    }

    void emit(std::ostream& out, const std::string& summary, int decimal_digits)
    {
        if (decimal_digits >= 0 && !rationals_.empty()) {
            ordered_json approx = ordered_json::object();
            for (const auto& [key, value] : rationals_)
                approx[key] = to_decimal(value, decimal_digits);
            doc_["decimal_approximation_non_authoritative"] = std::move(approx);
        }
        doc_["summary"] = summary;
        out << doc_.dump(2) << "\n";
    }

private:
    ordered_json doc_ = ordered_json::object();
    std::vector<std::pair<std::string, Rational>> rationals_;
};

ordered_json point_set_json(const FiniteMetricSpace& space, const std::set<std::size_t>& points)
{
    ordered_json out = ordered_json::array();
    for (std::size_t x : points)
        out.push_back(space.id(x));
    return out;
}

ordered_json point_map_json(const FiniteMetricSpace& space, const std::map<std::size_t, Rational>& values)
{
    ordered_json out = ordered_json::object();
    for (const auto& [x, v] : values)
        out[space.id(x)] = to_string(v);
    return out;
}

ordered_json pairs_json(const FiniteMetricSpace& space, const std::set<PairId>& pairs)
{
    ordered_json out = ordered_json::array();
    for (const PairId p : pairs)
        out.push_back({space.id(p.from), space.id(p.to)});
    return out;
}

const char* yes_no(bool value) { return value ? "yes" : "no"; }

struct Options {
    int decimal = -1;
    std::string space_file;
    std::string vector_spec;
    std::string measure_file;
    std::string left_file;
    std::string right_file;
    std::string demo_name;
    bool minimal = false;
};

FreeVector load_vector(const FiniteMetricSpace& space, const std::string& spec)
{
    if (!spec.empty() && spec[0] == '@')
        return io::parse_vector_document(space, read_file(spec.substr(1)));
    return io::parse_vector_spec(space, spec);
}

int cmd_check_metric(const Options& opt, std::ostream& out)
{
    Report report("check-metric");
    try {
        const FiniteMetricSpace space = io::parse_space(read_file(opt.space_file));
        report["valid"] = true;
        report["points"] = space.size();
        report["base"] = space.id(space.base());
        report.emit(out, "valid pointed metric space on " + std::to_string(space.size()) + " points",
                    opt.decimal);
        return exit_code::ok;
    } catch (const io::ParseError& e) {
        if (e.kind() != io::ParseError::Kind::SemanticError)
            throw;
        report["valid"] = false;
        report["error"] = e.context();
        report["message"] = e.what();
        report.emit(out, std::string("not a valid metric space: ") + e.what(), opt.decimal);
        return exit_code::predicate_false;
    }
}

int cmd_gamma(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = io::parse_space(read_file(opt.space_file));
    Report report("gamma");
    const Rational gamma = gamma_modulus(space);
    report.rational("gamma", gamma);
    report.emit(out, "gamma(M) = " + to_string(gamma) +
                         (gamma > 1 ? " (> 1: every optimal representation is minimal)" : ""),
                opt.decimal);
    return exit_code::ok;
}

int cmd_free_norm(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = io::parse_space(read_file(opt.space_file));
    const FreeVector m = load_vector(space, opt.vector_spec);
    Report report("free-norm");
    report["vector"] = io::vector_json(space, m);
    const Rational norm = free_norm(space, m);
    report.rational("free_norm", norm);
    report.emit(out, "||m|| = " + to_string(norm), opt.decimal);
    return exit_code::ok;
}

void put_representation(Report& report, const FiniteMetricSpace& space, const RepresentationReport& rep)
{
    report["measure"] = io::measure_json(space, rep.measure);
    report.rational("mass", rep.mass);
    report.rational("free_norm", rep.free_norm);
    report["optimal"] = rep.optimal;
    report["minimal"] = rep.minimal;
    report["shadow"] = point_set_json(space, rep.shadow);
    report["marginal_first"] = point_map_json(space, rep.marginal_first);
    report["marginal_second"] = point_map_json(space, rep.marginal_second);
}

int cmd_represent(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = io::parse_space(read_file(opt.space_file));
    const FreeVector m = load_vector(space, opt.vector_spec);
    const RepresentationReport rep = opt.minimal ? minimal_optimal_representation(space, m)
                                                 : describe(space, optimal_representation(space, m));
    Report report("represent");
    report["vector"] = io::vector_json(space, m);
    put_representation(report, space, rep);
    report.emit(out,
                std::string(opt.minimal ? "minimal optimal" : "optimal") + " representation of mass " +
                    to_string(rep.mass) + " on " + std::to_string(rep.measure.masses().size()) + " pairs",
                opt.decimal);
    return exit_code::ok;
}

int cmd_is_minimal(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = io::parse_space(read_file(opt.space_file));
    const Measure mu = io::parse_measure(space, read_file(opt.measure_file));
    const bool minimal = is_minimal(space, mu);
    Report report("is-minimal");
    report["minimal"] = minimal;
    if (!minimal)
        report["strictly_below"] = io::measure_json(space, minimize_below(space, mu));
    report.emit(out, std::string("minimal: ") + yes_no(minimal), opt.decimal);
    return minimal ? exit_code::ok : exit_code::predicate_false;
}

int cmd_is_optimal(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = io::parse_space(read_file(opt.space_file));
    const Measure mu = io::parse_measure(space, read_file(opt.measure_file));
    const Rational mass = mu.total_mass();
    const Rational norm = free_norm(space, push_forward(space, mu));
    Report report("is-optimal");
    report["optimal"] = mass == norm;
    report.rational("mass", mass);
    report.rational("free_norm", norm);
    report.emit(out, "optimal: " + std::string(yes_no(mass == norm)) + " (mass " + to_string(mass) +
                         ", norm " + to_string(norm) + ")",
                opt.decimal);
    return mass == norm ? exit_code::ok : exit_code::predicate_false;
}

int cmd_precedes(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = io::parse_space(read_file(opt.space_file));
    const Measure left = io::parse_measure(space, read_file(opt.left_file));
    const Measure right = io::parse_measure(space, read_file(opt.right_file));
    const Comparison cmp = precedes(space, left, right);
    Report report("precedes");
    report["precedes"] = cmp.holds;
    ordered_json witness = ordered_json::object();
    if (cmp.holds) {
        witness["kind"] = "generator_combination";
        ordered_json weights = ordered_json::array();
        for (const auto& [t, w] : cmp.witness.weights) {
            weights.push_back({{"x", space.id(t.x)}, {"u", space.id(t.u)}, {"y", space.id(t.y)},
                               {"weight", to_string(w)}});
        }
        witness["weights"] = std::move(weights);
    } else {
        const ConeFunction& g = *cmp.witness.separator;
        witness["kind"] = "separating_g";
        witness["g"] = io::pair_function_json(space, g);
        witness["pairing_left"] = to_string(pairing(g, left));
        witness["pairing_right"] = to_string(pairing(g, right));
    }
    report["witness"] = std::move(witness);
    report.emit(out, std::string("left precedes right: ") + yes_no(cmp.holds), opt.decimal);
    return cmp.holds ? exit_code::ok : exit_code::predicate_false;
}

int cmd_extreme(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = io::parse_space(read_file(opt.space_file));
    std::set<PairId> criterion;
    for (const PairId p : space.pairs()) {
        if (is_extreme_molecule(space, p))
            criterion.insert(p);
    }
    Report report("extreme");
    report["extreme_pairs"] = pairs_json(space, criterion);
    std::string summary = std::to_string(criterion.size()) + " of " + std::to_string(space.pair_count()) +
                          " molecules are extreme";
    if (space.size() <= extreme_oracle_max_points) {
        const bool agrees = extreme_points_oracle(space) == criterion;
        report["vertex_oracle_agrees"] = agrees;
        summary += agrees ? "; vertex oracle agrees" : "; VERTEX ORACLE DISAGREES";
    }
    report.emit(out, summary, opt.decimal);
    return exit_code::ok;
}

int demo_choquet_motivation(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = fixtures::line3();
    const PairId one_zero = fixtures::pair(space, "1", "0");
    const Measure dirac = Measure::dirac(one_zero);
    const Measure nu = (Measure::dirac(fixtures::pair(space, "1", "h")) +
                        Measure::dirac(fixtures::pair(space, "h", "0"))) *
                       Rational(1, 2);
    const ConeFunction g = clamp(space, ConeFunction::constant(space, 2), 1);

    Report report("demo choquet-motivation");
    report["space"] = nlohmann::ordered_json::parse(io::emit_space(space));
    report["nu"] = io::measure_json(space, nu);
    report.rational("g_at_dirac", pairing(g, dirac));
    report.rational("g_at_nu", pairing(g, nu));
    const bool forward = precedes(space, dirac, nu).holds;
    const bool backward = precedes(space, nu, dirac).holds;
    report["dirac_precedes_nu"] = forward;
    report["nu_precedes_dirac"] = backward;
    report["dirac_minimal"] = is_minimal(space, dirac);
    report["nu_minimal"] = is_minimal(space, nu);
    report["nu_optimal"] = is_optimal(space, nu);
    report["minimize_below_nu"] = io::measure_json(space, minimize_below(space, nu));
    report.emit(out,
                "<g,delta(1,0)> = " + to_string(pairing(g, dirac)) + ", <g,nu> = " + to_string(pairing(g, nu)) +
                    "; delta(1,0) <= nu: " + yes_no(forward) + "; nu <= delta(1,0): " + yes_no(backward),
                opt.decimal);
    return exit_code::ok;
}

int demo_minimal_nonoptimal(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = fixtures::wedge4();
    const auto p = [&](const char* a, const char* b) { return fixtures::pair(space, a, b); };
    const Measure mu = Measure::dirac(p("0", "a")) + Measure::dirac(p("b", "c"));
    const Measure lambda = Measure::dirac(p("b", "a"), Rational(1, 2)) + Measure::dirac(p("0", "c"));
    const FreeVector m = push_forward(space, mu);
    const Rational norm = free_norm(space, m);

    Report report("demo minimal-nonoptimal");
    report["space"] = nlohmann::ordered_json::parse(io::emit_space(space));
    report["mu"] = io::measure_json(space, mu);
    report["lambda"] = io::measure_json(space, lambda);
    report.rational("mass_mu", mu.total_mass());
    report.rational("mass_lambda", lambda.total_mass());
    report.rational("free_norm", norm);
    report["pushforwards_equal"] = push_forward(space, lambda) == m;
    const bool minimal_mu = is_minimal(space, mu);
    const bool optimal_mu = is_optimal(space, mu);
    report["minimal_mu"] = minimal_mu;
    report["optimal_mu"] = optimal_mu;
    report["minimal_lambda"] = is_minimal(space, lambda);
    report["optimal_lambda"] = is_optimal(space, lambda);
    report.emit(out,
                "mass(mu) = " + to_string(mu.total_mass()) + ", ||Phi*mu|| = " + to_string(norm) +
                    ", mu minimal: " + yes_no(minimal_mu) + ", mu optimal: " + yes_no(optimal_mu),
                opt.decimal);
    return exit_code::ok;
}

int demo_min_opt_non_unique(const Options& opt, std::ostream& out)
{
    const FiniteMetricSpace space = fixtures::discrete4();
    const auto p = [&](const char* a, const char* b) { return fixtures::pair(space, a, b); };
    const Measure nu1 = Measure::dirac(p("0", "2")) + Measure::dirac(p("1", "3"));
    const Measure nu2 = Measure::dirac(p("0", "3")) + Measure::dirac(p("1", "2"));
    const Measure mid = (nu1 + nu2) * Rational(1, 2);
    const FreeVector m = push_forward(space, nu1);

    Report report("demo min-opt-non-unique");
    report["space"] = nlohmann::ordered_json::parse(io::emit_space(space));
    report.rational("gamma", gamma_modulus(space));
    report.rational("free_norm", free_norm(space, m));
    report["pushforwards_equal"] = push_forward(space, nu2) == m;
    ordered_json rows = ordered_json::array();
    bool all = true;
    for (const auto& [name, measure] :
         std::vector<std::pair<std::string, Measure>>{{"nu1", nu1}, {"nu2", nu2}, {"midpoint", mid}}) {
        const bool optimal = is_optimal(space, measure);
        const bool minimal = is_minimal(space, measure);
        all = all && optimal && minimal;
        rows.push_back({{"name", name}, {"optimal", optimal}, {"minimal", minimal}});
    }
    report["representations"] = std::move(rows);
    report.emit(out,
                std::string("gamma = 2; nu1, nu2 and their midpoint all optimal and minimal: ") + yes_no(all),
                opt.decimal);
    return exit_code::ok;
}

using DemoFn = std::function<int(const Options&, std::ostream&)>;

const std::vector<std::pair<std::string, DemoFn>>& demos()
{
    static const std::vector<std::pair<std::string, DemoFn>> table = {
        {"choquet-motivation", demo_choquet_motivation},
        {"minimal-nonoptimal", demo_minimal_nonoptimal},
        {"min-opt-non-unique", demo_min_opt_non_unique},
    };
    return table;
}

int cmd_demo(const Options& opt, std::ostream& out)
{
    for (const auto& [name, fn] : demos()) {
        if (name == opt.demo_name)
            return fn(opt, out);
    }
    std::string names;
    for (const auto& name : demo_names())
        names += (names.empty() ? "" : ", ") + name;
    throw UsageFailure("unknown demo '" + opt.demo_name + "' (available: " + names + ")");
}

} // namespace

std::vector<std::string> demo_names()
{
    std::vector<std::string> out;
    for (const auto& [name, fn] : demos())
        out.push_back(name);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Choquet-type order theory of Lipschitz-free spaces over finite pointed metric spaces",
                 "lipfree"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--decimal", opt.decimal, "Add rounded decimals with K digits (non-authoritative)")
        ->check(CLI::NonNegativeNumber);

    std::function<int(const Options&, std::ostream&)> handler;
    auto sub = [&](const char* name, const char* help, int (*fn)(const Options&, std::ostream&)) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->callback([&handler, fn] { handler = fn; });
        return cmd;
    };

    auto* check = sub("check-metric", "Validate a space document", cmd_check_metric);
    check->add_option("file", opt.space_file, "Space document")->required();

    auto* norm = sub("free-norm", "Norm of a free-space vector", cmd_free_norm);
    norm->add_option("file", opt.space_file, "Space document")->required();
    norm->add_option("--vector", opt.vector_spec, "ID=RAT / [RAT*]m(X,Y) terms, or @file.json")->required();

    auto* represent = sub("represent", "Optimal De Leeuw representation", cmd_represent);
    represent->add_option("file", opt.space_file, "Space document")->required();
    represent->add_option("--vector", opt.vector_spec, "ID=RAT / [RAT*]m(X,Y) terms, or @file.json")->required();
    represent->add_flag("--minimal", opt.minimal, "Descend to a minimal optimal representation");

    auto* minimal = sub("is-minimal", "Is the measure minimal?", cmd_is_minimal);
    minimal->add_option("file", opt.space_file, "Space document")->required();
    minimal->add_option("--measure", opt.measure_file, "Measure document")->required();

    auto* optimal = sub("is-optimal", "Is the measure an optimal representation?", cmd_is_optimal);
    optimal->add_option("file", opt.space_file, "Space document")->required();
    optimal->add_option("--measure", opt.measure_file, "Measure document")->required();

    auto* prec = sub("precedes", "Does left precede right?", cmd_precedes);
    prec->add_option("file", opt.space_file, "Space document")->required();
    prec->add_option("--left", opt.left_file, "Measure document")->required();
    prec->add_option("--right", opt.right_file, "Measure document")->required();

    auto* extreme = sub("extreme", "Extreme molecules of the unit ball", cmd_extreme);
    extreme->add_option("file", opt.space_file, "Space document")->required();

    auto* gamma = sub("gamma", "Uniform concavity modulus", cmd_gamma);
    gamma->add_option("file", opt.space_file, "Space document")->required();

    auto* demo = sub("demo", "Run a built-in example", cmd_demo);
    demo->add_option("name", opt.demo_name, "Demo name")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "lipfree: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        return handler(opt, out);
    } catch (const UsageFailure& e) {
        err << "lipfree: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const IoFailure& e) {
        err << "lipfree: " << e.what() << "\n";
        return exit_code::io;
    } catch (const io::ParseError& e) {
        err << "lipfree: "
            << (e.kind() == io::ParseError::Kind::SyntaxError ? "syntax error: " : "semantic error: ")
            << e.what() << "\n";
        return exit_code::error;
    } catch (const std::exception& e) {
        err << "lipfree: " << e.what() << "\n";
        return exit_code::error;
    }
}

} // namespace lipfree::cli
