#include "hlmono/run.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>

using namespace hlmono;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "test.cfg");
}

std::string error_of(const std::string& text, bool execute = false) {
    try {
        const RunConfig c = parse(text);
        validate(c);
        if (execute) run(c);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("configuration parsing") {
    const RunConfig c = parse(
        "# cone run\n"
        "surface = sw_cone\n"
        "p = 3   # comment after a value\n"
        "q = 2\n"
        "\n"
        "suites = angle, monotonicity\n"
        "radii = sweep 0.25 3\n"
        "tolerance.angle.el_residual = 0.5\n"
        "threads = 2\n");
    CHECK(c.surface == "sw_cone");
    CHECK(c.params.at("p") == "3");
    CHECK(c.suites == std::vector<std::string>{"angle", "monotonicity"});
    REQUIRE(c.radii.size() == 3);
    CHECK(c.radii[0] == doctest::Approx(0.25));
    CHECK(c.radii[2] == doctest::Approx(0.5));
    CHECK(c.tolerances.at("angle.el_residual") == 0.5);
    CHECK(c.threads == 2);
    CHECK_NOTHROW(validate(c));
    CHECK(surface_parameters(c).at("p") == "3");
}

TEST_CASE("configuration errors name the line and the key") {
    CHECK(error_of("surface = plane\nthis line is wrong\n").find("test.cfg:2") != std::string::npos);
    CHECK(error_of("colour = blue\n").find("colour") != std::string::npos);
    CHECK(error_of("surface = torus\n").find("torus") != std::string::npos);
    CHECK(error_of("radii = 0.2, 0.1\n").find("increasing") != std::string::npos);
    CHECK(error_of("surface = plane\np = 2\n").find("does not apply") != std::string::npos);
    CHECK(error_of("suites = angle, angle\n").find("twice") != std::string::npos);
    CHECK(error_of("angular = 16\nsuites = classical\n", true).find("does not apply") != std::string::npos);
    CHECK(error_of("surface = file\n").find("mesh") != std::string::npos);
    CHECK(error_of("threads = -1\n").find("threads") != std::string::npos);
    CHECK(error_of("surface = sw_cone\np = two\n", true).find("not") != std::string::npos);
}

TEST_CASE("split_list trims and drops empties") {
    CHECK(split_list(" a, b ,,c ") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_list("").empty());
}

TEST_CASE("report json writes non-finite values as null and keeps timings out") {
    VerificationReport rep;
    rep.surface["surface"] = "plane";
    SuiteResult s{"angle", {}, 12.5};
    s.add("finite", 1e-3, 1e-2);
    s.add("nan", std::numeric_limits<double>::quiet_NaN(), 1.0);
    rep.suites.push_back(s);
    rep.constants["inf"] = std::numeric_limits<double>::infinity();
    const auto j = nlohmann::json::parse(report_json(rep));
    CHECK(j["suites"]["angle"]["entries"][1]["value"].is_null());
    CHECK(j["suites"]["angle"]["entries"][0]["name"] == "angle.finite");
    CHECK(j["constants"]["inf"].is_null());
    CHECK(j["pass"] == false);
    CHECK(report_json(rep).find("12.5") == std::string::npos);

    std::istringstream in(report_json(rep));
    const std::string text = summarize_report(in);
    CHECK(text.find("angle.finite") != std::string::npos);
    CHECK(text.find("FAIL") != std::string::npos);
    std::istringstream junk("{ not json");
    CHECK_THROWS(summarize_report(junk));
}

TEST_CASE("tolerance overrides re-evaluate entries") {
    VerificationReport rep;
    SuiteResult s{"bernstein", {}, 0.0};
    s.add("balance_residual", 0.05, 1e-2);
    rep.suites.push_back(s);
    CHECK_FALSE(rep.pass());
    rep.apply_tolerances({{"bernstein.balance_residual", 0.1}});
    CHECK(rep.pass());
}

TEST_CASE("a small plane run passes every suite") {
    RunConfig c = parse("angular = 48\ninner_octave = -5\nradii = sweep 0.1 5\n");
    const VerificationReport rep = run(c);
    CHECK(rep.suites.size() == 4);
    for (const auto& s : rep.suites)
        for (const auto& e : s.entries) {
            INFO(e.name << " = " << e.value << " tol " << e.tolerance);
            CHECK(e.pass);
        }
    REQUIRE(rep.density.has_value());
    CHECK(rep.theta0.size() == 1);
    CHECK(rep.constants.count("theta0_total") == 1);
}

TEST_CASE("the Euler-Lagrange check fails on a non-stationary graph") {
    RunConfig c = parse("surface = lagrangian_graph\npotential = cubic_x1\ncells = 32\nsuites = angle\n");
    const VerificationReport rep = run(c);
    CHECK_FALSE(rep.pass());
}

TEST_CASE("classical suite on a catenoid") {
    RunConfig c = parse("surface = euclidean_minimal\nminimal = catenoid\naxial = 80\nangular = 80\n"
                        "radii = 0.5, 1, 2, 4\nsuites = classical\n");
    const VerificationReport rep = run(c);
    CHECK(rep.pass());
    CHECK(rep.constants.at("origin_count") == 0.0);
}
