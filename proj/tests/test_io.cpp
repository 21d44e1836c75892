#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "ergolab/io.hpp"
#include "json.hpp"

using namespace ergolab;

namespace {

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

}  // namespace

TEST_CASE("format_number round-trips every finite value bit for bit") {
    const double cases[] = {0.0,
                            -0.0,
                            1.0 / 3.0,
                            0.1,
                            -2.5,
                            1e-300,
                            6.02214076e23,
                            std::numbers::pi,
                            std::numeric_limits<double>::max()};
    for (double v : cases) {
        const std::string s = format_number(v);
        CHECK(bits(std::stod(s)) == bits(v));
    }
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    // Dyadic values take their short decimal form, not an exponent dump.
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.0) == "0");
}

TEST_CASE("trajectory CSV: header and exact rows") {
    Trajectory trajectory;
    trajectory.times = {0.0, 0.5};
    trajectory.states = {1.0, -2.25};
    trajectory.reward_integral = {0.0, 0.125};
    std::ostringstream os;
    write_trajectory_csv(os, trajectory);
    CHECK(os.str() == "t,x,reward_integral\n0,1,0\n0.5,-2.25,0.125\n");
}

TEST_CASE("grid density CSV: header and exact rows") {
    GridDensity density;
    density.grid = {-0.5, 0.5};
    density.values = {0.25, 0.75};
    std::ostringstream os;
    write_density_csv(os, density);
    CHECK(os.str() == "x,p\n-0.5,0.25\n0.5,0.75\n");
}

TEST_CASE("closed-form density CSV evaluates on the caller's grid") {
    ModelParams params;
    const Strategy threshold = make_threshold(params, 3.0, 0.0);
    const PiecewiseExpDensity density = closed_form_density(params, threshold);
    const std::vector<double> grid{-1.0, 0.0, 1.0};
    std::ostringstream os;
    write_density_csv(os, density, grid);

    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "x,p");
    REQUIRE(std::getline(is, line));
    CHECK(line == "-1," + format_number(density.evaluate(-1.0)));
    int remaining = 0;
    while (std::getline(is, line)) ++remaining;
    CHECK(remaining == 2);
}

TEST_CASE("ratio curve CSV: header and exact rows") {
    std::vector<RatioPoint> curve(2);
    curve[0].t = 0.5;
    curve[0].ratio = -0.25;
    curve[1].t = 1.0;
    curve[1].ratio = 2.0;
    std::ostringstream os;
    write_ratio_curve_csv(os, curve);
    CHECK(os.str() == "t,ratio\n0.5,-0.25\n1,2\n");
}

TEST_CASE("residual CSV demands matching lengths") {
    const std::vector<double> xs{0.0, 1.0};
    const std::vector<double> one{0.5};
    std::ostringstream os;
    CHECK_THROWS_AS(write_residual_csv(os, xs, one), std::invalid_argument);

    const std::vector<double> residuals{0.5, -0.125};
    std::ostringstream ok;
    write_residual_csv(ok, xs, residuals);
    CHECK(ok.str() == "x,residual\n0,0.5\n1,-0.125\n");
}

TEST_CASE("sweep CSV sanitizes the verdict column") {
    std::vector<SweepRow> rows(2);
    rows[0] = {2.0, 0.0, 1.0, 0.03125, "ergodic-consistent"};
    rows[1] = {1.5, 5.0, std::numeric_limits<double>::quiet_NaN(),
               std::numeric_limits<double>::quiet_NaN(), "error: bad, thing\r\nnext"};
    std::ostringstream os;
    write_sweep_csv(os, rows);
    CHECK(os.str() ==
          "c,x0,reward_estimate,std_error,verdict\n"
          "2,0,1,0.03125,ergodic-consistent\n"
          "1.5,5,nan,nan,error: bad; thing;;next\n");
}

TEST_CASE("piecewise strategy JSON is sorted, labeled, and exact") {
    const Strategy ladder = make_piecewise({0.0, 1.5}, {0.0, 0.5, 3.0}, "ladder");
    const std::string text = strategy_to_json(ladder);
    CHECK(text ==
          R"({"breakpoints":[0.0,1.5],"label":"ladder","type":"piecewise","values":[0.0,0.5,3.0]})");
    CHECK(strategy_to_json(ladder) == text);  // deterministic

    const Strategy back = strategy_from_json(text);
    REQUIRE(back.piecewise_form() != nullptr);
    CHECK(back.piecewise_form()->breakpoints == ladder.piecewise_form()->breakpoints);
    CHECK(back.piecewise_form()->values == ladder.piecewise_form()->values);
    CHECK(back.label() == "ladder");
}

TEST_CASE("strategy JSON round-trips awkward doubles bit for bit") {
    const std::vector<double> breaks{1.0 / 3.0};
    const std::vector<double> values{0.1, 0.1 + 0.2};
    const Strategy original = make_piecewise(breaks, values, "w");
    const Strategy back = strategy_from_json(strategy_to_json(original));
    const auto* pc = back.piecewise_form();
    REQUIRE(pc != nullptr);
    REQUIRE(pc->breakpoints.size() == 1);
    REQUIRE(pc->values.size() == 2);
    CHECK(bits(pc->breakpoints[0]) == bits(breaks[0]));
    CHECK(bits(pc->values[0]) == bits(values[0]));
    CHECK(bits(pc->values[1]) == bits(values[1]));
}

TEST_CASE("strategy JSON without a label gets the descriptive default") {
    const Strategy back =
        strategy_from_json(R"({"type":"piecewise","breakpoints":[0.0],"values":[0.0,1.0]})");
    CHECK(back.label() == "piecewise(2 pieces)");
}

TEST_CASE("strategy JSON rejections") {
    // Not JSON at all.
    CHECK_THROWS_WITH_AS(strategy_from_json("not json"),
                         doctest::Contains("strategy JSON parse error"), std::invalid_argument);
    // JSON, wrong shape.
    CHECK_THROWS_AS(strategy_from_json("[1,2]"), std::invalid_argument);
    CHECK_THROWS_AS(strategy_from_json(R"({"type":"linear"})"), std::invalid_argument);
    // Missing and mistyped keys surface as shape errors.
    CHECK_THROWS_WITH_AS(strategy_from_json(R"({"type":"piecewise","values":[1.0]})"),
                         doctest::Contains("strategy JSON shape error"), std::invalid_argument);
    CHECK_THROWS_AS(
        strategy_from_json(R"({"type":"piecewise","breakpoints":"x","values":[1.0]})"),
        std::invalid_argument);
    // Well-formed JSON whose content fails piecewise validation.
    CHECK_THROWS_AS(
        strategy_from_json(R"({"type":"piecewise","breakpoints":[2.0,1.0],"values":[0.0,1.0,2.0]})"),
        std::invalid_argument);

    // General callables have no JSON form.
    const Strategy general = make_general([](double) { return 0.0; }, "opaque");
    CHECK_THROWS_AS(strategy_to_json(general), std::invalid_argument);
}

TEST_CASE("ensemble stats JSON is flat with sorted keys") {
    EnsembleStats stats;
    stats.mean_final_state = 0.5;
    stats.mean_reward_rate = 1.0;
    stats.std_error = 0.25;
    stats.n_paths = 100;
    CHECK(ensemble_to_json(stats) ==
          R"({"mean_final_state":0.5,"mean_reward_rate":1.0,"n_paths":100,"std_error":0.25})");
}

TEST_CASE("occupation split JSON") {
    OccupationSplit split;
    split.p_minus = 0.5;
    split.p_plus = 0.5;
    CHECK(split_to_json(split) == R"({"p_minus":0.5,"p_plus":0.5})");
}

TEST_CASE("candidate JSON carries all coefficients") {
    HjbCandidate candidate;
    candidate.c2 = -0.5;
    candidate.r = 1.0;
    const std::string text = candidate_to_json(candidate);
    CHECK(text ==
          R"({"c1":0.0,"c1_tilde":0.0,"c2":-0.5,"c2_tilde":0.0,"r":1.0,"x0":0.0})");

    const auto j = nlohmann::json::parse(text);
    CHECK(j.size() == 6);
    CHECK(j.at("c2").get<double>() == -0.5);
}
