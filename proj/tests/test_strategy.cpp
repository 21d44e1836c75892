#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ergolab/strategy.hpp"

using namespace ergolab;

TEST_CASE("threshold strategy is zero at and below the switch point") {
    ModelParams params;
    Strategy a = make_threshold(params, 2.0, 0.0);
    // a(x) = 2 * 1(x > 0): the breakpoint itself belongs to the left piece,
    // so the mandatory a(x) = 0 for x <= 0 holds with equality at 0.
    CHECK(a(-1.0) == 0.0);
    CHECK(a(0.0) == 0.0);
    CHECK(a(1e-300) == 2.0);
    CHECK(a(5.0) == 2.0);
    CHECK(a.is_piecewise());
    CHECK(a.label() == "threshold(rate=2,x0=0)");
}

TEST_CASE("piecewise evaluation picks the half-open piece") {
    Strategy a = make_piecewise({0.0, 1.0}, {0.0, 0.5, 3.0});
    CHECK(a(-2.0) == 0.0);
    CHECK(a(0.0) == 0.0);
    CHECK(a(0.5) == 0.5);
    CHECK(a(1.0) == 0.5);  // value at a breakpoint comes from the left
    CHECK(a(1.0 + 1e-12) == 3.0);
    CHECK(evaluate(a, 2.0) == 3.0);
}

TEST_CASE("constructor rejections") {
    ModelParams params;  // cap = 3
    CHECK_THROWS_AS(make_threshold(params, -0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_threshold(params, 3.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_threshold(params, 2.0, -1.0), std::invalid_argument);

    CHECK_THROWS_AS(make_piecewise({1.0, 0.0}, {0.0, 1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_piecewise({0.0, 0.0}, {0.0, 1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_piecewise({0.0}, {0.0}), std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(make_piecewise({nan}, {0.0, 1.0}), std::invalid_argument);

    // The Strategy constructor itself enforces the size contract, so a
    // hand-built PiecewiseConstant cannot bypass make_piecewise.
    PiecewiseConstant pc;
    pc.breakpoints = {0.0};
    pc.values = {0.0};
    CHECK_THROWS_AS(Strategy(pc, "bad"), std::invalid_argument);
}

TEST_CASE("admissibility check is exact for piecewise strategies") {
    ModelParams params;  // mu = 1, cap = 3

    SUBCASE("clean strategy passes") {
        Strategy a = make_threshold(params, 2.0, 1.0);
        auto report = validate(a, params, {});
        CHECK(report.admissible);
        CHECK(report.violations.empty());
    }

    SUBCASE("nonzero value on a piece touching x <= 0") {
        // Piece (-2, 1] carries rate 2 and straddles zero.
        Strategy a = make_piecewise({-2.0, 1.0}, {0.0, 2.0, 0.0});
        auto report = validate(a, params, {});
        REQUIRE(!report.admissible);
        bool found = false;
        for (const auto& v : report.violations) {
            if (v.x <= 0.0 && a(v.x) != 0.0) found = true;
        }
        CHECK(found);  // the witness itself must violate the rule it names
    }

    SUBCASE("negative and above-cap rates are caught with witnesses") {
        Strategy a = make_piecewise({0.0, 1.0, 2.0}, {0.0, -0.5, 4.0, 1.0});
        auto report = validate(a, params, {});
        REQUIRE(!report.admissible);
        CHECK(report.violations.size() >= 2);
        for (const auto& v : report.violations) {
            const double val = a(v.x);
            CHECK((val < 0.0 || val > params.cap || (v.x <= 0.0 && val != 0.0)));
        }
    }
}

TEST_CASE("general strategies are sampled on the probe grid") {
    ModelParams params;
    Strategy good = make_general(
        [](double x) { return x > 0.0 ? std::min(2.0, x) : 0.0; }, "ramp");
    auto grid = default_probe_grid(params);
    CHECK(grid.size() >= 100);
    CHECK(grid.front() <= -10.0);
    CHECK(grid.back() >= 10.0);
    CHECK(validate(good, params, grid).admissible);

    Strategy bad = make_general([](double) { return 1.0; }, "constant-one");
    auto report = validate(bad, params, grid);
    REQUIRE(!report.admissible);
    CHECK(report.violations.front().x <= 0.0);

    CHECK_NOTHROW(require_admissible(good, params));
    CHECK_THROWS_AS(require_admissible(bad, params), std::invalid_argument);
}

TEST_CASE("require_admissible names the offending strategy") {
    ModelParams params;
    Strategy bad = make_piecewise({1.0}, {0.25, 0.0}, "leaky");
    try {
        require_admissible(bad, params);
        FAIL("expected a rejection");
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("leaky") != std::string::npos);
    }
}
