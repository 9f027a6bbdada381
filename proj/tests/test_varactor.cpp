#include "notchlab/varactor.hpp"

#include "notchlab/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace notchlab;

namespace {

VaractorModel sample_model() {
    VaractorModel m;
    m.cj0_f = 10e-12;
    m.vj_v = 0.7;
    m.m = 0.5;
    m.cp_f = 0.0;
    m.rs_ohm = 1.0;
    m.v_min_v = 0.0;
    m.v_max_v = 30.0;
    return m;
}

} // namespace

TEST_CASE("junction capacitance law") {
    const auto model = sample_model();
    CHECK(capacitance(model, 0.0) == doctest::Approx(model.cj0_f).epsilon(1e-15));

    // half-capacitance bias for the junction term
    const double v_half = model.vj_v * (std::pow(2.0, 1.0 / model.m) - 1.0);
    CHECK(capacitance(model, v_half) == doctest::Approx(model.cj0_f / 2.0).epsilon(1e-12));

    SUBCASE("package capacitance adds on top") {
        auto padded = model;
        padded.cp_f = 0.3e-12;
        CHECK(capacitance(padded, 0.0) ==
              doctest::Approx(model.cj0_f + 0.3e-12).epsilon(1e-15));
    }

    SUBCASE("strictly decreasing across the range") {
        double prev = 1e9;
        for (int i = 0; i <= 1000; ++i) {
            const double v = model.v_min_v + (model.v_max_v - model.v_min_v) * i / 1000.0;
            const double c = capacitance(model, v);
            CHECK(c < prev);
            prev = c;
        }
    }

    SUBCASE("bias range enforced") {
        CHECK_THROWS_AS(capacitance(model, -0.5), bias_range_error);
        CHECK_THROWS_AS(capacitance(model, 31.0), bias_range_error);
    }
}

TEST_CASE("bias inversion") {
    const auto model = sample_model();

    SUBCASE("closed-form check: 5 pF from a 10 pF abrupt junction") {
        const double v = invert(model, 5e-12);
        CHECK(v == doctest::Approx(0.7 * 3.0).epsilon(1e-9));
    }

    SUBCASE("round trip across the range") {
        for (int i = 0; i <= 50; ++i) {
            const double v = model.v_min_v + (model.v_max_v - model.v_min_v) * i / 50.0;
            const double back = invert(model, capacitance(model, v));
            CHECK(back == doctest::Approx(v).epsilon(1e-9));
        }
    }

    SUBCASE("round trip with package capacitance") {
        auto padded = sample_model();
        padded.cp_f = 0.4e-12;
        for (double v : {0.5, 3.0, 12.0, 28.0}) {
            const double back = invert(padded, capacitance(padded, v));
            CHECK(back == doctest::Approx(v).epsilon(1e-8));
        }
    }

    SUBCASE("unreachable targets name the achievable range") {
        try {
            invert(model, 20e-12);
            FAIL("expected unreachable_capacitance_error");
        } catch (const unreachable_capacitance_error& e) {
            CHECK(e.reachable_max_f() == doctest::Approx(model.cj0_f));
            CHECK(e.reachable_min_f() < e.reachable_max_f());
        }
        CHECK_THROWS_AS(invert(model, 1e-15), unreachable_capacitance_error);
    }
}

TEST_CASE("anti-series pair halves capacitance and doubles resistance") {
    const auto model = sample_model();
    for (double v : {0.0, 1.0, 7.5, 30.0}) {
        const auto pair = anti_series(model, v);
        CHECK(pair.c_eff_f == doctest::Approx(capacitance(model, v) / 2.0).epsilon(1e-15));
        CHECK(pair.rs_eff_ohm == 2.0);
    }
    CHECK_THROWS_AS(anti_series(model, -1.0), bias_range_error);
}

TEST_CASE("model validation") {
    auto model = sample_model();
    model.cj0_f = 0.0;
    CHECK_THROWS_AS(capacitance(model, 1.0), invalid_spec_error);
    model = sample_model();
    model.v_min_v = 5.0;
    model.v_max_v = 2.0;
    CHECK_THROWS_AS(capacitance(model, 1.0), invalid_spec_error);
}
