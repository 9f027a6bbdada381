#include "notchlab/synthesis.hpp"

#include "notchlab/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace notchlab;

namespace {

// Reference element set for (0.83 GHz, 0.18, n=2, 50 ohm, 2.2 pF),
// recomputed with an independent calculator and frozen here.
constexpr double kF0 = 0.83e9;
constexpr double kL = 3.766383518060182e-08;
constexpr double kC = 9.762466078811994e-13;
constexpr double kDk = 0.12727922061357855;
constexpr double kLm = 4.79382358710528e-09;
constexpr double kL1 = 3.287001159349654e-08;
constexpr double kCm = 1.2425590737776888e-13;
constexpr double kC1 = 8.519907005034306e-13;
constexpr double kCk = 2.2020109797158673e-12;
constexpr double kCj = 7.545861831990682e-12;
constexpr double kCa = 1.3904796812659654e-12;
constexpr double kCb = 4.057656492249508e-13;
constexpr double kMinCc = 1.1005025152589685e-12;

FilterSpec reference_spec() {
    return {kF0, 0.18, 2, 50.0, 2.2e-12, PrototypeKind::butterworth};
}

bool close(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

} // namespace

TEST_CASE("butterworth coefficients") {
    const auto g2 = butterworth_g(2);
    REQUIRE(g2.g.size() == 4);
    CHECK(g2.g[0] == 1.0);
    CHECK(g2.g[3] == 1.0);
    CHECK(close(g2.g[1], std::sqrt(2.0), 1e-15));
    CHECK(close(g2.g[2], std::sqrt(2.0), 1e-15));

    const auto g1 = butterworth_g(1);
    CHECK(g1.g == std::vector<double>{1.0, 2.0, 1.0});

    const auto g3 = butterworth_g(3);
    REQUIRE(g3.g.size() == 5);
    CHECK(close(g3.g[1], 1.0, 1e-15));
    CHECK(close(g3.g[2], 2.0, 1e-15));
    CHECK(close(g3.g[3], 1.0, 1e-15));

    CHECK_THROWS_AS(butterworth_g(0), invalid_spec_error);
}

TEST_CASE("core synthesis reproduces the frozen reference set") {
    const auto core = synth_core(reference_spec(), butterworth_g(2));
    CHECK(close(core.zt_ohm, 50.0, 1e-12));
    CHECK(close(core.l_h, kL, 1e-12));
    CHECK(close(core.c_f, kC, 1e-12));
    CHECK(close(core.dk, kDk, 1e-12));
    CHECK(close(core.k, 1.0 / std::sqrt(2.0), 1e-12));
}

TEST_CASE("core synthesis basics") {
    auto spec = reference_spec();
    const auto core = synth_core(spec, butterworth_g(2));

    // resonance closure
    const double w0 = 2.0 * std::numbers::pi * spec.f0_hz;
    CHECK(close(w0 * w0 * core.l_h * core.c_f, 1.0, 1e-12));

    // g0 = g3 = 1 forces zt = z0 at any frequency
    spec.f0_hz = 1.7e9;
    CHECK(synth_core(spec, butterworth_g(2)).zt_ohm == 50.0);

    spec.order = 3;
    CHECK_THROWS_AS(synth_core(spec, butterworth_g(3)), unsupported_order_error);
}

TEST_CASE("bandwidth monotonicity: wider delta means smaller l, larger c") {
    auto spec = reference_spec();
    double prev_l = 0.0, prev_c = 0.0;
    bool first = true;
    for (double delta : {0.05, 0.10, 0.18, 0.30, 0.45}) {
        spec.delta = delta;
        const auto core = synth_core(spec, butterworth_g(2));
        if (!first) {
            CHECK(core.l_h < prev_l);
            CHECK(core.c_f > prev_c);
        }
        prev_l = core.l_h;
        prev_c = core.c_f;
        first = false;
    }
}

TEST_CASE("coupled split") {
    const auto core = synth_core(reference_spec(), butterworth_g(2));
    const auto coupled = split_coupled(core);
    CHECK(close(coupled.lm_h, kLm, 1e-12));
    CHECK(close(coupled.l1_h, kL1, 1e-12));
    CHECK(close(coupled.cm_f, kCm, 1e-12));
    CHECK(close(coupled.c1_f, kC1, 1e-12));

    // closure
    CHECK(close(coupled.lm_h + coupled.l1_h, core.l_h, 1e-12));
    CHECK(close(coupled.cm_f + coupled.c1_f, core.c_f, 1e-12));

    auto degenerate = core;
    degenerate.dk = 0.0;
    CHECK_THROWS_AS(split_coupled(degenerate), degenerate_coupling_error);
    degenerate.dk = 1.0;
    CHECK_THROWS_AS(split_coupled(degenerate), infeasible_coupling_error);
}

TEST_CASE("practical capacitors") {
    const auto core = synth_core(reference_spec(), butterworth_g(2));
    const auto pe = practical_caps(core, 2.2e-12);
    CHECK(close(pe.ck_f, kCk, 1e-12));
    CHECK(close(pe.cj_f, kCj, 1e-12));
    CHECK(close(pe.ca_f, kCa, 1e-12));
    CHECK(close(pe.cb_f, kCb, 1e-12));

    // series closure: cc in series with ck restores (1+dk)c
    const double series = pe.cc_f * pe.ck_f / (pe.cc_f + pe.ck_f);
    CHECK(close(series, (1.0 + core.dk) * core.c_f, 1e-12));
    CHECK(close(1.0 / pe.ck_f + 1.0 / pe.cc_f, 1.0 / ((1.0 + core.dk) * core.c_f), 1e-12));

    SUBCASE("infeasible series capacitor names the threshold") {
        try {
            practical_caps(core, 1.0e-12);
            FAIL("expected cc_too_small_error");
        } catch (const cc_too_small_error& e) {
            CHECK(close(e.min_feasible_cc_f(), kMinCc, 1e-12));
            CHECK(std::string(e.what()).find("1.1005 pF") != std::string::npos);
        }
    }

    SUBCASE("degenerate coupling rejected") {
        auto flat = core;
        flat.dk = 0.0;
        CHECK_THROWS_AS(practical_caps(flat, 2.2e-12), degenerate_coupling_error);
    }
}

TEST_CASE("pi/tee transforms") {
    SUBCASE("symmetric case") {
        const auto tee = pi_to_tee_caps(1e-12, 1e-12);
        CHECK(close(tee.ck_f, 3e-12, 1e-15));
        CHECK(close(tee.cj_f, 3e-12, 1e-15));
        const auto pi = tee_to_pi_caps(3e-12, 3e-12);
        CHECK(close(pi.ca_f, 1e-12, 1e-15));
        CHECK(close(pi.cb_f, 1e-12, 1e-15));
    }

    SUBCASE("reference values invert exactly") {
        const auto tee = pi_to_tee_caps(kCa, kCb);
        CHECK(close(tee.ck_f, kCk, 1e-12));
        CHECK(close(tee.cj_f, kCj, 1e-12));
        const auto pi = tee_to_pi_caps(kCk, kCj);
        CHECK(close(pi.ca_f, kCa, 1e-12));
        CHECK(close(pi.cb_f, kCb, 1e-12));
    }

    SUBCASE("round trip over random positive pairs") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> expo(-15.0, -9.0);
        for (int i = 0; i < 500; ++i) {
            const double ca = std::pow(10.0, expo(rng));
            const double cb = std::pow(10.0, expo(rng));
            const auto tee = pi_to_tee_caps(ca, cb);
            const auto pi = tee_to_pi_caps(tee.ck_f, tee.cj_f);
            CHECK(close(pi.ca_f, ca, 1e-12));
            CHECK(close(pi.cb_f, cb, 1e-12));
        }
    }

    SUBCASE("huge shunt leg limit: pi degenerates to the series arm") {
        const double ck = 1e-12;
        const auto pi = tee_to_pi_caps(ck, 1e6 * ck);
        CHECK(close(pi.ca_f, ck, 1e-5));
        CHECK(pi.cb_f < 1e-17);
    }

    SUBCASE("zero bridge has no tee form") {
        CHECK_THROWS_AS(pi_to_tee_caps(1e-12, 0.0), degenerate_network_error);
    }
}

TEST_CASE("full synthesis") {
    const auto design = synthesize(reference_spec());
    CHECK(close(design.core.l_h, kL, 1e-12));
    CHECK(close(design.practical.ca_f, kCa, 1e-12));
    CHECK(close(design.practical.cb_f, kCb, 1e-12));

    // determinism
    const auto again = synthesize(reference_spec());
    CHECK(design.core.l_h == again.core.l_h);
    CHECK(design.practical.ca_f == again.practical.ca_f);

    // four-digit hand-checked values stay within half a percent
    CHECK(close(design.core.l_h, 37.66e-9, 5e-4));
    CHECK(close(design.core.c_f, 0.9763e-12, 5e-4));
    CHECK(close(design.practical.ck_f, 2.2024e-12, 5e-4));
    CHECK(close(design.practical.cj_f, 7.5466e-12, 5e-4));
    CHECK(close(design.practical.ca_f, 1.3907e-12, 5e-4));
    CHECK(close(design.practical.cb_f, 0.4059e-12, 5e-4));

    SUBCASE("invalid specs are rejected") {
        auto spec = reference_spec();
        spec.delta = 0.0;
        CHECK_THROWS_AS(synthesize(spec), invalid_spec_error);
        spec = reference_spec();
        spec.f0_hz = -1.0;
        CHECK_THROWS_AS(synthesize(spec), invalid_spec_error);
        spec = reference_spec();
        spec.order = 1;
        CHECK_THROWS_AS(synthesize(spec), invalid_spec_error);
    }
}
