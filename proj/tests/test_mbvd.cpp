#include <cmath>
#include <numbers>

#include <doctest.h>

#include "rfladder/mbvd.hpp"
#include "support/test_rng.hpp"

using namespace rfladder;
using rfladder::testing::TestRng;

namespace {

constexpr double kPi = std::numbers::pi;

// The worked reference resonator used throughout: fs = 20 GHz, k2 = 0.42,
// q = 50, c0 = 50 fF.
ResonatorSpec reference_spec() {
    return ResonatorSpec{20e9, 0.42, 50.0, 50e-15, 0.0, 0.0};
}

FrequencySweep admittance_sweep(const MbvdParams& p, double f_start, double f_stop,
                                Eigen::Index n) {
    Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(n, f_start, f_stop);
    Eigen::VectorXcd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y[i] = admittance(p, f[i]);
    }
    FrequencySweep sweep(std::move(f));
    sweep.set_trace("Y", std::move(y));
    return sweep;
}

ResonatorSpec random_spec(TestRng& rng) {
    ResonatorSpec spec;
    spec.fs = rng.log_uniform(0.5e9, 40e9);
    spec.k2 = rng.uniform(0.05, 0.6);
    spec.q = rng.log_uniform(20.0, 500.0);
    spec.c0 = rng.log_uniform(5e-15, 5e-12);
    return spec;
}

}  // namespace

TEST_SUITE("mbvd") {

TEST_CASE("element values from the reference spec") {
    const MbvdParams p = mbvd_from_spec(reference_spec());

    // Independent closed-form evaluation.
    const double cm_expected = 50e-15 * 8.0 * 0.42 / (kPi * kPi);
    const double lm_expected = 1.0 / (std::pow(2.0 * kPi * 20e9, 2) * cm_expected);
    const double rm_expected = 2.0 * kPi * 20e9 * lm_expected / 50.0;

    CHECK(p.cm == doctest::Approx(cm_expected).epsilon(1e-12));
    CHECK(p.cm == doctest::Approx(1.70220e-14).epsilon(1e-4));
    CHECK(p.lm == doctest::Approx(lm_expected).epsilon(1e-12));
    CHECK(p.lm == doctest::Approx(3.72024e-9).epsilon(1e-4));
    CHECK(p.rm == doctest::Approx(rm_expected).epsilon(1e-12));
    CHECK(p.rm == doctest::Approx(9.34998).epsilon(1e-4));
    CHECK(p.c0 == 50e-15);

    const ResonancePair res = resonance_frequencies(p);
    CHECK(res.fs_hz == doctest::Approx(20e9).epsilon(1e-12));
    CHECK(res.fp_hz == doctest::Approx(20e9 * std::sqrt(1.0 + 8.0 * 0.42 / (kPi * kPi)))
                           .epsilon(1e-12));
    CHECK(res.fp_hz == doctest::Approx(23.1555e9).epsilon(1e-4));

    // Extrema of a sampled trace confirm the analytic resonances.
    const FrequencySweep sweep = admittance_sweep(p, 16e9, 28e9, 12001);
    const ResonancePair traced = extract_fs_fp_from_trace(sweep);
    CHECK(traced.fs_hz == doctest::Approx(res.fs_hz).epsilon(1e-4));
    CHECK(traced.fp_hz == doctest::Approx(res.fp_hz).epsilon(1e-4));
}

TEST_CASE("coupling and loss limits") {
    ResonatorSpec spec = reference_spec();
    spec.k2 = 1e-9;
    const MbvdParams weak = mbvd_from_spec(spec);
    CHECK(weak.cm < 1e-22);
    const ResonancePair res = resonance_frequencies(weak);
    CHECK(res.fp_hz == doctest::Approx(res.fs_hz).epsilon(1e-9));

    ResonatorSpec doubled = reference_spec();
    doubled.q *= 2.0;
    const MbvdParams base = mbvd_from_spec(reference_spec());
    const MbvdParams half_loss = mbvd_from_spec(doubled);
    CHECK(half_loss.rm == doctest::Approx(base.rm / 2.0).epsilon(1e-12));
    CHECK(half_loss.lm == base.lm);
    CHECK(half_loss.cm == base.cm);
}

TEST_CASE("invalid specs are rejected") {
    ResonatorSpec spec = reference_spec();
    spec.k2 = 0.0;
    CHECK_THROWS_AS(mbvd_from_spec(spec), InvalidSpec);
    spec = reference_spec();
    spec.k2 = 1.0;
    CHECK_THROWS_AS(mbvd_from_spec(spec), InvalidSpec);
    spec = reference_spec();
    spec.fs = -1e9;
    CHECK_THROWS_AS(mbvd_from_spec(spec), InvalidSpec);
    spec = reference_spec();
    spec.q = 0.0;
    CHECK_THROWS_AS(mbvd_from_spec(spec), InvalidSpec);
    spec = reference_spec();
    spec.c0 = 0.0;
    CHECK_THROWS_AS(mbvd_from_spec(spec), InvalidSpec);
    spec = reference_spec();
    spec.rs = -1.0;
    CHECK_THROWS_AS(mbvd_from_spec(spec), InvalidSpec);
}

TEST_CASE("admittance limits and reference value") {
    const MbvdParams p = mbvd_from_spec(reference_spec());

    const Complex low = admittance(p, 1.0);
    CHECK(std::abs(low) < 1e-9);
    CHECK(std::arg(low) == doctest::Approx(kPi / 2.0).epsilon(1e-6));

    // Independent evaluation of the closed form at fs.
    const double w = 2.0 * kPi * 20e9;
    const Complex zm(p.rm, w * p.lm - 1.0 / (w * p.cm));
    const Complex y_expected = Complex(0.0, w * p.c0) + 1.0 / zm;
    const Complex y = admittance(p, 20e9);
    CHECK(y.real() == doctest::Approx(y_expected.real()).epsilon(1e-12));
    CHECK(y.imag() == doctest::Approx(y_expected.imag()).epsilon(1e-12));
    CHECK(y.real() == doctest::Approx(1.0 / p.rm).epsilon(1e-6));
    CHECK(y.real() == doctest::Approx(0.106952).epsilon(1e-5));
    CHECK(y.imag() == doctest::Approx(0.00628319).epsilon(1e-5));

    CHECK_THROWS_AS(admittance(p, 0.0), InvalidFrequency);
    CHECK_THROWS_AS(admittance(p, -1e9), InvalidFrequency);
}

TEST_CASE("lossless antiresonance null") {
    MbvdParams p = mbvd_from_spec(reference_spec());
    p.rm = 0.0;
    const double fp = resonance_frequencies(p).fp_hz;
    const Complex y = admittance(p, fp * (1.0 + 1e-7));
    CHECK(std::abs(y) < 1e-6);
}

TEST_CASE("admittance with routing parasitics") {
    ResonatorSpec spec = reference_spec();
    spec.rs = 2.0;
    spec.ls = 50e-12;
    const MbvdParams p = mbvd_from_spec(spec);

    // Independent evaluation through the nested closed form.
    const double f = 21e9;
    const double w = 2.0 * kPi * f;
    const Complex zm(p.rm, w * p.lm - 1.0 / (w * p.cm));
    const Complex y_core = Complex(0.0, w * p.c0) + 1.0 / zm;
    const Complex y_expected = 1.0 / (Complex(p.rs, w * p.ls) + 1.0 / y_core);
    const Complex y = admittance(p, f);
    CHECK(std::abs(y - y_expected) < 1e-12 * std::abs(y_expected));

    // Parasitics do not change the analytic (core) resonances.
    const ResonancePair res = resonance_frequencies(p);
    CHECK(res.fs_hz == doctest::Approx(20e9).epsilon(1e-12));
}

TEST_CASE("resonance frequency identities") {
    MbvdParams p = mbvd_from_spec(reference_spec());
    p.cm = p.c0;
    const ResonancePair res = resonance_frequencies(p);
    CHECK(res.fp_hz == doctest::Approx(res.fs_hz * std::sqrt(2.0)).epsilon(1e-12));

    TestRng rng(0x5eed0101);
    for (int trial = 0; trial < 200; ++trial) {
        const ResonatorSpec spec = random_spec(rng);
        const ResonancePair round = resonance_frequencies(mbvd_from_spec(spec));
        CHECK(round.fs_hz == doctest::Approx(spec.fs).epsilon(1e-12));
        const double fp_expected = spec.fs * std::sqrt(1.0 + 8.0 * spec.k2 / (kPi * kPi));
        CHECK(round.fp_hz == doctest::Approx(fp_expected).epsilon(1e-12));
        CHECK(round.fp_hz > round.fs_hz);
    }
}

TEST_CASE("k2 from frequencies") {
    CHECK(k2_from_frequencies(20e9, 20e9) == 0.0);
    CHECK(k2_from_frequencies(19e9, 21e9) == doctest::Approx(0.273396).epsilon(1e-5));
    const double fp = 20e9 * std::sqrt(1.0 + 8.0 * 0.42 / (kPi * kPi));
    CHECK(k2_from_frequencies(20e9, fp) == doctest::Approx(0.42).epsilon(1e-9));
    CHECK_THROWS_AS(k2_from_frequencies(21e9, 19e9), InvalidOrdering);
    CHECK_THROWS_AS(k2_from_frequencies(0.0, 19e9), InvalidFrequency);
    CHECK_THROWS_AS(k2_from_frequencies(-1e9, 2e9), InvalidFrequency);
}

TEST_CASE("quality factor from params") {
    MbvdParams p = mbvd_from_spec(reference_spec());
    CHECK(q_from_params(p) == doctest::Approx(50.0).epsilon(1e-9));
    p.rm *= 2.0;
    CHECK(q_from_params(p) == doctest::Approx(25.0).epsilon(1e-9));
    p.rm = 0.0;
    CHECK(std::isinf(q_from_params(p)));
}

TEST_CASE("trace extraction on the reference resonator") {
    const MbvdParams p = mbvd_from_spec(reference_spec());
    const ResonancePair analytic = resonance_frequencies(p);

    // 1 MHz grid across the resonances.
    const Eigen::Index n = static_cast<Eigen::Index>((28e9 - 16e9) / 1e6) + 1;
    const FrequencySweep sweep = admittance_sweep(p, 16e9, 28e9, n);
    const ResonancePair traced = extract_fs_fp_from_trace(sweep);
    CHECK(traced.fs_hz == doctest::Approx(analytic.fs_hz).epsilon(1e-4));
    CHECK(traced.fp_hz == doctest::Approx(analytic.fp_hz).epsilon(1e-4));
}

TEST_CASE("trace extraction error paths") {
    // Pure capacitor: monotone |Y|, no resonance.
    Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(101, 1e9, 2e9);
    Eigen::VectorXcd y(101);
    for (Eigen::Index i = 0; i < 101; ++i) {
        y[i] = Complex(0.0, 2.0 * kPi * f[i] * 1e-13);
    }
    CHECK_THROWS_AS(extract_fs_fp_from_trace(f, y), NoResonance);

    // fs on the last grid point leaves no room for fp.
    const MbvdParams p = mbvd_from_spec(reference_spec());
    const FrequencySweep clipped = admittance_sweep(p, 16e9, 20e9, 401);
    CHECK_THROWS_AS(extract_fs_fp_from_trace(clipped), NoResonance);

    Eigen::VectorXd f4 = Eigen::VectorXd::LinSpaced(4, 1e9, 2e9);
    Eigen::VectorXcd y4 = Eigen::VectorXcd::Ones(4);
    CHECK_THROWS_AS(extract_fs_fp_from_trace(f4, y4), InsufficientData);
}

TEST_CASE("admittance is continuous away from lossless poles") {
    const MbvdParams p = mbvd_from_spec(reference_spec());
    const Eigen::Index n = 20001;
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(n, 16e9, 28e9);
    Complex prev = admittance(p, f[0]);
    for (Eigen::Index i = 1; i < n; ++i) {
        const Complex cur = admittance(p, f[i]);
        CHECK(std::abs(cur - prev) < 0.05 * (1.0 + std::abs(prev)));
        prev = cur;
    }
}

TEST_CASE("passivity of the one-port") {
    TestRng rng(0x5eed0102);
    for (int trial = 0; trial < 100; ++trial) {
        ResonatorSpec spec = random_spec(rng);
        spec.rs = rng.uniform(0.0, 5.0);
        spec.ls = rng.uniform(0.0, 200e-12);
        const MbvdParams p = mbvd_from_spec(spec);
        for (int k = 0; k < 20; ++k) {
            const double f = rng.log_uniform(0.1 * spec.fs, 3.0 * spec.fs);
            const Complex y = admittance(p, f);
            CHECK(y.real() >= -1e-12 * std::abs(y));
        }
    }
}

TEST_CASE("round trip through trace extraction recovers the spec") {
    TestRng rng(0x5eed0103);
    for (int trial = 0; trial < 50; ++trial) {
        const ResonatorSpec spec = random_spec(rng);
        const MbvdParams p = mbvd_from_spec(spec);
        const ResonancePair analytic = resonance_frequencies(p);

        const FrequencySweep sweep =
            admittance_sweep(p, 0.80 * analytic.fs_hz, 1.15 * analytic.fp_hz, 8001);
        const ResonancePair traced = extract_fs_fp_from_trace(sweep);
        const double k2 = k2_from_frequencies(traced.fs_hz, traced.fp_hz);
        CHECK(k2 == doctest::Approx(spec.k2).epsilon(1e-3));
        CHECK(q_from_params(p) == doctest::Approx(spec.q).epsilon(1e-9));
    }
}

}  // TEST_SUITE
