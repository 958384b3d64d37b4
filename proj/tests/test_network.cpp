#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "rfladder/network.hpp"
#include "support/test_rng.hpp"

using namespace rfladder;
using rfladder::testing::TestRng;

namespace {

bool complex_near(Complex a, Complex b, double tol = 1e-12) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

Abcd random_reciprocal_cascade(TestRng& rng, int n_elements, bool lossless) {
    Abcd acc;
    for (int i = 0; i < n_elements; ++i) {
        const bool series = (rng.next_u64() & 1u) != 0;
        const double re = lossless ? 0.0 : rng.uniform(0.0, 20.0);
        const double im = rng.uniform(-100.0, 100.0);
        if (series) {
            acc = acc * abcd_series(Complex(re, im));
        } else {
            acc = acc * abcd_shunt(Complex(re / 1e3, im / 1e3));
        }
    }
    return acc;
}

}  // namespace

TEST_SUITE("network") {

TEST_CASE("series element matrix") {
    const Abcd identity = abcd_series(Complex(0.0, 0.0));
    CHECK(identity.a == Complex(1.0, 0.0));
    CHECK(identity.b == Complex(0.0, 0.0));
    CHECK(identity.c == Complex(0.0, 0.0));
    CHECK(identity.d == Complex(1.0, 0.0));

    const Abcd r50 = abcd_series(Complex(50.0, 0.0));
    CHECK(r50.a == Complex(1.0, 0.0));
    CHECK(r50.b == Complex(50.0, 0.0));
    CHECK(r50.c == Complex(0.0, 0.0));
    CHECK(r50.d == Complex(1.0, 0.0));

    const Abcd jx = abcd_series(Complex(0.0, 10.0));
    CHECK(jx.b == Complex(0.0, 10.0));
    CHECK(jx.a == Complex(1.0, 0.0));

    CHECK_THROWS_AS(abcd_series(Complex(std::numeric_limits<double>::infinity(), 0.0)),
                    InvalidElement);
    CHECK_THROWS_AS(abcd_series(Complex(0.0, std::nan(""))), InvalidElement);
}

TEST_CASE("shunt element matrix") {
    const Abcd open = abcd_shunt(Complex(0.0, 0.0));
    CHECK(open.a == Complex(1.0, 0.0));
    CHECK(open.c == Complex(0.0, 0.0));

    const Abcd g = abcd_shunt(Complex(0.02, 0.0));
    CHECK(g.c == Complex(0.02, 0.0));
    CHECK(g.b == Complex(0.0, 0.0));

    const Abcd jb = abcd_shunt(Complex(0.0, -0.01));
    CHECK(jb.c == Complex(0.0, -0.01));

    CHECK_THROWS_AS(abcd_shunt(Complex(std::nan(""), 0.0)), InvalidElement);
}

TEST_CASE("cascade of series and shunt") {
    const std::vector<Abcd> empty;
    CHECK(cascade(empty).a == Complex(1.0, 0.0));
    CHECK(cascade(empty).b == Complex(0.0, 0.0));
    CHECK(cascade(empty).c == Complex(0.0, 0.0));
    CHECK(cascade(empty).d == Complex(1.0, 0.0));

    const std::vector<Abcd> stages{abcd_series(Complex(50.0, 0.0)), abcd_shunt(Complex(0.02, 0.0))};
    const Abcd m = cascade(stages);
    CHECK(complex_near(m.a, Complex(2.0, 0.0)));
    CHECK(complex_near(m.b, Complex(50.0, 0.0)));
    CHECK(complex_near(m.c, Complex(0.02, 0.0)));
    CHECK(complex_near(m.d, Complex(1.0, 0.0)));
}

TEST_CASE("cascade associativity on random complex matrices") {
    TestRng rng(0x5eed0001);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Abcd> abc;
        for (int k = 0; k < 3; ++k) {
            abc.push_back(Abcd{rng.uniform_complex(-1.0, 1.0), rng.uniform_complex(-1.0, 1.0),
                               rng.uniform_complex(-1.0, 1.0), rng.uniform_complex(-1.0, 1.0)});
        }
        const Abcd left = cascade(std::vector<Abcd>{cascade(std::vector<Abcd>{abc[0], abc[1]}), abc[2]});
        const Abcd right = cascade(abc);
        CHECK(complex_near(left.a, right.a));
        CHECK(complex_near(left.b, right.b));
        CHECK(complex_near(left.c, right.c));
        CHECK(complex_near(left.d, right.d));
    }
}

TEST_CASE("determinant of reciprocal cascades is one") {
    TestRng rng(0x5eed0002);
    for (int trial = 0; trial < 100; ++trial) {
        const Abcd m = random_reciprocal_cascade(rng, 8, false);
        CHECK(std::abs(m.determinant() - Complex(1.0, 0.0)) < 1e-9);
    }
}

TEST_CASE("abcd_to_s matched and one-element cases") {
    const SParams2 through = abcd_to_s(Abcd{}, 50.0);
    CHECK(std::abs(through.s11) < 1e-15);
    CHECK(complex_near(through.s21, Complex(1.0, 0.0)));

    const SParams2 series = abcd_to_s(abcd_series(Complex(50.0, 0.0)), 50.0);
    CHECK(complex_near(series.s21, Complex(2.0 / 3.0, 0.0)));
    CHECK(complex_near(series.s11, Complex(1.0 / 3.0, 0.0)));
    CHECK(complex_near(series.s12, series.s21));
    CHECK(complex_near(series.s22, series.s11));

    const SParams2 shunt = abcd_to_s(abcd_shunt(Complex(0.02, 0.0)), 50.0);
    CHECK(complex_near(shunt.s21, Complex(2.0 / 3.0, 0.0)));
    CHECK(complex_near(shunt.s11, Complex(-1.0 / 3.0, 0.0)));
}

TEST_CASE("abcd_to_s rejects bad reference and singular networks") {
    CHECK_THROWS_AS(abcd_to_s(Abcd{}, 0.0), InvalidReference);
    CHECK_THROWS_AS(abcd_to_s(Abcd{}, -50.0), InvalidReference);

    const Abcd singular{Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(-1.0, 0.0)};
    CHECK_THROWS_AS(abcd_to_s(singular, 50.0), SingularNetwork);
}

TEST_CASE("reciprocity of converted cascades") {
    TestRng rng(0x5eed0003);
    for (int trial = 0; trial < 100; ++trial) {
        const SParams2 s = abcd_to_s(random_reciprocal_cascade(rng, 6, false), 50.0);
        CHECK(std::abs(s.s12 - s.s21) <= 1e-9 * std::max(1.0, std::abs(s.s21)));
    }
}

TEST_CASE("lossless cascades conserve energy") {
    TestRng rng(0x5eed0004);
    for (int trial = 0; trial < 100; ++trial) {
        const SParams2 s = abcd_to_s(random_reciprocal_cascade(rng, 6, true), 50.0);
        const double power = std::norm(s.s11) + std::norm(s.s21);
        CHECK(power == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("passivity of lossy cascades") {
    TestRng rng(0x5eed0005);
    for (int trial = 0; trial < 100; ++trial) {
        const SParams2 s = abcd_to_s(random_reciprocal_cascade(rng, 6, false), 50.0);
        CHECK(std::norm(s.s11) + std::norm(s.s21) <= 1.0 + 1e-9);
    }
}

TEST_CASE("one-port reflection") {
    CHECK(complex_near(one_port_s11(Complex(0.0, 0.0), 50.0), Complex(1.0, 0.0)));
    CHECK(std::abs(one_port_s11(Complex(1.0 / 50.0, 0.0), 50.0)) < 1e-15);
    CHECK(complex_near(one_port_s11(Complex(1e12, 0.0), 50.0), Complex(-1.0, 0.0), 1e-9));
    CHECK_THROWS_AS(one_port_s11(Complex(-1.0 / 50.0, 0.0), 50.0), SingularNetwork);
    CHECK_THROWS_AS(one_port_s11(Complex(0.01, 0.0), 0.0), InvalidReference);
}

}  // TEST_SUITE
