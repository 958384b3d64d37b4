#include "rfladder/network.hpp"

#include <cmath>

namespace rfladder {

namespace {

bool is_finite(Complex v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

}  // namespace

Abcd abcd_series(Complex z) {
    if (!is_finite(z)) {
        throw InvalidElement("series impedance is not finite");
    }
    return Abcd{{1.0, 0.0}, z, {0.0, 0.0}, {1.0, 0.0}};
}

Abcd abcd_shunt(Complex y) {
    if (!is_finite(y)) {
        throw InvalidElement("shunt admittance is not finite");
    }
    return Abcd{{1.0, 0.0}, {0.0, 0.0}, y, {1.0, 0.0}};
}

Abcd cascade(std::span<const Abcd> stages) {
    Abcd result;
    for (const Abcd& stage : stages) {
        result = result * stage;
    }
    return result;
}

SParams2 abcd_to_s(const Abcd& m, double z0) {
    if (!(z0 > 0.0) || !std::isfinite(z0)) {
        throw InvalidReference("reference impedance must be positive and finite");
    }
    const Complex denom = m.a + m.b / z0 + m.c * z0 + m.d;
    if (std::abs(denom) < 1e-20) {
        throw SingularNetwork("ABCD-to-S denominator vanishes");
    }
    SParams2 s;
    s.z0 = z0;
    s.s11 = (m.a + m.b / z0 - m.c * z0 - m.d) / denom;
    s.s21 = 2.0 / denom;
    s.s12 = 2.0 * m.determinant() / denom;
    s.s22 = (-m.a + m.b / z0 - m.c * z0 + m.d) / denom;
    return s;
}

Complex one_port_s11(Complex y, double z0) {
    if (!(z0 > 0.0) || !std::isfinite(z0)) {
        throw InvalidReference("reference impedance must be positive and finite");
    }
    const Complex denom = 1.0 + z0 * y;
    if (std::abs(denom) < 1e-20) {
        throw SingularNetwork("one-port admittance equals -1/z0");
    }
    return (1.0 - z0 * y) / denom;
}

}  // namespace rfladder
