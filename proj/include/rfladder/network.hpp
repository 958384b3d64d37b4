#pragma once

#include <complex>
#include <span>

#include <Eigen/Core>

#include "rfladder/errors.hpp"

namespace rfladder {

using Complex = std::complex<double>;

/// Chain (ABCD) matrix of a two-port. `b` carries ohms, `c` siemens,
/// `a` and `d` are dimensionless. Default-constructs to the identity.
struct Abcd {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
    Complex d{1.0, 0.0};

    Complex determinant() const { return a * d - b * c; }

    Eigen::Matrix2cd matrix() const {
        Eigen::Matrix2cd m;
        m << a, b, c, d;
        return m;
    }

    static Abcd from_matrix(const Eigen::Matrix2cd& m) {
        return Abcd{m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    }
};

/// Chain cascade: `lhs` drives `rhs`.
inline Abcd operator*(const Abcd& lhs, const Abcd& rhs) {
    return Abcd{lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
                lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

/// Scattering parameters of a two-port referenced to a real impedance `z0`.
struct SParams2 {
    Complex s11{0.0, 0.0};
    Complex s21{0.0, 0.0};
    Complex s12{0.0, 0.0};
    Complex s22{0.0, 0.0};
    double z0{50.0};
};

/// Series impedance element: [[1, z], [0, 1]].
Abcd abcd_series(Complex z);

/// Shunt admittance element: [[1, 0], [y, 1]].
Abcd abcd_shunt(Complex y);

/// Left-to-right product of the stage matrices; empty input yields identity.
Abcd cascade(std::span<const Abcd> stages);

/// Convert a chain matrix to S-parameters against the real reference `z0`.
SParams2 abcd_to_s(const Abcd& m, double z0);

/// Reflection coefficient of a one-port admittance: (1 - z0 y) / (1 + z0 y).
Complex one_port_s11(Complex y, double z0);

}  // namespace rfladder
