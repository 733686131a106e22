#pragma once

// Test-side oracles, independent of the library's integration path.

#include <cmath>
#include <random>

#include "cgc/types.hpp"

namespace cgc::test {

/// Matrix exponential by Pade(6) scaling and squaring.
inline Mat2C expm_pade(const Mat2C& a) {
    const int squarings = std::max(0, static_cast<int>(std::ceil(
                                          std::log2(std::max(1.0, a.cwiseAbs().maxCoeff())))) +
                                          4);
    const Mat2C as = a / std::pow(2.0, squarings);
    Mat2C x = as;
    Mat2C num = Mat2C::Identity();
    Mat2C den = Mat2C::Identity();
    Real c = 1.0;
    int sign = -1;
    for (int k = 1; k <= 6; ++k) {
        c = c * (6 - k + 1) / (k * (12 - k + 1));
        num += c * x;
        den += sign * c * x;
        x = Mat2C(x * as);
        sign = -sign;
    }
    Mat2C r = den.inverse() * num;
    for (int k = 0; k < squarings; ++k) r = Mat2C(r * r);
    return r;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20260810);
    return gen;
}

inline Real uniform(Real a, Real b) {
    std::uniform_real_distribution<Real> d(a, b);
    return d(rng());
}

inline Complex random_complex(Real scale = 1.0) {
    return Complex(uniform(-scale, scale), uniform(-scale, scale));
}

inline Mat2C random_traceless(Real scale = 1.0) {
    Mat2C m;
    const Complex d = random_complex(scale);
    m << d, random_complex(scale), random_complex(scale), -d;
    return m;
}

inline SL2C random_sl2(Real scale = 1.0) {
    return expm_pade(random_traceless(scale));
}

/// Action distance between two Moebius maps: sup chordal displacement over
/// random sample points.
inline Real moebius_action_distance(const Mat2C& a, const Mat2C& b, int samples = 64);

}  // namespace cgc::test

#include "cgc/hermitian.hpp"
#include "cgc/mobius.hpp"

namespace cgc::test {

inline Real moebius_action_distance(const Mat2C& a, const Mat2C& b, int samples) {
    Real worst = 0;
    for (int k = 0; k < samples; ++k) {
        const CP1Point p = CP1Point::from_homogeneous(Vec2C(random_complex(), random_complex()));
        const CP1Point pa = moebius_apply(MoebiusMap{a}, p);
        const CP1Point pb = moebius_apply(MoebiusMap{b}, p);
        worst = std::max(worst, chordal_distance(pa, pb));
    }
    return worst;
}

}  // namespace cgc::test
