#include <doctest.h>

#include "cgc/errors.hpp"
#include "cgc/mobius.hpp"
#include "support/oracles.hpp"

using namespace cgc;

TEST_CASE("moebius apply") {
    const CP1Point p = CP1Point::from_homogeneous(Vec2C(0.3, Complex(1, -0.5)));
    CHECK(chordal_distance(moebius_apply(MoebiusMap{}, p), p) < 1e-15);

    Mat2C d = Mat2C::Zero();
    d(0, 0) = 2;
    d(1, 1) = 0.5;
    const CP1Point q =
        moebius_apply(MoebiusMap{d}, CP1Point::from_homogeneous(Vec2C(1, 1)));
    CHECK(chordal_distance(q, CP1Point::from_homogeneous(Vec2C(4, 1))) < 1e-14);

    for (int k = 0; k < 20; ++k) {
        const MoebiusMap m{test::random_sl2()};
        const CP1Point x =
            CP1Point::from_homogeneous(Vec2C(test::random_complex(), test::random_complex()));
        CHECK(chordal_distance(moebius_apply(m.inverse(), moebius_apply(m, x)), x) < 1e-12);
    }
}

TEST_CASE("moebius fit: exact three-point interpolation") {
    for (int k = 0; k < 20; ++k) {
        const SL2C m = test::random_sl2();
        std::vector<std::pair<CP1Point, CP1Point>> pairs;
        for (Complex z : {Complex(0, 0), Complex(1, 0), Complex(0.3, 1.1)}) {
            const CP1Point p = CP1Point::from_homogeneous(Vec2C(z, 1));
            pairs.emplace_back(p, moebius_apply(MoebiusMap{m}, p));
        }
        const MoebiusMap fit = moebius_fit(pairs);
        CHECK(moebius_fit_residual(fit, pairs) < 1e-12);
        CHECK(std::min((fit.rep - m).cwiseAbs().maxCoeff(),
                       (fit.rep + m).cwiseAbs().maxCoeff()) < 1e-10);
    }
}

TEST_CASE("moebius fit: identity pairs") {
    std::vector<std::pair<CP1Point, CP1Point>> pairs;
    for (Complex z : {Complex(0, 0), Complex(1, 0), Complex(0, 1), Complex(2, -1)}) {
        const CP1Point p = CP1Point::from_homogeneous(Vec2C(z, 1));
        pairs.emplace_back(p, p);
    }
    const MoebiusMap fit = moebius_fit(pairs);
    CHECK(test::moebius_action_distance(fit.rep, Mat2C::Identity()) < 1e-10);
}

TEST_CASE("moebius fit: noisy pairs") {
    const SL2C m = test::random_sl2(0.7);
    std::vector<std::pair<CP1Point, CP1Point>> pairs;
    for (int k = 0; k < 20; ++k) {
        const CP1Point p =
            CP1Point::from_homogeneous(Vec2C(test::random_complex(2.0), Complex(1, 0)));
        CP1Point q = moebius_apply(MoebiusMap{m}, p);
        q = CP1Point::from_homogeneous(
            Vec2C(q.w[0] + 1e-8 * test::random_complex(), q.w[1] + 1e-8 * test::random_complex()));
        pairs.emplace_back(p, q);
    }
    const MoebiusMap fit = moebius_fit(pairs);
    CHECK(test::moebius_action_distance(fit.rep, m) < 1e-6);
}

TEST_CASE("moebius fit: degenerate sources rejected") {
    std::vector<std::pair<CP1Point, CP1Point>> pairs;
    const CP1Point p = CP1Point::from_homogeneous(Vec2C(1, 1));
    const CP1Point p2 = CP1Point::from_homogeneous(Vec2C(1.0 + 1e-9, 1));
    const CP1Point far = CP1Point::from_homogeneous(Vec2C(0, 1));
    pairs.emplace_back(p, p);
    pairs.emplace_back(p2, p2);
    pairs.emplace_back(far, far);
    // two of three sources nearly coincide: no separated triple exists
    CHECK_THROWS_AS(static_cast<void>(moebius_fit(pairs)), DegenerateConfiguration);
}
