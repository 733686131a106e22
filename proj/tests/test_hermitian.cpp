#include <doctest.h>

#include "cgc/errors.hpp"
#include "cgc/hermitian.hpp"
#include "support/oracles.hpp"

using namespace cgc;

namespace {

HermitianVec basis(int k) {
    Vec4R v = Vec4R::Zero();
    v[k] = 1;
    return HermitianVec(v);
}

}  // namespace

TEST_CASE("minkowski inner product on the basis") {
    CHECK(minkowski_inner(basis(0), basis(0)) == doctest::Approx(-1.0));
    CHECK(minkowski_inner(basis(1), basis(1)) == doctest::Approx(1.0));
    CHECK(minkowski_inner(basis(2), basis(2)) == doctest::Approx(1.0));
    CHECK(minkowski_inner(basis(3), basis(3)) == doctest::Approx(1.0));
    CHECK(minkowski_inner(basis(0), basis(1)) == doctest::Approx(0.0));
    CHECK(minkowski_inner(basis(2), basis(3)) == doctest::Approx(0.0));
}

TEST_CASE("<xi, xi> = -det xi, two routes") {
    for (int k = 0; k < 50; ++k) {
        HermitianVec xi(Vec4R::Random());
        const Real viaforme = minkowski_inner(xi, xi);
        const Real viadet = -xi.matrix().determinant().real();
        CHECK(std::abs(viaforme - viadet) < 1e-12);

        // polarization route
        HermitianVec eta(Vec4R::Random());
        const Real pol = -0.5 * ((xi.matrix() + eta.matrix()).determinant().real() -
                                 xi.matrix().determinant().real() -
                                 eta.matrix().determinant().real());
        CHECK(std::abs(minkowski_inner(xi, eta) - pol) < 1e-12);
    }
}

TEST_CASE("hermitian matrix round trip") {
    for (int k = 0; k < 20; ++k) {
        HermitianVec xi(Vec4R::Random());
        const HermitianVec back = HermitianVec::from_matrix(xi.matrix());
        CHECK((back.xi - xi.xi).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((xi.matrix() - xi.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("project_to_h3") {
    CHECK((project_to_h3(Mat2C::Identity()).matrix() - Mat2C::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-15);

    Mat2C d = Mat2C::Zero();
    d(0, 0) = 2;
    d(1, 1) = 0.5;
    Mat2C expect = Mat2C::Zero();
    expect(0, 0) = 4;
    expect(1, 1) = 0.25;
    CHECK((project_to_h3(d).matrix() - expect).cwiseAbs().maxCoeff() < 1e-14);

    for (int k = 0; k < 20; ++k) {
        const SL2C g = test::random_sl2();
        const H3Point p = project_to_h3(g);
        CHECK(std::abs(p.matrix().determinant().real() - 1.0) < 1e-10);
        CHECK(p.matrix().trace().real() > 0);
    }
}

TEST_CASE("unit_tangent_of_frame invariants") {
    const UnitTangent t0 = unit_tangent_of_frame(Mat2C::Identity());
    CHECK((t0.x.v.xi - Vec4R(1, 0, 0, 0)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((t0.v.xi - Vec4R(0, 1, 0, 0)).cwiseAbs().maxCoeff() < 1e-14);

    for (int k = 0; k < 20; ++k) {
        const SL2C g = test::random_sl2();
        const UnitTangent t = unit_tangent_of_frame(g);
        CHECK(std::abs(t.v.matrix().determinant().real() + 1.0) < 1e-10);
        CHECK(std::abs(minkowski_inner(t.x.v, t.v)) < 1e-12);
    }
}

TEST_CASE("geodesic endpoints: model case and frame columns") {
    const GeodesicLine model = geodesic_endpoints(unit_tangent_of_frame(Mat2C::Identity()));
    CHECK(chordal_distance(model.endpoint_plus, CP1Point{Vec2C(1, 0)}) < 1e-12);
    CHECK(chordal_distance(model.endpoint_minus, CP1Point{Vec2C(0, 1)}) < 1e-12);

    for (int k = 0; k < 20; ++k) {
        const SL2C g = test::random_sl2();
        const GeodesicLine line = geodesic_endpoints(unit_tangent_of_frame(g));
        CHECK(chordal_distance(line.endpoint_plus, CP1Point::from_homogeneous(g.col(0))) < 1e-12);
        CHECK(chordal_distance(line.endpoint_minus, CP1Point::from_homogeneous(g.col(1))) < 1e-12);
    }
}

TEST_CASE("geodesic endpoints: equivariance") {
    for (int k = 0; k < 10; ++k) {
        const SL2C g = test::random_sl2();
        const SL2C h = test::random_sl2();
        UnitTangent t = unit_tangent_of_frame(g);
        UnitTangent moved;
        moved.x = H3Point{isometry_apply(h, t.x.v)};
        moved.v = isometry_apply(h, t.v);
        const GeodesicLine a = geodesic_endpoints(moved);
        const GeodesicLine b = geodesic_endpoints(t);
        const MoebiusMap mh = MoebiusMap::from_matrix(h);
        CHECK(chordal_distance(a.endpoint_plus, moebius_apply(mh, b.endpoint_plus)) < 1e-10);
        CHECK(chordal_distance(a.endpoint_minus, moebius_apply(mh, b.endpoint_minus)) < 1e-10);
    }
}

TEST_CASE("geodesic endpoints reject invalid tangents") {
    UnitTangent bad;
    bad.x = project_to_h3(Mat2C::Identity());
    bad.v = HermitianVec(Vec4R(0, 2, 0, 0));  // det = -4
    CHECK_THROWS_AS(static_cast<void>(geodesic_endpoints(bad)), NumericalError);

    // det -1 but not orthogonal to e0
    bad.v = HermitianVec(Vec4R(0.5, std::sqrt(1.25), 0, 0));
    CHECK_THROWS_AS(static_cast<void>(geodesic_endpoints(bad)), NumericalError);
}

TEST_CASE("poincare ball coordinates") {
    CHECK(to_poincare_ball(project_to_h3(Mat2C::Identity())).norm() < 1e-15);

    Mat2C d = Mat2C::Zero();
    d(0, 0) = 4;
    d(1, 1) = 0.25;
    const Eigen::Vector3d b = to_poincare_ball(H3Point::from_matrix(d));
    CHECK((b - Eigen::Vector3d(0.6, 0, 0)).cwiseAbs().maxCoeff() < 1e-14);

    for (int k = 0; k < 20; ++k) {
        const H3Point p = project_to_h3(test::random_sl2());
        CHECK(to_poincare_ball(p).norm() < 1.0);
    }
}

TEST_CASE("hyperbolic distance against the model geodesic") {
    for (Real t : {0.3, 1.0, 2.5}) {
        Mat2C g = Mat2C::Zero();
        g(0, 0) = std::exp(t / 2);
        g(1, 1) = std::exp(-t / 2);
        CHECK(h3_distance(project_to_h3(Mat2C::Identity()), project_to_h3(g)) ==
              doctest::Approx(t).epsilon(1e-12));
    }
}
