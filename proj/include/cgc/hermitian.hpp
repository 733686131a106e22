#pragma once

// Hermitian-matrix model of Minkowski 4-space, hyperbolic 3-space and its
// unit tangent bundle, and the two-endpoint representation of geodesics.

#include "cgc/types.hpp"

namespace cgc {

/// Point of E^{1,3} stored as real coordinates w.r.t. the basis e0..e3 of
/// Hermitian 2x2 matrices.
struct HermitianVec {
    Vec4R xi = Vec4R::Zero();

    HermitianVec() = default;
    explicit HermitianVec(const Vec4R& v) : xi(v) {}
    HermitianVec(Real x0, Real x1, Real x2, Real x3) : xi(x0, x1, x2, x3) {}

    Mat2C matrix() const;
    static HermitianVec from_matrix(const Mat2C& m);
};

/// Point on the det = 1, tr > 0 sheet.
struct H3Point {
    HermitianVec v;

    Mat2C matrix() const { return v.matrix(); }
    static H3Point from_matrix(const Mat2C& m) { return H3Point{HermitianVec::from_matrix(m)}; }
};

/// (x, v) with det v = -1 and <x, v> = 0.
struct UnitTangent {
    H3Point x;
    HermitianVec v;
};

/// Homogeneous coordinates on CP^1, unit norm, first nonzero entry real
/// positive.
struct CP1Point {
    Vec2C w = Vec2C(1, 0);

    static CP1Point from_homogeneous(const Vec2C& h);
};

/// Oriented geodesic as its ordered ideal endpoints.
struct GeodesicLine {
    CP1Point endpoint_plus;
    CP1Point endpoint_minus;
};

Real minkowski_inner(const HermitianVec& a, const HermitianVec& b);
/// Bilinear (not sesquilinear) extension to complexified vectors; used for
/// the dz/dzbar components of fundamental forms.
Complex minkowski_inner(const Vec4C& a, const Vec4C& b);

H3Point project_to_h3(const SL2C& g);
UnitTangent unit_tangent_of_frame(const SL2C& g);

/// Endpoints of the geodesic through t; for t = pi_*(g) these are the
/// projectivized columns of g.
GeodesicLine geodesic_endpoints(const UnitTangent& t);

Eigen::Vector3d to_poincare_ball(const H3Point& x);

/// Action p -> g p g^* on Hermitian matrices (isometries of H^3).
HermitianVec isometry_apply(const SL2C& g, const HermitianVec& p);

/// Hermitian positive square root with unit determinant; maps e0 to x.
SL2C h3_sqrt(const H3Point& x);

/// Chordal distance |det[p q]| between unit homogeneous representatives,
/// in [0, 1].
Real chordal_distance(const CP1Point& p, const CP1Point& q);
Real chordal_distance(const Complex& z, const Complex& w);

/// Hyperbolic distance acosh(-<p,q>).
Real h3_distance(const H3Point& p, const H3Point& q);

}  // namespace cgc
