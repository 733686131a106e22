#include "cgc/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "cgc/errors.hpp"

namespace cgc {

Mat2C HermitianVec::matrix() const {
    Mat2C m;
    m << Complex(xi[0] + xi[1], 0), Complex(xi[3], -xi[2]),
         Complex(xi[3], xi[2]), Complex(xi[0] - xi[1], 0);
    return m;
}

HermitianVec HermitianVec::from_matrix(const Mat2C& m) {
    HermitianVec h;
    h.xi[0] = 0.5 * (m(0, 0).real() + m(1, 1).real());
    h.xi[1] = 0.5 * (m(0, 0).real() - m(1, 1).real());
    h.xi[2] = m(1, 0).imag();
    h.xi[3] = m(1, 0).real();
    return h;
}

CP1Point CP1Point::from_homogeneous(const Vec2C& h) {
    const Real n = h.norm();
    if (!(n > 0)) throw NumericalError("CP1Point: zero homogeneous vector");
    Vec2C w = h / n;
    Complex lead = (std::abs(w[0]) > 1e-14) ? w[0] : w[1];
    w *= std::abs(lead) / lead;
    return CP1Point{w};
}

Real minkowski_inner(const HermitianVec& a, const HermitianVec& b) {
    // <xi, eta> = -1/2 (tr xi tr eta - tr(xi eta)), the polarization of
    // <xi, xi> = -det xi.
    const Mat2C x = a.matrix(), y = b.matrix();
    const Complex v = -0.5 * (x.trace() * y.trace() - (x * y).trace());
    return v.real();
}

Complex minkowski_inner(const Vec4C& a, const Vec4C& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

H3Point project_to_h3(const SL2C& g) {
    Mat2C m = g * g.adjoint();
    m = Mat2C(0.5 * (m + m.adjoint()));  // kill rounding skew
    return H3Point::from_matrix(m);
}

UnitTangent unit_tangent_of_frame(const SL2C& g) {
    UnitTangent t;
    t.x = project_to_h3(g);
    Mat2C v = g * pauli_e1() * g.adjoint();
    v = Mat2C(0.5 * (v + v.adjoint()));
    t.v = HermitianVec::from_matrix(v);
    return t;
}

SL2C h3_sqrt(const H3Point& x) {
    Eigen::SelfAdjointEigenSolver<Mat2C> es(x.matrix());
    const auto& ev = es.eigenvalues();
    if (!(ev.minCoeff() > 0)) throw NumericalError("h3_sqrt: matrix not positive definite");
    Mat2C r = es.eigenvectors() *
              Eigen::Vector2cd(std::sqrt(ev[0]), std::sqrt(ev[1])).asDiagonal() *
              es.eigenvectors().adjoint();
    normalize_det(r);
    return r;
}

GeodesicLine geodesic_endpoints(const UnitTangent& t) {
    const Mat2C xm = t.x.matrix();
    const Mat2C vm = t.v.matrix();
    if (std::abs(vm.determinant().real() + 1.0) > 1e-8 ||
        std::abs(minkowski_inner(t.x.v, t.v)) > 1e-8)
        throw NumericalError("geodesic_endpoints: unit tangent invariants violated");

    // Move (x, v) to the model pair (e0, e1); the geodesic there is
    // diag(e^t, e^{-t}) with endpoints [1:0], [0:1].
    const SL2C h = h3_sqrt(t.x);
    const Mat2C hinv = h.inverse();
    Mat2C w = hinv * vm * hinv.adjoint();
    w = Mat2C(0.5 * (w + w.adjoint()));

    Eigen::SelfAdjointEigenSolver<Mat2C> es(w);
    // eigenvalues sorted ascending: -1 then +1
    const Vec2C col_minus = es.eigenvectors().col(0);
    const Vec2C col_plus = es.eigenvectors().col(1);

    GeodesicLine line;
    line.endpoint_plus = CP1Point::from_homogeneous(h * col_plus);
    line.endpoint_minus = CP1Point::from_homogeneous(h * col_minus);
    return line;
}

Eigen::Vector3d to_poincare_ball(const H3Point& x) {
    const Vec4R& v = x.v.xi;
    return Eigen::Vector3d(v[1], v[2], v[3]) / (1.0 + v[0]);
}

HermitianVec isometry_apply(const SL2C& g, const HermitianVec& p) {
    Mat2C m = g * p.matrix() * g.adjoint();
    m = Mat2C(0.5 * (m + m.adjoint()));
    return HermitianVec::from_matrix(m);
}

Real chordal_distance(const CP1Point& p, const CP1Point& q) {
    return std::abs(p.w[0] * q.w[1] - p.w[1] * q.w[0]);
}

Real chordal_distance(const Complex& z, const Complex& w) {
    return chordal_distance(CP1Point::from_homogeneous(Vec2C(z, 1)),
                            CP1Point::from_homogeneous(Vec2C(w, 1)));
}

Real h3_distance(const H3Point& p, const H3Point& q) {
    // <p-q, p-q> = 4 sinh^2(d/2); the difference route keeps full precision
    // for nearby points where acosh(-<p,q>) would lose half the digits.
    const HermitianVec diff(Vec4R(p.v.xi - q.v.xi));
    const Real n2 = minkowski_inner(diff, diff);
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, n2)));
}

}  // namespace cgc
