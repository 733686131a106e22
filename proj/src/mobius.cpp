#include "cgc/mobius.hpp"

#include <array>
#include <cmath>

#include "cgc/errors.hpp"

namespace cgc {

MoebiusMap MoebiusMap::from_matrix(const Mat2C& m) {
    MoebiusMap mm{m};
    normalize_det(mm.rep);
    return mm;
}

MoebiusMap MoebiusMap::inverse() const {
    Mat2C inv;
    inv << rep(1, 1), -rep(0, 1), -rep(1, 0), rep(0, 0);
    return MoebiusMap{inv};
}

CP1Point moebius_apply(const MoebiusMap& m, const CP1Point& p) {
    return CP1Point::from_homogeneous(m.rep * p.w);
}

namespace {

// Matrix sending p1, p2, p3 to [1:0], [0:1], [1:1].
Mat2C to_standard_triple(const CP1Point& p1, const CP1Point& p2, const CP1Point& p3) {
    Mat2C cols;
    cols.col(0) = p1.w;
    cols.col(1) = p2.w;
    const Mat2C n = cols.inverse();
    const Vec2C t = n * p3.w;
    if (std::abs(t[0]) < 1e-13 || std::abs(t[1]) < 1e-13)
        throw DegenerateConfiguration("moebius_fit: collapsed triple");
    Mat2C m = Eigen::Vector2cd(1.0 / t[0], 1.0 / t[1]).asDiagonal() * n;
    normalize_det(m);
    return m;
}

const std::array<Mat2C, 6>& sl2_basis() {
    static const std::array<Mat2C, 6> basis = [] {
        std::array<Mat2C, 6> b;
        Mat2C h, e, f;
        h << 1, 0, 0, -1;
        e << 0, 1, 0, 0;
        f << 0, 0, 1, 0;
        b[0] = h;
        b[1] = e;
        b[2] = f;
        b[3] = Complex(0, 1) * h;
        b[4] = Complex(0, 1) * e;
        b[5] = Complex(0, 1) * f;
        return b;
    }();
    return basis;
}

Mat2C exp_traceless_small(const Mat2C& x) {
    // exp of a traceless 2x2: cosh(w) I + sinh(w)/w X, w^2 = -det X
    const Complex w2 = -x.determinant();
    const Complex w = std::sqrt(w2);
    Complex c, s;
    if (std::abs(w) < 1e-8) {
        c = 1.0 + w2 / 2.0 + w2 * w2 / 24.0;
        s = 1.0 + w2 / 6.0 + w2 * w2 / 120.0;
    } else {
        c = std::cosh(w);
        s = std::sinh(w) / w;
    }
    return c * Mat2C::Identity() + s * x;
}

}  // namespace

Real moebius_fit_residual(const MoebiusMap& m,
                          const std::vector<std::pair<CP1Point, CP1Point>>& pairs) {
    Real ss = 0;
    for (const auto& [src, dst] : pairs) {
        const Real d = chordal_distance(moebius_apply(m, src), dst);
        ss += d * d;
    }
    return std::sqrt(ss / std::max<size_t>(1, pairs.size()));
}

MoebiusMap moebius_fit(const std::vector<std::pair<CP1Point, CP1Point>>& pairs) {
    if (pairs.size() < 3)
        throw DegenerateConfiguration("moebius_fit: need at least 3 pairs");

    // Pick a well-separated source triple greedily.
    size_t i0 = 0, i1 = 0;
    Real best = -1;
    for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = a + 1; b < pairs.size(); ++b) {
            const Real d = chordal_distance(pairs[a].first, pairs[b].first);
            if (d > best) {
                best = d;
                i0 = a;
                i1 = b;
            }
        }
    size_t i2 = 0;
    Real best2 = -1;
    for (size_t cI = 0; cI < pairs.size(); ++cI) {
        if (cI == i0 || cI == i1) continue;
        const Real d = std::min(chordal_distance(pairs[cI].first, pairs[i0].first),
                                chordal_distance(pairs[cI].first, pairs[i1].first));
        if (d > best2) {
            best2 = d;
            i2 = cI;
        }
    }
    if (best < 1e-6 || best2 < 1e-6)
        throw DegenerateConfiguration("moebius_fit: source points nearly coincide");

    const Mat2C src_std = to_standard_triple(pairs[i0].first, pairs[i1].first, pairs[i2].first);
    const Mat2C dst_std = to_standard_triple(pairs[i0].second, pairs[i1].second, pairs[i2].second);
    Mat2C m = dst_std.inverse() * src_std;
    normalize_det(m);

    if (pairs.size() == 3) return MoebiusMap{m};

    // Gauss-Newton over the 6 real sl(2,C) directions on the smooth complex
    // cross residual c_k = det[ (m p_k)/|m p_k| , q_k ], |c_k| = chordal
    // distance. The plain chordal distance is not differentiable at zero.
    const auto& basis = sl2_basis();
    const size_t n = pairs.size();
    auto residuals = [&](const Mat2C& g, Eigen::VectorXd& r) {
        for (size_t k = 0; k < n; ++k) {
            Vec2C v = g * pairs[k].first.w;
            v /= v.norm();
            const Complex c = v[0] * pairs[k].second.w[1] - v[1] * pairs[k].second.w[0];
            r[2 * k] = c.real();
            r[2 * k + 1] = c.imag();
        }
    };
    const Real eps = 1e-7;
    Eigen::VectorXd r(2 * n), rp(2 * n);
    Eigen::MatrixXd jac(2 * n, 6);
    for (int iter = 0; iter < 30; ++iter) {
        residuals(m, r);
        for (int j = 0; j < 6; ++j) {
            const Mat2C mp = exp_traceless_small(Mat2C(eps * basis[j])) * m;
            residuals(mp, rp);
            jac.col(j) = (rp - r) / eps;
        }
        Eigen::VectorXd step =
            (jac.transpose() * jac + 1e-14 * Eigen::MatrixXd::Identity(6, 6))
                .ldlt()
                .solve(-jac.transpose() * r);
        Mat2C x = Mat2C::Zero();
        for (int j = 0; j < 6; ++j) x += step[j] * basis[j];
        m = exp_traceless_small(x) * m;
        normalize_det(m);
        if (step.norm() < 1e-14) break;
    }
    return MoebiusMap{m};
}

}  // namespace cgc
