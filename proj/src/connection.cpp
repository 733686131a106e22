#include "cgc/connection.hpp"

#include <cmath>

#include "cgc/errors.hpp"

namespace cgc {

namespace {

struct CoefSet {
    Mat2C Am, A0, Bp, B0;
};

CoefSet coefs_at(Real u, Real ux, Real uy, Complex Q, Real kappa) {
    const Complex uz = 0.5 * Complex(ux, -uy);
    const Complex uzb = std::conj(uz);
    CoefSet c;
    c.A0 << -uz / 4.0, 0, 0, uz / 4.0;
    c.Am << 0, kappa * Q * std::exp(-u / 2), kappa * std::exp(u / 2), 0;
    c.B0 << uzb / 4.0, 0, 0, -uzb / 4.0;
    c.Bp << 0, kappa * std::exp(u / 2), kappa * std::conj(Q) * std::exp(-u / 2), 0;
    return c;
}

}  // namespace

ConnectionForm build_connection(const MetricData& m) {
    ConnectionForm c;
    c.grid = m.grid;
    c.s = m.s;
    c.K = m.K;
    c.kappa = 0.5 * std::sqrt(-m.K);

    const int ny = m.grid.ny, nx = m.grid.nx;
    c.Am = Grid<Mat2C>(ny, nx, Mat2C::Zero());
    c.A0 = Grid<Mat2C>(ny, nx, Mat2C::Zero());
    c.Ap = Grid<Mat2C>(ny, nx, Mat2C::Zero());
    c.Bm = Grid<Mat2C>(ny, nx, Mat2C::Zero());
    c.B0 = Grid<Mat2C>(ny, nx, Mat2C::Zero());
    c.Bp = Grid<Mat2C>(ny, nx, Mat2C::Zero());

    RealField ux, uy;
    if (m.has_profile()) {
        ux = RealField::Zero(ny, nx);
        uy.resize(ny, nx);
        for (int j = 0; j < ny; ++j) uy.row(j).setConstant(m.profile_du[j]);
    } else {
        ux = dx_centered(m.u, m.grid.hx(), m.grid.periodic_x());
        uy = dy_centered(m.u, m.grid.hy());
    }

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const CoefSet k = coefs_at(m.u(j, i), ux(j, i), uy(j, i), m.Q(j, i), c.kappa);
            c.Am(j, i) = k.Am;
            c.A0(j, i) = k.A0;
            c.Bp(j, i) = k.Bp;
            c.B0(j, i) = k.B0;
        }

    if (m.fine_refine > 0) {
        c.x_invariant = true;
        c.fine_refine = m.fine_refine;
        const int nf = static_cast<int>(m.fine_u.size());
        c.fAm.resize(nf);
        c.fA0.resize(nf);
        c.fAp.assign(nf, Mat2C::Zero());
        c.fBm.assign(nf, Mat2C::Zero());
        c.fB0.resize(nf);
        c.fBp.resize(nf);
        const Complex Q0 = m.Q(0, 0);
        for (int k = 0; k < nf; ++k) {
            const CoefSet cs = coefs_at(m.fine_u[k], 0.0, m.fine_du[k], Q0, c.kappa);
            c.fAm[k] = cs.Am;
            c.fA0[k] = cs.A0;
            c.fB0[k] = cs.B0;
            c.fBp[k] = cs.Bp;
        }
    }
    return c;
}

Real flatness_residual(const ConnectionForm& c, Complex lambda) {
    const auto& g = c.grid;
    const int ny = g.ny, nx = g.nx;

    // entrywise fields of A(lambda), B(lambda)
    std::array<ComplexField, 4> Af, Bf;
    for (auto* f : {&Af, &Bf})
        for (auto& e : *f) e.resize(ny, nx);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Mat2C A = c.eval_dz(j, i, lambda);
            const Mat2C B = c.eval_dzbar(j, i, lambda);
            for (int e = 0; e < 4; ++e) {
                Af[e](j, i) = A(e / 2, e % 2);
                Bf[e](j, i) = B(e / 2, e % 2);
            }
        }

    std::array<ComplexField, 4> dzB, dzbA;
    for (int e = 0; e < 4; ++e) {
        dzB[e] = dz_highorder(Bf[e], g);
        dzbA[e] = dbar_highorder(Af[e], g);
    }

    // Patch bands widen by one node so the stencils never touch the
    // one-sided edge values of the derivative fields.
    const int my = g.periodic_x() ? highorder_margin() : highorder_margin() + 1;
    const int mx = g.periodic_x() ? 0 : highorder_margin() + 1;
    Real sup = 0;
    for (int j = my; j < ny - my; ++j)
        for (int i = mx; i < nx - mx; ++i) {
            Mat2C A, B, dB, dA;
            for (int e = 0; e < 4; ++e) {
                A(e / 2, e % 2) = Af[e](j, i);
                B(e / 2, e % 2) = Bf[e](j, i);
                dB(e / 2, e % 2) = dzB[e](j, i);
                dA(e / 2, e % 2) = dzbA[e](j, i);
            }
            const Mat2C R = dB - dA + A * B - B * A;
            sup = std::max(sup, R.cwiseAbs().maxCoeff());
        }
    return sup;
}

namespace {

Mat2C keep_lower(const Mat2C& m) {
    Mat2C r = Mat2C::Zero();
    r(1, 0) = m(1, 0);
    return r;
}
Mat2C keep_upper(const Mat2C& m) {
    Mat2C r = Mat2C::Zero();
    r(0, 1) = m(0, 1);
    return r;
}

}  // namespace

ConnectionForm untwist_connection(const ConnectionForm& c) {
    ConnectionForm u = c;
    u.twisted = false;
    const int ny = c.grid.ny, nx = c.grid.nx;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            u.Am(j, i) = keep_lower(c.Am(j, i));
            u.A0(j, i) = c.A0(j, i) + keep_upper(c.Am(j, i)) + keep_lower(c.Ap(j, i));
            u.Ap(j, i) = keep_upper(c.Ap(j, i));
            u.Bm(j, i) = keep_lower(c.Bm(j, i));
            u.B0(j, i) = c.B0(j, i) + keep_upper(c.Bm(j, i)) + keep_lower(c.Bp(j, i));
            u.Bp(j, i) = keep_upper(c.Bp(j, i));
        }
    for (size_t k = 0; k < c.fAm.size(); ++k) {
        u.fAm[k] = keep_lower(c.fAm[k]);
        u.fA0[k] = c.fA0[k] + keep_upper(c.fAm[k]) + keep_lower(c.fAp[k]);
        u.fAp[k] = keep_upper(c.fAp[k]);
        u.fBm[k] = keep_lower(c.fBm[k]);
        u.fB0[k] = c.fB0[k] + keep_upper(c.fBm[k]) + keep_lower(c.fBp[k]);
        u.fBp[k] = keep_upper(c.fBp[k]);
    }
    return u;
}

}  // namespace cgc
