#include "cgc/frame.hpp"

#include <cmath>
#include <functional>

#include "cgc/errors.hpp"

namespace cgc {

Mat2C exp_traceless(const Mat2C& x) {
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

namespace {

constexpr Real kGauss1 = 0.5 - 0.28867513459481288225;  // 1/2 - sqrt(3)/6
constexpr Real kGauss2 = 0.5 + 0.28867513459481288225;

// One 4th-order Magnus step for dF = F A(t) over [t0, t0 + h].
Mat2C magnus_step(const std::function<Mat2C(Real)>& A, Real t0, Real h) {
    const Mat2C a1 = A(t0 + kGauss1 * h);
    const Mat2C a2 = A(t0 + kGauss2 * h);
    const Mat2C omega =
        0.5 * h * (a1 + a2) + (std::sqrt(3.0) / 12.0) * h * h * (a1 * a2 - a2 * a1);
    return exp_traceless(omega);
}

// Cubic Lagrange interpolation of a sampled matrix family at fractional
// index t; clamped 4-point stencil (or periodic wrap).
Mat2C interp_cubic(const std::vector<Mat2C>& samples, Real t, bool periodic) {
    const int n = static_cast<int>(samples.size());
    const int base = static_cast<int>(std::floor(t));
    Mat2C out = Mat2C::Zero();
    if (periodic) {
        const Real tau = t - base;
        const Real w0 = -tau * (tau - 1) * (tau - 2) / 6.0;
        const Real w1 = (tau + 1) * (tau - 1) * (tau - 2) / 2.0;
        const Real w2 = -(tau + 1) * tau * (tau - 2) / 2.0;
        const Real w3 = (tau + 1) * tau * (tau - 1) / 6.0;
        auto at = [&](int k) -> const Mat2C& { return samples[((k % n) + n) % n]; };
        out = w0 * at(base - 1) + w1 * at(base) + w2 * at(base + 1) + w3 * at(base + 2);
    } else {
        int ks = std::clamp(base - 1, 0, n - 4);
        const Real tau = t - ks;
        auto L = [&](int i) {
            Real w = 1;
            for (int m = 0; m < 4; ++m)
                if (m != i) w *= (tau - m) / (i - m);
            return w;
        };
        for (int i = 0; i < 4; ++i) out += L(i) * samples[ks + i];
    }
    return out;
}

struct Sampler {
    std::vector<Mat2C> samples;
    Real step = 1;  // parameter distance between consecutive samples
    bool periodic = false;

    Mat2C operator()(Real t) const { return interp_cubic(samples, t / step, periodic); }
};

Sampler column_sampler(const ConnectionForm& c, Complex lambda, int col) {
    Sampler s;
    if (c.fine_refine > 0 && c.x_invariant) {
        const int nf = static_cast<int>(c.fAm.size());
        s.samples.resize(nf);
        for (int k = 0; k < nf; ++k) s.samples[k] = c.fine_dy(k, lambda);
        s.step = c.grid.hy() / c.fine_refine;
    } else {
        s.samples.resize(c.grid.ny);
        for (int j = 0; j < c.grid.ny; ++j) s.samples[j] = c.eval_dy(j, col, lambda);
        s.step = c.grid.hy();
    }
    return s;
}

Sampler row_sampler(const ConnectionForm& c, Complex lambda, int row) {
    Sampler s;
    s.samples.resize(c.grid.nx);
    for (int i = 0; i < c.grid.nx; ++i) s.samples[i] = c.eval_dx(row, i, lambda);
    s.step = c.grid.hx();
    s.periodic = c.grid.periodic_x();
    return s;
}

// substep count per grid interval in the sweep direction
int column_substeps(const ConnectionForm& c) {
    return (c.fine_refine > 0 && c.x_invariant) ? c.fine_refine : 2;
}

Mat2C advance(const Sampler& s, const Mat2C& F, Real t0, Real t1, int substeps) {
    Mat2C out = F;
    const Real h = (t1 - t0) / substeps;
    for (int k = 0; k < substeps; ++k) out = out * magnus_step(s, t0 + k * h, h);
    return out;
}

void require_flat(const ConnectionForm& c, Complex lambda) {
    const Real r = flatness_residual(c, lambda);
    if (!(r < 1e-6))
        throw FlatnessTooLarge("flatness residual " + std::to_string(r) + " at requested lambda");
}

ExtendedFrame integrate_impl(const ConnectionForm& c, Complex lambda, int base_i, int base_j,
                             bool rows_first) {
    if (base_j < 0) base_j = c.grid.ny / 2;
    require_flat(c, lambda);

    const int ny = c.grid.ny;
    const int fc = c.grid.frame_cols();
    ExtendedFrame fr;
    fr.grid = c.grid;
    fr.lambda = lambda;
    fr.base_i = base_i;
    fr.base_j = base_j;
    fr.F = Grid<SL2C>(ny, fc, Mat2C::Identity());

    const Real hy = c.grid.hy(), hx = c.grid.hx();
    const int csub = column_substeps(c);
    auto data_col = [&](int i) {
        return c.grid.periodic_x() ? i % c.grid.nx : std::min(i, c.grid.nx - 1);
    };

    auto sweep_column = [&](int i) {
        const Sampler s = column_sampler(c, lambda, data_col(i));
        const Real yb = c.grid.y(base_j) - c.grid.y0;
        for (int j = base_j; j + 1 < ny; ++j)
            fr.F(j + 1, i) =
                advance(s, fr.F(j, i), yb + (j - base_j) * hy, yb + (j + 1 - base_j) * hy, csub);
        for (int j = base_j; j - 1 >= 0; --j)
            fr.F(j - 1, i) =
                advance(s, fr.F(j, i), yb + (j - base_j) * hy, yb + (j - 1 - base_j) * hy, csub);
    };
    auto sweep_row = [&](int j, int from) {
        const Sampler s = row_sampler(c, lambda, j);
        for (int i = from; i + 1 < fc; ++i)
            fr.F(j, i + 1) = advance(s, fr.F(j, i), i * hx, (i + 1) * hx, 1);
        for (int i = from; i - 1 >= 0; --i)
            fr.F(j, i - 1) = advance(s, fr.F(j, i), i * hx, (i - 1) * hx, 1);
        for (int i = 0; i < fc; ++i) normalize_det(fr.F(j, i));
    };

    if (rows_first) {
        sweep_row(base_j, base_i);
        for (int i = 0; i < fc; ++i) {
            const Sampler s = column_sampler(c, lambda, data_col(i));
            const Real yb = c.grid.y(base_j) - c.grid.y0;
            for (int j = base_j; j + 1 < ny; ++j)
                fr.F(j + 1, i) = advance(s, fr.F(j, i), yb + (j - base_j) * hy,
                                         yb + (j + 1 - base_j) * hy, csub);
            for (int j = base_j; j - 1 >= 0; --j)
                fr.F(j - 1, i) = advance(s, fr.F(j, i), yb + (j - base_j) * hy,
                                         yb + (j - 1 - base_j) * hy, csub);
        }
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < fc; ++i) normalize_det(fr.F(j, i));
    } else {
        sweep_column(base_i);
        for (int j = 0; j < ny; ++j) sweep_row(j, base_i);
    }
    return fr;
}

}  // namespace

ExtendedFrame integrate_frame(const ConnectionForm& c, Complex lambda, int base_i, int base_j) {
    return integrate_impl(c, lambda, base_i, base_j, false);
}

ExtendedFrame integrate_frame_rows_first(const ConnectionForm& c, Complex lambda, int base_i,
                                         int base_j) {
    return integrate_impl(c, lambda, base_i, base_j, true);
}

SL2C loop_holonomy(const ConnectionForm& c, Complex lambda, int generator, int row) {
    if (!c.grid.periodic_x()) throw ConfigError("loop_holonomy: cylinder domain required");
    if (row < 0) row = c.grid.ny / 2;
    require_flat(c, lambda);
    if (generator == 0) return Mat2C::Identity();

    const Sampler s = row_sampler(c, lambda, row);
    const Real hx = c.grid.hx();
    Mat2C H = Mat2C::Identity();
    for (int i = 0; i < c.grid.nx; ++i) H = advance(s, H, i * hx, (i + 1) * hx, 1);
    normalize_det(H);

    Mat2C out = Mat2C::Identity();
    const Mat2C Hs = generator > 0 ? H : Mat2C(H.inverse());
    for (int k = 0; k < std::abs(generator); ++k) out = out * Hs;
    return out;
}

SL2C row_propagator_raw(const ConnectionForm& c, Complex lambda, int row, int steps) {
    const Sampler s = row_sampler(c, lambda, row);
    const Real hx = c.grid.hx();
    Mat2C H = Mat2C::Identity();
    for (int i = 0; i < steps; ++i) H = advance(s, H, i * hx, (i + 1) * hx, 1);
    return H;
}

Mat2C untwist_gauge(Complex mu) {
    const Complex r = std::sqrt(mu);
    Mat2C d = Mat2C::Zero();
    d(0, 0) = 1.0 / r;
    d(1, 1) = r;
    return d;
}

UntwistedFrame untwist_frame(const ExtendedFrame& f) {
    UntwistedFrame u;
    u.grid = f.grid;
    u.mu = f.lambda;
    u.base_i = f.base_i;
    u.base_j = f.base_j;
    u.F = Grid<SL2C>(f.F.rows(), f.F.cols());
    const Mat2C D = untwist_gauge(f.lambda);
    const Mat2C Dinv = D.inverse();
    for (int j = 0; j < f.F.rows(); ++j)
        for (int i = 0; i < f.F.cols(); ++i) u.F(j, i) = Dinv * f.F(j, i) * D;
    return u;
}

}  // namespace cgc
