#include "cgc/domain.hpp"

#include <unsupported/Eigen/FFT>

namespace cgc {

DomainGrid DomainGrid::cylinder(int nx, int ny, Real Lx, Real Ly) {
    DomainGrid g;
    g.kind = Kind::Cylinder;
    g.nx = nx;
    g.ny = ny;
    g.Lx = Lx;
    g.Ly = Ly;
    g.x0 = 0;
    g.y0 = -Ly / 2;
    g.validate();
    return g;
}

DomainGrid DomainGrid::patch(int nx, int ny, Real Lx, Real Ly, Real cx, Real cy) {
    DomainGrid g;
    g.kind = Kind::Patch;
    g.nx = nx;
    g.ny = ny;
    g.Lx = Lx;
    g.Ly = Ly;
    g.x0 = cx - Lx / 2;
    g.y0 = cy - Ly / 2;
    g.validate();
    return g;
}

void DomainGrid::validate() const {
    if (nx < 8 || ny < 8) throw ConfigError("DomainGrid: nx, ny must be >= 8");
    if (!(Lx > 0) || !(Ly > 0)) throw ConfigError("DomainGrid: Lx, Ly must be positive");
}

namespace {

// spectral multiplier per mode for first/second derivative
void spectral_rows(const ComplexField& f, Real Lx, ComplexField& out, int order) {
    const int ny = static_cast<int>(f.rows());
    const int nx = static_cast<int>(f.cols());
    out.resize(ny, nx);
    Eigen::FFT<Real> fft;
    std::vector<Complex> row(nx), hat(nx);
    const Real twopi = 2.0 * kPi;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) row[i] = f(j, i);
        fft.fwd(hat, row);
        for (int k = 0; k < nx; ++k) {
            const int kk = (k <= nx / 2) ? k : k - nx;
            const Real kap = twopi * kk / Lx;
            if (order == 1) {
                // Nyquist mode has no well-defined first derivative sign
                const Real kap1 = (2 * k == nx) ? 0.0 : kap;
                hat[k] *= Complex(0, kap1);
            } else {
                hat[k] *= -kap * kap;
            }
        }
        fft.inv(row, hat);
        for (int i = 0; i < nx; ++i) out(j, i) = row[i];
    }
}

}  // namespace

ComplexField dx_spectral(const ComplexField& f, Real Lx) {
    ComplexField out;
    spectral_rows(f, Lx, out, 1);
    return out;
}

ComplexField dxx_spectral(const ComplexField& f, Real Lx) {
    ComplexField out;
    spectral_rows(f, Lx, out, 2);
    return out;
}

ComplexField dy_stencil6(const ComplexField& f, Real hy) {
    const int ny = static_cast<int>(f.rows());
    const int nx = static_cast<int>(f.cols());
    ComplexField out = ComplexField::Zero(ny, nx);
    const Real c1 = 3.0 / 4.0, c2 = -3.0 / 20.0, c3 = 1.0 / 60.0;
    for (int j = 3; j < ny - 3; ++j)
        for (int i = 0; i < nx; ++i)
            out(j, i) = (c1 * (f(j + 1, i) - f(j - 1, i)) + c2 * (f(j + 2, i) - f(j - 2, i)) +
                         c3 * (f(j + 3, i) - f(j - 3, i))) /
                        hy;
    return out;
}

ComplexField dyy_stencil6(const ComplexField& f, Real hy) {
    const int ny = static_cast<int>(f.rows());
    const int nx = static_cast<int>(f.cols());
    ComplexField out = ComplexField::Zero(ny, nx);
    const Real c0 = -49.0 / 18.0, c1 = 3.0 / 2.0, c2 = -3.0 / 20.0, c3 = 1.0 / 90.0;
    for (int j = 3; j < ny - 3; ++j)
        for (int i = 0; i < nx; ++i)
            out(j, i) = (c0 * f(j, i) + c1 * (f(j + 1, i) + f(j - 1, i)) +
                         c2 * (f(j + 2, i) + f(j - 2, i)) + c3 * (f(j + 3, i) + f(j - 3, i))) /
                        (hy * hy);
    return out;
}

namespace {

template <class Field>
Field dx_centered_impl(const Field& f, Real hx, bool periodic) {
    const int ny = static_cast<int>(f.rows());
    const int nx = static_cast<int>(f.cols());
    Field out(ny, nx);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (periodic) {
                const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
                out(j, i) = (f(j, ip) - f(j, im)) / (2 * hx);
            } else if (i == 0) {
                out(j, i) = (-3.0 * f(j, 0) + 4.0 * f(j, 1) - f(j, 2)) / (2 * hx);
            } else if (i == nx - 1) {
                out(j, i) = (3.0 * f(j, nx - 1) - 4.0 * f(j, nx - 2) + f(j, nx - 3)) / (2 * hx);
            } else {
                out(j, i) = (f(j, i + 1) - f(j, i - 1)) / (2 * hx);
            }
        }
    }
    return out;
}

template <class Field>
Field dy_centered_impl(const Field& f, Real hy) {
    const int ny = static_cast<int>(f.rows());
    const int nx = static_cast<int>(f.cols());
    Field out(ny, nx);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (j == 0) {
                out(j, i) = (-3.0 * f(0, i) + 4.0 * f(1, i) - f(2, i)) / (2 * hy);
            } else if (j == ny - 1) {
                out(j, i) = (3.0 * f(ny - 1, i) - 4.0 * f(ny - 2, i) + f(ny - 3, i)) / (2 * hy);
            } else {
                out(j, i) = (f(j + 1, i) - f(j - 1, i)) / (2 * hy);
            }
        }
    }
    return out;
}

}  // namespace

ComplexField dx_centered(const ComplexField& f, Real hx, bool periodic) {
    return dx_centered_impl(f, hx, periodic);
}
ComplexField dy_centered(const ComplexField& f, Real hy) { return dy_centered_impl(f, hy); }
RealField dx_centered(const RealField& f, Real hx, bool periodic) {
    return dx_centered_impl(f, hx, periodic);
}
RealField dy_centered(const RealField& f, Real hy) { return dy_centered_impl(f, hy); }

namespace {

ComplexField dx_highorder(const ComplexField& f, const DomainGrid& g) {
    if (g.periodic_x()) return dx_spectral(f, g.Lx);
    // 6th-order centered in x as well; zero near the edges (same margin)
    const int ny = static_cast<int>(f.rows());
    const int nx = static_cast<int>(f.cols());
    ComplexField out = ComplexField::Zero(ny, nx);
    const Real c1 = 3.0 / 4.0, c2 = -3.0 / 20.0, c3 = 1.0 / 60.0;
    const Real hx = g.hx();
    for (int j = 0; j < ny; ++j)
        for (int i = 3; i < nx - 3; ++i)
            out(j, i) = (c1 * (f(j, i + 1) - f(j, i - 1)) + c2 * (f(j, i + 2) - f(j, i - 2)) +
                         c3 * (f(j, i + 3) - f(j, i - 3))) /
                        hx;
    return out;
}

}  // namespace

ComplexField dbar_highorder(const ComplexField& f, const DomainGrid& g) {
    const ComplexField fx = dx_highorder(f, g);
    const ComplexField fy = dy_stencil6(f, g.hy());
    return 0.5 * (fx + Complex(0, 1) * fy);
}

ComplexField dz_highorder(const ComplexField& f, const DomainGrid& g) {
    const ComplexField fx = dx_highorder(f, g);
    const ComplexField fy = dy_stencil6(f, g.hy());
    return 0.5 * (fx - Complex(0, 1) * fy);
}

RealField laplacian5(const RealField& f, Real hx, Real hy, bool periodic_x) {
    const int ny = static_cast<int>(f.rows());
    const int nx = static_cast<int>(f.cols());
    RealField out = RealField::Zero(ny, nx);
    for (int j = 1; j < ny - 1; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (!periodic_x && (i == 0 || i == nx - 1)) continue;
            const int ip = periodic_x ? (i + 1) % nx : i + 1;
            const int im = periodic_x ? (i + nx - 1) % nx : i - 1;
            out(j, i) = (f(j, ip) - 2 * f(j, i) + f(j, im)) / (hx * hx) +
                        (f(j + 1, i) - 2 * f(j, i) + f(j - 1, i)) / (hy * hy);
        }
    }
    return out;
}

RealField laplacian_cylinder(const RealField& f, const DomainGrid& g) {
    const ComplexField fc = f.cast<Complex>();
    const ComplexField lx = dxx_spectral(fc, g.Lx);
    const ComplexField ly = dyy_stencil6(fc, g.hy());
    RealField out = RealField::Zero(f.rows(), f.cols());
    for (int j = highorder_margin(); j < static_cast<int>(f.rows()) - highorder_margin(); ++j)
        for (int i = 0; i < static_cast<int>(f.cols()); ++i)
            out(j, i) = (lx(j, i) + ly(j, i)).real();
    return out;
}

}  // namespace cgc
