#pragma once

// Discretized conformal domains (x-periodic cylinder or rectangle patch)
// and the difference operators used by residual diagnostics.

#include "cgc/errors.hpp"
#include "cgc/types.hpp"

namespace cgc {

struct DomainGrid {
    enum class Kind { Patch, Cylinder };

    Kind kind = Kind::Cylinder;
    int nx = 0, ny = 0;
    Real Lx = 0, Ly = 0;
    Real x0 = 0, y0 = 0;

    static DomainGrid cylinder(int nx, int ny, Real Lx, Real Ly);
    static DomainGrid patch(int nx, int ny, Real Lx, Real Ly, Real cx = 0, Real cy = 0);

    bool periodic_x() const { return kind == Kind::Cylinder; }
    Real hx() const { return periodic_x() ? Lx / nx : Lx / (nx - 1); }
    Real hy() const { return Ly / (ny - 1); }
    Real x(int i) const { return x0 + i * hx(); }
    Real y(int j) const { return y0 + j * hy(); }
    /// Frame/mesh column count: cylinders carry one extra column for the
    /// deck-translated seam copy.
    int frame_cols() const { return periodic_x() ? nx + 1 : nx; }

    void validate() const;
};

/// Spectral d/dx along each row of an x-periodic field (nx columns).
ComplexField dx_spectral(const ComplexField& f, Real Lx);
/// Spectral d2/dx2 along each row.
ComplexField dxx_spectral(const ComplexField& f, Real Lx);

/// 6th-order centered d/dy; valid on rows 3..ny-4, zero elsewhere.
ComplexField dy_stencil6(const ComplexField& f, Real hy);
/// 6th-order centered d2/dy2; same interior band.
ComplexField dyy_stencil6(const ComplexField& f, Real hy);

/// 2nd-order centered first derivatives, one-sided 2nd-order at edges.
ComplexField dx_centered(const ComplexField& f, Real hx, bool periodic);
ComplexField dy_centered(const ComplexField& f, Real hy);
RealField dx_centered(const RealField& f, Real hx, bool periodic);
RealField dy_centered(const RealField& f, Real hy);

/// dbar = (dx + i dy)/2 with operators matched to the grid kind at 6th
/// order in y (spectral in x on cylinders); interior band only.
ComplexField dbar_highorder(const ComplexField& f, const DomainGrid& g);
ComplexField dz_highorder(const ComplexField& f, const DomainGrid& g);

/// Rows on which the high-order y stencil is valid.
inline int highorder_margin() { return 3; }

/// 5-point Laplacian with Dirichlet ghost handling left to the caller:
/// valid on interior nodes, zero on the boundary ring.
RealField laplacian5(const RealField& f, Real hx, Real hy, bool periodic_x);

/// FFT-x + 6th-order-y Laplacian for cylinder diagnostics; valid band
/// rows 3..ny-4.
RealField laplacian_cylinder(const RealField& f, const DomainGrid& g);

}  // namespace cgc
