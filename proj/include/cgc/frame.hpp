#pragma once

// Extended frames F^lambda with alpha^lambda = F^{-1} dF, integrated from a
// basepoint by 4th-order Magnus steps; loop holonomies on cylinders; the
// twisted <-> untwisted gauge.

#include "cgc/connection.hpp"
#include "cgc/types.hpp"

namespace cgc {

struct ExtendedFrame {
    DomainGrid grid;
    Complex lambda;
    int base_i = 0, base_j = 0;
    /// ny x frame_cols(); on cylinders the last column is the
    /// deck-translated continuation across the seam, not a copy of column 0.
    Grid<SL2C> F;
};

struct UntwistedFrame {
    DomainGrid grid;
    Complex mu;  // twisted spectral value; untwisted parameter is mu^2
    int base_i = 0, base_j = 0;
    Grid<SL2C> F;
};

/// Closed-form exponential of a traceless 2x2 matrix.
Mat2C exp_traceless(const Mat2C& x);

/// Integrate dF = F alpha^lambda up the basepoint column, then along rows;
/// F(basepoint) = identity, determinant renormalized per row. Throws
/// FlatnessTooLarge when flatness_residual(c, lambda) >= 1e-6.
ExtendedFrame integrate_frame(const ConnectionForm& c, Complex lambda, int base_i = 0,
                              int base_j = -1);

/// Same sweep order but rows first; exposed for the path-independence check.
ExtendedFrame integrate_frame_rows_first(const ConnectionForm& c, Complex lambda, int base_i = 0,
                                         int base_j = -1);

/// Path-ordered solution of dF = F alpha around one x-period along the
/// basepoint row (cylinder only): the constant H with F(x + Lx) = H F(x).
SL2C loop_holonomy(const ConnectionForm& c, Complex lambda, int generator = 1, int row = -1);

/// Row propagation without per-step renormalization; exposed for the
/// determinant-drift check.
SL2C row_propagator_raw(const ConnectionForm& c, Complex lambda, int row, int steps);

/// F_hat = D^{1/mu} F D^mu with D^mu = diag(mu^{-1/2}, mu^{1/2}),
/// principal branch.
UntwistedFrame untwist_frame(const ExtendedFrame& f);

Mat2C untwist_gauge(Complex mu);  // D^mu

}  // namespace cgc
