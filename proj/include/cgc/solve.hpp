#pragma once

#include <vector>

#include "cgc/metric.hpp"

namespace cgc {

/// y-only profile u(y) with u(0) = u0, u'(0) = 0, integrated by an adaptive
/// embedded Runge-Kutta scheme and replicated over the periodic direction.
/// Requires u0 > log|Q0| with margin 1e-6 (the constant solution at
/// equality is the degenerate equilibrium). Also fills an 8x-refined column
/// used by the frame integrator.
MetricData solve_profile_ode(const DomainGrid& grid, Real s, Complex Q0, Real u0);

/// Convenience overload matching the (s, Q0, u0, Ly, ny) call shape; the
/// periodic direction defaults to nx = ny, Lx = Ly/8.
MetricData solve_profile_ode(Real s, Complex Q0, Real u0, Real Ly, int ny);

/// Dirichlet problem for u on a rectangle patch with polynomial Q, solved
/// by damped Newton on the 5-point discretization from the harmonic
/// extension of the boundary values. Converged when the interior residual
/// sup-norm is < 1e-10; NoConvergence after 50 iterations. A solution with
/// e^{2u} <= |Q|^2 somewhere is returned with the nondegenerate flag off.
MetricData solve_patch(const std::vector<Complex>& Qpoly, Real s, const DomainGrid& grid,
                       const RealField& boundary);

/// Sample a polynomial sum c_k z^k on the grid.
ComplexField sample_poly(const std::vector<Complex>& coeffs, const DomainGrid& grid);

/// Adaptive profile integration trace: per-node (u, u') plus a refined
/// subsampling; exposed for the conservation oracle in tests.
struct ProfileTrace {
    Eigen::ArrayXd y;
    Eigen::ArrayXd u;
    Eigen::ArrayXd du;
};
ProfileTrace integrate_profile(Real s, Complex Q0, Real u0, const Eigen::ArrayXd& nodes);

}  // namespace cgc
