#pragma once

// Discretized solutions (u, Q) of the structure equations
//   dbar d u + (K/2)(e^u - |Q|^2 e^{-u}) = 0,   dbar Q = 0
// for constant Gaussian curvature K = -1 + sigma^2, sigma = tanh(s/2).

#include <iosfwd>
#include <string>

#include "cgc/domain.hpp"
#include "cgc/types.hpp"

namespace cgc {

struct MetricData {
    DomainGrid grid;
    RealField u;
    ComplexField Q;
    Real s = 0;
    Real sigma = 0;  // tanh(s/2)
    Real K = 0;      // -1 + sigma^2
    bool nondegenerate = false;

    // Profile extras (cylinder solutions): machine-accurate per-row samples
    // of u and u' from the ODE integration, plus a refined column used by
    // the frame integrator. Empty for patch solutions.
    Eigen::ArrayXd profile_u;
    Eigen::ArrayXd profile_du;
    int fine_refine = 0;
    Eigen::ArrayXd fine_u;
    Eigen::ArrayXd fine_du;

    bool has_profile() const { return profile_u.size() == grid.ny; }
};

Real curvature_of_s(Real s);

/// Pointwise interior residual of the u structure equation. Patch grids use
/// one quarter of the 5-point Laplacian (the operator the Newton solver
/// targets); cylinders use the spectral-x / 6th-order-y Laplacian.
RealField gauss_residual(const MetricData& m);

/// Sup-norm of the discretized dbar Q over the interior band.
Real klotz_residual(const ComplexField& Q, const DomainGrid& grid);

/// Nondegeneracy margin e^{2u} - |Q|^2 > margin * e^{2u} at every node.
bool check_nondegenerate(const RealField& u, const ComplexField& Q, Real margin = 1e-6);

/// CSV dump (columns i, j, x, y, u, Re Q, Im Q).
void write_field_csv(const MetricData& m, std::ostream& os);
/// JSON header {kind, nx, ny, Lx, Ly, s, K}.
std::string metric_header_json(const MetricData& m);

}  // namespace cgc
