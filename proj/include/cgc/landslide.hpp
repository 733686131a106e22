#pragma once

// Hyperbolic metric pairs and Labourie operators extracted from CGC data,
// the complex structure J, the bundle maps beta_theta, and the landslide
// action on metric pairs.

#include "cgc/metric.hpp"
#include "cgc/surface.hpp"
#include "cgc/types.hpp"

namespace cgc {

using MetricField = Grid<Mat2R>;    // symmetric positive 2x2 per node
using OperatorField = Grid<Mat2R>;  // tangent bundle endomorphism per node

/// Real Gram matrices of one of the three forms ('1', '2', '3').
MetricField form_gram(const FundForms& forms, int which);

/// h = I / cosh^2(s/2), h* = III / sinh^2(s/2). Throws DegenerateForms if
/// either fails positive definiteness (eigenvalues > 1e-10).
std::pair<MetricField, MetricField> metrics_from_forms(const FundForms& forms, Real s);

/// Shape operator I^{-1} II per node.
OperatorField shape_operator(const FundForms& forms);

/// b = -coth(s/2) B. det b = 1, h-self-adjoint, Codazzi on CGC data. On
/// umbilic (Q = 0) data this is -E: the sign convention pairs a
/// positive-trace shape operator with a negative-definite b.
OperatorField labourie_operator(const OperatorField& B, Real s);

/// J = coth(s/2) B J0 with J0 the 90-degree rotation of the z-coordinate;
/// the unique complex structure compatible with I.
OperatorField complex_structure(const OperatorField& B, Real s);

/// Complex structure of an arbitrary positive metric (orientation +90).
OperatorField metric_complex_structure(const MetricField& h);

/// beta_theta = cos(theta/2) E + sin(theta/2) J b.
OperatorField beta_theta(const OperatorField& J, const OperatorField& b, Real theta);

struct LandslideResult {
    MetricField h;
    MetricField hstar;
    OperatorField b;
};

/// (h, h*) -> (h(beta_theta ., beta_theta .), h(beta_{theta+pi} ., ...)),
/// with the Labourie operator transported as beta_{-theta} b beta_theta.
LandslideResult landslide_act(const MetricField& h, const MetricField& hstar,
                              const OperatorField& b, const OperatorField& J, Real theta);

/// Sup-norm of d^nabla(op) with Christoffel symbols of h from centered
/// differences; interior nodes only.
Real codazzi_residual(const OperatorField& op, const MetricField& h, const DomainGrid& grid);

/// Gaussian curvature of a discrete metric (Brioschi formula, centered
/// differences); interior nodes, zero elsewhere.
RealField metric_curvature(const MetricField& h, const DomainGrid& grid);

struct AssociatedReport {
    Real theta = 0;
    Real max_err_I = 0;
    Real max_err_II = 0;
    Real max_err_III = 0;
    Real codazzi_residual = 0;
    Real flow_additivity_err = 0;
};

/// Landslide by theta followed by the curvature -1/cosh^2(s/2) surface
/// reconstruction, compared per node against the associated-family forms at
/// phase sqrt(lambda), lambda = e^{i theta} (principal root; the convention
/// is pinned by the theta = pi/2 fixture).
AssociatedReport associated_check(const MetricData& m, Real s, Real theta);

}  // namespace cgc
