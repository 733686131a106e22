#pragma once

// CGC immersions by spectral deformation, fundamental forms (numeric and
// analytic), curvatures, Gauss maps, and congruence fitting.

#include <iosfwd>

#include "cgc/frame.hpp"
#include "cgc/hermitian.hpp"
#include "cgc/metric.hpp"

namespace cgc {

struct SurfaceMesh {
    DomainGrid grid;
    Complex lambda0;
    Grid<Vec4R> f;  // points, det = 1 sheet
    Grid<Vec4R> n;  // unit normals, det = -1
};

/// Coefficients (P, E, Pbar) per form, meaning P dz^2 + E dz dzbar + ...;
/// E real. The `valid` mask marks nodes where all coefficients exist.
struct FundForms {
    DomainGrid grid;
    Complex lambda0;
    Real sigma = 0;
    ComplexField PI, PII, PIII;
    RealField EI, EII, EIII;
    RealField H;        // mean curvature, normalized as tr(B)/4
    ComplexField Qrot;  // rotated Klotz coefficient
    Eigen::ArrayXX<bool> valid;
};

/// f = F F^*, n = F e1 F^* at the frame's spectral value; requires
/// 0 < |lambda| < 1 (throws SpectralOnCircle otherwise).
SurfaceMesh spectral_immersion(const ExtendedFrame& F);

/// Centered-difference forms I = <df,df>, II = <df,dn>, III = <dn,dn>;
/// valid on the interior ring. H here is tr(I^{-1} II)/4: the
/// normalization for which J dz = (2iH/tanh(s/2)) dz - ... squares to -1.
FundForms numeric_forms(const SurfaceMesh& mesh);

/// Forms of the immersion at lambda0 from (u, Q, s): the family formulas at
/// the unit-modulus phase of lambda0. At |lambda0| != e^{-s/2} the immersion
/// realizes the shifted data (u + log c, cQ) with
/// c = cosh^2(s_q/2)/cosh^2(s/2), e^{-s_q/2} = |lambda0|, which is applied
/// here so numeric and analytic forms agree at every modulus.
FundForms analytic_forms(const MetricData& m, Complex lambda0);

std::pair<Grid<UnitTangent>, Grid<GeodesicLine>> gauss_maps(const ExtendedFrame& F);

struct CongruenceResult {
    SL2C motion;
    Real rms;
};

/// Best-fit g in SL2C with g f1 g^* ~ f2 (Gauss-Newton seeded by aligning
/// adapted frames at a reference node); rms is the hyperbolic RMS distance
/// after the motion.
CongruenceResult congruence_check(const SurfaceMesh& a, const SurfaceMesh& b);

/// -1 + det(I^{-1} II) per node (zero where invalid).
RealField numeric_gauss_curvature(const FundForms& forms);
RealField numeric_mean_curvature(const FundForms& forms);

/// ASCII OBJ with nx*ny vertices (ball model) and normals.
void write_obj(const SurfaceMesh& mesh, std::ostream& os);

}  // namespace cgc
