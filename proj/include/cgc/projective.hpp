#pragma once

// Developing maps, projective holonomy records, the complex landslide
// pipeline P_q, and the holomorphy scan of the untwisted holonomy trace.

#include <optional>
#include <vector>

#include "cgc/frame.hpp"
#include "cgc/landslide.hpp"
#include "cgc/mobius.hpp"
#include "cgc/surface.hpp"

namespace cgc {

struct DevelopingMap {
    DomainGrid grid;
    Complex mu;
    Grid<CP1Point> dev;
};

struct HolonomyRecord {
    int generator = 1;
    SL2C H = SL2C::Identity();  // sign-canonical representative of the +/- class
    Complex mu = 1;
    Complex q = 1;

    MoebiusMap moebius() const { return MoebiusMap{H}; }
};

/// Node-wise projectivized first column [F11 : F21] of the frame.
DevelopingMap developing_map(const ExtendedFrame& F);

/// Loop holonomy at the principal square root of q, packaged with its
/// +/- class data.
HolonomyRecord frame_holonomy_at_sqrt_q(const ConnectionForm& c, Complex q);

/// Moebius fit over seam pairs (dev(x, y), dev(x + Lx, y)) lifted to SL2C.
HolonomyRecord dev_holonomy(const DevelopingMap& dev);

/// Conjugacy distance: min over sign flips of |tr a -+ tr b| plus the
/// chordal distance between the multiplier sets {k, 1/k} on the sphere.
/// Vanishes exactly on conjugate records and is blind to the +/- lift.
Real compare_holonomy(const HolonomyRecord& a, const HolonomyRecord& b);

struct CRReport {
    Complex center;
    Real delta = 0;
    int n = 0;
    Eigen::ArrayXXcd t;    // holonomy trace over the q grid
    Real max_cr = 0;       // sup |dbar t| over interior nodes
    Real control_max = 0;  // sup |dbar conj(t)| = sup |d t / d q|
};

/// Centered Cauchy-Riemann scan of t(q) = tr(untwisted holonomy at q) on an
/// n x n grid of spacing delta. Accepts a twisted connection and applies
/// the untwisted gauge internally so t is single-valued in q.
CRReport holomorphy_scan(const ConnectionForm& c, Complex center, int n = 5, Real delta = 1e-3);

struct LandslideStructure {
    Complex q;
    Real s = 0;       // -log|q|
    Real theta = 0;   // -arg q
    Complex mu;       // principal sqrt(q)
    bool boundary = false;

    std::optional<DevelopingMap> dev;
    HolonomyRecord frame_record;
    std::optional<HolonomyRecord> dev_record;
    Real compare_residual = 0;
    Real su11_residual = 0;  // boundary case: distance of H from SU(1,1)
    AssociatedReport landslide_check;
    std::optional<CRReport> cr;
};

/// End-to-end pipeline: landslide by theta = -arg q on the source metric
/// pair, CGC reconstruction at curvature -1/cosh^2(s/2), developing map and
/// both holonomy records at mu = sqrt(q). On |q| = 1 only the holonomy
/// record is produced.
LandslideStructure complex_landslide(const MetricData& m, Complex q, bool with_cr = false);

/// Fixed points of the Moebius action (eigen-lines); a parabolic map
/// returns its single fixed point twice.
std::array<CP1Point, 2> fixed_points(const SL2C& h);

}  // namespace cgc
