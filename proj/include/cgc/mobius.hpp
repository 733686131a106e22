#pragma once

#include <utility>
#include <vector>

#include "cgc/hermitian.hpp"
#include "cgc/types.hpp"

namespace cgc {

/// Projective transformation of CP^1 carried by an SL2C representative
/// (determined up to global sign).
struct MoebiusMap {
    SL2C rep = SL2C::Identity();

    static MoebiusMap from_matrix(const Mat2C& m);
    MoebiusMap inverse() const;
};

CP1Point moebius_apply(const MoebiusMap& m, const CP1Point& p);

/// Best unit-determinant map sending sources to targets: exact 3-point
/// interpolation seeding a Gauss-Newton refinement of the summed squared
/// chordal residuals. Throws DegenerateConfiguration when no sufficiently
/// separated source triple exists.
MoebiusMap moebius_fit(const std::vector<std::pair<CP1Point, CP1Point>>& pairs);

/// Residual of a candidate map on a pair list (RMS chordal distance).
Real moebius_fit_residual(const MoebiusMap& m,
                          const std::vector<std::pair<CP1Point, CP1Point>>& pairs);

}  // namespace cgc
