#include "cgc/projective.hpp"

#include <cmath>

#include "cgc/errors.hpp"

namespace cgc {

namespace {

void check_disk(Complex mu) {
    const Real r = std::abs(mu);
    if (!(r > 0) || r >= 1.0)
        throw SpectralOnCircle("developing map needs 0 < |mu| < 1");
}

SL2C canonical_sign(const SL2C& h) {
    const Complex t = h.trace();
    bool flip = false;
    if (std::abs(t) > 1e-12) {
        flip = (t.real() < 0) || (t.real() == 0 && t.imag() < 0);
    } else {
        const Complex lead = h(0, 0);
        flip = lead.real() < 0 || (lead.real() == 0 && lead.imag() < 0);
    }
    return flip ? SL2C(-h) : h;
}

}  // namespace

DevelopingMap developing_map(const ExtendedFrame& F) {
    check_disk(F.lambda);
    DevelopingMap d;
    d.grid = F.grid;
    d.mu = F.lambda;
    d.dev = Grid<CP1Point>(F.F.rows(), F.F.cols());
    for (int j = 0; j < F.F.rows(); ++j)
        for (int i = 0; i < F.F.cols(); ++i)
            d.dev(j, i) = CP1Point::from_homogeneous(F.F(j, i).col(0));
    return d;
}

HolonomyRecord frame_holonomy_at_sqrt_q(const ConnectionForm& c, Complex q) {
    const Real r = std::abs(q);
    if (!(r > 0) || r > 1.0 + 1e-12)
        throw ConfigError("frame_holonomy_at_sqrt_q: q must lie in the closed punctured disk");
    const Complex mu = std::sqrt(q);
    HolonomyRecord rec;
    rec.mu = mu;
    rec.q = q;
    rec.H = canonical_sign(loop_holonomy(c, mu, 1));
    return rec;
}

HolonomyRecord dev_holonomy(const DevelopingMap& dev) {
    if (!dev.grid.periodic_x())
        throw ConfigError("dev_holonomy: cylinder domain required");
    const int rows = dev.dev.rows();
    const int seam = dev.dev.cols() - 1;

    std::vector<std::pair<CP1Point, CP1Point>> pairs;
    const int want = std::min(rows, 24);
    const int stride = std::max(1, rows / want);
    for (int j = 0; j < rows; j += stride)
        pairs.emplace_back(dev.dev(j, 0), dev.dev(j, seam));
    if (pairs.size() < 3) throw DegenerateConfiguration("dev_holonomy: too few sample rows");

    const MoebiusMap m = moebius_fit(pairs);
    HolonomyRecord rec;
    rec.mu = dev.mu;
    rec.q = dev.mu * dev.mu;
    rec.H = canonical_sign(m.rep);
    return rec;
}

std::array<CP1Point, 2> fixed_points(const SL2C& h) {
    const Complex t = h.trace();
    const Complex disc = std::sqrt(t * t - 4.0);
    const Complex l1 = (t + disc) / 2.0, l2 = (t - disc) / 2.0;
    auto eigvec = [&](Complex lam) {
        // (h - lam) v = 0; pick the larger row for stability
        const Complex a = h(0, 0) - lam, b = h(0, 1);
        const Complex c = h(1, 0), d = h(1, 1) - lam;
        Vec2C v;
        if (std::abs(a) + std::abs(b) >= std::abs(c) + std::abs(d))
            v = (std::abs(b) > std::abs(a)) ? Vec2C(1.0, -a / b) : Vec2C(-b / a, 1.0);
        else
            v = (std::abs(d) > std::abs(c)) ? Vec2C(1.0, -c / d) : Vec2C(-d / c, 1.0);
        return CP1Point::from_homogeneous(v);
    };
    if (std::abs(disc) < 1e-12) {
        const CP1Point p = eigvec(l1);
        return {p, p};
    }
    return {eigvec(l1), eigvec(l2)};
}

Real compare_holonomy(const HolonomyRecord& a, const HolonomyRecord& b) {
    if (a.generator != b.generator)
        throw ConfigError("compare_holonomy: records for different generators");
    const Complex ta = a.H.trace(), tb = b.H.trace();
    const Real dt = std::min(std::abs(ta - tb), std::abs(ta + tb));

    auto multiplier = [](const SL2C& h) {
        const Complex t = h.trace();
        const Complex disc = std::sqrt(t * t - 4.0);
        const Complex l1 = (t + disc) / 2.0, l2 = (t - disc) / 2.0;
        return CP1Point::from_homogeneous(Vec2C(l1, l2));  // [k : 1] with k = l1/l2
    };
    const CP1Point ka = multiplier(a.H);
    const CP1Point kb = multiplier(b.H);
    const CP1Point kb_inv = CP1Point::from_homogeneous(Vec2C(kb.w[1], kb.w[0]));
    const Real dm = std::min(chordal_distance(ka, kb), chordal_distance(ka, kb_inv));
    return dt + dm;
}

CRReport holomorphy_scan(const ConnectionForm& c, Complex center, int n, Real delta) {
    if (n < 5) throw ConfigError("holomorphy_scan: grid must be at least 5x5");
    const ConnectionForm uc = c.twisted ? untwist_connection(c) : c;

    CRReport rep;
    rep.center = center;
    rep.delta = delta;
    rep.n = n;
    rep.t.resize(n, n);
    const int half = n / 2;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Complex q = center + Complex((a - half) * delta, (b - half) * delta);
            rep.t(a, b) = loop_holonomy(uc, q, 1).trace();
        }
    for (int a = 1; a < n - 1; ++a)
        for (int b = 1; b < n - 1; ++b) {
            const Complex dre = (rep.t(a + 1, b) - rep.t(a - 1, b)) / (2 * delta);
            const Complex dim = (rep.t(a, b + 1) - rep.t(a, b - 1)) / (2 * delta);
            const Complex cr = 0.5 * (dre + Complex(0, 1) * dim);
            const Complex cr_conj = 0.5 * (std::conj(dre) + Complex(0, 1) * std::conj(dim));
            rep.max_cr = std::max(rep.max_cr, std::abs(cr));
            rep.control_max = std::max(rep.control_max, std::abs(cr_conj));
        }
    return rep;
}

LandslideStructure complex_landslide(const MetricData& m, Complex q, bool with_cr) {
    const Real r = std::abs(q);
    if (!(r > 0) || r > 1.0 + 1e-12)
        throw ConfigError("complex_landslide: q must lie in the closed punctured disk");
    if (!m.nondegenerate) throw DegenerateData("complex_landslide: degenerate source data");

    LandslideStructure out;
    out.q = q;
    out.s = -std::log(std::min(r, 1.0));
    out.theta = -std::arg(q);
    out.mu = std::sqrt(q);
    out.boundary = std::abs(r - 1.0) <= 1e-12;

    const ConnectionForm c = build_connection(m);
    if (out.boundary) {
        // s -> 0 limit: the unit-circle holonomy is the boundary object;
        // no CGC surface or developing map is produced.
        HolonomyRecord rec;
        rec.mu = out.mu;
        rec.q = q;
        rec.H = canonical_sign(loop_holonomy(c, out.mu, 1));
        out.frame_record = rec;
        const Mat2C e1 = pauli_e1();
        out.su11_residual =
            (rec.H.adjoint() * e1 * rec.H - e1).cwiseAbs().maxCoeff();
        return out;
    }

    out.landslide_check = associated_check(m, out.s, out.theta);
    out.frame_record = frame_holonomy_at_sqrt_q(c, q);

    const ExtendedFrame F = integrate_frame(c, out.mu);
    out.dev = developing_map(F);
    out.dev_record = dev_holonomy(*out.dev);
    out.compare_residual = compare_holonomy(out.frame_record, *out.dev_record);

    if (with_cr) out.cr = holomorphy_scan(c, q);
    return out;
}

}  // namespace cgc
