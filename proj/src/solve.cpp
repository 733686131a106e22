#include "cgc/solve.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>

#include "cgc/errors.hpp"

namespace cgc {

namespace {

struct OdeState {
    Real u, du;
};

// Dormand-Prince 5(4) step for u'' = -2K (e^u - |Q0|^2 e^{-u}).
class ProfileOde {
public:
    ProfileOde(Real K, Real q2) : K_(K), q2_(q2) {}

    OdeState rhs(const OdeState& s) const {
        return {s.du, -2 * K_ * (std::exp(s.u) - q2_ * std::exp(-s.u))};
    }

    // Integrate from y to y+h (h may be negative); adaptive substeps.
    OdeState advance(OdeState s, Real h) const {
        const Real tol = 1e-13;
        Real remaining = h;
        Real dt = h;
        int guard = 0;
        while (std::abs(remaining) > 0) {
            if (++guard > 100000) throw NumericalError("profile integration stalled");
            if (std::abs(dt) > std::abs(remaining)) dt = remaining;
            auto [snew, err] = dp54(s, dt);
            const Real scale =
                tol * (1.0 + std::max(std::abs(s.u), std::abs(s.du)));
            if (err <= scale || std::abs(dt) < 1e-14) {
                s = snew;
                remaining -= dt;
                if (std::abs(s.u) > 40)
                    throw NumericalError("profile blow-up inside the requested interval");
            }
            const Real fac = 0.9 * std::pow(scale / std::max(err, 1e-300), 0.2);
            dt *= std::clamp(fac, 0.2, 5.0);
        }
        return s;
    }

private:
    std::pair<OdeState, Real> dp54(const OdeState& s, Real h) const {
        auto add = [](const OdeState& a, Real c, const OdeState& b) {
            return OdeState{a.u + c * b.u, a.du + c * b.du};
        };
        const OdeState k1 = rhs(s);
        const OdeState k2 = rhs(add(s, h / 5, k1));
        OdeState t = add(add(s, 3 * h / 40, k1), 9 * h / 40, k2);
        const OdeState k3 = rhs(t);
        t = add(add(add(s, 44 * h / 45, k1), -56 * h / 15, k2), 32 * h / 9, k3);
        const OdeState k4 = rhs(t);
        t = add(add(add(add(s, 19372.0 * h / 6561, k1), -25360.0 * h / 2187, k2),
                    64448.0 * h / 6561, k3),
                -212.0 * h / 729, k4);
        const OdeState k5 = rhs(t);
        t = add(add(add(add(add(s, 9017.0 * h / 3168, k1), -355.0 * h / 33, k2),
                        46732.0 * h / 5247, k3),
                    49.0 * h / 176, k4),
                -5103.0 * h / 18656, k5);
        const OdeState k6 = rhs(t);
        OdeState y5 = add(add(add(add(add(s, 35.0 * h / 384, k1), 500.0 * h / 1113, k3),
                                  125.0 * h / 192, k4),
                              -2187.0 * h / 6784, k5),
                          11.0 * h / 84, k6);
        const OdeState k7 = rhs(y5);
        // embedded 4th-order solution for the error estimate
        OdeState y4 = add(add(add(add(add(add(s, 5179.0 * h / 57600, k1), 7571.0 * h / 16695, k3),
                                      393.0 * h / 640, k4),
                                  -92097.0 * h / 339200, k5),
                              187.0 * h / 2100, k6),
                          h / 40, k7);
        const Real err = std::max(std::abs(y5.u - y4.u), std::abs(y5.du - y4.du));
        return {y5, err};
    }

    Real K_, q2_;
};

}  // namespace

ProfileTrace integrate_profile(Real s, Complex Q0, Real u0, const Eigen::ArrayXd& nodes) {
    const Real K = curvature_of_s(s);
    ProfileOde ode(K, std::norm(Q0));
    const int n = static_cast<int>(nodes.size());
    ProfileTrace tr;
    tr.y = nodes;
    tr.u.resize(n);
    tr.du.resize(n);

    // split at y = 0 and integrate outward in both directions
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return nodes[a] < nodes[b]; });

    OdeState st{u0, 0.0};
    Real ycur = 0.0;
    for (int idx : order) {
        if (nodes[idx] < 0) continue;
        st = ode.advance(st, nodes[idx] - ycur);
        ycur = nodes[idx];
        tr.u[idx] = st.u;
        tr.du[idx] = st.du;
    }
    st = {u0, 0.0};
    ycur = 0.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (nodes[*it] >= 0) continue;
        st = ode.advance(st, nodes[*it] - ycur);
        ycur = nodes[*it];
        tr.u[*it] = st.u;
        tr.du[*it] = st.du;
    }
    return tr;
}

MetricData solve_profile_ode(const DomainGrid& grid, Real s, Complex Q0, Real u0) {
    if (!grid.periodic_x()) throw ConfigError("solve_profile_ode: cylinder grid required");
    if (!(s > 0)) throw ConfigError("solve_profile_ode: s must be positive");
    if (!(u0 - std::log(std::abs(Q0)) > 1e-6))
        throw DegenerateProfile("u0 must exceed log|Q0| by more than 1e-6");

    MetricData m;
    m.grid = grid;
    m.s = s;
    m.sigma = std::tanh(s / 2);
    m.K = curvature_of_s(s);

    Eigen::ArrayXd nodes(grid.ny);
    for (int j = 0; j < grid.ny; ++j) nodes[j] = grid.y(j);
    ProfileTrace tr = integrate_profile(s, Q0, u0, nodes);

    // nondegeneracy band (margin per the second-fundamental-form degeneration)
    const Real q2 = std::norm(Q0);
    std::vector<bool> ok(grid.ny);
    int best_len = 0, best_start = 0, cur_len = 0, cur_start = 0;
    for (int j = 0; j < grid.ny; ++j) {
        const Real e2u = std::exp(2 * tr.u[j]);
        ok[j] = e2u - q2 > 1e-6 * e2u;
        if (ok[j]) {
            if (cur_len == 0) cur_start = j;
            if (++cur_len > best_len) {
                best_len = cur_len;
                best_start = cur_start;
            }
        } else {
            cur_len = 0;
        }
    }
    if (best_len < 4) throw DegenerateProfile("nondegeneracy band shorter than 4 grid rows");
    if (best_len < grid.ny) {
        DomainGrid g2 = grid;
        g2.ny = best_len;
        g2.y0 = grid.y(best_start);
        g2.Ly = (best_len - 1) * grid.hy();
        m.grid = g2;
        Eigen::ArrayXd sub(best_len);
        for (int j = 0; j < best_len; ++j) sub[j] = g2.y(j);
        tr = integrate_profile(s, Q0, u0, sub);
    }

    const int ny = m.grid.ny;
    m.profile_u = tr.u;
    m.profile_du = tr.du;
    m.u.resize(ny, m.grid.nx);
    m.Q.resize(ny, m.grid.nx);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < m.grid.nx; ++i) {
            m.u(j, i) = tr.u[j];
            m.Q(j, i) = Q0;
        }
    m.nondegenerate = true;

    // refined column for high-order frame integration
    m.fine_refine = 8;
    const int nf = (ny - 1) * m.fine_refine + 1;
    Eigen::ArrayXd fine_nodes(nf);
    for (int k = 0; k < nf; ++k)
        fine_nodes[k] = m.grid.y0 + k * m.grid.hy() / m.fine_refine;
    ProfileTrace ft = integrate_profile(s, Q0, u0, fine_nodes);
    m.fine_u = ft.u;
    m.fine_du = ft.du;
    return m;
}

MetricData solve_profile_ode(Real s, Complex Q0, Real u0, Real Ly, int ny) {
    return solve_profile_ode(DomainGrid::cylinder(ny, ny, Ly / 8, Ly), s, Q0, u0);
}

ComplexField sample_poly(const std::vector<Complex>& coeffs, const DomainGrid& grid) {
    ComplexField Q(grid.ny, grid.nx);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const Complex z(grid.x(i), grid.y(j));
            Complex acc = 0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
            Q(j, i) = acc;
        }
    return Q;
}

namespace {

// interior residual of the 5-point discretization
RealField patch_residual(const RealField& u, const ComplexField& Q, Real K, Real hx, Real hy) {
    const RealField lap = laplacian5(u, hx, hy, false);
    RealField res = RealField::Zero(u.rows(), u.cols());
    for (int j = 1; j < u.rows() - 1; ++j)
        for (int i = 1; i < u.cols() - 1; ++i) {
            const Real eu = std::exp(u(j, i));
            res(j, i) = 0.25 * lap(j, i) + 0.5 * K * (eu - std::norm(Q(j, i)) / eu);
        }
    return res;
}

}  // namespace

MetricData solve_patch(const std::vector<Complex>& Qpoly, Real s, const DomainGrid& grid,
                       const RealField& boundary) {
    if (grid.periodic_x()) throw ConfigError("solve_patch: patch grid required");
    const Real K = curvature_of_s(s);
    const int nx = grid.nx, ny = grid.ny;
    const Real hx = grid.hx(), hy = grid.hy();
    const ComplexField Q = sample_poly(Qpoly, grid);

    const int ni = (nx - 2) * (ny - 2);
    auto idx = [&](int j, int i) { return (j - 1) * (nx - 2) + (i - 1); };

    // assemble the (negated) 5-point Laplacian once; diag updated per Newton step
    using Sp = Eigen::SparseMatrix<Real>;
    std::vector<Eigen::Triplet<Real>> trip;
    trip.reserve(5 * ni);
    const Real cx = 0.25 / (hx * hx), cy = 0.25 / (hy * hy);
    for (int j = 1; j < ny - 1; ++j)
        for (int i = 1; i < nx - 1; ++i) {
            const int r = idx(j, i);
            trip.emplace_back(r, r, 2 * cx + 2 * cy);
            if (i > 1) trip.emplace_back(r, idx(j, i - 1), -cx);
            if (i < nx - 2) trip.emplace_back(r, idx(j, i + 1), -cx);
            if (j > 1) trip.emplace_back(r, idx(j - 1, i), -cy);
            if (j < ny - 2) trip.emplace_back(r, idx(j + 1, i), -cy);
        }
    Sp lap_neg(ni, ni);
    lap_neg.setFromTriplets(trip.begin(), trip.end());

    RealField u = RealField::Zero(ny, nx);
    for (int i = 0; i < nx; ++i) {
        u(0, i) = boundary(0, i);
        u(ny - 1, i) = boundary(ny - 1, i);
    }
    for (int j = 0; j < ny; ++j) {
        u(j, 0) = boundary(j, 0);
        u(j, nx - 1) = boundary(j, nx - 1);
    }

    // boundary contribution to -1/4 Lap u restricted to the interior
    Eigen::VectorXd bc = Eigen::VectorXd::Zero(ni);
    for (int j = 1; j < ny - 1; ++j)
        for (int i = 1; i < nx - 1; ++i) {
            Real v = 0;
            if (i == 1) v += cx * u(j, 0);
            if (i == nx - 2) v += cx * u(j, nx - 1);
            if (j == 1) v += cy * u(0, i);
            if (j == ny - 2) v += cy * u(ny - 1, i);
            bc[idx(j, i)] = v;
        }

    Eigen::SimplicialLDLT<Sp> chol;
    chol.compute(lap_neg);
    if (chol.info() != Eigen::Success) throw NumericalError("solve_patch: factorization failed");

    // harmonic extension as the initial guess
    Eigen::VectorXd ui = chol.solve(bc);
    for (int j = 1; j < ny - 1; ++j)
        for (int i = 1; i < nx - 1; ++i) u(j, i) = ui[idx(j, i)];

    RealField res = patch_residual(u, Q, K, hx, hy);
    Real rn = res.abs().maxCoeff();
    for (int iter = 0; iter < 50 && rn >= 1e-10; ++iter) {
        // Newton system: (1/4 Lap + (K/2)(e^u + |Q|^2 e^{-u})) delta = -res.
        // The nonlinear diagonal is negative for K < 0, so the negated
        // operator stays positive definite.
        Sp jac = lap_neg;
        Eigen::VectorXd rhs(ni);
        for (int j = 1; j < ny - 1; ++j)
            for (int i = 1; i < nx - 1; ++i) {
                const int r = idx(j, i);
                const Real eu = std::exp(u(j, i));
                jac.coeffRef(r, r) += -0.5 * K * (eu + std::norm(Q(j, i)) / eu);
                rhs[r] = res(j, i);
            }
        chol.compute(jac);
        if (chol.info() != Eigen::Success)
            throw NumericalError("solve_patch: Newton factorization failed");
        Eigen::VectorXd delta = chol.solve(rhs);

        Real t = 1.0;
        RealField ut = u;
        for (int ls = 0; ls < 12; ++ls) {
            for (int j = 1; j < ny - 1; ++j)
                for (int i = 1; i < nx - 1; ++i) ut(j, i) = u(j, i) + t * delta[idx(j, i)];
            const RealField rt = patch_residual(ut, Q, K, hx, hy);
            const Real rtn = rt.abs().maxCoeff();
            if (rtn < rn) {
                u = ut;
                res = rt;
                rn = rtn;
                break;
            }
            t *= 0.5;
            if (ls == 11) throw NoConvergence("solve_patch: line search failed");
        }
    }
    if (rn >= 1e-10) throw NoConvergence("solve_patch: Newton did not reach tolerance");

    MetricData m;
    m.grid = grid;
    m.s = s;
    m.sigma = std::tanh(s / 2);
    m.K = K;
    m.u = u;
    m.Q = Q;
    m.nondegenerate = check_nondegenerate(u, Q);
    return m;
}

}  // namespace cgc
