#include <doctest.h>

#include <cmath>

#include "cgc/landslide.hpp"
#include "cgc/solve.hpp"
#include "support/oracles.hpp"

using namespace cgc;

namespace {

MetricData fixture(int nx = 64, int ny = 128) {
    return solve_profile_ode(DomainGrid::cylinder(nx, ny, 0.125, 1.0), 2.0, Complex(1, 0), 0.5);
}

struct Derived {
    FundForms forms;
    MetricField h, hstar;
    OperatorField B, b, J;
};

Derived derive(const MetricData& m) {
    Derived d{analytic_forms(m, Complex(std::exp(-m.s / 2), 0)), {}, {}, {}, {}, {}};
    auto [h, hs] = metrics_from_forms(d.forms, m.s);
    d.h = std::move(h);
    d.hstar = std::move(hs);
    d.B = shape_operator(d.forms);
    d.b = labourie_operator(d.B, m.s);
    d.J = complex_structure(d.B, m.s);
    return d;
}

const Vec2C vz = 0.5 * Vec2C(1.0, Complex(0, -1));   // d/dz in the real frame
const Vec2C vzb = 0.5 * Vec2C(1.0, Complex(0, 1));   // d/dzbar

}  // namespace

TEST_CASE("metrics from forms: scaling and hyperbolicity") {
    const MetricData m = fixture();
    const Derived d = derive(m);
    const Real ch2 = std::cosh(1.0) * std::cosh(1.0);

    const MetricField gI = form_gram(d.forms, 1);
    CHECK((d.h(10, 3) - gI(10, 3) / ch2).cwiseAbs().maxCoeff() < 1e-13);

    const RealField Kh = metric_curvature(d.h, m.grid);
    const RealField Khs = metric_curvature(d.hstar, m.grid);
    Real worst_h = 0, worst_hs = 0;
    for (int j = 1; j < m.grid.ny - 1; ++j)
        for (int i = 1; i < d.h.cols() - 1; ++i) {
            worst_h = std::max(worst_h, std::abs(Kh(j, i) + 1.0));
            worst_hs = std::max(worst_hs, std::abs(Khs(j, i) + 1.0));
        }
    CHECK(worst_h < 1e-3);
    CHECK(worst_hs < 1e-3);
}

TEST_CASE("labourie operator conditions") {
    const MetricData m = fixture();
    const Derived d = derive(m);
    for (int j = 0; j < d.b.rows(); j += 11)
        for (int i = 0; i < d.b.cols(); i += 7) {
            CHECK(std::abs(d.b(j, i).determinant() - 1.0) < 1e-6);
            // h-self-adjoint: h b symmetric
            const Mat2R hb = d.h(j, i) * d.b(j, i);
            CHECK(std::abs(hb(0, 1) - hb(1, 0)) < 1e-6);
            // pulls h back to h*
            const Mat2R pull = d.b(j, i).transpose() * d.h(j, i) * d.b(j, i);
            CHECK((pull - d.hstar(j, i)).cwiseAbs().maxCoeff() < 1e-5);
        }
}

TEST_CASE("umbilic data: the labourie operator is scalar") {
    // Q = 0 via the liouville solution on a patch
    const Real s = 2.0;
    const Real K = curvature_of_s(s);
    const auto g = DomainGrid::patch(33, 33, 0.8, 0.8);
    RealField bnd(g.ny, g.nx);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Real r2 = g.x(i) * g.x(i) + g.y(j) * g.y(j);
            bnd(j, i) = std::log(4.0 / (-K * (1 - r2) * (1 - r2)));
        }
    const MetricData m = solve_patch({Complex(0, 0)}, s, g, bnd);
    const FundForms forms = analytic_forms(m, Complex(std::exp(-1.0), 0));
    const OperatorField b = labourie_operator(shape_operator(forms), s);
    // det b = 1 and scalar forces +/-E; the -coth(s/2) convention lands on -E
    for (int j = 2; j < g.ny - 2; j += 6)
        for (int i = 2; i < g.nx - 2; i += 6)
            CHECK((b(j, i) + Mat2R::Identity()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("complex structure J") {
    const MetricData m = fixture();
    const Derived d = derive(m);
    const Real th = std::tanh(1.0);
    for (int j = 0; j < d.J.rows(); j += 13)
        for (int i = 0; i < d.J.cols(); i += 9) {
            CHECK((d.J(j, i) * d.J(j, i) + Mat2R::Identity()).cwiseAbs().maxCoeff() < 1e-8);
            // compatibility with I
            const Mat2R gI = form_gram(d.forms, 1)(j, i);
            CHECK((d.J(j, i).transpose() * gI * d.J(j, i) - gI).cwiseAbs().maxCoeff() < 1e-6);
            // explicit coefficients from H and Q
            const int id = i % m.grid.nx;
            const Real u = m.u(j, id);
            const Complex Q = m.Q(j, id);
            const Real W2 = std::exp(u) - std::norm(Q) * std::exp(-u);
            const Complex a = 2.0 * Complex(0, 1) * d.forms.H(j, i) / th;
            const Complex bb = -2.0 * Complex(0, 1) * Q / W2;
            const Vec2C lhs = d.J(j, i).cast<Complex>() * vz;
            const Vec2C rhs = a * vz + bb * vzb;
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-6);
            // agreement with the metric-intrinsic complex structure
            const OperatorField Jm = metric_complex_structure(d.h);
            CHECK((Jm(j, i) - d.J(j, i)).cwiseAbs().maxCoeff() < 1e-8);
        }
}

TEST_CASE("beta_theta: identity, determinant, eigen-relation") {
    const MetricData m = fixture();
    const Derived d = derive(m);

    const OperatorField b0 = beta_theta(d.J, d.b, 0.0);
    CHECK((b0(7, 5) - Mat2R::Identity()).cwiseAbs().maxCoeff() < 1e-14);

    for (Real theta : {kPi / 2, kPi / 4, 1.2345}) {
        const OperatorField bt = beta_theta(d.J, d.b, theta);
        const Complex expect = std::exp(Complex(0, -theta / 2));
        for (int j = 0; j < bt.rows(); j += 17)
            for (int i = 0; i < bt.cols(); i += 11) {
                CHECK(std::abs(bt(j, i).determinant() - 1.0) < 1e-8);
                const Vec2C act = bt(j, i).cast<Complex>() * vz;
                CHECK((act - expect * vz).cwiseAbs().maxCoeff() < 1e-6);
            }
    }
}

TEST_CASE("landslide action: identity, flow property, hyperbolicity") {
    const MetricData m = fixture();
    const Derived d = derive(m);

    const LandslideResult l0 = landslide_act(d.h, d.hstar, d.b, d.J, 0.0);
    CHECK((l0.h(9, 4) - d.h(9, 4)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((l0.hstar(9, 4) - d.hstar(9, 4)).cwiseAbs().maxCoeff() < 1e-10);

    const LandslideResult full = landslide_act(d.h, d.hstar, d.b, d.J, 2 * kPi);
    CHECK((full.h(9, 4) - d.h(9, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((full.b(9, 4) - d.b(9, 4)).cwiseAbs().maxCoeff() < 1e-12);

    const Real theta = 0.9;
    const LandslideResult lt = landslide_act(d.h, d.hstar, d.b, d.J, theta);
    const RealField Kh = metric_curvature(lt.h, m.grid);
    for (int j = 2; j < m.grid.ny - 2; j += 9)
        for (int i = 2; i < lt.h.cols() - 2; i += 9)
            CHECK(std::abs(Kh(j, i) + 1.0) < 1e-3);
}

TEST_CASE("codazzi residual: parallel identity, convergence, sensitivity") {
    const MetricData m = fixture();
    const Derived d = derive(m);

    OperatorField E(d.h.rows(), d.h.cols(), Mat2R::Identity());
    CHECK(codazzi_residual(E, d.h, m.grid) == 0.0);

    const MetricData m2 = fixture(128, 256);
    const Derived d2 = derive(m2);
    const Real r1 = codazzi_residual(d.b, d.h, m.grid);
    const Real r2 = codazzi_residual(d2.b, d2.h, m2.grid);
    const Real ratio = r1 / r2;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);

    OperatorField bad = d.b;
    for (int j = 0; j < bad.rows(); ++j)
        for (int i = 0; i < bad.cols(); ++i) {
            const Real a = 0.01 * std::sin(3.0 * m.grid.y(j));
            Mat2R rot;
            rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
            bad(j, i) = rot * bad(j, i);
        }
    CHECK(codazzi_residual(bad, d.h, m.grid) > 1e-3);
}

TEST_CASE("associated family check over the theta sweep") {
    const MetricData m = fixture();
    for (int k = 0; k < 16; ++k) {
        const AssociatedReport rep = associated_check(m, m.s, k * kPi / 8);
        CHECK(rep.max_err_I < 1e-6);
        CHECK(rep.max_err_II < 1e-6);
        CHECK(rep.max_err_III < 1e-6);
        CHECK(rep.flow_additivity_err < 1e-8);
    }
    const AssociatedReport zero = associated_check(m, m.s, 0.0);
    CHECK(zero.max_err_I < 1e-10);
    CHECK(zero.max_err_II < 1e-10);
    CHECK(zero.max_err_III < 1e-10);
}
