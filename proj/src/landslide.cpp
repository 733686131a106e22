#include "cgc/landslide.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "cgc/errors.hpp"

namespace cgc {

namespace {

Mat2R gram_of(Complex P, Real E) {
    Mat2R g;
    g << E + 2 * P.real(), -2 * P.imag(), -2 * P.imag(), E - 2 * P.real();
    return g;
}

const Mat2R& rot90() {
    static const Mat2R j = (Mat2R() << 0, -1, 1, 0).finished();
    return j;
}

}  // namespace

MetricField form_gram(const FundForms& f, int which) {
    const int rows = f.EI.rows(), cols = f.EI.cols();
    MetricField g(rows, cols, Mat2R::Zero());
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            if (!f.valid(j, i)) continue;
            switch (which) {
                case 1: g(j, i) = gram_of(f.PI(j, i), f.EI(j, i)); break;
                case 2: g(j, i) = gram_of(f.PII(j, i), f.EII(j, i)); break;
                case 3: g(j, i) = gram_of(f.PIII(j, i), f.EIII(j, i)); break;
                default: throw NumericalError("form_gram: which must be 1, 2 or 3");
            }
        }
    return g;
}

std::pair<MetricField, MetricField> metrics_from_forms(const FundForms& f, Real s) {
    if (!(s > 0)) throw DegenerateForms("metrics_from_forms: s must be positive");
    const Real ch2 = std::cosh(s / 2) * std::cosh(s / 2);
    const Real sh2 = std::sinh(s / 2) * std::sinh(s / 2);
    MetricField h = form_gram(f, 1);
    MetricField hs = form_gram(f, 3);
    for (int j = 0; j < h.rows(); ++j)
        for (int i = 0; i < h.cols(); ++i) {
            if (!f.valid(j, i)) continue;
            h(j, i) /= ch2;
            hs(j, i) /= sh2;
            Eigen::SelfAdjointEigenSolver<Mat2R> e1(h(j, i)), e2(hs(j, i));
            if (!(e1.eigenvalues().minCoeff() > 1e-10) ||
                !(e2.eigenvalues().minCoeff() > 1e-10))
                throw DegenerateForms("metrics_from_forms: metric not positive definite");
        }
    return {std::move(h), std::move(hs)};
}

OperatorField shape_operator(const FundForms& f) {
    const int rows = f.EI.rows(), cols = f.EI.cols();
    OperatorField B(rows, cols, Mat2R::Zero());
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            if (!f.valid(j, i)) continue;
            B(j, i) = gram_of(f.PI(j, i), f.EI(j, i)).inverse() *
                      gram_of(f.PII(j, i), f.EII(j, i));
        }
    return B;
}

OperatorField labourie_operator(const OperatorField& B, Real s) {
    OperatorField b = B;
    const Real c = -1.0 / std::tanh(s / 2);
    for (auto& m : b.raw()) m *= c;
    return b;
}

OperatorField complex_structure(const OperatorField& B, Real s) {
    OperatorField J(B.rows(), B.cols(), Mat2R::Zero());
    const Real c = 1.0 / std::tanh(s / 2);
    for (int j = 0; j < B.rows(); ++j)
        for (int i = 0; i < B.cols(); ++i) J(j, i) = c * B(j, i) * rot90();
    return J;
}

OperatorField metric_complex_structure(const MetricField& h) {
    OperatorField J(h.rows(), h.cols(), Mat2R::Zero());
    for (int j = 0; j < h.rows(); ++j)
        for (int i = 0; i < h.cols(); ++i) {
            const Mat2R& m = h(j, i);
            const Real d = std::sqrt(m.determinant());
            if (!(d > 0)) continue;
            Mat2R jm;
            jm << -m(0, 1), -m(1, 1), m(0, 0), m(0, 1);
            J(j, i) = jm / d;
        }
    return J;
}

OperatorField beta_theta(const OperatorField& J, const OperatorField& b, Real theta) {
    OperatorField beta(J.rows(), J.cols(), Mat2R::Zero());
    const Real c = std::cos(theta / 2), s = std::sin(theta / 2);
    for (int j = 0; j < J.rows(); ++j)
        for (int i = 0; i < J.cols(); ++i)
            beta(j, i) = c * Mat2R::Identity() + s * J(j, i) * b(j, i);
    return beta;
}

LandslideResult landslide_act(const MetricField& h, const MetricField& hstar,
                              const OperatorField& b, const OperatorField& J, Real theta) {
    (void)hstar;  // both output metrics pull back from h
    const OperatorField bt = beta_theta(J, b, theta);
    const OperatorField btp = beta_theta(J, b, theta + kPi);
    const OperatorField btm = beta_theta(J, b, -theta);
    LandslideResult out;
    out.h = MetricField(h.rows(), h.cols(), Mat2R::Zero());
    out.hstar = MetricField(h.rows(), h.cols(), Mat2R::Zero());
    out.b = OperatorField(h.rows(), h.cols(), Mat2R::Zero());
    for (int j = 0; j < h.rows(); ++j)
        for (int i = 0; i < h.cols(); ++i) {
            out.h(j, i) = bt(j, i).transpose() * h(j, i) * bt(j, i);
            out.hstar(j, i) = btp(j, i).transpose() * h(j, i) * btp(j, i);
            out.b(j, i) = btm(j, i) * b(j, i) * bt(j, i);
        }
    return out;
}

Real codazzi_residual(const OperatorField& op, const MetricField& h, const DomainGrid& grid) {
    const int rows = op.rows(), cols = op.cols();
    const Real hx = grid.hx(), hy = grid.hy();

    // metric components as scalar fields for differentiation
    RealField E(rows, cols), F(rows, cols), G(rows, cols);
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            E(j, i) = h(j, i)(0, 0);
            F(j, i) = h(j, i)(0, 1);
            G(j, i) = h(j, i)(1, 1);
        }
    const bool per = false;  // operator grids carry the seam column explicitly
    const RealField Ex = dx_centered(E, hx, per), Ey = dy_centered(E, hy);
    const RealField Fx = dx_centered(F, hx, per), Fy = dy_centered(F, hy);
    const RealField Gx = dx_centered(G, hx, per), Gy = dy_centered(G, hy);

    Real sup = 0;
    for (int j = 1; j < rows - 1; ++j)
        for (int i = 1; i < cols - 1; ++i) {
            // Christoffels of h: Gamma^k_{ij} = 1/2 h^{kl}(d_i h_jl + d_j h_il - d_l h_ij)
            const Mat2R hinv = h(j, i).inverse();
            Real dh[2][2][2];  // dh[l][a][b] = d_l h_ab
            dh[0][0][0] = Ex(j, i);
            dh[0][0][1] = dh[0][1][0] = Fx(j, i);
            dh[0][1][1] = Gx(j, i);
            dh[1][0][0] = Ey(j, i);
            dh[1][0][1] = dh[1][1][0] = Fy(j, i);
            dh[1][1][1] = Gy(j, i);
            Real Gam[2][2][2];  // Gam[k][a][b]
            for (int k = 0; k < 2; ++k)
                for (int a = 0; a < 2; ++a)
                    for (int bq = 0; bq < 2; ++bq) {
                        Real v = 0;
                        for (int l = 0; l < 2; ++l)
                            v += hinv(k, l) * (dh[a][bq][l] + dh[bq][a][l] - dh[l][a][bq]);
                        Gam[k][a][bq] = 0.5 * v;
                    }

            const Eigen::Vector2d V = op(j, i).col(1);  // op e_y
            const Eigen::Vector2d W = op(j, i).col(0);  // op e_x
            const Eigen::Vector2d dxV =
                (op(j, i + 1).col(1) - op(j, i - 1).col(1)) / (2 * hx);
            const Eigen::Vector2d dyW =
                (op(j + 1, i).col(0) - op(j - 1, i).col(0)) / (2 * hy);
            Eigen::Vector2d r;
            for (int k = 0; k < 2; ++k) {
                const Real covx = dxV[k] + Gam[k][0][0] * V[0] + Gam[k][0][1] * V[1];
                const Real covy = dyW[k] + Gam[k][1][0] * W[0] + Gam[k][1][1] * W[1];
                r[k] = covx - covy;
            }
            sup = std::max(sup, r.norm());
        }
    return sup;
}

RealField metric_curvature(const MetricField& h, const DomainGrid& grid) {
    const int rows = h.rows(), cols = h.cols();
    const Real hx = grid.hx(), hy = grid.hy();
    RealField E(rows, cols), F(rows, cols), G(rows, cols);
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            E(j, i) = h(j, i)(0, 0);
            F(j, i) = h(j, i)(0, 1);
            G(j, i) = h(j, i)(1, 1);
        }
    RealField K = RealField::Zero(rows, cols);
    for (int j = 1; j < rows - 1; ++j)
        for (int i = 1; i < cols - 1; ++i) {
            auto dx = [&](const RealField& f) { return (f(j, i + 1) - f(j, i - 1)) / (2 * hx); };
            auto dy = [&](const RealField& f) { return (f(j + 1, i) - f(j - 1, i)) / (2 * hy); };
            auto dxx = [&](const RealField& f) {
                return (f(j, i + 1) - 2 * f(j, i) + f(j, i - 1)) / (hx * hx);
            };
            auto dyy = [&](const RealField& f) {
                return (f(j + 1, i) - 2 * f(j, i) + f(j - 1, i)) / (hy * hy);
            };
            auto dxy = [&](const RealField& f) {
                return (f(j + 1, i + 1) - f(j + 1, i - 1) - f(j - 1, i + 1) + f(j - 1, i - 1)) /
                       (4 * hx * hy);
            };
            const Real Ev = E(j, i), Fv = F(j, i), Gv = G(j, i);
            Eigen::Matrix3d M1, M2;
            M1 << -0.5 * dyy(E) + dxy(F) - 0.5 * dxx(G), 0.5 * dx(E), dx(F) - 0.5 * dy(E),
                dy(F) - 0.5 * dx(G), Ev, Fv,
                0.5 * dy(G), Fv, Gv;
            M2 << 0, 0.5 * dy(E), 0.5 * dx(G),
                0.5 * dy(E), Ev, Fv,
                0.5 * dx(G), Fv, Gv;
            const Real den = Ev * Gv - Fv * Fv;
            K(j, i) = (M1.determinant() - M2.determinant()) / (den * den);
        }
    return K;
}

AssociatedReport associated_check(const MetricData& m, Real s, Real theta) {
    // Base surface forms at the data-matched modulus, phase 1; the metric
    // pair and operators come from the source surface (curvature set by
    // m.s), while `s` is the grafting amount of the reconstruction.
    const FundForms base = analytic_forms(m, Complex(std::exp(-m.s / 2), 0));
    const auto [h, hstar] = metrics_from_forms(base, m.s);
    const OperatorField B = shape_operator(base);
    const OperatorField b = labourie_operator(B, m.s);
    const OperatorField J = complex_structure(B, m.s);

    const LandslideResult ls = landslide_act(h, hstar, b, J, theta);

    // Forms of the reconstructed surface: I = cosh^2(s/2) h_theta,
    // III = sinh^2(s/2) h*_theta, II = I(., B_theta .).
    const Real ch2 = std::cosh(s / 2) * std::cosh(s / 2);
    const Real sh2 = std::sinh(s / 2) * std::sinh(s / 2);
    const Real th = std::tanh(s / 2);

    // Target: associated family at phase sqrt(lambda), lambda = e^{i theta}.
    const Complex mu = std::exp(-s / 2) * std::exp(Complex(0, theta / 2));
    const FundForms target = analytic_forms(m, mu);
    const MetricField tI = form_gram(target, 1);
    const MetricField tII = form_gram(target, 2);
    const MetricField tIII = form_gram(target, 3);

    AssociatedReport rep;
    rep.theta = theta;
    for (int j = 0; j < ls.h.rows(); ++j)
        for (int i = 0; i < ls.h.cols(); ++i) {
            const Mat2R I_th = ch2 * ls.h(j, i);
            const Mat2R III_th = sh2 * ls.hstar(j, i);
            const Mat2R B_th = -th * ls.b(j, i);
            const Mat2R II_th = I_th * B_th;
            rep.max_err_I = std::max(rep.max_err_I, (I_th - tI(j, i)).cwiseAbs().maxCoeff());
            rep.max_err_II = std::max(rep.max_err_II, (II_th - tII(j, i)).cwiseAbs().maxCoeff());
            rep.max_err_III =
                std::max(rep.max_err_III, (III_th - tIII(j, i)).cwiseAbs().maxCoeff());
        }

    rep.codazzi_residual = codazzi_residual(ls.b, ls.h, m.grid);

    // theta-additivity of the flow at half-angles
    const LandslideResult half = landslide_act(h, hstar, b, J, theta / 2);
    const OperatorField Jh = metric_complex_structure(half.h);
    const LandslideResult twice = landslide_act(half.h, half.hstar, half.b, Jh, theta / 2);
    for (int j = 0; j < ls.h.rows(); ++j)
        for (int i = 0; i < ls.h.cols(); ++i)
            rep.flow_additivity_err = std::max(
                rep.flow_additivity_err, (twice.h(j, i) - ls.h(j, i)).cwiseAbs().maxCoeff());
    return rep;
}

}  // namespace cgc
