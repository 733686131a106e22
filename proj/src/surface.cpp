#include "cgc/surface.hpp"

#include <cmath>
#include <ostream>

#include "cgc/errors.hpp"

namespace cgc {

namespace {

void check_spectral(Complex lambda) {
    const Real r = std::abs(lambda);
    if (!(r > 0) || r >= 1.0)
        throw SpectralOnCircle("spectral value must satisfy 0 < |lambda| < 1");
}

Vec4C complexify(const Vec4R& a, const Vec4R& b) {  // a - i b over 2
    Vec4C v;
    for (int k = 0; k < 4; ++k) v[k] = 0.5 * Complex(a[k], -b[k]);
    return v;
}

struct GramPair {
    Mat2R I, II;
};

Mat2R gram(Complex P, Real E) {
    Mat2R g;
    g << E + 2 * P.real(), -2 * P.imag(), -2 * P.imag(), E - 2 * P.real();
    return g;
}

}  // namespace

SurfaceMesh spectral_immersion(const ExtendedFrame& F) {
    check_spectral(F.lambda);
    SurfaceMesh m;
    m.grid = F.grid;
    m.lambda0 = F.lambda;
    const int rows = F.F.rows(), cols = F.F.cols();
    m.f = Grid<Vec4R>(rows, cols);
    m.n = Grid<Vec4R>(rows, cols);
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            const Mat2C& g = F.F(j, i);
            Mat2C fm = g * g.adjoint();
            Mat2C nm = g * pauli_e1() * g.adjoint();
            fm = Mat2C(0.5 * (fm + fm.adjoint()));
            nm = Mat2C(0.5 * (nm + nm.adjoint()));
            m.f(j, i) = HermitianVec::from_matrix(fm).xi;
            m.n(j, i) = HermitianVec::from_matrix(nm).xi;
        }
    return m;
}

FundForms numeric_forms(const SurfaceMesh& mesh) {
    const int rows = mesh.f.rows(), cols = mesh.f.cols();
    if (rows < 3 || cols < 3) throw NumericalError("numeric_forms: mesh too small");
    FundForms out;
    out.grid = mesh.grid;
    out.lambda0 = mesh.lambda0;
    const Real rho = std::abs(mesh.lambda0);
    out.sigma = (1 - rho * rho) / (1 + rho * rho);
    out.PI = ComplexField::Zero(rows, cols);
    out.PII = ComplexField::Zero(rows, cols);
    out.PIII = ComplexField::Zero(rows, cols);
    out.EI = RealField::Zero(rows, cols);
    out.EII = RealField::Zero(rows, cols);
    out.EIII = RealField::Zero(rows, cols);
    out.H = RealField::Zero(rows, cols);
    out.Qrot = ComplexField::Zero(rows, cols);
    out.valid = Eigen::ArrayXX<bool>::Constant(rows, cols, false);

    const Real hx = mesh.grid.hx(), hy = mesh.grid.hy();
    for (int j = 1; j < rows - 1; ++j)
        for (int i = 1; i < cols - 1; ++i) {
            const Vec4R fx = (mesh.f(j, i + 1) - mesh.f(j, i - 1)) / (2 * hx);
            const Vec4R fy = (mesh.f(j + 1, i) - mesh.f(j - 1, i)) / (2 * hy);
            const Vec4R nx = (mesh.n(j, i + 1) - mesh.n(j, i - 1)) / (2 * hx);
            const Vec4R ny = (mesh.n(j + 1, i) - mesh.n(j - 1, i)) / (2 * hy);
            const Vec4C fz = complexify(fx, fy);
            const Vec4C nz = complexify(nx, ny);
            const Vec4C fzb = fz.conjugate();
            const Vec4C nzb = nz.conjugate();

            out.PI(j, i) = minkowski_inner(fz, fz);
            out.EI(j, i) = 2 * minkowski_inner(fz, fzb).real();
            out.PII(j, i) = minkowski_inner(fz, nz);
            out.EII(j, i) = (minkowski_inner(fz, nzb) + minkowski_inner(fzb, nz)).real();
            out.PIII(j, i) = minkowski_inner(nz, nz);
            out.EIII(j, i) = 2 * minkowski_inner(nz, nzb).real();
            out.Qrot(j, i) = out.PI(j, i);

            const Mat2R gI = gram(out.PI(j, i), out.EI(j, i));
            const Mat2R gII = gram(out.PII(j, i), out.EII(j, i));
            out.H(j, i) = 0.25 * (gI.inverse() * gII).trace();
            out.valid(j, i) = true;
        }
    return out;
}

FundForms analytic_forms(const MetricData& m, Complex lambda0) {
    check_spectral(lambda0);
    if (!m.nondegenerate) throw DegenerateData("analytic_forms: degenerate metric data");

    const Real rho = std::abs(lambda0);
    const Complex phase = lambda0 / rho;
    const Complex ph2inv = 1.0 / (phase * phase);
    // sigma of the immersion at modulus rho: K = -1 + sigma^2 with
    // K = -(2 rho / (1 + rho^2))^2
    const Real sig = (1 - rho * rho) / (1 + rho * rho);
    const Real c = (-m.K / 4) * (rho + 1 / rho) * (rho + 1 / rho);

    const int rows = m.grid.ny, cols = m.grid.frame_cols();
    FundForms out;
    out.grid = m.grid;
    out.lambda0 = lambda0;
    out.sigma = sig;
    out.PI.resize(rows, cols);
    out.PII = ComplexField::Zero(rows, cols);
    out.PIII.resize(rows, cols);
    out.EI.resize(rows, cols);
    out.EII.resize(rows, cols);
    out.EIII.resize(rows, cols);
    out.H.resize(rows, cols);
    out.Qrot.resize(rows, cols);
    out.valid = Eigen::ArrayXX<bool>::Constant(rows, cols, true);

    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            const int id = i % m.grid.nx;
            const Real u = m.u(j, id);
            const Complex Q = m.Q(j, id);
            const Real eu = std::exp(u), q2 = std::norm(Q);
            out.PI(j, i) = ph2inv * c * Q;
            out.EI(j, i) = c * (eu + q2 / eu);
            out.EII(j, i) = sig * c * (eu - q2 / eu);
            out.PIII(j, i) = -sig * sig * out.PI(j, i);
            out.EIII(j, i) = sig * sig * out.EI(j, i);
            out.H(j, i) = 0.5 * sig * (eu * eu + q2) / (eu * eu - q2);
            out.Qrot(j, i) = ph2inv * c * Q;
        }
    return out;
}

std::pair<Grid<UnitTangent>, Grid<GeodesicLine>> gauss_maps(const ExtendedFrame& F) {
    check_spectral(F.lambda);
    const int rows = F.F.rows(), cols = F.F.cols();
    Grid<UnitTangent> le(rows, cols);
    Grid<GeodesicLine> la(rows, cols);
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            le(j, i) = unit_tangent_of_frame(F.F(j, i));
            la(j, i).endpoint_plus = CP1Point::from_homogeneous(F.F(j, i).col(0));
            la(j, i).endpoint_minus = CP1Point::from_homogeneous(F.F(j, i).col(1));
        }
    return {std::move(le), std::move(la)};
}

RealField numeric_gauss_curvature(const FundForms& f) {
    RealField K = RealField::Zero(f.EI.rows(), f.EI.cols());
    for (int j = 0; j < K.rows(); ++j)
        for (int i = 0; i < K.cols(); ++i) {
            if (!f.valid(j, i)) continue;
            const Mat2R gI = gram(f.PI(j, i), f.EI(j, i));
            const Mat2R gII = gram(f.PII(j, i), f.EII(j, i));
            K(j, i) = -1.0 + gII.determinant() / gI.determinant();
        }
    return K;
}

RealField numeric_mean_curvature(const FundForms& f) {
    RealField H = RealField::Zero(f.EI.rows(), f.EI.cols());
    for (int j = 0; j < H.rows(); ++j)
        for (int i = 0; i < H.cols(); ++i) {
            if (!f.valid(j, i)) continue;
            const Mat2R gI = gram(f.PI(j, i), f.EI(j, i));
            const Mat2R gII = gram(f.PII(j, i), f.EII(j, i));
            H(j, i) = 0.25 * (gI.inverse() * gII).trace();
        }
    return H;
}

namespace {

// SL2C element aligning the standard frame (e0, e1, e3-direction) with the
// point/normal/tangent frame of the mesh at a reference node.
SL2C adapted_frame(const SurfaceMesh& m, int j, int i) {
    H3Point p;
    p.v.xi = m.f(j, i);
    const SL2C h = h3_sqrt(p);
    const Mat2C hinv = h.inverse();

    Mat2C w = hinv * HermitianVec(m.n(j, i)).matrix() * hinv.adjoint();
    w = Mat2C(0.5 * (w + w.adjoint()));
    Eigen::SelfAdjointEigenSolver<Mat2C> es(w);
    Mat2C k1;
    k1.col(0) = es.eigenvectors().col(1);  // +1 eigenvector first
    k1.col(1) = es.eigenvectors().col(0);
    k1.col(1) /= k1.determinant();

    const Vec4R t4 = m.f(j, i + 1) - m.f(j, i);
    const Mat2C g1 = h * k1;
    const Mat2C g1inv = g1.inverse();
    Mat2C tau = g1inv * HermitianVec(t4).matrix() * g1inv.adjoint();
    tau = Mat2C(0.5 * (tau + tau.adjoint()));
    const HermitianVec tv = HermitianVec::from_matrix(tau);
    const Real phi = std::atan2(tv.xi[2], tv.xi[3]);
    Mat2C k2 = Mat2C::Zero();
    k2(0, 0) = std::exp(Complex(0, phi / 2));
    k2(1, 1) = std::exp(Complex(0, -phi / 2));

    Mat2C out = g1 * k2;
    normalize_det(out);
    return out;
}

const std::array<Mat2C, 6>& sl2_basis6() {
    static const std::array<Mat2C, 6> basis = [] {
        std::array<Mat2C, 6> b;
        Mat2C h, e, f;
        h << 1, 0, 0, -1;
        e << 0, 1, 0, 0;
        f << 0, 0, 1, 0;
        b = {h, e, f, Complex(0, 1) * h, Complex(0, 1) * e, Complex(0, 1) * f};
        return b;
    }();
    return basis;
}

}  // namespace

CongruenceResult congruence_check(const SurfaceMesh& a, const SurfaceMesh& b) {
    if (a.f.rows() != b.f.rows() || a.f.cols() != b.f.cols())
        throw NumericalError("congruence_check: grid shapes differ");
    const int rows = a.f.rows(), cols = a.f.cols();

    SL2C g = adapted_frame(b, rows / 2, cols / 2) *
             adapted_frame(a, rows / 2, cols / 2).inverse();
    normalize_det(g);

    const int stride = std::max(1, std::min(rows, cols) / 24);
    std::vector<std::pair<int, int>> sample;
    for (int j = 0; j < rows; j += stride)
        for (int i = 0; i < cols; i += stride) sample.emplace_back(j, i);
    const int ns = static_cast<int>(sample.size());

    auto residuals = [&](const SL2C& gg, Eigen::VectorXd& r) {
        for (int k = 0; k < ns; ++k) {
            const auto [j, i] = sample[k];
            Mat2C img = gg * HermitianVec(a.f(j, i)).matrix() * gg.adjoint();
            const Vec4R d = HermitianVec::from_matrix(img).xi - b.f(j, i);
            for (int t = 0; t < 4; ++t) r[4 * k + t] = d[t];
        }
    };

    Eigen::VectorXd r(4 * ns), rp(4 * ns);
    Eigen::MatrixXd jac(4 * ns, 6);
    const Real eps = 1e-6;
    for (int iter = 0; iter < 25; ++iter) {
        residuals(g, r);
        for (int d = 0; d < 6; ++d) {
            const SL2C gp = exp_traceless(Mat2C(eps * sl2_basis6()[d])) * g;
            residuals(gp, rp);
            jac.col(d) = (rp - r) / eps;
        }
        Eigen::VectorXd step =
            (jac.transpose() * jac + 1e-12 * Eigen::MatrixXd::Identity(6, 6))
                .ldlt()
                .solve(-jac.transpose() * r);
        Mat2C x = Mat2C::Zero();
        for (int d = 0; d < 6; ++d) x += step[d] * sl2_basis6()[d];
        g = exp_traceless(x) * g;
        normalize_det(g);
        if (step.norm() < 1e-13) break;
    }

    Real ss = 0;
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            Mat2C img = g * HermitianVec(a.f(j, i)).matrix() * g.adjoint();
            img = Mat2C(0.5 * (img + img.adjoint()));
            H3Point pa = H3Point::from_matrix(img);
            H3Point pb;
            pb.v.xi = b.f(j, i);
            const Real d = h3_distance(pa, pb);
            ss += d * d;
        }
    return {g, std::sqrt(ss / (static_cast<Real>(rows) * cols))};
}

void write_obj(const SurfaceMesh& mesh, std::ostream& os) {
    const int rows = mesh.f.rows();
    const int nx = mesh.grid.nx;  // seam column dropped on cylinders
    os << "# cgc surface export, " << nx * rows << " vertices\n";
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < nx; ++i) {
            H3Point p;
            p.v.xi = mesh.f(j, i);
            const Eigen::Vector3d b = to_poincare_ball(p);
            os << "v " << b[0] << ' ' << b[1] << ' ' << b[2] << '\n';
        }
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < nx; ++i) {
            const Vec4R& n = mesh.n(j, i);
            os << "vn " << n[1] << ' ' << n[2] << ' ' << n[3] << '\n';
        }
    auto vid = [&](int j, int i) { return j * nx + i + 1; };
    for (int j = 0; j + 1 < rows; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            os << "f " << vid(j, i) << "//" << vid(j, i) << ' ' << vid(j, i + 1) << "//"
               << vid(j, i + 1) << ' ' << vid(j + 1, i + 1) << "//" << vid(j + 1, i + 1) << '\n';
            os << "f " << vid(j, i) << "//" << vid(j, i) << ' ' << vid(j + 1, i + 1) << "//"
               << vid(j + 1, i + 1) << ' ' << vid(j + 1, i) << "//" << vid(j + 1, i) << '\n';
        }
}

}  // namespace cgc
