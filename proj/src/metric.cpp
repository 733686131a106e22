#include "cgc/metric.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "cgc/report.hpp"

namespace cgc {

Real curvature_of_s(Real s) {
    const Real sig = std::tanh(s / 2);
    return -1.0 + sig * sig;
}

RealField gauss_residual(const MetricData& m) {
    const auto& g = m.grid;
    RealField lap;
    if (g.periodic_x()) {
        lap = laplacian_cylinder(m.u, g);
    } else {
        lap = laplacian5(m.u, g.hx(), g.hy(), false);
    }
    const int margin_y = g.periodic_x() ? highorder_margin() : 1;
    const int margin_x = g.periodic_x() ? 0 : 1;
    RealField res = RealField::Zero(g.ny, g.nx);
    for (int j = margin_y; j < g.ny - margin_y; ++j)
        for (int i = margin_x; i < g.nx - margin_x; ++i) {
            const Real eu = std::exp(m.u(j, i));
            const Real q2 = std::norm(m.Q(j, i));
            res(j, i) = 0.25 * lap(j, i) + 0.5 * m.K * (eu - q2 / eu);
        }
    return res;
}

Real klotz_residual(const ComplexField& Q, const DomainGrid& grid) {
    const ComplexField r = dbar_highorder(Q, grid);
    const int my = highorder_margin();
    const int mx = grid.periodic_x() ? 0 : highorder_margin();
    Real sup = 0;
    for (int j = my; j < grid.ny - my; ++j)
        for (int i = mx; i < grid.nx - mx; ++i) sup = std::max(sup, std::abs(r(j, i)));
    return sup;
}

bool check_nondegenerate(const RealField& u, const ComplexField& Q, Real margin) {
    for (int j = 0; j < u.rows(); ++j)
        for (int i = 0; i < u.cols(); ++i) {
            const Real e2u = std::exp(2 * u(j, i));
            if (!(e2u - std::norm(Q(j, i)) > margin * e2u)) return false;
        }
    return true;
}

void write_field_csv(const MetricData& m, std::ostream& os) {
    os << "i,j,x,y,u,ReQ,ImQ\n";
    for (int j = 0; j < m.grid.ny; ++j)
        for (int i = 0; i < m.grid.nx; ++i)
            os << i << ',' << j << ',' << format_sig(m.grid.x(i)) << ',' << format_sig(m.grid.y(j))
               << ',' << format_sig(m.u(j, i)) << ',' << format_sig(m.Q(j, i).real()) << ','
               << format_sig(m.Q(j, i).imag()) << '\n';
}

std::string metric_header_json(const MetricData& m) {
    std::ostringstream os;
    os << "{\"kind\":\"" << (m.grid.periodic_x() ? "cylinder" : "patch") << "\",\"nx\":" << m.grid.nx
       << ",\"ny\":" << m.grid.ny << ",\"Lx\":" << format_sig(m.grid.Lx)
       << ",\"Ly\":" << format_sig(m.grid.Ly) << ",\"s\":" << format_sig(m.s)
       << ",\"K\":" << format_sig(m.K) << "}";
    return os.str();
}

}  // namespace cgc
