#include <doctest.h>

#include "cgc/config.hpp"
#include "cgc/errors.hpp"
#include "cgc/report.hpp"

using namespace cgc;

namespace {

const char* kFixture = R"(
# cylinder profile fixture
domain.kind = cylinder
domain.nx = 128
domain.ny = 128
domain.Lx = 0.125
domain.Ly = 1.0
data.s = 2.0
data.Q = 1.0 0.0
data.u0 = 0.5
spectral.lambda = 0.3678794411714423 0.0 ; 0.0 0.3678794411714423
spectral.q = 0.1353352832366127 0.0
spectral.q_grid = 0.0 0.1353352832366127 5 0.001
tolerance.compare = 1e-6
suites = forms holonomy
jobs = 2
)";

}  // namespace

TEST_CASE("config: fixture parses with typed values") {
    const RunConfig c = parse_config_text(kFixture);
    CHECK(c.domain_kind == "cylinder");
    CHECK(c.nx == 128);
    CHECK(c.Ly == doctest::Approx(1.0));
    CHECK(c.resolved_s() == doctest::Approx(2.0));
    CHECK(c.Q.has_value());
    CHECK(c.lambdas.size() == 2);
    CHECK(c.q_grid.has_value());
    CHECK(c.q_grid->n == 5);
    CHECK(c.suites.size() == 2);
    CHECK(c.jobs == 2);
    CHECK(c.tol("compare", 1.0) == doctest::Approx(1e-6));
    CHECK(c.tol("compare", 10.0) == doctest::Approx(1e-5));
    CHECK(c.tol("flatness", 1.0) == doctest::Approx(1e-8));  // default
}

TEST_CASE("config: unknown keys and malformed values are rejected") {
    CHECK_THROWS_AS(static_cast<void>(parse_config_text("domain.kind = cylinder\nbogus = 1\n")),
                    ConfigError);
    CHECK_THROWS_AS(
        static_cast<void>(parse_config_text("domain.kind = cylinder\ntolerance.bogus = 1\n")),
        ConfigError);
    CHECK_THROWS_AS(static_cast<void>(parse_config_text("domain.kind = torus\n")), ConfigError);
    CHECK_THROWS_AS(static_cast<void>(parse_config_text("domain.kind = cylinder\nsuites = x\n")),
                    ConfigError);
    CHECK_THROWS_AS(static_cast<void>(parse_config_text("")), ConfigError);
    CHECK_THROWS_AS(
        static_cast<void>(parse_config_text("domain.kind = cylinder\ndomain.nx = 4\n")),
        ConfigError);
}

TEST_CASE("config: s from K") {
    const RunConfig c = parse_config_text(
        "domain.kind = cylinder\ndomain.nx = 16\ndomain.ny = 16\n"
        "domain.Lx = 1\ndomain.Ly = 1\ndata.K = -0.41997434161402614\n");
    CHECK(c.resolved_s() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("report rounding is stable at 12 significant digits") {
    CHECK(round_sig(0.0) == 0.0);
    CHECK(round_sig(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-13));
    CHECK(format_sig(1.0 / 3.0) == "0.333333333333");
    CHECK(format_sig(-1.2345678901234567e-9) == "-1.23456789012e-09");
    CHECK(round_sig(round_sig(1.0 / 3.0)) == round_sig(1.0 / 3.0));
}
