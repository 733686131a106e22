#pragma once

// Strict key-value run configuration: unknown keys are rejected, values are
// typed per key. See README for the schema.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgc/types.hpp"

namespace cgc {

struct RunConfig {
    std::string domain_kind = "cylinder";
    int nx = 0, ny = 0;
    Real Lx = 0, Ly = 0;
    Real cx = 0, cy = 0;

    std::optional<Real> s;
    std::optional<Real> K;
    std::optional<Complex> Q;
    std::vector<Complex> Q_poly;
    std::optional<Real> u0;
    std::optional<std::string> boundary;  // "constant <v>" or "liouville"
    Real perturb = 0;  // sine-perturbation amplitude injected into u (control runs)

    std::vector<Complex> lambdas;
    std::vector<Complex> qs;
    struct QGrid {
        Complex center;
        int n = 5;
        Real delta = 1e-3;
    };
    std::optional<QGrid> q_grid;
    std::vector<Real> thetas;
    std::vector<std::string> suites;

    std::map<std::string, Real> tolerances;
    std::string output_dir = "out";
    int jobs = 1;

    Real resolved_s() const;
    Real tol(const std::string& name, Real scale) const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace cgc
