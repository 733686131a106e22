#include "cgc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cgc/errors.hpp"

namespace cgc {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<Real> parse_reals(const std::string& v, const std::string& key) {
    std::istringstream is(v);
    std::vector<Real> out;
    Real x;
    while (is >> x) out.push_back(x);
    if (!is.eof()) throw ConfigError("config: malformed number list for " + key);
    return out;
}

Real parse_real(const std::string& v, const std::string& key) {
    const auto xs = parse_reals(v, key);
    if (xs.size() != 1) throw ConfigError("config: expected one number for " + key);
    return xs[0];
}

int parse_int(const std::string& v, const std::string& key) {
    const Real x = parse_real(v, key);
    const int i = static_cast<int>(std::lround(x));
    if (std::abs(x - i) > 1e-12) throw ConfigError("config: expected integer for " + key);
    return i;
}

std::vector<Complex> parse_complex_list(const std::string& v, const std::string& key) {
    std::vector<Complex> out;
    std::istringstream groups(v);
    std::string item;
    while (std::getline(groups, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto xs = parse_reals(item, key);
        if (xs.size() != 2)
            throw ConfigError("config: expected 're im' pairs (';' separated) for " + key);
        out.emplace_back(xs[0], xs[1]);
    }
    if (out.empty()) throw ConfigError("config: empty list for " + key);
    return out;
}

const std::vector<std::string>& tolerance_keys() {
    static const std::vector<std::string> keys = {
        "flatness", "forms", "k_gap", "compare", "cr", "cr_control",
        "assoc",    "beta",  "additivity", "codazzi", "congruence"};
    return keys;
}

Real default_tol(const std::string& name) {
    if (name == "flatness") return 1e-8;
    if (name == "forms") return 1e-3;
    if (name == "k_gap") return 1e-3;
    if (name == "compare") return 1e-6;
    if (name == "cr") return 1e-5;
    if (name == "cr_control") return 1e-2;
    if (name == "assoc") return 1e-6;
    if (name == "beta") return 1e-6;
    if (name == "additivity") return 1e-8;
    if (name == "codazzi") return 1e-2;
    if (name == "congruence") return 1e-8;
    throw ConfigError("unknown tolerance: " + name);
}

}  // namespace

Real RunConfig::resolved_s() const {
    if (s) return *s;
    if (K) {
        if (!(*K > -1 && *K < 0)) throw ConfigError("config: data.K must lie in (-1, 0)");
        return 2.0 * std::atanh(std::sqrt(1.0 + *K));
    }
    throw ConfigError("config: one of data.s or data.K is required");
}

Real RunConfig::tol(const std::string& name, Real scale) const {
    const auto it = tolerances.find(name);
    return (it != tolerances.end() ? it->second : default_tol(name)) * scale;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool saw_domain = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw ConfigError("config: empty value for " + key);

        if (key == "domain.kind") {
            if (val != "cylinder" && val != "patch")
                throw ConfigError("config: domain.kind must be cylinder or patch");
            c.domain_kind = val;
            saw_domain = true;
        } else if (key == "domain.nx") {
            c.nx = parse_int(val, key);
        } else if (key == "domain.ny") {
            c.ny = parse_int(val, key);
        } else if (key == "domain.Lx") {
            c.Lx = parse_real(val, key);
        } else if (key == "domain.Ly") {
            c.Ly = parse_real(val, key);
        } else if (key == "domain.cx") {
            c.cx = parse_real(val, key);
        } else if (key == "domain.cy") {
            c.cy = parse_real(val, key);
        } else if (key == "data.s") {
            c.s = parse_real(val, key);
        } else if (key == "data.K") {
            c.K = parse_real(val, key);
        } else if (key == "data.Q") {
            c.Q = parse_complex_list(val, key).at(0);
        } else if (key == "data.Q_poly") {
            c.Q_poly = parse_complex_list(val, key);
        } else if (key == "data.u0") {
            c.u0 = parse_real(val, key);
        } else if (key == "data.boundary") {
            c.boundary = val;
        } else if (key == "data.perturb") {
            c.perturb = parse_real(val, key);
        } else if (key == "spectral.lambda") {
            c.lambdas = parse_complex_list(val, key);
        } else if (key == "spectral.q") {
            c.qs = parse_complex_list(val, key);
        } else if (key == "spectral.q_grid") {
            const auto xs = parse_reals(val, key);
            if (xs.size() != 4)
                throw ConfigError("config: spectral.q_grid wants 're im n delta'");
            RunConfig::QGrid g;
            g.center = Complex(xs[0], xs[1]);
            g.n = static_cast<int>(std::lround(xs[2]));
            g.delta = xs[3];
            c.q_grid = g;
        } else if (key == "sweep.thetas") {
            c.thetas = parse_reals(val, key);
        } else if (key == "suites") {
            std::istringstream ws(val);
            std::string w;
            while (ws >> w) {
                if (w != "forms" && w != "landslide" && w != "holonomy" && w != "cr")
                    throw ConfigError("config: unknown suite " + w);
                c.suites.push_back(w);
            }
        } else if (key.rfind("tolerance.", 0) == 0) {
            const std::string name = key.substr(10);
            bool known = false;
            for (const auto& k : tolerance_keys()) known |= (k == name);
            if (!known) throw ConfigError("config: unknown key " + key);
            c.tolerances[name] = parse_real(val, key);
        } else if (key == "output.dir") {
            c.output_dir = val;
        } else if (key == "jobs") {
            c.jobs = parse_int(val, key);
        } else {
            throw ConfigError("config: unknown key " + key);
        }
    }
    if (!saw_domain) throw ConfigError("config: domain.kind is required");
    if (c.nx < 8 || c.ny < 8) throw ConfigError("config: domain.nx/ny must be >= 8");
    if (!(c.Lx > 0) || !(c.Ly > 0)) throw ConfigError("config: domain.Lx/Ly must be positive");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace cgc
