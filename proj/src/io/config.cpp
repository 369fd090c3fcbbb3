#include "spinstat/io/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "spinstat/errors.hpp"

namespace spinstat {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct Parser {
    std::string file;
    int line = 0;

    [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
        throw ConfigError(file, line, field, msg);
    }

    double number(const std::string& field, const std::string& value) const {
        try {
            std::size_t pos = 0;
            const double v = std::stod(value, &pos);
            if (pos != value.size()) fail(field, "trailing characters in number '" + value + "'");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail(field, "expected a number, got '" + value + "'");
        }
    }

    int integer(const std::string& field, const std::string& value) const {
        const double v = number(field, value);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) fail(field, "expected an integer, got '" + value + "'");
        return i;
    }

    Vec3 vec3(const std::string& field, const std::string& value) const {
        std::string s = value;
        for (char& c : s)
            if (c == ',') c = ' ';
        std::istringstream in(s);
        Vec3 v{};
        if (!(in >> v[0] >> v[1] >> v[2]))
            fail(field, "expected three numbers, got '" + value + "'");
        std::string rest;
        if (in >> rest) fail(field, "expected exactly three numbers, got '" + value + "'");
        return v;
    }
};

std::vector<std::string> split_list(const std::string& value) {
    std::string s = value;
    for (char& c : s)
        if (c == ',') c = ' ';
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

} // namespace

FluidState RunConfig::make_state() const {
    return FluidState(mass, temperature, mu, four_velocity(velocity), eb_compose(omega_e, omega_b));
}

RunConfig parse_config_text(const std::string& text, const std::string& name) {
    RunConfig cfg;
    Parser p{name, 0};
    std::istringstream in(text);
    std::string raw;
    std::string section;

    while (std::getline(in, raw)) {
        ++p.line;
        std::string line = raw;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') p.fail("", "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "state" && section != "quadrature" && section != "verify" &&
                section != "scan" && section != "output")
                p.fail(section, "unknown section");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) p.fail("", "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) p.fail("", "empty key");
        if (value.empty()) p.fail(key, "empty value");
        if (section.empty()) p.fail(key, "key outside any [section]");

        if (section == "state") {
            if (key == "mass") cfg.mass = p.number(key, value);
            else if (key == "temperature") cfg.temperature = p.number(key, value);
            else if (key == "mu") cfg.mu = p.number(key, value);
            else if (key == "velocity") cfg.velocity = p.vec3(key, value);
            else if (key == "omega.e") cfg.omega_e = p.vec3(key, value);
            else if (key == "omega.b") cfg.omega_b = p.vec3(key, value);
            else p.fail(key, "unknown key in [state]");
        } else if (section == "quadrature") {
            if (key == "n_radial") cfg.quadrature.n_radial = p.integer(key, value);
            else if (key == "n_theta") cfg.quadrature.n_theta = p.integer(key, value);
            else if (key == "n_phi") cfg.quadrature.n_phi = p.integer(key, value);
            else if (key == "p_max_mult") cfg.quadrature.p_max_mult = p.number(key, value);
            else if (key == "rel_tol") cfg.quadrature.rel_tol = p.number(key, value);
            else if (key == "max_refinements") cfg.quadrature.max_refinements = p.integer(key, value);
            else if (key == "admissibility_margin")
                cfg.quadrature.admissibility_margin = p.number(key, value);
            else if (key == "kernel") {
                if (value != "auto" && value != "scalar" && value != "simd")
                    p.fail(key, "expected auto|scalar|simd");
                cfg.kernel = value;
            } else if (key == "threads") {
                cfg.threads = p.integer(key, value);
                if (cfg.threads < 1) p.fail(key, "threads must be >= 1");
            } else p.fail(key, "unknown key in [quadrature]");
        } else if (section == "verify") {
            if (key == "h_xi") cfg.pert.h_xi = p.number(key, value);
            else if (key == "h_beta") cfg.pert.h_beta = p.number(key, value);
            else if (key == "h_omega") cfg.pert.h_omega = p.number(key, value);
            else if (key == "h_second") cfg.pert.h_second = p.number(key, value);
            else if (key == "order_probe_scale") cfg.pert.order_probe_scale = p.number(key, value);
            else if (key == "scheme") {
                if (value == "central") cfg.pert.scheme = PerturbationSpec::Scheme::central;
                else if (value == "richardson") cfg.pert.scheme = PerturbationSpec::Scheme::richardson;
                else p.fail(key, "expected central|richardson");
            } else if (key == "checks") {
                cfg.checks = split_list(value);
                for (const std::string& c : cfg.checks) {
                    if (c != "gibbs_duhem" && c != "first_law" && c != "euler" &&
                        c != "generating_function" && c != "boltzmann_limit")
                        p.fail(key, "unknown check '" + c + "'");
                }
            } else if (key == "tol_gibbs_duhem") cfg.tol_gibbs_duhem = p.number(key, value);
            else if (key == "tol_first_law") cfg.tol_first_law = p.number(key, value);
            else if (key == "tol_euler_mult") cfg.tol_euler_mult = p.number(key, value);
            else if (key == "tol_genfun_first") cfg.tol_genfun_first = p.number(key, value);
            else if (key == "tol_genfun_second") cfg.tol_genfun_second = p.number(key, value);
            else if (key == "boltzmann_window") cfg.boltzmann_window = p.number(key, value);
            else p.fail(key, "unknown key in [verify]");
        } else if (section == "scan") {
            if (key == "parameter") {
                if (value != "T" && value != "mu" && value != "omega_scale" &&
                    value != "Omega0_over_T0")
                    p.fail(key, "expected T|mu|omega_scale|Omega0_over_T0");
                cfg.scan.parameter = value;
            } else if (key == "lo") cfg.scan.lo = p.number(key, value);
            else if (key == "hi") cfg.scan.hi = p.number(key, value);
            else if (key == "steps") cfg.scan.steps = p.integer(key, value);
            else p.fail(key, "unknown key in [scan]");
        } else if (section == "output") {
            if (key == "format") {
                if (value != "json" && value != "csv") p.fail(key, "expected json|csv");
                cfg.format = value;
            } else if (key == "path") cfg.out_path = value;
            else p.fail(key, "unknown key in [output]");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "", "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

} // namespace spinstat
