#pragma once

#include <stdexcept>
#include <string>

namespace spinstat {

// Thrown when a state fails the convergence selection criterion: the spin
// enhancement of the mode exponent outgrows the beta.p decay in at least one
// momentum direction, so the currents integrals diverge.
class InadmissibleState : public std::runtime_error {
public:
    InadmissibleState(double zeta_value, double margin_value)
        : std::runtime_error("inadmissible state: selection criterion zeta = " +
                             std::to_string(zeta_value) + " >= 1 - " +
                             std::to_string(margin_value)),
          zeta(zeta_value),
          margin(margin_value) {}
    double zeta;
    double margin;
};

// Thrown when the refinement loop exhausts max_refinements without meeting
// the requested relative tolerance.
class NotConverged : public std::runtime_error {
public:
    NotConverged(double achieved_rel, double requested_rel, int refinements)
        : std::runtime_error("quadrature did not converge: relative change " +
                             std::to_string(achieved_rel) + " after " +
                             std::to_string(refinements) + " refinements (requested " +
                             std::to_string(requested_rel) + ")"),
          achieved(achieved_rel),
          requested(requested_rel),
          refinements_used(refinements) {}
    double achieved;
    double requested;
    int refinements_used;
};

// A finite-difference step left the admissible region.
class InadmissiblePerturbation : public std::runtime_error {
public:
    explicit InadmissiblePerturbation(const std::string& direction)
        : std::runtime_error("perturbed state inadmissible along direction " + direction) {}
};

// Config file problem, with a line/field diagnostic for the CLI.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string file, int line_number, std::string field_name,
                const std::string& what_text)
        : std::runtime_error(file + ":" + std::to_string(line_number) +
                             (field_name.empty() ? "" : ": field '" + field_name + "'") +
                             ": " + what_text),
          file(std::move(file)),
          line(line_number),
          field(std::move(field_name)) {}
    std::string file;
    int line;
    std::string field;
};

} // namespace spinstat
