#pragma once

#include <string>
#include <vector>

namespace spinstat::cli {

// Exit codes shared by every subcommand:
//   0  success
//   1  config or usage error
//   2  inadmissible state (selection criterion)
//   3  quadrature did not converge
//   4  scan finished but some grid points failed (partial CSV still written)
//   5  identity or oracle failure
struct Options {
    std::string config_path;
    std::string out_path;  // overrides [output] path
    std::string format;    // overrides [output] format
    int threads = 0;       // overrides [quadrature] threads
    std::vector<std::string> checks;  // verify: subset of identities
    unsigned long long seed = 12345;  // oracle
    int trials = 500;                 // oracle
    bool particles_only = false;      // currents: restrict <P> to particles
};

int cmd_currents(const Options& opt);
int cmd_verify(const Options& opt);
int cmd_scan(const Options& opt);
int cmd_oracle(const Options& opt);

} // namespace spinstat::cli
