#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nkpolicy/model.hpp"

namespace nkpolicy::cli {

/// Everything a run needs, assembled from the JSON config file and
/// command-line overrides. Mode-specific requirements are checked by the
/// subcommands, not here.
struct RunConfig {
    ModelParams params;
    std::string mode; ///< predetermined | ramsey | forward | discretion
    std::optional<double> f_pi;
    std::optional<double> f_z;
    std::optional<double> x0;
    std::optional<double> z0;
    int horizon = 40;
    std::optional<std::uint64_t> seed;
    std::string output_path;
};

/// Parses a JSON config document with keys beta, kappa, rho, sigma_eps,
/// epsilon, q, mode, fpi, fz, x0, z0, horizon, seed. Defaults: horizon 40,
/// q 1, sigma_eps 1. Throws InvalidParams listing every violated invariant.
RunConfig load_config(const std::string& path);

/// Entry point behind the binary. Exit codes: 0 success, 1 validation
/// error, 2 internal inconsistency. Diagnostics go to stderr as a single
/// machine-parsable line `nkpolicy: <code>: <message>`.
int run(int argc, const char* const* argv);

} // namespace nkpolicy::cli
