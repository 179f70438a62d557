#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace nkpolicy {

enum class IrfMode {
    PredeterminedInstrument,
    RamseyQuasiCommitment,
    ForwardLookingInstrument,
    Discretion,
};

const char* to_string(IrfMode mode);

/// Time-indexed (pi_t, x_t, z_t) for t = 0..horizon-1. The rule holds along
/// the path: x_t = f_pi*pi_t + f_z*z_t at every t. `seed` is set only for
/// stochastic simulations.
struct IRFPath {
    int horizon = 0;
    std::vector<double> pi;
    std::vector<double> x;
    std::vector<double> z;
    IrfMode mode = IrfMode::PredeterminedInstrument;
    std::optional<std::uint64_t> seed;
};

} // namespace nkpolicy
