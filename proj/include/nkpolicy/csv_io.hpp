#pragma once

#include <string>
#include <vector>

#include "nkpolicy/determinacy.hpp"
#include "nkpolicy/path.hpp"
#include "nkpolicy/robustness.hpp"

namespace nkpolicy {

// CSV emitters: comma-separated, header row, LF line endings, 12 significant
// digits for floating-point fields. Output is byte-deterministic within a
// build for identical inputs.

std::string format_irf_csv(const IRFPath& path);
std::string format_sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows);
std::string format_stress_csv(const MisspecReport& report);

void write_file(const std::string& path, const std::string& contents);

} // namespace nkpolicy
