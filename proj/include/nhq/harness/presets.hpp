#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nhq/harness/config.hpp"

namespace nhq::harness {

struct CsvFile {
  std::string name;
  std::string content;
};

struct PresetOptions {
  Engine engine = Engine::NonHermitian;
  /// fig4d starts below the EP at Jmax = 0.04 and sweeps up to j_min; the
  /// end point is not published, 3.74 rad/us is an assumed default.
  double fig4d_j_min = 3.74;
  /// Accepted for a uniform CLI; the simulated curves are deterministic.
  std::uint64_t seed = 0;
};

const std::vector<std::string_view>& preset_names();

/// Simulated curves of the named figure panel. Throws
/// Error{UnknownPreset} for an unlisted name.
std::vector<CsvFile> figure_preset(std::string_view name, const PresetOptions& opts = {});

}  // namespace nhq::harness
