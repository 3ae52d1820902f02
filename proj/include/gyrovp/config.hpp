#ifndef GYROVP_CONFIG_HPP
#define GYROVP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gyrovp/test_function.hpp"
#include "gyrovp/vec2.hpp"
#include "gyrovp/vp_sim.hpp"

namespace gyrovp {

enum class RunMode { vp, vw, sweep };

/// One run description, parsed from a flat `key = value` document.
///
/// Required keys: mode, eps, gamma, n_particles, t_end.
/// Optional keys (defaults in brackets): total_mass [0.5],
/// support_center [1, 0], r_inner [0], r_outer [0.5],
/// exclusion_radius [0.4], v_max [2], height0 [1], height_exponent [1],
/// sampling [grid], xi0 [0, 0], eta0 [0, 0], c_rot [0.1], delta [0.05],
/// stride [10], seed [0], out [out], checkpoints [0.5, 1.0],
/// dict_lo [-2, -2], dict_hi [2, 2], dict_nx [5], dict_ny [5],
/// dict_widths [1, 2].
///
/// `eps` is a comma list; `run` modes (vp, vw) require exactly one entry,
/// `sweep` at least one. Lines starting with `#` (or trailing `#` fragments)
/// are comments.
struct RunConfig {
  RunMode mode = RunMode::vp;
  std::vector<double> eps_list;
  double gamma = 1.0;
  InitialDataSpec initial;  // initial.seed mirrors `seed`
  Vec2 xi0{0.0, 0.0};
  Vec2 eta0{0.0, 0.0};
  double c_rot = 0.1;
  double t_end = 1.0;
  double blob_delta = 0.05;
  std::size_t stride = 10;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::vector<double> checkpoints{0.5, 1.0};
  DictionaryParams dictionary;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a UTF-8 `key = value` document. Unknown keys,
/// duplicate keys, unparsable values, missing required keys, and violated
/// invariants all raise ConfigError carrying the key name and the line
/// number (0 when no single line is at fault).
RunConfig parse_config(std::string_view text);

/// Renders every key in a fixed order; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

const char* to_string(RunMode mode);

}  // namespace gyrovp

#endif  // GYROVP_CONFIG_HPP
