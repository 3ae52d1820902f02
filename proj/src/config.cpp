#include "gyrovp/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "gyrovp/error.hpp"
#include "gyrovp/io.hpp"

namespace gyrovp {

namespace {

struct RawEntry {
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, const std::string& key, int line) {
  const std::string_view v = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(value))
    throw ConfigError("value '" + std::string(v) + "' is not a finite number",
                      key, line);
  return value;
}

std::uint64_t parse_u64(std::string_view text, const std::string& key,
                        int line) {
  const std::string_view v = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(
        "value '" + std::string(v) + "' is not a nonnegative integer", key,
        line);
  return value;
}

std::vector<double> parse_list(std::string_view text, const std::string& key,
                               int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - start);
    out.push_back(parse_double(item, key, line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Vec2 parse_vec2(std::string_view text, const std::string& key, int line) {
  const std::vector<double> list = parse_list(text, key, line);
  if (list.size() != 2)
    throw ConfigError("expected two comma-separated components", key, line);
  return {list[0], list[1]};
}

}  // namespace

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::vp: return "vp";
    case RunMode::vw: return "vw";
    case RunMode::sweep: return "sweep";
  }
  return "vp";
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, RawEntry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                      : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected 'key = value'", std::string(line), line_no);
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) throw ConfigError("empty key", key, line_no);
    if (entries.count(key))
      throw ConfigError("duplicate key", key, line_no);
    entries[key] = {value, line_no};
  }

  const auto take = [&](const std::string& key) -> std::optional<RawEntry> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    RawEntry e = std::move(it->second);
    entries.erase(it);
    return e;
  };
  const auto require = [&](const std::string& key) -> RawEntry {
    auto e = take(key);
    if (!e) throw ConfigError("missing required key", key, 0);
    return *e;
  };
  // Remembers where each consumed key sat so invariant violations can point
  // at the offending line even after parsing.
  std::map<std::string, int> lines;
  const auto fail = [&](const std::string& key, const std::string& message) {
    const auto it = lines.find(key);
    throw ConfigError(message, key, it == lines.end() ? 0 : it->second);
  };
  const auto note = [&](const std::string& key, const RawEntry& e) {
    lines[key] = e.line;
    return e;
  };

  RunConfig cfg;

  {
    const RawEntry e = note("mode", require("mode"));
    if (e.value == "vp") cfg.mode = RunMode::vp;
    else if (e.value == "vw") cfg.mode = RunMode::vw;
    else if (e.value == "sweep") cfg.mode = RunMode::sweep;
    else
      throw ConfigError("mode must be vp, vw, or sweep", "mode", e.line);
  }
  {
    const RawEntry e = note("eps", require("eps"));
    cfg.eps_list = parse_list(e.value, "eps", e.line);
  }
  {
    const RawEntry e = note("gamma", require("gamma"));
    cfg.gamma = parse_double(e.value, "gamma", e.line);
  }
  {
    const RawEntry e = note("n_particles", require("n_particles"));
    cfg.initial.particle_count =
        static_cast<std::size_t>(parse_u64(e.value, "n_particles", e.line));
  }
  {
    const RawEntry e = note("t_end", require("t_end"));
    cfg.t_end = parse_double(e.value, "t_end", e.line);
  }

  if (auto e = take("total_mass"))
    cfg.initial.total_mass = parse_double(note("total_mass", *e).value,
                                          "total_mass", e->line);
  if (auto e = take("support_center"))
    cfg.initial.support_center =
        parse_vec2(note("support_center", *e).value, "support_center", e->line);
  if (auto e = take("r_inner"))
    cfg.initial.r_inner =
        parse_double(note("r_inner", *e).value, "r_inner", e->line);
  if (auto e = take("r_outer"))
    cfg.initial.r_outer =
        parse_double(note("r_outer", *e).value, "r_outer", e->line);
  if (auto e = take("exclusion_radius"))
    cfg.initial.exclusion_radius = parse_double(
        note("exclusion_radius", *e).value, "exclusion_radius", e->line);
  if (auto e = take("v_max"))
    cfg.initial.v_max = parse_double(note("v_max", *e).value, "v_max", e->line);
  if (auto e = take("height0"))
    cfg.initial.height0 =
        parse_double(note("height0", *e).value, "height0", e->line);
  if (auto e = take("height_exponent"))
    cfg.initial.height_exponent = parse_double(
        note("height_exponent", *e).value, "height_exponent", e->line);
  if (auto e = take("sampling")) {
    note("sampling", *e);
    if (e->value == "grid")
      cfg.initial.sampling = InitialDataSpec::Sampling::grid;
    else if (e->value == "stratified")
      cfg.initial.sampling = InitialDataSpec::Sampling::stratified;
    else
      throw ConfigError("sampling must be grid or stratified", "sampling",
                        e->line);
  }
  if (auto e = take("xi0"))
    cfg.xi0 = parse_vec2(note("xi0", *e).value, "xi0", e->line);
  if (auto e = take("eta0"))
    cfg.eta0 = parse_vec2(note("eta0", *e).value, "eta0", e->line);
  if (auto e = take("c_rot"))
    cfg.c_rot = parse_double(note("c_rot", *e).value, "c_rot", e->line);
  if (auto e = take("delta"))
    cfg.blob_delta = parse_double(note("delta", *e).value, "delta", e->line);
  if (auto e = take("stride"))
    cfg.stride =
        static_cast<std::size_t>(parse_u64(note("stride", *e).value, "stride",
                                           e->line));
  if (auto e = take("seed"))
    cfg.seed = parse_u64(note("seed", *e).value, "seed", e->line);
  if (auto e = take("out")) cfg.out_dir = note("out", *e).value;
  if (auto e = take("checkpoints"))
    cfg.checkpoints =
        parse_list(note("checkpoints", *e).value, "checkpoints", e->line);
  if (auto e = take("dict_lo"))
    cfg.dictionary.lo = parse_vec2(note("dict_lo", *e).value, "dict_lo",
                                   e->line);
  if (auto e = take("dict_hi"))
    cfg.dictionary.hi = parse_vec2(note("dict_hi", *e).value, "dict_hi",
                                   e->line);
  if (auto e = take("dict_nx"))
    cfg.dictionary.nx =
        static_cast<int>(parse_u64(note("dict_nx", *e).value, "dict_nx",
                                   e->line));
  if (auto e = take("dict_ny"))
    cfg.dictionary.ny =
        static_cast<int>(parse_u64(note("dict_ny", *e).value, "dict_ny",
                                   e->line));
  if (auto e = take("dict_widths"))
    cfg.dictionary.widths =
        parse_list(note("dict_widths", *e).value, "dict_widths", e->line);

  if (!entries.empty()) {
    // Report the earliest unknown key by line for a stable message.
    const RawEntry* first = nullptr;
    std::string first_key;
    for (const auto& [key, entry] : entries) {
      if (!first || entry.line < first->line) {
        first = &entry;
        first_key = key;
      }
    }
    throw ConfigError("unknown key", first_key, first->line);
  }

  // Invariants.
  if (cfg.eps_list.empty()) fail("eps", "eps list must be nonempty");
  for (double e : cfg.eps_list)
    if (!(e > 0.0 && e < 1.0)) fail("eps", "eps values must lie in (0, 1)");
  if (cfg.mode != RunMode::sweep && cfg.eps_list.size() != 1)
    fail("eps", "run modes take exactly one eps value");
  if (cfg.mode == RunMode::vw) {
    if (!(cfg.gamma >= 0.0)) fail("gamma", "gamma must be >= 0 in vw mode");
  } else if (!(cfg.gamma > 0.0)) {
    fail("gamma", "gamma must be positive");
  }
  if (cfg.initial.particle_count == 0)
    fail("n_particles", "n_particles must be at least 1");
  if (!(cfg.t_end > 0.0)) fail("t_end", "t_end must be positive");
  if (!(cfg.initial.total_mass > 0.0 && cfg.initial.total_mass < 1.0))
    fail("total_mass", "total_mass must lie in (0, 1)");
  if (!(cfg.initial.r_inner >= 0.0))
    fail("r_inner", "r_inner must be nonnegative");
  if (!(cfg.initial.r_outer > cfg.initial.r_inner))
    fail("r_outer", "r_outer must exceed r_inner");
  if (!(cfg.initial.exclusion_radius > 0.0))
    fail("exclusion_radius", "exclusion_radius must be positive");
  if (!(cfg.initial.v_max > 0.0)) fail("v_max", "v_max must be positive");
  if (!(cfg.initial.height0 > 0.0)) fail("height0", "height0 must be positive");
  if (!(cfg.initial.height_exponent >= 0.0))
    fail("height_exponent", "height_exponent must be nonnegative");
  if (!(cfg.c_rot > 0.0)) fail("c_rot", "c_rot must be positive");
  if (!(cfg.blob_delta >= 0.0)) fail("delta", "delta must be nonnegative");
  if (cfg.stride == 0) fail("stride", "stride must be at least 1");
  if (cfg.out_dir.empty()) fail("out", "out must be nonempty");
  if (cfg.checkpoints.empty())
    fail("checkpoints", "checkpoints must be nonempty");
  for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
    if (!(cfg.checkpoints[i] > 0.0))
      fail("checkpoints", "checkpoints must be positive");
    if (i > 0 && !(cfg.checkpoints[i] > cfg.checkpoints[i - 1]))
      fail("checkpoints", "checkpoints must be strictly increasing");
  }
  if (cfg.dictionary.nx < 1 || cfg.dictionary.ny < 1)
    fail(cfg.dictionary.nx < 1 ? "dict_nx" : "dict_ny",
         "dictionary grid needs at least one center per axis");
  if (!(cfg.dictionary.hi.x > cfg.dictionary.lo.x &&
        cfg.dictionary.hi.y > cfg.dictionary.lo.y))
    fail("dict_hi", "dictionary box must satisfy hi > lo");
  if (cfg.dictionary.widths.empty())
    fail("dict_widths", "dict_widths must be nonempty");
  for (double w : cfg.dictionary.widths)
    if (!(w > 0.0)) fail("dict_widths", "dict_widths must be positive");

  cfg.initial.seed = cfg.seed;
  return cfg;
}

namespace {

std::string join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "mode = " << to_string(c.mode) << "\n";
  os << "eps = " << join(c.eps_list) << "\n";
  os << "gamma = " << format_double(c.gamma) << "\n";
  os << "n_particles = " << c.initial.particle_count << "\n";
  os << "t_end = " << format_double(c.t_end) << "\n";
  os << "total_mass = " << format_double(c.initial.total_mass) << "\n";
  os << "support_center = " << format_double(c.initial.support_center.x)
     << ", " << format_double(c.initial.support_center.y) << "\n";
  os << "r_inner = " << format_double(c.initial.r_inner) << "\n";
  os << "r_outer = " << format_double(c.initial.r_outer) << "\n";
  os << "exclusion_radius = " << format_double(c.initial.exclusion_radius)
     << "\n";
  os << "v_max = " << format_double(c.initial.v_max) << "\n";
  os << "height0 = " << format_double(c.initial.height0) << "\n";
  os << "height_exponent = " << format_double(c.initial.height_exponent)
     << "\n";
  os << "sampling = "
     << (c.initial.sampling == InitialDataSpec::Sampling::grid ? "grid"
                                                               : "stratified")
     << "\n";
  os << "xi0 = " << format_double(c.xi0.x) << ", " << format_double(c.xi0.y)
     << "\n";
  os << "eta0 = " << format_double(c.eta0.x) << ", " << format_double(c.eta0.y)
     << "\n";
  os << "c_rot = " << format_double(c.c_rot) << "\n";
  os << "delta = " << format_double(c.blob_delta) << "\n";
  os << "stride = " << c.stride << "\n";
  os << "seed = " << c.seed << "\n";
  os << "out = " << c.out_dir << "\n";
  os << "checkpoints = " << join(c.checkpoints) << "\n";
  os << "dict_lo = " << format_double(c.dictionary.lo.x) << ", "
     << format_double(c.dictionary.lo.y) << "\n";
  os << "dict_hi = " << format_double(c.dictionary.hi.x) << ", "
     << format_double(c.dictionary.hi.y) << "\n";
  os << "dict_nx = " << c.dictionary.nx << "\n";
  os << "dict_ny = " << c.dictionary.ny << "\n";
  os << "dict_widths = " << join(c.dictionary.widths) << "\n";
  return os.str();
}

}  // namespace gyrovp
