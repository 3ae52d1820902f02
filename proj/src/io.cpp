#include "gyrovp/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "gyrovp/error.hpp"

namespace gyrovp {

namespace {

using ojson = nlohmann::ordered_json;

void require_aligned(const TimeSeries& series) {
  for (const auto& [name, values] : series.channels)
    if (values.size() != series.times.size())
      throw std::invalid_argument("channel '" + name +
                                  "' does not match the time axis");
}

double meta_number(const ojson& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ConfigError("metadata record is missing a numeric field", key, 1);
  return j.at(key).get<double>();
}

std::uint64_t meta_integer(const ojson& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned())
    throw ConfigError("metadata record is missing an integer field", key, 1);
  return j.at(key).get<std::uint64_t>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_phase_csv(std::ostream& os, const VPState& state) {
  os << "x1,x2,v1,v2,w\n";
  for (const auto& p : state.particles) {
    os << format_double(p.x.x) << ',' << format_double(p.x.y) << ','
       << format_double(p.v.x) << ',' << format_double(p.v.y) << ','
       << format_double(p.w) << '\n';
  }
}

void write_blob_csv(std::ostream& os, const WeightedMeasure& rho) {
  os << "x1,x2,w\n";
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const Vec2 x = rho.point(i);
    os << format_double(x.x) << ',' << format_double(x.y) << ','
       << format_double(rho.weight(i)) << '\n';
  }
}

void write_charge_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,xi1,xi2,eta1,eta2\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_double(traj.times[k]) << ',' << format_double(traj.xi[k].x)
       << ',' << format_double(traj.xi[k].y) << ','
       << format_double(traj.eta[k].x) << ',' << format_double(traj.eta[k].y)
       << '\n';
  }
}

void write_charge_csv(std::ostream& os, const VortexTrajectory& traj) {
  os << "t,xi1,xi2\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_double(traj.times[k]) << ',' << format_double(traj.xi[k].x)
       << ',' << format_double(traj.xi[k].y) << '\n';
  }
}

void write_diagnostics_jsonl(std::ostream& os, const RunMetadata& meta,
                             const TimeSeries& series) {
  require_aligned(series);
  ojson head;
  head["eps"] = meta.eps;
  head["gamma"] = meta.gamma;
  head["N"] = meta.n;
  head["dt"] = meta.dt;
  head["delta"] = meta.delta;
  head["seed"] = meta.seed;
  head["stride"] = meta.stride;
  os << head.dump() << '\n';
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    ojson rec;
    rec["t"] = series.times[k];
    for (const auto& [name, values] : series.channels) rec[name] = values[k];
    os << rec.dump() << '\n';
  }
}

DiagnosticsFile read_diagnostics_jsonl(std::istream& is) {
  DiagnosticsFile out;
  std::string line;
  int line_no = 0;
  bool have_meta = false;
  bool have_layout = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const ojson j = ojson::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object())
      throw ConfigError("malformed JSON record", "", line_no);
    if (!have_meta) {
      out.meta.eps = meta_number(j, "eps");
      out.meta.gamma = meta_number(j, "gamma");
      out.meta.n = meta_integer(j, "N");
      out.meta.dt = meta_number(j, "dt");
      out.meta.delta = meta_number(j, "delta");
      out.meta.seed = meta_integer(j, "seed");
      out.meta.stride = meta_integer(j, "stride");
      have_meta = true;
      continue;
    }
    if (!j.contains("t") || !j.at("t").is_number())
      throw ConfigError("sample record is missing 't'", "t", line_no);
    if (!have_layout) {
      for (const auto& [key, value] : j.items()) {
        if (key == "t") continue;
        out.series.channels.emplace_back(key, std::vector<double>{});
      }
      have_layout = true;
    }
    if (j.size() != out.series.channels.size() + 1)
      throw ConfigError("sample record does not match the channel layout", "",
                        line_no);
    out.series.times.push_back(j.at("t").get<double>());
    for (auto& [name, values] : out.series.channels) {
      if (!j.contains(name) || !j.at(name).is_number())
        throw ConfigError("sample record is missing a numeric channel", name,
                          line_no);
      values.push_back(j.at(name).get<double>());
    }
  }
  if (!have_meta)
    throw ConfigError("diagnostics document has no metadata record", "", 0);
  return out;
}

}  // namespace gyrovp
