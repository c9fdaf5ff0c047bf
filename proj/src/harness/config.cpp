#include "nhq/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "nhq/error.hpp"

namespace nhq::harness {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    fail("config: bad number for '" + std::string(key) + "': " + std::string(v));
  }
  return out;
}

template <class Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    fail("config: bad integer for '" + std::string(key) + "': " + std::string(v));
  }
  return out;
}

PathKind parse_path(std::string_view v) {
  if (v == "jsweep") return PathKind::JSweep;
  if (v == "delta1") return PathKind::Delta1;
  if (v == "delta2") return PathKind::Delta2;
  fail("config: unknown path '" + std::string(v) + "'");
}

}  // namespace

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::NonHermitian: return "nonhermitian";
    case Engine::LindbladIdeal: return "lindblad_ideal";
    case Engine::LindbladFull: return "lindblad_full";
  }
  return "nonhermitian";
}

Engine parse_engine(std::string_view name) {
  if (name == "nonhermitian") return Engine::NonHermitian;
  if (name == "lindblad_ideal") return Engine::LindbladIdeal;
  if (name == "lindblad_full") return Engine::LindbladFull;
  fail("unknown engine '" + std::string(name) + "'");
}

PathSpec Config::path_spec(double tau) const {
  switch (path) {
    case PathKind::JSweep: return {JSweep{j_max, j_min}, tau};
    case PathKind::Delta1: return {DeltaHalfSine{j_max, delta_max}, tau};
    case PathKind::Delta2: return {DeltaFullSine{j_max, delta_max}, tau};
  }
  return {JSweep{j_max, j_min}, tau};
}

Rates Config::rates() const {
  if (engine == Engine::LindbladIdeal) return Rates{gamma_e, 0.0, 0.0, 0.0};
  return Rates{gamma_e, gamma_f, gamma_2e, gamma_2f};
}

GibbsPrep Config::prep() const { return gibbs_weights(beta, j_max); }

std::vector<double> Config::tau_grid() const { return linear_grid(tau_start, tau_stop, tau_step); }

void Config::validate() const {
  if (!(tau_start > 0) || tau_stop < tau_start || !(tau_step > 0)) {
    fail("config: need 0 < tau_start <= tau_stop and tau_step > 0");
  }
  if (j_max < 0 || j_min < 0) fail("config: couplings must be >= 0");
  if (beta < 0) fail("config: beta must be >= 0");
  if (!(slices_tol > 0) || !(dt > 0)) fail("config: slices_tol and dt must be positive");
  if (shots < 1) fail("config: shots must be >= 1");
  try {
    rates().validate();
  } catch (const Error& e) {
    fail(std::string("config: ") + e.what());
  }
}

Config parse_config(std::string_view text) {
  Config c;
  using Setter = std::function<void(std::string_view, std::string_view)>;
  auto num = [](double Config::*field, Config& cfg) {
    return Setter([&cfg, field](std::string_view k, std::string_view v) { cfg.*field = to_double(k, v); });
  };
  const std::map<std::string_view, Setter> setters = {
      {"engine", [&](std::string_view, std::string_view v) { c.engine = parse_engine(v); }},
      {"path", [&](std::string_view, std::string_view v) { c.path = parse_path(v); }},
      {"j_max", num(&Config::j_max, c)},
      {"j_min", num(&Config::j_min, c)},
      {"delta_max", num(&Config::delta_max, c)},
      {"tau_start", num(&Config::tau_start, c)},
      {"tau_stop", num(&Config::tau_stop, c)},
      {"tau_step", num(&Config::tau_step, c)},
      {"beta", num(&Config::beta, c)},
      {"gamma_e", num(&Config::gamma_e, c)},
      {"gamma_f", num(&Config::gamma_f, c)},
      {"gamma_2e", num(&Config::gamma_2e, c)},
      {"gamma_2f", num(&Config::gamma_2f, c)},
      {"slices_tol", num(&Config::slices_tol, c)},
      {"dt", num(&Config::dt, c)},
      {"seed", [&](std::string_view k, std::string_view v) { c.seed = to_int<std::uint64_t>(k, v); }},
      {"shots", [&](std::string_view k, std::string_view v) { c.shots = to_int<long>(k, v); }},
  };

  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) fail("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) fail("config: duplicate key '" + std::string(key) + "'");
    if (value.empty()) fail("config: empty value for '" + std::string(key) + "'");
    it->second(key, value);
  }
  c.validate();
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0) || stop < start) {
    throw Error(ErrorCode::InvalidArgument, "linear_grid: need step > 0 and stop >= start");
  }
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "linspace: need n >= 1");
  if (n == 1) return {lo};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return out;
}

}  // namespace nhq::harness
