#include "aoicov/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "aoicov/error.hpp"
#include "aoicov/units.hpp"

namespace aoicov {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::AvgAoiSweep:
      return "avg_aoi_sweep";
    case ExperimentKind::ViolationSweep:
      return "violation_sweep";
    case ExperimentKind::EnergySweep:
      return "energy_sweep";
    case ExperimentKind::OptimalPowerVsN:
      return "optimal_power_vs_n";
    case ExperimentKind::Validate:
      return "validate";
  }
  return "avg_aoi_sweep";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : {ExperimentKind::AvgAoiSweep, ExperimentKind::ViolationSweep,
                 ExperimentKind::EnergySweep, ExperimentKind::OptimalPowerVsN,
                 ExperimentKind::Validate})
    if (text == to_string(k)) return k;
  throw ValidationError("unknown experiment '" + std::string(text) +
                        "' (expected avg_aoi_sweep, violation_sweep, energy_sweep, "
                        "optimal_power_vs_n or validate)");
}

std::vector<double> Sweep::points() const {
  std::vector<double> out;
  // Index-based so the last point is not lost to accumulated rounding.
  const auto count = static_cast<long>(std::floor((max - min) / step + 1e-9)) + 1;
  out.reserve(count);
  for (long i = 0; i < count; ++i) out.push_back(min + i * step);
  return out;
}

Sweep ExperimentSpec::effective_sweep() const {
  if (sweep) return *sweep;
  if (kind == ExperimentKind::OptimalPowerVsN) return {5.0, 30.0, 1.0};
  return {0.0, 25.0, 0.5};
}

SystemParams ExperimentSpec::system_for(const Overlay& overlay) const {
  SystemParams p = system;
  if (overlay.max_retx) p.timing.max_retx = *overlay.max_retx;
  if (overlay.retx_interval) p.timing.retx_interval = *overlay.retx_interval;
  if (overlay.link_distance) p.link_distance = *overlay.link_distance;
  return p;
}

std::vector<Overlay> ExperimentSpec::effective_overlays() const {
  if (overlays.empty()) return {Overlay{}};
  return overlays;
}

ExperimentSpec default_spec() {
  ExperimentSpec s;
  s.system.tx_power = dbm_to_mw(0.0);
  s.system.link_distance = 20.0;
  s.system.pathloss_exp = 3.5;
  s.system.noise = 1e-5;
  s.system.target_sinr = 1.0;
  s.system.interferers = {{8.7e-5, 40.0}, {8.7e-5, 30.0}};
  s.system.timing = {1.0, 1.0, 10};
  s.correlation = {1.76e-2, 1.2e-3, 0.1, 0.6, 0.6};
  s.sensing_energy = 1.0;
  return s;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::string key;
  std::string value;
  int line;
};

[[noreturn]] void fail(const Entry& e, const std::string& message) {
  throw ConfigError(e.key, e.line, "line " + std::to_string(e.line) + ": " + e.key + ": " + message);
}

double as_double(const Entry& e) {
  double v = 0.0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    fail(e, "expected a number, got '" + e.value + "'");
  return v;
}

std::int64_t as_integer(const Entry& e) {
  std::int64_t v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || ptr != end) fail(e, "expected an integer, got '" + e.value + "'");
  return v;
}

std::uint64_t as_unsigned(const Entry& e) {
  std::uint64_t v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || ptr != end)
    fail(e, "expected a non-negative integer, got '" + e.value + "'");
  return v;
}

double positive(const Entry& e) {
  const double v = as_double(e);
  if (!(v > 0.0)) fail(e, "must be > 0");
  return v;
}

double non_negative(const Entry& e) {
  const double v = as_double(e);
  if (!(v >= 0.0)) fail(e, "must be >= 0");
  return v;
}

double open_unit(const Entry& e) {
  const double v = as_double(e);
  if (!(v > 0.0 && v < 1.0)) fail(e, "must lie in (0, 1)");
  return v;
}

int retx_count(const Entry& e) {
  const auto v = as_integer(e);
  if (v < 1) fail(e, e.value + " violates the invariant N >= 1");
  if (v > 100000) fail(e, "unreasonably large");
  return static_cast<int>(v);
}

// Splits "prefix.<index>.field"; returns false if the key does not match.
bool indexed_key(std::string_view key, std::string_view prefix, int& index, std::string& field) {
  if (!key.starts_with(prefix)) return false;
  key.remove_prefix(prefix.size());
  const auto dot = key.find('.');
  if (dot == std::string_view::npos) return false;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + dot, index);
  if (ec != std::errc() || ptr != key.data() + dot) return false;
  field = std::string(key.substr(dot + 1));
  return true;
}

struct IndexedClass {
  std::optional<double> density;
  std::optional<double> power;
  int line = 0;
};

}  // namespace

ExperimentSpec parse_config(std::string_view text) {
  ExperimentSpec spec = default_spec();
  std::vector<Entry> entries;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
      ++line;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      const std::string body = trim(raw);
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos)
        throw ConfigError("", line, "line " + std::to_string(line) + ": expected 'key = value'");
      Entry e{trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)),
              line};
      if (e.key.empty()) throw ConfigError("", line, "line " + std::to_string(line) + ": empty key");
      if (e.value.empty()) fail(e, "missing value");
      if (!seen.insert(e.key).second) fail(e, "duplicate key");
      entries.push_back(std::move(e));
    }
  }

  std::map<int, IndexedClass> classes;
  std::map<int, Overlay> overlays;
  std::optional<Sweep> sweep;
  int sweep_line = 0;
  int timing_line = 0;

  using Handler = std::function<void(const Entry&)>;
  const std::map<std::string, Handler, std::less<>> handlers = {
      {"tx_power_dbm", [&](const Entry& e) { spec.system.tx_power = dbm_to_mw(as_double(e)); }},
      {"link_distance", [&](const Entry& e) { spec.system.link_distance = positive(e); }},
      {"pathloss_exp",
       [&](const Entry& e) {
         const double a = as_double(e);
         if (!(a > 2.0 && a <= 6.0)) fail(e, "must lie in (2, 6]");
         spec.system.pathloss_exp = a;
       }},
      {"noise", [&](const Entry& e) { spec.system.noise = non_negative(e); }},
      {"target_sinr", [&](const Entry& e) { spec.system.target_sinr = positive(e); }},
      {"retx_interval",
       [&](const Entry& e) {
         spec.system.timing.retx_interval = positive(e);
         timing_line = std::max(timing_line, e.line);
       }},
      {"tx_duration",
       [&](const Entry& e) {
         spec.system.timing.tx_duration = positive(e);
         timing_line = std::max(timing_line, e.line);
       }},
      {"max_retx", [&](const Entry& e) { spec.system.timing.max_retx = retx_count(e); }},
      {"corr_u", [&](const Entry& e) { spec.correlation.u = positive(e); }},
      {"corr_v", [&](const Entry& e) { spec.correlation.v = positive(e); }},
      {"theta_th", [&](const Entry& e) { spec.correlation.theta_th = open_unit(e); }},
      {"eta",
       [&](const Entry& e) {
         const double v = as_double(e);
         if (!(v > 0.0 && v <= 1.0)) fail(e, "must lie in (0, 1]");
         spec.correlation.eta = v;
       }},
      {"eps_target", [&](const Entry& e) { spec.correlation.eps_target = open_unit(e); }},
      {"sensing_energy", [&](const Entry& e) { spec.sensing_energy = non_negative(e); }},
      {"environment",
       [&](const Entry& e) {
         try {
           spec.environment = parse_environment(e.value);
         } catch (const ValidationError& err) {
           fail(e, err.what());
         }
       }},
      {"v_th_override", [&](const Entry& e) { spec.v_th_override = positive(e); }},
      {"seed", [&](const Entry& e) { spec.sim.seed = as_unsigned(e); }},
      {"periods",
       [&](const Entry& e) {
         spec.sim.periods = as_unsigned(e);
         if (spec.sim.periods < 1) fail(e, "must be >= 1");
       }},
      {"threads", [&](const Entry& e) { spec.sim.threads = static_cast<unsigned>(as_unsigned(e)); }},
      {"experiment",
       [&](const Entry& e) {
         try {
           spec.kind = parse_experiment_kind(e.value);
         } catch (const ValidationError& err) {
           fail(e, err.what());
         }
       }},
      {"sweep.min",
       [&](const Entry& e) {
         if (!sweep) sweep = spec.effective_sweep();
         sweep->min = as_double(e);
         sweep_line = std::max(sweep_line, e.line);
       }},
      {"sweep.max",
       [&](const Entry& e) {
         if (!sweep) sweep = spec.effective_sweep();
         sweep->max = as_double(e);
         sweep_line = std::max(sweep_line, e.line);
       }},
      {"sweep.step",
       [&](const Entry& e) {
         if (!sweep) sweep = spec.effective_sweep();
         sweep->step = positive(e);
         sweep_line = std::max(sweep_line, e.line);
       }},
  };

  // `experiment` picks the default sweep, so apply it first.
  for (const auto& e : entries)
    if (e.key == "experiment") handlers.at("experiment")(e);

  for (const auto& e : entries) {
    if (e.key == "experiment") continue;
    if (auto it = handlers.find(e.key); it != handlers.end()) {
      it->second(e);
      continue;
    }
    int index = 0;
    std::string field;
    if (indexed_key(e.key, "interferer.", index, field)) {
      if (index < 1) fail(e, "interferer index must be >= 1");
      auto& c = classes[index];
      c.line = std::max(c.line, e.line);
      if (field == "density") {
        c.density = non_negative(e);
      } else if (field == "power") {
        c.power = positive(e);
      } else {
        fail(e, "unknown key");
      }
      continue;
    }
    if (indexed_key(e.key, "overlay.", index, field)) {
      if (index < 1) fail(e, "overlay index must be >= 1");
      auto& o = overlays[index];
      if (field == "max_retx") {
        o.max_retx = retx_count(e);
      } else if (field == "retx_interval") {
        o.retx_interval = positive(e);
      } else if (field == "link_distance") {
        o.link_distance = positive(e);
      } else {
        fail(e, "unknown key");
      }
      continue;
    }
    fail(e, "unknown key");
  }

  for (const auto& [index, c] : classes) {
    const auto slot = static_cast<std::size_t>(index - 1);
    if (slot > spec.system.interferers.size()) {
      const Entry e{"interferer." + std::to_string(index), "", c.line};
      fail(e, "interferer indices must be contiguous from 1");
    }
    if (slot == spec.system.interferers.size()) {
      if (!c.density || !c.power) {
        const Entry e{"interferer." + std::to_string(index), "", c.line};
        fail(e, "a new interferer class needs both density and power");
      }
      spec.system.interferers.push_back({*c.density, *c.power});
    } else {
      if (c.density) spec.system.interferers[slot].density = *c.density;
      if (c.power) spec.system.interferers[slot].power = *c.power;
    }
  }

  int expected = 1;
  for (const auto& [index, o] : overlays) {
    if (index != expected++) {
      const Entry e{"overlay." + std::to_string(index), "", 0};
      fail(e, "overlay indices must be contiguous from 1");
    }
    spec.overlays.push_back(o);
  }

  if (sweep) {
    if (sweep->max < sweep->min) {
      const Entry e{"sweep.max", "", sweep_line};
      fail(e, "sweep bounds must satisfy min <= max");
    }
    spec.sweep = sweep;
  }
  if (spec.system.timing.tx_duration > spec.system.timing.retx_interval) {
    const Entry e{"tx_duration", "", timing_line};
    fail(e, "violates T_o <= T_R");
  }
  for (const auto& o : spec.effective_overlays()) {
    const SystemParams p = spec.system_for(o);
    if (p.timing.tx_duration > p.timing.retx_interval) {
      const Entry e{"overlay.retx_interval", "", 0};
      fail(e, "overlay violates T_o <= T_R");
    }
  }
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace aoicov
