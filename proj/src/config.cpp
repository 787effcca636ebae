#include "mwlan/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mwlan/errors.hpp"

namespace mwlan {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const Entry& e, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ParseError(e.key, e.line, "expected a number, got '" + std::string(text) + "'");
  return v;
}

long long to_integer(const Entry& e, std::string_view text) {
  const double v = to_double(e, text);
  if (v != std::floor(v) || std::abs(v) > 9.0e15)
    throw ParseError(e.key, e.line, "expected an integer, got '" + std::string(trim(text)) + "'");
  return static_cast<long long>(v);
}

std::vector<std::string_view> split_list(const Entry& e) {
  std::vector<std::string_view> items;
  std::string_view rest = e.value;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw ParseError(e.key, e.line, "empty list element");
    items.push_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return items;
}

std::vector<double> to_doubles(const Entry& e) {
  std::vector<double> out;
  for (auto item : split_list(e)) out.push_back(to_double(e, item));
  return out;
}

std::vector<long long> to_integers(const Entry& e) {
  std::vector<long long> out;
  for (auto item : split_list(e)) out.push_back(to_integer(e, item));
  return out;
}

void require(bool ok, const Entry& e, const std::string& what) {
  if (!ok) throw ParseError(e.key, e.line, what);
}

int small_int(const Entry& e, long long lo, long long hi) {
  const long long v = to_integer(e, e.value);
  require(v >= lo && v <= hi, e,
          "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]");
  return static_cast<int>(v);
}

double positive(const Entry& e) {
  const double v = to_double(e, e.value);
  require(v > 0.0, e, "must be > 0");
  return v;
}

using Setter = std::function<void(const Entry&)>;

std::map<std::string, Setter> dcf_setters(DcfParams& p) {
  return {
      {"cw_min", [&p](const Entry& e) { p.cw_min = small_int(e, 2, 1 << 20); }},
      {"max_backoff_stage", [&p](const Entry& e) { p.max_backoff_stage = small_int(e, 0, 10); }},
      {"payload_bits", [&p](const Entry& e) { p.payload_bits = positive(e); }},
      {"slot_time", [&p](const Entry& e) { p.slot_time = positive(e); }},
      {"t_success", [&p](const Entry& e) { p.t_success = positive(e); }},
      {"t_collision", [&p](const Entry& e) { p.t_collision = positive(e); }},
  };
}

const std::set<std::string>& figures() {
  static const std::set<std::string> names{"bianchi", "fig6", "fig7",    "fig8",
                                           "split",   "sim-dcf", "sim-flow"};
  return names;
}

}  // namespace

std::vector<double> LambdaSweep::values() const {
  std::vector<double> v;
  v.reserve(points);
  for (int k = 0; k < points; ++k) {
    if (points == 1) {
      v.push_back(min);
    } else if (scale == SweepScale::log) {
      const double a = std::log10(min);
      const double b = std::log10(max);
      v.push_back(std::pow(10.0, a + (b - a) * k / (points - 1)));
    } else {
      v.push_back(min + (max - min) * k / (points - 1));
    }
  }
  return v;
}

void ExperimentConfig::validate() const {
  try {
    scenario.validate();
  } catch (const DomainError& err) {
    throw ParseError("", 0, err.what());
  }
  if (sweep.points < 1) throw ParseError("points", 0, "must be >= 1");
  if (sweep.min > sweep.max) throw ParseError("lambda_min", 0, "lambda_min exceeds lambda_max");
  if (sweep.min < 0.0) throw ParseError("lambda_min", 0, "must be >= 0");
  if (sweep.scale == SweepScale::log && sweep.min <= 0.0)
    throw ParseError("lambda_min", 0, "log sweep needs lambda_min > 0");
  if (!figure.empty() && !figures().contains(figure))
    throw ParseError("figure", 0, "unknown figure '" + figure + "'");
}

ExperimentConfig parse_config(std::string_view text) {
  std::vector<Entry> entries;
  {
    static const std::set<std::string> sections{"", "ap1", "ap2", "sweep", "sim", "split"};
    std::set<std::pair<std::string, std::string>> seen;
    std::string section;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string_view line = raw;
      if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw ParseError("", line_no, "malformed section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (!sections.contains(section))
          throw ParseError(section, line_no, "unknown section [" + section + "]");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(std::string(line), line_no, "expected 'key = value'");
      Entry e{section, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
              line_no};
      if (e.key.empty()) throw ParseError("", line_no, "missing key before '='");
      if (e.value.empty()) throw ParseError(e.key, line_no, "missing value");
      if (!seen.emplace(section, e.key).second)
        throw ParseError(e.key, line_no, "assigned more than once");
      entries.push_back(std::move(e));
    }
  }

  ExperimentConfig cfg;
  ScenarioConfig& sc = cfg.scenario;
  std::vector<LinkSpec> capacities;
  std::vector<double> backgrounds;
  const Entry* capacity_entry = nullptr;
  const Entry* background_entry = nullptr;

  DcfParams shared;
  std::map<std::string, std::map<std::string, Setter>> table;
  table[""] = {
      {"n_stations", [&](const Entry& e) { sc.n_stations = small_int(e, 1, 100000); }},
      {"interfaces_per_station",
       [&](const Entry& e) {
         const long long m = to_integer(e, e.value);
         require(m == 1 || m == 2, e, "must be 1 or 2, got " + std::to_string(m));
         sc.interfaces_per_station = static_cast<int>(m);
       }},
      {"arrival_rate",
       [&](const Entry& e) {
         sc.arrival_rate = to_double(e, e.value);
         require(sc.arrival_rate >= 0.0, e, "must be >= 0");
       }},
      {"mean_file_size", [&](const Entry& e) { sc.mean_file_size = positive(e); }},
      {"rng_seed",
       [&](const Entry& e) {
         const long long s = to_integer(e, e.value);
         require(s >= 0, e, "must be >= 0");
         sc.rng_seed = static_cast<std::uint64_t>(s);
       }},
      {"idle_throughput",
       [&](const Entry& e) {
         if (e.value == "first_active") {
           sc.idle_throughput = IdleThroughput::first_active;
         } else if (e.value == "zero") {
           sc.idle_throughput = IdleThroughput::zero;
         } else {
           throw ParseError(e.key, e.line, "expected first_active or zero");
         }
       }},
      {"figure",
       [&](const Entry& e) {
         require(figures().contains(e.value), e, "unknown figure '" + e.value + "'");
         cfg.figure = e.value;
       }},
      {"output", [&](const Entry& e) { cfg.output_path = e.value; }},
      {"seeds",
       [&](const Entry& e) {
         for (long long s : to_integers(e)) {
           require(s >= 0, e, "seeds must be >= 0");
           cfg.seeds.push_back(static_cast<std::uint64_t>(s));
         }
       }},
  };
  table[""].merge(dcf_setters(shared));
  table["ap1"] = dcf_setters(sc.ap1);
  table["ap2"] = dcf_setters(sc.ap2);
  table["sweep"] = {
      {"lambda_min",
       [&](const Entry& e) {
         cfg.sweep.min = to_double(e, e.value);
         require(cfg.sweep.min >= 0.0, e, "must be >= 0");
       }},
      {"lambda_max",
       [&](const Entry& e) {
         cfg.sweep.max = to_double(e, e.value);
         require(cfg.sweep.max >= 0.0, e, "must be >= 0");
       }},
      {"points", [&](const Entry& e) { cfg.sweep.points = small_int(e, 1, 1000000); }},
      {"scale",
       [&](const Entry& e) {
         if (e.value == "log") {
           cfg.sweep.scale = SweepScale::log;
         } else if (e.value == "linear") {
           cfg.sweep.scale = SweepScale::linear;
         } else {
           throw ParseError(e.key, e.line, "expected log or linear");
         }
       }},
      {"file_sizes",
       [&](const Entry& e) {
         cfg.file_sizes = to_doubles(e);
         for (double f : cfg.file_sizes) require(f > 0.0, e, "file sizes must be > 0");
       }},
      {"cw_values",
       [&](const Entry& e) {
         cfg.cw_values.clear();
         for (long long w : to_integers(e)) {
           require(w >= 2 && w <= (1 << 20), e, "contention windows must be >= 2");
           cfg.cw_values.push_back(static_cast<int>(w));
         }
       }},
  };
  table["sim"] = {
      {"slot_events",
       [&](const Entry& e) {
         cfg.sim.slot_events = to_integer(e, e.value);
         require(cfg.sim.slot_events >= 1, e, "must be >= 1");
       }},
      {"batches", [&](const Entry& e) { cfg.sim.batches = small_int(e, 2, 100000); }},
      {"warmup_fraction",
       [&](const Entry& e) {
         cfg.sim.warmup_fraction = to_double(e, e.value);
         require(cfg.sim.warmup_fraction >= 0.0 && cfg.sim.warmup_fraction < 1.0, e,
                 "must be in [0, 1)");
       }},
      {"countdown",
       [&](const Entry& e) {
         if (e.value == "every_slot") {
           cfg.sim.countdown = BackoffCountdown::every_slot;
         } else if (e.value == "idle_slots") {
           cfg.sim.countdown = BackoffCountdown::idle_slots;
         } else {
           throw ParseError(e.key, e.line, "expected every_slot or idle_slots");
         }
       }},
      {"stations",
       [&](const Entry& e) {
         cfg.sim.dcf_stations.clear();
         for (long long n : to_integers(e)) {
           require(n >= 1 && n <= 100000, e, "station counts must be >= 1");
           cfg.sim.dcf_stations.push_back(static_cast<int>(n));
         }
       }},
      {"horizon_transfers",
       [&](const Entry& e) { cfg.sim.horizon_transfers = positive(e); }},
  };
  table["split"] = {
      {"file_size", [&](const Entry& e) { cfg.split.file_size = positive(e); }},
      {"capacity",
       [&](const Entry& e) {
         capacity_entry = &e;
         for (double c : to_doubles(e)) {
           require(c > 0.0, e, "capacities must be > 0");
           capacities.push_back({c, 0.0});
         }
       }},
      {"background",
       [&](const Entry& e) {
         background_entry = &e;
         backgrounds = to_doubles(e);
         for (double b : backgrounds) require(b >= 0.0, e, "background loads must be >= 0");
       }},
      {"chunks", [&](const Entry& e) { cfg.split.chunks = small_int(e, 2, 1000000); }},
      {"optimal",
       [&](const Entry& e) {
         require(e.value == "true" || e.value == "false", e, "expected true or false");
         cfg.split.optimal = e.value == "true";
       }},
  };

  // Top-level DCF keys first so that [ap1]/[ap2] overrides win regardless
  // of where they appear in the file.
  static const std::set<std::string> dcf_keys{"cw_min",    "max_backoff_stage", "payload_bits",
                                              "slot_time", "t_success",         "t_collision"};
  for (const Entry& e : entries) {
    const auto& setters = table.at(e.section);
    const auto it = setters.find(e.key);
    if (it == setters.end())
      throw ParseError(e.key, e.line,
                       "unknown key" + (e.section.empty() ? "" : " in [" + e.section + "]"));
    if (e.section.empty() && dcf_keys.contains(e.key)) it->second(e);
  }
  sc.ap1 = shared;
  sc.ap2 = shared;
  for (const Entry& e : entries) {
    if (e.section.empty() && dcf_keys.contains(e.key)) continue;
    table.at(e.section).at(e.key)(e);
  }

  if (capacity_entry != nullptr) {
    if (background_entry != nullptr && backgrounds.size() != capacities.size())
      throw ParseError(background_entry->key, background_entry->line,
                       "needs one value per capacity");
    for (std::size_t j = 0; j < backgrounds.size(); ++j) capacities[j].background_load = backgrounds[j];
    cfg.split.links = capacities;
  } else if (background_entry != nullptr) {
    if (backgrounds.size() != cfg.split.links.size())
      throw ParseError(background_entry->key, background_entry->line,
                       "needs one value per link");
    for (std::size_t j = 0; j < backgrounds.size(); ++j)
      cfg.split.links[j].background_load = backgrounds[j];
  }

  auto line_of = [&](const std::string& key) {
    for (const Entry& e : entries)
      if (e.key == key) return e.line;
    return 0;
  };
  try {
    cfg.validate();
  } catch (const ParseError& err) {
    if (err.line() == 0 && !err.key().empty()) {
      std::string what = err.what();
      what = what.substr(what.find(": ") + 2);
      throw ParseError(err.key(), line_of(err.key()), what);
    }
    throw;
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", 0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace mwlan
