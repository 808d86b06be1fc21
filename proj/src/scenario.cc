#include "antpower/scenario.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "antpower/errors.h"

namespace antpower {
namespace {

std::string Trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ToDouble(const std::string& key, const std::string& value,
                std::size_t line) {
  if (value == "inf") return std::numeric_limits<double>::infinity();
  double out;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() ||
      std::isnan(out)) {
    throw ParseError(line, "'" + key + "' expects a number, got '" + value + "'");
  }
  return out;
}

long long ToInteger(const std::string& key, const std::string& value,
                    std::size_t line) {
  long long out;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError(line,
                     "'" + key + "' expects an integer, got '" + value + "'");
  }
  return out;
}

int ToInt(const std::string& key, const std::string& value, std::size_t line) {
  long long v = ToInteger(key, value, line);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(line, "'" + key + "' out of range");
  }
  return static_cast<int>(v);
}

struct PresetSpec {
  std::string name;
  std::string body;
};

std::vector<PresetSpec> BuildPresets() {
  std::vector<PresetSpec> presets;
  const char* profiles[] = {"log", "cubic", "linear"};
  for (int n : {5, 8}) {
    for (const char* p : profiles) {
      std::string name = "lattice" + std::to_string(n) + "-" + p;
      presets.push_back({name, "topology = lattice:" + std::to_string(n) +
                                   "\nprofile = " + p +
                                   "\niterations = 2000\nreplications = 100\n"});
    }
  }
  for (const char* matrix : {"fullmesh", "coast2coast", "intracoast"}) {
    for (const char* p : profiles) {
      std::string name = std::string("nsfnet-") + matrix + "-" + p;
      presets.push_back({name, std::string("topology = nsfnet\ntraffic = ") +
                                   matrix + "\nprofile = " + p +
                                   "\niterations = 2000\nreplications = 20\n"});
    }
  }
  for (const char* p : {"log", "cubic"}) {
    presets.push_back(
        {std::string("nobel-eu-") + p + "-staged",
         std::string("topology = nobel-eu\nprofile = ") + p +
             "\ntraffic_steps = 4\nstep_interval = 500\n"
             "iterations = 2000\nreplications = 10\n"});
    presets.push_back({std::string("nobel-eu-pruned-") + p,
                       std::string("topology = nobel-eu\nprofile = ") + p +
                           "\nmode = pruned-spf\niterations = 1\n"
                           "replications = 1\n"});
  }
  for (const char* p : {"log", "cubic"}) {
    presets.push_back({std::string("fig1-") + p,
                       std::string("topology = fig1\nprofile = ") + p +
                           "\niterations = 500\nreplications = 20\n"});
  }
  for (auto& preset : presets) {
    preset.body = "name = " + preset.name + "\n" + preset.body;
  }
  return presets;
}

const std::vector<PresetSpec>& Presets() {
  static const std::vector<PresetSpec> presets = BuildPresets();
  return presets;
}

}  // namespace

void ApplyScenarioParam(Scenario& s, const std::string& key,
                        const std::string& value, std::size_t line) {
  auto prefixed = [&value](const char* prefix, std::string* rest) {
    std::string p(prefix);
    if (value.rfind(p, 0) != 0) return false;
    *rest = value.substr(p.size());
    return true;
  };
  std::string rest;
  if (key == "name") {
    s.name = value;
  } else if (key == "topology") {
    if (prefixed("lattice:", &rest)) {
      s.topology = "lattice";
      s.lattice_size = ToInt(key, rest, line);
    } else if (value == "lattice") {
      s.topology = "lattice";
    } else if (prefixed("file:", &rest)) {
      s.topology = "file";
      s.topology_path = rest;
    } else if (prefixed("sndlib:", &rest)) {
      s.topology = "sndlib";
      s.topology_path = rest;
    } else if (value == "nsfnet" || value == "fig1" || value == "nobel-eu") {
      s.topology = value;
    } else {
      throw ParseError(line, "unknown topology '" + value + "'");
    }
  } else if (key == "profile") {
    if (prefixed("custom:", &rest)) {
      s.profile = "custom";
      s.profile_coefficients.clear();
      for (const auto& item : SplitList(rest)) {
        s.profile_coefficients.push_back(ToDouble(key, item, line));
      }
      if (s.profile_coefficients.empty()) {
        throw ParseError(line, "custom profile needs coefficients");
      }
    } else if (value == "log" || value == "linear" || value == "cubic" ||
               value == "as-is") {
      s.profile = value;
    } else {
      throw ParseError(line, "unknown profile '" + value + "'");
    }
  } else if (key == "log_base") {
    if (value == "10") {
      s.log_base = LogBase::kBase10;
    } else if (value == "e") {
      s.log_base = LogBase::kNatural;
    } else {
      throw ParseError(line, "log_base must be 10 or e");
    }
  } else if (key == "capacity") {
    double c = ToDouble(key, value, line);
    if (!(c > 0.0)) throw ParseError(line, "capacity must be positive");
    s.capacity = c;
  } else if (key == "reference_capacity") {
    s.reference_capacity = ToDouble(key, value, line);
  } else if (key == "traffic") {
    if (prefixed("file:", &rest)) {
      s.traffic = "file";
      s.traffic_path = rest;
    } else if (value == "default" || value == "all-pairs" ||
               value == "fullmesh" || value == "coast2coast" ||
               value == "intracoast" || value == "demands") {
      s.traffic = value;
    } else {
      throw ParseError(line, "unknown traffic '" + value + "'");
    }
  } else if (key == "west") {
    s.west = SplitList(value);
  } else if (key == "east") {
    s.east = SplitList(value);
  } else if (key == "traffic_steps") {
    s.traffic_steps = ToInt(key, value, line);
  } else if (key == "step_interval") {
    s.step_interval = ToInt(key, value, line);
  } else if (key == "mode") {
    if (value == "ant") {
      s.mode = RunMode::kAnt;
    } else if (value == "pruned-spf") {
      s.mode = RunMode::kPrunedSpf;
    } else {
      throw ParseError(line, "mode must be 'ant' or 'pruned-spf'");
    }
  } else if (key == "iterations") {
    s.iterations = ToInt(key, value, line);
  } else if (key == "replications") {
    s.replications = ToInt(key, value, line);
  } else if (key == "seed") {
    long long v = ToInteger(key, value, line);
    if (v < 0) throw ParseError(line, "seed must be non-negative");
    s.seed = static_cast<std::uint64_t>(v);
  } else if (key == "pi_e") {
    s.params.exploration = ToDouble(key, value, line);
  } else if (key == "alpha") {
    s.params.alpha = ToDouble(key, value, line);
  } else if (key == "eta") {
    s.params.eta = ToDouble(key, value, line);
  } else if (key == "epsilon") {
    s.params.epsilon = ToDouble(key, value, line);
  } else if (key == "a") {
    s.params.a = ToDouble(key, value, line);
  } else if (key == "b") {
    s.params.b = ToDouble(key, value, line);
  } else if (key == "h") {
    s.params.h = ToDouble(key, value, line);
  } else if (key == "max_hops") {
    s.params.max_hops = ToInt(key, value, line);
  } else if (key == "require_improvement") {
    if (value == "true") {
      s.params.require_improvement = true;
    } else if (value == "false") {
      s.params.require_improvement = false;
    } else {
      throw ParseError(line, "require_improvement must be true or false");
    }
  } else {
    throw ParseError(line, "unknown key '" + key + "'");
  }
}

Scenario ParseScenario(std::string_view text) {
  Scenario s;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = Trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    std::string key = Trim(std::string_view(line).substr(0, eq));
    std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    ApplyScenarioParam(s, key, value, line_no);
  }
  try {
    s.Validate();
  } catch (const ContractViolation& e) {
    throw ParseError(line_no, e.what());
  }
  return s;
}

std::vector<std::string> PresetNames() {
  std::vector<std::string> names;
  for (const auto& p : Presets()) names.push_back(p.name);
  return names;
}

std::optional<std::string> PresetText(const std::string& name) {
  for (const auto& p : Presets()) {
    if (p.name == name) return p.body;
  }
  return std::nullopt;
}

Scenario LoadScenario(const std::string& name_or_path) {
  if (auto text = PresetText(name_or_path)) return ParseScenario(*text);
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) {
    throw Error("no preset or readable scenario file named '" + name_or_path +
                "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario s = ParseScenario(buf.str());
  if (s.name.empty()) {
    s.name = std::filesystem::path(name_or_path).stem().string();
  }
  return s;
}

}  // namespace antpower
