// Copyright 2026 The spdevops Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "spdevops/nffg_json.h"
#include "spdevops/scenario.h"
#include "spdevops/vcpe.h"

namespace spdevops {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Shortest text that reads back as the same double.
std::string Exact(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Field {
  std::function<void(const std::string&, int)> set;
  std::function<std::string()> get;
};

double ParseDouble(const std::string& v, int line) {
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + v + "'", line);
  }
}

int64_t ParseInt(const std::string& v, int line) {
  try {
    size_t used = 0;
    long long i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + v + "'", line);
  }
}

bool ParseBool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ParseError("expected true or false, got '" + v + "'", line);
}

std::string ParseString(const std::string& v, int line) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"') {
    throw ParseError("expected a quoted string, got '" + v + "'", line);
  }
  return v.substr(1, v.size() - 2);
}

// Every config key, with its section prefix.
std::vector<std::pair<std::string, Field>> Fields(ScenarioConfig& c) {
  auto num = [](double& x) {
    return Field{[&x](const std::string& v, int l) { x = ParseDouble(v, l); },
                 [&x] { return Exact(x); }};
  };
  auto integer = [](auto& x) {
    using T = std::remove_reference_t<decltype(x)>;
    return Field{[&x](const std::string& v, int l) {
                   x = static_cast<T>(ParseInt(v, l));
                 },
                 [&x] { return std::to_string(x); }};
  };
  auto boolean = [](bool& x) {
    return Field{[&x](const std::string& v, int l) { x = ParseBool(v, l); },
                 [&x] { return std::string(x ? "true" : "false"); }};
  };
  auto str = [](std::string& x) {
    return Field{[&x](const std::string& v, int l) { x = ParseString(v, l); },
                 [&x] { return "\"" + x + "\""; }};
  };
  return {
      {"seed", integer(c.seed)},
      {"duration", num(c.duration)},
      {"initial_firewalls", integer(c.initial_firewalls)},
      {"max_firewalls", integer(c.max_firewalls)},
      {"capacity", num(c.capacity)},
      {"scale_out_risk", num(c.scale_out_risk)},
      {"scale_in_risk", num(c.scale_in_risk)},
      {"sustain", integer(c.sustain)},
      {"traffic.base_rate", num(c.traffic.base_rate)},
      {"traffic.ramp", num(c.traffic.ramp)},
      {"traffic.noise_sd", num(c.traffic.noise_sd)},
      {"traffic.ramp_until", num(c.traffic.ramp_until)},
      {"traffic.mail_share", num(c.traffic.mail_share)},
      {"traffic.web_share", num(c.traffic.web_share)},
      {"options.control_app_stalled", boolean(c.control_app_stalled)},
      {"options.imbalance", num(c.imbalance)},
      {"options.second_tenant", boolean(c.second_tenant)},
      {"options.acl", str(c.acl)},
      {"options.nffg", str(c.nffg_path)},
      {"options.policies", str(c.policies_path)},
  };
}

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).string();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

}  // namespace

ScenarioConfig ParseScenarioConfig(const std::string& text) {
  ScenarioConfig cfg;
  auto fields = Fields(cfg);
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    // A '#' outside quotes starts a comment.
    bool quoted = false;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') quoted = !quoted;
      if (s[i] == '#' && !quoted) {
        s.resize(i);
        break;
      }
    }
    s = Trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section", line);
      section = Trim(s.substr(1, s.size() - 2));
      if (section != "traffic" && section != "options") {
        throw ParseError("unknown section [" + section + "]", line);
      }
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    std::string key = Trim(s.substr(0, eq));
    std::string value = Trim(s.substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const auto& f) { return f.first == key; });
    if (it == fields.end()) throw ParseError("unknown key " + key, line);
    it->second.set(value, line);
  }
  try {
    CheckConfig(cfg);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid scenario: ") + e.what());
  }
  return cfg;
}

ScenarioConfig LoadScenarioConfig(const std::string& path) {
  return ParseScenarioConfig(ReadFile(path));
}

std::string ScenarioConfigToText(const ScenarioConfig& cfg) {
  ScenarioConfig c = cfg;
  std::string out;
  std::string section;
  for (const auto& [key, field] : Fields(c)) {
    std::string name = key;
    size_t dot = key.find('.');
    if (dot != std::string::npos) {
      std::string sec = key.substr(0, dot);
      name = key.substr(dot + 1);
      if (sec != section) {
        out += "\n[" + sec + "]\n";
        section = sec;
      }
    }
    if (key == "traffic.ramp_until" && c.traffic.ramp_until >= 1e300) continue;
    if ((key == "options.nffg" && c.nffg_path.empty()) ||
        (key == "options.policies" && c.policies_path.empty())) {
      continue;
    }
    out += name + " = " + field.get() + "\n";
  }
  return out;
}

Nffg ScenarioGraph(const ScenarioConfig& cfg, const std::string& base_dir) {
  if (!cfg.nffg_path.empty()) {
    return LoadNffgFile(Resolve(base_dir, cfg.nffg_path));
  }
  AclConfig acl = cfg.acl == "deny"   ? vcpe::DenyAcl()
                  : cfg.acl == "open" ? AclConfig{}
                                      : vcpe::PermitAcl();
  return vcpe::Make(cfg.initial_firewalls, acl);
}

std::vector<Policy> ScenarioPolicies(const ScenarioConfig& cfg,
                                     const std::string& base_dir) {
  if (!cfg.policies_path.empty()) {
    return LoadPolicyFile(Resolve(base_dir, cfg.policies_path));
  }
  return vcpe::Policies();
}

// --- Snapshots -------------------------------------------------------------

Scenario Restore(const Snapshot& s) {
  Scenario sim(s.config, s.graph, s.policies);
  sim.Advance(s.tick);
  return sim;
}

std::string SnapshotToJson(const Snapshot& s) {
  json j = {{"config", ScenarioConfigToText(s.config)},
            {"graph", NffgToJson(s.graph)},
            {"policies", PoliciesToJson(s.policies)},
            {"tick", s.tick}};
  return j.dump(2) + "\n";
}

Snapshot SnapshotFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("snapshot: invalid JSON: ") + e.what());
  }
  Snapshot s;
  try {
    s.config = ParseScenarioConfig(j.at("config").get<std::string>());
    s.graph = NffgFromJson(j.at("graph"));
    s.policies = PoliciesFromJson(j.at("policies"));
    s.tick = j.at("tick").get<Tick>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("snapshot: ") + e.what());
  }
  if (s.tick < 0) throw ParseError("snapshot: negative tick");
  return s;
}

Snapshot LoadSnapshot(const std::string& path) {
  return SnapshotFromJson(ReadFile(path));
}

// --- Reports ---------------------------------------------------------------

std::string TimeSeriesCsv(const TimeSeries& series) {
  std::string out = "tick,instances,link,risk\n";
  for (const auto& r : series.links) {
    out += std::to_string(r.tick) + "," + std::to_string(r.instances) + "," +
           r.link + "," + Fixed(r.risk) + "\n";
  }
  return out;
}

std::string LedgerCsv(const EventLedger& ledger) {
  std::string out = "counter,value\n";
  for (const auto& [name, value] : ledger.Counters()) {
    out += name + "," + std::to_string(value) + "\n";
  }
  return out;
}

std::string EventsCsv(const EventLedger& ledger) {
  std::string out = "tick,kind,detail\n";
  for (const auto& e : ledger.events) {
    out += std::to_string(e.tick) + "," + e.kind + ",\"" + e.detail + "\"\n";
  }
  return out;
}

std::string GnuplotData(const TimeSeries& series) {
  std::string out = "# tick seconds instances monitors offered_mbps max_risk\n";
  for (const auto& p : series.points) {
    out += std::to_string(p.tick) + " " +
           Fixed(static_cast<double>(p.tick + 1) / kTicksPerSecond) + " " +
           std::to_string(p.instances) + " " +
           std::to_string(p.active_monitors) + " " + Fixed(p.offered) + " " +
           Fixed(p.max_risk) + "\n";
  }
  return out;
}

std::vector<std::string> ExportReport(const EventLedger& ledger,
                                      const TimeSeries& series,
                                      const std::string& dir) {
  fs::create_directories(dir);
  std::vector<std::pair<std::string, std::string>> files = {
      {"timeseries.csv", TimeSeriesCsv(series)},
      {"ledger.csv", LedgerCsv(ledger)},
      {"events.csv", EventsCsv(ledger)},
      {"scenario.dat", GnuplotData(series)},
  };
  std::vector<std::string> out;
  for (const auto& [name, text] : files) {
    fs::path p = fs::path(dir) / name;
    WriteText(p, text);
    out.push_back(p.string());
  }
  return out;
}

}  // namespace spdevops
