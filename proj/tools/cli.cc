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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spdevops/chains.h"
#include "spdevops/nffg_json.h"
#include "spdevops/opex.h"
#include "spdevops/oracle.h"
#include "spdevops/scenario.h"
#include "spdevops/tsg.h"
#include "spdevops/verifier.h"

namespace spdevops::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::optional<uint64_t> seed;
  std::string out_dir;
  std::string format = "text";

  std::string nffg;
  std::string policies;
  std::string config;
  std::string tsg;
  std::string snapshot;
  std::string scenario = "optimistic";
  std::string model;
  int bits = 8;
  bool no_root_cause = false;
};

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path.string());
  f << text;
}

// Report files go to --out when it is given.
void Report(const Options& o, const std::string& name,
            const std::string& text) {
  if (!o.out_dir.empty()) WriteFile(fs::path(o.out_dir) / name, text);
}

std::string Ms(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

std::string VerdictLine(const Verdict& v) {
  std::string s = std::string(v.holds ? "PASS " : "FAIL ") + v.policy_id + " " +
                  std::string(PolicyKindName(v.kind));
  if (v.witness) {
    s += " via";
    for (const auto& n : v.witness->path) s += " " + n;
  }
  if (v.cause) {
    s += " stopped at " + v.cause->node_id + " (" +
         std::string(VnfKindName(v.cause->kind)) + ")";
  }
  if (!v.error.empty()) s += " error: " + v.error;
  return s;
}

int Verify(const Options& o, std::ostream& out) {
  Nffg g = LoadNffgFile(o.nffg);
  std::vector<Policy> policies = LoadPolicyFile(o.policies);
  BatchOptions opts;
  opts.root_cause = !o.no_root_cause;
  BatchResult r = VerifyPolicySet(g, policies, opts);
  json verdicts = VerdictsToJson(r.verdicts);
  Report(o, "verdicts.json", verdicts.dump(2) + "\n");
  auto timing = [](const KindTiming& t) {
    return json{
        {"count", t.count}, {"mean_ms", t.mean_ms}, {"max_ms", t.max_ms}};
  };
  if (o.format == "json") {
    out << json{{"verdicts", verdicts},
                {"timing",
                 {{"reachability", timing(r.reachability)},
                  {"isolation", timing(r.isolation)}}}}
               .dump(2)
        << "\n";
  } else if (o.format == "csv") {
    out << TimingCsv(r);
  } else {
    for (const auto& v : r.verdicts) out << VerdictLine(v) << "\n";
    out << r.verdicts.size() << " policies, "
        << std::count_if(r.verdicts.begin(), r.verdicts.end(),
                         [](const Verdict& v) { return v.holds; })
        << " hold\n";
    out << "reachability: " << r.reachability.count << " checks, mean "
        << Ms(r.reachability.mean_ms) << " ms, max "
        << Ms(r.reachability.max_ms) << " ms\n";
    out << "isolation:    " << r.isolation.count << " checks, mean "
        << Ms(r.isolation.mean_ms) << " ms, max " << Ms(r.isolation.max_ms)
        << " ms\n";
  }
  return r.AllHold() ? kOk : kFailed;
}

int Extract(const Options& o, std::ostream& out) {
  Nffg g = LoadNffgFile(o.nffg);
  auto bad = Validate(g);
  if (!bad.empty()) throw ParseError("invalid graph: " + ToString(bad.front()));
  std::vector<Chain> chains = ExtractChains(g);
  json j = json::array();
  for (const auto& c : chains) {
    json traffic = json::array();
    for (const auto& k : c.traffic.classes())
      traffic.push_back(PacketClassToJson(k));
    j.push_back({{"client", c.client},
                 {"server", c.server},
                 {"nodes", c.nodes},
                 {"traffic", traffic}});
  }
  Report(o, "chains.json", j.dump(2) + "\n");
  if (o.format == "json") {
    out << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "chain,client,server,nodes\n";
    for (size_t i = 0; i < chains.size(); ++i) {
      std::string nodes;
      for (const auto& n : chains[i].nodes)
        nodes += (nodes.empty() ? "" : " ") + n;
      out << i + 1 << "," << chains[i].client << "," << chains[i].server << ","
          << nodes << "\n";
    }
  } else {
    for (size_t i = 0; i < chains.size(); ++i) {
      out << "chain " << i + 1 << ": " << ToString(chains[i]) << "\n";
    }
  }
  return kOk;
}

int Run(const Options& o, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg = LoadScenarioConfig(o.config);
  if (o.seed) cfg.seed = *o.seed;
  const std::string base = fs::path(o.config).parent_path().string();
  Nffg g0 = ScenarioGraph(cfg, base);
  std::vector<Policy> policies = ScenarioPolicies(cfg, base);
  std::optional<Scenario> sim;
  try {
    sim.emplace(cfg, g0, policies);
  } catch (const DeploymentRejected& e) {
    err << "deployment rejected: " << e.what() << "\n";
    for (const auto& v : e.failing()) err << "  " << VerdictLine(v) << "\n";
    return kFailed;
  }
  sim->RunToEnd();
  const std::string dir = o.out_dir.empty() ? "report" : o.out_dir;
  ExportReport(sim->ledger(), sim->series(), dir);
  WriteFile(fs::path(dir) / "snapshot.json",
            SnapshotToJson({cfg, g0, policies, sim->tick()}));
  if (o.format == "json") {
    json counters = json::object();
    for (const auto& [k, v] : sim->ledger().Counters()) counters[k] = v;
    out << json{{"counters", counters}, {"instances", sim->Instances()}}.dump(2)
        << "\n";
  } else if (o.format == "csv") {
    out << LedgerCsv(sim->ledger());
  } else {
    for (const auto& [k, v] : sim->ledger().Counters()) {
      out << std::left << std::setw(26) << k << v << "\n";
    }
    out << std::left << std::setw(26) << "final_instances" << sim->Instances()
        << "\n";
    out << "reports written to " << dir << "\n";
  }
  return kOk;
}

int Troubleshoot(const Options& o, std::ostream& out) {
  Tsg t = LoadTsgFile(o.tsg);
  Snapshot s = LoadSnapshot(o.snapshot);
  if (o.seed) s.config.seed = *o.seed;
  Scenario sim = Restore(s);
  Diagnosis d = RunTsg(t, sim);
  Report(o, "diagnosis.json", DiagnosisToJson(d));
  Report(o, "diagnosis.txt", DiagnosisToText(d));
  if (o.format == "json") {
    out << DiagnosisToJson(d);
  } else if (o.format == "csv") {
    out << "step,node,kind,branch\n";
    for (size_t i = 0; i < d.steps.size(); ++i) {
      out << i + 1 << "," << d.steps[i].node << ","
          << TsgNodeKindName(d.steps[i].kind) << "," << d.steps[i].branch
          << "\n";
    }
    out << "verdict,,," << d.verdict << "\n";
  } else {
    out << DiagnosisToText(d);
  }
  return kOk;
}

int Opex(const Options& o, std::ostream& out) {
  IncidentModel m = o.model.empty() ? DefaultIncidentModel()
                                    : IncidentModelFromJson(ReadFile(o.model));
  SavingsReport r = OpexSavings(m, *ParseOpexScenario(o.scenario));
  Report(o, "opex.json", SavingsReportToJson(r));
  Report(o, "opex.csv", SavingsReportToCsv(r));
  if (o.format == "json") {
    out << SavingsReportToJson(r);
  } else if (o.format == "csv") {
    out << SavingsReportToCsv(r);
  } else {
    out << o.scenario << " ";
    out << SavingsReportToText(r);
  }
  return kOk;
}

int Oracle(const Options& o, std::ostream& out) {
  Nffg g = LoadNffgFile(o.nffg);
  std::vector<Policy> policies = LoadPolicyFile(o.policies);
  const PacketClass domain = ReducedDomain(o.bits);
  int mismatches = 0;
  json rows = json::array();
  std::string csv = "policy_id,kind,symbolic,oracle,agree\n";
  std::string text;
  for (const auto& p : policies) {
    Policy q = p;
    q.traffic = p.traffic.Intersect(domain);
    bool reach = false;
    if (!q.traffic.IsEmpty()) {
      try {
        reach = CheckReachability(g, q).holds;
      } catch (const NoChainError&) {
        reach = false;
      }
    }
    const bool oracle_reach = OracleReachability(g, p, o.bits);
    const bool isolation = p.kind == PolicyKind::kIsolation;
    const bool symbolic = isolation ? !reach : reach;
    const bool oracle = isolation ? !oracle_reach : oracle_reach;
    const bool agree = symbolic == oracle;
    mismatches += !agree;
    rows.push_back({{"policy_id", p.id},
                    {"kind", std::string(PolicyKindName(p.kind))},
                    {"symbolic", symbolic},
                    {"oracle", oracle},
                    {"agree", agree}});
    auto b = [](bool x) { return std::string(x ? "true" : "false"); };
    csv += p.id + "," + std::string(PolicyKindName(p.kind)) + "," +
           b(symbolic) + "," + b(oracle) + "," + b(agree) + "\n";
    text += std::string(agree ? "agree    " : "MISMATCH ") + p.id +
            " symbolic=" + b(symbolic) + " oracle=" + b(oracle) + "\n";
  }
  Report(o, "oracle.csv", csv);
  if (o.format == "json") {
    out << rows.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << csv;
  } else {
    out << text << mismatches << " mismatches over " << policies.size()
        << " policies (" << o.bits << "-bit header domain)\n";
  }
  return mismatches == 0 ? kOk : kFailed;
}

}  // namespace

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  Options o;
  CLI::App app{
      "Service-chain verification, monitoring and troubleshooting "
      "workbench",
      "spdevops"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Override the scenario seed");
  app.add_option("--out", o.out_dir, "Directory for report files");
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  auto* verify = app.add_subcommand("verify", "Verify policies on an NF-FG");
  verify->add_option("nffg", o.nffg, "NF-FG JSON file")->required();
  verify->add_option("policies", o.policies, "Policy JSON file")->required();
  verify->add_flag("--no-root-cause", o.no_root_cause,
                   "Skip root-cause attribution of isolations");

  auto* extract = app.add_subcommand("extract", "Print the service chains");
  extract->add_option("nffg", o.nffg, "NF-FG JSON file")->required();

  auto* run = app.add_subcommand("run", "Run an elastic firewall scenario");
  run->add_option("config", o.config, "Scenario config file")->required();

  auto* ts = app.add_subcommand("troubleshoot",
                                "Run a troubleshooting graph on a snapshot");
  ts->add_option("tsg", o.tsg, "Troubleshooting graph file")->required();
  ts->add_option("--snapshot", o.snapshot, "Scenario snapshot JSON")
      ->required();

  auto* opex = app.add_subcommand("opex", "Estimate OPEX savings");
  opex->add_option("--scenario", o.scenario, "optimistic or conservative")
      ->check(CLI::IsMember({"optimistic", "conservative"}));
  opex->add_option("--model", o.model, "Incident model JSON");

  auto* oracle = app.add_subcommand(
      "oracle", "Cross-check verdicts against brute-force enumeration");
  oracle->add_option("nffg", o.nffg, "NF-FG JSON file")->required();
  oracle->add_option("policies", o.policies, "Policy JSON file")->required();
  oracle->add_option("--bits", o.bits, "Header bits to enumerate")
      ->check(CLI::Range(1, 8));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*verify) return Verify(o, out);
    if (*extract) return Extract(o, out);
    if (*run) return Run(o, out, err);
    if (*ts) return Troubleshoot(o, out);
    if (*opex) return Opex(o, out);
    if (*oracle) return Oracle(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidModel& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidPolicy& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace spdevops::cli
