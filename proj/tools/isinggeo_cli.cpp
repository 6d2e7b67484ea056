// Copyright 2026 The isinggeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Settings come from an optional JSON config file
// (--config); flags given on the command line take precedence.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isinggeo/isinggeo.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CliError {
  int code;
  std::string message;
};

void check(ig_status s, const std::string& context) {
  if (s != IG_OK) {
    const int code = (s == IG_ERR_INVALID_ARGUMENT || s == IG_ERR_PARSE || s == IG_ERR_OUT_OF_RANGE) ? kExitUsage
                                                                                                    : kExitFailure;
    throw CliError{code, context + ": " + ig_status_name(s) + ": " + ig_last_error()};
  }
}

// Owns a string returned by the library.
struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { ig_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Config {
  int n = 5;
  int n_min = 4;
  int n_max = 8;
  int k = 1;
  double j_hz = 1.0;
  double dt = 1e-4;
  std::vector<double> bracket;
  std::string out = ".";
  std::string format = "table";
  std::string step = "first";
  std::string kind = "conventional";
  std::size_t samples = 2001;
  double report_dt = 0.01;
  int refine = 1;
};

Config load_config(int argc, char** argv) {
  Config c;
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) path = argv[i + 1];
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw CliError{kExitUsage, "cannot read config file '" + path + "'"};
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CliError{kExitUsage, "config file '" + path + "': " + e.what()};
  }
  try {
    c.n = j.value("n", c.n);
    c.n_min = j.value("n_min", c.n_min);
    c.n_max = j.value("n_max", c.n_max);
    c.k = j.value("k", c.k);
    c.j_hz = j.value("J", c.j_hz);
    c.dt = j.value("dt", c.dt);
    c.bracket = j.value("bracket", c.bracket);
    c.out = j.value("out", c.out);
    c.format = j.value("format", c.format);
    c.step = j.value("step", c.step);
    c.kind = j.value("kind", c.kind);
    c.samples = j.value("samples", c.samples);
    c.report_dt = j.value("report_dt", c.report_dt);
    c.refine = j.value("refine", c.refine);
  } catch (const nlohmann::json::exception& e) {
    throw CliError{kExitUsage, "config file '" + path + "': " + e.what()};
  }
  return c;
}

ig_solver_options solver_options(const Config& c) {
  ig_solver_options o{};
  o.dt = c.dt;
  if (!c.bracket.empty()) {
    if (c.bracket.size() != 2) throw CliError{kExitUsage, "--bracket takes two values LO HI"};
    o.has_bracket = 1;
    o.f_lo = c.bracket[0];
    o.f_hi = c.bracket[1];
  }
  return o;
}

std::filesystem::path out_path(const Config& c, const std::string& file) {
  std::filesystem::path dir(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw CliError{kExitFailure, "cannot create output directory '" + c.out + "'"};
  return dir / file;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw CliError{kExitFailure, "cannot write '" + p.string() + "'"};
  f << content;
  if (content.empty() || content.back() != '\n') f << '\n';
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

void validate_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw CliError{kExitUsage, "unsupported --format '" + f + "'"};
}

int cmd_geodesic(const Config& c) {
  validate_format(c.format, {"table", "json", "csv"});
  const ig_solver_options opts = solver_options(c);
  ig_geodesic* raw = nullptr;
  check(ig_geodesic_solve(c.step.c_str(), &opts, &raw), "geodesic --step " + c.step);
  std::unique_ptr<ig_geodesic, decltype(&ig_geodesic_free)> g(raw, ig_geodesic_free);
  double f = 0, tau = 0, miss = 0;
  check(ig_geodesic_f(g.get(), &f), "f");
  check(ig_geodesic_tau(g.get(), &tau), "tau");
  check(ig_geodesic_miss(g.get(), &miss), "miss");
  OwnedString json, csv;
  check(ig_geodesic_to_json(g.get(), c.j_hz, &json.p), "solution JSON");
  check(ig_geodesic_export_pulse(g.get(), c.samples, nullptr, nullptr, &csv.p), "pulse CSV");
  const auto jp = out_path(c, "geodesic_" + c.step + ".json");
  const auto cp = out_path(c, "geodesic_" + c.step + "_pulse.csv");
  write_file(jp, json.str());
  write_file(cp, csv.str());
  const double pij = std::numbers::pi * c.j_hz;
  if (c.format == "json") {
    std::cout << json.str() << '\n';
  } else if (c.format == "csv") {
    std::cout << csv.str();
  } else {
    std::cout << "step: " << c.step << "\n"
              << "f   = " << fixed(f, 9) << " [pi J] = " << fixed(f * pij, 6) << " rad/s at J = " << c.j_hz
              << " Hz\n"
              << "tau = " << fixed(tau, 9) << " [1/(pi J)] = " << fixed(tau / pij, 9) << " s\n"
              << "miss = " << miss << " (unit sphere)\n"
              << "wrote " << jp.string() << ", " << cp.string() << '\n';
  }
  return 0;
}

int cmd_pulse_export(const Config& c) {
  validate_format(c.format, {"table", "json", "csv"});
  const ig_solver_options opts = solver_options(c);
  ig_geodesic* raw = nullptr;
  check(ig_geodesic_solve(c.step.c_str(), &opts, &raw), "pulse-export --step " + c.step);
  std::unique_ptr<ig_geodesic, decltype(&ig_geodesic_free)> g(raw, ig_geodesic_free);
  OwnedString json, csv;
  int near_constant = 0;
  check(ig_geodesic_export_pulse(g.get(), c.samples, &near_constant, &json.p, &csv.p), "pulse export");
  double miss = 0;
  check(ig_geodesic_replay_miss(g.get(), c.samples, &miss), "pulse replay");
  const bool as_json = c.format == "json";
  const auto p = out_path(c, "pulse_" + c.step + (as_json ? ".json" : ".csv"));
  write_file(p, as_json ? json.str() : csv.str());
  std::cout << "pulse: " << c.step << ", " << c.samples << " samples, t in [1/(pi J)], u in [pi J]\n"
            << "near constant: " << (near_constant ? "yes" : "no") << "\n"
            << "replay miss through the 4-state block: " << miss << " (unit sphere)\n"
            << "wrote " << p.string() << '\n';
  return 0;
}

int cmd_simulate(const Config& c, const std::string& sequence_file, const std::string& initial,
                 const std::string& target) {
  validate_format(c.format, {"table", "json", "csv"});
  const ig_solver_options opts = solver_options(c);
  ig_sequence* raw = nullptr;
  std::string label = c.kind;
  if (!sequence_file.empty()) {
    std::ifstream in(sequence_file);
    if (!in) throw CliError{kExitUsage, "cannot read sequence file '" + sequence_file + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    check(ig_sequence_from_json(ss.str().c_str(), &raw), "sequence file");
    label = "file";
  } else {
    check(ig_sequence_build(c.kind.c_str(), c.n, c.k, c.j_hz, &opts, &raw), "simulate --kind " + c.kind);
  }
  std::unique_ptr<ig_sequence, decltype(&ig_sequence_free)> seq(raw, ig_sequence_free);
  ig_sim_options sim{};
  sim.slice_refinement = c.refine;
  sim.report_dt = c.report_dt;
  sim.decompose = 0;
  ig_result* rraw = nullptr;
  if (!initial.empty() || !target.empty()) {
    if (initial.empty() || target.empty()) throw CliError{kExitUsage, "--initial and --target go together"};
    check(ig_simulate_operator(seq.get(), initial.c_str(), target.c_str(), &sim, &rraw), "simulate");
  } else {
    check(ig_simulate(seq.get(), &sim, &rraw), "simulate");
  }
  std::unique_ptr<ig_result, decltype(&ig_result_free)> res(rraw, ig_result_free);
  OwnedString json, profile, seq_json;
  check(ig_result_to_json(res.get(), &json.p), "result JSON");
  check(ig_result_profile_csv(res.get(), &profile.p), "profile CSV");
  check(ig_sequence_to_json(seq.get(), &seq_json.p), "sequence JSON");
  const std::string stem = "simulate_" + label + "_n" + std::to_string(c.n);
  const auto jp = out_path(c, stem + ".json");
  const auto pp = out_path(c, stem + "_profile.csv");
  const auto sp = out_path(c, stem + "_sequence.json");
  write_file(jp, json.str());
  write_file(pp, profile.str());
  write_file(sp, seq_json.str());
  if (c.format == "json") {
    std::cout << json.str() << '\n';
    return 0;
  }
  if (c.format == "csv") {
    std::cout << profile.str();
    return 0;
  }
  const auto doc = nlohmann::json::parse(json.str());
  std::cout << "sequence: " << doc.at("sequence").get<std::string>() << " (n = " << doc["chain"]["n"] << ")\n"
            << "duration = " << fixed(doc.at("duration").get<double>()) << " [1/(pi J)] = "
            << fixed(doc.at("duration_seconds").get<double>()) << " s at J = " << c.j_hz << " Hz\n";
  for (const auto& t : doc.at("transfers")) {
    std::cout << "  " << t.at("label").get<std::string>() << ": " << t.at("initial").get<std::string>() << " -> "
              << t.at("target").get<std::string>() << "  fidelity = " << fixed(t.at("fidelity").get<double>(), 9)
              << '\n';
  }
  std::cout << "norm drift = " << doc.at("norm_drift").get<double>() << '\n'
            << "wrote " << jp.string() << ", " << pp.string() << ", " << sp.string() << '\n';
  return 0;
}

int cmd_compare(const Config& c, bool no_simulate) {
  validate_format(c.format, {"table", "json", "csv"});
  if (c.n_min > c.n_max) {
    throw CliError{kExitUsage, "empty chain-length range [" + std::to_string(c.n_min) + ", " +
                                   std::to_string(c.n_max) + "]"};
  }
  ig_solver_options opts = solver_options(c);
  OwnedString text, json;
  check(ig_compare(c.n_min, c.n_max, c.j_hz, no_simulate ? 0 : 1, &opts, c.format.c_str(), &text.p), "compare");
  if (c.format == "json") {
    json.p = nullptr;
    write_file(out_path(c, "compare.json"), text.str());
  } else {
    check(ig_compare(c.n_min, c.n_max, c.j_hz, 0, &opts, "csv", &json.p), "compare");
    write_file(out_path(c, "compare.csv"), c.format == "csv" ? text.str() : json.str());
  }
  std::cout << text.str();
  return 0;
}

int cmd_verify(const Config& c) {
  validate_format(c.format, {"table", "json"});
  OwnedString text;
  int all = 0;
  check(ig_verify(c.format.c_str(), &all, &text.p), "verify");
  std::cout << text.str();
  if (c.format == "json") std::cout << '\n';
  return all ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  try {
    c = load_config(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }

  CLI::App app{"Geodesic pulse sequences for Ising spin chains"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--J", c.j_hz, "Coupling constant J in Hz (for seconds)")->check(CLI::PositiveNumber);
  app.add_option("--dt", c.dt, "Solver integration step in 1/(pi J)")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "Output directory");
  app.add_option("--format", c.format, "Output format: table, json or csv");

  auto* geo = app.add_subcommand("geodesic", "Solve one geodesic transfer block");
  geo->add_option("--step", c.step, "first, intermediate or last")
      ->check(CLI::IsMember({"first", "intermediate", "last"}));
  geo->add_option("--bracket", c.bracket, "Search interval LO HI for f in pi J")->expected(2);
  geo->add_option("--samples", c.samples, "Pulse samples in the CSV")->check(CLI::Range(2, 1000000));

  auto* pe = app.add_subcommand("pulse-export", "Export a geodesic control pulse u(t)");
  pe->add_option("--step", c.step, "first, intermediate or last")
      ->check(CLI::IsMember({"first", "intermediate", "last"}));
  pe->add_option("--bracket", c.bracket, "Search interval LO HI for f in pi J")->expected(2);
  pe->add_option("--samples", c.samples, "Number of samples")->check(CLI::Range(2, 1000000));

  std::string seq_file, initial, target;
  auto* sim = app.add_subcommand("simulate", "Build a sequence and simulate its transfers");
  sim->add_option("--kind", c.kind,
                  "conventional, geodesic-order, inept, inept-step, lambda-prep, lambda-step, lambda-collapse, "
                  "lambda-transfer, pair-encoding, pair-step");
  sim->add_option("--n", c.n, "Chain length")->check(CLI::Range(2, 12));
  sim->add_option("--k", c.k, "Step index for step kinds")->check(CLI::PositiveNumber);
  sim->add_option("--sequence", seq_file, "Simulate a sequence JSON file instead of building one");
  sim->add_option("--initial", initial, "Initial operator, e.g. I1x");
  sim->add_option("--target", target, "Target operator");
  sim->add_option("--report-dt", c.report_dt, "Profile spacing in 1/(pi J); 0 disables")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--refine", c.refine, "Slices per pulse sample")->check(CLI::PositiveNumber);

  bool no_simulate = false;
  std::string range;
  auto* cmp = app.add_subcommand("compare", "Durations and fidelities of the transfer methods");
  cmp->add_option("--n-min", c.n_min, "Smallest chain length");
  cmp->add_option("--n-max", c.n_max, "Largest chain length");
  cmp->add_option("--n-range", range, "Range LO-HI (overrides --n-min/--n-max)");
  cmp->add_flag("--no-simulate", no_simulate, "Report durations only");

  auto* ver = app.add_subcommand("verify", "Run the invariant suite; exit 0 only if all checks pass");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (geo->parsed()) return cmd_geodesic(c);
    if (pe->parsed()) return cmd_pulse_export(c);
    if (sim->parsed()) return cmd_simulate(c, seq_file, initial, target);
    if (cmp->parsed()) {
      if (!range.empty()) {
        const auto dash = range.find('-');
        try {
          if (dash == std::string::npos) throw std::invalid_argument(range);
          c.n_min = std::stoi(range.substr(0, dash));
          c.n_max = std::stoi(range.substr(dash + 1));
        } catch (const std::exception&) {
          throw CliError{kExitUsage, "--n-range expects LO-HI, got '" + range + "'"};
        }
      }
      return cmd_compare(c, no_simulate);
    }
    if (ver->parsed()) return cmd_verify(c);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
  return kExitUsage;
}
