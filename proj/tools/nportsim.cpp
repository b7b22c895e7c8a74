// Copyright 2026 The nportsim Authors
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

// nportsim: command-line front end over the nport C API.
//
//   nportsim pattern --ports 3 --input fock:3
//   nportsim noise-surface --ports 2:6 --excess 0:8
//   nportsim verify prefactors
//   nportsim sample --ports 2 --input fock:2 --phi 1.5707963267948966 --seed 7

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nport/nport.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// Carries a usage or input error to main, which reports it as JSON.
struct UsageError {
  std::string code;
  std::string message;
};

[[noreturn]] void usage(std::string message) { throw UsageError{"usage", std::move(message)}; }

void check(nport_status status) {
  if (status != NPORT_OK) throw UsageError{nport_status_name(status), nport_last_error()};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

ordered_json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

struct ExperimentDeleter {
  void operator()(nport_experiment* e) const { nport_experiment_free(e); }
};
using ExperimentPtr = std::unique_ptr<nport_experiment, ExperimentDeleter>;

struct CommonOptions {
  std::string config;
  std::optional<int> ports;
  std::string input;
  std::optional<int> phase_points;
  std::string convention;
  std::string detector;
  std::string loss;
  std::optional<std::uint64_t> seed;
  std::optional<int> photon_cap;
  std::string out = "-";
  std::string format;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "Flat JSON experiment file; flags override it");
  cmd->add_option("--ports", o.ports, "Number of N-port channels");
  cmd->add_option("--input", o.input,
                  "fock:n | excess:E | coherent:mean | noon:n | superposition:file | mixed:file");
  cmd->add_option("--phase-points", o.phase_points, "Odd grid size");
  cmd->add_option("--convention", o.convention, "reduced | detector (default reduced)")
      ->check(CLI::IsMember({"reduced", "detector"}));
  cmd->add_option("--detector", o.detector, "number | threshold")
      ->check(CLI::IsMember({"number", "threshold"}));
  cmd->add_option("--loss", o.loss, "Per-channel transmission amplitudes t1,...,tN");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--photon-cap", o.photon_cap, "Photon cap");
  cmd->add_option("--out", o.out, "Output path, - for stdout");
  cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
}

unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<double> parse_loss(const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    double value = 0.0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), value);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size()) {
      usage("bad --loss entry '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) usage("--loss needs at least one value");
  return out;
}

// Merged config document plus the directory input files resolve against.
struct ResolvedSpec {
  ordered_json doc;
  std::string base_dir;
};

ResolvedSpec resolve(const CommonOptions& o) {
  ResolvedSpec r;
  r.doc = ordered_json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) usage("cannot read config file '" + o.config + "'");
    try {
      r.doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      usage("config file '" + o.config + "' is not valid JSON: " + e.what());
    }
    if (!r.doc.is_object()) usage("config file must hold a JSON object");
    r.base_dir = std::filesystem::path(o.config).parent_path().string();
  }
  if (o.ports) r.doc["ports"] = *o.ports;
  if (!o.input.empty()) {
    r.doc["input"] = o.input;
    r.doc.erase("superposition");
    r.doc.erase("mixed");
    // Files named on the command line are relative to the working directory.
    r.base_dir.clear();
  }
  if (o.phase_points) r.doc["phase_points"] = *o.phase_points;
  if (!o.convention.empty()) r.doc["convention"] = o.convention;
  if (!r.doc.contains("convention")) r.doc["convention"] = "reduced";
  if (!o.detector.empty()) r.doc["detector"] = o.detector;
  if (!o.loss.empty()) r.doc["loss"] = parse_loss(o.loss);
  if (o.seed) r.doc["seed"] = *o.seed;
  if (o.photon_cap) r.doc["photon_cap"] = *o.photon_cap;
  return r;
}

ExperimentPtr make_experiment(const ResolvedSpec& r) {
  nport_experiment* raw = nullptr;
  const std::string text = r.doc.dump();
  check(nport_experiment_from_json(text.c_str(), r.base_dir.empty() ? nullptr : r.base_dir.c_str(),
                                   &raw));
  return ExperimentPtr(raw);
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) usage("cannot write '" + path + "'");
  out << text;
}

std::string detector_of(const ResolvedSpec& r) {
  return r.doc.contains("detector") ? r.doc.at("detector").get<std::string>() : "number";
}

int run_pattern(const CommonOptions& o) {
  const ResolvedSpec r = resolve(o);
  const ExperimentPtr experiment = make_experiment(r);
  nport_noise_point* points = nullptr;
  std::size_t count = 0;
  check(nport_scan(experiment.get(), 0, &points, &count));
  std::unique_ptr<nport_noise_point, decltype(&nport_points_free)> owned(points,
                                                                        nport_points_free);
  const std::string convention = r.doc.at("convention").get<std::string>();
  const std::string detector = detector_of(r);
  std::string text;
  if (o.format == "json") {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < count; ++i) {
      const auto& p = points[i];
      rows.push_back({{"phi", p.phi},
                      {"mean", p.mean},
                      {"second_moment", p.second_moment},
                      {"variance", p.variance},
                      {"slope", p.slope},
                      {"delta_phi", json_number(p.delta_phi)},
                      {"convention", convention},
                      {"detector", detector}});
    }
    text = rows.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "phi,mean,second_moment,variance,slope,delta_phi,convention,detector\n";
    for (std::size_t i = 0; i < count; ++i) {
      const auto& p = points[i];
      csv << format_number(p.phi) << ',' << format_number(p.mean) << ','
          << format_number(p.second_moment) << ',' << format_number(p.variance) << ','
          << format_number(p.slope) << ',' << format_number(p.delta_phi) << ',' << convention
          << ',' << detector << '\n';
    }
    text = csv.str();
  }
  emit(o.out, text);
  return kExitOk;
}

// "a:b" (inclusive), "a,b,c" or a single value.
std::vector<int> parse_range(const std::string& text, const char* flag) {
  std::vector<int> out;
  auto to_int = [&](std::string_view s) {
    int value = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), value);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
      usage(std::string("bad ") + flag + " value '" + text + "'");
    }
    return value;
  };
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const int lo = to_int(std::string_view(text).substr(0, colon));
    const int hi = to_int(std::string_view(text).substr(colon + 1));
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) out.push_back(to_int(item));
  }
  if (out.empty()) usage(std::string(flag) + " range is empty");
  return out;
}

struct SurfaceOptions {
  std::string ports = "2:6";
  std::string excess = "0:8";
  std::string convention = "reduced";
  int photon_cap = 24;
  bool coherent = false;
  std::string out = "-";
  std::string format = "csv";
  unsigned threads = 0;
};

int run_surface(const SurfaceOptions& o) {
  const std::vector<int> ports = parse_range(o.ports, "--ports");
  const std::vector<int> excess = parse_range(o.excess, "--excess");
  const nport_convention convention =
      o.convention == "detector" ? NPORT_CONVENTION_DETECTOR : NPORT_CONVENTION_REDUCED;

  struct Sheet {
    std::string name;
    nport_family family;
    nport_convention convention;
  };
  std::vector<Sheet> sheets = {{"fock", NPORT_FAMILY_FOCK, convention},
                               {"excess", NPORT_FAMILY_EXCESS, convention},
                               {"shot", NPORT_FAMILY_SHOT, convention}};
  // The excess sheet under the other convention makes the discrepancy visible.
  if (convention == NPORT_CONVENTION_REDUCED) {
    sheets.push_back({"excess_detector", NPORT_FAMILY_EXCESS, NPORT_CONVENTION_DETECTOR});
  }
  if (o.coherent) sheets.push_back({"coherent", NPORT_FAMILY_COHERENT, convention});

  struct Row {
    int n;
    int e;
    std::string sheet;
    bool available;
    double value;
  };
  std::vector<Row> rows;
  for (const Sheet& sheet : sheets) {
    nport_surface_cell* cells = nullptr;
    std::size_t count = 0;
    check(nport_noise_surface(ports.data(), ports.size(), excess.data(), excess.size(),
                              sheet.family, sheet.convention, o.photon_cap,
                              worker_count(o.threads), &cells, &count));
    std::unique_ptr<nport_surface_cell, decltype(&nport_cells_free)> owned(cells,
                                                                          nport_cells_free);
    for (std::size_t i = 0; i < count; ++i) {
      rows.push_back({cells[i].ports, cells[i].excess, sheet.name, cells[i].available != 0,
                      cells[i].log10_delta_phi});
    }
  }
  std::string text;
  if (o.format == "json") {
    ordered_json doc = ordered_json::array();
    for (const Row& row : rows) {
      ordered_json value = nullptr;
      if (row.available) value = json_number(row.value);
      doc.push_back({{"N", row.n}, {"E", row.e}, {"sheet", row.sheet}, {"log10_delta_phi", value}});
    }
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "N,E,sheet,log10_delta_phi\n";
    for (const Row& row : rows) {
      csv << row.n << ',' << row.e << ',' << row.sheet << ','
          << (row.available ? format_number(row.value) : "na") << '\n';
    }
    text = csv.str();
  }
  emit(o.out, text);
  return kExitOk;
}

int run_verify(const std::string& suite, const std::string& out) {
  char* report = nullptr;
  int all_pass = 0;
  check(nport_verify(suite.c_str(), &report, &all_pass));
  const std::string text = std::string(report) + "\n";
  nport_string_free(report);
  emit(out, text);
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int run_sample(const CommonOptions& o, double phi, std::uint64_t trials) {
  const ResolvedSpec r = resolve(o);
  if (!r.doc.contains("seed")) usage("sample needs --seed (or \"seed\" in the config)");
  if (trials == 0) usage("--trials must be at least 1");
  const ExperimentPtr experiment = make_experiment(r);
  nport_sample_report report{};
  const auto seed = r.doc.at("seed").get<std::uint64_t>();
  check(nport_experiment_sample(experiment.get(), phi, trials, seed, worker_count(o.threads),
                                &report));
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "trials,phi,coincidence_rate,presence_rate,standard_error,presence_standard_error,"
           "seed\n"
        << report.trials << ',' << format_number(phi) << ','
        << format_number(report.coincidence_rate) << ',' << format_number(report.presence_rate)
        << ',' << format_number(report.standard_error) << ','
        << format_number(report.presence_standard_error) << ',' << report.seed << '\n';
    emit(o.out, csv.str());
    return kExitOk;
  }
  ordered_json doc;
  doc["trials"] = report.trials;
  doc["phi"] = phi;
  doc["coincidence_rate"] = report.coincidence_rate;
  doc["presence_rate"] = report.presence_rate;
  doc["standard_error"] = report.standard_error;
  doc["presence_standard_error"] = report.presence_standard_error;
  doc["seed"] = report.seed;
  emit(o.out, doc.dump(2) + "\n");
  return kExitOk;
}

void report_error(const std::string& code, const std::string& message) {
  ordered_json doc;
  doc["error"] = {{"code", code}, {"message", message}};
  std::cerr << doc.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nportsim: two-path interferometer with a balanced N-port analyzer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nport_version()));

  CommonOptions pattern;
  auto* pattern_cmd = app.add_subcommand("pattern", "Coincidence pattern and phase spread scan");
  add_common(pattern_cmd, pattern);

  SurfaceOptions surface;
  auto* surface_cmd =
      app.add_subcommand("noise-surface", "Minimum phase spread over (N, E) cells");
  surface_cmd->add_option("--ports", surface.ports, "N range, e.g. 2:6 or 2,3,5");
  surface_cmd->add_option("--excess", surface.excess, "E range, e.g. 0:8");
  surface_cmd->add_option("--convention", surface.convention, "reduced | detector")
      ->check(CLI::IsMember({"reduced", "detector"}));
  surface_cmd->add_option("--photon-cap", surface.photon_cap, "Photon cap for simulated cells");
  surface_cmd->add_flag("--coherent", surface.coherent, "Add a coherent-state sheet");
  surface_cmd->add_option("--out", surface.out, "Output path, - for stdout");
  surface_cmd->add_option("--format", surface.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  surface_cmd->add_option("--threads", surface.threads, "Worker threads (0 = hardware)");

  std::string suite;
  std::string verify_out = "-";
  auto* verify_cmd = app.add_subcommand("verify", "Run a built-in verification suite");
  verify_cmd->add_option("suite", suite, "prefactors | patterns | noon | loss | conventions | "
                                         "threshold | all")
      ->required();
  verify_cmd->add_option("--out", verify_out, "Output path, - for stdout");

  CommonOptions sample;
  double phi = 0.0;
  std::uint64_t trials = 100000;
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo click sampling at one phase");
  add_common(sample_cmd, sample);
  sample_cmd->add_option("--phi", phi, "Phase in radians");
  sample_cmd->add_option("--trials", trials, "Number of trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kExitUsage;
  }

  try {
    if (*pattern_cmd) return run_pattern(pattern);
    if (*surface_cmd) return run_surface(surface);
    if (*verify_cmd) return run_verify(suite, verify_out);
    if (sample.format.empty()) sample.format = "json";
    return run_sample(sample, phi, trials);
  } catch (const UsageError& e) {
    report_error(e.code, e.message);
    return kExitUsage;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kExitUsage;
  }
}
