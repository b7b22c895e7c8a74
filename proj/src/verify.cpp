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

#include "nport/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "nport/detectors.hpp"
#include "nport/error.hpp"
#include "nport/experiment.hpp"
#include "nport/networks.hpp"
#include "nport/observables.hpp"
#include "nport/phase_estimation.hpp"
#include "nport/reference.hpp"

namespace nport {

namespace {

constexpr double kPi = std::numbers::pi;

class Collector {
 public:
  explicit Collector(VerificationReport& report) : report_(report) {}

  void check(std::string name, double expected, double actual, double tolerance) {
    const bool pass = std::isfinite(actual) && std::abs(actual - expected) <= tolerance;
    report_.checks.push_back({std::move(name), expected, actual, tolerance, pass});
  }

  // Records the worst deviation over a sweep as a single check.
  void worst(std::string name, const std::vector<std::pair<double, double>>& pairs,
             double tolerance) {
    double expected = 0.0;
    double actual = 0.0;
    double gap = -1.0;
    for (const auto& [e, a] : pairs) {
      const double d = std::isfinite(a) ? std::abs(a - e) : INFINITY;
      if (d > gap) {
        gap = d;
        expected = e;
        actual = a;
      }
    }
    check(std::move(name), expected, actual, tolerance);
  }

 private:
  VerificationReport& report_;
};

Experiment fock_experiment(int ports, int photons, MomentConvention convention) {
  ExperimentSpec spec;
  spec.ports = ports;
  spec.input = FockInput{photons};
  spec.convention = convention;
  return Experiment(spec);
}

std::string label(const char* what, int ports, int photons) {
  return std::string(what) + " N=" + std::to_string(ports) + " n=" + std::to_string(photons);
}

void prefactors(Collector& out) {
  const int numerators[] = {1, 1, 3, 3, 5};
  const int denominators[] = {4, 18, 256, 1250, 10368};
  for (int ports = 2; ports <= 6; ++ports) {
    const auto exact = fock_prefactor_rational(ports);
    const double expected = static_cast<double>(numerators[ports - 2]) / denominators[ports - 2];
    // Compare the reduced fraction itself; the double is reported for display.
    const bool same = exact && exact->numerator == static_cast<unsigned>(numerators[ports - 2]) &&
                      exact->denominator == static_cast<unsigned>(denominators[ports - 2]);
    out.check("prefactor N=" + std::to_string(ports), expected,
              same ? exact->to_double() : NAN, 0.0);
  }
}

void patterns(Collector& out) {
  const PhaseGrid grid(49);
  for (int ports = 2; ports <= 6; ++ports) {
    const Experiment e = fock_experiment(ports, ports, MomentConvention::kDetectorStatistics);
    const PatternFormula f = fock_pattern(ports);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < grid.size(); ++i) {
      pairs.emplace_back(f.value(grid.at(i)), e.moments(grid.at(i)).mean);
    }
    out.worst(label("fock pattern", ports, ports), pairs, 1e-10);
  }
  const std::pair<int, int> excess_cases[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}};
  for (const auto& [ports, excess] : excess_cases) {
    const Experiment e =
        fock_experiment(ports, ports + excess, MomentConvention::kDetectorStatistics);
    const PatternFormula f = excess_pattern(ports, excess);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < grid.size(); ++i) {
      pairs.emplace_back(f.value(grid.at(i)), e.moments(grid.at(i)).mean);
    }
    out.worst(label("excess pattern", ports, ports + excess), pairs, 1e-10);
  }
  for (int ports = 2; ports <= 4; ++ports) {
    const Experiment e = fock_experiment(ports, ports - 1, MomentConvention::kDetectorStatistics);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < grid.size(); ++i) pairs.emplace_back(0.0, e.moments(grid.at(i)).mean);
    out.worst(label("negative excess", ports, ports - 1), pairs, 0.0);
  }
}

void noon(Collector& out) {
  const PhaseGrid grid(49);
  for (int ports = 2; ports <= 5; ++ports) {
    ExperimentSpec spec;
    spec.ports = ports;
    spec.input = NoonInput{ports};
    spec.convention = MomentConvention::kReducedOperator;
    const Experiment e(spec);
    std::vector<std::pair<double, double>> means;
    std::vector<std::pair<double, double>> variances;
    for (int i = 0; i < grid.size(); ++i) {
      const double phi = grid.at(i);
      const auto closed = noon_signal_and_variance(ports, phi);
      const MomentResult m = e.moments(phi);
      means.emplace_back(closed.mean, m.mean);
      variances.emplace_back(closed.variance, m.variance);
    }
    out.worst(label("noon mean", ports, ports), means, 1e-10);
    out.worst(label("noon variance", ports, ports), variances, 1e-10);
    std::vector<std::pair<double, double>> spreads;
    for (const NoisePoint& p : scan(e, grid)) {
      if (p.status == PointStatus::kRegular) spreads.emplace_back(1.0 / ports, p.delta_phi);
    }
    out.worst(label("noon delta_phi", ports, ports), spreads, 1e-9);
  }
}

void loss(Collector& out) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int photons = 2 + trial % 2;
    const double phi = 2.0 * kPi * unit(rng);
    std::vector<Amplitude> tau;
    for (int j = 0; j < 2; ++j) {
      const double magnitude = std::sqrt(0.05 + 0.95 * unit(rng));
      tau.push_back(std::polar(magnitude, 2.0 * kPi * unit(rng)));
    }
    const LossSpec spec(tau);
    const Experiment e = fock_experiment(2, photons, MomentConvention::kDetectorStatistics);
    const MixedEnsemble outputs = e.output_states(phi);
    const PureState& out_state = outputs.components().front().state;
    const double lossless = coincidence_moments_detector(out_state).mean;
    out.check("ancilla vs scaled #" + std::to_string(trial) + " n=" + std::to_string(photons),
              lossy_signal_scaled(lossless, spec), lossy_signal_ancilla(out_state, spec), 1e-10);
  }
  for (int photons = 2; photons <= 3; ++photons) {
    ExperimentSpec spec;
    spec.ports = 2;
    spec.input = FockInput{photons};
    spec.convention = MomentConvention::kReducedOperator;
    const Experiment lossless(spec);
    spec.loss = LossSpec({std::sqrt(0.7), Amplitude(0.0, std::sqrt(0.6))});
    const Experiment lossy(spec);
    const PhaseGrid grid(49);
    out.check("delta_phi invariant under loss n=" + std::to_string(photons),
              min_phase_spread(lossless, grid).delta_phi_min,
              min_phase_spread(lossy, grid).delta_phi_min, 1e-9);
  }
}

void conventions(Collector& out) {
  const PhaseGrid grid(49);
  auto compare = [&](const std::string& name, const Experiment& e) {
    std::vector<std::pair<double, double>> reduced;
    std::vector<std::pair<double, double>> expanded;
    for (int i = 0; i < grid.size(); ++i) {
      const double phi = grid.at(i);
      const double detector = e.moments(phi, MomentConvention::kDetectorStatistics).mean;
      reduced.emplace_back(detector, e.moments(phi, MomentConvention::kReducedOperator).mean);
      double cross = 0.0;
      const MixedEnsemble arms = e.arm_states(phi);
      for (const auto& c : arms.components()) {
        cross += c.weight * first_moment_crosscheck(c.state, e.ports());
      }
      expanded.emplace_back(detector, cross);
    }
    out.worst(name + " detector vs reduced", reduced, 1e-11);
    out.worst(name + " detector vs expanded", expanded, 1e-11);
  };
  for (int ports = 2; ports <= 4; ++ports) {
    for (int photons = ports - 1; photons <= ports + 2; ++photons) {
      compare(label("fock", ports, photons),
              fock_experiment(ports, photons, MomentConvention::kDetectorStatistics));
    }
  }
  ExperimentSpec spec;
  spec.ports = 2;
  spec.convention = MomentConvention::kDetectorStatistics;
  const double third = 1.0 / std::sqrt(3.0);
  spec.input = SuperpositionInput{{{2, third}, {3, third}, {4, third}}};
  compare("superposition 2+3+4", Experiment(spec));
  spec.input = MixedInput{{{1.0 / 3.0, 2}, {1.0 / 3.0, 3}, {1.0 / 3.0, 4}}};
  compare("mixed 2,3,4", Experiment(spec));
  for (int ports = 2; ports <= 4; ++ports) {
    spec.ports = ports;
    spec.input = NoonInput{ports};
    compare(label("noon", ports, ports), Experiment(spec));
  }
}

void threshold(Collector& out) {
  const PhaseGrid grid(101);
  for (int photons = 2; photons <= 4; ++photons) {
    const Experiment e = fock_experiment(2, photons, MomentConvention::kDetectorStatistics);
    double worst_order = 0.0;
    double zero_mismatch = 0.0;
    std::vector<std::pair<double, double>> equal;
    for (int i = 0; i < grid.size(); ++i) {
      const NumberDistribution d = e.output_distribution(grid.at(i));
      const double p = presence_expectation(d);
      const double mean = coincidence_moments_detector(d).mean;
      worst_order = std::max({worst_order, -p, p - mean});
      if ((p < 1e-12) != (mean < 1e-12)) zero_mismatch += 1.0;
      equal.emplace_back(mean, p);
    }
    out.check(label("presence <= coincidence", 2, photons), 0.0, std::max(worst_order, 0.0),
              1e-15);
    out.check(label("zero sets agree", 2, photons), 0.0, zero_mismatch, 0.0);
    if (photons == 2) out.worst(label("presence equals coincidence", 2, photons), equal, 1e-12);
  }
}

using SuiteFn = void (*)(Collector&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"prefactors", prefactors}, {"patterns", patterns}, {"noon", noon},
      {"loss", loss},             {"conventions", conventions}, {"threshold", threshold},
  };
  return table;
}

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["suite"] = suite;
  doc["pass"] = all_pass();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json row;
    row["name"] = c.name;
    row["expected"] = c.expected;
    // NaN and inf are not JSON numbers.
    if (std::isfinite(c.actual)) {
      row["actual"] = c.actual;
    } else {
      row["actual"] = nullptr;
    }
    row["tol"] = c.tolerance;
    row["pass"] = c.pass;
    doc["checks"].push_back(std::move(row));
  }
  return doc.dump(2);
}

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : suite_table()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

VerificationReport run_verification(std::string_view suite) {
  VerificationReport report;
  report.suite = std::string(suite);
  Collector out(report);
  bool found = false;
  for (const auto& [name, fn] : suite_table()) {
    if (suite == "all" || suite == name) {
      fn(out);
      found = true;
    }
  }
  if (!found) fail(ErrorCode::kInvalidArgument, "unknown verification suite '" + report.suite + "'");
  return report;
}

}  // namespace nport
