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

#include "nport/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <locale>
#include <numbers>
#include <map>
#include <sstream>

#include <json.hpp>

#include "nport/error.hpp"
#include "nport/networks.hpp"

namespace nport {

using nlohmann::json;

std::string_view to_string(DetectorKind kind) {
  return kind == DetectorKind::kThreshold ? "threshold" : "number";
}

std::optional<DetectorKind> parse_detector(std::string_view text) {
  if (text == "number") return DetectorKind::kNumberResolving;
  if (text == "threshold") return DetectorKind::kThreshold;
  return std::nullopt;
}

namespace {

[[noreturn]] void bad_spec(const std::string& message) {
  fail(ErrorCode::kInvalidArgument, message);
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    bad_spec("invalid integer for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    bad_spec("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_spec("cannot open input file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad_spec("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

SuperpositionInput superposition_from_json(const json& array) {
  if (!array.is_array()) bad_spec("superposition input must be a JSON array of {J, re, im}");
  SuperpositionInput out;
  for (const auto& item : array) {
    if (!item.is_object() || !item.contains("J")) bad_spec("superposition entry needs J");
    const int j = item.at("J").get<int>();
    const double re = item.value("re", 0.0);
    const double im = item.value("im", 0.0);
    out.amplitudes.emplace_back(j, Amplitude{re, im});
  }
  return out;
}

MixedInput mixed_from_json(const json& array) {
  if (!array.is_array()) bad_spec("mixed input must be a JSON array of {weight, fock}");
  MixedInput out;
  for (const auto& item : array) {
    if (!item.is_object() || !item.contains("weight") || !item.contains("fock")) {
      bad_spec("mixed entry needs weight and fock");
    }
    out.components.emplace_back(item.at("weight").get<double>(), item.at("fock").get<int>());
  }
  return out;
}

json superposition_to_json(const SuperpositionInput& in) {
  json array = json::array();
  for (const auto& [j, c] : in.amplitudes) {
    array.push_back({{"J", j}, {"re", c.real()}, {"im", c.imag()}});
  }
  return array;
}

json mixed_to_json(const MixedInput& in) {
  json array = json::array();
  for (const auto& [w, j] : in.components) array.push_back({{"weight", w}, {"fock", j}});
  return array;
}

PureState pad_modes(const PureState& state, std::size_t total) {
  PureState::Terms terms;
  for (const auto& [occ, amp] : state.terms()) {
    OccupationVector wide(total);
    for (std::size_t j = 0; j < occ.modes(); ++j) wide.set(j, occ[j]);
    terms.emplace(wide, amp);
  }
  return PureState(total, std::move(terms), state.photon_cap());
}

// Single-arm state sum_J c_J |J, 0> on (alpha, beta).
PureState alpha_state(const std::vector<std::pair<int, Amplitude>>& amplitudes, int cap) {
  PureState::Terms terms;
  for (const auto& [j, c] : amplitudes) terms[OccupationVector{j, 0}] += c;
  return PureState(2, std::move(terms), cap);
}

}  // namespace

InputSpec parse_input(std::string_view text, const std::filesystem::path& base_dir) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    bad_spec("input must look like family:value, got '" + std::string(text) + "'");
  }
  const std::string_view family = text.substr(0, colon);
  const std::string_view value = text.substr(colon + 1);
  if (family == "fock") return FockInput{parse_int(value, "fock photon number")};
  if (family == "excess") return ExcessInput{parse_int(value, "photon excess")};
  if (family == "coherent") return CoherentInput{parse_double(value, "coherent mean")};
  if (family == "noon") return NoonInput{parse_int(value, "NOON photon number")};
  if (family == "superposition" || family == "mixed") {
    std::filesystem::path path(value);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    const json data = read_json_file(path);
    if (family == "superposition") return superposition_from_json(data);
    return mixed_from_json(data);
  }
  bad_spec("unknown input family '" + std::string(family) + "'");
}

ExperimentSpec parse_experiment_json(std::string_view json_text,
                                     const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    bad_spec(std::string("malformed experiment JSON: ") + e.what());
  }
  if (!doc.is_object()) bad_spec("experiment JSON must be an object");

  static const char* const kKnownKeys[] = {"ports",    "input",    "phase_points",
                                           "convention", "loss",   "detector",
                                           "seed",     "photon_cap", "superposition",
                                           "mixed"};
  for (const auto& [key, unused] : doc.items()) {
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
      bad_spec("unknown experiment key '" + key + "'");
    }
  }

  ExperimentSpec spec;
  try {
    if (doc.contains("ports")) spec.ports = doc.at("ports").get<int>();
    if (doc.contains("input")) {
      const std::string input = doc.at("input").get<std::string>();
      if (input == "superposition" && doc.contains("superposition")) {
        spec.input = superposition_from_json(doc.at("superposition"));
      } else if (input == "mixed" && doc.contains("mixed")) {
        spec.input = mixed_from_json(doc.at("mixed"));
      } else {
        spec.input = parse_input(input, base_dir);
      }
    } else {
      bad_spec("experiment JSON needs an input");
    }
    if (doc.contains("phase_points")) spec.phase_points = doc.at("phase_points").get<int>();
    if (doc.contains("convention")) {
      const auto text = doc.at("convention").get<std::string>();
      spec.convention = parse_convention(text);
      if (!spec.convention) bad_spec("unknown convention '" + text + "'");
    }
    if (doc.contains("loss")) {
      std::vector<Amplitude> tau;
      for (const auto& item : doc.at("loss")) {
        if (item.is_array() && item.size() == 2) {
          tau.emplace_back(item[0].get<double>(), item[1].get<double>());
        } else {
          tau.emplace_back(item.get<double>(), 0.0);
        }
      }
      spec.loss = LossSpec(std::move(tau));
    }
    if (doc.contains("detector")) {
      const auto text = doc.at("detector").get<std::string>();
      auto kind = parse_detector(text);
      if (!kind) bad_spec("unknown detector '" + text + "'");
      spec.detector = *kind;
    }
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("photon_cap")) spec.photon_cap = doc.at("photon_cap").get<int>();
  } catch (const json::exception& e) {
    bad_spec(std::string("bad experiment field: ") + e.what());
  }
  return spec;
}

std::string experiment_to_json(const ExperimentSpec& spec) {
  json doc;
  doc["ports"] = spec.ports;
  std::visit(
      [&](const auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, FockInput>) {
          doc["input"] = "fock:" + std::to_string(in.photons);
        } else if constexpr (std::is_same_v<T, ExcessInput>) {
          doc["input"] = "excess:" + std::to_string(in.excess);
        } else if constexpr (std::is_same_v<T, CoherentInput>) {
          std::ostringstream s;
          s.imbue(std::locale::classic());
          s.precision(17);
          s << "coherent:" << in.mean;
          doc["input"] = s.str();
        } else if constexpr (std::is_same_v<T, NoonInput>) {
          doc["input"] = "noon:" + std::to_string(in.photons);
        } else if constexpr (std::is_same_v<T, SuperpositionInput>) {
          doc["input"] = "superposition";
          doc["superposition"] = superposition_to_json(in);
        } else {
          doc["input"] = "mixed";
          doc["mixed"] = mixed_to_json(in);
        }
      },
      spec.input);
  if (spec.phase_points) doc["phase_points"] = *spec.phase_points;
  if (spec.convention) doc["convention"] = std::string(to_string(*spec.convention));
  if (spec.loss) {
    json tau = json::array();
    for (std::size_t j = 0; j < spec.loss->channels(); ++j) {
      const Amplitude t = spec.loss->transmission(j);
      if (t.imag() == 0.0) {
        tau.push_back(t.real());
      } else {
        tau.push_back({t.real(), t.imag()});
      }
    }
    doc["loss"] = tau;
  }
  doc["detector"] = std::string(to_string(spec.detector));
  if (spec.seed) doc["seed"] = *spec.seed;
  doc["photon_cap"] = spec.photon_cap;
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Experiment

Experiment::Experiment(ExperimentSpec spec) : spec_(std::move(spec)), cap_(spec_.photon_cap) {
  if (spec_.ports < 2) bad_spec("ports must be >= 2");
  if (static_cast<std::size_t>(spec_.ports) > kMaxModes) {
    fail(ErrorCode::kDimension, "at most " + std::to_string(kMaxModes) + " ports supported");
  }
  if (!spec_.convention) bad_spec("a moment convention must be chosen (reduced or detector)");
  if (cap_ < 0) bad_spec("photon cap must be non-negative");
  if (spec_.loss && spec_.loss->channels() != static_cast<std::size_t>(spec_.ports)) {
    fail(ErrorCode::kDimension, "loss list needs one transmission per port");
  }

  std::vector<std::pair<int, Amplitude>> amplitudes;
  std::map<int, double> mixed;
  std::visit(
      [&](const auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, FockInput>) {
          if (in.photons < 0) bad_spec("negative photon number");
          amplitudes.emplace_back(in.photons, 1.0);
        } else if constexpr (std::is_same_v<T, ExcessInput>) {
          if (spec_.ports + in.excess < 0) bad_spec("excess gives a negative photon number");
          amplitudes.emplace_back(spec_.ports + in.excess, 1.0);
        } else if constexpr (std::is_same_v<T, CoherentInput>) {
          for (const auto& [j, w] : coherent_weights(in.mean)) {
            amplitudes.emplace_back(j, std::sqrt(w));
          }
          // The Poisson truncation point sets the cap for coherent input.
          cap_ = std::max(cap_, amplitudes.back().first);
        } else if constexpr (std::is_same_v<T, NoonInput>) {
          if (in.photons < 0) bad_spec("negative photon number");
          max_photons_ = in.photons;
        } else if constexpr (std::is_same_v<T, SuperpositionInput>) {
          if (in.amplitudes.empty()) bad_spec("empty superposition");
          double total = 0.0;
          for (const auto& [j, c] : in.amplitudes) {
            if (j < 0) bad_spec("negative photon number in superposition");
            total += std::norm(c);
          }
          if (std::abs(total - 1.0) > kNormTolerance) {
            fail(ErrorCode::kNormalization, "superposition amplitudes are not normalized");
          }
          amplitudes = in.amplitudes;
        } else {
          if (in.components.empty()) bad_spec("empty mixture");
          double total = 0.0;
          for (const auto& [w, j] : in.components) {
            if (j < 0 || !(w > 0.0 && w <= 1.0)) bad_spec("mixture needs weights in (0,1], J >= 0");
            mixed[j] += w;
            total += w;
          }
          if (std::abs(total - 1.0) > kNormTolerance) {
            fail(ErrorCode::kNormalization, "mixture weights do not sum to 1");
          }
        }
      },
      spec_.input);

  for (const auto& [j, c] : amplitudes) {
    weights_[j] += std::norm(c);
    max_photons_ = std::max(max_photons_, j);
  }
  for (const auto& [j, w] : mixed) {
    weights_[j] += w;
    max_photons_ = std::max(max_photons_, j);
  }
  if (max_photons_ > cap_) {
    fail(ErrorCode::kCapacity, "input holds " + std::to_string(max_photons_) +
                                   " photons, above the cap of " + std::to_string(cap_));
  }

  if (!amplitudes.empty()) {
    pure_input_ = alpha_state(amplitudes, cap_);
  }
  for (const auto& [j, w] : mixed) {
    mixed_inputs_.emplace_back(w, alpha_state({{j, Amplitude{1.0, 0.0}}}, cap_));
  }

  if (spec_.phase_points) {
    const int m = *spec_.phase_points;
    if (m < 1 || m % 2 == 0) bad_spec("phase_points must be odd");
    if (m < 2 * max_photons_ + 1) {
      fail(ErrorCode::kAliasing, "phase grid of " + std::to_string(m) +
                                     " points cannot resolve a pattern of degree " +
                                     std::to_string(max_photons_));
    }
  }
}

int Experiment::default_phase_points() const noexcept {
  return 2 * std::max(cap_, max_photons_) + 1;
}

int Experiment::phase_points() const noexcept {
  return spec_.phase_points.value_or(default_phase_points());
}

MixedEnsemble Experiment::arm_states(double phi) const {
  if (const auto* noon = std::get_if<NoonInput>(&spec_.input)) {
    const int n = noon->photons;
    if (n == 0) return MixedEnsemble::pure(PureState::vacuum(2, cap_));
    PureState::Terms terms;
    terms.emplace(OccupationVector{n, 0}, Amplitude{1.0 / std::numbers::sqrt2, 0.0});
    terms.emplace(OccupationVector{0, n}, std::polar(1.0 / std::numbers::sqrt2, n * phi));
    return MixedEnsemble::pure(PureState(2, std::move(terms), cap_));
  }
  const ModeUnitary splitter = balanced_splitter_with_phase(phi);
  if (pure_input_) return MixedEnsemble::pure(evolve(*pure_input_, splitter));
  std::vector<MixedEnsemble::Component> parts;
  for (const auto& [w, state] : mixed_inputs_) parts.push_back({w, evolve(state, splitter)});
  return MixedEnsemble(std::move(parts));
}

MixedEnsemble Experiment::output_states(double phi) const {
  const auto ports = static_cast<std::size_t>(spec_.ports);
  if (std::holds_alternative<NoonInput>(spec_.input)) {
    const PureState arm = arm_states(phi).components().front().state;
    return MixedEnsemble::pure(evolve(pad_modes(arm, ports), dft_nport(spec_.ports)));
  }
  const ModeUnitary network = build_full_network({spec_.ports, phi, true});
  if (pure_input_) return MixedEnsemble::pure(evolve(pad_modes(*pure_input_, ports), network));
  std::vector<MixedEnsemble::Component> parts;
  for (const auto& [w, state] : mixed_inputs_) {
    parts.push_back({w, evolve(pad_modes(state, ports), network)});
  }
  return MixedEnsemble(std::move(parts));
}

NumberDistribution Experiment::output_distribution(double phi) const {
  NumberDistribution merged;
  const MixedEnsemble out = output_states(phi);
  for (const auto& c : out.components()) {
    for (const auto& [occ, p] : number_distribution(c.state)) merged[occ] += c.weight * p;
  }
  if (spec_.loss) return thinned_distribution(merged, *spec_.loss);
  return merged;
}

MomentResult Experiment::moments(double phi) const { return moments(phi, *spec_.convention); }

MomentResult Experiment::moments(double phi, MomentConvention convention) const {
  if (spec_.detector == DetectorKind::kThreshold) {
    // P_N is a projector, so its second moment equals its mean.
    const double p = presence_expectation(output_distribution(phi));
    return MomentResult::from_moments(p, p);
  }
  if (convention == MomentConvention::kReducedOperator) {
    const MomentResult lossless = ensemble_moments(arm_states(phi), [&](const PureState& s) {
      return coincidence_moments_reduced(s, spec_.ports);
    });
    // Lossy detectors rescale the operator itself: I_lossy = T I.
    return spec_.loss ? lossless.scaled(spec_.loss->transmission_factor()) : lossless;
  }
  return coincidence_moments_detector(output_distribution(phi));
}

}  // namespace nport
