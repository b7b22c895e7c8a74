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

// Runs the nportsim binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Invocation {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch() {
  static const std::filesystem::path dir = [] {
    auto p = std::filesystem::temp_directory_path() / "nport_test_cli";
    std::filesystem::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Invocation run(const std::string& args) {
  const auto err_path = scratch() / "stderr.txt";
  const std::string command = "cd '" + scratch().string() + "' && '" NPORTSIM_PATH "' " + args +
                              " 2>'" + err_path.string() + "'";
  Invocation r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

void expect_usage_error(const Invocation& r) {
  EXPECT_EQ(r.exit_code, 2);
  const auto doc = nlohmann::json::parse(r.err, nullptr, false);
  ASSERT_FALSE(doc.is_discarded()) << r.err;
  EXPECT_TRUE(doc.at("error").contains("code"));
  EXPECT_TRUE(doc.at("error").contains("message"));
}

}  // namespace

TEST(cli, pattern_two_photon_fringe) {
  const Invocation r = run("pattern --ports 2 --input fock:2");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 50u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "phi,mean,second_moment,variance,slope,delta_phi,convention,detector");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 8u);
    const double phi = std::stod(rows[i][0]);
    EXPECT_NEAR(std::stod(rows[i][1]), (1.0 - std::cos(2 * phi)) / 4.0, 1e-10);
    EXPECT_EQ(rows[i][6], "reduced");
    EXPECT_EQ(rows[i][7], "number");
  }
}

TEST(cli, pattern_peak_and_dark_ports) {
  const Invocation three = run("pattern --ports 3 --input fock:3");
  ASSERT_EQ(three.exit_code, 0) << three.err;
  double peak = 0.0;
  double expected = 0.0;
  const auto rows = csv(three.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    peak = std::max(peak, std::stod(rows[i][1]));
    expected = std::max(expected, (1.0 + std::cos(3 * std::stod(rows[i][0]))) / 18.0);
  }
  EXPECT_NEAR(peak, expected, 1e-12);
  // The offset grid comes within a third of a step of a fringe peak.
  EXPECT_NEAR(peak, 1.0 / 9.0, 1e-3);

  const Invocation dark = run("pattern --ports 3 --input fock:2");
  ASSERT_EQ(dark.exit_code, 0) << dark.err;
  const auto zero_rows = csv(dark.out);
  for (std::size_t i = 1; i < zero_rows.size(); ++i) {
    EXPECT_EQ(zero_rows[i][1], "0");
    EXPECT_EQ(zero_rows[i][5], "inf");
  }
}

TEST(cli, pattern_config_and_overrides) {
  std::ofstream(scratch() / "cfg.json")
      << R"({"ports": 2, "input": "fock:3", "convention": "detector", "phase_points": 9})";
  const Invocation r = run("pattern --config cfg.json --phase-points 11 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_TRUE(doc.is_array()) << r.out;
  EXPECT_EQ(doc.size(), 11u);
  EXPECT_EQ(doc[0].at("convention"), "detector");

  const Invocation to_file = run("pattern --ports 2 --input noon:2 --out noon.csv");
  ASSERT_EQ(to_file.exit_code, 0) << to_file.err;
  EXPECT_TRUE(to_file.out.empty());
  EXPECT_EQ(csv(slurp(scratch() / "noon.csv")).size(), 50u);
}

TEST(cli, usage_errors_exit_two) {
  expect_usage_error(run("pattern --ports 1 --input fock:2"));
  expect_usage_error(run("pattern --ports 2 --input bogus:2"));
  expect_usage_error(run("pattern --ports 2 --input fock:2 --phase-points 4"));
  expect_usage_error(run("pattern --ports 2 --input fock:2 --convention sideways"));
  expect_usage_error(run("pattern --ports 2 --input fock:2 --loss 0.5"));
  expect_usage_error(run("sample --ports 2 --input fock:2 --trials 10"));
  expect_usage_error(run("noise-surface --ports 3:2"));
  expect_usage_error(run("verify no-such-suite"));
}

TEST(cli, noise_surface_cells) {
  const Invocation r = run("noise-surface --ports 2:3 --excess 0:1");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "N,E,sheet,log10_delta_phi");
  std::map<std::string, double> cell;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 4u);
    cell[rows[i][0] + "," + rows[i][1] + "," + rows[i][2]] = std::stod(rows[i][3]);
  }
  EXPECT_NEAR(cell.at("2,0,fock"), std::log10(std::sqrt(2.0) / 2.0), 1e-7);
  EXPECT_NEAR(cell.at("3,0,shot"), std::log10(1.0 / std::sqrt(3.0)), 1e-12);
  for (const char* key : {"2,0", "2,1", "3,0", "3,1"}) {
    const std::string k(key);
    EXPECT_GE(cell.at(k + ",fock"), cell.at(k + ",shot") - 1e-9) << k;
    EXPECT_GE(cell.at(k + ",excess"), cell.at(k + ",shot") - 1e-9) << k;
  }

  const Invocation far = run("noise-surface --ports 5 --excess 0,14 --photon-cap 14");
  ASSERT_EQ(far.exit_code, 0) << far.err;
  std::map<std::string, std::string> text;
  const auto far_rows = csv(far.out);
  for (std::size_t i = 1; i < far_rows.size(); ++i) {
    text[far_rows[i][0] + "," + far_rows[i][1] + "," + far_rows[i][2]] = far_rows[i][3];
  }
  EXPECT_NEAR(std::stod(text.at("5,0,fock")), std::log10(0.8), 1e-7);
  EXPECT_EQ(text.at("5,14,excess"), "na");

  const Invocation shot = run("noise-surface --ports 2 --excess 14");
  ASSERT_EQ(shot.exit_code, 0) << shot.err;
  EXPECT_NE(shot.out.find("2,14,shot,"), std::string::npos);
  for (const auto& row : csv(shot.out)) {
    if (row.size() == 4 && row[2] == "shot") {
      EXPECT_NEAR(std::stod(row[3]), std::log10(0.25), 1e-12);
    }
  }
}

TEST(cli, verify_suites) {
  for (const char* suite : {"prefactors", "loss", "conventions"}) {
    const Invocation r = run(std::string("verify ") + suite);
    EXPECT_EQ(r.exit_code, 0) << suite << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc.at("pass"), true);
    for (const auto& check : doc.at("checks")) {
      for (const char* key : {"name", "expected", "actual", "tol", "pass"}) {
        EXPECT_TRUE(check.contains(key)) << key;
      }
    }
  }
  EXPECT_EQ(nlohmann::json::parse(run("verify prefactors").out).at("checks").size(), 5u);
}

TEST(cli, sample_reports) {
  const std::string args = "sample --ports 2 --input fock:2 --phi 1.5707963267948966 "
                           "--trials 100000 --seed 7";
  const Invocation a = run(args);
  const Invocation b = run(args + " --threads 3");
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc.at("trials"), 100000);
  EXPECT_EQ(doc.at("seed"), 7);
  EXPECT_LE(std::abs(doc.at("coincidence_rate").get<double>() - 0.5),
            4.0 * doc.at("standard_error").get<double>());

  const Invocation one = run("sample --ports 2 --input fock:2 --phi 1 --trials 1 --seed 11");
  ASSERT_EQ(one.exit_code, 0) << one.err;
  const double rate = nlohmann::json::parse(one.out).at("coincidence_rate").get<double>();
  EXPECT_TRUE(rate == 0.0 || rate == 1.0) << rate;
}
