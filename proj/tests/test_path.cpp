// Copyright 2026 The tpfollow Authors
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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "tpf/path.hpp"

using namespace tpf;

TEST_CASE("line path has zero curvature everywhere") {
  const PathSpec p = make_line();
  CHECK(curvature_at(p, -100.0) == 0.0);
  CHECK(curvature_at(p, 3.7) == 0.0);
  CHECK(dcurvature_at(p, 3.7) == 0.0);
  CHECK(p.kappa_max == 0.0);
  CHECK(p.rho_r_max == 0.0);
}

TEST_CASE("circle path is constant curvature") {
  const PathSpec p = make_circle(0.05);
  CHECK(curvature_at(p, 0.0) == 0.05);
  CHECK(curvature_at(p, 123.0) == 0.05);
  CHECK(dcurvature_at(p, 5.0) == 0.0);
  CHECK(p.kappa_max == 0.05);

  const PathSpec neg = make_circle(-0.2);
  CHECK(neg.kappa_max == 0.2);
}

TEST_CASE("sine curvature profile and its declared bounds") {
  const double A = 0.1, f = 0.02;
  const PathSpec p = make_sine(A, f);
  CHECK(curvature_at(p, 0.0) == doctest::Approx(0.0));
  // Quarter period s = 1/(4f): sin = 1.
  CHECK(curvature_at(p, 12.5) == doctest::Approx(0.1));
  CHECK(dcurvature_at(p, 0.0) == doctest::Approx(A * 2.0 * M_PI * f));
  CHECK(p.kappa_max == doctest::Approx(0.1));
  CHECK(p.rho_r_max == doctest::Approx(A * 2.0 * M_PI * f));
}

TEST_CASE("clothoid is linear in arclength with a bounded domain") {
  const PathSpec p = make_clothoid(0.01, -10.0, 10.0);
  CHECK(curvature_at(p, 5.0) == doctest::Approx(0.05));
  CHECK(curvature_at(p, -10.0) == doctest::Approx(-0.1));
  CHECK(dcurvature_at(p, 3.0) == doctest::Approx(0.01));
  CHECK(p.kappa_max == doctest::Approx(0.1));
  CHECK(p.rho_r_max == doctest::Approx(0.01));
  CHECK_THROWS_AS((void)curvature_at(p, 11.0), std::domain_error);
  CHECK_THROWS_AS((void)curvature_at(p, -10.5), std::domain_error);
}

TEST_CASE("table path interpolates linearly between samples") {
  const PathSpec p =
      make_table({{0.0, 0.0}, {10.0, 0.1}, {20.0, 0.1}}, 0.1, 0.01);
  CHECK(curvature_at(p, 0.0) == doctest::Approx(0.0));
  CHECK(curvature_at(p, 5.0) == doctest::Approx(0.05));
  CHECK(curvature_at(p, 15.0) == doctest::Approx(0.1));
  CHECK(curvature_at(p, 20.0) == doctest::Approx(0.1));
  CHECK(dcurvature_at(p, 5.0) == doctest::Approx(0.01));
  // Right-hand derivative at a breakpoint.
  CHECK(dcurvature_at(p, 10.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)curvature_at(p, 20.5), std::domain_error);
}

TEST_CASE("table path rejects samples exceeding the declared bounds") {
  CHECK_THROWS_AS(make_table({{0.0, 0.0}, {10.0, 0.2}}, 0.1, 0.05),
                  std::invalid_argument);
  // Slope 0.05 exceeds the declared rho_r_max.
  CHECK_THROWS_AS(make_table({{0.0, 0.0}, {1.0, 0.05}}, 0.1, 0.01),
                  std::invalid_argument);
  // Non-ascending s.
  CHECK_THROWS_AS(make_table({{1.0, 0.0}, {1.0, 0.01}}, 0.1, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_table({{0.0, 0.0}}, 0.1, 0.05), std::invalid_argument);
}

TEST_CASE("table path loads from csv with comments and header") {
  const std::string file = "tpf_test_table.csv";
  {
    std::ofstream out(file);
    out << "# curvature samples\n";
    out << "s,kappa\n";
    out << "0, 0.0\n";
    out << "10, 0.05\n";
    out << "30  0.05\n";  // whitespace-separated variant
  }
  const PathSpec p = make_table_from_csv(file, 0.05, 0.005);
  std::remove(file.c_str());
  CHECK(curvature_at(p, 5.0) == doctest::Approx(0.025));
  CHECK(curvature_at(p, 20.0) == doctest::Approx(0.05));
  CHECK_THROWS_AS(make_table_from_csv("no_such_file.csv", 0.1, 0.1),
                  std::runtime_error);
}

TEST_CASE("offset-curvature feasibility is strict") {
  CHECK(validate_h1(make_circle(0.05), 2.0).ok);
  CHECK(validate_h1(make_circle(0.05), 2.0).d_kappa_max == doctest::Approx(0.1));
  CHECK(validate_h1(make_circle(0.05), 2.0).margin == doctest::Approx(0.9));
  // d * kappa_max == 1 exactly must fail the strict inequality.
  CHECK_FALSE(validate_h1(make_circle(0.5), 2.0).ok);
  CHECK_FALSE(validate_h1(make_circle(0.6), 2.0).ok);
  CHECK(validate_h1(make_line(), 100.0).ok);
}
