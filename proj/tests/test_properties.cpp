/* Copyright 2026 The ASPMT Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include "properties.hpp"

namespace aspmt {
namespace {

constexpr int kCases = 1000;

TEST(Properties, ReductFixpointAndIdempotence) {
  auto r = testing::check_reduct_properties(101, kCases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
  EXPECT_GT(r.interesting, 0);
}

TEST(Properties, LessThanIrreflexiveAndTransitive) {
  auto r = testing::check_less_than_properties(202, kCases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
  EXPECT_GT(r.interesting, 0);
}

TEST(Properties, ParsePrintRoundTrip) {
  auto r = testing::check_round_trip(303, kCases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
}

TEST(Properties, EmitDeterminism) {
  auto r = testing::check_emit_determinism(404, kCases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
}

TEST(Properties, StabilityImpliesModelhood) {
  auto r = testing::check_stability_properties(505, kCases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
  EXPECT_GT(r.interesting, kCases / 4);
}

}  // namespace
}  // namespace aspmt
