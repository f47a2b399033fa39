// Copyright (c) ptapat contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptapat/lemmas.hpp"

using namespace ptapat;

TEST_CASE("suites pass on small seeds") {
  for (const auto& name : suite_names()) {
    SuiteReport rep = run_suite(name, 200, 1);
    INFO(rep.summary());
    CHECK(rep.passed());
    CHECK_FALSE(rep.checks.empty());
  }
  CHECK_THROWS_AS(run_suite("nope", 1, 1), PreconditionError);
}

TEST_CASE("add-1 checks") {
  PPath early{Pattern::all_in_one(1), {std::vector<int>{1}, std::nullopt, std::nullopt}};
  CHECK_FALSE(check_add1(early, {0, 5}, SyncRule::Literal));
  CHECK(check_add1(early, {0, 5}, SyncRule::Corrected));
  PPath ring{Pattern::all_in_one(2), {std::nullopt, std::nullopt}};
  CHECK(check_add1(ring, {0, 1, 2}, SyncRule::Literal));
}

TEST_CASE("random specs are deterministic") {
  CHECK(random_small_spec(9) == random_small_spec(9));
  for (std::uint64_t s = 0; s < 200; ++s) CHECK_NOTHROW(validate_spec(random_small_spec(s)));
}
