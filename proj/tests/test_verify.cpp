#include <catch2/catch_amalgamated.hpp>

#include "cdops/verify.hpp"

using namespace cdops;

namespace {

void expect_clean(const VerifyReport& rep) {
  INFO(rep.suite << ": " << rep.violations << " violations"
                 << (rep.failures.empty() ? "" : ", first: " + rep.failures[0].detail));
  CHECK(rep.ok());
  CHECK(rep.checks > 0);
}

}  // namespace

TEST_CASE("axioms suite", "[verify]") { expect_clean(verify_axioms(30, 11)); }

TEST_CASE("predicates suite", "[verify]") { expect_clean(verify_predicates(40, 12)); }

TEST_CASE("epsilon suite", "[verify]") { expect_clean(verify_epsilon(30, 13)); }

TEST_CASE("retraction suite", "[verify]") {
  expect_clean(verify_retraction(25, 14, 33));
}

TEST_CASE("omega suite", "[verify]") { expect_clean(verify_omega(30, 15)); }

TEST_CASE("diamonds suite", "[verify]") { expect_clean(verify_diamonds(25, 16)); }

TEST_CASE("spatial order suite", "[verify]") {
  expect_clean(verify_retraction_orders(25, 17));
}

TEST_CASE("the full battery stays green across seeds", "[verify]") {
  for (std::uint64_t seed : {21ull, 22ull}) {
    const std::vector<VerifyReport> reports = verify_all(15, seed);
    REQUIRE(reports.size() == 6);
    for (const VerifyReport& rep : reports) expect_clean(rep);
  }
}
