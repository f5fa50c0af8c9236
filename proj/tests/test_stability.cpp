#include <cmath>
#include <limits>

#include "doctest.h"
#include "wncs/errors.hpp"
#include "wncs/stability.hpp"

using namespace wncs;

namespace {

// Default-geometry lag-one correlation (1 m/s Doppler at 2 GHz, 5 ms slot).
constexpr double kRhoDefault = 0.98904869522372584;

struct PbbRef {
  double pe;
  double pbb;
};

// Frozen against a 200-digit evaluation of the two-Marcum bracket at
// rho = kRhoDefault.
constexpr PbbRef kPbbRefs[] = {
    {1e-4, 4.570264000892219e-3}, {1e-3, 4.392103870787753e-2},
    {3e-3, 0.1210677920923239},   {5e-3, 0.1862992972549793},
    {1e-2, 0.3110439293289442},   {0.1, 0.7587136502153135},
    {0.5, 0.9305196287404329},
};

struct LadderRef {
  int delta;
  double pe_star;
};

// Frozen thresholds for n_max = 10, bound = 1e-9 at kRhoDefault. The
// bisection terminates at relative width 1e-6, so comparisons use 2e-6.
constexpr LadderRef kLadder[] = {
    {0, 4.821357829e-3}, {1, 3.853930540e-3}, {2, 2.944135417e-3},
    {3, 2.108514135e-3}, {4, 1.370633700e-3}, {5, 7.625221342e-4},
    {6, 3.223111060e-4}, {7, 7.817883155e-5}, {8, 4.667679196e-6},
};

}  // namespace

TEST_SUITE("stability") {
  TEST_CASE("back-to-back probability at frozen operating points") {
    for (const auto& r : kPbbRefs) {
      CHECK(p_back_to_back(r.pe, kRhoDefault) ==
            doctest::Approx(r.pbb).epsilon(1e-10));
    }
  }

  TEST_CASE("independent slots make repeats as likely as fresh errors") {
    // The bracket difference cancels near machine epsilon, so the smallest
    // p values carry a few parts in 1e8 of relative noise.
    for (double p : {1e-4, 1e-3, 0.01, 0.1, 0.5, 0.9}) {
      CHECK(p_back_to_back(p, 0.0) == doctest::Approx(p).epsilon(1e-7));
    }
  }

  TEST_CASE("as-printed variant collapses to one minus p when independent") {
    for (double p : {1e-3, 0.01, 0.1, 0.5}) {
      CHECK(p_back_to_back(p, 0.0, PbbForm::as_printed) ==
            doctest::Approx(1.0 - p).epsilon(1e-8));
    }
  }

  TEST_CASE("repeat probability grows with correlation") {
    for (double p : {1e-3, 0.05, 0.3}) {
      double prev = 0.0;
      for (double rho : {0.0, 0.3, 0.6, 0.9, 0.989, 0.9999}) {
        const double v = p_back_to_back(p, rho);
        CHECK(v >= prev - 1e-12);
        prev = v;
      }
    }
  }

  TEST_CASE("back-to-back probability is floored at p and capped at one") {
    for (double p : {1e-6, 1e-3, 0.2, 0.8}) {
      for (double rho : {0.0, 0.5, 0.99}) {
        const double v = p_back_to_back(p, rho);
        CHECK(v >= p);
        CHECK(v <= 1.0);
      }
    }
    CHECK(p_back_to_back(0.0, 0.5) == 0.0);
    CHECK(p_back_to_back(-0.25, 0.5) == 0.0);
    CHECK(p_back_to_back(1.0, 0.5) == 1.0);
    CHECK(p_back_to_back(1.5, 0.5) == 1.0);
    CHECK_THROWS_AS(
        p_back_to_back(std::numeric_limits<double>::quiet_NaN(), 0.5),
        DomainError);
    CHECK_THROWS_AS(p_back_to_back(0.1, -0.2), DomainError);
  }

  TEST_CASE("rho at or above one uses the near-static clamp") {
    const double v = p_back_to_back(0.01, 1.0);
    CHECK(v == p_back_to_back(0.01, 2.0));
    CHECK(v > 0.9);  // nearly static channel: a repeat is almost certain
    CHECK(v <= 1.0);
  }

  TEST_CASE("instability probability composes the run of failures") {
    const double p = 2e-3;
    const double pbb = p_back_to_back(p, kRhoDefault);
    for (int delta = 0; delta < 10; ++delta) {
      const double expect = std::pow(pbb, 9 - delta) * p;
      CHECK(p_instability(p, kRhoDefault, 10, delta) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
    // delta = n_max - 1: one more loss tips the loop over, so the
    // probability is the per-slot error probability itself.
    CHECK(p_instability(p, kRhoDefault, 10, 9) == p);
    CHECK(p_instability(0.37, 0.0, 1, 0) == 0.37);
  }

  TEST_CASE("instability probability is monotone in counter and error rate") {
    double prev = 0.0;
    for (int delta = 0; delta < 10; ++delta) {
      const double v = p_instability(1e-3, kRhoDefault, 10, delta);
      CHECK(v >= prev);
      prev = v;
    }
    prev = 0.0;
    for (double p : {1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
      const double v = p_instability(p, kRhoDefault, 10, 4);
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("instability probability rejects out-of-range input") {
    CHECK_THROWS_AS(p_instability(0.1, 0.5, 10, -1), DomainError);
    CHECK_THROWS_AS(p_instability(0.1, 0.5, 10, 10), DomainError);
    CHECK_THROWS_AS(p_instability(0.1, 0.5, 0, 0), DomainError);
    CHECK_THROWS_AS(p_instability(1.5, 0.5, 10, 0), DomainError);
    CHECK_THROWS_AS(p_instability(-0.1, 0.5, 10, 0), DomainError);
  }

  TEST_CASE("threshold ladder at the default operating point") {
    for (const auto& r : kLadder) {
      CHECK(solve_pe_threshold(kRhoDefault, 10, r.delta, 1e-9) ==
            doctest::Approx(r.pe_star).epsilon(2e-6));
    }
    // One loss from the edge the chain has no slack: the threshold is the
    // bound itself, exactly.
    CHECK(solve_pe_threshold(kRhoDefault, 10, 9, 1e-9) == 1e-9);
  }

  TEST_CASE("threshold ladder is non-increasing in the loss counter") {
    double prev = 1.0;
    for (int delta = 0; delta < 10; ++delta) {
      const double v = solve_pe_threshold(kRhoDefault, 10, delta, 1e-9);
      CHECK(v <= prev);
      prev = v;
    }
  }

  TEST_CASE("solved thresholds actually satisfy the bound") {
    for (int delta = 0; delta < 10; ++delta) {
      const double star = solve_pe_threshold(kRhoDefault, 10, delta, 1e-9);
      CHECK(p_instability(star, kRhoDefault, 10, delta) <= 1e-9);
    }
  }

  TEST_CASE("independent-channel threshold has a closed form") {
    // With rho = 0 every slot is independent, so P_us = p^(n_max - delta)
    // and the threshold is bound^(1 / (n_max - delta)).
    const double star = solve_pe_threshold(0.0, 10, 0, 1e-9);
    CHECK(star == doctest::Approx(std::pow(10.0, -0.9)).epsilon(1e-5));
    const double star4 = solve_pe_threshold(0.0, 10, 4, 1e-9);
    CHECK(star4 == doctest::Approx(std::pow(1e-9, 1.0 / 6.0)).epsilon(1e-5));
  }

  TEST_CASE("degenerate bounds clamp to the search interval") {
    CHECK(solve_pe_threshold(0.5, 10, 0, 1.0) == 1.0 - 1e-12);
    CHECK(solve_pe_threshold(0.5, 10, 9, 1e-13) == 1e-12);
    CHECK_THROWS_AS(solve_pe_threshold(0.5, 10, 0, 0.0), DomainError);
    CHECK_THROWS_AS(solve_pe_threshold(0.5, 10, 0, 1.5), DomainError);
    CHECK_THROWS_AS(solve_pe_threshold(0.5, 10, 11, 1e-9), DomainError);
  }
}
