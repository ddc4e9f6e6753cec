#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "jamgame/error.hpp"
#include "jamgame/fixed_price_solver.hpp"
#include "jamgame/serialization.hpp"
#include "test_support.hpp"

namespace jamgame {
namespace {

using testing::random_instance;
using testing::worked_profile;

constexpr double kLambda = 5.0;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(SolveFixedPrice, WorkedExampleIsExact) {
  const auto sol = solve_fixed_price(worked_profile(), PriceVector{{1.0, 3.0}}, kLambda);
  EXPECT_NEAR(sol.gamma0, 1.0, 1e-12);
  EXPECT_NEAR(sol.powers.p[0], 0.9, 1e-12);
  EXPECT_NEAR(sol.powers.p[1], 0.4, 1e-12);
  EXPECT_EQ(sol.active_set, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(sol.concavity_ok);
  EXPECT_FALSE(sol.on_threshold);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(eavesdropper_sinr(worked_profile(), i, sol.powers.p[i]), 1.0, 1e-12);
  }
  EXPECT_NEAR(sol.revenue, 5.0 * std::log(5.5) - 2.1, 1e-12);  // 6.4237405

  const auto oracle = oracle_fixed_price(worked_profile(), PriceVector{{1.0, 3.0}}, kLambda);
  EXPECT_NEAR(oracle.gamma0, 1.0, 1e-6);
}

TEST(SolveFixedPrice, WeakEavesdropperDropsOut) {
  const GainProfile g{10.0, {1.0, 0.05}, {1.0, 1.0}, 0.1, 0.1};
  const PriceVector mu{{1.0, 1.0}};

  // With both eavesdroppers priced in, the target SINR already exceeds the
  // weak one's unjammed SINR of 0.5.
  EXPECT_NEAR(stationary_gamma(1.05, kLambda), 0.575132959916660, 1e-12);

  const auto sol = solve_fixed_price(g, mu, kLambda);
  EXPECT_NEAR(sol.gamma0, 0.558257569495584, 1e-12);
  EXPECT_NEAR(sol.powers.p[0], 1.691287847477920, 1e-12);
  EXPECT_EQ(sol.powers.p[1], 0.0);
  EXPECT_EQ(sol.active_set, (std::vector<std::size_t>{0}));
  EXPECT_LT(g.unjammed_sinr(1), sol.gamma0);

  const auto oracle = oracle_fixed_price(g, mu, kLambda);
  EXPECT_EQ(oracle.active_set, sol.active_set);
}

TEST(SolveFixedPrice, RicherTransmitterBuysMoreJamming) {
  const GainProfile g{10.0, {1.0}, {1.0}, 0.1, 0.1};
  double last_gamma = INFINITY;
  double last_power = -1.0;
  for (double lambda1 : {1.0, 10.0, 100.0}) {
    const auto sol = solve_fixed_price(g, PriceVector{{1.0}}, lambda1);
    EXPECT_LT(sol.gamma0, last_gamma);
    EXPECT_GT(sol.powers.p[0], last_power);
    last_gamma = sol.gamma0;
    last_power = sol.powers.p[0];
  }
}

TEST(SolveFixedPrice, OptimumPinnedAtUnjammedSinr) {
  // Unjammed SINRs 10 and 5. Pricing both in puts the stationary point above 5,
  // pricing only the strong one puts it below 5, so the optimum sits at 5 with
  // the weak eavesdropper left unjammed.
  const GainProfile g{10.0, {1.0, 0.5}, {1.0, 1.0}, 0.1, 0.1};
  const PriceVector mu{{3.0, 4.0}};
  const double lambda1 = 1.0;
  EXPECT_GT(stationary_gamma(5.0, lambda1), 5.0);
  EXPECT_LT(stationary_gamma(3.0, lambda1), 5.0);

  const auto sol = solve_fixed_price(g, mu, lambda1);
  EXPECT_TRUE(sol.on_threshold);
  EXPECT_DOUBLE_EQ(sol.gamma0, 5.0);
  EXPECT_NEAR(sol.powers.p[0], 0.1, 1e-12);
  EXPECT_EQ(sol.powers.p[1], 0.0);

  const auto oracle = oracle_fixed_price(g, mu, lambda1);
  EXPECT_NEAR(oracle.gamma0, 5.0, 1e-6);
  EXPECT_LE(max_abs_diff(oracle.powers.p, sol.powers.p), 1e-6);
  for (double s : {0.999, 1.001}) {
    EXPECT_GE(gamma_objective(g, mu, lambda1, sol.gamma0),
              gamma_objective(g, mu, lambda1, sol.gamma0 * s));
  }
}

TEST(SolveFixedPrice, UncoveredEavesdropperSetsFloor) {
  // The second eavesdropper has no jammer, so no target below its SINR of 3 is reachable.
  const GainProfile g{10.0, {1.0, 0.3}, {1.0, 0.0}, 0.1, 0.1};
  const auto sol = solve_fixed_price(g, PriceVector{{1.0, 1.0}}, kLambda);
  EXPECT_NEAR(sol.gamma0, 3.0, 1e-12);
  EXPECT_TRUE(sol.on_threshold);
  EXPECT_NEAR(sol.powers.p[0], 1.0 / 3.0 - 0.1, 1e-12);
  EXPECT_EQ(sol.powers.p[1], 0.0);
  const auto oracle = oracle_fixed_price(g, PriceVector{{1.0, 1.0}}, kLambda);
  EXPECT_NEAR(oracle.gamma0, 3.0, 1e-6);
}

TEST(SolveFixedPrice, FreeJammingMatchesTarget) {
  const auto g = worked_profile();
  const auto sol = solve_fixed_price(g, PriceVector{{1.0, 0.0}}, kLambda);
  EXPECT_NEAR(sol.gamma0, 0.558257569495584, 1e-12);
  EXPECT_EQ(sol.active_set, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(eavesdropper_sinr(g, 1, sol.powers.p[1]), sol.gamma0, 1e-9);
}

TEST(SolveFixedPrice, NoJammableEavesdropper) {
  for (const auto& [g, mu] : {std::pair{worked_profile(), PriceVector{{0.0, 0.0}}},
                             std::pair{GainProfile{10.0, {0.0}, {1.0}, 0.1, 0.1}, PriceVector{{1.0}}},
                             std::pair{GainProfile{10.0, {1.0}, {0.0}, 0.1, 0.1}, PriceVector{{1.0}}}}) {
    try {
      solve_fixed_price(g, mu, kLambda);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNoJammableEavesdropper);
    }
    EXPECT_THROW(oracle_fixed_price(g, mu, kLambda), Error);
  }
}

TEST(SolveFixedPrice, RejectsBadInputs) {
  EXPECT_THROW(solve_fixed_price(worked_profile(), PriceVector{{1.0}}, kLambda), Error);
  EXPECT_THROW(solve_fixed_price(worked_profile(), PriceVector{{1.0, -1.0}}, kLambda), Error);
  EXPECT_THROW(solve_fixed_price(worked_profile(), PriceVector{{1.0, 3.0}}, 0.0), Error);
}

TEST(SolveFixedPrice, ClampFlag) {
  GainProfile g = worked_profile(0.5);
  const auto sol = solve_fixed_price(g, PriceVector{{1.0, 3.0}}, kLambda);
  EXPECT_NEAR(sol.gamma0, 1.0, 1e-12);  // clamp ignored by the optimizer
  EXPECT_TRUE(sol.secrecy_clamped);
  EXPECT_FALSE(solve_fixed_price(worked_profile(), PriceVector{{1.0, 3.0}}, kLambda).secrecy_clamped);
}

TEST(GammaObjective, StationaryAtClosedForm) {
  const auto g = worked_profile();
  const PriceVector mu{{1.0, 3.0}};
  const double gamma = solve_fixed_price(g, mu, kLambda).gamma0;
  const double h = 1e-6 * gamma;
  const double slope =
      (gamma_objective(g, mu, kLambda, gamma + h) - gamma_objective(g, mu, kLambda, gamma - h)) /
      (2.0 * h);
  EXPECT_LE(std::abs(slope), 1e-4);
}

TEST(GammaObjective, LimitsAndShift) {
  const auto g = worked_profile();
  const PriceVector mu{{1.0, 3.0}};
  EXPECT_LT(gamma_objective(g, mu, kLambda, 1e-6), -1e5);
  EXPECT_LT(gamma_objective(g, mu, kLambda, 1e-9), gamma_objective(g, mu, kLambda, 1e-6));

  const auto shifted = worked_profile(20.0);
  for (double gamma : {0.3, 1.0, 4.0}) {
    EXPECT_NEAR(gamma_objective(shifted, mu, kLambda, gamma) - gamma_objective(g, mu, kLambda, gamma),
                kLambda * (std::log(21.0) - std::log(11.0)), 1e-12);
  }
  try {
    gamma_objective(g, mu, kLambda, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveGamma);
  }
}

TEST(FixedPriceProperties, RandomInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 4;
    const auto inst = random_instance(1000 + seed, n);
    const auto& g = inst.profile;
    const auto sol = solve_fixed_price(g, inst.prices, kLambda);
    const auto oracle = oracle_fixed_price(g, inst.prices, kLambda);
    SCOPED_TRACE("seed " + std::to_string(seed));

    EXPECT_LE(std::abs(sol.gamma0 - oracle.gamma0), 1e-6 * (1.0 + sol.gamma0));
    EXPECT_LE(max_abs_diff(sol.powers.p, oracle.powers.p), 1e-6);

    // Active eavesdroppers share gamma0; the rest are unjammed and below it.
    for (std::size_t i = 0; i < n; ++i) {
      const bool active = std::ranges::find(sol.active_set, i) != sol.active_set.end();
      if (active) {
        EXPECT_GT(sol.powers.p[i], 0.0);
        EXPECT_NEAR(eavesdropper_sinr(g, i, sol.powers.p[i]), sol.gamma0, 1e-9);
      } else {
        EXPECT_EQ(sol.powers.p[i], 0.0);
        EXPECT_LE(g.unjammed_sinr(i), sol.gamma0 + 1e-9);
      }
    }

    if (!sol.on_threshold) {
      const double tau = price_weighted_beta(g, inst.prices, sol.active_set);
      const double residual =
          kLambda * sol.gamma0 * sol.gamma0 - sol.gamma0 * tau - tau;
      EXPECT_LE(std::abs(residual), 1e-9 * (kLambda * sol.gamma0 * sol.gamma0 + tau));
      EXPECT_TRUE(sol.concavity_ok);
    }
    if (sol.concavity_ok) {
      const double best = gamma_objective(g, inst.prices, kLambda, sol.gamma0);
      EXPECT_GE(best, gamma_objective(g, inst.prices, kLambda, sol.gamma0 * (1.0 + 1e-3)));
      EXPECT_GE(best, gamma_objective(g, inst.prices, kLambda, sol.gamma0 * (1.0 - 1e-3)));
    }

    // beta0 only shifts the objective.
    auto richer = g;
    richer.beta0 *= 3.0;
    const auto other = solve_fixed_price(richer, inst.prices, kLambda);
    EXPECT_EQ(other.gamma0, sol.gamma0);
    EXPECT_EQ(other.powers, sol.powers);
  }
}

TEST(FixedPriceSolutionJson, Fields) {
  const Json j = solve_fixed_price(worked_profile(), PriceVector{{1.0, 3.0}}, kLambda);
  for (const char* key : {"gamma0", "powers", "active_set", "revenue", "concavity_ok"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("active_set").get<std::vector<std::size_t>>(), (std::vector<std::size_t>{0, 1}));
}

}  // namespace
}  // namespace jamgame
