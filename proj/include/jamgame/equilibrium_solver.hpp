#pragma once

#include <cstddef>
#include <vector>

#include "jamgame/channel_model.hpp"
#include "jamgame/fixed_price_solver.hpp"
#include "jamgame/game_core.hpp"

namespace jamgame {

/// Indices with beta_i > 0 and alpha_i > 0.
std::vector<std::size_t> jammable_set(const GainProfile& profile);

/// Jammers' total revenue under a uniform price mu0 when `count` eavesdroppers
/// with summed gain `beta_sum` are all jammed:
///   2 lambda1 mu0 c / (mu0 c + sqrt(mu0 c (4 lambda1 + mu0 c))) - count sigma_e2 mu0
double uniform_price_revenue(double beta_sum, std::size_t count, double sigma_e2, double lambda1,
                             double mu0);

/// Same, with c and K taken from the jammable set of `profile`.
double uniform_price_revenue(const GainProfile& profile, double lambda1, double mu0);

/// Analytic second derivative of the above in mu0: -2 lambda1^2 c^2 / q^3,
/// q = sqrt(mu0 c (4 lambda1 + mu0 c)).
double uniform_price_revenue_curvature(double beta_sum, double lambda1, double mu0);

/// Closed-form maximizer of uniform_price_revenue(beta_sum, count, ...).
double closed_form_uniform_price(double beta_sum, std::size_t count, double sigma_e2,
                                 double lambda1);

/// Total jammer revenue when the transmitter best-responds to the uniform
/// price mu0 (no assumption on which eavesdroppers end up jammed).
double follower_jammer_revenue(const GainProfile& profile, double lambda1, double mu0);

struct UniformPrice {
  double mu0 = 0.0;
  bool closed_form_valid = true;  // false when mu0 sits on a breakpoint
};

/// Uniform prices at which the follower's jammed set changes, ascending.
/// Between consecutive breakpoints the follower either jams a fixed set with a
/// free common SINR or holds the common SINR at an unjammed SINR.
std::vector<double> active_set_breakpoints(const GainProfile& profile, double lambda1);

/// Revenue-maximizing uniform price. Candidates are the closed-form price of
/// every jammed set that the follower reproduces at that price, plus every
/// breakpoint. closed_form_valid is false when a breakpoint wins.
UniformPrice optimal_uniform_price(const GainProfile& profile, double lambda1);

/// Numerical reference: log-spaced scan of follower_jammer_revenue over
/// (0, lambda1/sigma_e2], refined by golden-section search around the best
/// grid point.
double oracle_uniform_price(const GainProfile& profile, double lambda1, double tol = 1e-12);

struct Equilibrium {
  double mu0 = 0.0;
  PowerAllocation powers;
  double gamma0 = 0.0;
  std::vector<std::size_t> active_set;
  double secrecy_rate = 0.0;
  double transmitter_revenue = 0.0;
  std::vector<double> jammer_revenues;
  double total_jammer_revenue = 0.0;
  bool closed_form_valid = true;
};

Equilibrium stackelberg_equilibrium(const GainProfile& profile, double lambda1);

/// Assembles an Equilibrium for a given uniform price.
Equilibrium equilibrium_at_price(const GainProfile& profile, double lambda1, double mu0);

inline const std::vector<double> kDefaultDeviationSteps = {1e-4, 1e-3, 1e-2};
inline constexpr double kDeviationTolerance = 1e-9;

struct DeviationReport {
  double max_transmitter_violation = 0.0;  // best revenue gain from a power deviation
  double max_jammer_violation = 0.0;       // best revenue gain from a price deviation
  std::size_t deviations_tested = 0;
  bool passed = true;

  double max_violation() const;
};

/// Unilateral deviation test. Each step delta is relative to the perturbed
/// quantity (absolute when that quantity is zero). Powers are perturbed one
/// at a time at the fixed price; the uniform price is perturbed with the
/// follower re-solved. The transmitter's payoff uses the unclamped secrecy
/// rate, which is the objective its best response maximizes.
DeviationReport verify_equilibrium(const Equilibrium& eq, const GainProfile& profile,
                                   double lambda1,
                                   const std::vector<double>& deltas = kDefaultDeviationSteps);

/// Exhaustive grid over [0, lambda1/sigma_e2]^L for general per-jammer
/// prices, follower best-responding. Among grid points whose revenue ties the
/// best within 1e-12 relative, the one with the smallest price spread wins.
PriceVector oracle_prices_general(const GainProfile& profile, double lambda1,
                                  std::size_t grid_points);

/// Total jammer revenue at arbitrary prices with the follower best-responding;
/// zero when no eavesdropper can be jammed at a positive price.
double follower_jammer_revenue(const GainProfile& profile, const PriceVector& prices,
                               double lambda1);

}  // namespace jamgame
