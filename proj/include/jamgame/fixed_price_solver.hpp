#pragma once

#include <cstddef>
#include <vector>

#include "jamgame/channel_model.hpp"
#include "jamgame/game_core.hpp"

namespace jamgame {

/// Membership tolerance for the super-active set. An eavesdropper whose
/// unjammed SINR is within this of gamma0 is inactive (zero power).
inline constexpr double kActiveTieTolerance = 1e-9;

/// Transmitter's best response to fixed interference prices.
struct FixedPriceSolution {
  double gamma0 = 0.0;                  // common jammed SINR of the super-active set
  PowerAllocation powers;
  std::vector<std::size_t> active_set;  // ascending indices, all with powers > 0
  double revenue = 0.0;                 // transmitter revenue at `powers`
  bool concavity_ok = true;             // gamma^3/(1+gamma)^2 <= 2 tau / lambda1 at gamma0
  bool on_threshold = false;            // gamma0 pinned at an unjammed SINR, not a stationary point
  bool secrecy_clamped = false;         // gamma0 >= beta0, so the secrecy rate clamps to zero
};

/// Positive root of lambda1 g^2 - tau g - tau = 0.
double stationary_gamma(double tau, double lambda1);

/// sum_i mu_i beta_i over the given indices.
double price_weighted_beta(const GainProfile& profile, const PriceVector& prices,
                           const std::vector<std::size_t>& indices);

/// Transmitter objective as a function of the common target SINR:
///   lambda1 [ln(1+beta0) - ln(1+gamma0)] - sum_i mu_i [beta_i/gamma0 - sigma_e2]^+
/// The sum runs over the eavesdroppers that are active at gamma0.
double gamma_objective(const GainProfile& profile, const PriceVector& prices, double lambda1,
                       double gamma0);

/// Closed-form best response. gamma0 comes from the stationary point over
/// the super-active set; powers are p_i = [beta_i/gamma0 - sigma_e2]^+ / alpha_i.
FixedPriceSolution solve_fixed_price(const GainProfile& profile, const PriceVector& prices,
                                     double lambda1);

/// Numerical reference: golden-section search on gamma_objective, then the
/// same membership rule applied to the numeric gamma0.
FixedPriceSolution oracle_fixed_price(const GainProfile& profile, const PriceVector& prices,
                                      double lambda1, double tol = 1e-13);

/// Powers that hold every jammable eavesdropper at SINR <= gamma0 with the
/// tie rule above. Shared by the closed form and the oracle.
FixedPriceSolution allocation_for_gamma(const GainProfile& profile, const PriceVector& prices,
                                        double lambda1, double gamma0);

}  // namespace jamgame
