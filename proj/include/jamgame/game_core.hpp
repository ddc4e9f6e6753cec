#pragma once

#include <cstddef>
#include <vector>

#include "jamgame/channel_model.hpp"

namespace jamgame {

// Rates are in nats throughout.

/// Per-jammer unit interference prices, entrywise >= 0.
struct PriceVector {
  std::vector<double> mu;

  static PriceVector uniform(std::size_t n, double mu0) { return {std::vector<double>(n, mu0)}; }
  std::size_t size() const noexcept { return mu.size(); }
  bool operator==(const PriceVector&) const = default;
};

/// Jammer transmit powers, entrywise >= 0.
struct PowerAllocation {
  std::vector<double> p;

  static PowerAllocation zeros(std::size_t n) { return {std::vector<double>(n, 0.0)}; }
  std::size_t size() const noexcept { return p.size(); }
  bool operator==(const PowerAllocation&) const = default;
};

struct GameParams {
  double lambda1 = 5.0;  // unit price of secrecy rate
  PriceVector prices;
};

/// beta_i / (sigma_e2 + p_i alpha_i)
double eavesdropper_sinr(const GainProfile& profile, std::size_t i, double p_i);

/// [ln(1 + beta0) - max_i ln(1 + SINR_i)]^+
double secrecy_rate(const GainProfile& profile, const PowerAllocation& p);

/// ln(1 + beta0) - max_i ln(1 + SINR_i), without the clamp.
double unclamped_secrecy_rate(const GainProfile& profile, const PowerAllocation& p);

/// Interference p_i alpha_i delivered at eavesdropper i.
double interference(const GainProfile& profile, std::size_t i, double p_i);

/// mu_i p_i alpha_i
double jammer_revenue(double mu_i, const GainProfile& profile, std::size_t i, double p_i);

/// Sum of jammer_revenue over all jammers.
double total_jammer_revenue(const GainProfile& profile, const PriceVector& prices,
                            const PowerAllocation& p);

/// lambda1 * secrecy_rate - sum_i mu_i p_i alpha_i. Can be negative.
double transmitter_revenue(const GainProfile& profile, const GameParams& params,
                           const PowerAllocation& p);

}  // namespace jamgame
