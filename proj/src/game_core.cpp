#include "jamgame/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jamgame/error.hpp"

namespace jamgame {

namespace {

void check_index(const GainProfile& profile, std::size_t i) {
  if (i >= profile.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "eavesdropper " + std::to_string(i) + " of " + std::to_string(profile.size()));
  }
}

void check_length(const GainProfile& profile, std::size_t n, const char* what) {
  if (n != profile.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " has length " + std::to_string(n) + ", expected " +
                    std::to_string(profile.size()));
  }
}

}  // namespace

double eavesdropper_sinr(const GainProfile& profile, std::size_t i, double p_i) {
  check_index(profile, i);
  return profile.beta[i] / (profile.sigma_e2 + p_i * profile.alpha[i]);
}

double unclamped_secrecy_rate(const GainProfile& profile, const PowerAllocation& p) {
  check_length(profile, p.size(), "power allocation");
  double worst = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    worst = std::max(worst, eavesdropper_sinr(profile, i, p.p[i]));
  }
  return std::log1p(profile.beta0) - std::log1p(worst);
}

double secrecy_rate(const GainProfile& profile, const PowerAllocation& p) {
  return std::max(0.0, unclamped_secrecy_rate(profile, p));
}

double interference(const GainProfile& profile, std::size_t i, double p_i) {
  check_index(profile, i);
  return p_i * profile.alpha[i];
}

double jammer_revenue(double mu_i, const GainProfile& profile, std::size_t i, double p_i) {
  return mu_i * interference(profile, i, p_i);
}

double total_jammer_revenue(const GainProfile& profile, const PriceVector& prices,
                            const PowerAllocation& p) {
  check_length(profile, prices.size(), "price vector");
  check_length(profile, p.size(), "power allocation");
  double total = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    total += jammer_revenue(prices.mu[i], profile, i, p.p[i]);
  }
  return total;
}

double transmitter_revenue(const GainProfile& profile, const GameParams& params,
                           const PowerAllocation& p) {
  return params.lambda1 * secrecy_rate(profile, p) - total_jammer_revenue(profile, params.prices, p);
}

}  // namespace jamgame
