#include "jamgame/fixed_price_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jamgame/error.hpp"
#include "jamgame/golden_section.hpp"

namespace jamgame {

namespace {

struct Threshold {
  std::size_t index;
  double sinr;    // unjammed SINR beta_i / sigma_e2
  double weight;  // mu_i beta_i
};

void check_inputs(const GainProfile& profile, const PriceVector& prices, double lambda1) {
  profile.validate();
  if (prices.size() != profile.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "price vector has length " +
                                                   std::to_string(prices.size()) + ", expected " +
                                                   std::to_string(profile.size()));
  }
  for (double mu : prices.mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw Error(ErrorCode::kNonPositivePrice, "interference prices must be finite and >= 0");
    }
  }
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
    throw Error(ErrorCode::kConfigError, "lambda1 must be positive");
  }
}

bool jammable(const GainProfile& profile, std::size_t i) {
  return profile.beta[i] > 0.0 && profile.alpha[i] > 0.0;
}

// Eavesdroppers the transmitter can pay to jam, sorted by unjammed SINR,
// strongest first.
std::vector<Threshold> priced_thresholds(const GainProfile& profile, const PriceVector& prices) {
  std::vector<Threshold> out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (jammable(profile, i) && prices.mu[i] > 0.0) {
      out.push_back({i, profile.unjammed_sinr(i), prices.mu[i] * profile.beta[i]});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Threshold& a, const Threshold& b) { return a.sinr > b.sinr; });
  return out;
}

// Eavesdroppers with no jammer coverage fix a lower bound on the achievable
// worst-case SINR.
double unjammable_floor(const GainProfile& profile) {
  double floor = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile.beta[i] > 0.0 && profile.alpha[i] == 0.0) {
      floor = std::max(floor, profile.unjammed_sinr(i));
    }
  }
  return floor;
}

double upper_sinr(const GainProfile& profile) {
  double hi = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) hi = std::max(hi, profile.unjammed_sinr(i));
  return hi;
}

template <typename T>
T objective(const GainProfile& profile, const PriceVector& prices, double lambda1, T gamma0) {
  T cost = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!jammable(profile, i) || prices.mu[i] == 0.0) continue;
    const T excess = T(profile.beta[i]) / gamma0 - T(profile.sigma_e2);
    if (excess > 0) cost += T(prices.mu[i]) * excess;
  }
  return T(lambda1) * (std::log1p(T(profile.beta0)) - std::log1p(gamma0)) - cost;
}

}  // namespace

double stationary_gamma(double tau, double lambda1) {
  return (tau + std::sqrt(tau * (4.0 * lambda1 + tau))) / (2.0 * lambda1);
}

double price_weighted_beta(const GainProfile& profile, const PriceVector& prices,
                           const std::vector<std::size_t>& indices) {
  double tau = 0.0;
  for (std::size_t i : indices) tau += prices.mu.at(i) * profile.beta.at(i);
  return tau;
}

double gamma_objective(const GainProfile& profile, const PriceVector& prices, double lambda1,
                       double gamma0) {
  check_inputs(profile, prices, lambda1);
  if (!(gamma0 > 0.0)) throw Error(ErrorCode::kNonPositiveGamma, "gamma0 must be positive");
  return objective(profile, prices, lambda1, gamma0);
}

FixedPriceSolution allocation_for_gamma(const GainProfile& profile, const PriceVector& prices,
                                        double lambda1, double gamma0) {
  check_inputs(profile, prices, lambda1);
  if (!(gamma0 > 0.0)) throw Error(ErrorCode::kNonPositiveGamma, "gamma0 must be positive");

  FixedPriceSolution sol;
  sol.gamma0 = gamma0;
  sol.powers = PowerAllocation::zeros(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!jammable(profile, i)) continue;
    if (profile.unjammed_sinr(i) > gamma0 + kActiveTieTolerance) {
      sol.powers.p[i] = (profile.beta[i] / gamma0 - profile.sigma_e2) / profile.alpha[i];
      sol.active_set.push_back(i);
    }
  }
  const double tau = price_weighted_beta(profile, prices, sol.active_set);
  const double onep = 1.0 + gamma0;
  sol.concavity_ok = gamma0 * gamma0 * gamma0 / (onep * onep) <= 2.0 * tau / lambda1;
  sol.revenue = transmitter_revenue(profile, GameParams{lambda1, prices}, sol.powers);
  sol.secrecy_clamped = unclamped_secrecy_rate(profile, sol.powers) <= 0.0;
  return sol;
}

FixedPriceSolution solve_fixed_price(const GainProfile& profile, const PriceVector& prices,
                                     double lambda1) {
  check_inputs(profile, prices, lambda1);
  const auto thresholds = priced_thresholds(profile, prices);
  if (thresholds.empty()) {
    throw Error(ErrorCode::kNoJammableEavesdropper,
                "no eavesdropper has positive beta, alpha and price");
  }

  // The derivative of the objective in gamma has the sign of
  // tau(gamma) (1 + gamma) - lambda1 gamma^2, where tau(gamma) sums mu_i beta_i
  // over eavesdroppers with unjammed SINR above gamma. That expression changes
  // sign once, so walk the intervals between consecutive thresholds upward
  // (largest candidate set first) until the stationary point of the current
  // set falls inside its interval, or the sign flips at a threshold.
  const std::size_t n = thresholds.size();
  std::vector<double> tau_prefix(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) tau_prefix[k + 1] = tau_prefix[k] + thresholds[k].weight;

  double gamma = thresholds.front().sinr;  // buy nothing
  bool pinned = true;
  for (std::size_t k = n; k >= 1; --k) {
    const double lower = k < n ? thresholds[k].sinr : 0.0;
    const double upper = thresholds[k - 1].sinr;
    const double g = stationary_gamma(tau_prefix[k], lambda1);
    if (g <= lower) {
      gamma = lower;
      pinned = true;
      break;
    }
    if (g <= upper) {
      gamma = g;
      pinned = false;
      break;
    }
  }
  if (const double floor = unjammable_floor(profile); floor > gamma) {
    gamma = floor;
    pinned = true;
  }

  FixedPriceSolution sol = allocation_for_gamma(profile, prices, lambda1, gamma);
  sol.on_threshold = pinned;
  if (!pinned && !sol.concavity_ok) {
    const auto reference = oracle_fixed_price(profile, prices, lambda1);
    if (std::abs(reference.gamma0 - gamma) > 1e-6 * (1.0 + gamma)) {
      throw Error(ErrorCode::kNonConcaveObjective,
                  "stationary gamma0 is not the maximizer; lambda1 is too small for these prices");
    }
  }
  return sol;
}

FixedPriceSolution oracle_fixed_price(const GainProfile& profile, const PriceVector& prices,
                                      double lambda1, double tol) {
  check_inputs(profile, prices, lambda1);
  if (priced_thresholds(profile, prices).empty()) {
    throw Error(ErrorCode::kNoJammableEavesdropper,
                "no eavesdropper has positive beta, alpha and price");
  }
  using Wide = long double;
  const Wide lo = std::max(1e-9, unjammable_floor(profile));
  const Wide hi = std::max<Wide>(lo, upper_sinr(profile));
  Wide gamma = lo;
  if (hi > lo) {
    gamma = golden_section_maximize<Wide>(
        [&](Wide g) { return objective<Wide>(profile, prices, lambda1, g); }, lo, hi,
        Wide(tol) * hi);
  }
  return allocation_for_gamma(profile, prices, lambda1, static_cast<double>(gamma));
}

}  // namespace jamgame
