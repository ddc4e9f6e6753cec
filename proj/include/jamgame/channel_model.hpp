#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace jamgame {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Raw channel realization for one legitimate user, L eavesdroppers and
/// their dedicated jammers.
struct ChannelSet {
  ComplexVector h1;              // transmitter -> legitimate user, length n_t
  std::vector<ComplexVector> g;  // transmitter -> eavesdropper l, each length n_t
  ComplexVector gj;              // jammer l -> eavesdropper l
  std::size_t n_t = 0;
  std::size_t n_eves = 0;

  /// Throws Error(kDimensionMismatch) if the shapes are inconsistent.
  void validate() const;

  bool operator==(const ChannelSet&) const = default;
};

struct Beamformer {
  ComplexVector w;
  double total_power = 0.0;
};

/// Real scalars every solver consumes.
///   beta0    = |w^H h1|^2 / sigma2
///   beta[i]  = |w^H g_i|^2
///   alpha[i] = |gj_i|^2
struct GainProfile {
  double beta0 = 0.0;
  std::vector<double> beta;
  std::vector<double> alpha;
  double sigma_e2 = 0.1;
  double sigma2 = 0.1;

  std::size_t size() const noexcept { return beta.size(); }

  /// Unjammed SINR of eavesdropper i, beta[i] / sigma_e2.
  double unjammed_sinr(std::size_t i) const { return beta.at(i) / sigma_e2; }

  void validate() const;

  bool operator==(const GainProfile&) const = default;
};

/// Every entry is an independent unit-variance circularly symmetric complex
/// Gaussian (real and imaginary parts N(0, 1/2)). Deterministic per arguments.
ChannelSet generate_channels(std::uint64_t seed, std::size_t n_t, std::size_t n_eves);

/// Maximum-ratio transmission toward the legitimate user:
/// w = sqrt(total_power) * h1 / ||h1||.
Beamformer mrt_beamformer(const ChannelSet& channels, double total_power = 1.0);

GainProfile gain_profile(const ChannelSet& channels, const Beamformer& beamformer, double sigma2,
                         double sigma_e2);

/// w^H x
Complex inner(const ComplexVector& w, const ComplexVector& x);

/// Independent per-trial stream seed derived from a base seed and a trial index.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

}  // namespace jamgame
