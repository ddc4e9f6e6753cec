#include "jamgame/channel_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "jamgame/error.hpp"

namespace jamgame {

namespace {

Complex draw(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

double squared_norm(const ComplexVector& v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return acc;
}

}  // namespace

void ChannelSet::validate() const {
  if (n_t == 0 || n_eves == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "n_t and n_eves must be positive");
  }
  if (h1.size() != n_t) {
    throw Error(ErrorCode::kDimensionMismatch, "h1 has length " + std::to_string(h1.size()) +
                                                   ", expected " + std::to_string(n_t));
  }
  if (g.size() != n_eves || gj.size() != n_eves) {
    throw Error(ErrorCode::kDimensionMismatch, "g and gj must have n_eves entries");
  }
  for (const auto& gl : g) {
    if (gl.size() != n_t) throw Error(ErrorCode::kDimensionMismatch, "g[l] must have length n_t");
  }
}

void GainProfile::validate() const {
  if (beta.size() != alpha.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "beta and alpha differ in length");
  }
  if (!(sigma_e2 > 0.0) || !(sigma2 > 0.0)) {
    throw Error(ErrorCode::kDimensionMismatch, "noise variances must be positive");
  }
  auto ok = [](double x) { return std::isfinite(x) && x >= 0.0; };
  if (!ok(beta0)) throw Error(ErrorCode::kDimensionMismatch, "beta0 must be finite and >= 0");
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (!ok(beta[i]) || !ok(alpha[i])) {
      throw Error(ErrorCode::kDimensionMismatch, "gains must be finite and >= 0");
    }
  }
}

ChannelSet generate_channels(std::uint64_t seed, std::size_t n_t, std::size_t n_eves) {
  if (n_t == 0 || n_eves == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "n_t and n_eves must be positive");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

  ChannelSet out;
  out.n_t = n_t;
  out.n_eves = n_eves;
  out.h1.resize(n_t);
  for (auto& x : out.h1) x = draw(rng, normal);
  out.g.assign(n_eves, ComplexVector(n_t));
  for (auto& gl : out.g) {
    for (auto& x : gl) x = draw(rng, normal);
  }
  out.gj.resize(n_eves);
  for (auto& x : out.gj) x = draw(rng, normal);
  return out;
}

Beamformer mrt_beamformer(const ChannelSet& channels, double total_power) {
  if (!(total_power > 0.0)) {
    throw Error(ErrorCode::kDimensionMismatch, "total_power must be positive");
  }
  const double norm = std::sqrt(squared_norm(channels.h1));
  if (norm == 0.0) throw Error(ErrorCode::kZeroChannel, "legitimate channel h1 is zero");

  Beamformer bf;
  bf.total_power = total_power;
  bf.w.reserve(channels.h1.size());
  const double scale = std::sqrt(total_power) / norm;
  for (const auto& x : channels.h1) bf.w.push_back(scale * x);
  return bf;
}

Complex inner(const ComplexVector& w, const ComplexVector& x) {
  if (w.size() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "inner product lengths");
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < w.size(); ++k) acc += std::conj(w[k]) * x[k];
  return acc;
}

GainProfile gain_profile(const ChannelSet& channels, const Beamformer& beamformer, double sigma2,
                         double sigma_e2) {
  channels.validate();
  if (beamformer.w.size() != channels.n_t) {
    throw Error(ErrorCode::kDimensionMismatch, "beamformer length differs from n_t");
  }
  GainProfile profile;
  profile.sigma2 = sigma2;
  profile.sigma_e2 = sigma_e2;
  profile.beta0 = std::norm(inner(beamformer.w, channels.h1)) / sigma2;
  profile.beta.reserve(channels.n_eves);
  profile.alpha.reserve(channels.n_eves);
  for (std::size_t l = 0; l < channels.n_eves; ++l) {
    profile.beta.push_back(std::norm(inner(beamformer.w, channels.g[l])));
    profile.alpha.push_back(std::norm(channels.gj[l]));
  }
  profile.validate();
  return profile;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  // splitmix64 finalizer over a golden-ratio stride
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace jamgame
