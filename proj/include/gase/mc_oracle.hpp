#pragma once

// Monte Carlo oracles that re-derive every closed form from raw fading draws.
//
// Randomness comes from a Philox4x32-10 counter generator keyed by
// (seed, stream_id, sample index). Samples are grouped in fixed-size chunks
// whose partial moments are merged in a fixed pairwise order, so an estimate
// depends only on the McConfig and never on how many workers ran it.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace gase::mc {

/// Philox4x32 with 10 rounds.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Stream of variates for one sample index.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint32_t stream_id,
             std::uint64_t sample_index);

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  /// Unit-mean exponential by inverse cdf.
  double exponential();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  std::uint32_t stream_id = 0;
  /// Execution hint only; results are identical for any value.
  unsigned workers = 1;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;  // accepted samples entering the mean
  std::uint64_t draws = 0;    // sample indices visited
  std::uint64_t seed = 0;
  std::uint32_t stream_id = 0;
};

/// Per-sample value; std::nullopt rejects the sample (conditional means).
using SampleFn = std::function<std::optional<double>(CounterRng&)>;

/// Mean and standard error of the accepted sample values.
McEstimate mc_estimate(const SampleFn& sample, const McConfig& cfg);

/// Instantaneous SNR draw.
using SnrSampler = std::function<double(CounterRng&)>;

/// Mean of log2(1 + gamma). Callers apply any half-duplex factor themselves.
McEstimate mc_ergodic_capacity(const SnrSampler& snr, const McConfig& cfg);

/// Like mc_ergodic_capacity but only over draws where `snr` returns a value.
McEstimate mc_conditional_capacity(
    const std::function<std::optional<double>(CounterRng&)>& snr,
    const McConfig& cfg);

using EventPredicate = std::function<bool(CounterRng&)>;

/// Binomial proportion with normal-approximation standard error.
McEstimate mc_mode_probability(const EventPredicate& event, const McConfig& cfg);

/// Received power at planar position (x, y) for one set of fading draws.
using PowerField = std::function<double(double x, double y, CounterRng&)>;

struct SpatialRegion {
  double radius = 0.0;  // sampling disk centred at the origin, m
  /// Upper bound on the affected area lying outside the disk, m^2.
  double tail_bound = 0.0;
};

/// Disk area times the fraction of (position, fading) draws with received
/// power >= threshold. Throws TailCertificationError when the region's tail
/// bound exceeds 1e-5 of the estimate.
McEstimate mc_affected_area(const PowerField& field, const SpatialRegion& region,
                            double threshold_w, const McConfig& cfg);

/// Transmitter placed at (x, y) radiating `power_w` under Rayleigh fading.
struct Transmitter {
  double x = 0.0;
  double y = 0.0;
  double power_w = 0.0;
};

/// Field sum_i P_i Z_i / r_i^a with independent Z_i ~ Exp(1).
PowerField rayleigh_field(std::vector<Transmitter> transmitters,
                          double path_loss_exponent);

/// Bound on the affected area outside radius R for a set of Rayleigh
/// transmitters, from the Erlang tail of the strongest possible mean.
double rayleigh_tail_bound(const std::vector<Transmitter>& transmitters,
                           double path_loss_exponent, double threshold_w,
                           double radius);

/// Smallest radius (grown geometrically) whose tail bound is below
/// `rel_tail` times a lower bound on the affected area.
SpatialRegion certified_region(const std::vector<Transmitter>& transmitters,
                               double path_loss_exponent, double threshold_w,
                               double rel_tail = 1e-6);

}  // namespace gase::mc
