#include "gase/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "gase/errors.hpp"
#include "gase/mathkernel.hpp"

namespace gase::mc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

// Fixed so that the reduction tree never depends on the worker count.
constexpr std::uint64_t kChunkSize = 4096;

struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  Moments out;
  out.n = a.n + b.n;
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  const double delta = b.mean - a.mean;
  out.mean = a.mean + delta * nb / (na + nb);
  out.m2 = a.m2 + b.m2 + delta * delta * na * nb / (na + nb);
  return out;
}

Moments tree_reduce(const std::vector<Moments>& parts, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(tree_reduce(parts, lo, mid), tree_reduce(parts, mid, hi));
}

Moments run_chunks(const SampleFn& sample, const McConfig& cfg) {
  const std::uint64_t n_chunks = (cfg.samples + kChunkSize - 1) / kChunkSize;
  std::vector<Moments> parts(n_chunks);

  auto do_chunk = [&](std::uint64_t c) {
    Moments m;
    const std::uint64_t begin = c * kChunkSize;
    const std::uint64_t end = std::min(cfg.samples, begin + kChunkSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(cfg.seed, cfg.stream_id, i);
      if (auto v = sample(rng)) m.push(*v);
    }
    parts[c] = m;
  };

  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, cfg.workers), n_chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) do_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::uint64_t c = next++; c < n_chunks; c = next++) do_chunk(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n_chunks;
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  return tree_reduce(parts, 0, parts.size());
}

McEstimate finish(const Moments& m, const McConfig& cfg) {
  McEstimate e;
  e.mean = m.mean;
  e.samples = m.n;
  e.draws = cfg.samples;
  e.seed = cfg.seed;
  e.stream_id = cfg.stream_id;
  if (m.n > 1) {
    const double var = std::max(0.0, m.m2 / static_cast<double>(m.n - 1));
    e.std_error = std::sqrt(var / static_cast<double>(m.n));
  }
  return e;
}

McEstimate finish_binomial(const Moments& m, const McConfig& cfg) {
  McEstimate e = finish(m, cfg);
  const double p = std::clamp(m.mean, 0.0, 1.0);
  e.std_error = m.n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(m.n)) : 0.0;
  return e;
}

double erlang_tail(int k, double y) {
  // P{sum of k unit exponentials >= y}
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < k; ++j) {
    term *= y / j;
    sum += term;
  }
  return std::exp(-y) * sum;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint32_t stream_id,
                       std::uint64_t sample_index)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      counter_{static_cast<std::uint32_t>(sample_index),
               static_cast<std::uint32_t>(sample_index >> 32), stream_id, 0u} {}

void CounterRng::refill() {
  buffer_ = philox4x32_10(counter_, key_);
  ++counter_[3];
  used_ = 0;
}

double CounterRng::uniform() {
  if (used_ > 2) refill();
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(buffer_[used_]) << 32) | buffer_[used_ + 1];
  used_ += 2;
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::exponential() { return -std::log(uniform()); }

void McConfig::validate() const {
  if (samples < 1) throw DomainError("McConfig: samples must be >= 1");
}

McEstimate mc_estimate(const SampleFn& sample, const McConfig& cfg) {
  cfg.validate();
  return finish(run_chunks(sample, cfg), cfg);
}

McEstimate mc_ergodic_capacity(const SnrSampler& snr, const McConfig& cfg) {
  return mc_estimate(
      [&](CounterRng& rng) -> std::optional<double> {
        return std::log2(1.0 + snr(rng));
      },
      cfg);
}

McEstimate mc_conditional_capacity(
    const std::function<std::optional<double>(CounterRng&)>& snr,
    const McConfig& cfg) {
  return mc_estimate(
      [&](CounterRng& rng) -> std::optional<double> {
        if (auto g = snr(rng)) return std::log2(1.0 + *g);
        return std::nullopt;
      },
      cfg);
}

McEstimate mc_mode_probability(const EventPredicate& event, const McConfig& cfg) {
  cfg.validate();
  const auto m = run_chunks(
      [&](CounterRng& rng) -> std::optional<double> {
        return event(rng) ? 1.0 : 0.0;
      },
      cfg);
  return finish_binomial(m, cfg);
}

McEstimate mc_affected_area(const PowerField& field, const SpatialRegion& region,
                            double threshold_w, const McConfig& cfg) {
  cfg.validate();
  if (!(region.radius > 0.0) || !(region.tail_bound >= 0.0)) {
    throw DomainError("mc_affected_area: region needs radius > 0 and tail_bound >= 0");
  }
  const double radius = region.radius;
  const auto m = run_chunks(
      [&](CounterRng& rng) -> std::optional<double> {
        const double r = radius * std::sqrt(rng.uniform());
        const double phi = 2.0 * math::kPi * rng.uniform();
        return field(r * std::cos(phi), r * std::sin(phi), rng) >= threshold_w
                   ? 1.0
                   : 0.0;
      },
      cfg);
  McEstimate e = finish_binomial(m, cfg);
  const double disk = math::kPi * radius * radius;
  e.mean *= disk;
  e.std_error *= disk;
  if (region.tail_bound > 1e-5 * e.mean) {
    std::ostringstream os;
    os << "mc_affected_area: tail bound " << region.tail_bound
       << " m^2 exceeds 1e-5 of the estimate " << e.mean
       << " m^2; enlarge the sampling radius (currently " << radius << " m)";
    throw TailCertificationError(os.str(), region.tail_bound, e.mean);
  }
  return e;
}

PowerField rayleigh_field(std::vector<Transmitter> transmitters,
                          double path_loss_exponent) {
  return [txs = std::move(transmitters), a = path_loss_exponent](
             double x, double y, CounterRng& rng) {
    double total = 0.0;
    for (const auto& t : txs) {
      const double r2 = (x - t.x) * (x - t.x) + (y - t.y) * (y - t.y);
      total += t.power_w * rng.exponential() / std::pow(r2, 0.5 * a);
    }
    return total;
  };
}

double rayleigh_tail_bound(const std::vector<Transmitter>& transmitters,
                           double path_loss_exponent, double threshold_w,
                           double radius) {
  if (transmitters.empty()) return 0.0;
  double reach = 0.0;
  for (const auto& t : transmitters) reach = std::max(reach, std::hypot(t.x, t.y));
  if (!(radius > reach)) {
    throw DomainError("rayleigh_tail_bound: radius must enclose every transmitter");
  }
  const int k = static_cast<int>(transmitters.size());
  // Beyond the disk each distance is at least rho - |c_i|, so the total power
  // is dominated by (largest possible mean) times an Erlang-k variable.
  auto integrand = [&](double s) {
    const double rho = radius * std::exp(s);
    double mu_max = 0.0;
    for (const auto& t : transmitters) {
      mu_max = std::max(mu_max, t.power_w / std::pow(rho - std::hypot(t.x, t.y),
                                                     path_loss_exponent));
    }
    return 2.0 * math::kPi * rho * rho * erlang_tail(k, threshold_w / mu_max);
  };
  // Composite Simpson in s = log(rho / R) over four decades of radius.
  const int n = 20000;
  const double s_max = std::log(1e4);
  const double h = s_max / n;
  double sum = integrand(0.0) + integrand(s_max);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
  return sum * h / 3.0;
}

SpatialRegion certified_region(const std::vector<Transmitter>& transmitters,
                               double path_loss_exponent, double threshold_w,
                               double rel_tail) {
  if (transmitters.empty()) throw DomainError("certified_region: no transmitters");
  double reach = 0.0;
  double p_max = 0.0;
  for (const auto& t : transmitters) {
    reach = std::max(reach, std::hypot(t.x, t.y));
    p_max = std::max(p_max, t.power_w);
  }
  const double r0 = std::pow(p_max / threshold_w, 1.0 / path_loss_exponent);
  // Strongest source alone already covers pi r0^2 Gamma(1 + 2/a) > pi r0^2 / e.
  const double area_floor = math::kPi * r0 * r0 / std::exp(1.0);
  double radius = reach + r0;
  for (int iter = 0; iter < 200; ++iter) {
    const double tail =
        rayleigh_tail_bound(transmitters, path_loss_exponent, threshold_w, radius);
    if (tail <= rel_tail * area_floor) return {radius, tail};
    radius *= 1.1;
  }
  throw DomainError("certified_region: could not certify a sampling radius");
}

}  // namespace gase::mc
