#include "qvac/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qvac::quad {

namespace {

int g_max_threads = 1;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::int64_t kChunk = 4096;

struct ChunkStats {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Runs fn(i) for i in [0, n) across the configured thread count.
template <typename F>
void parallel_for(std::int64_t n, const F& fn) {
  const int nt = std::min<std::int64_t>(g_max_threads, n);
  if (nt <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  std::atomic<std::int64_t> next{0};
  for (int t = 0; t < nt; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

void set_max_threads(int n) { g_max_threads = std::max(1, n); }
int max_threads() { return g_max_threads; }

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
  key_ = mix64(seed ^ mix64(stream));
}

std::uint64_t CounterRng::next_u64() { return mix64(key_ ^ mix64(counter_++)); }

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

BoxPairSampler::BoxPairSampler(const std::array<double, 3>& lo_a,
                               const std::array<double, 3>& hi_a,
                               const std::array<double, 3>& lo_b,
                               const std::array<double, 3>& hi_b)
    : lo_a_(lo_a), hi_a_(hi_a), lo_b_(lo_b), hi_b_(hi_b) {}

double BoxPairSampler::volume(int) const {
  double v = 1.0;
  for (int k = 0; k < 3; ++k)
    v *= (hi_a_[k] - lo_a_[k]) * (hi_b_[k] - lo_b_[k]);
  return v;
}

void BoxPairSampler::sample(int, CounterRng& rng, double* out) const {
  for (int k = 0; k < 3; ++k)
    out[k] = lo_a_[k] + (hi_a_[k] - lo_a_[k]) * rng.uniform();
  for (int k = 0; k < 3; ++k)
    out[3 + k] = lo_b_[k] + (hi_b_[k] - lo_b_[k]) * rng.uniform();
}

namespace {

// Accumulates n samples of stratum s, chunked; chunks are evaluated in
// parallel but combined in index order.
ChunkStats accumulate_stratum(const FnN& f, const PairSampler& sampler, int stratum,
                              std::uint64_t seed, std::int64_t first_index,
                              std::int64_t n) {
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<ChunkStats> chunks(nchunks);
  parallel_for(nchunks, [&](std::int64_t c) {
    const std::int64_t lo = c * kChunk;
    const std::int64_t hi = std::min(n, lo + kChunk);
    double s = 0.0, s2 = 0.0, pt[6];
    for (std::int64_t i = lo; i < hi; ++i) {
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(stratum) << 56) ^
          static_cast<std::uint64_t>(first_index + i);
      CounterRng rng(seed, stream);
      sampler.sample(stratum, rng, pt);
      const double y = f(pt);
      s += y;
      s2 += y * y;
    }
    chunks[c] = {s, s2};
  });
  ChunkStats total;
  for (const ChunkStats& c : chunks) {
    total.sum += c.sum;
    total.sum_sq += c.sum_sq;
  }
  return total;
}

}  // namespace

IntegralResult integrate_mc(const FnN& f, const PairSampler& sampler,
                            const QuadratureSpec& spec) {
  if (spec.mc_samples < 10000)
    throw std::invalid_argument("integrate_mc: mc_samples must be >= 1e4");
  const int ns = sampler.strata();
  double total_volume = 0.0;
  for (int s = 0; s < ns; ++s) {
    const double v = sampler.volume(s);
    if (v < 0.0) throw std::invalid_argument("integrate_mc: negative stratum volume");
    total_volume += v;
  }
  if (total_volume <= 0.0)
    throw std::invalid_argument("integrate_mc: zero-volume region");

  // Pilot pass: equal share of 10% of the budget per stratum.
  const std::int64_t pilot_total = std::max<std::int64_t>(ns * 256, spec.mc_samples / 10);
  const std::int64_t pilot_per = std::max<std::int64_t>(256, pilot_total / ns);
  std::vector<ChunkStats> pilot(ns);
  std::vector<double> sigma(ns, 0.0);
  for (int s = 0; s < ns; ++s) {
    if (sampler.volume(s) == 0.0) continue;
    pilot[s] = accumulate_stratum(f, sampler, s, spec.seed, 0, pilot_per);
    const double mean = pilot[s].sum / pilot_per;
    const double var =
        std::max(0.0, pilot[s].sum_sq / pilot_per - mean * mean);
    sigma[s] = std::sqrt(var);
  }

  // Neyman allocation of the remaining budget, floor 256 per live stratum.
  const std::int64_t remaining =
      std::max<std::int64_t>(0, spec.mc_samples - ns * pilot_per);
  double weight_sum = 0.0;
  for (int s = 0; s < ns; ++s) weight_sum += sampler.volume(s) * sigma[s];
  std::vector<std::int64_t> alloc(ns, 0);
  for (int s = 0; s < ns; ++s) {
    if (sampler.volume(s) == 0.0) continue;
    if (weight_sum > 0.0) {
      alloc[s] = static_cast<std::int64_t>(
          remaining * (sampler.volume(s) * sigma[s] / weight_sum));
    } else {
      alloc[s] = remaining / ns;
    }
    alloc[s] = std::max<std::int64_t>(alloc[s], 256);
  }

  double value = 0.0, var_total = 0.0;
  std::int64_t evals = 0;
  for (int s = 0; s < ns; ++s) {
    const double vol = sampler.volume(s);
    if (vol == 0.0) continue;
    ChunkStats st = pilot[s];
    std::int64_t n = pilot_per;
    if (alloc[s] > 0) {
      const ChunkStats extra =
          accumulate_stratum(f, sampler, s, spec.seed, pilot_per, alloc[s]);
      st.sum += extra.sum;
      st.sum_sq += extra.sum_sq;
      n += alloc[s];
    }
    const double mean = st.sum / n;
    const double var = std::max(0.0, st.sum_sq / n - mean * mean);
    value += vol * mean;
    var_total += vol * vol * var / n;
    evals += n;
  }
  IntegralResult res{value, std::sqrt(var_total), evals, false};
  res.converged =
      res.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(value));
  return res;
}

}  // namespace qvac::quad
