#pragma once

#include <array>
#include <cstdint>

#include "qvac/quadrature.hpp"

namespace qvac::quad {

// Number of worker threads used by the internally parallel engines.  The
// reduction order is fixed, so results are identical for any setting.
void set_max_threads(int n);
int max_threads();

// Counter-based generator: the value stream is a pure function of
// (seed, stream, counter), so per-sample substreams are independent of
// thread scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  double uniform();  // [0, 1)
  std::uint64_t next_u64();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Samples matched pairs of points from regions A and B.  Strata partition
// A x B; volume(s) is the product measure of stratum s.
class PairSampler {
 public:
  virtual ~PairSampler() = default;
  virtual int strata() const { return 1; }
  virtual double volume(int stratum) const = 0;
  // Fills xyz of the A point (out[0..2]) and the B point (out[3..5]).
  virtual void sample(int stratum, CounterRng& rng, double* out) const = 0;
};

// Two axis-aligned boxes; single stratum.
class BoxPairSampler : public PairSampler {
 public:
  BoxPairSampler(const std::array<double, 3>& lo_a, const std::array<double, 3>& hi_a,
                 const std::array<double, 3>& lo_b, const std::array<double, 3>& hi_b);
  double volume(int) const override;
  void sample(int, CounterRng& rng, double* out) const override;

 private:
  std::array<double, 3> lo_a_, hi_a_, lo_b_, hi_b_;
};

// Stratified Monte Carlo estimate of the pair integral of f over A x B.
// A pilot pass sizes the strata (Neyman allocation); accumulation is
// chunked in fixed index order, so the result is bit-identical across
// thread counts for a given seed.
IntegralResult integrate_mc(const FnN& f, const PairSampler& sampler,
                            const QuadratureSpec& spec);

}  // namespace qvac::quad
