#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

namespace conewalk {

using Rng = std::mt19937_64;

/// Monte Carlo result: point estimate and its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable 64-bit FNV-1a hash of a label (independent of std::hash).
std::uint64_t label_hash(std::string_view label) noexcept;

/// Seed of the substream (label, index) below `master`. Adding new indices
/// never changes the seeds of existing ones.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index) noexcept;

inline Rng make_rng(std::uint64_t master, std::string_view label,
                    std::uint64_t index) {
  return Rng(derive_seed(master, label, index));
}

/// Worker count: CONEWALK_THREADS if set, otherwise hardware concurrency.
int default_thread_count();

/// Runs `task(i)` for i in [0, n_tasks) on up to `threads` workers
/// (0 = default_thread_count()). Tasks must write only to their own slot.
void parallel_for(std::size_t n_tasks, int threads,
                  const std::function<void(std::size_t)>& task);

/// Samples are drawn in fixed-size chunks, each with its own substream, so
/// results do not depend on the number of workers.
inline constexpr std::size_t kMonteCarloChunk = 4096;

/// Chunked Monte Carlo driver. `Acc` is a default-constructible accumulator
/// with `void merge(const Acc&)`. `fill(rng, count, acc)` draws `count`
/// samples into `acc`. Chunks are merged in index order.
template <class Acc, class Fill>
Acc chunked_monte_carlo(std::size_t n_samples, std::uint64_t base_seed,
                        std::string_view label, int threads, Fill&& fill) {
  const std::size_t n_chunks =
      (n_samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<Acc> partial(n_chunks);
  parallel_for(n_chunks, threads, [&](std::size_t c) {
    Rng rng = make_rng(base_seed, label, c);
    const std::size_t begin = c * kMonteCarloChunk;
    const std::size_t count = std::min(kMonteCarloChunk, n_samples - begin);
    fill(rng, count, partial[c]);
  });
  Acc total{};
  for (const Acc& p : partial) total.merge(p);
  return total;
}

/// Running mean/variance accumulator (Chan et al. parallel merge).
struct MeanAccumulator {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  void merge(const MeanAccumulator& o);
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  Estimate estimate() const;
};

/// Accumulates pairs (a, b) for the ratio estimator sum(a)/sum(b) with a
/// delta-method standard error.
struct RatioAccumulator {
  std::size_t n = 0;
  double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;

  void add(double a, double b) {
    ++n;
    sa += a;
    sb += b;
    saa += a * a;
    sbb += b * b;
    sab += a * b;
  }
  void merge(const RatioAccumulator& o);
  Estimate ratio() const;
};

}  // namespace conewalk
