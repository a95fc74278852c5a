#include "conewalk/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace conewalk {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t label_hash(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index) noexcept {
  return mix64(mix64(master ^ label_hash(label)) + mix64(index + 0x632be59bd9b4e019ULL));
}

int default_thread_count() {
  if (const char* env = std::getenv("CONEWALK_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n_tasks, int threads,
                  const std::function<void(std::size_t)>& task) {
  if (threads <= 0) threads = default_thread_count();
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n_tasks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_tasks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void MeanAccumulator::merge(const MeanAccumulator& o) {
  if (o.n == 0) return;
  if (n == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n);
  const double nb = static_cast<double>(o.n);
  const double delta = o.mean - mean;
  const double total = na + nb;
  mean += delta * nb / total;
  m2 += o.m2 + delta * delta * na * nb / total;
  n += o.n;
}

Estimate MeanAccumulator::estimate() const {
  if (n == 0) return {0.0, 0.0};
  return {mean, std::sqrt(variance() / static_cast<double>(n))};
}

void RatioAccumulator::merge(const RatioAccumulator& o) {
  n += o.n;
  sa += o.sa;
  sb += o.sb;
  saa += o.saa;
  sbb += o.sbb;
  sab += o.sab;
}

Estimate RatioAccumulator::ratio() const {
  if (n == 0 || sb == 0.0) return {0.0, 0.0};
  const double nn = static_cast<double>(n);
  const double r = sa / sb;
  const double mb = sb / nn;
  // sample variance of (a - r b)
  const double ss = saa - 2.0 * r * sab + r * r * sbb;
  const double var = n > 1 ? std::max(ss, 0.0) / (nn - 1.0) : 0.0;
  return {r, std::sqrt(var / nn) / std::abs(mb)};
}

}  // namespace conewalk
