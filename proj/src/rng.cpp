#include "fgr/rng.hpp"

#include <atomic>
#include <limits>

namespace fgr {

namespace {
std::atomic<std::uint64_t> g_draws{0};
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, Stream tag, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (static_cast<std::uint64_t>(tag) * 0xd1b54a32d192ed03ULL);
  std::uint64_t b = splitmix64(s);
  s = b ^ (index * 0x8cb92ba72f3d8dd7ULL + 0x2545f4914f6cdd1dULL);
  return splitmix64(s);
}

std::uint64_t Rng::next() {
  g_draws.fetch_add(1, std::memory_order_relaxed);
  return engine_();
}

std::uint64_t Rng::uniform_u64(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next();
  const std::uint64_t range = span + 1;
  // Rejection keeps the result exactly uniform and independent of the
  // standard library's distribution implementation.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return lo + x % range;
  }
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto ulo = static_cast<std::uint64_t>(lo);
  const auto span = static_cast<std::uint64_t>(hi) - ulo;
  return static_cast<std::int64_t>(ulo + uniform_u64(0, span));
}

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
}

bool Rng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01() < p;
}

std::uint64_t Rng::draw_count() { return g_draws.load(std::memory_order_relaxed); }

void Rng::reset_draw_count() { g_draws.store(0, std::memory_order_relaxed); }

}  // namespace fgr
