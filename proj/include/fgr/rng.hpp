#pragma once

#include <cstdint>
#include <random>

namespace fgr {

// Purpose tags for deriving independent streams from one master seed.
enum class Stream : std::uint64_t {
  generate = 1,
  prime = 2,
  shift = 3,
  bucket = 4,
  estimate = 5,
  heavy = 6,
  trial = 7,
};

std::uint64_t splitmix64(std::uint64_t& state);

// Stream seed for (master seed, purpose, task index). Serial and concurrent
// runs see the same stream for the same task.
std::uint64_t derive_seed(std::uint64_t master, Stream tag, std::uint64_t index = 0);

// All randomness in the library is drawn through this type. Every draw bumps
// a process-wide counter so tests can prove a code path is RNG-free.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next();
  // Uniform on the closed interval [lo, hi]. Requires lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi);
  double uniform01();
  bool bernoulli(double p);

  static std::uint64_t draw_count();
  static void reset_draw_count();

 private:
  std::mt19937_64 engine_;
};

}  // namespace fgr
