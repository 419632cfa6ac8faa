#pragma once

#include <cstdint>
#include <random>

namespace wordwait {

/// Random stream for one replication of a simulation.
///
/// The engine is seeded from (master seed, replication index) through
/// std::seed_seq, so replication i sees the same numbers no matter how the
/// replications are spread over threads. Bounded integers and uniforms are
/// derived from raw 64-bit output here rather than through the
/// implementation-defined std:: distributions.
class ReplicationStream {
 public:
  ReplicationStream(std::uint64_t master_seed, std::uint64_t replication) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(replication),
                      static_cast<std::uint32_t>(replication >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n), n > 0.
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wordwait
