#ifndef PAIRLIK_RNG_HPP
#define PAIRLIK_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace pairlik {

/// One Philox4x32-10 block: 4 counter words encrypted under a 2-word key.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/**
 * Counter-based random stream.
 *
 * A stream is identified by (seed, stream, tag): the seed is the Philox
 * key, stream and tag occupy the upper counter words and the lower word
 * counts blocks. Distinct identities never share a counter value, so
 * replication r of an experiment owns RngStream(seed, r, tag) regardless
 * of which thread runs it.
 *
 * Satisfies UniformRandomBitGenerator, but the library draws through
 * uniform() and normal() so that results do not depend on the standard
 * library's distribution implementations.
 */
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0, std::uint32_t tag = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() noexcept;

  /// Independent child stream; deterministic in (this identity, tag).
  [[nodiscard]] RngStream split(std::uint32_t tag) const noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint32_t tag_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pairlik

#endif  // PAIRLIK_RNG_HPP
