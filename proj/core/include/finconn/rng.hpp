#pragma once

#include <array>
#include <cstdint>

namespace finconn {

// Philox4x32-10 counter-based generator. A draw is a pure function of
// (key, counter), so any (seed, stream, sample, slot) addressing scheme is
// reproducible independently of thread scheduling or evaluation order.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                            std::uint64_t ctr_hi,
                                            std::uint64_t ctr_lo) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    std::array<std::uint32_t, 4> c = {
        static_cast<std::uint32_t>(ctr_lo),
        static_cast<std::uint32_t>(ctr_lo >> 32),
        static_cast<std::uint32_t>(ctr_hi),
        static_cast<std::uint32_t>(ctr_hi >> 32)};
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = 0xD2511F53ull * c[0];
      std::uint64_t p1 = 0xCD9E8D57ull * c[2];
      std::array<std::uint32_t, 4> n;
      n[0] = static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0;
      n[1] = static_cast<std::uint32_t>(p1);
      n[2] = static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1;
      n[3] = static_cast<std::uint32_t>(p0);
      c = n;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    return c;
  }

  static std::uint64_t draw_u64(std::uint64_t key, std::uint64_t ctr_hi,
                                std::uint64_t ctr_lo) {
    auto b = block(key, ctr_hi, ctr_lo);
    return (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
  }

  // Uniform double in [0,1) with 53 random bits.
  static double draw_unit(std::uint64_t key, std::uint64_t ctr_hi,
                          std::uint64_t ctr_lo) {
    return static_cast<double>(draw_u64(key, ctr_hi, ctr_lo) >> 11) *
           0x1.0p-53;
  }
};

// Addressing: key mixes the user seed with a stream index; the counter packs
// (sample index, slot index). Slots enumerate independent uniforms consumed
// within one Monte Carlo sample (e.g. one per bond).
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed, stream)) {}

  double unit(std::uint64_t sample, std::uint64_t slot) const {
    return Philox4x32::draw_unit(key_, sample, slot);
  }
  bool bernoulli(double p, std::uint64_t sample, std::uint64_t slot) const {
    return unit(sample, slot) < p;
  }
  std::uint64_t bits(std::uint64_t sample, std::uint64_t slot) const {
    return Philox4x32::draw_u64(key_, sample, slot);
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

}  // namespace finconn
