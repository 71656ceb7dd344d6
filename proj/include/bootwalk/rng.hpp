#pragma once

#include <cstdint>
#include <limits>

namespace bootwalk {

// Counter-based generator: draw i of stream `key` is a fixed avalanche mix
// of key and i, so any draw can be produced at random access, and replica
// streams derived from one master seed are independent of scheduling.
// Every simulation result in this library is a pure function of
// (master seed, replica index, draw index).
class CounterRng {
 public:
  explicit CounterRng(uint64_t key, uint64_t start = 0) : key_(key), ctr_(start) {}

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static uint64_t at(uint64_t key, uint64_t i) {
    return mix(key + (i + 1) * 0x9e3779b97f4a7c15ULL);
  }

  // Stream for one replica of a master seed. Replicas 0, 1, ... get keys
  // that differ in a full mix, never by a small offset.
  static CounterRng for_replica(uint64_t master, uint64_t replica) {
    return CounterRng(mix(master ^ at(0x243f6a8885a308d3ULL, replica)));
  }

  uint64_t next() { return at(key_, ctr_++); }

  // Uniform index in [0, p), rejection sampled so no residue is favored.
  int next_index(int p) {
    const uint64_t limit = std::numeric_limits<uint64_t>::max();
    const uint64_t rem = (limit % static_cast<uint64_t>(p) + 1) % static_cast<uint64_t>(p);
    for (;;) {
      const uint64_t w = next();
      if (rem == 0 || w <= limit - rem) return static_cast<int>(w % static_cast<uint64_t>(p));
    }
  }

  // Uniform on [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  uint64_t key() const { return key_; }
  uint64_t counter() const { return ctr_; }

 private:
  uint64_t key_;
  uint64_t ctr_;
};

}  // namespace bootwalk
