#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace dsssp {

// Deterministic random stream. Children derived with fork() depend only on
// the parent's identity and the child name, never on how many draws the
// parent has made, so experiments replay bit-exactly per seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : id_(mix(seed ^ 0x9e3779b97f4a7c15ULL)) { reseed(); }

  Rng fork(std::string_view name) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
    return Rng(id_, mix(h));
  }
  Rng fork(std::uint64_t index) const { return Rng(id_, mix(index + 0x632be59bd9b4e019ULL)); }

  std::uint64_t id() const { return id_; }
  std::uint64_t next_u64() { return eng_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
  }
  bool bernoulli(double p) { return uniform01() < p; }
  // Exp(rate) by inverse transform of a 64-bit uniform.
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }
  std::mt19937_64& engine() { return eng_; }

 private:
  Rng(std::uint64_t parent, std::uint64_t salt) : id_(mix(parent ^ salt)) { reseed(); }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  void reseed() {
    std::seed_seq seq{static_cast<std::uint32_t>(id_), static_cast<std::uint32_t>(id_ >> 32)};
    eng_.seed(seq);
  }

  std::uint64_t id_;
  std::mt19937_64 eng_;
};

}  // namespace dsssp
