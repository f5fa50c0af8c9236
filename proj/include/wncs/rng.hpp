#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace wncs {

// SplitMix64 finalizer. Used only to derive stream seeds; the streams
// themselves are mt19937_64.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stream-seed derivation rule: nested mixes so that (base, a, b) triples
// never collide in practice. Every stream in a run is derived this way.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0) {
  return mix64(base ^ mix64(a ^ mix64(b)));
}

// Deterministic uniform/normal generator. The mappings are spelled out here
// instead of using std::uniform_real_distribution / std::normal_distribution
// because libstdc++ does not pin those algorithms across versions and the
// simulator promises bit-exact reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Box-Muller pair of independent standard normals.
  void normal_pair(double& n1, double& n2) {
    const double u1 = 1.0 - uniform();  // (0, 1]: keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * 3.14159265358979323846 * u2;
    n1 = r * std::cos(phi);
    n2 = r * std::sin(phi);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Stream tags (arbitrary fixed constants; part of the documented seeding rule).
inline constexpr std::uint64_t kFadingStreamTag = 0x46414445ull;    // "FADE"
inline constexpr std::uint64_t kDeliveryStreamTag = 0x44454C56ull;  // "DELV"
inline constexpr std::uint64_t kArrivalStreamTag = 0x41525256ull;   // "ARRV"

}  // namespace wncs
