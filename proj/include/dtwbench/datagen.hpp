#ifndef DTWBENCH_DATAGEN_HPP
#define DTWBENCH_DATAGEN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "dtwbench/types.hpp"

namespace dtwbench {

struct Seed {
  std::uint64_t value = 0;
};

// SplitMix64 (Steele, Lea & Flood's published mixer) plus Box-Muller for
// normals. Chosen so any language can reproduce the streams bit-for-bit
// from the same seed.
class SplitMix64 {
public:
  explicit SplitMix64(Seed seed) : state_(seed.value) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double next_gaussian();

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Generators

// Standard-normal-increment random walk starting at 0.
TimeSeries random_walk(int n, Seed seed);

// Two L-second series sampled at rate_hz: one falls immediately, the other
// just before the end; in between the actor is near motionless (noise with
// stddev 0.01). The fall is a half-sine burst of amplitude 1 lasting
// min(1s, L/4).
std::pair<TimeSeries, TimeSeries> fall_pair(double L_seconds, double rate_hz,
                                            Seed seed);

// A pair engineered so coarse-resolution refinement commits to the wrong
// warping direction: a tall narrow spike shifts one way between the two
// series while a short broad bump shifts the other way, in positions that
// make the two alignments mutually exclusive. The spike is a zero-mean
// wavelet, so every PAA level flattens it to (nearly) nothing and the
// coarse passes see only the bump; full DTW sacrifices the bump cheaply,
// while FastDTW's window walls the spike alignment out for good.
struct AdversarialConfig {
  double spike_amp = 16.0;
  double spike_shoulder = -0.5;  // side samples relative to the peak
  double bump_amp = 0.025;
  double bump_width_frac = 0.5;     // bump width as a fraction of n
  double reference_level = 0.3;     // level of the companion series
  double reference_noise_sd = 0.01;
};

std::pair<TimeSeries, TimeSeries> adversarial_pair(
    int n, const AdversarialConfig& config = {});

// Companion series for the adversarial demo: a flat series at
// reference_level with seeded low-amplitude noise. Far from both adversarial
// series, and trivially approximated by windowed DTW.
TimeSeries adversarial_reference(int n, Seed seed,
                                 const AdversarialConfig& config = {});

// ---------------------------------------------------------------------------
// Dataset I/O (UCR text format: one record per line, tab- or
// comma-separated, integer class label first, samples after).

struct Dataset {
  struct Item {
    std::optional<long> label;
    TimeSeries series;
  };
  std::vector<Item> items;
  std::optional<std::size_t> uniform_length;
};

Dataset load_ucr(const std::filesystem::path& path);
void save_ucr(const Dataset& dataset, const std::filesystem::path& path);

}  // namespace dtwbench

#endif  // DTWBENCH_DATAGEN_HPP
