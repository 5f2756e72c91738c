#pragma once

#include <cstdint>
#include <vector>

#include "polysemy/gof.hpp"
#include "polysemy/model.hpp"

namespace polysemy {

/// SplitMix64: the fully specified 64-bit generator
///   z = (state += 0x9E3779B97F4A7C15)
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// Replicate r uses the substream seeded with seed + r.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform deviate strictly inside (0, 1).
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

struct SimConfig {
    std::uint64_t seed;
    int replicates;
    ZipfFit fit;
};

/// One empirical spectrum per replicate: each rank draws its degree from the
/// geometric polysemy law with mean m_F via closed-form inverse CDF.
/// Deterministic given (seed, replicate index).
std::vector<PolysemySpectrum> sample_spectrum(const SimConfig& config);

/// Runs the chi-square protocol on each sampled spectrum against the
/// generating model's totals; returns the p-values.
std::vector<double> calibrate_pvalues(const SimConfig& config,
                                      const MergePolicy& policy);

}  // namespace polysemy
