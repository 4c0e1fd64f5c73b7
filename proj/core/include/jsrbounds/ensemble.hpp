#pragma once

#include <cstdint>
#include <random>

#include "jsrbounds/semigroup.hpp"

// Seeded matrix ensembles. This is the one place randomness enters the
// project; everything here is pinned so runs reproduce bit-for-bit:
//   - generator: std::mt19937_64 (standardized output sequence)
//   - uniforms: u = (g() >> 11) * 2^-53 in [0, 1), independent of any
//     library distribution implementation
//   - entries: complex, uniform in the closed unit disc, by rejection from
//     the square [-1, 1)^2
//   - per-(d, r) streams: seeds mixed with splitmix64 so a block's
//     instances do not depend on which other blocks run

namespace jsr {

std::uint64_t splitmix64(std::uint64_t x);

class DiscEnsemble {
public:
    explicit DiscEnsemble(std::uint64_t seed) : gen_(seed) {}

    /// Stream seed for the (d, r) block of a benchmark run.
    static std::uint64_t block_seed(std::uint64_t seed, int d, int r);

    double uniform01();    // [0, 1)
    double uniform_sym();  // [-1, 1)
    Complex unit_disc();
    ComplexMatrix matrix(int d);
    MatrixSet set(int d, int r);

    /// Next set with at least one nonvanishing d-product (rho > 0). For
    /// continuous entries rejection essentially never triggers.
    MatrixSet non_nilpotent_set(int d, int r);

private:
    std::mt19937_64 gen_;
};

}  // namespace jsr
