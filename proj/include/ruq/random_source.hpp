#ifndef RUQ_RANDOM_SOURCE_HPP
#define RUQ_RANDOM_SOURCE_HPP

#include <cstdint>

#include "ruq/hash_family.hpp"
#include "ruq/prob.hpp"

namespace ruq {

// Deterministic generator with a platform-independent stream (the standard
// distributions are implementation-defined, which would break bit-exact
// replay across toolchains).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    // Uniform in [0, 1).
    double next_unit();
    // Uniform in {0, .., n-1}; modulo reduction (bias is negligible for the
    // small n used here and keeps the stream reproducible).
    std::uint64_t next_below(std::uint64_t n);

private:
    std::uint64_t state_;
};

// Dirichlet(1)-distributed joint source; a zero_fraction in [0,1) knocks out
// roughly that share of cells to exercise the zero-mass paths.
JointSource random_source(Rng& rng, std::size_t a_size, std::size_t e_size,
                          double zero_fraction = 0.0);

Pmf random_pmf(Rng& rng, std::size_t size);

// Random seeded table family with a uniform seed law.
HashFamily random_custom_family(Rng& rng, std::size_t a_size, std::size_t range, std::size_t seeds);

}  // namespace ruq

#endif
