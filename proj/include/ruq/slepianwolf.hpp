#ifndef RUQ_SLEPIANWOLF_HPP
#define RUQ_SLEPIANWOLF_HPP

#include <cstdint>
#include <vector>

#include "ruq/parallel.hpp"
#include "ruq/prob.hpp"
#include "ruq/report.hpp"

namespace ruq {

// A fixed deterministic block encoder over the n-fold product source.
// Blocks and messages are dense 0-based indices; a block index decodes to its
// symbol vector in lexicographic (most-significant-digit-first) order.
struct SwSystem {
    ProductSource product;
    std::vector<std::uint32_t> encoder;  // size product.a_cells(), values < message_count
    std::uint32_t message_count;

    SwSystem(ProductSource p, std::vector<std::uint32_t> table, std::uint32_t m);
};

// One sampled random-binning encoder (keyed by rng_seed) lifted to block
// indices.
SwSystem sampled_binning_system(ProductSource p, std::uint32_t message_count,
                                std::uint64_t rng_seed);

struct DecodeResult {
    bool ok;                // false when the message has an empty preimage
    std::uint64_t a_index;  // lexicographically smallest maximizer when ok
};

// Posterior maximizer over the encoder preimage of the message, given a side
// block with positive probability. Ties break to the smallest block index.
DecodeResult map_decode(const SwSystem& sys, std::uint32_t message, std::uint64_t e_index);

struct CorrectProbability {
    double p_correct;
    double p_error;  // 1 - p_correct; empty-preimage mass counts as error
};

CorrectProbability correct_probability(const SwSystem& sys, Exec exec = Exec::parallel);

// Explicit joint pmf of (A^n ; (f(A^n), E^n)).
JointSource sw_enlarged_joint(const SwSystem& sys);

// -(1/1) log P_c computed from the decoder table equals the Gallager
// min-entropy of the hashed block system; checked to 1e-10.
VerificationReport verify_strong_converse_identity(const SwSystem& sys,
                                                   Exec exec = Exec::parallel);

// Finite-blocklength chain for s >= 1:
//   -log(1 - P_e) >= s Hup_{1+s} >= s H_{1+s}
//                >= -log(1 - s P_e + (s(1+s)/2) sum P(m,e) tail(m,e)^2),
// with every term computed exactly by enumeration.
VerificationReport verify_decoding_chain(const SwSystem& sys, double s,
                                      Exec exec = Exec::parallel);

}  // namespace ruq

#endif
