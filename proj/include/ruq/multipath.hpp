#ifndef RUQ_MULTIPATH_HPP
#define RUQ_MULTIPATH_HPP

#include <cstdint>
#include <vector>

#include "ruq/gf2m.hpp"
#include "ruq/oneshot.hpp"

namespace ruq {

// Masked piece-splitting scheme: an m-bit message is multiplied by a nonzero
// field mask and cut into k = m/l pieces of l bits, most significant first.
struct MultipathConfig {
    Gf2mField field;
    int piece_width;   // l, divides field.m
    int piece_count;   // k = m / l
    int tapped_index;  // j in 1..k, the piece the eavesdropper sees

    static MultipathConfig make(int message_bits, int piece_width, int tapped_index);
};

std::vector<std::uint32_t> mp_encode(const MultipathConfig& cfg, std::uint32_t message,
                                     std::uint32_t mask);

std::uint32_t mp_decode(const MultipathConfig& cfg, const std::vector<std::uint32_t>& pieces,
                        std::uint32_t mask);

// H_variant(A | tapped piece, E, mask) under a uniform nonzero mask, by exact
// enumeration (delegates to the hashed-system machinery). The source alphabet
// must fit in the field; message bits beyond a_size carry zero mass.
double eavesdropper_uncertainty(const MultipathConfig& cfg, const JointSource& src,
                                const RenyiOrderSpec& spec, Exec exec = Exec::parallel);

}  // namespace ruq

#endif
