#include "ruq/multipath.hpp"

#include "ruq/errors.hpp"

namespace ruq {

MultipathConfig MultipathConfig::make(int message_bits, int piece_width, int tapped_index) {
    if (piece_width <= 0 || message_bits % piece_width != 0) {
        throw UsageError("piece width must divide the message width");
    }
    const int k = message_bits / piece_width;
    if (tapped_index < 1 || tapped_index > k) throw UsageError("tapped piece index out of range");
    return MultipathConfig{gf2m_field(message_bits), piece_width, k, tapped_index};
}

std::vector<std::uint32_t> mp_encode(const MultipathConfig& cfg, std::uint32_t message,
                                     std::uint32_t mask) {
    if ((mask & cfg.field.element_mask()) == 0) throw UsageError("mask must be nonzero");
    const std::uint32_t word = gf2_mul(cfg.field, mask, message);
    std::vector<std::uint32_t> pieces(cfg.piece_count);
    const std::uint32_t piece_mask = (1u << cfg.piece_width) - 1u;
    for (int i = 0; i < cfg.piece_count; ++i) {
        const int shift = cfg.field.m - (i + 1) * cfg.piece_width;
        pieces[i] = (word >> shift) & piece_mask;
    }
    return pieces;
}

std::uint32_t mp_decode(const MultipathConfig& cfg, const std::vector<std::uint32_t>& pieces,
                        std::uint32_t mask) {
    if ((mask & cfg.field.element_mask()) == 0) throw UsageError("mask must be nonzero");
    if (pieces.size() != static_cast<std::size_t>(cfg.piece_count)) {
        throw UsageError("piece count mismatch");
    }
    std::uint32_t word = 0;
    for (std::uint32_t piece : pieces) word = (word << cfg.piece_width) | piece;
    return gf2_mul(cfg.field, gf2_inv(cfg.field, mask), word);
}

double eavesdropper_uncertainty(const MultipathConfig& cfg, const JointSource& src,
                                const RenyiOrderSpec& spec, Exec exec) {
    if (cfg.field.m > 10) {
        throw ResourceError("exact uncertainty enumeration supports message widths up to 10");
    }
    if (src.a_size() > cfg.field.order()) {
        throw UsageError("source alphabet does not fit in the message space");
    }
    HashFamily piece = HashFamily::gf2m_piece(cfg.field, cfg.piece_width, cfg.tapped_index);
    return hashed_conditional_entropy(OneShotInstance(src, std::move(piece)), spec, exec);
}

}  // namespace ruq
