#include "ruq/gf2m.hpp"

#include "ruq/errors.hpp"

namespace ruq {

namespace {

// Lowest-weight, lexicographically smallest irreducible polynomial per degree
// 1..16; re-verified by verify_irreducible in the test suite.
constexpr std::uint32_t kPolyTable[17] = {
    0,       // unused
    0x2,     // x
    0x7,     // x^2+x+1
    0xb,     // x^3+x+1
    0x13,    // x^4+x+1
    0x25,    // x^5+x^2+1
    0x43,    // x^6+x+1
    0x83,    // x^7+x+1
    0x11b,   // x^8+x^4+x^3+x+1
    0x203,   // x^9+x+1
    0x409,   // x^10+x^3+1
    0x805,   // x^11+x^2+1
    0x1009,  // x^12+x^3+1
    0x201b,  // x^13+x^4+x^3+x+1
    0x4021,  // x^14+x^5+1
    0x8003,  // x^15+x+1
    0x1002b  // x^16+x^5+x^3+x+1
};

int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// Remainder of a modulo b over GF(2)[x].
std::uint32_t poly_mod(std::uint64_t a, std::uint32_t b) {
    const int db = poly_degree(b);
    int da = -1;
    for (std::uint64_t t = a; t; t >>= 1) ++da;
    while (da >= db) {
        a ^= static_cast<std::uint64_t>(b) << (da - db);
        da = -1;
        for (std::uint64_t t = a; t; t >>= 1) ++da;
    }
    return static_cast<std::uint32_t>(a);
}

}  // namespace

Gf2mField gf2m_field(int m) {
    if (m < 1 || m > 16) throw DomainError("field width must lie in 1..16");
    return Gf2mField{m, kPolyTable[m]};
}

std::uint32_t gf2_mul(const Gf2mField& field, std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = 0;
    a &= field.element_mask();
    b &= field.element_mask();
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & (1u << field.m)) a ^= field.reduction_poly;
    }
    return r & field.element_mask();
}

std::uint32_t gf2_pow(const Gf2mField& field, std::uint32_t a, std::uint64_t exponent) {
    std::uint32_t base = a & field.element_mask();
    std::uint32_t r = 1;
    while (exponent) {
        if (exponent & 1u) r = gf2_mul(field, r, base);
        base = gf2_mul(field, base, base);
        exponent >>= 1;
    }
    return r;
}

std::uint32_t gf2_inv(const Gf2mField& field, std::uint32_t a) {
    if ((a & field.element_mask()) == 0) throw DomainError("zero has no inverse");
    return gf2_pow(field, a, field.order() - 2u);
}

bool verify_irreducible(int m, std::uint32_t poly) {
    if (m < 1 || m > 16) throw DomainError("degree must lie in 1..16");
    if (poly_degree(poly) != m) return false;
    for (int d = 1; d <= m / 2; ++d) {
        for (std::uint32_t q = 1u << d; q < (2u << d); ++q) {
            if (poly_mod(poly, q) == 0) return false;
        }
    }
    return true;
}

}  // namespace ruq
