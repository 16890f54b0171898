#ifndef RUQ_GF2M_HPP
#define RUQ_GF2M_HPP

#include <cstdint>

namespace ruq {

// Binary extension field F_{2^m} for m in 1..16, elements as bitmasks.
// The reduction polynomial carries bit m set (degree exactly m).
struct Gf2mField {
    int m;
    std::uint32_t reduction_poly;

    std::uint32_t order() const { return 1u << m; }
    std::uint32_t element_mask() const { return (1u << m) - 1u; }
};

// The field for a given width, backed by the built-in polynomial table
// (lowest-weight, then lexicographically smallest irreducible per degree).
Gf2mField gf2m_field(int m);

// Carry-less (schoolbook) product reduced modulo the field polynomial.
std::uint32_t gf2_mul(const Gf2mField& field, std::uint32_t a, std::uint32_t b);

std::uint32_t gf2_pow(const Gf2mField& field, std::uint32_t a, std::uint64_t exponent);

// Multiplicative inverse via a^(2^m - 2); a must be nonzero.
std::uint32_t gf2_inv(const Gf2mField& field, std::uint32_t a);

// True iff poly (degree m, m <= 16) has no divisor of degree 1..m/2 over
// GF(2)[x]; degree-1 polynomials are irreducible by convention.
bool verify_irreducible(int m, std::uint32_t poly);

}  // namespace ruq

#endif
