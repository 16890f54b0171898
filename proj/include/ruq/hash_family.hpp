#ifndef RUQ_HASH_FAMILY_HPP
#define RUQ_HASH_FAMILY_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ruq/gf2m.hpp"
#include "ruq/parallel.hpp"
#include "ruq/report.hpp"

namespace ruq {

// A seeded family {f_x : {0..|A|-1} -> {1..M}} with a seed distribution.
// Buckets are 1..M at the public surface and 0..M-1 internally.
class HashFamily {
public:
    enum class Kind { binning, gf2m_piece, affine_prime, custom_table };

    static constexpr std::uint64_t kDefaultSeedCap = 1u << 24;

    std::size_t domain_size() const { return domain_size_; }
    std::size_t range_size() const { return range_size_; }
    Kind kind() const { return kind_; }
    std::string description() const;
    double epsilon_claim() const { return epsilon_claim_; }

    // Explicitly enumerable seed space; lazy families answer false and only
    // support sampled evaluation.
    bool enumerable() const { return enumerable_; }
    std::uint64_t seed_count() const { return seed_count_; }
    double seed_prob(std::uint64_t seed) const;
    bool uniform_seeds() const { return seed_probs_.empty(); }

    // Bucket in 1..M.
    std::uint32_t eval(std::uint64_t seed, std::size_t a) const { return eval_(seed, a) + 1; }
    // Bucket in 0..M-1.
    std::uint32_t eval0(std::uint64_t seed, std::size_t a) const { return eval_(seed, a); }

    static HashFamily binning(std::size_t a_size, std::size_t m,
                              std::uint64_t seed_cap = kDefaultSeedCap);
    static HashFamily gf2m_piece(const Gf2mField& field, int piece_width, int piece_index);
    static HashFamily affine_prime(std::uint32_t prime, std::size_t m);
    static HashFamily custom_table(std::size_t m, std::vector<double> seed_probs,
                                   std::vector<std::vector<std::uint32_t>> tables);

private:
    HashFamily() = default;

    std::size_t domain_size_ = 0;
    std::size_t range_size_ = 0;
    Kind kind_ = Kind::custom_table;
    bool enumerable_ = true;
    std::uint64_t seed_count_ = 0;
    std::vector<double> seed_probs_;  // empty for uniform seed laws
    double epsilon_claim_ = 1.0;
    std::function<std::uint32_t(std::uint64_t, std::size_t)> eval_;
};

// Text format: header "M=<int> seeds=<int>", then one line per seed holding
// the seed probability followed by |A| bucket values in 1..M.
HashFamily load_custom_family(std::istream& in);
HashFamily load_custom_family_file(const std::string& path);

// Exact pairwise collision probability for distinct symbols. Uniform-seed
// families report the integer count over the seed count; weighted families
// report a long-double accumulated value.
struct CollisionProbability {
    bool exact_rational;
    std::uint64_t numerator;
    std::uint64_t denominator;
    double value;
};

CollisionProbability collision_probability(const HashFamily& fam, std::size_t a1, std::size_t a2);

// Largest pairwise collision probability over all distinct pairs.
double max_pair_collision(const HashFamily& fam, Exec exec = Exec::parallel);

enum class UniversalityLevel { almost_universal2, universal2, strongly_universal };

// Certification by exhaustive enumeration. The strongly-universal level
// checks uniform marginals plus full joint independence when M^|A| fits the
// cap, and falls back to pairwise independence (flagged in the record) when
// it does not. Failures are verdicts, not errors.
VerificationReport verify_universality(const HashFamily& fam, UniversalityLevel level,
                                       double epsilon = 1.0,
                                       std::uint64_t joint_cap = 1u << 20,
                                       Exec exec = Exec::parallel);

}  // namespace ruq

#endif
