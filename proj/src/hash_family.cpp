#include "ruq/hash_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "ruq/errors.hpp"

namespace ruq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// M^a_size when it fits below cap, otherwise nullopt.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp,
                                         std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > cap / base) return std::nullopt;
        r *= base;
    }
    return r;
}

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

}  // namespace

std::string HashFamily::description() const {
    std::string k;
    switch (kind_) {
        case Kind::binning: k = "binning"; break;
        case Kind::gf2m_piece: k = "gf2m"; break;
        case Kind::affine_prime: k = "affine"; break;
        case Kind::custom_table: k = "custom"; break;
    }
    return k + "(|A|=" + std::to_string(domain_size_) + ",M=" + std::to_string(range_size_) +
           (enumerable_ ? ",seeds=" + std::to_string(seed_count_) : ",seeds=lazy") + ")";
}

double HashFamily::seed_prob(std::uint64_t seed) const {
    if (!enumerable_) throw UsageError("lazy family has no enumerable seed law");
    if (seed_probs_.empty()) return 1.0 / static_cast<double>(seed_count_);
    return seed_probs_[seed];
}

HashFamily HashFamily::binning(std::size_t a_size, std::size_t m, std::uint64_t seed_cap) {
    if (a_size == 0 || m == 0) throw UsageError("binning family needs |A| >= 1 and M >= 1");
    HashFamily fam;
    fam.domain_size_ = a_size;
    fam.range_size_ = m;
    fam.kind_ = Kind::binning;
    fam.epsilon_claim_ = 1.0;
    const auto seeds = checked_pow(m, a_size, seed_cap);
    if (seeds) {
        // Explicit mode: the seed is the assignment vector in base-M digits.
        fam.enumerable_ = true;
        fam.seed_count_ = *seeds;
        std::vector<std::uint64_t> pow(a_size, 1);
        for (std::size_t a = 1; a < a_size; ++a) pow[a] = pow[a - 1] * m;
        fam.eval_ = [m, pow = std::move(pow)](std::uint64_t seed, std::size_t a) {
            return static_cast<std::uint32_t>(seed / pow[a] % m);
        };
    } else {
        // Lazy seeded mode: a keyed mix stands in for an unenumerable table.
        fam.enumerable_ = false;
        fam.seed_count_ = 0;
        fam.eval_ = [m](std::uint64_t seed, std::size_t a) {
            return static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(a)) % m);
        };
    }
    return fam;
}

HashFamily HashFamily::gf2m_piece(const Gf2mField& field, int piece_width, int piece_index) {
    if (piece_width <= 0 || field.m % piece_width != 0) {
        throw UsageError("piece width must divide the field width");
    }
    const int k = field.m / piece_width;
    if (piece_index < 1 || piece_index > k) throw UsageError("piece index out of range");
    HashFamily fam;
    fam.domain_size_ = field.order();
    fam.range_size_ = 1u << piece_width;
    fam.kind_ = Kind::gf2m_piece;
    fam.enumerable_ = true;
    fam.seed_count_ = field.order() - 1;  // nonzero masks, uniform
    // Exact worst-case pairwise collision: (2^(m-l) - 1)/(2^m - 1), i.e.
    // epsilon = (2^m - 2^l)/(2^m - 1) < 1; the family is universal_2.
    fam.epsilon_claim_ =
        static_cast<double>(field.order() - fam.range_size_) /
        static_cast<double>(field.order() - 1);
    const int shift = field.m - piece_index * piece_width;
    const std::uint32_t mask = fam.range_size_ - 1;
    const Gf2mField f = field;
    fam.eval_ = [f, shift, mask](std::uint64_t seed, std::size_t a) {
        const std::uint32_t x = static_cast<std::uint32_t>(seed) + 1u;
        return (gf2_mul(f, x, static_cast<std::uint32_t>(a)) >> shift) & mask;
    };
    return fam;
}

HashFamily HashFamily::affine_prime(std::uint32_t prime, std::size_t m) {
    if (!is_prime(prime)) throw UsageError("domain size must be prime");
    if (m == 0 || m > prime) throw UsageError("range must satisfy 1 <= M <= p");
    HashFamily fam;
    fam.domain_size_ = prime;
    fam.range_size_ = m;
    fam.kind_ = Kind::affine_prime;
    fam.enumerable_ = true;
    fam.seed_count_ = static_cast<std::uint64_t>(prime) * (prime - 1);
    // For any distinct pair, (u,v) -> (ux+v, uy+v) is a bijection onto pairs
    // of distinct residues, so the collision probability is the same for all
    // pairs and can be claimed exactly.
    std::vector<std::uint64_t> class_size(m, 0);
    for (std::uint32_t z = 0; z < prime; ++z) ++class_size[z % m];
    std::uint64_t collisions = 0;
    for (std::uint64_t n : class_size) collisions += n * (n - 1);
    fam.epsilon_claim_ = static_cast<double>(collisions) /
                         static_cast<double>(fam.seed_count_) * static_cast<double>(m);
    fam.eval_ = [prime, m](std::uint64_t seed, std::size_t a) {
        const std::uint64_t u = seed / prime + 1;
        const std::uint64_t v = seed % prime;
        return static_cast<std::uint32_t>((u * a + v) % prime % m);
    };
    return fam;
}

HashFamily HashFamily::custom_table(std::size_t m, std::vector<double> seed_probs,
                                    std::vector<std::vector<std::uint32_t>> tables) {
    if (tables.empty()) throw ValidationError("custom family needs at least one seed");
    if (seed_probs.size() != tables.size()) {
        throw ValidationError("seed probability count must match the table count");
    }
    const std::size_t a_size = tables.front().size();
    double mass = 0.0;
    for (double p : seed_probs) {
        if (!(p >= 0.0)) throw ValidationError("negative seed probability");
        mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-9) throw ValidationError("seed probabilities must sum to 1");
    for (double& p : seed_probs) p /= mass;
    for (auto& row : tables) {
        if (row.size() != a_size) throw ValidationError("ragged custom table");
        for (auto& b : row) {
            if (b < 1 || b > m) throw ValidationError("bucket outside 1..M");
            --b;  // store 0-based
        }
    }
    HashFamily fam;
    fam.domain_size_ = a_size;
    fam.range_size_ = m;
    fam.kind_ = Kind::custom_table;
    fam.enumerable_ = true;
    fam.seed_count_ = tables.size();
    fam.seed_probs_ = std::move(seed_probs);
    fam.eval_ = [tables = std::move(tables)](std::uint64_t seed, std::size_t a) {
        return tables[seed][a];
    };
    return fam;
}

HashFamily load_custom_family(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("missing header", 1);
    std::size_t m = 0, seeds = 0;
    if (std::sscanf(header.c_str(), "M=%zu seeds=%zu", &m, &seeds) != 2) {
        throw ParseError("header must read 'M=<int> seeds=<int>'", 1);
    }
    std::vector<double> probs;
    std::vector<std::vector<std::uint32_t>> tables;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        double p;
        if (!(ls >> p)) continue;  // blank line
        std::vector<std::uint32_t> row;
        std::uint32_t b;
        while (ls >> b) row.push_back(b);
        if (row.empty()) throw ParseError("seed line holds no buckets", lineno);
        probs.push_back(p);
        tables.push_back(std::move(row));
    }
    if (tables.size() != seeds) {
        throw ValidationError("header announces " + std::to_string(seeds) + " seeds but " +
                              std::to_string(tables.size()) + " rows follow");
    }
    return HashFamily::custom_table(m, std::move(probs), std::move(tables));
}

HashFamily load_custom_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open family file: " + path);
    return load_custom_family(in);
}

CollisionProbability collision_probability(const HashFamily& fam, std::size_t a1,
                                           std::size_t a2) {
    if (!fam.enumerable()) throw UsageError("collision probability needs an enumerable family");
    if (a1 == a2) throw UsageError("collision probability is defined for distinct symbols");
    if (fam.uniform_seeds()) {
        std::uint64_t hits = 0;
        for (std::uint64_t x = 0; x < fam.seed_count(); ++x) {
            if (fam.eval0(x, a1) == fam.eval0(x, a2)) ++hits;
        }
        return {true, hits, fam.seed_count(),
                static_cast<double>(hits) / static_cast<double>(fam.seed_count())};
    }
    long double acc = 0.0L;
    for (std::uint64_t x = 0; x < fam.seed_count(); ++x) {
        if (fam.eval0(x, a1) == fam.eval0(x, a2)) acc += fam.seed_prob(x);
    }
    return {false, 0, 0, static_cast<double>(acc)};
}

double max_pair_collision(const HashFamily& fam, Exec exec) {
    if (!fam.enumerable()) throw UsageError("certification needs an enumerable family");
    const std::size_t n = fam.domain_size();
    return par::map_max(exec, n, [&](std::size_t a1) {
        double best = 0.0;
        for (std::size_t a2 = a1 + 1; a2 < n; ++a2) {
            best = std::max(best, collision_probability(fam, a1, a2).value);
        }
        return best;
    });
}

VerificationReport verify_universality(const HashFamily& fam, UniversalityLevel level,
                                       double epsilon, std::uint64_t joint_cap, Exec exec) {
    VerificationReport report;
    if (!fam.enumerable()) {
        CheckRecord c;
        c.id = "hash-certification";
        c.instance = fam.description() + " non-enumerable";
        c.verdict = Verdict::fail;
        report.checks.push_back(c);
        return report;
    }
    const double m = static_cast<double>(fam.range_size());
    if (level == UniversalityLevel::almost_universal2 ||
        level == UniversalityLevel::universal2) {
        const double eps = level == UniversalityLevel::universal2 ? 1.0 : epsilon;
        const char* id = level == UniversalityLevel::universal2 ? "hash-universal2"
                                                                : "hash-almost-universal2";
        const double worst = fam.domain_size() > 1 ? max_pair_collision(fam, exec) : 0.0;
        report.checks.push_back(
            make_check_le(id, fam.description() + " eps=" + std::to_string(eps), worst, eps / m,
                          1e-12));
        return report;
    }

    // Strongly universal: uniform marginals plus independence of the whole
    // output collection.
    std::vector<double> marginals(fam.domain_size() * fam.range_size(), 0.0);
    const auto joint_cells = checked_pow(fam.range_size(), fam.domain_size(), joint_cap);
    std::vector<double> joint_tally(joint_cells ? static_cast<std::size_t>(*joint_cells) : 0,
                                    0.0);
    for (std::uint64_t x = 0; x < fam.seed_count(); ++x) {
        const double px = fam.seed_prob(x);
        std::uint64_t assignment = 0;
        std::uint64_t radix = 1;
        for (std::size_t a = 0; a < fam.domain_size(); ++a) {
            const std::uint32_t b = fam.eval0(x, a);
            marginals[a * fam.range_size() + b] += px;
            if (joint_cells) {
                assignment += b * radix;
                radix *= fam.range_size();
            }
        }
        if (joint_cells) joint_tally[assignment] += px;
    }
    double marginal_dev = 0.0;
    for (double v : marginals) marginal_dev = std::max(marginal_dev, std::abs(v - 1.0 / m));
    report.checks.push_back(make_check_le("hash-uniform-marginals", fam.description(),
                                          marginal_dev, 0.0, 1e-12));
    if (joint_cells) {
        const double target = 1.0 / static_cast<double>(*joint_cells);
        double dev = 0.0;
        for (double v : joint_tally) dev = std::max(dev, std::abs(v - target));
        report.checks.push_back(
            make_check_le("hash-joint-independence", fam.description(), dev, 0.0, 1e-12));
    } else {
        // Full joint law is out of reach; certify pairwise independence and
        // flag the weaker claim.
        const std::size_t n = fam.domain_size();
        const double dev = par::map_max(exec, n, [&](std::size_t a1) {
            double worst = 0.0;
            std::vector<double> pair_tally(fam.range_size() * fam.range_size());
            for (std::size_t a2 = a1 + 1; a2 < n; ++a2) {
                std::fill(pair_tally.begin(), pair_tally.end(), 0.0);
                for (std::uint64_t x = 0; x < fam.seed_count(); ++x) {
                    pair_tally[fam.eval0(x, a1) * fam.range_size() + fam.eval0(x, a2)] +=
                        fam.seed_prob(x);
                }
                for (double v : pair_tally) worst = std::max(worst, std::abs(v - 1.0 / (m * m)));
            }
            return worst;
        });
        report.checks.push_back(make_check_le("hash-pairwise-independence",
                                              fam.description() + " flag=pairwise-only", dev,
                                              0.0, 1e-12));
    }
    return report;
}

}  // namespace ruq
