#ifndef RUQ_ONESHOT_HPP
#define RUQ_ONESHOT_HPP

#include <cstdint>
#include <optional>

#include "ruq/hash_family.hpp"
#include "ruq/parallel.hpp"
#include "ruq/prob.hpp"
#include "ruq/renyi.hpp"
#include "ruq/report.hpp"

namespace ruq {

// A source hashed by a seeded family. The family domain may be wider than the
// source alphabet (symbols beyond a_size carry zero mass and drop out of all
// sums); epsilon defaults to the family's certified claim.
struct OneShotInstance {
    JointSource source;
    HashFamily family;
    double epsilon;

    OneShotInstance(JointSource src, HashFamily fam,
                    std::optional<double> epsilon_override = std::nullopt);

    std::size_t range_size() const { return family.range_size(); }
};

// Conditional entropy H_variant(A | f_x(A), E) for one fixed seed, computed
// from the bucket partition without materializing the enlarged alphabet.
double seeded_conditional_entropy(const JointSource& src, const HashFamily& fam,
                                  std::uint64_t seed, const RenyiOrderSpec& spec);

struct MonteCarloParams {
    std::uint64_t samples;
    std::uint64_t rng_seed;
};

// H_variant(A | f_X(A), E, X): the seed is part of the conditioning, so the
// value is an expectation transform of the per-seed entropies. Exact by seed
// enumeration; Monte Carlo sampling is the fallback for lazy families.
// Supported variants: shannon, plain, gallager, min, min_gallager.
double hashed_conditional_entropy(const OneShotInstance& inst, const RenyiOrderSpec& spec,
                                  Exec exec = Exec::parallel,
                                  const std::optional<MonteCarloParams>& mc = std::nullopt);

// Explicit joint pmf of (A ; (X, f_X(A), E)) for small instances; the
// independent evaluation path used by the two-route agreement tests.
JointSource enlarged_joint(const OneShotInstance& inst);

// Expectation bounds on e^{+sH} for the order-(1-s) entropies: the plain
// bound for s in [0,1] and, when s <= 1/2, the Gallager-form bound. With
// `exploratory`, an s in (1/2,1] evaluates the Gallager form as an ESTIMATE
// record instead of skipping it. The family is certified as epsilon-almost
// universal_2 first; a failed certification yields a FAIL record.
VerificationReport verify_oneshot_upper(const OneShotInstance& inst, double s,
                                        Exec exec = Exec::parallel, bool exploratory = false);

// Lower bounds on the expectations of e^{-sH} for the order-(1+s) entropies:
// the plain bound for s in [0,1], the Gallager-form bound for s >= 0.
VerificationReport verify_oneshot_lower(const OneShotInstance& inst, double s,
                                        Exec exec = Exec::parallel, bool exploratory = false);

// Per-seed window: for every seed x,
//   Hup_{1-s}(A|E) - log M <= Hup_{1-s}(A|f_x(A),E) <= Hup_{1-s}(A|E).
// Needs s in [-1, 1) so the order 1-s stays positive.
VerificationReport conditioning_window_check(const OneShotInstance& inst, double s,
                                     Exec exec = Exec::parallel);

// Fractional moment of a binomial count N ~ Bin(L, p):
//   floor(Lp(1-eps))^s [1 - exp(-Lp eps^2/2)] <= E[N^s] <= (Lp)^s.
// E[N^s] is summed in log space (long double) and both inequalities are
// compared on the log scale, where the slack tolerance is well conditioned
// even at the Jensen equality point s = 1. 0^0 := 0, so E[N^0] = Pr(N >= 1).
struct BinomialMomentQuery {
    std::uint64_t trials;  // L
    double p;              // success probability, 0 < p <= 1
    double s;              // moment order in [0,1]
    double eps;            // concentration margin in (0,1)
};

VerificationReport binomial_moment_check(const BinomialMomentQuery& q);

}  // namespace ruq

#endif
