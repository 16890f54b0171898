#include "ruq/oneshot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ruq/errors.hpp"

namespace ruq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-seed exponential statistics of the hashed system. `order_offset` is the
// signed s of the target order 1+s:
//   plain:    e^{-s H_{1+s}(A|f_x(A),E)} = sum_e P_E sum_i S_i^{-s} T_i(1+s)
//   gallager: e^{-(s/(1+s)) Hup_{1+s}}   = sum_e P_E sum_i T_i(1+s)^{1/(1+s)}
// (both identities hold for negative s as well, which covers the 1-s cases).
enum class StatKind { plain, gallager };

double seed_statistic(const JointSource& src, const HashFamily& fam, std::uint64_t seed,
                      StatKind kind, double order_offset) {
    const std::size_t m = fam.range_size();
    std::vector<double> bucket_mass(m);
    std::vector<double> bucket_pow(m);
    double total = 0.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        std::fill(bucket_mass.begin(), bucket_mass.end(), 0.0);
        std::fill(bucket_pow.begin(), bucket_pow.end(), 0.0);
        for (std::size_t a = 0; a < src.a_size(); ++a) {
            const double c = src.cond(a, e);
            if (!(c > 0.0)) continue;
            const std::uint32_t b = fam.eval0(seed, a);
            bucket_mass[b] += c;
            bucket_pow[b] += std::pow(c, 1.0 + order_offset);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!(bucket_mass[i] > 0.0)) continue;
            if (kind == StatKind::plain) {
                acc += std::pow(bucket_mass[i], -order_offset) * bucket_pow[i];
            } else {
                acc += std::pow(bucket_pow[i], 1.0 / (1.0 + order_offset));
            }
        }
        total += src.p_e(e) * acc;
    }
    return total;
}

double seed_shannon(const JointSource& src, const HashFamily& fam, std::uint64_t seed) {
    const std::size_t m = fam.range_size();
    std::vector<double> bucket_mass(m);
    std::vector<double> bucket_plogp(m);
    double h = 0.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        std::fill(bucket_mass.begin(), bucket_mass.end(), 0.0);
        std::fill(bucket_plogp.begin(), bucket_plogp.end(), 0.0);
        for (std::size_t a = 0; a < src.a_size(); ++a) {
            const double c = src.cond(a, e);
            if (!(c > 0.0)) continue;
            const std::uint32_t b = fam.eval0(seed, a);
            bucket_mass[b] += c;
            bucket_plogp[b] += c * std::log(c);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (bucket_mass[i] > 0.0) {
                acc += bucket_mass[i] * std::log(bucket_mass[i]) - bucket_plogp[i];
            }
        }
        h += src.p_e(e) * acc;
    }
    return h;
}

double seed_min_entropy(const JointSource& src, const HashFamily& fam, std::uint64_t seed) {
    // H_min(A | f_x(A), E): max over cells (i,e) of the in-bucket conditional.
    double best = 0.0;
    const std::size_t m = fam.range_size();
    std::vector<double> bucket_mass(m);
    std::vector<double> bucket_max(m);
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        std::fill(bucket_mass.begin(), bucket_mass.end(), 0.0);
        std::fill(bucket_max.begin(), bucket_max.end(), 0.0);
        for (std::size_t a = 0; a < src.a_size(); ++a) {
            const double c = src.cond(a, e);
            if (!(c > 0.0)) continue;
            const std::uint32_t b = fam.eval0(seed, a);
            bucket_mass[b] += c;
            bucket_max[b] = std::max(bucket_max[b], c);
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (bucket_mass[i] > 0.0) best = std::max(best, bucket_max[i] / bucket_mass[i]);
        }
    }
    return -std::log(best);
}

double seed_min_gallager_stat(const JointSource& src, const HashFamily& fam,
                              std::uint64_t seed) {
    // e^{-Hup_min(A|f_x(A),E)} = sum_e P_E sum_i max_{a in bucket} P_{A|E}.
    const std::size_t m = fam.range_size();
    std::vector<double> bucket_max(m);
    double acc = 0.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        std::fill(bucket_max.begin(), bucket_max.end(), 0.0);
        for (std::size_t a = 0; a < src.a_size(); ++a) {
            const double c = src.cond(a, e);
            if (c > 0.0) {
                const std::uint32_t b = fam.eval0(seed, a);
                bucket_max[b] = std::max(bucket_max[b], c);
            }
        }
        double inner = 0.0;
        for (double v : bucket_max) inner += v;
        acc += src.p_e(e) * inner;
    }
    return acc;
}

// Exact expectation over an enumerable seed law.
template <class F>
double seed_expectation(const HashFamily& fam, Exec exec, F&& per_seed) {
    const std::uint64_t n = fam.seed_count();
    if (fam.uniform_seeds()) {
        const double total = par::map_sum(
            exec, static_cast<std::size_t>(n),
            [&](std::size_t x) { return per_seed(static_cast<std::uint64_t>(x)); });
        return total / static_cast<double>(n);
    }
    return par::map_sum(exec, static_cast<std::size_t>(n), [&](std::size_t x) {
        return fam.seed_prob(x) * per_seed(static_cast<std::uint64_t>(x));
    });
}

struct McEstimate {
    double mean;
    double halfwidth;  // 1.96 sd / sqrt(n)
};

template <class F>
McEstimate seed_expectation_mc(const MonteCarloParams& mc, Exec exec, F&& per_seed) {
    if (mc.samples == 0) throw UsageError("Monte Carlo needs a positive sample count");
    std::vector<double> values(static_cast<std::size_t>(mc.samples));
    auto fill = [&](std::size_t i) {
        values[i] = per_seed(splitmix64(mc.rng_seed + 0x100000001b3ULL * (i + 1)));
    };
    par::for_each(exec, values.size(), fill);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= std::max<std::size_t>(1, values.size() - 1);
    return {mean, 1.96 * std::sqrt(var / static_cast<double>(values.size()))};
}

std::string instance_desc(const OneShotInstance& inst, double s) {
    return inst.family.description() + ",|A|=" + std::to_string(inst.source.a_size()) +
           ",|E|=" + std::to_string(inst.source.e_size()) + ",eps=" +
           std::to_string(inst.epsilon) + ",s=" + std::to_string(s);
}

// Certification gate shared by the expectation-bound checks.
bool certified_almost_universal(const OneShotInstance& inst, Exec exec,
                                VerificationReport& report, double s) {
    VerificationReport cert = verify_universality(
        inst.family, UniversalityLevel::almost_universal2, inst.epsilon, 1u << 20, exec);
    if (cert.all_pass()) return true;
    CheckRecord c;
    c.id = "oneshot-precondition";
    c.instance = instance_desc(inst, s) + ",precondition-failed";
    c.verdict = Verdict::fail;
    report.checks.push_back(c);
    return false;
}

}  // namespace

OneShotInstance::OneShotInstance(JointSource src, HashFamily fam,
                                 std::optional<double> epsilon_override)
    : source(std::move(src)),
      family(std::move(fam)),
      epsilon(epsilon_override.value_or(family.epsilon_claim())) {
    if (family.domain_size() < source.a_size()) {
        throw UsageError("family domain is smaller than the source alphabet");
    }
    // epsilon = 0 is legitimate for collision-free (injective) families.
    if (!(epsilon >= 0.0)) throw UsageError("epsilon must be nonnegative");
}

double seeded_conditional_entropy(const JointSource& src, const HashFamily& fam,
                                  std::uint64_t seed, const RenyiOrderSpec& spec) {
    switch (spec.variant) {
        case Variant::shannon:
            return seed_shannon(src, fam, seed);
        case Variant::plain: {
            if (!(spec.s >= -1.0)) throw DomainError("plain variant needs s >= -1");
            if (std::abs(spec.s) < kOrderZeroEps) return seed_shannon(src, fam, seed);
            return -std::log(seed_statistic(src, fam, seed, StatKind::plain, spec.s)) / spec.s;
        }
        case Variant::gallager: {
            if (!(spec.s > -1.0)) throw DomainError("gallager variant needs s > -1");
            if (std::abs(spec.s) < kOrderZeroEps) return seed_shannon(src, fam, seed);
            return -(1.0 + spec.s) / spec.s *
                   std::log(seed_statistic(src, fam, seed, StatKind::gallager, spec.s));
        }
        case Variant::min:
            return seed_min_entropy(src, fam, seed);
        case Variant::min_gallager:
            return -std::log(seed_min_gallager_stat(src, fam, seed));
        case Variant::two_param:
            throw UsageError("two-parameter variant is not defined for hashed systems");
    }
    throw UsageError("unknown variant");
}

double hashed_conditional_entropy(const OneShotInstance& inst, const RenyiOrderSpec& spec,
                                  Exec exec, const std::optional<MonteCarloParams>& mc) {
    const JointSource& src = inst.source;
    const HashFamily& fam = inst.family;
    const bool use_mc = !fam.enumerable();
    if (use_mc && !mc) {
        throw UsageError("lazy family needs Monte Carlo parameters (samples, rng seed)");
    }
    auto expect = [&](auto&& per_seed) {
        if (use_mc) return seed_expectation_mc(*mc, exec, per_seed).mean;
        return seed_expectation(fam, exec, per_seed);
    };
    switch (spec.variant) {
        case Variant::shannon:
            return expect([&](std::uint64_t x) { return seed_shannon(src, fam, x); });
        case Variant::plain: {
            if (!(spec.s >= -1.0)) throw DomainError("plain variant needs s >= -1");
            if (std::abs(spec.s) < kOrderZeroEps) {
                return expect([&](std::uint64_t x) { return seed_shannon(src, fam, x); });
            }
            const double mean = expect([&](std::uint64_t x) {
                return seed_statistic(src, fam, x, StatKind::plain, spec.s);
            });
            return -std::log(mean) / spec.s;
        }
        case Variant::gallager: {
            if (!(spec.s > -1.0)) throw DomainError("gallager variant needs s > -1");
            if (std::abs(spec.s) < kOrderZeroEps) {
                return expect([&](std::uint64_t x) { return seed_shannon(src, fam, x); });
            }
            const double mean = expect([&](std::uint64_t x) {
                return seed_statistic(src, fam, x, StatKind::gallager, spec.s);
            });
            return -(1.0 + spec.s) / spec.s * std::log(mean);
        }
        case Variant::min: {
            // The seed is observed, so the worst seed drives the min-entropy.
            if (use_mc) throw UsageError("min variant has no Monte Carlo mode");
            double best = kInf;
            for (std::uint64_t x = 0; x < fam.seed_count(); ++x) {
                if (fam.seed_prob(x) > 0.0) {
                    best = std::min(best, seed_min_entropy(src, fam, x));
                }
            }
            return best;
        }
        case Variant::min_gallager: {
            const double mean = expect(
                [&](std::uint64_t x) { return seed_min_gallager_stat(src, fam, x); });
            return -std::log(mean);
        }
        case Variant::two_param:
            throw UsageError("two-parameter variant is not defined for hashed systems");
    }
    throw UsageError("unknown variant");
}

JointSource enlarged_joint(const OneShotInstance& inst) {
    const JointSource& src = inst.source;
    const HashFamily& fam = inst.family;
    if (!fam.enumerable()) throw UsageError("enlarged joint needs an enumerable family");
    const std::size_t m = fam.range_size();
    const std::size_t seeds = static_cast<std::size_t>(fam.seed_count());
    const std::size_t side = seeds * m * src.e_size();
    std::vector<double> joint(src.a_size() * side, 0.0);
    for (std::size_t x = 0; x < seeds; ++x) {
        const double px = fam.seed_prob(x);
        for (std::size_t a = 0; a < src.a_size(); ++a) {
            const std::uint32_t b = fam.eval0(x, a);
            for (std::size_t e = 0; e < src.e_size(); ++e) {
                const std::size_t col = (x * m + b) * src.e_size() + e;
                joint[a * side + col] += px * src.joint(a, e);
            }
        }
    }
    return JointSource(src.a_size(), side, std::move(joint));
}

VerificationReport verify_oneshot_upper(const OneShotInstance& inst, double s, Exec exec,
                                        bool exploratory) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("upper expectation checks need s in [0,1]");
    VerificationReport report;
    if (!certified_almost_universal(inst, exec, report, s)) return report;
    const JointSource& src = inst.source;
    const double m = static_cast<double>(inst.range_size());
    const double eps = inst.epsilon;

    {
        const double lhs = seed_expectation(inst.family, exec, [&](std::uint64_t x) {
            return seed_statistic(src, inst.family, x, StatKind::plain, -s);
        });
        const double h = conditional_entropy(src, RenyiOrderSpec::plain(-s));
        const double rhs = 1.0 + std::pow(eps, s) * std::exp(s * h) / std::pow(m, s);
        report.checks.push_back(
            make_check_le("oneshot-upper-plain", instance_desc(inst, s), lhs, rhs, 1e-12));
    }
    if (s <= 0.5 || exploratory) {
        const double lhs = seed_expectation(inst.family, exec, [&](std::uint64_t x) {
            return seed_statistic(src, inst.family, x, StatKind::gallager, -s);
        });
        const double h = conditional_entropy(src, RenyiOrderSpec::gallager(-s));
        const double u = s / (1.0 - s);
        const double rhs = 1.0 + std::pow(eps, u) * std::exp(u * h) / std::pow(m, u);
        CheckRecord c = make_check_le("oneshot-upper-gallager", instance_desc(inst, s), lhs,
                                      rhs, 1e-12);
        if (s > 0.5) c.verdict = Verdict::estimate;  // outside the stated range
        report.checks.push_back(c);
    }
    return report;
}

VerificationReport verify_oneshot_lower(const OneShotInstance& inst, double s, Exec exec,
                                        bool exploratory) {
    if (!(s >= 0.0)) throw DomainError("lower expectation checks need s >= 0");
    VerificationReport report;
    if (!certified_almost_universal(inst, exec, report, s)) return report;
    const JointSource& src = inst.source;
    const double m = static_cast<double>(inst.range_size());
    const double threshold = inst.epsilon / m;

    if (s <= 1.0 || exploratory) {
        const double lhs = seed_expectation(inst.family, exec, [&](std::uint64_t x) {
            return seed_statistic(src, inst.family, x, StatKind::plain, s);
        });
        double heavy = 0.0, light = 0.0;
        for (std::size_t e = 0; e < src.e_size(); ++e) {
            if (!(src.p_e(e) > 0.0)) continue;
            for (std::size_t a = 0; a < src.a_size(); ++a) {
                const double c = src.cond(a, e);
                if (!(c > 0.0)) continue;
                if (c >= threshold) {
                    heavy += src.p_e(e) * c;
                } else {
                    light += src.p_e(e) * std::pow(c, 1.0 + s);
                }
            }
        }
        // threshold = 0 empties the light set; skip its 0 * inf product
        const double rhs = std::pow(2.0, -s) * heavy +
                           (light > 0.0
                                ? std::pow(threshold, -s) * std::pow(2.0, -s) * light
                                : 0.0);
        CheckRecord c =
            make_check_ge("oneshot-lower-plain", instance_desc(inst, s), lhs, rhs, 1e-12);
        if (s > 1.0) c.verdict = Verdict::estimate;
        report.checks.push_back(c);
    }
    {
        const double lhs = seed_expectation(inst.family, exec, [&](std::uint64_t x) {
            return seed_statistic(src, inst.family, x, StatKind::gallager, s);
        });
        const double scale = s / (1.0 + s);
        double rhs = 0.0;
        for (std::size_t e = 0; e < src.e_size(); ++e) {
            if (!(src.p_e(e) > 0.0)) continue;
            double z = 0.0;
            for (std::size_t a = 0; a < src.a_size(); ++a) {
                const double c = src.cond(a, e);
                if (c > 0.0) z += std::pow(c, 1.0 + s);
            }
            double heavy = 0.0, light = 0.0;
            for (std::size_t a = 0; a < src.a_size(); ++a) {
                const double c = src.cond(a, e);
                if (!(c > 0.0)) continue;
                if (std::pow(c, 1.0 + s) >= threshold * z) {
                    heavy += c;
                } else {
                    light += std::pow(c, 1.0 + s) * std::pow(z, -scale);
                }
            }
            rhs += src.p_e(e) *
                   (std::pow(2.0, -scale) * heavy +
                    (light > 0.0
                         ? std::pow(2.0, -scale) * std::pow(threshold, -scale) * light
                         : 0.0));
        }
        report.checks.push_back(
            make_check_ge("oneshot-lower-gallager", instance_desc(inst, s), lhs, rhs, 1e-12));
    }
    return report;
}

VerificationReport conditioning_window_check(const OneShotInstance& inst, double s, Exec exec) {
    if (!(s >= -1.0 && s < 1.0)) {
        throw DomainError("conditioning window check needs s in [-1,1)");
    }
    if (!inst.family.enumerable()) throw UsageError("check needs an enumerable family");
    VerificationReport report;
    const RenyiOrderSpec spec = RenyiOrderSpec::gallager(-s);
    const double base = conditional_entropy(inst.source, spec);
    const double log_m = std::log(static_cast<double>(inst.range_size()));
    const std::uint64_t seeds = inst.family.seed_count();
    std::vector<double> values(static_cast<std::size_t>(seeds));
    auto fill = [&](std::size_t x) {
        values[x] = seeded_conditional_entropy(inst.source, inst.family, x, spec);
    };
    par::for_each(exec, values.size(), fill);
    const double worst_high = *std::max_element(values.begin(), values.end());
    const double worst_low = *std::min_element(values.begin(), values.end());
    report.checks.push_back(make_check_le("conditioning-monotonicity", instance_desc(inst, s),
                                          worst_high, base, 1e-12));
    report.checks.push_back(make_check_ge("conditioning-chain-rule", instance_desc(inst, s),
                                          worst_low, base - log_m, 1e-12));
    return report;
}

VerificationReport binomial_moment_check(const BinomialMomentQuery& q) {
    if (q.trials == 0 || q.trials > 10'000) {
        throw ResourceError("exact binomial summation supports 1 <= L <= 10000");
    }
    if (!(q.p > 0.0 && q.p <= 1.0)) throw DomainError("p must lie in (0,1]");
    if (!(q.s >= 0.0 && q.s <= 1.0)) throw DomainError("moment order must lie in [0,1]");
    if (!(q.eps > 0.0 && q.eps < 1.0)) throw DomainError("eps must lie in (0,1)");
    const long double L = static_cast<long double>(q.trials);
    const long double p = static_cast<long double>(q.p);
    const long double s = static_cast<long double>(q.s);
    const bool p_is_one = q.p >= 1.0;
    const long double log_p = std::log(p);
    const long double log_1mp = p_is_one ? -kInf : std::log1p(-p);

    // log E[N^s]: terms s log l + log C(L,l) + l log p + (L-l) log(1-p) for
    // l >= 1, folded with a running max shift.
    std::vector<long double> terms;
    terms.reserve(q.trials);
    for (std::uint64_t l = 1; l <= q.trials; ++l) {
        if (p_is_one && l != q.trials) continue;
        const long double lf = static_cast<long double>(l);
        const long double lc =
            std::lgamma(L + 1.0L) - std::lgamma(lf + 1.0L) - std::lgamma(L - lf + 1.0L);
        const long double log_tail = p_is_one ? 0.0L : (L - lf) * log_1mp;
        terms.push_back(s * std::log(lf) + lc + lf * log_p + log_tail);
    }
    const long double peak = *std::max_element(terms.begin(), terms.end());
    long double acc = 0.0L;
    for (long double t : terms) acc += std::exp(t - peak);
    const double log_moment = static_cast<double>(peak + std::log(acc));

    const long double mean = L * p;
    const long double fl = std::floor(mean * (1.0L - static_cast<long double>(q.eps)));
    const long double tail_mass =
        -std::expm1(-mean * static_cast<long double>(q.eps) * static_cast<long double>(q.eps) /
                    2.0L);
    // 0^0 := 0: a zero floor voids the lower bound (log -inf).
    const double log_lower =
        fl > 0.0L ? static_cast<double>(s * std::log(fl) + std::log(tail_mass)) : -kInf;
    const double log_upper = static_cast<double>(s * std::log(mean));

    const std::string desc = "L=" + std::to_string(q.trials) + ",p=" + std::to_string(q.p) +
                             ",s=" + std::to_string(q.s) + ",eps=" + std::to_string(q.eps) +
                             ",scale=log";
    VerificationReport report;
    report.checks.push_back(
        make_check_ge("binomial-concentration-lower", desc, log_moment, log_lower, 1e-12));
    report.checks.push_back(
        make_check_le("binomial-jensen-upper", desc, log_moment, log_upper, 1e-12));
    return report;
}

}  // namespace ruq
