#include "ruq/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ruq/errors.hpp"

namespace ruq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log sum_i exp(terms[i]) with max shift; empty input -> -inf.
double log_sum_exp(const std::vector<double>& terms) {
    if (terms.empty()) return -kInf;
    const double m = *std::max_element(terms.begin(), terms.end());
    if (m == -kInf) return -kInf;
    double acc = 0.0;
    for (double v : terms) acc += std::exp(v - m);
    return m + std::log(acc);
}

// log sum_a P_{A|E}(a|e)^order over the support of the conditional row.
double inner_log(const JointSource& src, std::size_t e, double order) {
    std::vector<double> terms;
    terms.reserve(src.a_size());
    for (std::size_t a = 0; a < src.a_size(); ++a) {
        const double c = src.cond(a, e);
        if (c > 0.0) terms.push_back(order * std::log(c));
    }
    return log_sum_exp(terms);
}

// sum_a c^order log c / sum_a c^order, computed with a max shift.
double tilted_mean_log(const JointSource& src, std::size_t e, double order) {
    double max_term = -kInf;
    for (std::size_t a = 0; a < src.a_size(); ++a) {
        const double c = src.cond(a, e);
        if (c > 0.0) max_term = std::max(max_term, order * std::log(c));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t a = 0; a < src.a_size(); ++a) {
        const double c = src.cond(a, e);
        if (c > 0.0) {
            const double w = std::exp(order * std::log(c) - max_term);
            num += w * std::log(c);
            den += w;
        }
    }
    return num / den;
}

double shannon_conditional(const JointSource& src) {
    double h = 0.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        for (std::size_t a = 0; a < src.a_size(); ++a) {
            const double c = src.cond(a, e);
            if (c > 0.0) h -= src.p_e(e) * c * std::log(c);
        }
    }
    return h;
}

double min_entropy(const JointSource& src) {
    double best = 0.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        for (std::size_t a = 0; a < src.a_size(); ++a) best = std::max(best, src.cond(a, e));
    }
    return -std::log(best);
}

double min_gallager_entropy(const JointSource& src) {
    double acc = 0.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        double best = 0.0;
        for (std::size_t a = 0; a < src.a_size(); ++a) best = std::max(best, src.cond(a, e));
        acc += src.p_e(e) * best;
    }
    return -std::log(acc);
}

// log sum_e P_E(e) exp(g(e)) over e with positive mass.
template <class G>
double outer_log(const JointSource& src, G&& g) {
    std::vector<double> terms;
    terms.reserve(src.e_size());
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (src.p_e(e) > 0.0) terms.push_back(std::log(src.p_e(e)) + g(e));
    }
    return log_sum_exp(terms);
}

}  // namespace

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::shannon: return "shannon";
        case Variant::plain: return "plain";
        case Variant::gallager: return "gallager";
        case Variant::two_param: return "two-param";
        case Variant::min: return "min";
        case Variant::min_gallager: return "min-gallager";
    }
    return "?";
}

std::optional<Variant> variant_from_name(const std::string& name) {
    if (name == "shannon") return Variant::shannon;
    if (name == "plain") return Variant::plain;
    if (name == "gallager") return Variant::gallager;
    if (name == "two-param" || name == "two_param") return Variant::two_param;
    if (name == "min") return Variant::min;
    if (name == "min-gallager" || name == "min_gallager") return Variant::min_gallager;
    return std::nullopt;
}

double renyi_divergence(const Pmf& p, std::span<const double> q, double order) {
    if (q.size() != p.size()) throw UsageError("divergence arguments differ in size");
    for (double v : q) {
        if (!(v >= 0.0)) throw UsageError("sub-distribution entries must be nonnegative");
    }
    const double s = order - 1.0;
    if (std::abs(s) < kOrderZeroEps) return relative_entropy(p, q);
    std::vector<double> terms;
    terms.reserve(p.size());
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (!(p[a] > 0.0)) continue;
        if (!(q[a] > 0.0)) {
            if (s > 0.0) return kInf;
            continue;  // q^{-s} = q^{|s|} = 0: the term vanishes
        }
        terms.push_back((1.0 + s) * std::log(p[a]) - s * std::log(q[a]));
    }
    return log_sum_exp(terms) / s;
}

double relative_entropy(const Pmf& p, std::span<const double> q) {
    if (q.size() != p.size()) throw UsageError("divergence arguments differ in size");
    double d = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (!(p[a] > 0.0)) continue;
        if (!(q[a] > 0.0)) return kInf;
        d += p[a] * (std::log(p[a]) - std::log(q[a]));
    }
    return d;
}

double renyi_entropy(const Pmf& p, double order) {
    if (std::abs(order - 1.0) < kOrderZeroEps) return shannon_entropy(p);
    std::vector<double> terms;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] > 0.0) terms.push_back(order * std::log(p[a]));
    }
    return log_sum_exp(terms) / (1.0 - order);
}

double conditional_entropy(const JointSource& src, const RenyiOrderSpec& spec) {
    switch (spec.variant) {
        case Variant::shannon:
            return shannon_conditional(src);
        case Variant::min:
            return min_entropy(src);
        case Variant::min_gallager:
            return min_gallager_entropy(src);
        case Variant::plain: {
            // s = -1 (order 0) is admitted: the inner sum counts the support.
            if (!(spec.s >= -1.0)) throw DomainError("plain variant needs s >= -1");
            if (std::abs(spec.s) < kOrderZeroEps) return shannon_conditional(src);
            const double L = outer_log(src, [&](std::size_t e) {
                return inner_log(src, e, 1.0 + spec.s);
            });
            return -L / spec.s;
        }
        case Variant::gallager: {
            if (!(spec.s > -1.0)) throw DomainError("gallager variant needs s > -1");
            if (std::abs(spec.s) < kOrderZeroEps) return shannon_conditional(src);
            const double L = outer_log(src, [&](std::size_t e) {
                return inner_log(src, e, 1.0 + spec.s) / (1.0 + spec.s);
            });
            return -(1.0 + spec.s) / spec.s * L;
        }
        case Variant::two_param: {
            if (!(spec.s > -1.0) || !(spec.t > -1.0)) {
                throw DomainError("two-parameter variant needs s > -1 and t > -1");
            }
            if (std::abs(spec.s) < kOrderZeroEps) {
                throw DomainError("two-parameter variant is undefined at s = 0");
            }
            const double L = outer_log(src, [&](std::size_t e) {
                return inner_log(src, e, 1.0 + spec.s) -
                       spec.s / (1.0 + spec.t) * inner_log(src, e, 1.0 + spec.t);
            });
            return -(1.0 + spec.t) / spec.s * L;
        }
    }
    throw UsageError("unknown variant");
}

double conditional_entropy(const JointSource& src, const RenyiOrderSpec& spec,
                           const Pmf& relative_q) {
    if (relative_q.size() != src.e_size()) {
        throw UsageError("reference distribution size must match the side alphabet");
    }
    if (spec.variant != Variant::shannon && spec.variant != Variant::plain) {
        throw UsageError("relative-Q form accepts only the shannon and plain variants");
    }
    const bool shannon_case =
        spec.variant == Variant::shannon || std::abs(spec.s) < kOrderZeroEps;
    if (shannon_case) {
        double h = 0.0;
        for (std::size_t e = 0; e < src.e_size(); ++e) {
            for (std::size_t a = 0; a < src.a_size(); ++a) {
                const double p = src.joint(a, e);
                if (!(p > 0.0)) continue;
                if (!(relative_q[e] > 0.0)) return -kInf;
                h -= p * (std::log(p) - std::log(relative_q[e]));
            }
        }
        return h;
    }
    if (!(spec.s > -1.0)) throw DomainError("plain variant needs s > -1");
    std::vector<double> terms;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        for (std::size_t a = 0; a < src.a_size(); ++a) {
            const double p = src.joint(a, e);
            if (!(p > 0.0)) continue;
            if (!(relative_q[e] > 0.0)) {
                if (spec.s > 0.0) return -kInf;
                continue;
            }
            terms.push_back((1.0 + spec.s) * std::log(p) - spec.s * std::log(relative_q[e]));
        }
    }
    return -log_sum_exp(terms) / spec.s;
}

double gallager_phi(const JointSource& src, double s) {
    if (!(s < 1.0)) throw DomainError("gallager function needs s < 1");
    return outer_log(src, [&](std::size_t e) {
        return (1.0 - s) * inner_log(src, e, 1.0 / (1.0 - s));
    });
}

Pmf optimizer_q(const JointSource& src, double s) {
    if (!(s > -1.0)) throw DomainError("optimizer needs s > -1");
    if (std::abs(s) < kOrderZeroEps) {
        throw UsageError("optimizer undefined at s = 0; the limit is Q = P_E");
    }
    // Q(e) proportional to exp(inner_log(e, 1+s)/(1+s)) (x) P_E weighting is
    // already inside the joint: the numerator uses P_AE, not P_{A|E}.
    std::vector<double> logw(src.e_size(), -kInf);
    double max_log = -kInf;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        std::vector<double> terms;
        for (std::size_t a = 0; a < src.a_size(); ++a) {
            const double p = src.joint(a, e);
            if (p > 0.0) terms.push_back((1.0 + s) * std::log(p));
        }
        if (terms.empty()) continue;
        logw[e] = log_sum_exp(terms) / (1.0 + s);
        max_log = std::max(max_log, logw[e]);
    }
    std::vector<double> w(src.e_size(), 0.0);
    double z = 0.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (logw[e] > -kInf) {
            w[e] = std::exp(logw[e] - max_log);
            z += w[e];
        }
    }
    for (double& v : w) v /= z;
    return Pmf(std::move(w));
}

double neg_t_entropy_plain(const JointSource& src, double t) {
    return outer_log(src, [&](std::size_t e) { return inner_log(src, e, 1.0 + t); });
}

double t_times_two_param_entropy(const JointSource& src, double t, double s) {
    const double W = outer_log(src, [&](std::size_t e) {
        return inner_log(src, e, 1.0 + t) -
               t / (1.0 + s) * inner_log(src, e, 1.0 + s);
    });
    return -(1.0 + s) * W;
}

double t_over_1mt_times_gallager_minus(const JointSource& src, double t) {
    if (!(t < 1.0)) throw DomainError("order offset must satisfy t < 1");
    return outer_log(src, [&](std::size_t e) {
        return inner_log(src, e, 1.0 - t) / (1.0 - t);
    });
}

double critical_rate(const JointSource& src, double s, CriticalRateKind kind) {
    if (!(s > 0.0)) throw DomainError("critical rate needs s > 0");
    if (kind == CriticalRateKind::plain) {
        // d/dt (-log Z(t)) = -Z'(t)/Z(t) evaluated with a per-source max shift.
        double max_term = -kInf;
        for (std::size_t e = 0; e < src.e_size(); ++e) {
            if (!(src.p_e(e) > 0.0)) continue;
            for (std::size_t a = 0; a < src.a_size(); ++a) {
                const double c = src.cond(a, e);
                if (c > 0.0) {
                    max_term = std::max(max_term, std::log(src.p_e(e)) + (1.0 + s) * std::log(c));
                }
            }
        }
        double num = 0.0, den = 0.0;
        for (std::size_t e = 0; e < src.e_size(); ++e) {
            if (!(src.p_e(e) > 0.0)) continue;
            for (std::size_t a = 0; a < src.a_size(); ++a) {
                const double c = src.cond(a, e);
                if (c > 0.0) {
                    const double w =
                        std::exp(std::log(src.p_e(e)) + (1.0 + s) * std::log(c) - max_term);
                    num += w * std::log(c);
                    den += w;
                }
            }
        }
        return -num / den;
    }
    // up kind: t H_{1+t|1+s} = -(1+s) log W_s(t); the derivative at t = s uses
    // the per-e tilted mean of log P_{A|E} and the inner log-norm.
    double max_u = -kInf;
    std::vector<double> zlog(src.e_size(), -kInf);
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        zlog[e] = inner_log(src, e, 1.0 + s);
        max_u = std::max(max_u, std::log(src.p_e(e)) + zlog[e] / (1.0 + s));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (!(src.p_e(e) > 0.0)) continue;
        const double u = std::exp(std::log(src.p_e(e)) + zlog[e] / (1.0 + s) - max_u);
        num += u * (tilted_mean_log(src, e, 1.0 + s) - zlog[e] / (1.0 + s));
        den += u;
    }
    return -(1.0 + s) * num / den;
}

}  // namespace ruq
