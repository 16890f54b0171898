#include "ruq/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "ruq/errors.hpp"

namespace ruq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clip_positive(double v) { return v > 0.0 ? v : 0.0; }

void require_rate(const BoundQuery& q) {
    if (!(q.rate >= 0.0)) throw DomainError("rate must be nonnegative");
}

}  // namespace

namespace detail {

double golden_max(double lo, double hi, double tol, const std::function<double(double)>& f) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double mid = 0.5 * (a + b);
    double best = f(mid);
    // Concavity puts the max inside; the endpoints still guard degenerate cases.
    best = std::max(best, std::max(f(lo), f(hi)));
    return best;
}

}  // namespace detail

std::string bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::g_minus: return "g_minus";
        case BoundKind::gup_minus: return "gup_minus";
        case BoundKind::g_plus: return "g_plus";
        case BoundKind::gup_plus: return "gup_plus";
        case BoundKind::e_minus: return "e_minus";
        case BoundKind::eup_minus: return "eup_minus";
        case BoundKind::e_plus: return "e_plus";
        case BoundKind::eup_plus: return "eup_plus";
    }
    return "?";
}

std::optional<BoundKind> bound_kind_from_name(const std::string& name) {
    for (BoundKind k :
         {BoundKind::g_minus, BoundKind::gup_minus, BoundKind::g_plus, BoundKind::gup_plus,
          BoundKind::e_minus, BoundKind::eup_minus, BoundKind::e_plus, BoundKind::eup_plus}) {
        if (bound_kind_name(k) == name) return k;
    }
    return std::nullopt;
}

bool is_exponent_kind(BoundKind k) {
    return k == BoundKind::e_minus || k == BoundKind::eup_minus || k == BoundKind::e_plus ||
           k == BoundKind::eup_plus;
}

double g_bound(const BoundQuery& q) {
    require_rate(q);
    const JointSource& src = q.source;
    const double s = q.s;
    const double R = q.rate;
    switch (q.kind) {
        case BoundKind::g_minus: {
            if (!(s >= 0.0 && s <= 1.0)) throw DomainError("g_minus needs s in [0,1]");
            return clip_positive(conditional_entropy(src, RenyiOrderSpec::plain(-s)) - R);
        }
        case BoundKind::gup_minus: {
            if (!(s >= 0.0 && s <= 0.5)) throw DomainError("gup_minus needs s in [0,1/2]");
            return clip_positive(conditional_entropy(src, RenyiOrderSpec::gallager(-s)) - R);
        }
        case BoundKind::g_plus: {
            if (!(s > 0.0)) throw DomainError("g_plus needs s > 0");
            const double rhat = critical_rate(src, s, CriticalRateKind::plain);
            if (R <= rhat) return conditional_entropy(src, RenyiOrderSpec::plain(s)) - R;
            // max over t in [0,s] of (t H_{1+t} - t R)/s; the objective is a
            // shifted concave cumulant curve, so golden section applies.
            auto objective = [&](double t) {
                return (-neg_t_entropy_plain(src, t) - t * R) / s;
            };
            return clip_positive(detail::golden_max(0.0, s, 1e-10, objective));
        }
        case BoundKind::gup_plus: {
            if (!(s > 0.0)) throw DomainError("gup_plus needs s > 0");
            const double rhat = critical_rate(src, s, CriticalRateKind::up);
            if (R <= rhat) return conditional_entropy(src, RenyiOrderSpec::gallager(s)) - R;
            // Inner objective (t/s)(Hup_{1+t} - R): t Hup_{1+t} is concave and
            // its t -> 0 slope is the Shannon entropy, so this branch vanishes
            // exactly above H(A|E). At t = s it reproduces the first clause,
            // and its maximum still sits at t = s throughout R <= rhat, so the
            // two clauses agree at the split.
            auto objective = [&](double t) {
                return (t_times_two_param_entropy(src, t, t) - t * R) / s;
            };
            return clip_positive(detail::golden_max(0.0, s, 1e-10, objective));
        }
        default:
            throw UsageError("g_bound called with an exponent kind");
    }
}

namespace {

constexpr std::size_t kExponentGrid = 4097;

// The exponent objectives are affine in the rate: slope(t) R - intercept(t).
// The rate-independent parts are sampled once so a whole curve shares them;
// a golden pass around the best cell restores full resolution.
struct ExponentObjective {
    const JointSource& src;
    BoundKind kind;
    double lo, hi;
    std::vector<double> slope, intercept;

    ExponentObjective(const JointSource& source, BoundKind k, double t_lo, double t_hi)
        : src(source), kind(k), lo(t_lo), hi(t_hi), slope(kExponentGrid),
          intercept(kExponentGrid) {
        for (std::size_t i = 0; i < kExponentGrid; ++i) {
            const double t = grid_t(i);
            if (kind == BoundKind::e_minus) {
                slope[i] = t;
                intercept[i] = neg_t_entropy_plain(src, -t);
            } else {
                slope[i] = t / (1.0 - t);
                intercept[i] = t_over_1mt_times_gallager_minus(src, t);
            }
        }
    }

    double grid_t(std::size_t i) const {
        return lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(kExponentGrid - 1);
    }

    double eval(double t, double rate) const {
        if (kind == BoundKind::e_minus) return t * rate - neg_t_entropy_plain(src, -t);
        return t / (1.0 - t) * rate - t_over_1mt_times_gallager_minus(src, t);
    }

    double value(double rate) const {
        double best = -kInf;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < kExponentGrid; ++i) {
            const double v = slope[i] * rate - intercept[i];
            if (v > best) {
                best = v;
                best_i = i;
            }
        }
        const double a = grid_t(best_i == 0 ? 0 : best_i - 1);
        const double b = grid_t(best_i + 1 >= kExponentGrid ? kExponentGrid - 1 : best_i + 1);
        const double refined =
            detail::golden_max(a, b, 1e-10, [&](double t) { return eval(t, rate); });
        return clip_positive(std::max(best, refined));
    }
};

ExponentObjective make_exponent_objective(const JointSource& src, BoundKind kind, double s) {
    switch (kind) {
        case BoundKind::e_minus:
            if (!(s >= 0.0 && s <= 1.0)) throw DomainError("e_minus needs s in [0,1]");
            // sup over t in (s,1), evaluated on the closure
            return ExponentObjective(src, kind, s, 1.0);
        case BoundKind::eup_minus:
            if (!(s >= 0.0 && s <= 0.5)) throw DomainError("eup_minus needs s in [0,1/2]");
            return ExponentObjective(src, kind, s, 0.5);
        case BoundKind::e_plus:
        case BoundKind::eup_plus:
            if (!(s >= 0.0)) throw DomainError("e_plus/eup_plus need s >= 0");
            // t = 0 contributes 0, so the closure value is never negative
            return ExponentObjective(src, kind, 0.0, 0.5);
        default:
            throw UsageError("e_bound called with a bound kind");
    }
}

}  // namespace

double e_bound(const BoundQuery& q) {
    require_rate(q);
    return make_exponent_objective(q.source, q.kind, q.s).value(q.rate);
}

double bound_value(const BoundQuery& q) {
    return is_exponent_kind(q.kind) ? e_bound(q) : g_bound(q);
}

BoundCurve sample_curve(const JointSource& src, BoundKind kind, double s, double r_min,
                        double r_max, std::size_t steps, Exec exec) {
    if (!(r_min >= 0.0)) throw UsageError("curve needs r_min >= 0");
    if (!(r_min < r_max)) throw UsageError("curve needs r_min < r_max");
    if (steps < 2) throw UsageError("curve needs at least 2 steps");
    BoundCurve curve{kind, s, std::vector<double>(steps), std::vector<double>(steps)};
    const double step = (r_max - r_min) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        curve.rates[i] = r_min + step * static_cast<double>(i);
    }
    if (is_exponent_kind(kind)) {
        // One shared grid of the rate-independent terms serves every row.
        const ExponentObjective objective = make_exponent_objective(src, kind, s);
        par::for_each(exec, steps,
                      [&](std::size_t i) { curve.values[i] = objective.value(curve.rates[i]); });
        return curve;
    }
    // Validate the domain once up front so worker threads never throw.
    g_bound({src, kind, s, r_min});
    par::for_each(exec, steps, [&](std::size_t i) {
        curve.values[i] = g_bound({src, kind, s, curve.rates[i]});
    });
    return curve;
}

double gamma_tilt(const Pmf& p, double t) {
    // -log sum_a p(a)^{1+t} over the support, with a max shift.
    double max_term = -kInf;
    for (double v : p.probs()) {
        if (v > 0.0) max_term = std::max(max_term, (1.0 + t) * std::log(v));
    }
    double acc = 0.0;
    for (double v : p.probs()) {
        if (v > 0.0) acc += std::exp((1.0 + t) * std::log(v) - max_term);
    }
    return -(max_term + std::log(acc));
}

double gamma_tilt_deriv(const Pmf& p, double t) {
    double max_term = -kInf;
    for (double v : p.probs()) {
        if (v > 0.0) max_term = std::max(max_term, (1.0 + t) * std::log(v));
    }
    double num = 0.0, den = 0.0;
    for (double v : p.probs()) {
        if (v > 0.0) {
            const double w = std::exp((1.0 + t) * std::log(v) - max_term);
            num += w * std::log(v);
            den += w;
        }
    }
    return -num / den;
}

double s0_single(const Pmf& p) {
    if (p.is_uniform_on_support()) return 1.0;
    // F(s) = H_{1-s}(A|p) - H(tilt(p, s-1)) is increasing with F(0) < 0 < F(1);
    // bisect on midpoints only. The tilt order 1+(s-1) = s stays positive.
    auto F = [&](double s) {
        return renyi_entropy(p, 1.0 - s) - shannon_entropy(tilt(p, s - 1.0));
    };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (F(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double s0_joint(const JointSource& src) {
    double best = 1.0;
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (src.p_e(e) > 0.0) best = std::min(best, s0_single(src.conditional_given_e(e)));
    }
    return best;
}

ThresholdRates thresholds(const JointSource& src, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("thresholds need s in [0,1]");
    const double h_minus = conditional_entropy(src, RenyiOrderSpec::plain(-s));
    const double h_shannon = conditional_entropy(src, RenyiOrderSpec::shannon());
    const double h_up_minus = conditional_entropy(src, RenyiOrderSpec::gallager(-s));
    return ThresholdRates{
        h_minus,
        h_minus,
        s <= s0_joint(src),
        h_shannon,
        h_up_minus,
        s <= 0.5,
        h_shannon,
    };
}

double t_r_solve(const Pmf& p, double rate) {
    const double h_top = std::log(static_cast<double>(p.support_size()));
    const double h_floor = std::log(static_cast<double>(p.max_count()));
    constexpr double t_lo_boundary = -1.0 + 1e-9;
    auto H = [&](double t) { return shannon_entropy(tilt(p, t)); };
    if (rate > h_top + 1e-12 || (!(rate > h_floor) && rate < h_top - 1e-12)) {
        throw DomainError("target entropy " + std::to_string(rate) +
                          " outside the achievable interval (" + std::to_string(h_floor) + ", " +
                          std::to_string(h_top) + "]");
    }
    if (rate >= H(t_lo_boundary)) return t_lo_boundary;  // top of range, incl. uniform pmfs
    double lo = t_lo_boundary, hi = 1.0;
    while (H(hi) > rate) {
        hi *= 2.0;
        if (hi > 1e13) break;  // asymptotically flat tail; bisection still converges
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (H(mid) > rate) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double lambda_exponent(const Pmf& p, double s, double rate) {
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("lambda exponent needs s in [0,1]");
    const double t_r = t_r_solve(p, rate);
    if (s - 1.0 <= t_r) {
        const double div = gamma_tilt(p, t_r) - t_r * gamma_tilt_deriv(p, t_r);
        return s * (rate + div);
    }
    return rate + gamma_tilt(p, s - 1.0);
}

}  // namespace ruq
