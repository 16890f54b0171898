#ifndef RUQ_RENYI_HPP
#define RUQ_RENYI_HPP

#include <optional>
#include <span>
#include <string>

#include "ruq/prob.hpp"

namespace ruq {

// Below this threshold an order parameter is treated as zero and the Shannon
// limit is substituted; avoids catastrophic cancellation in (1/s) log(...).
inline constexpr double kOrderZeroEps = 1e-9;

enum class Variant { shannon, plain, gallager, two_param, min, min_gallager };

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

// Selects one conditional entropy variant. `s` is the order offset (the
// measure has order 1+s); `t` is the second offset of the two-parameter
// family, whose value is H_{1+s|1+t}.
struct RenyiOrderSpec {
    Variant variant = Variant::shannon;
    double s = 0.0;
    double t = 0.0;

    static RenyiOrderSpec shannon() { return {Variant::shannon, 0.0, 0.0}; }
    static RenyiOrderSpec plain(double s) { return {Variant::plain, s, 0.0}; }
    static RenyiOrderSpec gallager(double s) { return {Variant::gallager, s, 0.0}; }
    static RenyiOrderSpec two_param(double s, double t) { return {Variant::two_param, s, t}; }
    static RenyiOrderSpec min() { return {Variant::min, 0.0, 0.0}; }
    static RenyiOrderSpec min_gallager() { return {Variant::min_gallager, 0.0, 0.0}; }
};

// Renyi divergence of order 1+s between a pmf and a sub-distribution
// (nonnegative, not necessarily normalized), in nats. The order parameter is
// 1+s itself; order 1 (|s| < kOrderZeroEps) is routed to relative entropy.
// Returns +inf when p has mass outside supp(q) and s > 0 (or s = 0).
double renyi_divergence(const Pmf& p, std::span<const double> q, double order);

double relative_entropy(const Pmf& p, std::span<const double> q);

// Unconditional Renyi entropy of order `order` (nats); order 1 is Shannon.
// Sums run over the support of p.
double renyi_entropy(const Pmf& p, double order);

// Conditional entropy of the selected variant, in nats.
//   shannon       H(A|E)
//   plain         H_{1+s}(A|E),  s > -1
//   gallager      H^up_{1+s}(A|E),  s > -1
//   two_param     H_{1+s|1+t}(A|E),  s > -1, t > -1, |s| not tiny
//   min           H_min(A|E)
//   min_gallager  H^up_min(A|E)
// plain/gallager with |s| < kOrderZeroEps return the Shannon value.
double conditional_entropy(const JointSource& src, const RenyiOrderSpec& spec);

// Relative-Q form -D_{1+s}(P_AE || I_A x Q_E); only shannon and plain accept
// a reference distribution. May return -inf when Q_E misses mass of P_E.
double conditional_entropy(const JointSource& src, const RenyiOrderSpec& spec,
                           const Pmf& relative_q);

// Gallager function phi(s|A|E|P) for s < 1; phi(0) = 0 and
// H^up_{1+s} = -((1+s)/s) phi(s/(1+s)).
double gallager_phi(const JointSource& src, double s);

// The maximizing Q_E of the relative-Q entropy: Q(e) proportional to
// (sum_a P_AE(a,e)^{1+s})^{1/(1+s)}. Requires s > -1 and |s| not tiny.
Pmf optimizer_q(const JointSource& src, double s);

enum class CriticalRateKind { plain, up };

// Critical rates: derivative of t (x) H_{1+t} (plain) or t (x) H_{1+t|1+s}
// (up) with respect to t at t = s. Closed form; s > 0.
double critical_rate(const JointSource& src, double s, CriticalRateKind kind);

// log of sum_e P_E(e) sum_a P_{A|E}(a|e)^{1+t}; equals -t H_{1+t}(A|E).
// Stable for |t| up to ~1e3. Exposed because several bound objectives are
// naturally expressed through it without dividing by t.
double neg_t_entropy_plain(const JointSource& src, double t);

// t (x) H_{1+t|1+s} = -(1+s) log W_s(t) with
// W_s(t) = sum_e P_E (sum_a P^{1+t}) (sum_a P^{1+s})^{-t/(1+s)}.
double t_times_two_param_entropy(const JointSource& src, double t, double s);

// (t/(1-t)) (x) H^up_{1-t} = log sum_e P_E (sum_a P^{1-t})^{1/(1-t)},
// for t < 1. Used by the exponent objectives.
double t_over_1mt_times_gallager_minus(const JointSource& src, double t);

}  // namespace ruq

#endif
