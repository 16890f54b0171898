#ifndef RUQ_BOUNDS_HPP
#define RUQ_BOUNDS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ruq/parallel.hpp"
#include "ruq/prob.hpp"
#include "ruq/renyi.hpp"

namespace ruq {

// Rate-curve kinds: g_* are upper bounds on the normalized remaining
// uncertainty, e_* are lower bounds on its decay exponent. The *_minus kinds
// use order 1-s, the *_plus kinds order 1+s; the up kinds use the Gallager
// form.
enum class BoundKind {
    g_minus,
    gup_minus,
    g_plus,
    gup_plus,
    e_minus,
    eup_minus,
    e_plus,
    eup_plus,
};

std::string bound_kind_name(BoundKind k);
std::optional<BoundKind> bound_kind_from_name(const std::string& name);
bool is_exponent_kind(BoundKind k);

struct BoundQuery {
    const JointSource& source;
    BoundKind kind;
    double s;
    double rate;  // nats per symbol, >= 0
};

// Remaining-uncertainty bound value for a g_* query.
// s domains: g_minus s in [0,1]; gup_minus s in [0,1/2]; g_plus/gup_plus s > 0.
double g_bound(const BoundQuery& q);

// Exponent bound value for an e_* query.
// s domains: e_minus s in [0,1]; eup_minus s in [0,1/2]; e_plus/eup_plus s >= 0.
// Suprema over open intervals are evaluated on their closures.
double e_bound(const BoundQuery& q);

double bound_value(const BoundQuery& q);

struct BoundCurve {
    BoundKind kind;
    double s;
    std::vector<double> rates;
    std::vector<double> values;
};

BoundCurve sample_curve(const JointSource& src, BoundKind kind, double s, double r_min,
                        double r_max, std::size_t steps, Exec exec = Exec::parallel);

// Largest s in [0,1] with H_{1-s}(A|p) <= H(A|tilt(p, s-1)); 1 exactly for a
// pmf uniform on its support, otherwise the unique root of the difference.
double s0_single(const Pmf& p);

// min over side symbols with positive mass of s0_single(P_{A|E=e}).
double s0_joint(const JointSource& src);

// Optimal-rate summary: where each remaining-uncertainty curve vanishes.
struct ThresholdRates {
    double t_minus_upper;         // H_{1-s}(A|E)
    double t_minus_strong_lower;  // equal by construction
    bool strong_converse_valid;   // s <= s0_joint
    double t_plus;                // H(A|E)
    double t_up_minus;            // H^up_{1-s}(A|E)
    bool up_minus_valid;          // s <= 1/2
    double t_up_plus;             // H(A|E)
};

ThresholdRates thresholds(const JointSource& src, double s);

// gamma(t) = -log sum_a p(a)^{1+t} and its derivative; support convention.
double gamma_tilt(const Pmf& p, double t);
double gamma_tilt_deriv(const Pmf& p, double t);

// Unique t with H(tilt(p,t)) = R. R must lie in (H_inf, log|supp(p)|] where
// H_inf = log(number of maximizers of p). Bisection to 1e-10.
double t_r_solve(const Pmf& p, double rate);

// Large-deviation exponent: s(R + D(tilt(p,t_R) || p)) when s-1 <= t_R,
// otherwise R + gamma(s-1). s in [0,1].
double lambda_exponent(const Pmf& p, double s, double rate);

namespace detail {
// max of f over [lo,hi] for concave f; golden section to the given tolerance.
double golden_max(double lo, double hi, double tol, const std::function<double(double)>& f);
}  // namespace detail

}  // namespace ruq

#endif
