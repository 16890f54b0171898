#include "ruq/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace ruq {

bool VerificationReport::all_pass() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckRecord& c) { return c.verdict == Verdict::fail; });
}

std::size_t VerificationReport::fail_count() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(),
                      [](const CheckRecord& c) { return c.verdict == Verdict::fail; }));
}

void VerificationReport::append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void VerificationReport::print(std::ostream& out, int precision) const {
    const auto old_precision = out.precision(precision);
    for (const CheckRecord& c : checks) {
        out << "CHECK " << c.id << " instance=" << c.instance << " lhs=" << c.lhs
            << " rhs=" << c.rhs << " slack=" << c.slack;
        switch (c.verdict) {
            case Verdict::pass: out << " verdict=PASS"; break;
            case Verdict::fail: out << " verdict=FAIL"; break;
            case Verdict::estimate:
                out << " ci_halfwidth=" << c.ci_halfwidth << " verdict=ESTIMATE";
                break;
        }
        out << '\n';
    }
    out.precision(old_precision);
}

CheckRecord make_check_le(std::string id, std::string instance, double lhs, double rhs,
                          double slack_tolerance) {
    CheckRecord c;
    c.id = std::move(id);
    c.instance = std::move(instance);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.verdict = (c.slack >= -slack_tolerance) ? Verdict::pass : Verdict::fail;
    return c;
}

CheckRecord make_check_ge(std::string id, std::string instance, double lhs, double rhs,
                          double slack_tolerance) {
    CheckRecord c;
    c.id = std::move(id);
    c.instance = std::move(instance);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = lhs - rhs;
    c.verdict = (c.slack >= -slack_tolerance) ? Verdict::pass : Verdict::fail;
    return c;
}

CheckRecord make_check_identity(std::string id, std::string instance, double lhs, double rhs,
                                double tolerance) {
    CheckRecord c;
    c.id = std::move(id);
    c.instance = std::move(instance);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = tolerance - std::abs(lhs - rhs);
    c.verdict = (c.slack >= 0.0) ? Verdict::pass : Verdict::fail;
    return c;
}

}  // namespace ruq
