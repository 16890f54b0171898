#ifndef RUQ_REPORT_HPP
#define RUQ_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ruq {

enum class Verdict { pass, fail, estimate };

// One verified inequality or identity. `slack` is rhs - lhs oriented so that
// nonnegative means the check holds; `ci_halfwidth` is set only for Monte
// Carlo estimates, which carry no verdict.
struct CheckRecord {
    std::string id;
    std::string instance;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    Verdict verdict = Verdict::pass;
    double ci_halfwidth = 0.0;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;

    bool all_pass() const;
    std::size_t fail_count() const;
    void append(const VerificationReport& other);
    // One line per record:
    // "CHECK <id> instance=<desc> lhs=<v> rhs=<v> slack=<v> verdict=PASS|FAIL"
    void print(std::ostream& out, int precision = 6) const;
};

// lhs <= rhs; slack = rhs - lhs.
CheckRecord make_check_le(std::string id, std::string instance, double lhs, double rhs,
                          double slack_tolerance);
// lhs >= rhs; slack = lhs - rhs.
CheckRecord make_check_ge(std::string id, std::string instance, double lhs, double rhs,
                          double slack_tolerance);
// |lhs - rhs| <= tolerance; slack = tolerance - |lhs - rhs|.
CheckRecord make_check_identity(std::string id, std::string instance, double lhs, double rhs,
                                double tolerance);

}  // namespace ruq

#endif
