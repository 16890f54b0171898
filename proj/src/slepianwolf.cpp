#include "ruq/slepianwolf.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ruq/errors.hpp"
#include "ruq/renyi.hpp"

namespace ruq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string system_desc(const SwSystem& sys) {
    return "n=" + std::to_string(sys.product.n()) + ",|A|=" +
           std::to_string(sys.product.base().a_size()) + ",|E|=" +
           std::to_string(sys.product.base().e_size()) + ",M=" +
           std::to_string(sys.message_count);
}

}  // namespace

SwSystem::SwSystem(ProductSource p, std::vector<std::uint32_t> table, std::uint32_t m)
    : product(std::move(p)), encoder(std::move(table)), message_count(m) {
    if (message_count == 0) throw UsageError("message count must be positive");
    if (encoder.size() != product.a_cells()) {
        throw UsageError("encoder table must cover every source block");
    }
    for (std::uint32_t v : encoder) {
        if (v >= message_count) throw UsageError("encoder value outside the message set");
    }
}

SwSystem sampled_binning_system(ProductSource p, std::uint32_t message_count,
                                std::uint64_t rng_seed) {
    std::vector<std::uint32_t> table(p.a_cells());
    for (std::uint64_t a = 0; a < p.a_cells(); ++a) {
        table[a] = static_cast<std::uint32_t>(splitmix64(rng_seed ^ splitmix64(a)) %
                                              message_count);
    }
    return SwSystem(std::move(p), std::move(table), message_count);
}

DecodeResult map_decode(const SwSystem& sys, std::uint32_t message, std::uint64_t e_index) {
    if (!(sys.product.p_e_block(e_index) > 0.0)) {
        throw DomainError("side block has zero probability");
    }
    DecodeResult r{false, 0};
    double best = -1.0;
    for (std::uint64_t a = 0; a < sys.product.a_cells(); ++a) {
        if (sys.encoder[a] != message) continue;
        const double q = sys.product.cond_prob(a, e_index);
        if (q > best) {  // strict: keeps the smallest block index on ties
            best = q;
            r = {true, a};
        }
    }
    return r;
}

CorrectProbability correct_probability(const SwSystem& sys, Exec exec) {
    const std::uint64_t e_cells = sys.product.e_cells();
    const double p_c = par::map_sum(exec, static_cast<std::size_t>(e_cells), [&](std::size_t ei) {
        const std::uint64_t e = static_cast<std::uint64_t>(ei);
        if (!(sys.product.p_e_block(e) > 0.0)) return 0.0;
        // One pass per side block: the best joint mass within each message bin
        // is exactly the mass the MAP decoder recovers.
        std::vector<double> best(sys.message_count, 0.0);
        for (std::uint64_t a = 0; a < sys.product.a_cells(); ++a) {
            const double p = sys.product.joint_prob(a, e);
            double& cell = best[sys.encoder[a]];
            if (p > cell) cell = p;
        }
        double acc = 0.0;
        for (double v : best) acc += v;
        return acc;
    });
    return {p_c, 1.0 - p_c};
}

JointSource sw_enlarged_joint(const SwSystem& sys) {
    const std::uint64_t a_cells = sys.product.a_cells();
    const std::uint64_t e_cells = sys.product.e_cells();
    const std::uint64_t side = static_cast<std::uint64_t>(sys.message_count) * e_cells;
    std::vector<double> joint(a_cells * side, 0.0);
    for (std::uint64_t a = 0; a < a_cells; ++a) {
        for (std::uint64_t e = 0; e < e_cells; ++e) {
            joint[a * side + sys.encoder[a] * e_cells + e] = sys.product.joint_prob(a, e);
        }
    }
    return JointSource(static_cast<std::size_t>(a_cells), static_cast<std::size_t>(side),
                       std::move(joint));
}

VerificationReport verify_strong_converse_identity(const SwSystem& sys, Exec exec) {
    VerificationReport report;
    const double p_c = correct_probability(sys, exec).p_correct;
    if (!(p_c > 0.0)) {
        CheckRecord c;
        c.id = "sw-correct-exponent-identity";
        c.instance = system_desc(sys) + ",degenerate(both sides infinite)";
        c.lhs = std::numeric_limits<double>::infinity();
        c.rhs = std::numeric_limits<double>::infinity();
        c.verdict = Verdict::pass;
        report.checks.push_back(c);
        return report;
    }
    const double lhs = -std::log(p_c);
    const double rhs =
        conditional_entropy(sw_enlarged_joint(sys), RenyiOrderSpec::min_gallager());
    report.checks.push_back(
        make_check_identity("sw-correct-exponent-identity", system_desc(sys), lhs, rhs, 1e-10));
    return report;
}

VerificationReport verify_decoding_chain(const SwSystem& sys, double s, Exec exec) {
    if (!(s >= 1.0)) throw DomainError("the decoding chain needs s >= 1");
    VerificationReport report;
    const std::string desc = system_desc(sys) + ",s=" + std::to_string(s);

    const double p_e = correct_probability(sys, exec).p_error;
    const JointSource big = sw_enlarged_joint(sys);
    const double h_up = conditional_entropy(big, RenyiOrderSpec::gallager(s));
    const double h_plain = conditional_entropy(big, RenyiOrderSpec::plain(s));

    // sum over (m, e) of P(m,e) [1 - Q(decoded | m,e)]^2, exactly.
    const double quad =
        par::map_sum(exec, static_cast<std::size_t>(sys.product.e_cells()), [&](std::size_t ei) {
            const std::uint64_t e = static_cast<std::uint64_t>(ei);
            std::vector<double> mass(sys.message_count, 0.0);
            std::vector<double> best(sys.message_count, 0.0);
            for (std::uint64_t a = 0; a < sys.product.a_cells(); ++a) {
                const double p = sys.product.joint_prob(a, e);
                const std::uint32_t m = sys.encoder[a];
                mass[m] += p;
                if (p > best[m]) best[m] = p;
            }
            double acc = 0.0;
            for (std::uint32_t m = 0; m < sys.message_count; ++m) {
                if (mass[m] > 0.0) {
                    const double tail = 1.0 - best[m] / mass[m];
                    acc += mass[m] * tail * tail;
                }
            }
            return acc;
        });

    // e^{-(s/(1+s)) Hup_{1+s}} >= 1 - P_e: keeping only the decoded block in
    // the inner norm. The prefactor is the one the entropy definition yields.
    report.checks.push_back(make_check_ge("sw-chain-correct-mass", desc, -std::log1p(-p_e),
                                          s / (1.0 + s) * h_up, 1e-12));
    report.checks.push_back(
        make_check_ge("sw-chain-gallager-dominates", desc, h_up, h_plain, 1e-12));
    const double taylor = 1.0 - s * p_e + 0.5 * s * (1.0 + s) * quad;
    report.checks.push_back(
        make_check_ge("sw-chain-taylor-remainder", desc, s * h_plain, -std::log(taylor), 1e-12));
    return report;
}

}  // namespace ruq
