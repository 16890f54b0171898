#include <doctest.h>

#include <cmath>

#include "ruq/bounds.hpp"
#include "ruq/errors.hpp"
#include "ruq/random_source.hpp"
#include "support/oracles.hpp"

using namespace ruq;

TEST_CASE("minus bounds clip at the matching entropy") {
    const JointSource src = oracles::example_source();
    for (double s : {0.1, 0.5, 1.0}) {
        const double h = conditional_entropy(src, RenyiOrderSpec::plain(-s));
        CHECK(g_bound({src, BoundKind::g_minus, s, h + 0.1}) == 0.0);
        CHECK(g_bound({src, BoundKind::g_minus, s, h - 0.1}) ==
              doctest::Approx(0.1).epsilon(1e-10));
    }
    for (double s : {0.1, 0.5}) {
        const double h = conditional_entropy(src, RenyiOrderSpec::gallager(-s));
        CHECK(g_bound({src, BoundKind::gup_minus, s, h + 0.05}) == 0.0);
        CHECK(g_bound({src, BoundKind::gup_minus, s, h - 0.05}) ==
              doctest::Approx(0.05).epsilon(1e-10));
    }
}

TEST_CASE("plus bounds vanish above the shannon entropy") {
    const JointSource src = oracles::example_source();
    const double shannon = conditional_entropy(src, RenyiOrderSpec::shannon());
    for (double s : {0.5, 1.0, 2.0}) {
        CHECK(g_bound({src, BoundKind::g_plus, s, shannon + 1e-6}) ==
              doctest::Approx(0.0).epsilon(1e-9));
        CHECK(g_bound({src, BoundKind::gup_plus, s, shannon + 1e-6}) ==
              doctest::Approx(0.0).epsilon(1e-9));
        CHECK(g_bound({src, BoundKind::g_plus, s, shannon - 0.05}) > 1e-4);
    }
}

TEST_CASE("worked plus bound at zero rate") {
    // R = 0 sits in the first clause, so the value is the order-2 entropy.
    const JointSource src = oracles::example_source();
    CHECK(g_bound({src, BoundKind::g_plus, 1.0, 0.0}) ==
          doctest::Approx(0.3215836241274623).epsilon(1e-10));
    CHECK(g_bound({src, BoundKind::g_plus, 1.0, 0.0}) ==
          doctest::Approx(conditional_entropy(src, RenyiOrderSpec::plain(1.0))).epsilon(1e-12));
}

TEST_CASE("plus bound clauses agree at the critical rate") {
    Rng rng(67);
    for (int trial = 0; trial < 5; ++trial) {
        const JointSource src = random_source(rng, 3, 3);
        for (double s : {0.5, 1.0, 2.0}) {
            for (BoundKind kind : {BoundKind::g_plus, BoundKind::gup_plus}) {
                const double rhat = critical_rate(
                    src, s,
                    kind == BoundKind::g_plus ? CriticalRateKind::plain : CriticalRateKind::up);
                const double left = g_bound({src, kind, s, rhat});
                const double right = g_bound({src, kind, s, rhat + 1e-11});
                CHECK(std::abs(left - right) < 1e-8);
            }
        }
    }
}

TEST_CASE("legendre cross-check of the piecewise plus bound") {
    const JointSource src = oracles::example_source();
    for (double s : {0.25, 0.5, 1.0, 2.0}) {
        const double rhat = critical_rate(src, s, CriticalRateKind::plain);
        for (int i = 0; i <= 40; ++i) {
            const double rate = 0.8 * i / 40.0;
            const double value = g_bound({src, BoundKind::g_plus, s, rate});
            double expected;
            if (rate <= rhat) {
                expected = conditional_entropy(src, RenyiOrderSpec::plain(s)) - rate;
            } else {
                expected = oracles::grid_max(
                    [&](double t) { return (-neg_t_entropy_plain(src, t) - t * rate) / s; },
                    0.0, s, 4097);
                expected = std::max(expected, 0.0);
            }
            CHECK(value == doctest::Approx(expected).epsilon(1e-6));
        }
    }
}

TEST_CASE("bounds are monotone in the rate") {
    Rng rng(73);
    const JointSource src = random_source(rng, 4, 3);
    for (BoundKind kind : {BoundKind::g_minus, BoundKind::gup_minus, BoundKind::g_plus,
                           BoundKind::gup_plus, BoundKind::e_minus, BoundKind::eup_minus,
                           BoundKind::e_plus, BoundKind::eup_plus}) {
        const double s = (kind == BoundKind::g_plus || kind == BoundKind::gup_plus) ? 0.7 : 0.3;
        const BoundCurve curve = sample_curve(src, kind, s, 0.0, 1.5, 101, Exec::serial);
        for (std::size_t i = 0; i + 1 < curve.values.size(); ++i) {
            CHECK(curve.values[i] >= 0.0);
            if (is_exponent_kind(kind)) {
                CHECK(curve.values[i + 1] >= curve.values[i] - 1e-12);
            } else {
                CHECK(curve.values[i + 1] <= curve.values[i] + 1e-12);
            }
        }
    }
}

TEST_CASE("curve sampling equals single-rate evaluation") {
    // the curve path shares one sampled objective across rows; it must stay
    // bit-identical to independent per-rate calls
    const JointSource src = oracles::example_source();
    struct Probe {
        BoundKind kind;
        double s;
    };
    for (const Probe& p : {Probe{BoundKind::e_minus, 0.25}, Probe{BoundKind::eup_plus, 1.0},
                           Probe{BoundKind::g_plus, 1.0}, Probe{BoundKind::gup_minus, 0.4}}) {
        const BoundCurve curve = sample_curve(src, p.kind, p.s, 0.0, 0.8, 17, Exec::serial);
        for (std::size_t i = 0; i < curve.rates.size(); ++i) {
            CHECK(curve.values[i] == bound_value({src, p.kind, p.s, curve.rates[i]}));
        }
    }
}

TEST_CASE("zero sets bracket the transition entropies") {
    const JointSource src = oracles::example_source();
    const double step = 0.8 / 1600.0;
    auto first_zero = [&](BoundKind kind, double s) {
        const BoundCurve c = sample_curve(src, kind, s, 0.0, 0.8, 1601, Exec::serial);
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            if (c.values[i] <= 1e-12) return c.rates[i];
        }
        return 10.0;
    };
    for (double s : {0.1, 0.3, 0.5}) {
        CHECK(std::abs(first_zero(BoundKind::g_minus, s) -
                       conditional_entropy(src, RenyiOrderSpec::plain(-s))) <= step + 1e-12);
        CHECK(std::abs(first_zero(BoundKind::gup_minus, s) -
                       conditional_entropy(src, RenyiOrderSpec::gallager(-s))) <= step + 1e-12);
    }
    const double shannon = conditional_entropy(src, RenyiOrderSpec::shannon());
    for (double s : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(first_zero(BoundKind::g_plus, s) - shannon) <= step + 1e-12);
        CHECK(std::abs(first_zero(BoundKind::gup_plus, s) - shannon) <= step + 1e-12);
    }
}

TEST_CASE("exponent bounds turn on past the matching entropy") {
    const JointSource src = oracles::example_source();
    SUBCASE("below the transition they vanish") {
        for (double s : {0.0, 0.3}) {
            const double h = conditional_entropy(src, RenyiOrderSpec::plain(-s));
            CHECK(e_bound({src, BoundKind::e_minus, s, h - 0.05}) == 0.0);
            CHECK(e_bound({src, BoundKind::e_minus, s, h + 0.05}) > 0.0);
        }
        for (double s : {0.0, 0.2}) {
            const double h = conditional_entropy(src, RenyiOrderSpec::gallager(-s));
            CHECK(e_bound({src, BoundKind::eup_minus, s, h - 0.05}) == 0.0);
            CHECK(e_bound({src, BoundKind::eup_minus, s, h + 0.05}) > 0.0);
        }
    }
    SUBCASE("uniform worked value") {
        const JointSource u = oracles::uniform_source(2, 2);
        const double val = e_bound({u, BoundKind::e_plus, 0.0, std::log(2.0) + 0.1});
        CHECK(val == doctest::Approx(0.1).epsilon(1e-9));
        CHECK(e_bound({u, BoundKind::eup_plus, 1.5, std::log(2.0) + 0.1}) ==
              doctest::Approx(0.1).epsilon(1e-9));
    }
    SUBCASE("grid oracle agreement") {
        Rng rng(79);
        const JointSource s2 = random_source(rng, 3, 2);
        for (double rate : {0.2, 0.6, 1.0}) {
            const double mine = e_bound({s2, BoundKind::e_minus, 0.25, rate});
            const double grid = std::max(
                0.0, oracles::grid_max(
                         [&](double t) { return t * rate - neg_t_entropy_plain(s2, -t); },
                         0.25, 1.0, 4097));
            CHECK(mine == doctest::Approx(grid).epsilon(1e-8));
        }
    }
}

TEST_CASE("bound domain gates") {
    const JointSource src = oracles::example_source();
    CHECK_THROWS_AS(g_bound({src, BoundKind::g_minus, 1.2, 0.1}), DomainError);
    CHECK_THROWS_AS(g_bound({src, BoundKind::gup_minus, 0.6, 0.1}), DomainError);
    CHECK_THROWS_AS(g_bound({src, BoundKind::g_plus, 0.0, 0.1}), DomainError);
    CHECK_THROWS_AS(e_bound({src, BoundKind::eup_minus, 0.7, 0.1}), DomainError);
    CHECK_THROWS_AS(g_bound({src, BoundKind::g_minus, 0.5, -0.1}), DomainError);
    CHECK_THROWS_AS(g_bound({src, BoundKind::e_minus, 0.5, 0.1}), UsageError);
    CHECK_THROWS_AS(e_bound({src, BoundKind::g_minus, 0.5, 0.1}), UsageError);
}

TEST_CASE("zero-mass side columns flow through every bound path") {
    // column e = 2 carries no mass and must silently drop out everywhere
    const JointSource src(2, 3, {0.7, 0.1, 0.0, 0.1, 0.1, 0.0});
    const JointSource dense(2, 2, {0.7, 0.1, 0.1, 0.1});
    for (BoundKind kind : {BoundKind::g_minus, BoundKind::gup_minus, BoundKind::g_plus,
                           BoundKind::gup_plus, BoundKind::e_minus, BoundKind::eup_minus,
                           BoundKind::e_plus, BoundKind::eup_plus}) {
        const double s = (kind == BoundKind::g_plus || kind == BoundKind::gup_plus) ? 0.8 : 0.3;
        for (double rate : {0.0, 0.3, 0.6}) {
            CHECK(bound_value({src, kind, s, rate}) ==
                  doctest::Approx(bound_value({dense, kind, s, rate})).epsilon(1e-12));
        }
    }
    CHECK(s0_joint(src) == doctest::Approx(s0_joint(dense)).epsilon(1e-12));
    CHECK(thresholds(src, 0.4).t_minus_upper ==
          doctest::Approx(thresholds(dense, 0.4).t_minus_upper).epsilon(1e-12));
    CHECK(critical_rate(src, 0.7, CriticalRateKind::up) ==
          doctest::Approx(critical_rate(dense, 0.7, CriticalRateKind::up)).epsilon(1e-12));
}

TEST_CASE("s0 of a single pmf") {
    SUBCASE("uniform support pins it at one") {
        CHECK(s0_single(Pmf({0.25, 0.25, 0.25, 0.25})) == 1.0);
        CHECK(s0_single(Pmf({0.5, 0.0, 0.5})) == 1.0);
    }
    SUBCASE("worked near-deterministic and near-uniform values") {
        CHECK(s0_single(Pmf({1e-8, 1.0 - 1e-8})) == doctest::Approx(0.549).epsilon(0.004));
        CHECK(s0_single(Pmf({0.25, 0.75})) == doctest::Approx(0.615).epsilon(0.004));
        CHECK(s0_single(Pmf({0.49, 0.51})) == doctest::Approx(0.618).epsilon(0.004));
    }
    SUBCASE("the root balances the two curves") {
        Rng rng(83);
        for (int i = 0; i < 10; ++i) {
            const Pmf p = random_pmf(rng, 3);
            if (p.is_uniform_on_support()) continue;
            const double s0 = s0_single(p);
            CHECK(std::abs(renyi_entropy(p, 1.0 - s0) -
                           shannon_entropy(tilt(p, s0 - 1.0))) <= 1e-8);
        }
    }
}

TEST_CASE("s0 of a joint source") {
    CHECK(s0_joint(oracles::uniform_source(3, 2)) == 1.0);
    const JointSource src = oracles::example_source();
    // the side-1 conditional is uniform, so the skewed row decides
    CHECK(s0_joint(src) == doctest::Approx(s0_single(Pmf({0.875, 0.125}))).epsilon(1e-12));
    const JointSource one_e(2, 1, {0.3, 0.7});
    CHECK(s0_joint(one_e) == doctest::Approx(s0_single(Pmf({0.3, 0.7}))).epsilon(1e-12));
}

TEST_CASE("threshold record") {
    const JointSource src = oracles::example_source();
    SUBCASE("collapse at s = 0") {
        const ThresholdRates r = thresholds(src, 0.0);
        const double h = conditional_entropy(src, RenyiOrderSpec::shannon());
        CHECK(r.t_minus_upper == doctest::Approx(h).epsilon(1e-12));
        CHECK(r.t_plus == doctest::Approx(h).epsilon(1e-12));
        CHECK(r.t_up_minus == doctest::Approx(h).epsilon(1e-12));
        CHECK(r.t_up_plus == doctest::Approx(h).epsilon(1e-12));
        CHECK(r.strong_converse_valid);
        CHECK(r.up_minus_valid);
    }
    SUBCASE("worked values at s = 0.5") {
        const ThresholdRates r = thresholds(src, 0.5);
        CHECK(r.t_minus_upper == doctest::Approx(0.5461775664495226).epsilon(1e-12));
        CHECK(r.t_plus == doctest::Approx(0.44004556511713844).epsilon(1e-12));
        CHECK(r.t_minus_strong_lower == r.t_minus_upper);
        CHECK(r.up_minus_valid);
        // s0 of the source is ~0.62, so the strong-converse flag is on
        CHECK(r.strong_converse_valid);
    }
    SUBCASE("validity flags turn off") {
        const ThresholdRates r = thresholds(src, 0.8);
        CHECK_FALSE(r.up_minus_valid);
        CHECK_FALSE(r.strong_converse_valid);
    }
    CHECK_THROWS_AS(thresholds(src, 1.2), DomainError);
}

TEST_CASE("tilt-parameter solve") {
    const Pmf p({0.875, 0.125});
    SUBCASE("entropy target at the pmf itself") {
        const double t = t_r_solve(p, shannon_entropy(p));
        CHECK(std::abs(t) < 1e-8);
    }
    SUBCASE("top of the range returns the boundary") {
        CHECK(t_r_solve(p, std::log(2.0)) == doctest::Approx(-1.0 + 1e-9));
    }
    SUBCASE("self-consistency across the range") {
        for (double rate : {0.1, 0.3, 0.5, 0.65}) {
            const double t = t_r_solve(p, rate);
            CHECK(std::abs(shannon_entropy(tilt(p, t)) - rate) <= 1e-8);
        }
    }
    SUBCASE("out-of-range targets are rejected with the interval") {
        CHECK_THROWS_AS(t_r_solve(p, std::log(2.0) + 0.01), DomainError);
        CHECK_THROWS_AS(t_r_solve(p, -0.01), DomainError);
        try {
            t_r_solve(p, std::log(2.0) + 0.01);
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("interval") != std::string::npos);
        }
    }
}

TEST_CASE("large-deviation exponent") {
    const Pmf p({0.875, 0.125});
    SUBCASE("vanishes at s = 0") {
        CHECK(lambda_exponent(p, 0.0, 0.3) == doctest::Approx(0.0));
    }
    SUBCASE("uniform pmf reduces to s times the rate") {
        // a uniform pmf only achieves the top entropy, where the tilt
        // divergence vanishes and both clauses read s R
        const Pmf u({0.5, 0.5});
        const double rate = std::log(2.0);
        for (double s : {0.2, 0.6, 1.0}) {
            CHECK(lambda_exponent(u, s, rate) == doctest::Approx(s * rate).epsilon(1e-9));
        }
    }
    SUBCASE("clauses meet continuously") {
        // pick a rate above H(p) so the meeting order 1 + t_R lies in [0,1]
        const double rate = 0.65;
        const double t_r = t_r_solve(p, rate);
        REQUIRE(t_r < 0.0);
        const double s_star = 1.0 + t_r;
        const double div = gamma_tilt(p, t_r) - t_r * gamma_tilt_deriv(p, t_r);
        CHECK(s_star * (rate + div) ==
              doctest::Approx(rate + gamma_tilt(p, s_star - 1.0)).epsilon(1e-8));
        CHECK(lambda_exponent(p, s_star, rate) ==
              doctest::Approx(s_star * (rate + div)).epsilon(1e-8));
    }
}
