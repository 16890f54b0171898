#include <doctest.h>

#include <cmath>

#include "ruq/errors.hpp"
#include "ruq/multipath.hpp"
#include "ruq/random_source.hpp"
#include "support/oracles.hpp"

using namespace ruq;

TEST_CASE("round trip is the identity for every message and mask") {
    for (int m : {2, 4, 6, 8}) {
        for (int l = 1; l <= m; ++l) {
            if (m % l != 0) continue;
            const MultipathConfig cfg = MultipathConfig::make(m, l, 1);
            for (std::uint32_t x = 1; x < cfg.field.order(); ++x) {
                for (std::uint32_t a = 0; a < cfg.field.order(); ++a) {
                    REQUIRE(mp_decode(cfg, mp_encode(cfg, a, x), x) == a);
                }
            }
        }
    }
}

TEST_CASE("unit mask exposes the raw slices") {
    const MultipathConfig cfg = MultipathConfig::make(8, 2, 1);
    const auto pieces = mp_encode(cfg, 0b10110100, 1);
    CHECK(pieces.size() == 4);
    CHECK(pieces[0] == 0b10);
    CHECK(pieces[1] == 0b11);
    CHECK(pieces[2] == 0b01);
    CHECK(pieces[3] == 0b00);
}

TEST_CASE("zero message yields zero pieces under any mask") {
    const MultipathConfig cfg = MultipathConfig::make(6, 3, 1);
    for (std::uint32_t x = 1; x < 64; ++x) {
        for (std::uint32_t piece : mp_encode(cfg, 0, x)) CHECK(piece == 0);
    }
}

TEST_CASE("decoding with the wrong mask garbles nonzero messages") {
    const MultipathConfig cfg = MultipathConfig::make(4, 2, 1);
    for (std::uint32_t x = 1; x < 16; ++x) {
        for (std::uint32_t wrong = 1; wrong < 16; ++wrong) {
            if (wrong == x) continue;
            for (std::uint32_t a = 1; a < 16; ++a) {
                REQUIRE(mp_decode(cfg, mp_encode(cfg, a, x), wrong) != a);
            }
        }
    }
}

TEST_CASE("mask validity") {
    const MultipathConfig cfg = MultipathConfig::make(4, 2, 1);
    CHECK_THROWS_AS(mp_encode(cfg, 3, 0), UsageError);
    CHECK_THROWS_AS(mp_decode(cfg, {0, 0}, 0), UsageError);
    CHECK_THROWS_AS(MultipathConfig::make(4, 3, 1), UsageError);
    CHECK_THROWS_AS(MultipathConfig::make(4, 2, 3), UsageError);
}

TEST_CASE("the tapped piece is exactly the hash family evaluation") {
    for (int m : {4, 6}) {
        for (int l = 1; l <= m / 2; ++l) {
            if (m % l != 0) continue;
            const int k = m / l;
            for (int j = 1; j <= k; ++j) {
                const MultipathConfig cfg = MultipathConfig::make(m, l, j);
                const HashFamily fam = HashFamily::gf2m_piece(cfg.field, l, j);
                for (std::uint32_t x = 1; x < cfg.field.order(); ++x) {
                    for (std::uint32_t a = 0; a < cfg.field.order(); ++a) {
                        REQUIRE(mp_encode(cfg, a, x)[j - 1] == fam.eval0(x - 1, a));
                    }
                }
            }
        }
    }
}

TEST_CASE("seeing the whole masked word leaves no uncertainty") {
    Rng rng(44);
    const MultipathConfig cfg = MultipathConfig::make(4, 4, 1);
    const JointSource src = random_source(rng, 16, 2);
    CHECK(eavesdropper_uncertainty(cfg, src, RenyiOrderSpec::shannon()) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eavesdropper_uncertainty(cfg, src, RenyiOrderSpec::plain(1.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("uniform messages leave the untapped bits unknown") {
    // A uniform and independent of E: every mask partitions the space into
    // equal buckets, so the posterior entropy is exactly (m - l) log 2.
    const int m = 4, l = 2;
    const MultipathConfig cfg = MultipathConfig::make(m, l, 1);
    const JointSource src = oracles::uniform_source(16, 2);
    const double h = eavesdropper_uncertainty(cfg, src, RenyiOrderSpec::shannon());
    CHECK(h == doctest::Approx((m - l) * std::log(2.0)).epsilon(1e-12));
    CHECK(h >= (m - l) * std::log(2.0) - 1e-9);
}

TEST_CASE("piece position does not matter for uniform messages") {
    const MultipathConfig j1 = MultipathConfig::make(4, 2, 1);
    const MultipathConfig j2 = MultipathConfig::make(4, 2, 2);
    const JointSource src = oracles::uniform_source(16, 2);
    for (const auto& spec :
         {RenyiOrderSpec::shannon(), RenyiOrderSpec::plain(0.5), RenyiOrderSpec::gallager(1.0)}) {
        CHECK(eavesdropper_uncertainty(j1, src, spec) ==
              doctest::Approx(eavesdropper_uncertainty(j2, src, spec)).epsilon(1e-12));
    }
}

TEST_CASE("uncertainty respects the one-shot achievability ceiling") {
    // For the n-fold extension the tapped piece is a universal_2 hash with
    // log M = n l log 2, so the order-(1-s) uncertainty obeys
    // (1/s) log(1 + e^{s(n H_{1-s}(A|E) - log M)}).
    Rng rng(45);
    const int m = 2, l = 1;
    const JointSource base = random_source(rng, 4, 2);
    for (std::size_t n : {1u, 2u}) {
        const MultipathConfig cfg =
            MultipathConfig::make(static_cast<int>(n) * m, static_cast<int>(n) * l, 1);
        const JointSource big = iid_extend(base, n).to_joint();
        const double log_m = static_cast<double>(n) * l * std::log(2.0);
        for (double s : {0.25, 0.5, 1.0}) {
            const double value =
                eavesdropper_uncertainty(cfg, big, RenyiOrderSpec::plain(-s));
            const double single = conditional_entropy(base, RenyiOrderSpec::plain(-s));
            const double ceiling =
                std::log1p(std::exp(s * (static_cast<double>(n) * single - log_m))) / s;
            CHECK(value <= ceiling + 1e-9);
        }
    }
}

TEST_CASE("resource and domain gates") {
    Rng rng(46);
    const JointSource small = random_source(rng, 8, 2);
    const JointSource too_big = random_source(rng, 32, 2);
    const MultipathConfig cfg = MultipathConfig::make(4, 2, 1);
    CHECK_THROWS_AS(eavesdropper_uncertainty(cfg, too_big, RenyiOrderSpec::shannon()),
                    UsageError);
    const MultipathConfig wide = MultipathConfig::make(12, 6, 1);
    CHECK_THROWS_AS(eavesdropper_uncertainty(wide, small, RenyiOrderSpec::shannon()),
                    ResourceError);
}
