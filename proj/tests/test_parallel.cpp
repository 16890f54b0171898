#include <doctest.h>

#include <cmath>

#include "ruq/bounds.hpp"
#include "ruq/hash_family.hpp"
#include "ruq/oneshot.hpp"
#include "ruq/parallel.hpp"
#include "ruq/random_source.hpp"
#include "ruq/slepianwolf.hpp"
#include "support/oracles.hpp"

using namespace ruq;

// The OpenMP kernels must reproduce the serial reference bit for bit: values
// are materialized per index and folded in index order.

TEST_CASE("deterministic fold primitives") {
    auto f = [](std::size_t i) { return 1.0 / static_cast<double>(i + 1); };
    CHECK(par::map_sum(Exec::serial, 20'000, f) == par::map_sum(Exec::parallel, 20'000, f));
    auto g = [](std::size_t i) { return std::sin(static_cast<double>(i)); };
    CHECK(par::map_max(Exec::serial, 20'000, g) == par::map_max(Exec::parallel, 20'000, g));
}

TEST_CASE("hashed entropy kernel") {
    Rng rng(55);
    const JointSource src = random_source(rng, 5, 3);
    const OneShotInstance inst(src, HashFamily::binning(5, 3));  // 243 seeds
    const OneShotInstance big(random_source(rng, 6, 2), HashFamily::binning(6, 4));  // 4096
    for (const auto& spec :
         {RenyiOrderSpec::plain(0.5), RenyiOrderSpec::plain(-0.5), RenyiOrderSpec::gallager(1.0),
          RenyiOrderSpec::shannon()}) {
        CHECK(hashed_conditional_entropy(inst, spec, Exec::serial) ==
              hashed_conditional_entropy(inst, spec, Exec::parallel));
        CHECK(hashed_conditional_entropy(big, spec, Exec::serial) ==
              hashed_conditional_entropy(big, spec, Exec::parallel));
    }
}

TEST_CASE("block decoding kernel") {
    Rng rng(56);
    const JointSource base = random_source(rng, 3, 3);
    SwSystem sys = sampled_binning_system(iid_extend(base, 3), 5, 11);
    CHECK(correct_probability(sys, Exec::serial).p_correct ==
          correct_probability(sys, Exec::parallel).p_correct);
    const VerificationReport serial_chain = verify_decoding_chain(sys, 2.0, Exec::serial);
    const VerificationReport parallel_chain = verify_decoding_chain(sys, 2.0, Exec::parallel);
    REQUIRE(serial_chain.checks.size() == parallel_chain.checks.size());
    for (std::size_t i = 0; i < serial_chain.checks.size(); ++i) {
        CHECK(serial_chain.checks[i].lhs == parallel_chain.checks[i].lhs);
        CHECK(serial_chain.checks[i].rhs == parallel_chain.checks[i].rhs);
    }
}

TEST_CASE("pair certification kernel") {
    const HashFamily fam = HashFamily::gf2m_piece(gf2m_field(8), 4, 1);
    CHECK(max_pair_collision(fam, Exec::serial) == max_pair_collision(fam, Exec::parallel));
}

TEST_CASE("curve sampling kernel") {
    Rng rng(57);
    const JointSource src = random_source(rng, 4, 3);
    for (BoundKind kind : {BoundKind::g_plus, BoundKind::e_minus}) {
        const BoundCurve a = sample_curve(src, kind, kind == BoundKind::g_plus ? 1.0 : 0.25,
                                          0.0, 1.2, 301, Exec::serial);
        const BoundCurve b = sample_curve(src, kind, kind == BoundKind::g_plus ? 1.0 : 0.25,
                                          0.0, 1.2, 301, Exec::parallel);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(a.values[i] == b.values[i]);
            CHECK(a.rates[i] == b.rates[i]);
        }
    }
}
