// Benchmark comparing the serial reference kernels against the OpenMP ones:
// seed-expectation transforms, block decoding enumeration, pair
// certification, and curve sampling.

#include <chrono>
#include <cstdio>

#include "ruq/bounds.hpp"
#include "ruq/hash_family.hpp"
#include "ruq/oneshot.hpp"
#include "ruq/parallel.hpp"
#include "ruq/random_source.hpp"
#include "ruq/slepianwolf.hpp"

using namespace ruq;

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, double check_serial,
         double check_parallel) {
    std::printf("%-34s %10.1f ms %10.1f ms   x%.2f   |diff|=%.3g\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms,
                std::abs(check_serial - check_parallel));
}

}  // namespace

int main() {
    std::printf("threads=%d openmp=%d\n", par::thread_count(), par::openmp_enabled() ? 1 : 0);
    std::printf("%-34s %13s %13s\n", "kernel", "serial", "parallel");

    Rng rng(2024);

    {
        // Seed expectation over an explicit binning family: 2^18 seeds.
        JointSource src = random_source(rng, 6, 3);
        OneShotInstance inst(src, HashFamily::binning(6, 8));
        const RenyiOrderSpec spec = RenyiOrderSpec::plain(0.5);
        double vs = 0, vp = 0;
        const double ts = time_ms([&] { vs = hashed_conditional_entropy(inst, spec, Exec::serial); });
        const double tp =
            time_ms([&] { vp = hashed_conditional_entropy(inst, spec, Exec::parallel); });
        row("hashed entropy (262k seeds)", ts, tp, vs, vp);
    }
    {
        // Block decoding over a 4^6 x 3^6 product.
        JointSource base = random_source(rng, 4, 3);
        SwSystem sys = sampled_binning_system(iid_extend(base, 6), 64, 7);
        double vs = 0, vp = 0;
        const double ts = time_ms([&] { vs = correct_probability(sys, Exec::serial).p_correct; });
        const double tp =
            time_ms([&] { vp = correct_probability(sys, Exec::parallel).p_correct; });
        row("block decoding (4^6 x 3^6)", ts, tp, vs, vp);
    }
    {
        // Pair certification of a field piece family.
        HashFamily fam = HashFamily::gf2m_piece(gf2m_field(9), 3, 1);
        double vs = 0, vp = 0;
        const double ts = time_ms([&] { vs = max_pair_collision(fam, Exec::serial); });
        const double tp = time_ms([&] { vp = max_pair_collision(fam, Exec::parallel); });
        row("pair certification (m=9)", ts, tp, vs, vp);
    }
    {
        // Bound curve sampling.
        JointSource src = random_source(rng, 5, 4);
        double vs = 0, vp = 0;
        const double ts = time_ms([&] {
            vs = sample_curve(src, BoundKind::gup_plus, 1.0, 0.0, 1.5, 801, Exec::serial)
                     .values.back();
        });
        const double tp = time_ms([&] {
            vp = sample_curve(src, BoundKind::gup_plus, 1.0, 0.0, 1.5, 801, Exec::parallel)
                     .values.back();
        });
        row("bound curve (801 rates)", ts, tp, vs, vp);
    }
    return 0;
}
