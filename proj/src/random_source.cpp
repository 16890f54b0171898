#include "ruq/random_source.hpp"

#include <cmath>
#include <vector>

namespace ruq {

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double Rng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t n) { return next_u64() % n; }

namespace {

// Exponential(1) weights normalize to a flat Dirichlet sample.
double exp_weight(Rng& rng) {
    double u = rng.next_unit();
    while (u <= 0.0) u = rng.next_unit();
    return -std::log(u);
}

}  // namespace

JointSource random_source(Rng& rng, std::size_t a_size, std::size_t e_size,
                          double zero_fraction) {
    std::vector<double> joint(a_size * e_size);
    double total = 0.0;
    while (total <= 0.0) {
        total = 0.0;
        for (double& v : joint) {
            v = (zero_fraction > 0.0 && rng.next_unit() < zero_fraction) ? 0.0
                                                                         : exp_weight(rng);
            total += v;
        }
    }
    for (double& v : joint) v /= total;
    return JointSource(a_size, e_size, std::move(joint));
}

Pmf random_pmf(Rng& rng, std::size_t size) {
    std::vector<double> w(size);
    double total = 0.0;
    for (double& v : w) {
        v = exp_weight(rng);
        total += v;
    }
    for (double& v : w) v /= total;
    return Pmf(std::move(w));
}

HashFamily random_custom_family(Rng& rng, std::size_t a_size, std::size_t range,
                                std::size_t seeds) {
    std::vector<std::vector<std::uint32_t>> tables(seeds, std::vector<std::uint32_t>(a_size));
    for (auto& row : tables) {
        for (auto& b : row) b = static_cast<std::uint32_t>(rng.next_below(range)) + 1;
    }
    std::vector<double> probs(seeds, 1.0 / static_cast<double>(seeds));
    return HashFamily::custom_table(range, std::move(probs), std::move(tables));
}

}  // namespace ruq
