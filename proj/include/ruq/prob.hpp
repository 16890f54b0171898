#ifndef RUQ_PROB_HPP
#define RUQ_PROB_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ruq {

// Input masses may carry text-format round-off; internally we renormalize to
// a much tighter tolerance.
inline constexpr double kInputMassTolerance = 1e-9;
inline constexpr double kInternalMassTolerance = 1e-12;

// Finite probability mass function over symbols 0..size()-1.
// Entries are nonnegative and sum to one (validated on construction to the
// input tolerance, then renormalized).
class Pmf {
public:
    explicit Pmf(std::vector<double> probs);

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t a) const { return p_[a]; }
    const std::vector<double>& probs() const { return p_; }

    std::size_t support_size() const;
    // Number of entries attaining the maximum probability.
    std::size_t max_count() const;
    double max_prob() const;
    bool is_uniform_on_support(double tol = 1e-12) const;

private:
    std::vector<double> p_;
};

// Exponential tilt: P^(t)(a) proportional to P(a)^(1+t). Requires t > -1.
// Zero-mass symbols stay at zero (0^(1+t) := 0 for 1+t > 0).
Pmf tilt(const Pmf& p, double t);

// Shannon entropy in nats, 0 log 0 := 0.
double shannon_entropy(const Pmf& p);

// Joint pmf P_AE over {0..a_size-1} x {0..e_size-1} with cached marginal P_E.
class JointSource {
public:
    JointSource(std::size_t a_size, std::size_t e_size, std::vector<double> joint);

    std::size_t a_size() const { return a_size_; }
    std::size_t e_size() const { return e_size_; }
    double joint(std::size_t a, std::size_t e) const { return joint_[a * e_size_ + e]; }
    double p_e(std::size_t e) const { return p_e_[e]; }

    // P_{A|E}(a|e); requires P_E(e) > 0.
    double cond(std::size_t a, std::size_t e) const;

    // Full conditional row as a Pmf; throws DomainError when P_E(e) = 0.
    Pmf conditional_given_e(std::size_t e) const;

    Pmf marginal_e() const;
    Pmf marginal_a() const;

private:
    std::size_t a_size_, e_size_;
    std::vector<double> joint_;
    std::vector<double> p_e_;
};

// Source text format: lines "a e p", '#' comments, blank lines ignored.
// Symbols are dense integers; sizes are inferred from the largest index.
JointSource load_source(std::istream& in);
JointSource load_source_file(const std::string& path);

// The n-fold product P_AE^n. Probabilities are computed on demand from the
// base source; nothing is materialized until to_joint() is called.
class ProductSource {
public:
    static constexpr std::uint64_t kDefaultCellCap = 10'000'000;

    ProductSource(JointSource base, std::size_t n,
                  std::uint64_t cell_cap = kDefaultCellCap);

    const JointSource& base() const { return base_; }
    std::size_t n() const { return n_; }
    std::uint64_t a_cells() const { return a_cells_; }
    std::uint64_t e_cells() const { return e_cells_; }

    // Mixed-radix digits, most significant first, so index order is
    // lexicographic order on blocks.
    std::vector<std::size_t> a_block(std::uint64_t index) const;
    std::vector<std::size_t> e_block(std::uint64_t index) const;

    double joint_prob(std::uint64_t a_index, std::uint64_t e_index) const;
    double p_e_block(std::uint64_t e_index) const;
    // P^n_{A|E}(a|e); requires the e block to have positive mass.
    double cond_prob(std::uint64_t a_index, std::uint64_t e_index) const;

    // Materializes the product as an explicit source (subject to the cap).
    JointSource to_joint() const;

private:
    JointSource base_;
    std::size_t n_;
    std::uint64_t a_cells_, e_cells_;
};

// iid extension with the default cap; n = 1 yields a product view of the base.
ProductSource iid_extend(const JointSource& src, std::size_t n,
                         std::uint64_t cell_cap = ProductSource::kDefaultCellCap);

}  // namespace ruq

#endif
