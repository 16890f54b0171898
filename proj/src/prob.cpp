#include "ruq/prob.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "ruq/errors.hpp"

namespace ruq {

namespace {

void check_mass(double sum, double tol, const char* what) {
    if (std::abs(sum - 1.0) > tol) {
        throw ValidationError(std::string(what) + " mass " + std::to_string(sum) +
                              " is outside 1 +/- " + std::to_string(tol));
    }
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw ValidationError("empty pmf");
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0)) throw ValidationError("negative or non-finite pmf entry");
        sum += v;
    }
    check_mass(sum, kInputMassTolerance, "pmf");
    for (double& v : p_) v /= sum;
}

std::size_t Pmf::support_size() const {
    return static_cast<std::size_t>(
        std::count_if(p_.begin(), p_.end(), [](double v) { return v > 0.0; }));
}

double Pmf::max_prob() const { return *std::max_element(p_.begin(), p_.end()); }

std::size_t Pmf::max_count() const {
    const double m = max_prob();
    return static_cast<std::size_t>(
        std::count_if(p_.begin(), p_.end(), [&](double v) { return v >= m * (1.0 - 1e-13); }));
}

bool Pmf::is_uniform_on_support(double tol) const {
    const double u = 1.0 / static_cast<double>(support_size());
    for (double v : p_) {
        if (v > 0.0 && std::abs(v - u) > tol) return false;
    }
    return true;
}

Pmf tilt(const Pmf& p, double t) {
    if (!(t > -1.0)) throw DomainError("tilt order t must exceed -1");
    // Work on log probabilities so large t stays finite.
    double max_log = -std::numeric_limits<double>::infinity();
    for (double v : p.probs()) {
        if (v > 0.0) max_log = std::max(max_log, std::log(v));
    }
    std::vector<double> w(p.size(), 0.0);
    double z = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] > 0.0) {
            w[a] = std::exp((1.0 + t) * (std::log(p[a]) - max_log));
            z += w[a];
        }
    }
    for (double& v : w) v /= z;
    return Pmf(std::move(w));
}

double shannon_entropy(const Pmf& p) {
    double h = 0.0;
    for (double v : p.probs()) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

JointSource::JointSource(std::size_t a_size, std::size_t e_size, std::vector<double> joint)
    : a_size_(a_size), e_size_(e_size), joint_(std::move(joint)) {
    if (a_size_ == 0 || e_size_ == 0) throw ValidationError("empty alphabet");
    if (joint_.size() != a_size_ * e_size_) throw ValidationError("joint size mismatch");
    double sum = 0.0;
    for (double v : joint_) {
        if (!(v >= 0.0)) throw ValidationError("negative or non-finite joint entry");
        sum += v;
    }
    check_mass(sum, kInputMassTolerance, "joint");
    for (double& v : joint_) v /= sum;
    p_e_.assign(e_size_, 0.0);
    for (std::size_t a = 0; a < a_size_; ++a) {
        for (std::size_t e = 0; e < e_size_; ++e) p_e_[e] += joint_[a * e_size_ + e];
    }
}

double JointSource::cond(std::size_t a, std::size_t e) const {
    return joint_[a * e_size_ + e] / p_e_[e];
}

Pmf JointSource::conditional_given_e(std::size_t e) const {
    if (e >= e_size_) throw DomainError("side-information symbol out of range");
    if (!(p_e_[e] > 0.0)) {
        throw DomainError("conditional undefined: P_E(" + std::to_string(e) + ") = 0");
    }
    std::vector<double> row(a_size_);
    for (std::size_t a = 0; a < a_size_; ++a) row[a] = cond(a, e);
    return Pmf(std::move(row));
}

Pmf JointSource::marginal_e() const { return Pmf(p_e_); }

Pmf JointSource::marginal_a() const {
    std::vector<double> pa(a_size_, 0.0);
    for (std::size_t a = 0; a < a_size_; ++a) {
        for (std::size_t e = 0; e < e_size_; ++e) pa[a] += joint(a, e);
    }
    return Pmf(std::move(pa));
}

JointSource load_source(std::istream& in) {
    std::map<std::pair<std::size_t, std::size_t>, double> cells;
    std::size_t max_a = 0, max_e = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long a = 0, e = 0;
        double p = 0.0;
        if (!(ls >> a)) {
            std::string rest;
            if (ls.clear(), ls >> rest) throw ParseError("expected 'a e p'", lineno);
            continue;  // blank or comment-only line
        }
        if (!(ls >> e >> p)) throw ParseError("expected 'a e p'", lineno);
        std::string trailing;
        if (ls >> trailing) throw ParseError("trailing tokens after 'a e p'", lineno);
        if (a < 0 || e < 0) throw ParseError("negative symbol index", lineno);
        if (a >= (1 << 20) || e >= (1 << 20)) {
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": symbol index exceeds the 2^20 alphabet cap");
        }
        if (!(p >= 0.0)) throw ValidationError("line " + std::to_string(lineno) +
                                               ": negative probability");
        auto key = std::make_pair(static_cast<std::size_t>(a), static_cast<std::size_t>(e));
        if (cells.count(key)) {
            throw ValidationError("line " + std::to_string(lineno) + ": duplicate entry for (" +
                                  std::to_string(a) + "," + std::to_string(e) + ")");
        }
        cells[key] = p;
        max_a = std::max(max_a, key.first);
        max_e = std::max(max_e, key.second);
    }
    if (cells.empty()) throw ValidationError("source file holds no entries");
    std::vector<double> joint((max_a + 1) * (max_e + 1), 0.0);
    for (const auto& [key, p] : cells) joint[key.first * (max_e + 1) + key.second] = p;
    return JointSource(max_a + 1, max_e + 1, std::move(joint));
}

JointSource load_source_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open source file: " + path);
    return load_source(in);
}

ProductSource::ProductSource(JointSource base, std::size_t n, std::uint64_t cell_cap)
    : base_(std::move(base)), n_(n) {
    if (n_ == 0) throw DomainError("blocklength must be positive");
    a_cells_ = 1;
    e_cells_ = 1;
    for (std::size_t i = 0; i < n_; ++i) {
        if (a_cells_ > cell_cap / base_.a_size() || e_cells_ > cell_cap) {
            throw ResourceError("product source exceeds the enumeration cap");
        }
        a_cells_ *= base_.a_size();
        e_cells_ *= base_.e_size();
    }
    if (a_cells_ > cell_cap / e_cells_) {
        throw ResourceError("product source exceeds the enumeration cap");
    }
}

std::vector<std::size_t> ProductSource::a_block(std::uint64_t index) const {
    std::vector<std::size_t> out(n_);
    for (std::size_t i = n_; i-- > 0;) {
        out[i] = static_cast<std::size_t>(index % base_.a_size());
        index /= base_.a_size();
    }
    return out;
}

std::vector<std::size_t> ProductSource::e_block(std::uint64_t index) const {
    std::vector<std::size_t> out(n_);
    for (std::size_t i = n_; i-- > 0;) {
        out[i] = static_cast<std::size_t>(index % base_.e_size());
        index /= base_.e_size();
    }
    return out;
}

double ProductSource::joint_prob(std::uint64_t a_index, std::uint64_t e_index) const {
    double p = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t a = static_cast<std::size_t>(a_index % base_.a_size());
        const std::size_t e = static_cast<std::size_t>(e_index % base_.e_size());
        a_index /= base_.a_size();
        e_index /= base_.e_size();
        p *= base_.joint(a, e);
    }
    return p;
}

double ProductSource::p_e_block(std::uint64_t e_index) const {
    double p = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
        p *= base_.p_e(static_cast<std::size_t>(e_index % base_.e_size()));
        e_index /= base_.e_size();
    }
    return p;
}

double ProductSource::cond_prob(std::uint64_t a_index, std::uint64_t e_index) const {
    double p = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t a = static_cast<std::size_t>(a_index % base_.a_size());
        const std::size_t e = static_cast<std::size_t>(e_index % base_.e_size());
        a_index /= base_.a_size();
        e_index /= base_.e_size();
        p *= base_.cond(a, e);
    }
    return p;
}

JointSource ProductSource::to_joint() const {
    std::vector<double> joint(a_cells_ * e_cells_);
    for (std::uint64_t a = 0; a < a_cells_; ++a) {
        for (std::uint64_t ev = 0; ev < e_cells_; ++ev) {
            joint[a * e_cells_ + ev] = joint_prob(a, ev);
        }
    }
    return JointSource(static_cast<std::size_t>(a_cells_), static_cast<std::size_t>(e_cells_),
                       std::move(joint));
}

ProductSource iid_extend(const JointSource& src, std::size_t n, std::uint64_t cell_cap) {
    return ProductSource(src, n, cell_cap);
}

}  // namespace ruq
