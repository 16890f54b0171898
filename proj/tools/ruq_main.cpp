// ruq: conditional Renyi information measures, remaining-uncertainty bound
// curves, hash-family certification, and finite-blocklength verification
// suites, from the command line.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ruq/bounds.hpp"
#include "ruq/errors.hpp"
#include "ruq/gf2m.hpp"
#include "ruq/hash_family.hpp"
#include "ruq/multipath.hpp"
#include "ruq/oneshot.hpp"
#include "ruq/parallel.hpp"
#include "ruq/prob.hpp"
#include "ruq/random_source.hpp"
#include "ruq/renyi.hpp"
#include "ruq/report.hpp"
#include "ruq/slepianwolf.hpp"

namespace {

using namespace ruq;

std::string fmt(double v, int precision) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw UsageError("empty number list: '" + text + "'");
    return out;
}

int report_exit(const VerificationReport& report, int precision) {
    report.print(std::cout, precision);
    if (report.all_pass()) {
        std::cout << "RESULT: PASS (" << report.checks.size() << " checks)\n";
        return 0;
    }
    std::cout << "RESULT: FAIL (" << report.fail_count() << " of " << report.checks.size()
              << " checks failed)\n";
    return 1;
}

struct CommonOpts {
    std::string source_path;
    int precision = 6;
};

JointSource load(const CommonOpts& c) { return load_source_file(c.source_path); }

// ---------------------------------------------------------------- measure

struct MeasureOpts : CommonOpts {
    std::string variant = "shannon";
    double s = 0.0;
    double t = 0.0;
    std::string relative_q;
};

int run_measure(const MeasureOpts& o) {
    std::cout << "# config: measure source=" << o.source_path << " variant=" << o.variant
              << " s=" << o.s << " t=" << o.t
              << (o.relative_q.empty() ? "" : " relative-q=" + o.relative_q)
              << " precision=" << o.precision << "\n";
    const auto variant = variant_from_name(o.variant);
    if (!variant) throw UsageError("unknown variant: " + o.variant);
    const JointSource src = load(o);
    RenyiOrderSpec spec{*variant, o.s, o.t};
    double value;
    if (!o.relative_q.empty()) {
        value = conditional_entropy(src, spec, Pmf(parse_double_list(o.relative_q)));
    } else {
        value = conditional_entropy(src, spec);
    }
    std::string label;
    switch (*variant) {
        case Variant::shannon: label = "H(A|E)"; break;
        case Variant::plain: label = "H_{" + fmt(1.0 + o.s, 6) + "}(A|E)"; break;
        case Variant::gallager: label = "H^up_{" + fmt(1.0 + o.s, 6) + "}(A|E)"; break;
        case Variant::two_param:
            label = "H_{" + fmt(1.0 + o.s, 6) + "|" + fmt(1.0 + o.t, 6) + "}(A|E)";
            break;
        case Variant::min: label = "H_{min}(A|E)"; break;
        case Variant::min_gallager: label = "H^up_{min}(A|E)"; break;
    }
    std::cout << label << " = " << fmt(value, o.precision) << " nats\n";
    return 0;
}

// ----------------------------------------------------------------- curves

struct CurveOpts : CommonOpts {
    std::string kind;
    double s = 0.5;
    double r_min = 0.0;
    double r_max = 1.0;
    std::size_t steps = 101;
    std::string out_path;
    bool serial = false;
};

int run_curve(const CurveOpts& o, bool exponent) {
    std::cout << "# config: " << (exponent ? "exponent-curve" : "curve") << " source="
              << o.source_path << " kind=" << o.kind << " s=" << o.s << " r-min=" << o.r_min
              << " r-max=" << o.r_max << " steps=" << o.steps << " out=" << o.out_path
              << " precision=" << o.precision << " threads=" << par::thread_count() << "\n";
    const auto kind = bound_kind_from_name(o.kind);
    if (!kind) throw UsageError("unknown curve kind: " + o.kind);
    if (exponent != is_exponent_kind(*kind)) {
        throw UsageError(exponent ? "exponent-curve accepts e_* kinds only"
                                  : "curve accepts g_* kinds only; see exponent-curve");
    }
    const JointSource src = load(o);
    const BoundCurve curve = sample_curve(src, *kind, o.s, o.r_min, o.r_max, o.steps,
                                          o.serial ? Exec::serial : Exec::parallel);
    std::ofstream out(o.out_path);
    if (!out) throw InputError("cannot write: " + o.out_path);
    out.precision(o.precision);
    out << "R,value\n";
    for (std::size_t i = 0; i < curve.rates.size(); ++i) {
        out << curve.rates[i] << ',' << curve.values[i] << '\n';
    }
    std::cout << "wrote " << o.out_path << " (" << curve.rates.size() << " rows)\n";
    return 0;
}

// --------------------------------------------------------------------- s0

struct S0Opts : CommonOpts {
    std::string pmf;
};

int run_s0(const S0Opts& o) {
    std::cout << "# config: s0 " << (o.pmf.empty() ? "source=" + o.source_path : "pmf=" + o.pmf)
              << " precision=" << o.precision << "\n";
    if (!o.pmf.empty()) {
        std::cout << "s0 = " << fmt(s0_single(Pmf(parse_double_list(o.pmf))), o.precision)
                  << "\n";
        return 0;
    }
    if (o.source_path.empty()) throw UsageError("s0 needs --source or --pmf");
    const JointSource src = load(o);
    for (std::size_t e = 0; e < src.e_size(); ++e) {
        if (src.p_e(e) > 0.0) {
            std::cout << "s0(e=" << e << ") = "
                      << fmt(s0_single(src.conditional_given_e(e)), o.precision) << "\n";
        }
    }
    std::cout << "s0 = " << fmt(s0_joint(src), o.precision) << "\n";
    return 0;
}

// ------------------------------------------------------------- thresholds

struct ThresholdOpts : CommonOpts {
    double s = 0.5;
};

int run_thresholds(const ThresholdOpts& o) {
    std::cout << "# config: thresholds source=" << o.source_path << " s=" << o.s
              << " precision=" << o.precision << "\n";
    const JointSource src = load(o);
    const ThresholdRates r = thresholds(src, o.s);
    std::cout << "t_minus_upper = " << fmt(r.t_minus_upper, o.precision) << "\n";
    std::cout << "t_minus_strong_lower = " << fmt(r.t_minus_strong_lower, o.precision)
              << " (valid: " << (r.strong_converse_valid ? "yes" : "no") << ")\n";
    std::cout << "t_plus = " << fmt(r.t_plus, o.precision) << "\n";
    std::cout << "t_up_minus = " << fmt(r.t_up_minus, o.precision)
              << " (valid: " << (r.up_minus_valid ? "yes" : "no") << ")\n";
    std::cout << "t_up_plus = " << fmt(r.t_up_plus, o.precision) << "\n";
    return 0;
}

// ---------------------------------------------------------------- verify

struct FamilyOpts {
    std::string family = "binning";
    std::size_t a_size = 4;
    std::size_t m_buckets = 2;
    int gf_m = 4;
    int gf_l = 2;
    int gf_j = 1;
    std::uint32_t prime = 17;
    std::string table_path;
};

HashFamily build_family(const FamilyOpts& f) {
    if (f.family == "binning") return HashFamily::binning(f.a_size, f.m_buckets);
    if (f.family == "gf2m") return HashFamily::gf2m_piece(gf2m_field(f.gf_m), f.gf_l, f.gf_j);
    if (f.family == "affine") return HashFamily::affine_prime(f.prime, f.m_buckets);
    if (f.family == "custom") return load_custom_family_file(f.table_path);
    throw UsageError("unknown family kind: " + f.family);
}

struct VerifyOneshotOpts : CommonOpts {
    FamilyOpts fam;
    std::string suite = "expectation";
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    std::size_t e_size = 3;
};

int run_verify_oneshot(const VerifyOneshotOpts& o) {
    std::cout << "# config: verify oneshot family=" << o.fam.family << " suite=" << o.suite
              << " source=" << (o.source_path.empty() ? "random" : o.source_path)
              << " trials=" << o.trials << " seed=" << o.seed << " a-size=" << o.fam.a_size
              << " e-size=" << o.e_size << " M=" << o.fam.m_buckets << " gf-m=" << o.fam.gf_m
              << " gf-l=" << o.fam.gf_l << " gf-j=" << o.fam.gf_j
              << " threads=" << par::thread_count() << "\n";
    if (o.suite != "expectation" && o.suite != "window" && o.suite != "binomial" &&
        o.suite != "all") {
        throw UsageError("unknown suite: " + o.suite);
    }
    VerificationReport report;
    if (o.suite == "binomial" || o.suite == "all") {
        for (std::uint64_t L : {10u, 100u, 1000u, 10000u}) {
            for (double p : {0.05, 0.3, 0.7, 0.95, 1.0}) {
                for (double s : {0.0, 0.5, 1.0}) {
                    for (double eps : {0.25, 0.75}) {
                        report.append(binomial_moment_check({L, p, s, eps}));
                    }
                }
            }
        }
        if (o.suite == "binomial") return report_exit(report, o.precision);
    }
    const HashFamily fam = build_family(o.fam);
    Rng rng(o.seed);
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        JointSource src = o.source_path.empty()
                              ? random_source(rng, o.fam.a_size, o.e_size,
                                              trial % 10 == 9 ? 0.15 : 0.0)
                              : load(o);
        OneShotInstance inst(std::move(src), fam);
        if (o.suite == "expectation" || o.suite == "all") {
            for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                report.append(verify_oneshot_upper(inst, s));
            }
            for (double s : {0.0, 0.5, 1.0, 2.0, 4.0}) {
                report.append(verify_oneshot_lower(inst, s));
            }
        }
        if (o.suite == "window" || o.suite == "all") {
            for (double s : {-0.5, 0.0, 0.5, 0.9}) {
                report.append(conditioning_window_check(inst, s));
            }
        }
        if (!o.source_path.empty()) break;  // a fixed source needs one pass
    }
    return report_exit(report, o.precision);
}

struct VerifySwOpts : CommonOpts {
    std::string check = "all";
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::size_t n = 2;
    std::uint32_t m_messages = 2;
    std::size_t a_size = 2;
    std::size_t e_size = 2;
    std::string s_list = "1,2";
};

int run_verify_sw(const VerifySwOpts& o) {
    std::cout << "# config: verify sw check=" << o.check
              << " source=" << (o.source_path.empty() ? "random" : o.source_path)
              << " n=" << o.n << " M=" << o.m_messages << " trials=" << o.trials
              << " seed=" << o.seed << " a-size=" << o.a_size << " e-size=" << o.e_size
              << " s-list=" << o.s_list << " threads=" << par::thread_count() << "\n";
    if (o.check != "identity" && o.check != "chain" && o.check != "all") {
        throw UsageError("unknown check: " + o.check);
    }
    const std::vector<double> s_values = parse_double_list(o.s_list);
    VerificationReport report;
    Rng rng(o.seed);
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        JointSource base = o.source_path.empty() ? random_source(rng, o.a_size, o.e_size)
                                                 : load(o);
        SwSystem sys =
            sampled_binning_system(iid_extend(base, o.n), o.m_messages, rng.next_u64());
        if (o.check == "identity" || o.check == "all") {
            report.append(verify_strong_converse_identity(sys));
        }
        if (o.check == "chain" || o.check == "all") {
            for (double s : s_values) report.append(verify_decoding_chain(sys, s));
        }
    }
    return report_exit(report, o.precision);
}

struct VerifyHashOpts : CommonOpts {
    FamilyOpts fam;
    std::string level = "universal2";
    double epsilon = 1.0;
};

int run_verify_hash(const VerifyHashOpts& o) {
    std::cout << "# config: verify hash family=" << o.fam.family << " level=" << o.level
              << " epsilon=" << o.epsilon << " a-size=" << o.fam.a_size
              << " M=" << o.fam.m_buckets << " gf-m=" << o.fam.gf_m << " gf-l=" << o.fam.gf_l
              << " gf-j=" << o.fam.gf_j << " table=" << o.fam.table_path
              << " threads=" << par::thread_count() << "\n";
    const HashFamily fam = build_family(o.fam);
    UniversalityLevel level;
    if (o.level == "almost") {
        level = UniversalityLevel::almost_universal2;
    } else if (o.level == "universal2") {
        level = UniversalityLevel::universal2;
    } else if (o.level == "strongly") {
        level = UniversalityLevel::strongly_universal;
    } else {
        throw UsageError("unknown certification level: " + o.level);
    }
    // Exact worst-pair collision, printed when the pair scan is affordable.
    const std::uint64_t pair_work = static_cast<std::uint64_t>(fam.domain_size()) *
                                    fam.domain_size() / 2 * std::max<std::uint64_t>(1, fam.seed_count());
    if (fam.enumerable() && fam.domain_size() > 1 && pair_work <= 200'000'000ULL) {
        CollisionProbability worst{true, 0, 1, -1.0};
        std::size_t wa = 0, wb = 1;
        for (std::size_t a1 = 0; a1 < fam.domain_size(); ++a1) {
            for (std::size_t a2 = a1 + 1; a2 < fam.domain_size(); ++a2) {
                const auto c = collision_probability(fam, a1, a2);
                if (c.value > worst.value) {
                    worst = c;
                    wa = a1;
                    wb = a2;
                }
            }
        }
        std::cout << "worst-pair collision (" << wa << "," << wb << ") = ";
        if (worst.exact_rational) {
            std::cout << worst.numerator << "/" << worst.denominator << " = ";
        }
        std::cout << fmt(worst.value, o.precision) << " (1/M = "
                  << fmt(1.0 / static_cast<double>(fam.range_size()), o.precision) << ")\n";
    }
    return report_exit(verify_universality(fam, level, o.epsilon), o.precision);
}

// -------------------------------------------------------------- multipath

struct MultipathOpts : CommonOpts {
    int m_bits = 4;
    int l_width = 2;
    int j_index = 1;
    std::string message;  // hex or decimal; empty -> demo over a few values
    std::string mask;
    bool exhaustive = false;
    bool uncertainty = false;
    std::string variant = "shannon";
    double s = 0.0;
};

std::uint32_t parse_word(const std::string& text) {
    return static_cast<std::uint32_t>(std::stoul(text, nullptr, 0));
}

void print_demo_line(const MultipathConfig& cfg, std::uint32_t a, std::uint32_t x) {
    const auto pieces = mp_encode(cfg, a, x);
    const std::uint32_t back = mp_decode(cfg, pieces, x);
    std::ostringstream os;
    os << std::hex << "A=0x" << a << " X=0x" << x << " pieces=";
    for (std::size_t i = 0; i < pieces.size(); ++i) os << (i ? "," : "") << "0x" << pieces[i];
    os << " decoded=0x" << back;
    std::cout << os.str() << "\n";
}

int run_multipath(const MultipathOpts& o) {
    std::cout << "# config: multipath m=" << o.m_bits << " l=" << o.l_width << " j=" << o.j_index
              << " exhaustive=" << (o.exhaustive ? 1 : 0)
              << " uncertainty=" << (o.uncertainty ? 1 : 0) << " variant=" << o.variant
              << " s=" << o.s << " source=" << o.source_path << " precision=" << o.precision
              << "\n";
    const MultipathConfig cfg = MultipathConfig::make(o.m_bits, o.l_width, o.j_index);
    if (o.uncertainty) {
        const auto variant = variant_from_name(o.variant);
        if (!variant) throw UsageError("unknown variant: " + o.variant);
        const JointSource src = load(o);
        const double value =
            eavesdropper_uncertainty(cfg, src, RenyiOrderSpec{*variant, o.s, 0.0});
        std::cout << "eavesdropper uncertainty = " << fmt(value, o.precision) << " nats\n";
        return 0;
    }
    if (o.exhaustive) {
        if (o.m_bits > 8) throw ResourceError("exhaustive round-trip supports m <= 8");
        std::uint64_t mismatches = 0;
        for (std::uint32_t x = 1; x < cfg.field.order(); ++x) {
            for (std::uint32_t a = 0; a < cfg.field.order(); ++a) {
                if (mp_decode(cfg, mp_encode(cfg, a, x), x) != a) ++mismatches;
            }
        }
        std::cout << "round-trip mismatches = " << mismatches << " over "
                  << (cfg.field.order() - 1) * static_cast<std::uint64_t>(cfg.field.order())
                  << " (A,X) pairs\n";
        return mismatches == 0 ? 0 : 1;
    }
    if (!o.message.empty() && !o.mask.empty()) {
        print_demo_line(cfg, parse_word(o.message), parse_word(o.mask));
        return 0;
    }
    // Small deterministic demo.
    for (std::uint32_t x : {1u, 2u, cfg.field.order() - 1u}) {
        for (std::uint32_t a : {0u, 1u, cfg.field.order() / 2u}) {
            print_demo_line(cfg, a & cfg.field.element_mask(), x & cfg.field.element_mask());
        }
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& c, bool source_required) {
    auto* opt = cmd->add_option("--source", c.source_path, "source file (lines 'a e p')");
    if (source_required) opt->required();
    cmd->add_option("--precision", c.precision, "significant digits (max 15)")
        ->check(CLI::Range(1, 15));
}

void add_family(CLI::App* cmd, FamilyOpts& f) {
    cmd->add_option("--family", f.family, "binning|gf2m|affine|custom");
    cmd->add_option("--a-size", f.a_size, "alphabet size (binning domain)");
    cmd->add_option("--M", f.m_buckets, "bucket count");
    cmd->add_option("--m", f.gf_m, "field width in bits");
    cmd->add_option("--l", f.gf_l, "piece width in bits");
    cmd->add_option("--j", f.gf_j, "piece index (1-based)");
    cmd->add_option("--p", f.prime, "prime domain size (affine family)");
    cmd->add_option("--table", f.table_path, "custom family table file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conditional Renyi remaining-uncertainty toolkit"};
    app.require_subcommand(1);

    MeasureOpts measure_opts;
    auto* measure = app.add_subcommand("measure", "conditional entropy of one variant");
    add_common(measure, measure_opts, true);
    measure->add_option("--variant", measure_opts.variant,
                        "shannon|plain|gallager|two-param|min|min-gallager");
    measure->add_option("--s", measure_opts.s, "order offset");
    measure->add_option("--t", measure_opts.t, "second order offset (two-param)");
    measure->add_option("--relative-q", measure_opts.relative_q,
                        "reference distribution over E, comma separated");

    CurveOpts curve_opts;
    auto* curve = app.add_subcommand("curve", "remaining-uncertainty bound curve as CSV");
    add_common(curve, curve_opts, true);
    curve->add_option("--kind", curve_opts.kind, "g_minus|gup_minus|g_plus|gup_plus")->required();
    curve->add_option("--s", curve_opts.s, "order offset");
    curve->add_option("--r-min", curve_opts.r_min)->required();
    curve->add_option("--r-max", curve_opts.r_max)->required();
    curve->add_option("--steps", curve_opts.steps)->required();
    curve->add_option("--out", curve_opts.out_path)->required();
    curve->add_flag("--serial", curve_opts.serial, "disable the parallel kernel");

    CurveOpts exp_opts;
    auto* exponent = app.add_subcommand("exponent-curve", "exponent bound curve as CSV");
    add_common(exponent, exp_opts, true);
    exponent->add_option("--kind", exp_opts.kind, "e_minus|eup_minus|e_plus|eup_plus")
        ->required();
    exponent->add_option("--s", exp_opts.s, "order offset");
    exponent->add_option("--r-min", exp_opts.r_min)->required();
    exponent->add_option("--r-max", exp_opts.r_max)->required();
    exponent->add_option("--steps", exp_opts.steps)->required();
    exponent->add_option("--out", exp_opts.out_path)->required();
    exponent->add_flag("--serial", exp_opts.serial, "disable the parallel kernel");

    S0Opts s0_opts;
    auto* s0 = app.add_subcommand("s0", "strong-converse order threshold");
    add_common(s0, s0_opts, false);
    s0->add_option("--pmf", s0_opts.pmf, "explicit pmf, comma separated");

    ThresholdOpts thr_opts;
    auto* thr = app.add_subcommand("thresholds", "optimal compression rates at one s");
    add_common(thr, thr_opts, true);
    thr->add_option("--s", thr_opts.s, "order offset in [0,1]");

    auto* verify = app.add_subcommand("verify", "exact verification suites");
    verify->require_subcommand(1);

    VerifyOneshotOpts vo;
    auto* v_oneshot = verify->add_subcommand("oneshot", "hashed-entropy inequality suite");
    add_common(v_oneshot, vo, false);
    add_family(v_oneshot, vo.fam);
    v_oneshot->add_option("--suite", vo.suite, "expectation|window|binomial|all");
    v_oneshot->add_option("--trials", vo.trials, "random instances");
    v_oneshot->add_option("--seed", vo.seed, "rng seed");
    v_oneshot->add_option("--e-size", vo.e_size, "side alphabet size for random sources");

    VerifySwOpts vs;
    auto* v_sw = verify->add_subcommand("sw", "block decoding identity and chain suite");
    add_common(v_sw, vs, false);
    v_sw->add_option("--check", vs.check, "identity|chain|all");
    v_sw->add_option("--trials", vs.trials, "random instances");
    v_sw->add_option("--seed", vs.seed, "rng seed");
    v_sw->add_option("--n", vs.n, "blocklength");
    v_sw->add_option("--M", vs.m_messages, "message count");
    v_sw->add_option("--a-size", vs.a_size, "alphabet size for random sources");
    v_sw->add_option("--e-size", vs.e_size, "side alphabet size for random sources");
    v_sw->add_option("--s-list", vs.s_list, "chain orders, comma separated");

    VerifyHashOpts vh;
    auto* v_hash = verify->add_subcommand("hash", "hash family certification");
    add_common(v_hash, vh, false);
    add_family(v_hash, vh.fam);
    v_hash->add_option("--level", vh.level, "almost|universal2|strongly");
    v_hash->add_option("--epsilon", vh.epsilon, "claimed epsilon for the almost level");

    MultipathOpts mp;
    auto* multipath = app.add_subcommand("multipath", "masked piece-splitting demo");
    add_common(multipath, mp, false);
    multipath->add_option("--m", mp.m_bits, "message bits");
    multipath->add_option("--l", mp.l_width, "piece bits");
    multipath->add_option("--j", mp.j_index, "tapped piece (1-based)");
    multipath->add_option("--message", mp.message, "single message (hex or decimal)");
    multipath->add_option("--mask", mp.mask, "single mask (hex or decimal)");
    multipath->add_flag("--exhaustive", mp.exhaustive, "round-trip all (A,X) pairs");
    multipath->add_flag("--uncertainty", mp.uncertainty, "eavesdropper uncertainty");
    multipath->add_option("--variant", mp.variant, "entropy variant for --uncertainty");
    multipath->add_option("--s", mp.s, "order offset for --uncertainty");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (measure->parsed()) return run_measure(measure_opts);
        if (curve->parsed()) return run_curve(curve_opts, false);
        if (exponent->parsed()) return run_curve(exp_opts, true);
        if (s0->parsed()) return run_s0(s0_opts);
        if (thr->parsed()) return run_thresholds(thr_opts);
        if (v_oneshot->parsed()) return run_verify_oneshot(vo);
        if (v_sw->parsed()) return run_verify_sw(vs);
        if (v_hash->parsed()) return run_verify_hash(vh);
        if (multipath->parsed()) return run_multipath(mp);
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
