// End-to-end checks of the command-line surface: spawns the real binary
// (path passed as argv[1]), captures stdout, and inspects files and exit
// codes.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int g_failures = 0;
std::string g_cli;

#define CLI_CHECK(cond, msg)                                                      \
    do {                                                                          \
        if (!(cond)) {                                                            \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg   \
                      << "\n";                                                    \
            ++g_failures;                                                         \
        }                                                                         \
    } while (0)

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::filesystem::path write_example_source() {
    const auto path = std::filesystem::temp_directory_path() / "ruq_cli_example.src";
    std::ofstream out(path);
    out << "0 0 0.7\n0 1 0.1\n1 0 0.1\n1 1 0.1\n";
    return path;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_value_after(const std::string& text, const std::string& needle) {
    const auto pos = text.find(needle);
    if (pos == std::string::npos) return -1e99;
    return std::stod(text.substr(pos + needle.size()));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: ruq_cli_tests <path-to-cli>\n";
        return 2;
    }
    g_cli = argv[1];
    const auto src = write_example_source();

    {
        const RunResult r = run("measure --source " + src.string() + " --variant shannon");
        CLI_CHECK(r.exit_code == 0, "measure exits 0");
        CLI_CHECK(r.out.rfind("# config:", 0) == 0, "leading config line");
        const double v = parse_value_after(r.out, "H(A|E) = ");
        CLI_CHECK(std::abs(v - 0.4401) < 5e-4, "shannon value near 0.4401, got " << v);
        CLI_CHECK(r.out.find("nats") != std::string::npos, "unit suffix");
    }
    {
        const RunResult r = run("measure --source " + src.string() +
                                " --variant min --precision 12");
        const double v = parse_value_after(r.out, " = ");
        CLI_CHECK(std::abs(v - 0.133531392624) < 1e-9, "min entropy with precision 12");
    }
    {
        // curve files: header plus one row per grid point, byte-stable
        const auto csv = std::filesystem::temp_directory_path() / "ruq_cli_curve.csv";
        const std::string args = "curve --kind g_minus --s 0.5 --r-min 0.7 --r-max 0.8 "
                                 "--steps 2 --source " +
                                 src.string() + " --out " + csv.string();
        CLI_CHECK(run(args).exit_code == 0, "curve exits 0");
        const std::string first = slurp(csv);
        std::istringstream lines(first);
        std::string line;
        std::vector<std::string> all;
        while (std::getline(lines, line)) all.push_back(line);
        CLI_CHECK(all.size() == 3, "steps=2 file holds header + 2 rows, got " << all.size());
        CLI_CHECK(all[0] == "R,value", "csv header");
        // r_min 0.7 exceeds H_{1/2} ~ 0.546, so both rows are zero
        CLI_CHECK(all[1].substr(all[1].find(',') + 1) == "0", "clipped row is zero");
        CLI_CHECK(run(args).exit_code == 0, "curve rerun exits 0");
        CLI_CHECK(slurp(csv) == first, "rerun is byte-identical");
    }
    {
        const auto csv = std::filesystem::temp_directory_path() / "ruq_cli_exp.csv";
        const RunResult r = run("exponent-curve --kind e_plus --s 0 --r-min 0 --r-max 0.8 "
                                "--steps 5 --source " +
                                src.string() + " --out " + csv.string());
        CLI_CHECK(r.exit_code == 0, "exponent-curve exits 0");
        const RunResult bad = run("exponent-curve --kind g_plus --s 0 --r-min 0 --r-max 1 "
                                  "--steps 5 --source " +
                                  src.string() + " --out " + csv.string());
        CLI_CHECK(bad.exit_code == 2, "kind mismatch is a usage error, got " << bad.exit_code);
    }
    {
        const RunResult r = run("s0 --pmf 0.25,0.75");
        CLI_CHECK(std::abs(parse_value_after(r.out, "s0 = ") - 0.615) < 2e-3, "s0 worked value");
    }
    {
        const RunResult r = run("thresholds --source " + src.string() + " --s 0.5");
        CLI_CHECK(r.exit_code == 0, "thresholds exits 0");
        CLI_CHECK(std::abs(parse_value_after(r.out, "t_plus = ") - 0.440046) < 1e-4,
                  "t_plus value");
    }
    {
        const RunResult r = run("verify oneshot --family binning --a-size 4 --M 2 "
                                "--trials 5 --seed 7");
        CLI_CHECK(r.exit_code == 0, "oneshot verify passes");
        CLI_CHECK(r.out.find("verdict=PASS") != std::string::npos, "report lines present");
        CLI_CHECK(r.out.find("RESULT: PASS") != std::string::npos, "summary line");
    }
    {
        const RunResult r = run("verify sw --trials 3 --seed 2 --n 2 --M 2");
        CLI_CHECK(r.exit_code == 0, "sw verify passes");
    }
    {
        const RunResult r = run("verify hash --family gf2m --m 4 --l 2 --level universal2");
        CLI_CHECK(r.exit_code == 0, "hash verify passes");
        CLI_CHECK(r.out.find("3/15") != std::string::npos, "exact collision ratio printed");
    }
    {
        const RunResult r = run("multipath --m 4 --l 2 --message 0x5 --mask 0x3");
        CLI_CHECK(r.out.find("A=0x5 X=0x3 pieces=0x") != std::string::npos, "demo line");
        CLI_CHECK(r.out.find("decoded=0x5") != std::string::npos, "demo round trip");
    }
    {
        CLI_CHECK(run("multipath --m 8 --l 4 --exhaustive").exit_code == 0,
                  "exhaustive multipath");
    }
    {
        const RunResult r = run("measure --source " + src.string() +
                                " --variant plain --s 1 --relative-q 0.8333333333,0.1666666667");
        // the order-2 entropy relative to the optimizer equals the gallager value
        const double v = parse_value_after(r.out, " = ");
        CLI_CHECK(std::abs(v - 0.328504) < 1e-4, "relative-q measure, got " << v);
    }
    {
        // a custom family read from a table file
        const auto table = std::filesystem::temp_directory_path() / "ruq_cli_family.txt";
        std::ofstream(table) << "M=2 seeds=2\n0.5 1 2 1\n0.5 2 1 2\n";
        const RunResult r =
            run("verify hash --family custom --table " + table.string() + " --level universal2");
        CLI_CHECK(r.exit_code == 1, "two-seed mirror family is not universal, got "
                                        << r.exit_code);
        CLI_CHECK(r.out.find("verdict=FAIL") != std::string::npos, "failure verdict printed");
    }
    {
        // the thread cap is honored and echoed
        const std::string saved = g_cli;
        g_cli = "RUQ_THREADS=1 " + saved;
        const RunResult r = run("verify sw --trials 1 --seed 4 --n 2 --M 2");
        g_cli = saved;
        CLI_CHECK(r.exit_code == 0, "capped run passes");
        CLI_CHECK(r.out.find("threads=1") != std::string::npos, "thread cap echoed");
    }
    {
        // exit codes: usage (2) and input (3)
        CLI_CHECK(run("measure --source " + src.string() + " --variant bogus").exit_code == 2,
                  "unknown variant is a usage error");
        CLI_CHECK(run("nonsense-subcommand").exit_code == 2, "unknown subcommand");
        CLI_CHECK(run("measure --source /nonexistent.src --variant shannon").exit_code == 3,
                  "missing file is an input error");
        const auto bad = std::filesystem::temp_directory_path() / "ruq_cli_bad.src";
        std::ofstream(bad) << "0 0 0.5\n1 0 0.49\n";
        CLI_CHECK(run("measure --source " + bad.string() + " --variant shannon").exit_code == 3,
                  "mass deficit is an input error");
    }

    if (g_failures == 0) {
        std::cout << "cli tests: all passed\n";
        return 0;
    }
    std::cerr << "cli tests: " << g_failures << " failures\n";
    return 1;
}
