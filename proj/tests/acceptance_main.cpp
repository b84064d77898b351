// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one pass/fail line per criterion.  The CLI binary
// path (for the determinism criterion) is passed with --cli.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rsfactor/verify.hpp"

using namespace rsfactor;

namespace {

struct Line {
    int index;
    bool pass;
    std::string text;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const SuiteResult& suite(const VerificationReport& rep, const std::string& name) {
    const SuiteResult* s = rep.find(name);
    if (!s) throw std::runtime_error("missing suite " + name);
    return *s;
}

std::string describe(const SuiteResult& s) {
    char buf[160];
    if (s.tolerance == 0.0)
        std::snprintf(buf, sizeof(buf), "%s (cases=%lld, exact)", s.name.c_str(), s.cases);
    else
        std::snprintf(buf, sizeof(buf), "%s (max=%.3g, tol=%.3g, cases=%lld)", s.name.c_str(),
                      s.max_error, s.tolerance, s.cases);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    std::uint64_t seed = 7;
    long long moment_samples = 100000;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) cli_path = argv[++i];
        else if (arg == "--seed" && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
        else if (arg == "--N" && i + 1 < argc) moment_samples = std::atoll(argv[++i]);
    }

    VerifyOptions opt;
    opt.seed = seed;
    opt.moment_samples = moment_samples;

    std::vector<Line> lines;
    try {
        const VerificationReport rep = run_verification(opt);

        const auto& delta = suite(rep, "delta-identity");
        lines.push_back({1, delta.pass, describe(delta)});
        const auto& trip = suite(rep, "round-trip");
        lines.push_back({2, trip.pass, describe(trip)});
        const auto& aprod = suite(rep, "a-product");
        lines.push_back({3, aprod.pass, describe(aprod)});
        const auto& stratum = suite(rep, "stratum-law");
        lines.push_back(
            {4, stratum.pass, describe(stratum) + " resamples=" + std::to_string(stratum.resamples)});
        const auto& domain = suite(rep, "bounded-domain");
        lines.push_back({5, domain.pass, describe(domain)});
        const auto& nil = suite(rep, "nilpotent-jacobian");
        lines.push_back({6, nil.pass, describe(nil)});
        const auto& inv = suite(rep, "invariance");
        const auto& moeb = suite(rep, "invariance-moebius");
        lines.push_back({7, inv.pass && moeb.pass, describe(inv) + " + " + describe(moeb)});
        const auto& mom = suite(rep, "haar-moments");
        lines.push_back({8, mom.pass, describe(mom)});
        const auto& golden = suite(rep, "two-letter-golden");
        lines.push_back({9, golden.pass, describe(golden)});
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 1;
    }

    // Criterion 10: the CLI runs the same suites, exits 0, and produces a
    // bit-identical report for a repeated seed.
    if (cli_path.empty()) {
        lines.push_back({10, false, "haar-check CLI (no --cli path given)"});
    } else {
        const std::string r1 = "/tmp/rsfactor_acceptance_report1.json";
        const std::string r2 = "/tmp/rsfactor_acceptance_report2.json";
        const std::string base = cli_path + " haar-check --seed " + std::to_string(seed) +
                                 " --N " + std::to_string(moment_samples);
        const int c1 = std::system((base + " --out " + r1 + " 2>/dev/null").c_str());
        const int c2 = std::system((base + " --out " + r2 + " 2>/dev/null").c_str());
        const std::string body1 = read_file(r1), body2 = read_file(r2);
        const bool pass = WEXITSTATUS(c1) == 0 && WEXITSTATUS(c2) == 0 && !body1.empty() &&
                          body1 == body2;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "haar-check CLI (exit=%d,%d, reports %s, %zu bytes)", WEXITSTATUS(c1),
                      WEXITSTATUS(c2), body1 == body2 ? "identical" : "DIFFER", body1.size());
        lines.push_back({10, pass, buf});
    }

    int passed = 0;
    for (const auto& line : lines) {
        std::printf("[%2d] %s  %s\n", line.index, line.pass ? "PASS" : "FAIL", line.text.c_str());
        if (line.pass) ++passed;
    }
    std::printf("RESULT: %d/%zu criteria passed\n", passed, lines.size());
    return passed == static_cast<int>(lines.size()) ? 0 : 1;
}
