#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rsfactor/birkhoff.hpp"
#include "rsfactor/json_io.hpp"
#include "rsfactor/verify.hpp"

using namespace rsfactor;

namespace {

std::optional<std::pair<int, int>> parse_signature(const std::string& text) {
    if (text.empty()) return std::nullopt;
    int p = 0, q = 0;
    char sep = 0;
    std::istringstream in(text);
    if (!(in >> p >> sep >> q) || sep != ',' || !(in >> std::ws).eof())
        throw ConfigurationError("signature must be of the form p,q");
    return std::pair{p, q};
}

WeylElement parse_permutation(const std::string& text, int expected_n = -1) {
    std::vector<int> img;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        std::istringstream part(token);
        int v;
        while (part >> v) img.push_back(v - 1);
    }
    try {
        const WeylElement w = WeylElement::from_one_line(img);
        if (expected_n > 0 && w.degree() != expected_n)
            throw ConfigurationError("permutation length does not match the matrix size");
        return w;
    } catch (const InvalidInput& e) {
        throw ConfigurationError(e.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigurationError("cannot open output file " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

Json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigurationError("cannot open input file " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigurationError(std::string("malformed JSON: ") + e.what());
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RootsOptions {
    int rank = 0;
    std::string signature, out;
};

int cmd_roots(const RootsOptions& o) {
    const RootSystem rs = build_root_system(o.rank, parse_signature(o.signature));
    write_output(o.out, root_system_to_json(rs).dump(2));
    return 0;
}

struct WordOptions {
    int rank = 0;
    std::string signature, word, mode = "birkhoff", out;
};

int cmd_word(const WordOptions& o) {
    const RootSystem rs = build_root_system(o.rank, parse_signature(o.signature));
    const WeylElement w = parse_permutation(o.word, o.rank + 1);
    ReducedWordData word;
    if (o.mode == "birkhoff")
        word = reduced_word_for(rs, w);
    else if (o.mode == "bruhat")
        word = bruhat_word_for(rs, w);
    else
        throw ConfigurationError("mode must be birkhoff or bruhat");
    write_output(o.out, word_to_json(word).dump(2));
    return 0;
}

struct FactorOptions {
    std::string in, signature, mode = "birkhoff", out;
    double tol = kFactorTol;
};

Json birkhoff_to_json(const GroupElement& g, const BirkhoffFactors& f, double tol) {
    Json j;
    j["w"] = permutation_to_json(f.w);
    j["l"] = matrix_to_json(f.l);
    j["wrep"] = matrix_to_json(f.wrep);
    j["m"] = matrix_to_json(f.m);
    j["a"] = matrix_to_json(f.a);
    j["u"] = matrix_to_json(f.u);
    const double err = (f.product() - g.m).norm() / std::max(1.0, g.m.norm());
    if (err > tol) throw InvariantViolation("factor product failed to reproduce the input");
    j["reconstruction_error"] = err;
    return j;
}

Json rectangular_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_factor(const FactorOptions& o) {
    GroupElement g = matrix_from_json(read_json(o.in));
    if (const auto sig = parse_signature(o.signature)) {
        g.config = RealizationConfig::supq(sig->first, sig->second);
        if (g.config.n != g.m.rows())
            throw ConfigurationError("signature does not match the matrix size");
    }
    Json j;
    if (o.mode == "birkhoff") {
        j = birkhoff_to_json(g, birkhoff_factorize(g), o.tol);
    } else if (o.mode == "block") {
        const BlockFactors b = block_factorize(g);
        j["l_p"] = matrix_to_json(GroupElement{b.l_p, GroupTag::SL, g.config});
        j["g_k"] = matrix_to_json(GroupElement{b.g_k, GroupTag::SL, g.config});
        j["u_p"] = matrix_to_json(GroupElement{b.u_p, GroupTag::SL, g.config});
        j["Z"] = rectangular_to_json(b.Z);
        j["Z_opnorm"] = operator_norm(b.Z);
    } else if (o.mode == "refined") {
        const auto [b, inner] = refined_factorize(g);
        j["l_p"] = matrix_to_json(GroupElement{b.l_p, GroupTag::SL, g.config});
        j["u_p"] = matrix_to_json(GroupElement{b.u_p, GroupTag::SL, g.config});
        j["Z"] = rectangular_to_json(b.Z);
        j["Z_opnorm"] = operator_norm(b.Z);
        j["g_k"] = birkhoff_to_json(GroupElement{b.g_k, GroupTag::SL, g.config}, inner, o.tol);
    } else {
        throw ConfigurationError("mode must be birkhoff, block or refined");
    }
    write_output(o.out, j.dump(2));
    return 0;
}

struct RsfOptions {
    std::string dir, in, word, signature, out;
};

int cmd_rsf(const RsfOptions& o) {
    if (o.dir == "fwd") {
        const RSFCoordinates coords = coords_from_json(read_json(o.in));
        const RealizationConfig cfg{coords.word.n(), coords.word.signature};
        const GroupElement g = rsf_forward(cfg, coords);
        write_output(o.out, matrix_to_json(g).dump(2));
        return 0;
    }
    if (o.dir == "inv") {
        GroupElement g = matrix_from_json(read_json(o.in));
        if (const auto sig = parse_signature(o.signature)) {
            g.config = RealizationConfig::supq(sig->first, sig->second);
            if (g.config.n != g.m.rows())
                throw ConfigurationError("signature does not match the matrix size");
        }
        const int rank = g.config.n - 1;
        const WeylElement target = o.word.empty() ? WeylElement::identity(g.config.n)
                                                  : parse_permutation(o.word, g.config.n);
        const RootSystem rs = build_root_system(rank, g.config.signature);
        const ReducedWordData word = reduced_word_for(rs, target);
        const RSFCoordinates coords = rsf_inverse(g, word);
        write_output(o.out, coords_to_json(coords).dump(2));
        return 0;
    }
    throw ConfigurationError("--dir must be fwd or inv");
}

struct HaarCheckOptions {
    std::uint64_t seed = 7;
    long long samples = 100000;
    int rank = 0;
    std::string signature, out;
};

int cmd_haar_check(const HaarCheckOptions& o) {
    VerifyOptions opt;
    opt.seed = o.seed;
    opt.moment_samples = o.samples;
    if (o.rank > 0) {
        opt.rank = o.rank;
        opt.signature = parse_signature(o.signature);
    } else if (!o.signature.empty()) {
        const auto sig = parse_signature(o.signature);
        opt.rank = sig->first + sig->second - 1;
        opt.signature = sig;
    }
    const VerificationReport report = run_verification(opt);
    for (const auto& s : report.suites) {
        std::fprintf(stderr, "%-20s %s  max_error=%.3g  tol=%.3g  cases=%lld\n", s.name.c_str(),
                     s.pass ? "pass" : "FAIL", s.max_error, s.tolerance, s.cases);
    }
    write_output(o.out, report_to_json(report).dump(2));
    return report.all_pass() ? 0 : 1;
}

struct SampleOptions {
    std::string group = "su", what = "matrix", signature, out;
    int n = 2;
    long long count = 100;
    std::uint64_t seed = 1;
    double rmax = 0.9;
};

int cmd_sample(const SampleOptions& o) {
    std::ostringstream csv;
    std::mt19937_64 rng(o.seed);
    const auto sig = parse_signature(o.signature);
    if (o.group == "supq" && !sig) throw ConfigurationError("group supq requires --signature");
    if (o.group != "su" && o.group != "supq")
        throw ConfigurationError("group must be su or supq");
    const RealizationConfig cfg =
        o.group == "su" ? RealizationConfig::su(o.n)
                        : RealizationConfig::supq(sig->first, sig->second);

    if (o.what == "matrix") {
        for (int r = 0; r < cfg.n; ++r)
            for (int c = 0; c < cfg.n; ++c)
                csv << (r + c ? "," : "") << "re_" << r << c << ",im_" << r << c;
        csv << '\n';
        for (long long s = 0; s < o.count; ++s) {
            const GroupElement g = random_element(
                cfg, o.group == "su" ? GroupTag::SU : GroupTag::SUpq, rng);
            for (int r = 0; r < cfg.n; ++r)
                for (int c = 0; c < cfg.n; ++c)
                    csv << (r + c ? "," : "") << format_double(g.m(r, c).real()) << ','
                        << format_double(g.m(r, c).imag());
            csv << '\n';
        }
    } else if (o.what == "coords") {
        const RootSystem rs = build_root_system(cfg.n - 1, cfg.signature);
        const ReducedWordData word = reduced_word_for(rs, WeylElement::identity(cfg.n));
        const DensitySpec spec = make_density_spec(word);
        const bool weighted = cfg.signature.has_value();
        for (int j = 0; j < word.length(); ++j)
            csv << (j ? "," : "") << "re_zeta" << j + 1 << ",im_zeta" << j + 1;
        for (int i = 0; i < word.rank; ++i) csv << ",theta" << i + 1;
        if (weighted) csv << ",weight";
        csv << '\n';
        for (long long s = 0; s < o.count; ++s) {
            RSFCoordinates c;
            double weight = 1.0;
            if (weighted) {
                auto drawn = sample_truncated(spec, rng, o.rmax);
                c = std::move(drawn.first);
                weight = drawn.second;
            } else {
                c = sample_compact(spec, rng);
            }
            for (int j = 0; j < word.length(); ++j)
                csv << (j ? "," : "") << format_double(c.zetas(j).real()) << ','
                    << format_double(c.zetas(j).imag());
            for (int i = 0; i < word.rank; ++i) csv << ',' << format_double(c.torus_angles(i));
            if (weighted) csv << ',' << format_double(weight);
            csv << '\n';
        }
    } else {
        throw ConfigurationError("--what must be matrix or coords");
    }
    write_output(o.out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birkhoff and root-subgroup factorization for SU(n) and SU(p,q)"};
    app.require_subcommand(1);

    RootsOptions roots;
    auto* roots_cmd = app.add_subcommand("roots", "print the root system table");
    roots_cmd->add_option("--rank", roots.rank, "rank of the type-A root system")->required();
    roots_cmd->add_option("--signature", roots.signature, "signature p,q");
    roots_cmd->add_option("--out", roots.out, "output path (default stdout)");

    WordOptions word;
    auto* word_cmd = app.add_subcommand("word", "reduced word data for a Weyl element");
    word_cmd->add_option("--rank", word.rank)->required();
    word_cmd->add_option("--signature", word.signature);
    word_cmd->add_option("--word", word.word, "target permutation, one-line notation")->required();
    word_cmd->add_option("--mode", word.mode, "birkhoff (default) or bruhat");
    word_cmd->add_option("--out", word.out);

    FactorOptions factor;
    auto* factor_cmd = app.add_subcommand("factor", "factor a matrix from JSON");
    factor_cmd->add_option("--in", factor.in, "matrix JSON path")->required();
    factor_cmd->add_option("--signature", factor.signature);
    factor_cmd->add_option("--mode", factor.mode, "birkhoff (default), block or refined");
    factor_cmd->add_option("--tol", factor.tol, "reconstruction tolerance");
    factor_cmd->add_option("--out", factor.out);

    RsfOptions rsf;
    auto* rsf_cmd = app.add_subcommand("rsf", "root-subgroup coordinates");
    rsf_cmd->add_option("--dir", rsf.dir, "fwd or inv")->required();
    rsf_cmd->add_option("--in", rsf.in)->required();
    rsf_cmd->add_option("--word", rsf.word, "target permutation for inv");
    rsf_cmd->add_option("--signature", rsf.signature);
    rsf_cmd->add_option("--out", rsf.out);

    HaarCheckOptions haar;
    auto* haar_cmd = app.add_subcommand("haar-check", "run the verification suites");
    haar_cmd->add_option("--seed", haar.seed);
    haar_cmd->add_option("--N", haar.samples, "moment sample count");
    haar_cmd->add_option("--rank", haar.rank, "narrow group suites to this rank");
    haar_cmd->add_option("--signature", haar.signature);
    haar_cmd->add_option("--out", haar.out, "report JSON path (default stdout)");

    SampleOptions sample;
    auto* sample_cmd = app.add_subcommand("sample", "CSV samples of matrices or coordinates");
    sample_cmd->add_option("--group", sample.group, "su or supq");
    sample_cmd->add_option("--n", sample.n, "matrix size for su");
    sample_cmd->add_option("--signature", sample.signature);
    sample_cmd->add_option("--N", sample.count, "number of samples");
    sample_cmd->add_option("--seed", sample.seed);
    sample_cmd->add_option("--what", sample.what, "matrix (default) or coords");
    sample_cmd->add_option("--rmax", sample.rmax, "truncation radius for supq coords");
    sample_cmd->add_option("--out", sample.out);

    try {
        app.parse(argc, argv);
        if (roots_cmd->parsed()) return cmd_roots(roots);
        if (word_cmd->parsed()) return cmd_word(word);
        if (factor_cmd->parsed()) return cmd_factor(factor);
        if (rsf_cmd->parsed()) return cmd_rsf(rsf);
        if (haar_cmd->parsed()) return cmd_haar_check(haar);
        if (sample_cmd->parsed()) return cmd_sample(sample);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const DomainViolation& e) {
        std::cerr << "domain violation: " << e.what() << '\n';
        return 3;
    } catch (const StratumBoundary& e) {
        std::cerr << "stratum boundary: " << e.what() << '\n';
        return 3;
    } catch (const StratumError& e) {
        std::cerr << "stratum error: " << e.what() << '\n';
        return 3;
    } catch (const NumericalWarning& e) {
        std::cerr << "numerical warning: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
