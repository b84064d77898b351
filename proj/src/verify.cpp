#include "rsfactor/verify.hpp"

#include <cmath>
#include <random>

#include "rsfactor/birkhoff.hpp"
#include "rsfactor/parallel.hpp"

namespace rsfactor {

namespace {

struct GroupSpec {
    int rank;
    std::optional<std::pair<int, int>> signature;

    std::string name() const {
        if (!signature) return "SU(" + std::to_string(rank + 1) + ")";
        return "SU(" + std::to_string(signature->first) + "," +
               std::to_string(signature->second) + ")";
    }
    RealizationConfig config() const {
        return signature ? RealizationConfig::supq(signature->first, signature->second)
                         : RealizationConfig::su(rank + 1);
    }
};

// The desk-scale group matrix; a set rank/signature narrows it.
std::vector<GroupSpec> group_list(const VerifyOptions& opt) {
    if (opt.rank) return {GroupSpec{*opt.rank, opt.signature}};
    return {GroupSpec{1, std::nullopt},   GroupSpec{2, std::nullopt},
            GroupSpec{3, std::nullopt},   GroupSpec{1, std::pair{1, 1}},
            GroupSpec{2, std::pair{2, 1}}, GroupSpec{2, std::pair{1, 2}},
            GroupSpec{3, std::pair{2, 2}}};
}

std::vector<GroupSpec> signature_list(const VerifyOptions& opt) {
    std::vector<GroupSpec> out;
    for (const auto& g : group_list(opt))
        if (g.signature) out.push_back(g);
    return out;
}

cplx random_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return std::polar(radius * std::sqrt(unif(rng)), 2.0 * M_PI * unif(rng) - M_PI);
}

RSFCoordinates random_coords(const ReducedWordData& word, std::mt19937_64& rng,
                             double compact_radius, double noncompact_radius) {
    RSFCoordinates c;
    c.word = word;
    c.zetas = Eigen::VectorXcd(word.length());
    for (int j = 0; j < word.length(); ++j)
        c.zetas(j) = random_disk(rng, word.taus[j].kind == RootKind::Noncompact
                                          ? noncompact_radius
                                          : compact_radius);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    c.torus_angles = Eigen::VectorXd(word.rank);
    for (int i = 0; i < word.rank; ++i) c.torus_angles(i) = ang(rng);
    return c;
}

double coord_err(const RSFCoordinates& a, const RSFCoordinates& b) {
    double err = 0.0;
    for (int j = 0; j < a.word.length(); ++j)
        err = std::max(err, std::abs(a.zetas(j) - b.zetas(j)) / (1.0 + std::abs(b.zetas(j))));
    for (int i = 0; i < a.word.rank; ++i) {
        const double d = std::remainder(a.torus_angles(i) - b.torus_angles(i), 2.0 * M_PI);
        err = std::max(err, std::abs(d));
    }
    return err;
}

double mat_rel_err(const Mat& a, const Mat& b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

// Words of all Weyl elements of the group (restricted to W(K) with a
// signature set).
std::vector<ReducedWordData> words_of(const GroupSpec& gs) {
    const RootSystem rs = build_root_system(gs.rank, gs.signature);
    std::vector<ReducedWordData> out;
    for (const auto& w : all_weyl_elements(gs.rank)) {
        if (gs.signature && !is_in_wk(rs, w)) continue;
        out.push_back(reduced_word_for(rs, w));
    }
    return out;
}

}  // namespace

bool VerificationReport::all_pass() const {
    for (const auto& s : suites)
        if (!s.pass) return false;
    return true;
}

const SuiteResult* VerificationReport::find(const std::string& name) const {
    for (const auto& s : suites)
        if (s.name == name) return &s;
    return nullptr;
}

SuiteResult suite_delta_identity() {
    SuiteResult res{"delta-identity", true, 0.0, 0.0, 0, 0,
                    "exact coroot identity over all words, ranks 1-3"};
    for (int rank = 1; rank <= 3; ++rank) {
        const RootSystem rs = build_root_system(rank);
        for (const auto& w : all_weyl_elements(rank)) {
            for (const auto& word : all_reduced_words(rs, w)) {
                for (const auto& [lhs, rhs] : verify_delta_identity(word)) {
                    ++res.cases;
                    if (lhs != rhs) {
                        res.pass = false;
                        res.max_error = std::max(res.max_error,
                                                 static_cast<double>(std::labs(lhs - rhs)));
                    }
                }
            }
            for (const auto& word : all_bruhat_words(rs, w)) {
                for (const auto& [lhs, rhs] : verify_delta_identity(word)) {
                    ++res.cases;
                    if (lhs != rhs) {
                        res.pass = false;
                        res.max_error = std::max(res.max_error,
                                                 static_cast<double>(std::labs(lhs - rhs)));
                    }
                }
            }
        }
    }
    return res;
}

namespace {

// Shared loop for the round-trip and a-product suites.
void round_trip_scan(const VerifyOptions& opt, SuiteResult& trip, SuiteResult& aprod) {
    std::mt19937_64 rng(mix_seed(opt.seed, 101));
    for (const auto& gs : group_list(opt)) {
        const RealizationConfig cfg = gs.config();
        for (const auto& word : words_of(gs)) {
            const WordRealization wr(word);
            for (int rep = 0; rep < 100; ++rep) {
                const RSFCoordinates c = random_coords(word, rng, 2.0, 0.9);
                const GroupElement g = rsf_forward(cfg, wr, c);
                const RSFCoordinates back = rsf_inverse(g, wr);
                const GroupElement g2 = rsf_forward(cfg, wr, back);
                trip.max_error = std::max(trip.max_error, coord_err(back, c));
                trip.max_error = std::max(trip.max_error, mat_rel_err(g2.m, g.m));
                ++trip.cases;

                const auto f = birkhoff_factorize(g);
                aprod.max_error =
                    std::max(aprod.max_error, mat_rel_err(a_product(c).m, f.a.m));
                ++aprod.cases;
                if (f.w != word.target) {
                    trip.pass = false;
                    trip.note = "detected component disagreed with the word target";
                }
            }
        }
    }
    trip.pass = trip.pass && trip.max_error < trip.tolerance;
    aprod.pass = aprod.max_error < aprod.tolerance;
}

}  // namespace

SuiteResult suite_stratum_law(const VerifyOptions& opt) {
    SuiteResult res{"stratum-law", true, 0.0, 0.0, 0, 0,
                    "detected Weyl element lies in W(K) for SU(p,q) samples"};
    std::vector<GroupSpec> groups;
    if (opt.rank) {
        if (opt.signature) groups.push_back(GroupSpec{*opt.rank, opt.signature});
    } else {
        groups = {GroupSpec{2, std::pair{2, 1}}, GroupSpec{3, std::pair{2, 2}}};
    }
    std::mt19937_64 rng(mix_seed(opt.seed, 202));
    for (const auto& gs : groups) {
        const RealizationConfig cfg = gs.config();
        const RootSystem rs = build_root_system(gs.rank, gs.signature);
        long long done = 0;
        while (done < 1000) {
            const GroupElement g = random_element(cfg, GroupTag::SUpq, rng);
            try {
                const auto f = birkhoff_factorize(g);
                ++done;
                ++res.cases;
                if (!is_in_wk(rs, f.w)) {
                    res.pass = false;
                    res.max_error += 1.0;
                }
            } catch (const StratumBoundary&) {
                ++res.resamples;
            }
        }
    }
    return res;
}

SuiteResult suite_bounded_domain(const VerifyOptions& opt) {
    SuiteResult res{"bounded-domain", true, 0.0, 1.0, 0, 0,
                    "operator norm of the block coordinate stays below one"};
    std::mt19937_64 rng(mix_seed(opt.seed, 303));
    for (const auto& gs : signature_list(opt)) {
        const RealizationConfig cfg = gs.config();
        for (int rep = 0; rep < 1000; ++rep) {
            const GroupElement g = random_element(cfg, GroupTag::SUpq, rng);
            const BlockFactors blocks = block_factorize(g);
            const double zn = operator_norm(blocks.Z);
            res.max_error = std::max(res.max_error, zn);
            ++res.cases;
            if (!(zn < 1.0)) res.pass = false;
        }
    }

    // Boundary ray: q(zeta) with zeta -> 1^- pushes the norm towards but
    // never onto 1, both in SU(1,1) and embedded in SU(2,1).
    const RealizationConfig cfg11 = RealizationConfig::supq(1, 1);
    const RootSystem rs21 = build_root_system(2, std::pair{2, 1});
    const RealizationConfig cfg21 = RealizationConfig::supq(2, 1);
    const ReducedWordData word21 = reduced_word_for(rs21, WeylElement::simple_reflection(3, 0));
    const WordRealization wr21(word21);
    double prev11 = 0.0, prev21 = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const double zeta = 1.0 - std::pow(10.0, -k);
        const GroupElement g11{q_factor(zeta), GroupTag::SUpq, cfg11};
        const double n11 = operator_norm(block_factorize(g11).Z);

        RSFCoordinates c{word21, Eigen::VectorXcd::Zero(2), Eigen::VectorXd::Zero(2)};
        c.zetas(0) = zeta;
        const GroupElement g21 = rsf_forward(cfg21, wr21, c);
        const double n21 = operator_norm(block_factorize(g21).Z);

        res.cases += 2;
        if (!(n11 < 1.0 && n21 < 1.0 && n11 > prev11 && n21 > prev21)) res.pass = false;
        res.max_error = std::max(res.max_error, std::max(n11, n21));
        prev11 = n11;
        prev21 = n21;
    }
    return res;
}

SuiteResult suite_nilpotent_jacobian(const VerifyOptions& opt) {
    SuiteResult res{"nilpotent-jacobian", true, 0.0, 1e-4, 0, 0,
                    "finite-difference det of zeta -> x against the product formula"};
    std::vector<GroupSpec> groups;
    if (opt.rank) {
        groups.push_back(GroupSpec{*opt.rank, opt.signature});
    } else {
        groups = {GroupSpec{2, std::nullopt}, GroupSpec{3, std::nullopt},
                  GroupSpec{2, std::pair{2, 1}}, GroupSpec{2, std::pair{1, 2}},
                  GroupSpec{3, std::pair{2, 2}}};
    }
    std::mt19937_64 rng(mix_seed(opt.seed, 404));
    for (const auto& gs : groups) {
        for (const auto& word : words_of(gs)) {
            if (word.length() == 0) continue;
            for (int rep = 0; rep < 100; ++rep) {
                const RSFCoordinates c = random_coords(word, rng, 1.5, 0.5);
                res.max_error = std::max(res.max_error, nilpotent_jacobian_test(c, 1e-5));
                ++res.cases;
            }
        }
    }
    res.pass = res.max_error < res.tolerance;
    return res;
}

SuiteResult suite_invariance(const VerifyOptions& opt) {
    SuiteResult res{"invariance", true, 0.0, 1e-4, 0, 0,
                    "density transport under left translation, w = 1 words"};
    std::mt19937_64 rng(mix_seed(opt.seed, 505));
    for (const auto& gs : group_list(opt)) {
        const RealizationConfig cfg = gs.config();
        const RootSystem rs = build_root_system(gs.rank, gs.signature);
        const ReducedWordData word = reduced_word_for(rs, WeylElement::identity(gs.rank + 1));
        long long done = 0;
        while (done < 50) {
            const GroupElement g0 =
                random_element(cfg, gs.signature ? GroupTag::SUpq : GroupTag::SU, rng);
            const RSFCoordinates c = random_coords(word, rng, 1.0, 0.5);
            try {
                res.max_error = std::max(res.max_error, invariance_jacobian_test(g0, c, 1e-5));
                ++done;
                ++res.cases;
            } catch (const StratumError&) {
                ++res.resamples;
            } catch (const StratumBoundary&) {
                ++res.resamples;
            }
        }
    }
    res.pass = res.max_error < res.tolerance;
    return res;
}

SuiteResult suite_invariance_closed_form(const VerifyOptions& opt) {
    SuiteResult res{"invariance-moebius", true, 0.0, 1e-8, 0, 0,
                    "rank-one transport against the closed Moebius form"};
    std::mt19937_64 rng(mix_seed(opt.seed, 606));

    // SU(2): zeta' = (beta + conj(alpha) zeta) / (alpha - conj(beta) zeta).
    {
        const RealizationConfig cfg = RealizationConfig::su(2);
        const RootSystem rs = build_root_system(1);
        const ReducedWordData word = reduced_word_for(rs, WeylElement::identity(2));
        const auto spec = make_density_spec(word);
        long long done = 0;
        while (done < 50) {
            const GroupElement g0 = random_element(cfg, GroupTag::SU, rng);
            RSFCoordinates c = random_coords(word, rng, 1.5, 0.5);
            const cplx alpha = g0.m(0, 0), beta = g0.m(1, 0);
            const cplx denom = alpha - std::conj(beta) * c.zetas(0);
            if (std::abs(denom) < 0.2) {
                ++res.resamples;
                continue;
            }
            const cplx moebius = (beta + std::conj(alpha) * c.zetas(0)) / denom;
            const RSFCoordinates back =
                rsf_inverse(GroupElement{g0.m * rsf_forward(cfg, c).m, GroupTag::SU, cfg}, word);
            res.max_error = std::max(res.max_error, std::abs(back.zetas(0) - moebius));

            RSFCoordinates cm = c;
            cm.zetas(0) = back.zetas(0);
            const double lhs = density(spec, c);
            const double rhs = density(spec, cm) * std::pow(std::abs(denom), -4.0);
            res.max_error = std::max(res.max_error, std::abs(lhs - rhs) / lhs);
            ++done;
            ++res.cases;
        }
    }

    // SU(1,1): zeta' = (beta + conj(alpha) zeta) / (alpha + conj(beta) zeta).
    {
        const RealizationConfig cfg = RealizationConfig::supq(1, 1);
        const RootSystem rs = build_root_system(1, std::pair{1, 1});
        const ReducedWordData word = reduced_word_for(rs, WeylElement::identity(2));
        const auto spec = make_density_spec(word);
        long long done = 0;
        while (done < 50) {
            const GroupElement g0 = random_element(cfg, GroupTag::SUpq, rng);
            if (g0.m.norm() > 2.0) {
                ++res.resamples;
                continue;
            }
            RSFCoordinates c = random_coords(word, rng, 1.5, 0.5);
            const cplx alpha = g0.m(0, 0), beta = g0.m(1, 0);
            const cplx denom = alpha + std::conj(beta) * c.zetas(0);
            const cplx moebius = (beta + std::conj(alpha) * c.zetas(0)) / denom;
            const RSFCoordinates back = rsf_inverse(
                GroupElement{g0.m * rsf_forward(cfg, c).m, GroupTag::SUpq, cfg}, word);
            res.max_error = std::max(res.max_error, std::abs(back.zetas(0) - moebius));

            RSFCoordinates cm = c;
            cm.zetas(0) = back.zetas(0);
            const double lhs = density(spec, c);
            const double rhs = density(spec, cm) * std::pow(std::abs(denom), -4.0);
            res.max_error = std::max(res.max_error, std::abs(lhs - rhs) / lhs);
            ++done;
            ++res.cases;
        }
    }
    res.pass = res.max_error < res.tolerance;
    return res;
}

SuiteResult suite_moments(const VerifyOptions& opt) {
    SuiteResult res{"haar-moments", true, 0.0, 3.0, 0, 0,
                    "|z| of E|tr g|^2 and E|g11|^2 against theory and the QR oracle"};
    for (int n : {2, 3}) {
        const MomentReport rep =
            haar_moment_compare(n, opt.moment_samples, mix_seed(opt.seed, 7000 + n));
        for (double z : {rep.z_product_tr2, rep.z_product_g11, rep.z_qr_tr2, rep.z_qr_g11,
                         rep.z_diff_tr2, rep.z_diff_g11})
            res.max_error = std::max(res.max_error, std::abs(z));
        res.cases += 6;
    }
    res.pass = res.max_error < res.tolerance;
    return res;
}

SuiteResult suite_two_letter_golden() {
    SuiteResult res{"two-letter-golden", true, 0.0, 1e-12, 0, 0,
                    "Birkhoff l factor of two-letter products, entrywise"};
    const std::vector<std::optional<std::pair<int, int>>> sigs = {std::nullopt, std::pair{2, 1},
                                                                  std::pair{1, 2}};
    // Fixed, deterministic coordinate pairs; scaled into the disk at
    // noncompact positions.
    const std::vector<std::pair<cplx, cplx>> grid = {
        {cplx(0.6, 0.0), cplx(0.0, 0.7)},   {cplx(-1.1, 0.4), cplx(0.5, -0.3)},
        {cplx(0.2, -0.8), cplx(-0.6, 0.6)}, {cplx(1.4, 0.9), cplx(0.8, 0.1)},
    };
    for (const auto& sig : sigs) {
        const RootSystem rs = build_root_system(2, sig);
        for (const auto& w : all_weyl_elements(2)) {
            if (sig && !is_in_wk(rs, w)) continue;
            const ReducedWordData word = reduced_word_for(rs, w);
            if (word.length() < 2) continue;
            const WordRealization wr(word);
            const RealizationConfig cfg{3, sig};
            for (auto [z1, z2] : grid) {
                if (word.taus[0].kind == RootKind::Noncompact) z1 *= 0.5;
                if (word.taus[1].kind == RootKind::Noncompact) z2 *= 0.5;
                const Eigen::Matrix2cd g1 =
                    word.taus[0].kind == RootKind::Noncompact ? q_factor(z1) : k_factor(z1);
                const Eigen::Matrix2cd g2 =
                    word.taus[1].kind == RootKind::Noncompact ? q_factor(z2) : k_factor(z2);
                const Mat g = wr.embed(1, g2) * wr.embed(0, g1);
                const auto f = birkhoff_factorize(GroupElement{g, GroupTag::SL, cfg});
                const double a2 = word.taus[1].kind == RootKind::Noncompact ? a_minus(z2)
                                                                            : a_plus(z2);
                const int pairing = Root::pairing(word.taus[0], word.taus[1]);
                const Mat arg =
                    z2 * wr.f_matrix(1) + z1 * std::pow(a2, -pairing) * wr.f_matrix(0);
                const double err = (f.l.m - nilpotent_exp(arg)).cwiseAbs().maxCoeff();
                res.max_error = std::max(res.max_error, err);
                ++res.cases;
                if (!f.w.is_identity()) res.pass = false;
            }
        }
    }
    res.pass = res.pass && res.max_error < res.tolerance;
    return res;
}

VerificationReport run_verification(const VerifyOptions& opt) {
    VerificationReport report;
    report.options = opt;
    report.suites.push_back(suite_delta_identity());

    // Round-trip and a-product share their samples.
    SuiteResult trip{"round-trip", true, 0.0, kRoundTripTol, 0, 0,
                     "inverse(forward) and forward(inverse), 100 draws per word"};
    SuiteResult aprod{"a-product", true, 0.0, 1e-10, 0, 0,
                      "closed-form a against the Birkhoff diagonal"};
    round_trip_scan(opt, trip, aprod);
    report.suites.push_back(std::move(trip));
    report.suites.push_back(std::move(aprod));

    report.suites.push_back(suite_stratum_law(opt));
    report.suites.push_back(suite_bounded_domain(opt));
    report.suites.push_back(suite_nilpotent_jacobian(opt));
    report.suites.push_back(suite_invariance(opt));
    report.suites.push_back(suite_invariance_closed_form(opt));
    report.suites.push_back(suite_moments(opt));
    report.suites.push_back(suite_two_letter_golden());
    return report;
}

Json report_to_json(const VerificationReport& report) {
    Json j;
    j["seed"] = report.options.seed;
    j["moment_samples"] = report.options.moment_samples;
    if (report.options.rank)
        j["rank"] = *report.options.rank;
    else
        j["rank"] = nullptr;
    if (report.options.signature)
        j["signature"] = {report.options.signature->first, report.options.signature->second};
    else
        j["signature"] = nullptr;
    Json suites = Json::array();
    for (const auto& s : report.suites) {
        Json e;
        e["name"] = s.name;
        e["pass"] = s.pass;
        e["max_error"] = s.max_error;
        e["tolerance"] = s.tolerance;
        e["cases"] = s.cases;
        e["resamples"] = s.resamples;
        e["note"] = s.note;
        suites.push_back(std::move(e));
    }
    j["suites"] = std::move(suites);
    j["all_pass"] = report.all_pass();
    return j;
}

}  // namespace rsfactor
