#include "doctest.h"

#include <cmath>
#include <random>

#include "rsfactor/root_subgroup.hpp"

using namespace rsfactor;

namespace {

double mat_err(const Mat& a, const Mat& b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

RealizationConfig config_for(const ReducedWordData& word) {
    return word.signature ? RealizationConfig::supq(word.signature->first, word.signature->second)
                          : RealizationConfig::su(word.n());
}

// Uniform draw from the disk of the given radius.
cplx random_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double r = radius * std::sqrt(unif(rng));
    const double phi = 2.0 * M_PI * unif(rng) - M_PI;
    return std::polar(r, phi);
}

RSFCoordinates random_coords(const ReducedWordData& word, std::mt19937_64& rng,
                             double compact_radius = 2.0, double noncompact_radius = 0.9) {
    RSFCoordinates c;
    c.word = word;
    c.zetas = Eigen::VectorXcd(word.length());
    for (int j = 0; j < word.length(); ++j) {
        const double radius =
            word.taus[j].kind == RootKind::Noncompact ? noncompact_radius : compact_radius;
        c.zetas(j) = random_disk(rng, radius);
    }
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    c.torus_angles = Eigen::VectorXd(word.rank);
    for (int i = 0; i < word.rank; ++i) c.torus_angles(i) = ang(rng);
    return c;
}

// Test oracle: invert the forward map by a damped Gauss-Newton solve on the
// flattened real coordinates, with a finite-difference Jacobian.  Shares no
// code with the peel-based inverse.
struct NewtonOracle {
    const RealizationConfig& cfg;
    const WordRealization& wr;
    const Mat target;

    Eigen::VectorXd residual(const Eigen::VectorXd& v) const {
        RSFCoordinates c;
        c.word = wr.word();
        const int len = wr.word().length();
        c.zetas = Eigen::VectorXcd(len);
        for (int j = 0; j < len; ++j) c.zetas(j) = cplx(v(2 * j), v(2 * j + 1));
        c.torus_angles = v.tail(wr.word().rank);
        const Mat diff = rsf_forward(cfg, wr, c).m - target;
        Eigen::VectorXd r(2 * diff.size());
        int k = 0;
        for (int a = 0; a < diff.rows(); ++a)
            for (int b = 0; b < diff.cols(); ++b) {
                r(k++) = diff(a, b).real();
                r(k++) = diff(a, b).imag();
            }
        return r;
    }

    // Returns the solved coordinate vector; requires convergence.
    Eigen::VectorXd solve(Eigen::VectorXd v) const {
        const double h = 1e-6;
        double lambda = 1e-4;
        for (int iter = 0; iter < 80; ++iter) {
            const Eigen::VectorXd r = residual(v);
            if (r.norm() < 1e-11) return v;
            Eigen::MatrixXd jac(r.size(), v.size());
            for (int c = 0; c < v.size(); ++c) {
                Eigen::VectorXd plus = v, minus = v;
                plus(c) += h;
                minus(c) -= h;
                jac.col(c) = (residual(plus) - residual(minus)) / (2.0 * h);
            }
            const Eigen::MatrixXd jtj =
                jac.transpose() * jac +
                lambda * Eigen::MatrixXd::Identity(v.size(), v.size());
            const Eigen::VectorXd step = jtj.ldlt().solve(-jac.transpose() * r);
            // Damping: halve the step until the residual decreases; a trial
            // outside the disk counts as no decrease.
            double scale = 1.0;
            for (int back = 0; back < 30; ++back) {
                const Eigen::VectorXd trial = v + scale * step;
                try {
                    if (residual(trial).norm() < r.norm()) {
                        v = trial;
                        break;
                    }
                } catch (const DomainViolation&) {
                }
                scale *= 0.5;
            }
            lambda = std::max(lambda * 0.5, 1e-12);
        }
        REQUIRE(residual(v).norm() < 1e-9);
        return v;
    }
};

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

}  // namespace

TEST_SUITE("root_subgroup") {

TEST_CASE("zero coordinates give the Weyl representative") {
    const auto rs = build_root_system(2);
    const auto cfg = RealizationConfig::su(3);
    for (const auto& w : all_weyl_elements(2)) {
        const auto word = reduced_word_for(rs, w);
        RSFCoordinates c{word, Eigen::VectorXcd::Zero(word.length()),
                         Eigen::VectorXd::Zero(2)};
        const auto g = rsf_forward(cfg, c);
        CHECK(mat_err(g.m, representative_of(3, w)) < 1e-14);
        CHECK(membership_error(g) < 1e-13);
        // Round trip of the representative itself.
        const auto back = rsf_inverse(g, word);
        CHECK(back.zetas.norm() < 1e-12);
        CHECK(back.torus_angles.norm() < 1e-12);
    }
}

TEST_CASE("rank one: the Birkhoff l entry is zeta itself") {
    const auto rs = build_root_system(1);
    const auto cfg = RealizationConfig::su(2);
    const auto word = reduced_word_for(rs, WeylElement::identity(2));
    RSFCoordinates c{word, Eigen::VectorXcd(1), Eigen::VectorXd(1)};
    c.zetas(0) = cplx(0.8, -1.3);
    c.torus_angles(0) = 0.7;
    const auto g = rsf_forward(cfg, c);
    // g = k(zeta) t.
    const Mat expect = k_factor(c.zetas(0)) * torus_matrix(2, c.torus_angles);
    CHECK(mat_err(g.m, expect) < 1e-14);
    const auto f = birkhoff_factorize(g);
    CHECK(f.w.is_identity());
    CHECK(std::abs(f.l.m(1, 0) - c.zetas(0)) < 1e-13);
    // The torus factor of the factorization is exactly t.
    CHECK(mat_err(f.m.m, torus_matrix(2, c.torus_angles)) < 1e-13);
}

TEST_CASE("two-letter l factor matches the closed form") {
    // l = exp(zeta2 f_tau2 + zeta1 a(zeta2)^{-tau1(h_tau2)} f_tau1) for the
    // product of the first two letters of any word, compact or noncompact.
    std::vector<std::optional<std::pair<int, int>>> sigs = {std::nullopt, std::pair{2, 1},
                                                            std::pair{1, 2}};
    std::mt19937_64 rng(2024);
    for (const auto& sig : sigs) {
        const auto rs = build_root_system(2, sig);
        for (const auto& w : all_weyl_elements(2)) {
            if (sig && !is_in_wk(rs, w)) continue;
            const auto word = reduced_word_for(rs, w);
            if (word.length() < 2) continue;
            const WordRealization wr(word);
            for (int rep = 0; rep < 5; ++rep) {
                const cplx z1 = word.taus[0].kind == RootKind::Noncompact ? random_disk(rng, 0.9)
                                                                          : random_disk(rng, 2.0);
                const cplx z2 = word.taus[1].kind == RootKind::Noncompact ? random_disk(rng, 0.9)
                                                                          : random_disk(rng, 2.0);
                const Eigen::Matrix2cd g1 =
                    word.taus[0].kind == RootKind::Noncompact ? q_factor(z1) : k_factor(z1);
                const Eigen::Matrix2cd g2 =
                    word.taus[1].kind == RootKind::Noncompact ? q_factor(z2) : k_factor(z2);
                const Mat g = wr.embed(1, g2) * wr.embed(0, g1);
                const auto f =
                    birkhoff_factorize(GroupElement{g, GroupTag::SL, config_for(word)});
                REQUIRE(f.w.is_identity());

                const double a2 = word.taus[1].kind == RootKind::Noncompact ? a_minus(z2)
                                                                            : a_plus(z2);
                const int pairing = Root::pairing(word.taus[0], word.taus[1]);
                const Mat arg = z2 * wr.f_matrix(1) +
                                z1 * std::pow(a2, -pairing) * wr.f_matrix(0);
                CHECK((f.l.m - nilpotent_exp(arg)).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("a_product frozen values") {
    const auto rs = build_root_system(1);
    const auto word = reduced_word_for(rs, WeylElement::identity(2));
    RSFCoordinates c{word, Eigen::VectorXcd(1), Eigen::VectorXd::Zero(1)};
    c.zetas(0) = 1.0;
    const auto a = a_product(c);
    CHECK(std::abs(a.m(0, 0) - std::pow(2.0, -0.5)) < 1e-15);
    CHECK(std::abs(a.m(1, 1) - std::pow(2.0, 0.5)) < 1e-15);

    const auto rs11 = build_root_system(1, std::pair{1, 1});
    const auto word11 = reduced_word_for(rs11, WeylElement::identity(2));
    RSFCoordinates c11{word11, Eigen::VectorXcd(1), Eigen::VectorXd::Zero(1)};
    c11.zetas(0) = 0.5;
    const auto a11 = a_product(c11);
    CHECK(std::abs(a11.m(0, 0) - 2.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(a11.m(1, 1) - std::sqrt(3.0) / 2.0) < 1e-15);

    // All-zero coordinates give the identity.
    c11.zetas(0) = 0.0;
    CHECK(mat_err(a_product(c11).m, Mat::Identity(2, 2)) == 0.0);
}

TEST_CASE("round trips across all groups and words") {
    struct Case {
        int rank;
        std::optional<std::pair<int, int>> sig;
    };
    const std::vector<Case> cases = {{1, std::nullopt},   {2, std::nullopt},
                                     {1, std::pair{1, 1}}, {2, std::pair{2, 1}},
                                     {2, std::pair{1, 2}}, {3, std::pair{2, 2}}};
    std::mt19937_64 rng(77);
    for (const auto& cs : cases) {
        const auto rs = build_root_system(cs.rank, cs.sig);
        const auto cfg = config_for(reduced_word_for(rs, WeylElement::identity(cs.rank + 1)));
        for (const auto& w : all_weyl_elements(cs.rank)) {
            if (cs.sig && !is_in_wk(rs, w)) continue;
            const auto word = reduced_word_for(rs, w);
            const WordRealization wr(word);
            for (int rep = 0; rep < 10; ++rep) {
                const auto c = random_coords(word, rng);
                const auto g = rsf_forward(cfg, wr, c);
                CHECK(membership_error(g) < 1e-10);

                // The detected component is the word's target.
                const auto f = birkhoff_factorize(g);
                CHECK(f.w == word.target);

                // Closed-form a agrees with the factorization, and the
                // torus factor is exactly the coordinate torus element.
                CHECK(mat_err(a_product(c).m, f.a.m) < 1e-10);
                CHECK(mat_err(f.m.m, torus_matrix(cs.rank + 1, c.torus_angles)) < 1e-10);

                const auto back = rsf_inverse(g, wr);
                CHECK(coord_err(back, c) < kRoundTripTol);
                const auto g2 = rsf_forward(cfg, wr, back);
                CHECK(mat_err(g2.m, g.m) < kRoundTripTol);
            }
        }
    }
}

TEST_CASE("round trips hold for randomized admissible word orders") {
    std::mt19937_64 rng(57);
    struct Case {
        int rank;
        std::optional<std::pair<int, int>> sig;
    };
    for (const auto& cs : std::vector<Case>{{2, std::nullopt}, {3, std::nullopt},
                                            {2, std::pair{2, 1}}, {3, std::pair{2, 2}}}) {
        const auto rs = build_root_system(cs.rank, cs.sig);
        const auto elements = all_weyl_elements(cs.rank);
        const auto cfg = cs.sig ? RealizationConfig::supq(cs.sig->first, cs.sig->second)
                                : RealizationConfig::su(cs.rank + 1);
        for (int rep = 0; rep < 20; ++rep) {
            const auto& w = elements[rng() % elements.size()];
            if (cs.sig && !is_in_wk(rs, w)) continue;
            auto chooser = [&rng](const std::vector<int>& adm) {
                return adm[rng() % adm.size()];
            };
            const auto word = reduced_word_for(rs, w, chooser);
            const WordRealization wr(word);
            const auto c = random_coords(word, rng);
            const auto g = rsf_forward(cfg, wr, c);
            const auto back = rsf_inverse(g, wr);
            CHECK(coord_err(back, c) < kRoundTripTol);
            CHECK(mat_err(rsf_forward(cfg, wr, back).m, g.m) < kRoundTripTol);
        }
    }
}

TEST_CASE("inverse on SU(2,1) with both taus noncompact") {
    const auto rs = build_root_system(2, std::pair{2, 1});
    const auto cfg = RealizationConfig::supq(2, 1);
    const auto word = reduced_word_for(rs, WeylElement::simple_reflection(3, 0));
    REQUIRE(word.length() == 2);
    CHECK(word.taus[0].kind == RootKind::Noncompact);
    CHECK(word.taus[1].kind == RootKind::Noncompact);
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = random_coords(word, rng);
        const auto g = rsf_forward(cfg, c);
        const auto back = rsf_inverse(g, word);
        CHECK(coord_err(back, c) < 1e-9);
    }
}

TEST_CASE("error paths") {
    const auto rs21 = build_root_system(2, std::pair{2, 1});
    const auto cfg = RealizationConfig::supq(2, 1);

    // Weyl element outside W(K).
    const auto rs_plain = build_root_system(2);
    auto word_bad = reduced_word_for(rs_plain, WeylElement::simple_reflection(3, 1));
    word_bad.signature = std::pair{2, 1};  // force the signature mismatch path
    for (auto& tau : word_bad.taus) tau.kind = RootKind::Compact;
    RSFCoordinates c_bad{word_bad, Eigen::VectorXcd::Zero(word_bad.length()),
                         Eigen::VectorXd::Zero(2)};
    CHECK_THROWS_AS(rsf_forward(cfg, c_bad), StratumError);

    // Disk violation.
    const auto word = reduced_word_for(rs21, WeylElement::identity(3));
    RSFCoordinates c{word, Eigen::VectorXcd::Zero(3), Eigen::VectorXd::Zero(2)};
    for (int j = 0; j < word.length(); ++j)
        if (word.taus[j].kind == RootKind::Noncompact) c.zetas(j) = cplx(1.0, 0.0);
    CHECK_THROWS_AS(rsf_forward(cfg, c), DomainViolation);

    // Element in a different stratum than the requested word.
    const auto word_id = reduced_word_for(rs21, WeylElement::identity(3));
    const auto wrep = weyl_rep(cfg, rs21, WeylElement::simple_reflection(3, 0));
    CHECK_THROWS_AS(rsf_inverse(wrep, word_id), StratumError);
}

TEST_CASE("peel inverse agrees with the Newton-solve oracle") {
    std::mt19937_64 rng(73);
    struct Case {
        int rank;
        std::optional<std::pair<int, int>> sig;
        WeylElement w;
    };
    const std::vector<Case> cases = {
        {2, std::nullopt, WeylElement::identity(3)},
        {2, std::pair{2, 1}, WeylElement::simple_reflection(3, 0)},
    };
    for (const auto& cs : cases) {
        const auto rs = build_root_system(cs.rank, cs.sig);
        const auto cfg = cs.sig ? RealizationConfig::supq(cs.sig->first, cs.sig->second)
                                : RealizationConfig::su(cs.rank + 1);
        const auto word = reduced_word_for(rs, cs.w);
        const WordRealization wr(word);
        std::uniform_real_distribution<double> noise(-0.1, 0.1);
        for (int rep = 0; rep < 5; ++rep) {
            const auto c = random_coords(word, rng, 1.0, 0.5);
            const auto g = rsf_forward(cfg, wr, c);
            const auto peeled = rsf_inverse(g, wr);

            // Start the solver from a perturbed point; it must come back to
            // the same coordinates the peel found.
            Eigen::VectorXd start(2 * word.length() + word.rank);
            for (int j = 0; j < word.length(); ++j) {
                start(2 * j) = c.zetas(j).real() + noise(rng);
                start(2 * j + 1) = c.zetas(j).imag() + noise(rng);
            }
            for (int i = 0; i < word.rank; ++i)
                start(2 * word.length() + i) = c.torus_angles(i) + noise(rng);

            const NewtonOracle oracle{cfg, wr, g.m};
            const Eigen::VectorXd solved = oracle.solve(start);
            for (int j = 0; j < word.length(); ++j) {
                const cplx z(solved(2 * j), solved(2 * j + 1));
                CHECK(std::abs(z - peeled.zetas(j)) < 1e-7);
            }
            for (int i = 0; i < word.rank; ++i) {
                const double d = std::remainder(
                    solved(2 * word.length() + i) - peeled.torus_angles(i), 2.0 * M_PI);
                CHECK(std::abs(d) < 1e-7);
            }
        }
    }
}

TEST_CASE("uniqueness: (l, m, w) determines the unitary element on every stratum") {
    // Rebuild g from its (l, m) data through the unitarity constraint: the
    // Q factor of l * wrep * m with positive-diagonal R is g itself.
    std::mt19937_64 rng(41);
    const auto rs = build_root_system(2);
    const auto cfg = RealizationConfig::su(3);
    for (const auto& w : all_weyl_elements(2)) {
        const auto word = reduced_word_for(rs, w);
        const WordRealization wr(word);
        for (int rep = 0; rep < 10; ++rep) {
            const auto c = random_coords(word, rng);
            const auto g = rsf_forward(cfg, wr, c);
            const auto f = birkhoff_factorize(g);
            const Mat m = f.l.m * f.wrep.m * f.m.m;
            Eigen::HouseholderQR<Mat> qr(m);
            Mat q = qr.householderQ();
            const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
            for (int j = 0; j < 3; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
            CHECK(mat_err(q, g.m) < 1e-9);
        }
    }
}

TEST_CASE("l_coordinates") {
    const auto rs = build_root_system(2);
    const auto word = reduced_word_for(rs, WeylElement::identity(3));
    const WordRealization wr(word);
    const auto cfg = RealizationConfig::su(3);

    // Identity has zero coordinates.
    CHECK(l_coordinates(Mat::Identity(3, 3), wr).norm() == 0.0);

    // Rank one: l = exp(zeta f) recovers zeta.
    const auto rs1 = build_root_system(1);
    const auto word1 = reduced_word_for(rs1, WeylElement::identity(2));
    const WordRealization wr1(word1);
    const cplx zeta(1.4, -0.3);
    CHECK(std::abs(l_coordinates(nilpotent_exp(zeta * wr1.f_matrix(0)), wr1)(0) - zeta) < 1e-14);

    // Two-letter closed form: x2 = zeta2, x1 = zeta1 a(zeta2)^{-tau1(h_tau2)}.
    const cplx z1(0.5, 0.7), z2(-0.2, 1.1);
    const Mat g = wr.embed(1, k_factor(z2)) * wr.embed(0, k_factor(z1));
    const auto f = birkhoff_factorize(GroupElement{g, GroupTag::SL, cfg});
    const auto x = l_coordinates(f.l.m, wr);
    CHECK(std::abs(x(1) - z2) < 1e-13);
    const double scale = std::pow(a_plus(z2), -Root::pairing(word.taus[0], word.taus[1]));
    CHECK(std::abs(x(0) - z1 * scale) < 1e-13);

    // Support outside the tau positions is rejected.
    const auto word_s =
        reduced_word_for(rs, WeylElement::from_one_line({2, 0, 1}));  // shorter word
    REQUIRE(word_s.length() == 1);
    Mat l = Mat::Identity(3, 3);
    l(2, 0) = 0.4;
    l(1, 0) = 0.4;
    CHECK_THROWS_AS(l_coordinates(l, WordRealization(word_s)), InvariantViolation);
}

}  // TEST_SUITE
