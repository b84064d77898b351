#include "rsfactor/realization.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace rsfactor {

namespace {

const cplx kI(0.0, 1.0);

Mat embed_block(int n, int pos, const Eigen::Matrix2cd& m) {
    Mat out = Mat::Identity(n, n);
    out.block<2, 2>(pos, pos) = m;
    return out;
}

double rel_frobenius(const Mat& a, const Mat& b) {
    const double scale = std::max(1.0, b.norm());
    return (a - b).norm() / scale;
}

}  // namespace

RealizationConfig RealizationConfig::sl(int n) {
    if (n < 2) throw ConfigurationError("matrix size must be >= 2");
    return RealizationConfig{n, std::nullopt};
}

RealizationConfig RealizationConfig::su(int n) { return sl(n); }

RealizationConfig RealizationConfig::supq(int p, int q) {
    if (p < 1 || q < 1) throw ConfigurationError("signature entries must be >= 1");
    return RealizationConfig{p + q, std::pair{p, q}};
}

Mat RealizationConfig::form_matrix() const {
    Mat j = Mat::Identity(n, n);
    if (signature) {
        for (int k = signature->first; k < n; ++k) j(k, k) = -1.0;
    }
    return j;
}

double membership_error(const GroupElement& g) {
    const int n = static_cast<int>(g.m.rows());
    if (n != g.config.n || g.m.cols() != g.m.rows())
        throw InvalidInput("matrix size does not match its realization config");
    const double det_err = std::abs(g.m.determinant() - 1.0);
    switch (g.tag) {
        case GroupTag::SL:
            return det_err;
        case GroupTag::SU:
            return std::max(det_err, rel_frobenius(g.m.adjoint() * g.m, Mat::Identity(n, n)));
        case GroupTag::SUpq: {
            if (!g.config.signature) throw ConfigurationError("SUpq tag requires a signature");
            const Mat j = g.config.form_matrix();
            return std::max(det_err, rel_frobenius(g.m.adjoint() * j * g.m, j));
        }
        case GroupTag::Torus: {
            double err = det_err;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b)
                        err = std::max(err, std::abs(std::abs(g.m(a, a)) - 1.0));
                    else
                        err = std::max(err, std::abs(g.m(a, b)));
                }
            return err;
        }
    }
    return det_err;
}

bool is_member(const GroupElement& g, double tol) { return membership_error(g) <= tol; }

LieElement chevalley(const RealizationConfig& config, const Root& root, char which) {
    if (root.height != 1)
        throw InvalidInput("chevalley generators of a non-simple root need a word context");
    const int i = root.from;
    Mat m = Mat::Zero(config.n, config.n);
    switch (which) {
        case 'e': m(i, i + 1) = 1.0; break;
        case 'f': m(i + 1, i) = 1.0; break;
        case 'h':
            m(i, i) = 1.0;
            m(i + 1, i + 1) = -1.0;
            break;
        default: throw InvalidInput("which must be one of 'e', 'f', 'h'");
    }
    return LieElement{std::move(m)};
}

double a_plus(cplx zeta) { return 1.0 / std::sqrt(1.0 + std::norm(zeta)); }

double a_minus(cplx zeta) {
    if (std::abs(zeta) >= 1.0 - kDiskTol)
        throw DomainViolation("disk coordinate reached the unit circle");
    return 1.0 / std::sqrt(1.0 - std::norm(zeta));
}

Eigen::Matrix2cd k_factor(cplx zeta) {
    Eigen::Matrix2cd m;
    m << 1.0, -std::conj(zeta), zeta, 1.0;
    return a_plus(zeta) * m;
}

Eigen::Matrix2cd q_factor(cplx zeta) {
    const double a = a_minus(zeta);  // throws on the boundary
    Eigen::Matrix2cd m;
    m << 1.0, std::conj(zeta), zeta, 1.0;
    return a * m;
}

GroupElement simple_reflection_rep(const RealizationConfig& config, int simple_index) {
    if (simple_index < 0 || simple_index >= config.n - 1)
        throw InvalidInput("simple root index out of range");
    Eigen::Matrix2cd r;
    r << 0.0, kI, kI, 0.0;
    return GroupElement{embed_block(config.n, simple_index, r), GroupTag::SU, config};
}

Mat representative_of(int n, const WeylElement& w) {
    const RootSystem rs = build_root_system(n - 1);
    const ReducedWordData word = bruhat_word_for(rs, w);
    Mat rep = Mat::Identity(n, n);
    Eigen::Matrix2cd r;
    r << 0.0, kI, kI, 0.0;
    // w = r_L .. r_1 as a group element, so the first letter sits rightmost.
    for (int c : word.gammas) rep = embed_block(n, c, r) * rep;
    return rep;
}

GroupElement weyl_rep(const RealizationConfig& config, const RootSystem& rs,
                      const WeylElement& w) {
    if (config.signature) {
        if (!rs.signature || *rs.signature != *config.signature)
            throw ConfigurationError("root system and realization signatures disagree");
        if (!is_in_wk(rs, w))
            throw StratumError("Weyl element is not in W(K); no representative in N_K(T)");
    }
    const GroupTag tag = config.signature ? GroupTag::SUpq : GroupTag::SU;
    return GroupElement{representative_of(config.n, w), tag, config};
}

WordRealization::WordRealization(const ReducedWordData& word) : word_(word), n_(word.n()) {
    prefix_reps_.reserve(word.length() + 1);
    prefix_reps_.push_back(Mat::Identity(n_, n_));
    Eigen::Matrix2cd r;
    r << 0.0, kI, kI, 0.0;
    for (int j = 0; j < word.length(); ++j)
        prefix_reps_.push_back(prefix_reps_.back() * embed_block(n_, word.gammas[j], r));

    for (int j = 0; j < word.length(); ++j) {
        Mat ef = Mat::Zero(n_, n_);
        ef(word.gammas[j] + 1, word.gammas[j]) = 1.0;
        const Mat& p = prefix_reps_[j];
        const Mat f = p * ef * p.adjoint();
        // A conjugated matrix unit: exactly one entry, of unit modulus, at
        // the lower position of tau_j.
        Slot slot{word.taus[j].to, word.taus[j].from, f(word.taus[j].to, word.taus[j].from)};
        if (std::abs(std::abs(slot.phase) - 1.0) > 1e-12 ||
            std::abs(f.norm() - 1.0) > 1e-12)
            throw InvariantViolation("root vector is not a unit matrix coefficient");
        f_slots_.push_back(slot);
    }
}

Mat WordRealization::f_matrix(int j) const {
    Mat m = Mat::Zero(n_, n_);
    m(f_slots_[j].row, f_slots_[j].col) = f_slots_[j].phase;
    return m;
}

Mat WordRealization::h_matrix(int j) const {
    Mat m = Mat::Zero(n_, n_);
    m(word_.taus[j].from, word_.taus[j].from) = 1.0;
    m(word_.taus[j].to, word_.taus[j].to) = -1.0;
    return m;
}

Mat WordRealization::embed(int j, const Eigen::Matrix2cd& m) const {
    const Mat& p = prefix_reps_[j];
    return p * embed_block(n_, word_.gammas[j], m) * p.adjoint();
}

GroupElement root_hom(const RealizationConfig& config, const ReducedWordData& word, int j,
                      const Eigen::Matrix2cd& m) {
    if (config.n != word.n()) throw InvalidInput("word and realization size disagree");
    if (j < 0 || j >= word.length()) throw InvalidInput("word index out of range");
    if (std::abs(m.determinant() - 1.0) > 1e-9)
        throw InvalidInput("root_hom argument must be unimodular");
    const WordRealization wr(word);
    return GroupElement{wr.embed(j, m), GroupTag::SL, config};
}

namespace {

GroupElement random_su(const RealizationConfig& config, std::mt19937_64& rng) {
    const int n = config.n;
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat z(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) z(a, b) = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar, then rotate the
    // determinant to 1 by a scalar phase.
    for (int a = 0; a < n; ++a) q.col(a) *= r(a, a) / std::abs(r(a, a));
    const cplx det = q.determinant();
    q *= std::exp(-kI * (std::arg(det) / static_cast<double>(n)));
    return GroupElement{std::move(q), GroupTag::SU, config};
}

// A bounded draw from su(p,q): skew-hermitian inside the diagonal blocks,
// conjugate-symmetric across them, i*traceless-real on the diagonal.
Mat random_supq_algebra(const RealizationConfig& config, std::mt19937_64& rng, double scale) {
    const int n = config.n;
    const int p = config.signature->first;
    std::uniform_real_distribution<double> unif(-scale, scale);
    Mat x = Mat::Zero(n, n);
    double mean = 0.0;
    std::vector<double> diag(n);
    for (double& d : diag) {
        d = unif(rng);
        mean += d;
    }
    mean /= n;
    for (int a = 0; a < n; ++a) x(a, a) = kI * (diag[a] - mean);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const cplx v(unif(rng), unif(rng));
            x(a, b) = v;
            const bool crosses = (a < p) != (b < p);
            x(b, a) = crosses ? std::conj(v) : -std::conj(v);
        }
    }
    return x;
}

GroupElement random_supq(const RealizationConfig& config, std::mt19937_64& rng) {
    if (!config.signature) throw ConfigurationError("SUpq sampling requires a signature");
    const Mat g = random_supq_algebra(config, rng, 0.5).exp() *
                  random_supq_algebra(config, rng, 0.5).exp();
    return GroupElement{g, GroupTag::SUpq, config};
}

GroupElement random_torus(const RealizationConfig& config, std::mt19937_64& rng) {
    const int n = config.n;
    std::uniform_real_distribution<double> unif(-M_PI, M_PI);
    Mat t = Mat::Identity(n, n);
    double sum = 0.0;
    for (int a = 0; a + 1 < n; ++a) {
        const double theta = unif(rng);
        sum += theta;
        t(a, a) = std::exp(kI * theta);
    }
    t(n - 1, n - 1) = std::exp(-kI * sum);
    return GroupElement{std::move(t), GroupTag::Torus, config};
}

GroupElement random_sl(const RealizationConfig& config, std::mt19937_64& rng) {
    const int n = config.n;
    std::normal_distribution<double> gauss(0.0, 0.5);
    Mat x(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) x(a, b) = cplx(gauss(rng), gauss(rng));
    x -= (x.trace() / static_cast<double>(n)) * Mat::Identity(n, n);
    return GroupElement{x.exp(), GroupTag::SL, config};
}

}  // namespace

GroupElement random_element(const RealizationConfig& config, GroupTag tag, std::mt19937_64& rng) {
    switch (tag) {
        case GroupTag::SU: return random_su(config, rng);
        case GroupTag::SUpq: return random_supq(config, rng);
        case GroupTag::Torus: return random_torus(config, rng);
        case GroupTag::SL: return random_sl(config, rng);
    }
    throw InvalidInput("unknown group tag");
}

GroupElement random_element(const RealizationConfig& config, GroupTag tag, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_element(config, tag, rng);
}

}  // namespace rsfactor
