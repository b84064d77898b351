#include "rsfactor/root_subgroup.hpp"

#include <cmath>

namespace rsfactor {

namespace {

const cplx kI(0.0, 1.0);

void validate_coords(const RSFCoordinates& coords) {
    const int n = coords.word.length();
    if (coords.zetas.size() != n) throw InvalidInput("zeta vector does not match the word length");
    if (coords.torus_angles.size() != coords.word.rank)
        throw InvalidInput("torus angle vector must have one entry per rank");
    for (int j = 0; j < n; ++j) {
        if (coords.word.taus[j].kind == RootKind::Noncompact &&
            std::abs(coords.zetas(j)) >= 1.0 - kDiskTol)
            throw DomainViolation("noncompact coordinate outside the unit disk");
    }
}

Eigen::Matrix2cd elementary_factor(const Root& tau, cplx zeta) {
    return tau.kind == RootKind::Noncompact ? q_factor(zeta) : k_factor(zeta);
}

// Exact inverse of a unimodular 2x2 matrix.
Eigen::Matrix2cd inverse2(const Eigen::Matrix2cd& m) {
    Eigen::Matrix2cd out;
    out << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return out;
}

double wrap_angle(double theta) {
    theta = std::remainder(theta, 2.0 * M_PI);
    if (theta <= -M_PI) theta += 2.0 * M_PI;
    return theta;
}

}  // namespace

Mat torus_matrix(int n, const Eigen::VectorXd& angles) {
    if (angles.size() != n - 1) throw InvalidInput("expected n-1 torus angles");
    Mat t = Mat::Identity(n, n);
    double sum = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        t(i, i) = std::exp(kI * angles(i));
        sum += angles(i);
    }
    t(n - 1, n - 1) = std::exp(-kI * sum);
    return t;
}

GroupElement rsf_forward(const RealizationConfig& config, const RSFCoordinates& coords) {
    return rsf_forward(config, WordRealization(coords.word), coords);
}

GroupElement rsf_forward(const RealizationConfig& config, const WordRealization& wr,
                         const RSFCoordinates& coords) {
    const ReducedWordData& word = coords.word;
    if (config.n != word.n()) throw InvalidInput("word and realization size disagree");
    if (config.signature != word.signature)
        throw InvalidInput("word and realization signatures disagree");
    validate_coords(coords);

    const RootSystem rs = build_root_system(word.rank, word.signature);
    Mat g = weyl_rep(config, rs, word.target).m;  // StratumError if not in W(K)
    for (int j = word.length() - 1; j >= 0; --j)
        g *= wr.embed(j, elementary_factor(word.taus[j], coords.zetas(j)));
    g *= torus_matrix(config.n, coords.torus_angles);

    const GroupTag tag = config.signature ? GroupTag::SUpq : GroupTag::SU;
    return GroupElement{std::move(g), tag, config};
}

GroupElement a_product(const RSFCoordinates& coords) {
    validate_coords(coords);
    const ReducedWordData& word = coords.word;
    const int n = word.n();
    Eigen::VectorXd log_a = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < word.length(); ++j) {
        const Root& tau = word.taus[j];
        const double aj = tau.kind == RootKind::Noncompact ? a_minus(coords.zetas(j))
                                                           : a_plus(coords.zetas(j));
        log_a(tau.from) += std::log(aj);
        log_a(tau.to) -= std::log(aj);
    }
    Mat a = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = std::exp(log_a(i));
    return GroupElement{std::move(a), GroupTag::SL, RealizationConfig{n, word.signature}};
}

Mat unipotent_log(const Mat& m) {
    const int n = static_cast<int>(m.rows());
    const Mat nil = m - Mat::Identity(n, n);
    Mat power = nil;
    Mat out = Mat::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        out += (k % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(k) * power;
        power *= nil;
    }
    if (power.norm() > 1e-8 * std::max(1.0, m.norm()))
        throw InvalidInput("matrix is not unipotent");
    return out;
}

Mat nilpotent_exp(const Mat& nil) {
    const int n = static_cast<int>(nil.rows());
    Mat out = Mat::Identity(n, n);
    Mat power = Mat::Identity(n, n);
    double fact = 1.0;
    for (int k = 1; k < n; ++k) {
        power *= nil;
        fact *= k;
        out += power / fact;
    }
    return out;
}

Eigen::VectorXcd l_coordinates(const GroupElement& l, const ReducedWordData& word) {
    return l_coordinates(l.m, WordRealization(word));
}

Eigen::VectorXcd l_coordinates(const Mat& l, const WordRealization& wr) {
    const int len = wr.word().length();
    const Mat log_l = unipotent_log(l);

    Eigen::VectorXcd x(len);
    Mat residual = log_l;
    for (int j = 0; j < len; ++j) {
        const auto& slot = wr.f_slot(j);
        x(j) = log_l(slot.row, slot.col) / slot.phase;
        residual(slot.row, slot.col) = 0.0;
    }
    if (residual.norm() > kFactorTol * std::max(1.0, log_l.norm()))
        throw InvariantViolation("unipotent factor has support outside the word's tau positions");
    return x;
}

RSFCoordinates rsf_inverse(const GroupElement& g, const ReducedWordData& word) {
    return rsf_inverse(g, WordRealization(word));
}

RSFCoordinates rsf_inverse(const GroupElement& g, const WordRealization& wr) {
    const ReducedWordData& word = wr.word();
    const int n = word.n();
    if (g.config.n != n) throw InvalidInput("element and word sizes disagree");

    // Stratum check up front: the component of g must match the word.
    const BirkhoffFactors bf = birkhoff_factorize(g);
    if (bf.w != word.target) throw StratumError("element is not in the word's Birkhoff component");

    RSFCoordinates coords;
    coords.word = word;
    coords.zetas = Eigen::VectorXcd::Zero(word.length());

    const RootSystem rs = build_root_system(word.rank, word.signature);
    Mat rho = weyl_rep(RealizationConfig{n, word.signature}, rs, word.target).m.adjoint() * g.m;

    // Peel the last letter first: the top coefficient of log l(rho) at the
    // f_{tau_j} slot is exactly zeta_j.
    for (int j = word.length() - 1; j >= 0; --j) {
        const auto inner = birkhoff_factorize(GroupElement{rho, GroupTag::SL, g.config});
        if (!inner.w.is_identity())
            throw InvariantViolation("peel left the top component; input is not in the stratum");
        const Mat log_l = unipotent_log(inner.l.m);
        const auto& slot = wr.f_slot(j);
        const cplx zeta = log_l(slot.row, slot.col) / slot.phase;
        if (word.taus[j].kind == RootKind::Noncompact && std::abs(zeta) >= 1.0 - kDiskTol)
            throw InvariantViolation("extracted a noncompact coordinate outside the disk");
        coords.zetas(j) = zeta;
        const Eigen::Matrix2cd gz = elementary_factor(word.taus[j], zeta);
        rho = wr.embed(j, inverse2(gz)) * rho;
    }

    // What remains must be a torus element.
    double err = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            err = std::max(err, a == b ? std::abs(std::abs(rho(a, a)) - 1.0) : std::abs(rho(a, b)));
    if (err > kFactorTol)
        throw InvariantViolation("residual after the peel is not a torus element");

    coords.torus_angles = Eigen::VectorXd(word.rank);
    for (int i = 0; i < word.rank; ++i) coords.torus_angles(i) = wrap_angle(std::arg(rho(i, i)));
    return coords;
}

}  // namespace rsfactor
