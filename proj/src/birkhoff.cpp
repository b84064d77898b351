#include "rsfactor/birkhoff.hpp"

#include <cmath>

namespace rsfactor {

namespace {

// Zero / ambiguity thresholds for pivot detection.  Entries below
// kPivotTol * colnorm count as zero; entries between that and
// sqrt(kPivotTol) * colnorm are too close to call and abort the
// factorization instead of silently changing the detected stratum.
struct PivotScan {
    int row = -1;
    bool ambiguous = false;
};

PivotScan scan_column(const Eigen::VectorXcd& col, const std::vector<char>& row_used) {
    double colnorm = 0.0;
    for (int i = 0; i < col.size(); ++i)
        if (!row_used[i]) colnorm = std::max(colnorm, std::abs(col(i)));
    PivotScan out;
    if (colnorm == 0.0) return out;
    const double lo = kPivotTol * colnorm;
    const double hi = std::sqrt(kPivotTol) * colnorm;
    for (int i = 0; i < col.size(); ++i) {
        if (row_used[i]) continue;
        const double mag = std::abs(col(i));
        if (mag <= lo) continue;
        out.row = i;
        out.ambiguous = mag < hi;
        return out;
    }
    return out;
}

}  // namespace

BirkhoffFactors birkhoff_factorize(const GroupElement& g) {
    const int n = static_cast<int>(g.m.rows());
    if (g.m.cols() != n || n != g.config.n) throw InvalidInput("square matrix of config size required");
    if (std::abs(g.m.determinant() - 1.0) > 1e-6)
        throw InvalidInput("birkhoff_factorize expects an element of SL(n,C)");

    // Column elimination: in column j clear the rows already used as pivots
    // (right multiplication by elementary upper unipotents), then take the
    // topmost remaining entry as the pivot row w(j).
    Mat r = g.m;
    Mat u = Mat::Identity(n, n);  // g = r * u throughout
    std::vector<int> pivot_row(n, -1);
    std::vector<char> row_used(n, 0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            const int pk = pivot_row[k];
            const cplx c = r(pk, j) / r(pk, k);
            r.col(j) -= c * r.col(k);
            u.row(k) += c * u.row(j);  // (I - c E_{kj})^{-1} on the left of u
        }
        const PivotScan scan = scan_column(r.col(j), row_used);
        if (scan.row < 0) throw StratumBoundary("column vanished during elimination");
        if (scan.ambiguous)
            throw StratumBoundary("pivot magnitude too close to the zero threshold");
        pivot_row[j] = scan.row;
        row_used[scan.row] = 1;
    }

    std::vector<int> one_line(n);
    for (int j = 0; j < n; ++j) one_line[j] = pivot_row[j];
    const WeylElement w = WeylElement::from_one_line(one_line);

    // r = l * P * D with D_j = r(w(j), j).
    Mat l = Mat::Identity(n, n);
    Eigen::VectorXcd d(n);
    for (int j = 0; j < n; ++j) {
        d(j) = r(pivot_row[j], j);
        for (int i = 0; i < n; ++i) l(i, pivot_row[j]) = r(i, j) / d(j);
    }

    // Split P*D across the phase-convention representative: wrep^-1 * P * D
    // is diagonal; its phases go to m, its moduli to a.
    const Mat wrep = representative_of(n, w);
    Mat ma = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const cplx phase = wrep(pivot_row[j], j);
        ma(j, j) = d(j) / phase;
    }
    Mat m = Mat::Identity(n, n), a = Mat::Identity(n, n);
    for (int j = 0; j < n; ++j) {
        const double mod = std::abs(ma(j, j));
        a(j, j) = mod;
        m(j, j) = ma(j, j) / mod;
    }

    const RealizationConfig& cfg = g.config;
    return BirkhoffFactors{w,
                           GroupElement{std::move(l), GroupTag::SL, cfg},
                           GroupElement{wrep, GroupTag::SU, cfg},
                           GroupElement{std::move(m), GroupTag::Torus, cfg},
                           GroupElement{std::move(a), GroupTag::SL, cfg},
                           GroupElement{std::move(u), GroupTag::SL, cfg}};
}

GroupElement diagonal_via_minors(const GroupElement& g) {
    const int n = static_cast<int>(g.m.rows());
    // d = prod_j sigma_j^{h_{alpha_j}} over the leading principal minors
    // sigma_j, i.e. d_ii = sigma_i / sigma_{i-1} with sigma_0 = sigma_n = 1.
    std::vector<cplx> sigma(n + 1, 1.0);
    for (int j = 1; j < n; ++j) {
        sigma[j] = g.m.topLeftCorner(j, j).determinant();
        if (std::abs(sigma[j]) <= kPivotTol)
            throw StratumBoundary("vanishing leading principal minor");
    }
    Mat d = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = sigma[i + 1] / sigma[i];
    return GroupElement{std::move(d), GroupTag::SL, g.config};
}

double operator_norm(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

BlockFactors block_factorize(const GroupElement& g) {
    if (!g.config.signature) throw ConfigurationError("block factorization requires a signature");
    const auto [p, q] = *g.config.signature;
    const int n = p + q;
    if (g.m.rows() != n) throw InvalidInput("matrix size does not match the signature");

    const Mat a = g.m.topLeftCorner(p, p);
    const Mat b = g.m.topRightCorner(p, q);
    const Mat c = g.m.bottomLeftCorner(q, p);
    const Mat dd = g.m.bottomRightCorner(q, q);

    Eigen::JacobiSVD<Mat> svd(a);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-13 * std::max(1.0, sv(0))))
        throw InvariantViolation("upper-left block is singular; input is not in SU(p,q)");

    const Mat a_inv = a.partialPivLu().inverse();
    const Mat z = c * a_inv;  // Z = C A^{-1}
    const Mat ainv_b = a_inv * b;

    BlockFactors out;
    out.l_p = Mat::Identity(n, n);
    out.l_p.bottomLeftCorner(q, p) = z;
    out.u_p = Mat::Identity(n, n);
    out.u_p.topRightCorner(p, q) = ainv_b;
    out.g_k = Mat::Zero(n, n);
    out.g_k.topLeftCorner(p, p) = a;
    out.g_k.bottomRightCorner(q, q) = dd - z * b;
    out.Z = z;
    return out;
}

std::pair<BlockFactors, BirkhoffFactors> refined_factorize(const GroupElement& g) {
    BlockFactors blocks = block_factorize(g);
    BirkhoffFactors inner = birkhoff_factorize(GroupElement{blocks.g_k, GroupTag::SL, g.config});
    const RootSystem rs = build_root_system(g.config.n - 1, g.config.signature);
    if (!is_in_wk(rs, inner.w))
        throw InvariantViolation("block-diagonal factor detected a Weyl element outside W(K)");
    return {std::move(blocks), std::move(inner)};
}

}  // namespace rsfactor
