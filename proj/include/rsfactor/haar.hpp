#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "rsfactor/root_subgroup.hpp"

namespace rsfactor {

// Per-coordinate data of the product density
//   prod_j (1 +- |zeta_j|^2)^{-(1 + delta(h_{tau_j}))},
// plus sign at compact positions, minus at noncompact ones.
struct DensitySpec {
    ReducedWordData word;
    std::vector<int> exponents;  // delta(h_{tau_j}) = height(tau_j)
    std::vector<int> signs;      // +1 compact, -1 noncompact
};

DensitySpec make_density_spec(const ReducedWordData& word);

// Unnormalized density value at the coordinates (torus factor constant).
double density(const DensitySpec& spec, const RSFCoordinates& coords);

// a(g)^{4 delta} two ways: through a_product and the delta functional, and
// as the closed product prod (1 +- |zeta|^2)^{-2 delta(h_tau)}.
std::pair<double, double> a4delta(const RSFCoordinates& coords);

// Relative error between the finite-difference Jacobian determinant of the
// zeta -> x nilpotent coordinate change and the predicted product
// prod (1 +- |zeta_k|^2)^{delta(h_{tau_k}) - 1}.
double nilpotent_jacobian_test(const RSFCoordinates& coords, double fd_step = 1e-5);

// Relative error of the density-transport identity
//   density(c) = density(c') |det dc'/dc|,  c' = inverse(g0 * forward(c)),
// over the full real coordinate vector (zetas and torus angles).
double invariance_jacobian_test(const GroupElement& g0, const RSFCoordinates& coords,
                                double fd_step = 1e-5);

// Exact sampler for all-compact words: radius by inverse CDF of
// c (1+s)^{-(1+h)} ds with s = |zeta|^2, angles uniform.
RSFCoordinates sample_compact(const DensitySpec& spec, std::mt19937_64& rng);

// Inverse CDF of the radial law, exposed for sampler self-tests.
double compact_radial_icdf(int exponent, double u);

// Importance sampler for words with noncompact letters: noncompact
// coordinates uniform on the radius-rmax disk, compact ones exact; returns
// the weight density/proposal (up to the free constant of the compact part).
std::pair<RSFCoordinates, double> sample_truncated(const DensitySpec& spec, std::mt19937_64& rng,
                                                   double rmax);

struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

struct MomentReport {
    int n = 0;
    long long samples = 0;
    std::uint64_t seed = 0;
    MomentEstimate product_tr2, product_g11;  // root-subgroup product sampler
    MomentEstimate qr_tr2, qr_g11;            // QR-Haar oracle
    double z_product_tr2 = 0.0, z_product_g11 = 0.0;  // against 1 and 1/n
    double z_qr_tr2 = 0.0, z_qr_g11 = 0.0;
    double z_diff_tr2 = 0.0, z_diff_g11 = 0.0;  // two-sample comparisons
};

// E|tr g|^2 (= 1) and E|g_11|^2 (= 1/n) under product-coordinate sampling
// of SU(n) versus the QR-Haar oracle.
MomentReport haar_moment_compare(int n, long long samples, std::uint64_t seed);

}  // namespace rsfactor
