#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "rsfactor/errors.hpp"
#include "rsfactor/root_system.hpp"

namespace rsfactor {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Pinned numerical tolerances.
inline constexpr double kGroupTol = 1e-9;    // relative Frobenius membership
inline constexpr double kDiskTol = 1e-12;    // unit-disk boundary margin
inline constexpr double kFactorTol = 1e-9;   // factorization reconstruction
inline constexpr double kPivotTol = 1e-10;   // relative pivot zero threshold
inline constexpr double kRoundTripTol = 1e-9;

enum class GroupTag { SL, SU, SUpq, Torus };

// Which concrete groups a matrix is measured against: SL(n,C) and SU(n) for
// plain n, plus SU(p,q) / S(U(p)xU(q)) when a signature is set.
struct RealizationConfig {
    int n = 0;
    std::optional<std::pair<int, int>> signature;

    static RealizationConfig sl(int n);
    static RealizationConfig su(int n);
    static RealizationConfig supq(int p, int q);

    // diag(I_p, -I_q) when the signature is set, identity otherwise.
    Mat form_matrix() const;
};

struct GroupElement {
    Mat m;
    GroupTag tag = GroupTag::SL;
    RealizationConfig config;
};

struct LieElement {
    Mat m;
};

// Relative Frobenius residual of the defining equations of the tagged group.
double membership_error(const GroupElement& g);
bool is_member(const GroupElement& g, double tol = kGroupTol);

// Chevalley generators for a *simple* root: e = E_{i,i+1}, f = E_{i+1,i},
// h = E_{ii} - E_{i+1,i+1}.  Non-simple roots need a word context (see
// WordRealization); asking for one here is an error.
LieElement chevalley(const RealizationConfig& config, const Root& root, char which);

double a_plus(cplx zeta);   // (1+|z|^2)^{-1/2}
double a_minus(cplx zeta);  // (1-|z|^2)^{-1/2}, |z| < 1

// k(zeta) in SU(2) and q(zeta) in SU(1,1).
Eigen::Matrix2cd k_factor(cplx zeta);
Eigen::Matrix2cd q_factor(cplx zeta);

// Representative of the simple reflection: [[0,i],[i,0]] embedded at the
// 2x2 block of the given simple root.
GroupElement simple_reflection_rep(const RealizationConfig& config, int simple_index);

// Product of simple-reflection representatives along the deterministic
// minimal word of w; a signed permutation matrix with entries in powers of i.
Mat representative_of(int n, const WeylElement& w);

// Same, packaged as a group element; with a signature set, w must lie in
// W(K) (its reduced words then use compact simple roots only).
GroupElement weyl_rep(const RealizationConfig& config, const RootSystem& rs, const WeylElement& w);

// Cached matrices attached to a word: prefix representatives
// P_j = r_{gamma_1} .. r_{gamma_j} and the conjugated sl2 embeddings
// iota_{tau_j}(x) = P_{j-1} iota_{gamma_j}(x) P_{j-1}^{-1}.
class WordRealization {
public:
    explicit WordRealization(const ReducedWordData& word);

    struct Slot {
        int row, col;  // f_{tau_j} = phase * E_{row,col}
        cplx phase;
    };

    int n() const { return n_; }
    const ReducedWordData& word() const { return word_; }
    const Mat& prefix_rep(int j) const { return prefix_reps_[j]; }  // j = 0..length
    const Slot& f_slot(int j) const { return f_slots_[j]; }         // j = 0-based

    Mat f_matrix(int j) const;  // iota_{tau_j}(E_21)
    Mat h_matrix(int j) const;  // coroot of tau_j
    Mat embed(int j, const Eigen::Matrix2cd& m) const;  // iota_{tau_j}(m)

private:
    ReducedWordData word_;
    int n_;
    std::vector<Mat> prefix_reps_;
    std::vector<Slot> f_slots_;
};

// iota_{tau_j} applied to a unimodular 2x2 matrix; j is the 0-based index
// into the word.
GroupElement root_hom(const RealizationConfig& config, const ReducedWordData& word, int j,
                      const Eigen::Matrix2cd& m);

// Deterministic pseudo-random elements.  SU uses the QR construction and is
// Haar; SUpq multiplies exponentials of bounded Lie-algebra draws and is
// *not* Haar (membership and stratum tests only).
GroupElement random_element(const RealizationConfig& config, GroupTag tag, std::mt19937_64& rng);
GroupElement random_element(const RealizationConfig& config, GroupTag tag, std::uint64_t seed);

}  // namespace rsfactor
