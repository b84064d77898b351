#pragma once

#include "rsfactor/realization.hpp"
#include "rsfactor/root_system.hpp"

namespace rsfactor {

// g = l * wrep * m * a * u with l lower unipotent supported on the
// non-inversion positions of w, m a torus element, a positive diagonal and
// u upper unipotent.
struct BirkhoffFactors {
    WeylElement w;
    GroupElement l, wrep, m, a, u;

    Mat product() const { return l.m * wrep.m * m.m * a.m * u.m; }
};

// g = l_p * g_k * u_p in (p,q) blocks; Z is the lower-left block of l_p.
struct BlockFactors {
    Mat l_p, g_k, u_p, Z;

    Mat product() const { return l_p * g_k * u_p; }
};

// Factorize g in SL(n,C) across its Birkhoff component, detecting the Weyl
// element by column elimination.  Inputs sitting numerically on a component
// boundary raise StratumBoundary.
BirkhoffFactors birkhoff_factorize(const GroupElement& g);

// The diagonal term of the w = 1 factorization, computed from the leading
// principal minors; agrees with m*a from birkhoff_factorize on the top
// component.
GroupElement diagonal_via_minors(const GroupElement& g);

// Coarse block-triangular factorization for a signature realization.
BlockFactors block_factorize(const GroupElement& g);

// Block factorization followed by the Birkhoff factorization of the
// block-diagonal middle factor; its detected Weyl element lies in W(K).
std::pair<BlockFactors, BirkhoffFactors> refined_factorize(const GroupElement& g);

double operator_norm(const Mat& m);

}  // namespace rsfactor
