#pragma once

#include "rsfactor/birkhoff.hpp"
#include "rsfactor/realization.hpp"
#include "rsfactor/root_system.hpp"

namespace rsfactor {

// Coordinates on a Birkhoff component: one complex zeta per word letter
// (disk-constrained at noncompact positions) plus rank free torus angles;
// the last torus angle is determined by det = 1.
struct RSFCoordinates {
    ReducedWordData word;
    Eigen::VectorXcd zetas;
    Eigen::VectorXd torus_angles;
};

// Torus element from the free angles.
Mat torus_matrix(int n, const Eigen::VectorXd& angles);

// w_rep * iota_{tau_n}(g(zeta_n)) .. iota_{tau_1}(g(zeta_1)) * t, with
// g(zeta) = k(zeta) at compact positions and q(zeta) at noncompact ones.
GroupElement rsf_forward(const RealizationConfig& config, const RSFCoordinates& coords);
GroupElement rsf_forward(const RealizationConfig& config, const WordRealization& wr,
                         const RSFCoordinates& coords);

// prod_j a(zeta_j)^{h_{tau_j}}; equals the positive-diagonal Birkhoff factor
// of rsf_forward(coords).
GroupElement a_product(const RSFCoordinates& coords);

// Sequential peel recovering the coordinates of g in the component of the
// word's target element.
RSFCoordinates rsf_inverse(const GroupElement& g, const ReducedWordData& word);
RSFCoordinates rsf_inverse(const GroupElement& g, const WordRealization& wr);

// Coefficients x_j of l = exp(sum x_j f_{tau_j}) for a unipotent lower l
// supported on the word's tau positions.
Eigen::VectorXcd l_coordinates(const GroupElement& l, const ReducedWordData& word);
Eigen::VectorXcd l_coordinates(const Mat& l, const WordRealization& wr);

// Exact finite series for unipotent matrices.
Mat unipotent_log(const Mat& m);
Mat nilpotent_exp(const Mat& n);

}  // namespace rsfactor
