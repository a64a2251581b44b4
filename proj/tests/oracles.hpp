#pragma once

// Independent reference computations for the tests.  Nothing here calls the
// library routine it is used to check.

#include "solitonlab/grid.hpp"
#include "solitonlab/lie_algebra.hpp"
#include "solitonlab/random.hpp"
#include "solitonlab/types.hpp"
#include "solitonlab/weights.hpp"

namespace oracle {

using solitonlab::Mat;
using solitonlab::Vec;

/// Ricci form of the identity metric from the bracket-only formula
/// ric(x,y) = -1/2 sum <[x,e_i],[y,e_i]> - 1/2 B(x,y)
///            + 1/4 sum <[e_i,e_j],x><[e_i,e_j],y> - sym <[H,x],y>.
Mat ricci_identity_metric(const solitonlab::LieAlgebra& L);

/// Two-step nilpotent formula ric = -1/2 sum_z J_z^2-type contraction, for
/// algebras with [g, g] central and orthogonal to the complement.
Mat ricci_two_step(const solitonlab::LieAlgebra& L);

/// Levi-Civita symbols of the identity metric, gamma[i](k, j) = <nabla_{e_i} e_j, e_k>.
std::vector<Mat> connection_identity_metric(const solitonlab::LieAlgebra& L);

/// Delta_L h for the identity metric from the first variation of Ricci:
/// -2 dRic(h) = Delta_L h - L_W g with W_k = sum_p (nabla_p h)(p, k).
Mat lichnerowicz_from_ricci_variation(const solitonlab::LieAlgebra& L, const Mat& h, double s = 1e-4);

/// Rank by Gaussian elimination with partial pivoting.
int rank_gauss(Mat a, double tol);

Mat random_symmetric(solitonlab::SplitMix64& rng, int n);
Mat random_spd(solitonlab::SplitMix64& rng, int n);
Mat random_orthogonal(solitonlab::SplitMix64& rng, int n);
Mat random_invertible(solitonlab::SplitMix64& rng, int n);

/// Weighted Holder norm over all point pairs with Euclidean distances.
double holder_bruteforce(const solitonlab::Grid& grid, const solitonlab::TensorField& h,
                         const solitonlab::WeightSpec& w, int k, double alpha);

}  // namespace oracle
