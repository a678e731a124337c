// Golay complementary spreading sequences. Every sequence is the truth
// table of a path quadratic form plus a linear form; one permutation spans
// an orthogonal block of 2^m columns and L permutations concatenate into
// the overloaded spreading matrix.

#pragma once

#include <Eigen/Dense>
#include <span>

#include "gnoma/gf2.hpp"
#include "gnoma/spreading.hpp"

namespace gnoma {

// Sequence for permutation pi and linear index c in [0, 2^m): the truth
// table of Q_pi(x) + L_c(x), where bit (r-1) of c is the coefficient of x_r.
BitSequence golay_sequence(const Permutation& pi, std::uint64_t c);

// Full 2^m x 2^m orthogonal block with column c = psi(golay_sequence(pi,c)),
// built as diag(psi(q)) * H with H the Hadamard matrix whose column c is
// the modulated table of L_c, i.e. H(i,c) = (-1)^popcount(i & c).
Eigen::MatrixXd golay_block(const Permutation& pi);

// (1/sqrt(M)) [block_1 ... block_L] truncated to the first n_cols columns.
// n_cols = -1 means the full L*M columns. Permutations must share m and
// have pairwise distinct quadratic forms.
SpreadingMatrix golay_spreading_matrix(std::span<const Permutation> perms, int n_cols = -1);

}  // namespace gnoma
