// Binary matrices over GF(2) with bit-packed rows, quadratic forms of
// permutations, symplectic matrices and their rank.

#pragma once

#include <cstdint>
#include <vector>

#include "gnoma/bitseq.hpp"
#include "gnoma/permutation.hpp"

namespace gnoma {

// Dense GF(2) matrix, one 64-bit word per row (cols <= 64 is plenty for
// the quadratic/symplectic matrices handled here).
class Gf2Matrix {
  public:
    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const { return (row_[static_cast<std::size_t>(r)] >> c) & 1u; }
    void set(int r, int c, bool v);

    Gf2Matrix operator+(const Gf2Matrix& other) const;  // entrywise mod 2
    Gf2Matrix transposed() const;

    bool is_strictly_upper_triangular() const;
    // Symmetric with zero diagonal, the shape of Q + Q^T.
    bool is_symplectic_shape() const;

    // Rank over GF(2) by row elimination on a copy.
    int rank() const;

    bool operator==(const Gf2Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && row_ == other.row_;
    }

    const std::vector<std::uint64_t>& row_words() const { return row_; }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint64_t> row_;
};

// Quadratic matrix of the path form sum_r x_{pi(r)} x_{pi(r+1)}: strictly
// upper triangular with a one at (min,max) of each consecutive pair;
// exactly m-1 ones.
Gf2Matrix quadratic_matrix(const Permutation& pi);

// B = Q + Q^T.
Gf2Matrix symplectic_matrix(const Gf2Matrix& q);

// rank_2((Q1+Q2) + (Q1+Q2)^T); always even, 0 iff the quadratic forms match.
int symplectic_rank(const Permutation& pi1, const Permutation& pi2);

// Truth table of f(x) = x Q x^T + v.x + e over all 2^m points, where the
// table index i encodes x with x_1 as the least significant bit and bit
// (r-1) of linear_mask is the coefficient of x_r.
BitSequence truth_table(const Gf2Matrix& q, std::uint64_t linear_mask, int e);

}  // namespace gnoma
