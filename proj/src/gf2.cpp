#include "gnoma/gf2.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace gnoma {

Gf2Matrix::Gf2Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0 || cols > 64) throw std::invalid_argument("bad Gf2Matrix shape");
    row_.assign(static_cast<std::size_t>(rows), 0);
}

void Gf2Matrix::set(int r, int c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << c;
    if (v)
        row_[static_cast<std::size_t>(r)] |= mask;
    else
        row_[static_cast<std::size_t>(r)] &= ~mask;
}

Gf2Matrix Gf2Matrix::operator+(const Gf2Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("Gf2Matrix dimension mismatch");
    Gf2Matrix out(rows_, cols_);
    for (std::size_t r = 0; r < row_.size(); ++r) out.row_[r] = row_[r] ^ other.row_[r];
    return out;
}

Gf2Matrix Gf2Matrix::transposed() const {
    Gf2Matrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(c, r, true);
    return out;
}

bool Gf2Matrix::is_strictly_upper_triangular() const {
    for (int r = 0; r < rows_; ++r) {
        // bits at columns <= r must be clear
        const std::uint64_t low = (r >= 63) ? ~std::uint64_t{0}
                                            : ((std::uint64_t{1} << (r + 1)) - 1);
        if (row_[static_cast<std::size_t>(r)] & low) return false;
    }
    return true;
}

bool Gf2Matrix::is_symplectic_shape() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r) {
        if (get(r, r)) return false;
        for (int c = r + 1; c < cols_; ++c)
            if (get(r, c) != get(c, r)) return false;
    }
    return true;
}

int Gf2Matrix::rank() const {
    std::vector<std::uint64_t> rows = row_;  // elimination is destructive
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        const std::uint64_t mask = std::uint64_t{1} << c;
        int pivot = -1;
        for (int r = rank; r < rows_; ++r) {
            if (rows[static_cast<std::size_t>(r)] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(pivot)], rows[static_cast<std::size_t>(rank)]);
        for (int r = 0; r < rows_; ++r) {
            if (r != rank && (rows[static_cast<std::size_t>(r)] & mask))
                rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(rank)];
        }
        ++rank;
    }
    return rank;
}

Gf2Matrix quadratic_matrix(const Permutation& pi) {
    const int m = pi.m();
    Gf2Matrix q(m, m);
    for (int r = 1; r < m; ++r) {
        const int a = pi(r);
        const int b = pi(r + 1);
        q.set(std::min(a, b) - 1, std::max(a, b) - 1, true);
    }
    return q;
}

Gf2Matrix symplectic_matrix(const Gf2Matrix& q) { return q + q.transposed(); }

int symplectic_rank(const Permutation& pi1, const Permutation& pi2) {
    if (pi1.m() != pi2.m()) throw std::invalid_argument("permutation dimension mismatch");
    const Gf2Matrix q12 = quadratic_matrix(pi1) + quadratic_matrix(pi2);
    return symplectic_matrix(q12).rank();
}

BitSequence truth_table(const Gf2Matrix& q, std::uint64_t linear_mask, int e) {
    const int m = q.rows();
    if (q.cols() != m) throw std::invalid_argument("quadratic matrix must be square");
    if (!q.is_strictly_upper_triangular())
        throw std::invalid_argument("quadratic matrix must be strictly upper triangular");
    if (m < 64 && (linear_mask >> m) != 0)
        throw std::invalid_argument("linear mask exceeds dimension");
    if (e != 0 && e != 1) throw std::invalid_argument("e must be 0 or 1");

    // collect quadratic terms (zero-based index pairs)
    std::vector<std::pair<int, int>> terms;
    for (int r = 0; r < m; ++r)
        for (int c = r + 1; c < m; ++c)
            if (q.get(r, c)) terms.emplace_back(r, c);

    const std::uint64_t n = std::uint64_t{1} << m;
    BitSequence table(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        unsigned acc = static_cast<unsigned>(e);
        for (const auto& [r, c] : terms) acc ^= static_cast<unsigned>((i >> r) & (i >> c) & 1u);
        acc ^= static_cast<unsigned>(std::popcount(i & linear_mask) & 1);
        if (acc) table.set(i, true);
    }
    return table;
}

}  // namespace gnoma
