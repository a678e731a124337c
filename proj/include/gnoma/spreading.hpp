#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "gnoma/bitseq.hpp"
#include "gnoma/permutation.hpp"

namespace gnoma {

enum class Family { golay, zc, bipolar, gaussian };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// M x N matrix of spreading sequences, one device per column. Real-valued
// families keep a real matrix (the simulator exploits this); ZC keeps a
// complex one. For +/-1 families the sign patterns are also kept as packed
// bits so coherence can be computed in exact integer arithmetic.
struct SpreadingMatrix {
    Family family = Family::golay;

    Eigen::MatrixXd real;   // golay / bipolar / gaussian
    Eigen::MatrixXcd cplx;  // zc

    std::vector<BitSequence> column_bits;  // golay / bipolar sign patterns
    double entry_scale = 0.0;              // magnitude of +/-1 family entries, 1/sqrt(M)

    std::vector<Permutation> perms;  // golay
    int zc_length = 0;               // zc
    std::vector<int> zc_roots;       // zc
    std::uint64_t seed = 0;          // bipolar / gaussian / zc root draw

    bool is_real() const { return family != Family::zc; }
    int rows() const { return is_real() ? static_cast<int>(real.rows()) : static_cast<int>(cplx.rows()); }
    int cols() const { return is_real() ? static_cast<int>(real.cols()) : static_cast<int>(cplx.cols()); }

    Eigen::VectorXcd column_complex(int j) const;
};

// Binary export: 16-byte header (4-byte magic "GNSM", uint32 M, uint32 N,
// 4-byte family tag), then column-major little-endian (re, im) float64
// pairs. CSV export is for eyeballing only.
void write_matrix_binary(const std::string& path, const SpreadingMatrix& s);
SpreadingMatrix read_matrix_binary(const std::string& path);
void write_matrix_csv(const std::string& path, const SpreadingMatrix& s);

}  // namespace gnoma
