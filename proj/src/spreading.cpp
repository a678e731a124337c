#include "gnoma/spreading.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gnoma {

const char* family_name(Family f) {
    switch (f) {
        case Family::golay: return "golay";
        case Family::zc: return "zc";
        case Family::bipolar: return "bipolar";
        case Family::gaussian: return "gaussian";
    }
    throw std::logic_error("unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "golay") return Family::golay;
    if (name == "zc") return Family::zc;
    if (name == "bipolar") return Family::bipolar;
    if (name == "gaussian") return Family::gaussian;
    throw std::invalid_argument("unknown spreading family: " + name);
}

Eigen::VectorXcd SpreadingMatrix::column_complex(int j) const {
    if (j < 0 || j >= cols()) throw std::out_of_range("column index out of range");
    if (!is_real()) return cplx.col(j);
    Eigen::VectorXcd v(real.rows());
    for (Eigen::Index i = 0; i < real.rows(); ++i) v(i) = std::complex<double>(real(i, j), 0.0);
    return v;
}

namespace {

constexpr std::array<char, 4> kMagic = {'G', 'N', 'S', 'M'};

std::array<char, 4> family_tag(Family f) {
    switch (f) {
        case Family::golay: return {'g', 'o', 'l', 'a'};
        case Family::zc: return {'z', 'c', ' ', ' '};
        case Family::bipolar: return {'b', 'i', 'p', 'o'};
        case Family::gaussian: return {'g', 'a', 'u', 's'};
    }
    throw std::logic_error("unknown family");
}

Family family_from_tag(const std::array<char, 4>& tag) {
    for (Family f : {Family::golay, Family::zc, Family::bipolar, Family::gaussian})
        if (family_tag(f) == tag) return f;
    throw std::runtime_error("matrix file has unknown family tag");
}

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& os, double d) {
    const auto u = std::bit_cast<std::uint64_t>(d);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xff);
    os.write(b, 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(u);
}

}  // namespace

void write_matrix_binary(const std::string& path, const SpreadingMatrix& s) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);

    const int m = s.rows();
    const int n = s.cols();
    os.write(kMagic.data(), 4);
    put_u32(os, static_cast<std::uint32_t>(m));
    put_u32(os, static_cast<std::uint32_t>(n));
    const auto tag = family_tag(s.family);
    os.write(tag.data(), 4);

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            if (s.is_real()) {
                put_f64(os, s.real(i, j));
                put_f64(os, 0.0);
            } else {
                put_f64(os, s.cplx(i, j).real());
                put_f64(os, s.cplx(i, j).imag());
            }
        }
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

SpreadingMatrix read_matrix_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);

    std::array<char, 4> magic{};
    is.read(magic.data(), 4);
    if (!is || magic != kMagic) throw std::runtime_error("bad magic in matrix file: " + path);

    const std::uint32_t m = get_u32(is);
    const std::uint32_t n = get_u32(is);
    std::array<char, 4> tag{};
    is.read(tag.data(), 4);
    if (!is) throw std::runtime_error("truncated header in matrix file: " + path);

    SpreadingMatrix s;
    s.family = family_from_tag(tag);

    if (s.is_real()) {
        s.real.resize(m, n);
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::uint32_t i = 0; i < m; ++i) {
                s.real(i, j) = get_f64(is);
                if (get_f64(is) != 0.0)
                    throw std::runtime_error("real-family matrix file has nonzero imaginary part");
            }
        }
    } else {
        s.cplx.resize(m, n);
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::uint32_t i = 0; i < m; ++i) {
                const double re = get_f64(is);
                const double im = get_f64(is);
                s.cplx(i, j) = std::complex<double>(re, im);
            }
        }
    }
    if (!is) throw std::runtime_error("truncated matrix file: " + path);

    if (s.family == Family::golay || s.family == Family::bipolar) {
        s.entry_scale = 1.0 / std::sqrt(static_cast<double>(m));
        s.column_bits.reserve(n);
        for (std::uint32_t j = 0; j < n; ++j) {
            BitSequence a(m);
            for (std::uint32_t i = 0; i < m; ++i)
                if (s.real(i, j) < 0.0) a.set(i, true);
            s.column_bits.push_back(std::move(a));
        }
    }
    return s;
}

void write_matrix_csv(const std::string& path, const SpreadingMatrix& s) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);

    const int m = s.rows();
    const int n = s.cols();
    char buf[64];
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) os << ',';
            if (s.is_real()) {
                std::snprintf(buf, sizeof buf, "%.17g", s.real(i, j));
                os << buf;
            } else {
                std::snprintf(buf, sizeof buf, "%.17g%+.17gj", s.cplx(i, j).real(), s.cplx(i, j).imag());
                os << buf;
            }
        }
        os << '\n';
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace gnoma
