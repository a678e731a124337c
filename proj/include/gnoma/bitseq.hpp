// Packed binary sequences over Z2. Index i of a length-2^m sequence
// corresponds to the point x = (x_1,...,x_m) with x_r = bit (r-1) of i,
// i.e. x_1 is the least significant bit. This ordering is fixed; truth
// tables, Hadamard columns and spreading columns all rely on it.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gnoma {

class BitSequence {
  public:
    BitSequence() = default;
    explicit BitSequence(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static BitSequence from_bits(const std::vector<int>& bits) {
        BitSequence s(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("bit must be 0 or 1");
            if (bits[i]) s.set(i, true);
        }
        return s;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    // Hamming weight.
    std::size_t weight() const {
        std::size_t w = 0;
        for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
        return w;
    }

    BitSequence operator^(const BitSequence& other) const {
        if (n_ != other.n_) throw std::invalid_argument("length mismatch");
        BitSequence r(n_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] ^ other.words_[k];
        return r;
    }

    bool operator==(const BitSequence& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }

    // +/-1 modulation: bit b maps to (-1)^b.
    std::vector<double> modulated() const {
        std::vector<double> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = get(i) ? -1.0 : 1.0;
        return out;
    }

    std::vector<int> bits() const {
        std::vector<int> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = get(i) ? 1 : 0;
        return out;
    }

    std::string str() const {
        std::string s;
        s.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) s.push_back(get(i) ? '1' : '0');
        return s;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Inner product of the modulated images: <psi(a), psi(b)> = n - 2*w(a^b).
// Exact in integers; used to keep coherence scans free of float ties.
inline std::int64_t modulated_inner_product(const BitSequence& a, const BitSequence& b) {
    if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
    std::size_t w = 0;
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t k = 0; k < wa.size(); ++k)
        w += static_cast<std::size_t>(std::popcount(wa[k] ^ wb[k]));
    return static_cast<std::int64_t>(a.size()) - 2 * static_cast<std::int64_t>(w);
}

}  // namespace gnoma
