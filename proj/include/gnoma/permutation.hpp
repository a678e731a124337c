#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gnoma/rng.hpp"

namespace gnoma {

// A permutation of {1..m} defining a path quadratic form. Reversing the
// entries yields the identical form, so the canonical representative is
// the orientation with entries.front() < entries.back(); there are m!/2
// canonical permutations.
class Permutation {
  public:
    // Validates that entries is a bijection on {1..m}, m >= 2.
    explicit Permutation(std::vector<int> entries);

    static Permutation identity(int m);

    // Parses the one-line text form "5,4,3,2,1" (1-based entries).
    static Permutation parse(std::string_view text);

    // Uniform draw over the m!/2 canonical permutations: a uniform draw
    // over all m! orderings is mapped to its canonical orientation (each
    // canonical form has exactly two preimages, itself and its reversal).
    static Permutation random_canonical(int m, Rng& rng);

    int m() const { return static_cast<int>(entries_.size()); }

    // 1-based: value at position r in 1..m.
    int operator()(int r) const { return entries_[static_cast<std::size_t>(r - 1)]; }

    const std::vector<int>& entries() const { return entries_; }

    bool is_canonical() const { return entries_.front() < entries_.back(); }
    Permutation reversed() const;
    Permutation canonicalized() const { return is_canonical() ? *this : reversed(); }

    std::string str() const;

    bool operator==(const Permutation& other) const { return entries_ == other.entries_; }
    bool operator<(const Permutation& other) const { return entries_ < other.entries_; }

  private:
    std::vector<int> entries_;
};

// Permutation text format: one permutation per line, comma-separated
// 1-based entries. Blank lines and lines starting with '#' are skipped.
std::vector<Permutation> read_permutation_lines(std::istream& in);
std::vector<Permutation> read_permutation_file(const std::string& path);
void write_permutation_file(const std::string& path, const std::vector<Permutation>& perms);

}  // namespace gnoma
