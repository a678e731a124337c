#include "gnoma/permutation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gnoma {

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    const int m = static_cast<int>(entries_.size());
    if (m < 2) throw std::invalid_argument("permutation needs m >= 2");
    std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
    for (int v : entries_) {
        if (v < 1 || v > m || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("entries must be a bijection on {1..m}");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int m) {
    std::vector<int> e(static_cast<std::size_t>(m));
    std::iota(e.begin(), e.end(), 1);
    return Permutation(std::move(e));
}

Permutation Permutation::parse(std::string_view text) {
    std::vector<int> e;
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
        std::size_t pos = 0;
        const int v = std::stoi(token, &pos);
        while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
        if (pos != token.size()) throw std::invalid_argument("bad permutation token: " + token);
        e.push_back(v);
    }
    return Permutation(std::move(e));
}

Permutation Permutation::random_canonical(int m, Rng& rng) {
    std::vector<int> e(static_cast<std::size_t>(m));
    std::iota(e.begin(), e.end(), 1);
    rng.shuffle(e);
    if (e.front() > e.back()) std::reverse(e.begin(), e.end());
    return Permutation(std::move(e));
}

Permutation Permutation::reversed() const {
    std::vector<int> e(entries_.rbegin(), entries_.rend());
    return Permutation(std::move(e));
}

std::string Permutation::str() const {
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(entries_[i]);
    }
    return s;
}

std::vector<Permutation> read_permutation_lines(std::istream& in) {
    std::vector<Permutation> perms;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        perms.push_back(Permutation::parse(line));
    }
    return perms;
}

std::vector<Permutation> read_permutation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open permutation file: " + path);
    return read_permutation_lines(in);
}

void write_permutation_file(const std::string& path, const std::vector<Permutation>& perms) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write permutation file: " + path);
    for (const auto& p : perms) out << p.str() << "\n";
}

}  // namespace gnoma
