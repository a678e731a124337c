#include "gnoma/refdata.hpp"

#include <stdexcept>

namespace gnoma::refdata {

namespace {

std::vector<Permutation> parse_set(const std::vector<const char*>& lines) {
    std::vector<Permutation> out;
    out.reserve(lines.size());
    for (const char* line : lines) out.push_back(Permutation::parse(line));
    return out;
}

std::vector<PermutationSetRecord> build_sets() {
    std::vector<PermutationSetRecord> sets;

    sets.push_back({5, 2, 8, 0.25,
                    parse_set({"5,4,3,2,1", "3,4,2,5,1", "4,2,5,3,1", "4,3,5,1,2", "4,5,1,3,2",
                               "5,3,1,4,2", "5,4,2,1,3", "4,1,2,5,3"})});

    sets.push_back({6, 2, 5, 0.125,
                    parse_set({"3,4,5,2,6,1", "6,3,2,4,1,5", "4,1,6,5,2,3", "6,5,3,1,2,4",
                               "5,3,2,1,6,4"})});
    sets.push_back({6, 6, 8, 0.25,
                    parse_set({"3,4,5,2,6,1", "6,4,2,1,5,3", "6,1,4,3,2,5", "4,1,5,6,2,3",
                               "4,2,1,5,6,3", "6,5,3,1,4,2", "6,1,5,3,4,2", "6,2,3,1,5,4"})});

    sets.push_back({7, 2, 8, 0.125,
                    parse_set({"4,5,1,3,6,7,2", "4,2,5,1,6,7,3", "6,7,1,2,3,5,4", "5,3,6,4,1,7,2",
                               "6,4,7,3,1,5,2", "4,3,6,7,5,2,1", "6,1,3,2,7,4,5", "6,7,5,1,4,3,2"})});

    sets.push_back({8, 2, 5, 0.0625,
                    parse_set({"4,5,6,1,3,7,8,2", "7,6,8,2,3,1,4,5", "7,1,8,6,4,3,5,2",
                               "6,7,2,3,8,4,1,5", "8,3,1,5,2,7,4,6"})});
    sets.push_back({8, 6, 8, 0.125,
                    parse_set({"5,7,4,3,2,8,6,1", "5,7,8,4,6,2,1,3", "5,6,2,7,8,3,4,1",
                               "5,3,1,6,8,7,2,4", "8,3,1,7,6,2,4,5", "6,1,3,7,2,8,4,5",
                               "5,1,8,6,7,2,3,4", "8,1,4,6,7,5,2,3"})});

    sets.push_back({9, 2, 8, 0.0625,
                    parse_set({"8,3,7,4,9,2,5,1,6", "8,4,3,7,2,6,1,9,5", "9,5,4,1,6,8,3,7,2",
                               "6,5,8,7,9,3,4,2,1", "4,1,7,6,8,9,2,5,3", "4,8,2,6,9,7,5,3,1",
                               "5,3,7,8,2,1,6,9,4", "5,6,9,3,7,1,8,2,4"})});

    sets.push_back({10, 2, 5, 0.03125,
                    parse_set({"9,1,6,3,2,8,5,4,10,7", "5,1,9,8,2,10,6,3,7,4", "6,3,8,10,9,7,1,5,4,2",
                               "7,6,8,1,3,2,10,9,4,5", "9,5,3,2,4,8,6,10,7,1"})});
    sets.push_back({10, 6, 8, 0.0625,
                    parse_set({"5,4,8,1,7,9,10,6,2,3", "8,9,3,4,10,1,6,2,5,7", "6,2,7,8,5,4,3,9,10,1",
                               "9,10,8,3,4,1,7,2,6,5", "5,8,4,7,9,10,3,6,2,1", "6,4,8,2,7,10,5,9,1,3",
                               "3,6,10,4,1,8,9,5,7,2", "8,5,7,2,10,1,6,9,3,4"})});

    return sets;
}

}  // namespace

const std::vector<PermutationSetRecord>& permutation_sets() {
    static const std::vector<PermutationSetRecord> sets = build_sets();
    return sets;
}

std::vector<Permutation> default_perms(int m, int l) {
    if (l < 1) throw std::invalid_argument("need at least one permutation");
    const PermutationSetRecord* fallback = nullptr;
    for (const auto& rec : permutation_sets()) {
        if (rec.m != m || static_cast<int>(rec.perms.size()) < l) continue;
        if (l >= rec.l_min && l <= rec.l_max)
            return {rec.perms.begin(), rec.perms.begin() + l};
        if (!fallback) fallback = &rec;
    }
    // l below the certified bracket: a prefix of the low-L set still meets
    // its coherence, since dropping permutations cannot lower the rank floor.
    if (fallback) return {fallback->perms.begin(), fallback->perms.begin() + l};
    throw std::invalid_argument("no bundled permutation set for m=" + std::to_string(m) +
                                ", L=" + std::to_string(l));
}

const std::vector<RankProbability>& rank_reference() {
    static const std::vector<RankProbability> table = {
        {5, 2, 2.543926e-1},  {5, 4, 7.456074e-1},
        {6, 2, 5.856820e-2},  {6, 4, 5.848499e-1},  {6, 6, 3.565819e-1},
        {7, 2, 1.310750e-2},  {7, 4, 2.214437e-1},  {7, 6, 7.654488e-1},
        {8, 2, 2.218900e-3},  {8, 4, 5.931190e-2},  {8, 6, 5.814335e-1},  {8, 8, 3.570357e-1},
        {9, 2, 3.352000e-4},  {9, 4, 1.153890e-2},  {9, 6, 2.285468e-1},  {9, 8, 7.595791e-1},
        {10, 2, 4.190000e-5}, {10, 4, 1.914300e-3}, {10, 6, 5.557250e-2}, {10, 8, 5.863399e-1},
        {10, 10, 3.561314e-1},
    };
    return table;
}

Permutation example_permutation() { return Permutation::parse("2,1,3"); }

std::uint64_t example_linear_index() { return 6; }

std::vector<int> example_quadratic_bits() { return {0, 0, 0, 1, 0, 1, 0, 0}; }

std::vector<int> example_sequence_bits() { return {0, 0, 1, 0, 1, 0, 0, 0}; }

}  // namespace gnoma::refdata
