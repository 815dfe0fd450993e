#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace paley {

/// Lexicographic indexing of the 2-subsets {a,b} of {0,...,p-1}.
struct PairIndexing {
    int64_t p = 0;
    std::vector<std::pair<int, int>> pairs;

    explicit PairIndexing(int64_t p_) : p(p_) {
        pairs.reserve(p * (p - 1) / 2);
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b) pairs.emplace_back(a, b);
    }

    int64_t size() const { return (int64_t)pairs.size(); }

    int64_t index(int64_t a, int64_t b) const {
        if (a > b) std::swap(a, b);
        return a * (2 * p - a - 1) / 2 + (b - a - 1);
    }
};

}  // namespace paley
