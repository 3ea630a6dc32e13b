#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace semiample {

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
// fn returns false to stop early.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    for (;;) {
        if (!fn(static_cast<const std::vector<std::size_t>&>(c))) return;
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

template <class T>
std::vector<T> sorted_intersection(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

template <class T>
bool is_subset(const std::vector<T>& small, const std::vector<T>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace semiample
