#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <vector>

namespace jetscheme {

/// Evaluate fn(0..n-1) on at most `workers` threads; results are returned in index order.
template <class Fn>
auto parallel_map(std::size_t n, unsigned workers, Fn fn) -> std::vector<decltype(fn(std::size_t{0}))> {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out;
    out.reserve(n);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
        return out;
    }
    for (std::size_t start = 0; start < n; start += workers) {
        std::vector<std::future<R>> batch;
        for (std::size_t i = start; i < std::min(n, start + workers); ++i)
            batch.push_back(std::async(std::launch::async, fn, i));
        for (auto& f : batch) out.push_back(f.get());
    }
    return out;
}

}  // namespace jetscheme
