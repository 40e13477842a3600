#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace taukit {

// Work is cut into fixed-size blocks regardless of thread count; threads pull
// block indices from a shared counter and write results into per-block slots,
// and the caller folds the slots in index order. Totals are therefore
// bit-identical for any --threads value.

inline constexpr std::uint64_t kDefaultBlock = 4096;

template <class Fn>
void parallel_for_blocks(std::uint64_t n_blocks, int threads, Fn&& fn) {
    if (threads < 1) threads = 1;
    if (n_blocks == 0) return;
    if (threads == 1 || n_blocks == 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            fn(b);
        }
    };
    std::vector<std::thread> pool;
    std::uint64_t tcount = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n_blocks);
    pool.reserve(static_cast<std::size_t>(tcount));
    for (std::uint64_t t = 0; t < tcount; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// fn(begin, end) -> T computes one block; blocks are combined left to right.
template <class T, class Fn>
T blocked_reduce(std::uint64_t n_items, int threads, Fn&& fn, T init,
                 std::uint64_t block = kDefaultBlock) {
    if (n_items == 0) return init;
    std::uint64_t n_blocks = (n_items + block - 1) / block;
    std::vector<T> part(static_cast<std::size_t>(n_blocks), init);
    parallel_for_blocks(n_blocks, threads, [&](std::uint64_t b) {
        std::uint64_t lo = b * block;
        std::uint64_t hi = std::min(n_items, lo + block);
        part[static_cast<std::size_t>(b)] = fn(lo, hi);
    });
    T acc = init;
    for (const T& p : part) acc = acc + p;
    return acc;
}

struct MomentAcc {
    double sum = 0.0;
    double sumsq = 0.0;
    MomentAcc operator+(const MomentAcc& o) const { return {sum + o.sum, sumsq + o.sumsq}; }
};

struct McEstimate {
    double mean = 0.0;
    double se = 0.0;
};

// fn(i) -> one sample value.
template <class Fn>
McEstimate mc_mean(std::uint64_t n, int threads, Fn&& fn) {
    MomentAcc acc = blocked_reduce<MomentAcc>(
        n, threads,
        [&](std::uint64_t lo, std::uint64_t hi) {
            MomentAcc a;
            for (std::uint64_t i = lo; i < hi; ++i) {
                double v = fn(i);
                a.sum += v;
                a.sumsq += v * v;
            }
            return a;
        },
        MomentAcc{});
    McEstimate e;
    double dn = static_cast<double>(n);
    e.mean = acc.sum / dn;
    double var = acc.sumsq / dn - e.mean * e.mean;
    if (var < 0.0) var = 0.0;
    e.se = std::sqrt(var / dn);
    return e;
}

} // namespace taukit
