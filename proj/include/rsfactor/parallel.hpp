#pragma once

#include <cstdint>
#include <cstdlib>
#include <future>
#include <numeric>
#include <thread>
#include <vector>

namespace rsfactor {

// Worker cap: RSFACTOR_THREADS when set, hardware concurrency otherwise.
inline int worker_cap() {
    if (const char* env = std::getenv("RSFACTOR_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(b) for b = 0..nblocks-1, fanning out across workers.  Each block
// writes only its own results, so the outcome does not depend on the worker
// count or scheduling.
template <class F>
void parallel_blocks(int nblocks, F&& f) {
    const int workers = std::min(worker_cap(), nblocks);
    if (workers <= 1) {
        for (int b = 0; b < nblocks; ++b) f(b);
        return;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (int wkr = 0; wkr < workers; ++wkr) {
        futures.push_back(std::async(std::launch::async, [&, wkr]() {
            for (int b = wkr; b < nblocks; b += workers) f(b);
        }));
    }
    for (auto& fut : futures) fut.get();
}

// Order-independent reduction: pairwise summation in index order.
inline double pairwise_sum(std::vector<double> v) {
    if (v.empty()) return 0.0;
    while (v.size() > 1) {
        std::vector<double> next;
        next.reserve((v.size() + 1) / 2);
        for (size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] + v[i + 1]);
        if (v.size() % 2 == 1) next.push_back(v.back());
        v = std::move(next);
    }
    return v[0];
}

// SplitMix64, for deriving independent per-block seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace rsfactor
