#ifndef CHOICELAB_RNG_HPP
#define CHOICELAB_RNG_HPP

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace choicelab {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// xoshiro256++, seeded through splitmix64. Uniform doubles use the usual
/// 53-bit construction, so streams are identical across platforms.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    bool coin() { return (next() & 1ull) != 0; }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

/// Independent substream seed for block `stream` of a run seeded with `seed`.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    uint64_t sm = seed ^ (0xA5A5A5A5DEADBEEFull + stream * 0x9E3779B97F4A7C15ull);
    return splitmix64(sm);
}

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHOICE_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs `per_sample(rng, counters)` exactly n times, split into fixed blocks
/// with per-block substreams. Counters are integer sums, so the result is
/// independent of the number of worker threads.
template <class Fn>
std::vector<uint64_t> mc_counts(uint64_t n, uint64_t seed, unsigned threads, size_t n_counters,
                                Fn&& per_sample) {
    const uint64_t block = 1ull << 16;
    const uint64_t nblocks = (n + block - 1) / block;
    const unsigned nt = std::max(1u, std::min<unsigned>(resolve_threads(threads),
                                                        static_cast<unsigned>(nblocks)));
    std::vector<std::vector<uint64_t>> partials(nt, std::vector<uint64_t>(n_counters, 0));
    std::atomic<uint64_t> next_block{0};
    auto worker = [&](unsigned tid) {
        auto& acc = partials[tid];
        for (;;) {
            const uint64_t b = next_block.fetch_add(1);
            if (b >= nblocks) break;
            Rng rng(derive_seed(seed, b));
            const uint64_t lo = b * block;
            const uint64_t hi = std::min(n, lo + block);
            for (uint64_t i = lo; i < hi; ++i) per_sample(rng, acc);
        }
    };
    if (nt == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    std::vector<uint64_t> total(n_counters, 0);
    for (const auto& p : partials)
        for (size_t i = 0; i < n_counters; ++i) total[i] += p[i];
    return total;
}

} // namespace choicelab

#endif
