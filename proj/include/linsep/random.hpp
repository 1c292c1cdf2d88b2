#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace linsep {

// Counter-based stream (Philox4x32-10). The draw sequence depends only on
// (seed, stream_index), so substreams can be handed to any worker.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed = 0, std::uint64_t stream_index = 0)
        : seed_(seed), stream_(stream_index)
    {
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    // Deterministic child stream; distinct i give distinct stream indices.
    RandomStream substream(std::uint64_t i) const;

    std::uint64_t next_u64();
    double uniform();  // open interval (0,1)
    double normal();   // Box-Muller, both variates used

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline constexpr std::uint64_t kDefaultChunk = 4096;

// Splits `total` draws into fixed chunks; chunk c gets base.substream(c) and
// results are merged in chunk order, so the answer does not depend on workers.
// fn(RandomStream&, std::uint64_t count) -> Acc, merge(Acc&, const Acc&).
template <class Acc, class Fn, class Merge>
Acc run_chunked(std::uint64_t total, unsigned workers, const RandomStream& base, Acc init, Fn fn, Merge merge,
                std::uint64_t chunk = kDefaultChunk)
{
    const std::uint64_t chunks = (total + chunk - 1) / chunk;
    std::vector<Acc> parts(chunks, init);
    auto work = [&](std::uint64_t c) {
        RandomStream s = base.substream(c);
        const std::uint64_t count = std::min(chunk, total - c * chunk);
        parts[c] = fn(s, count);
    };
    workers = std::max(1u, workers);
    if (workers == 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) work(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < std::min<std::uint64_t>(workers, chunks); ++w)
            pool.emplace_back([&] {
                for (std::uint64_t c = next++; c < chunks; c = next++) work(c);
            });
        for (auto& t : pool) t.join();
    }
    Acc out = init;
    for (const auto& p : parts) merge(out, p);
    return out;
}

}  // namespace linsep
