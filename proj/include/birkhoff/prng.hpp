#pragma once

#include <cstdint>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/rational.hpp"

namespace birkhoff {

// Deterministic cross-platform sampling. Standard-library distributions are
// implementation-defined, so probe witnesses would not reproduce across
// toolchains; splitmix64 with explicit rejection sampling is fixed forever.
class Sampler {
public:
    // Independent substream per (seed, stream) pair: probe trial t uses
    // stream t, so adding trials never perturbs earlier ones.
    Sampler(std::uint64_t seed, std::uint64_t stream)
        : state_(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))) {
        next_u64();  // discard one output to decorrelate nearby seeds
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [lo, hi], inclusive, unbiased via rejection.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw InputError("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        const std::uint64_t limit = span * (UINT64_MAX / span);
        std::uint64_t r = next_u64();
        while (r >= limit) r = next_u64();
        return static_cast<int>(static_cast<std::int64_t>(lo) + static_cast<std::int64_t>(r % span));
    }

    // count pairwise distinct integers from [-range, range], drawn uniformly
    // with rejection on collision.
    std::vector<Rational> distinct_integers(int count, int range) {
        if (range < 0) throw InputError("sampling range must be >= 0");
        if (2 * range + 1 < count)
            throw InputError("sampling range too small for " + std::to_string(count) + " distinct coordinates");
        std::vector<int> drawn;
        while (static_cast<int>(drawn.size()) < count) {
            const int v = uniform_int(-range, range);
            bool fresh = true;
            for (int d : drawn)
                if (d == v) fresh = false;
            if (fresh) drawn.push_back(v);
        }
        std::vector<Rational> out;
        out.reserve(drawn.size());
        for (int d : drawn) out.emplace_back(d);
        return out;
    }

private:
    std::uint64_t state_;
};

}  // namespace birkhoff
