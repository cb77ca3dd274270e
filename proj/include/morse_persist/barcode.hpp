#pragma once

#include <algorithm>
#include <vector>

#include "morse_persist/errors.hpp"
#include "morse_persist/induced_homology.hpp"

namespace morse_persist {

// One bar of the interval decomposition: alive at levels [birth, death);
// death == -1 means the class survives to the end of the chain.
struct Bar {
    int dim;
    int birth;
    int death;

    friend bool operator==(const Bar&, const Bar&) = default;
    friend bool operator<(const Bar& a, const Bar& b) {
        auto key = [](const Bar& x) {
            return std::tuple(x.dim, x.birth, x.death < 0, x.death);
        };
        return key(a) < key(b);
    }
};

struct Barcode {
    std::vector<Bar> bars;

    long long alive_at(int dim, int level) const {
        long long n = 0;
        for (const Bar& b : bars)
            if (b.dim == dim && b.birth <= level && (b.death == -1 || level < b.death)) ++n;
        return n;
    }
};

// Rank-function persistence over the chain of induced homology maps:
// bar multiplicities come from ranks of the composite maps, exactly.
inline Barcode barcode(const std::vector<MorseGraph>& levels,
                       const std::vector<std::vector<int>>& vmaps) {
    detail::require(!levels.empty(), "barcode needs at least one level");
    detail::require(vmaps.size() + 1 == levels.size(),
                    "barcode needs one vertex map per consecutive level pair");
    int L = static_cast<int>(levels.size());

    Barcode out;
    for (int dim = 0; dim <= 1; ++dim) {
        std::vector<long long> dims(L);
        std::vector<RatMatrix> step(L - 1);
        for (int k = 0; k < L; ++k) {
            HomologySummary h = homology(levels[k]);
            dims[k] = dim == 0 ? h.h0 : h.h1;
        }
        for (int k = 0; k + 1 < L; ++k) {
            InducedHomology ih = induced_homology(levels[k], levels[k + 1], vmaps[k]);
            step[k] = dim == 0 ? ih.h0 : ih.h1;
        }
        // rank[i][j] of the composite map level i -> level j
        std::vector<std::vector<long long>> rank(L, std::vector<long long>(L, 0));
        for (int i = 0; i < L; ++i) {
            rank[i][i] = dims[i];
            RatMatrix composite = rat_identity(static_cast<std::size_t>(dims[i]));
            for (int j = i + 1; j < L; ++j) {
                composite = rat_mul(step[j - 1], composite);
                rank[i][j] = rat_rank(composite);
            }
        }
        auto r = [&](int i, int j) -> long long {
            if (i < 0) return 0;
            return rank[i][j];
        };
        for (int i = 0; i < L; ++i) {
            for (int j = i + 1; j < L; ++j) {
                long long mult = r(i, j - 1) - r(i, j) - (r(i - 1, j - 1) - r(i - 1, j));
                detail::require(mult >= 0, "bar multiplicities must be nonnegative");
                for (long long t = 0; t < mult; ++t) out.bars.push_back({dim, i, j});
            }
            long long inf = r(i, L - 1) - r(i - 1, L - 1);
            detail::require(inf >= 0, "bar multiplicities must be nonnegative");
            for (long long t = 0; t < inf; ++t) out.bars.push_back({dim, i, -1});
        }
        // consistency: bars alive at level k account for the whole space
        Barcode probe{out.bars};
        for (int k = 0; k < L; ++k)
            detail::require(probe.alive_at(dim, k) == dims[k],
                            "bar counts must match homology dimensions");
    }
    std::sort(out.bars.begin(), out.bars.end());
    return out;
}

}  // namespace morse_persist
