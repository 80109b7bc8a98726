#include "tempus/gen.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tempus/ia_solver.hpp"
#include "tempus/rng.hpp"

namespace tempus {
namespace {

int clamp_bound(int n, int k) {
    if (k < 1) throw std::invalid_argument("bound k must be at least 1");
    return std::min(k, std::max(n, 1));
}

// ---------------------------------------------------------------------------
// Order scenarios from uniform waist layers.
//
// A region either collapses to one equality class or splits into waist
// blocks, a lower side, and an upper side with uniform relations
// lower < every block < upper, blocks pairwise incomparable, lower < upper.
// Such layered patterns are always realizable, and the split is itself a
// decomposition witness of width <= k, so the produced scenario's quotient
// stays within the bound by construction.
// ---------------------------------------------------------------------------

void gen_order_region(const std::vector<int>& region, int k, SplitMix64& rng,
                      AtomicScenario& sc) {
    const std::size_t m = region.size();
    if (m <= 1) return;
    if (rng.coin(0.18)) {
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) sc.set(region[a], region[b], Rel4::EQ);
        return;
    }

    const int max_blocks = std::min<int>(k, static_cast<int>(m));
    std::vector<std::vector<int>> blocks;
    std::vector<int> lo, up;
    for (int attempt = 0; attempt < 12; ++attempt) {
        blocks.assign(static_cast<std::size_t>(1 + rng.below(
                          static_cast<std::uint64_t>(max_blocks))),
                      {});
        lo.clear();
        up.clear();
        for (int v : region) {
            const std::uint64_t r = rng.below(blocks.size() + 2);
            if (r < blocks.size())
                blocks[static_cast<std::size_t>(r)].push_back(v);
            else if (r == blocks.size())
                lo.push_back(v);
            else
                up.push_back(v);
        }
        blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                    [](const std::vector<int>& b) { return b.empty(); }),
                     blocks.end());
        const std::size_t parts =
            blocks.size() + (lo.empty() ? 0 : 1) + (up.empty() ? 0 : 1);
        if (!blocks.empty() && parts >= 2) break;
        blocks.clear();
    }
    if (blocks.empty()) {
        // Guaranteed legal split: one singleton block, the rest below it.
        blocks.assign(1, {region[0]});
        lo.assign(region.begin() + 1, region.end());
        up.clear();
    }

    auto fix_pair = [&](int a, int b, Rel4 r) { sc.set(a, b, r); };
    for (std::size_t s = 0; s < blocks.size(); ++s)
        for (std::size_t t = s + 1; t < blocks.size(); ++t)
            for (int a : blocks[s])
                for (int b : blocks[t]) fix_pair(a, b, Rel4::INC);
    for (int x : lo) {
        for (const auto& blk : blocks)
            for (int u : blk) fix_pair(x, u, Rel4::LT);
        for (int y : up) fix_pair(x, y, Rel4::LT);
    }
    for (int y : up)
        for (const auto& blk : blocks)
            for (int u : blk) fix_pair(y, u, Rel4::GT);

    for (const auto& blk : blocks) gen_order_region(blk, k, rng, sc);
    gen_order_region(lo, k, rng, sc);
    gen_order_region(up, k, rng, sc);
}

RelSet widen_rel(Rel4 realized, SplitMix64& rng, double extra_p) {
    RelSet msk = rel_bit(realized);
    for (int r = 0; r < 4; ++r)
        if (static_cast<Rel4>(r) != realized && rng.coin(extra_p))
            msk |= rel_bit(static_cast<Rel4>(r));
    return msk;
}

RelSet exclude_rel(Rel4 realized, SplitMix64& rng) {
    RelSet msk = 0;
    for (int r = 0; r < 4; ++r)
        if (static_cast<Rel4>(r) != realized && rng.coin(0.5))
            msk |= rel_bit(static_cast<Rel4>(r));
    if (msk == 0) {
        const auto pick = static_cast<int>(rng.below(3));
        int seen = 0;
        for (int r = 0; r < 4; ++r)
            if (static_cast<Rel4>(r) != realized && seen++ == pick) msk = rel_bit(static_cast<Rel4>(r));
    }
    return msk;
}

IaRelSet widen_ia(BasicRel realized, SplitMix64& rng, double extra_p) {
    IaRelSet msk = ia_bit(realized);
    for (int r = 0; r < kBasicRelCount; ++r)
        if (static_cast<BasicRel>(r) != realized && rng.coin(extra_p))
            msk |= ia_bit(static_cast<BasicRel>(r));
    return msk;
}

IaRelSet exclude_ia(BasicRel realized, SplitMix64& rng) {
    IaRelSet msk = 0;
    for (int r = 0; r < kBasicRelCount; ++r)
        if (static_cast<BasicRel>(r) != realized && rng.coin(0.3))
            msk |= ia_bit(static_cast<BasicRel>(r));
    if (msk == 0) {
        int r = static_cast<int>(rng.below(kBasicRelCount));
        if (static_cast<BasicRel>(r) == realized) r = (r + 1) % kBasicRelCount;
        msk = ia_bit(static_cast<BasicRel>(r));
    }
    return msk;
}

} // namespace

POTInstance gen_pot(int n, int k, std::uint64_t seed, bool unsat_mix) {
    if (n < 0 || n > 64) throw std::invalid_argument("n must be between 0 and 64");
    const int bound = clamp_bound(n, k);
    SplitMix64 rng(seed);

    AtomicScenario sc(n);
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    gen_order_region(all, bound, rng, sc);

    POTInstance I;
    I.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng.coin(0.25)) continue; // leave the pair unconstrained
            const RelSet msk = widen_rel(sc.at(i, j), rng, 0.35);
            if (msk != kRelSetFull) I.constraints[{i, j}] = msk;
        }
    if (unsat_mix && n >= 2) {
        const int flips = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                                  std::max(1, n / 3))));
        for (int f = 0; f < flips; ++f) {
            const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (i == j) j = (j + 1) % n;
            const int a = std::min(i, j), b = std::max(i, j);
            I.constraints[{a, b}] = exclude_rel(sc.at(a, b), rng);
        }
    }
    return I;
}

IAInstance gen_ia(int n, int k, std::uint64_t seed, bool unsat_mix) {
    if (n < 0 || n > 64) throw std::invalid_argument("n must be between 0 and 64");
    const int bound = clamp_bound(n, k);
    SplitMix64 rng(seed);

    IAInstance free_inst;
    free_inst.n = n;

    // Random allowance-respecting sweep; the recorded cells are the witness.
    SweepState st = sweep_start(free_inst);
    const std::uint64_t all = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
    while (st.closed != all) {
        std::uint64_t open_union = 0;
        for (std::uint64_t g : st.groups) open_union |= g;
        std::vector<int> unopened_ids;
        for (int i = 0; i < n; ++i)
            if ((st.unopened >> i) & 1u) unopened_ids.push_back(i);

        bool moved = false;
        for (int attempt = 0; attempt < 20 && !moved; ++attempt) {
            std::uint64_t xm = 0;
            for (int i = 0; i < n; ++i)
                if (((open_union >> i) & 1u) && rng.coin(0.5)) xm |= std::uint64_t{1} << i;
            int max_y = bound - std::popcount(open_union & ~xm);
            for (std::size_t g = 0; g < st.groups.size(); ++g)
                if ((st.groups[g] & ~xm) != 0) max_y = std::min(max_y, st.budgets[g]);
            max_y = std::min<int>(max_y, static_cast<int>(unopened_ids.size()));
            std::uint64_t y = 0;
            if (max_y > 0) {
                const int ny = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_y) + 1));
                std::vector<int> pool = unopened_ids;
                for (int c = 0; c < ny; ++c) {
                    const auto pick = static_cast<std::size_t>(rng.below(pool.size()));
                    y |= std::uint64_t{1} << pool[pick];
                    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
                }
            }
            if (xm == 0 && y == 0) continue;
            auto nxt = sweep_step(free_inst, bound, st, xm, y);
            if (!nxt) continue;
            st = std::move(*nxt);
            cells.emplace_back(xm, y);
            moved = true;
        }
        if (!moved) {
            // Always-legal fallback: close everything open, else open one.
            std::uint64_t xm = open_union, y = 0;
            if (xm == 0) y = std::uint64_t{1} << unopened_ids.front();
            auto nxt = sweep_step(free_inst, bound, st, xm, y);
            st = std::move(*nxt);
            cells.emplace_back(xm, y);
        }
    }

    std::vector<std::vector<int>> point_cells;
    point_cells.reserve(cells.size());
    for (const auto& [xm, y] : cells) {
        std::vector<int> cell;
        for (int i = 0; i < n; ++i)
            if ((xm >> i) & 1u) cell.push_back(ia_end(i));
        for (int i = 0; i < n; ++i)
            if ((y >> i) & 1u) cell.push_back(ia_start(i));
        std::sort(cell.begin(), cell.end());
        point_cells.push_back(std::move(cell));
    }
    const OrderedPartition witness = OrderedPartition::from_cells(n, point_cells);

    IAInstance I;
    I.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng.coin(0.25)) continue;
            const IaRelSet msk = widen_ia(basic_relation_of(witness, i, j), rng, 0.25);
            if (msk != kIaRelSetFull) I.constraints[{i, j}] = msk;
        }
    if (unsat_mix && n >= 2) {
        const int flips = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                                  std::max(1, n / 3))));
        for (int f = 0; f < flips; ++f) {
            const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (i == j) j = (j + 1) % n;
            const int a = std::min(i, j), b = std::max(i, j);
            I.constraints[{a, b}] = exclude_ia(basic_relation_of(witness, a, b), rng);
        }
    }
    return I;
}

} // namespace tempus
