#include "tempus/ia_solver.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "tempus/order_core.hpp" // SizeLimitExceeded

namespace tempus {
namespace {

std::uint64_t all_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

int group_of(const std::vector<std::uint64_t>& groups, int interval) {
    for (std::size_t g = 0; g < groups.size(); ++g)
        if ((groups[g] >> interval) & 1u) return static_cast<int>(g);
    return -1;
}

bool pair_ok(const IAInstance& I, int u, int w, BasicRel r) { return ia_in(I.mask(u, w), r); }

// Overlap bounds never bite beyond n; clamping keeps allowances small.
int clamp_k(const IAInstance& I, int k) {
    if (k < 1) throw std::invalid_argument("overlap bound k must be at least 1");
    return std::min(k, std::max(I.n, 1));
}

class IaEngine {
public:
    IaEngine(const IAInstance& I, int k) : inst_(I), k_(k), all_(all_mask(I.n)) {
        if (I.n > 64) throw SizeLimitExceeded("solver supports at most 64 intervals");
    }

    SweepState start() const {
        SweepState st;
        st.unopened = all_;
        return st;
    }

    bool decide(const SweepState& st) {
        if (st.closed == all_) return true;
        const std::string key = state_key(st);
        auto it = dmemo_.find(key);
        if (it != dmemo_.end()) return it->second != 0;
        bool ok = for_each_move(st, [&](std::uint64_t, std::uint64_t, const SweepState& nxt) {
            return decide(nxt);
        });
        dmemo_[key] = ok ? 1 : 0;
        return ok;
    }

    std::uint64_t count(const SweepState& st) {
        if (st.closed == all_) return 1;
        const std::string key = state_key(st);
        auto it = cmemo_.find(key);
        if (it != cmemo_.end()) return it->second;
        std::uint64_t total = 0;
        for_each_move(st, [&](std::uint64_t, std::uint64_t, const SweepState& nxt) {
            const std::uint64_t sub = count(nxt);
            if (total + sub < total) throw std::overflow_error("run count exceeds 64 bits");
            total += sub;
            return false; // keep summing
        });
        cmemo_[key] = total;
        return total;
    }

    // Re-derive one accepting run; requires decide(start()).
    std::vector<std::pair<std::uint64_t, std::uint64_t>> witness_cells() {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
        SweepState st = start();
        while (st.closed != all_) {
            const bool found =
                for_each_move(st, [&](std::uint64_t xm, std::uint64_t y, const SweepState& nxt) {
                    if (!decide(nxt)) return false;
                    cells.emplace_back(xm, y);
                    st = nxt;
                    return true;
                });
            if (!found) throw std::logic_error("witness requested for a rejected instance");
        }
        return cells;
    }

private:
    const IAInstance& inst_;
    int k_;
    std::uint64_t all_;
    std::unordered_map<std::string, char> dmemo_;
    std::unordered_map<std::string, std::uint64_t> cmemo_;

    // The memo key is the exact state: the set of closed intervals plus the
    // open groups in opening order with their allowances (unopened follows
    // from the rest).  Future behavior depends on nothing else, so results
    // are a pure function of the key and the instance.
    static std::string state_key(const SweepState& st) {
        std::string s;
        s.reserve(8 + st.groups.size() * 9);
        for (int b = 0; b < 8; ++b) s.push_back(static_cast<char>((st.closed >> (8 * b)) & 0xFF));
        for (std::size_t g = 0; g < st.groups.size(); ++g) {
            for (int b = 0; b < 8; ++b)
                s.push_back(static_cast<char>((st.groups[g] >> (8 * b)) & 0xFF));
            s.push_back(static_cast<char>(st.budgets[g]));
        }
        return s;
    }

    // Enumerate the legal cells from a state in a fixed order: closing sets
    // first (descending subsets of the open union), then opening sets of
    // growing size up to the allowance-derived bound.  The callback returns
    // true to stop early (decision and witness searches).
    template <class F>
    bool for_each_move(const SweepState& st, F&& fn) {
        std::uint64_t open_union = 0;
        for (std::uint64_t g : st.groups) open_union |= g;

        std::vector<int> unopened_ids;
        for (int i = 0; i < inst_.n; ++i)
            if ((st.unopened >> i) & 1u) unopened_ids.push_back(i);

        std::uint64_t xm = open_union;
        while (true) {
            // Allowance-derived bound on how many intervals may open here.
            const int survivors = std::popcount(open_union & ~xm);
            int max_y = k_ - survivors;
            for (std::size_t g = 0; g < st.groups.size(); ++g)
                if ((st.groups[g] & ~xm) != 0) max_y = std::min(max_y, st.budgets[g]);
            max_y = std::min<int>(max_y, static_cast<int>(unopened_ids.size()));

            if (enum_openers(st, xm, unopened_ids, 0, 0, 0, max_y, fn)) return true;
            if (xm == 0) break;
            xm = (xm - 1) & open_union;
        }
        return false;
    }

    template <class F>
    bool enum_openers(const SweepState& st, std::uint64_t xm, const std::vector<int>& ids,
                      std::size_t from, std::uint64_t y, int ny, int max_y, F&& fn) {
        if (xm != 0 || ny != 0) {
            auto nxt = sweep_step(inst_, k_, st, xm, y);
            if (nxt && fn(xm, y, *nxt)) return true;
        }
        if (ny >= max_y) return false;
        for (std::size_t i = from; i < ids.size(); ++i)
            if (enum_openers(st, xm, ids, i + 1, y | (std::uint64_t{1} << ids[i]), ny + 1, max_y,
                             fn))
                return true;
        return false;
    }
};

} // namespace

SweepState sweep_start(const IAInstance& I) {
    SweepState st;
    st.unopened = all_mask(I.n);
    return st;
}

std::optional<SweepState> sweep_step(const IAInstance& I, int k, const SweepState& state,
                                     std::uint64_t x_minus, std::uint64_t y) {
    std::uint64_t open_union = 0;
    for (std::uint64_t g : state.groups) open_union |= g;
    if ((x_minus & ~open_union) != 0) return std::nullopt;
    if ((y & ~state.unopened) != 0) return std::nullopt;
    if (x_minus == 0 && y == 0) return std::nullopt;

    const int ny = std::popcount(y);
    const std::uint64_t survivors = open_union & ~x_minus;

    // Overlap allowances: the new group pays for the survivors and its
    // co-openers, surviving groups pay for the openers.
    int new_budget = 0;
    if (ny > 0) {
        new_budget = k - std::popcount(survivors) - ny;
        if (new_budget < 0) return std::nullopt;
    }
    std::vector<std::uint64_t> ngroups;
    std::vector<int> nbudgets;
    ngroups.reserve(state.groups.size() + 1);
    nbudgets.reserve(state.groups.size() + 1);
    for (std::size_t g = 0; g < state.groups.size(); ++g) {
        const std::uint64_t rem = state.groups[g] & ~x_minus;
        if (rem == 0) continue;
        const int b = state.budgets[g] - ny;
        if (b < 0) return std::nullopt;
        ngroups.push_back(rem);
        nbudgets.push_back(b);
    }
    if (ny > 0) {
        ngroups.push_back(y);
        nbudgets.push_back(new_budget);
    }

    // Relations determined by the closings in this cell, checked against the
    // instance.  Closing intervals' group ages decide starts/finishes versus
    // containment versus plain overlap; everything else is meets, precedes.
    for (int u = 0; u < I.n; ++u) {
        if (!((x_minus >> u) & 1u)) continue;
        const int gu = group_of(state.groups, u);
        for (int w = u + 1; w < I.n; ++w)
            if ((x_minus >> w) & 1u) {
                const int gw = group_of(state.groups, w);
                const BasicRel r =
                    gu == gw ? BasicRel::e : (gu < gw ? BasicRel::fi : BasicRel::f);
                if (!pair_ok(I, u, w, r)) return std::nullopt;
            }
        for (int w = 0; w < I.n; ++w) {
            if (w == u) continue;
            if ((y >> w) & 1u) {
                if (!pair_ok(I, u, w, BasicRel::m)) return std::nullopt;
            } else if ((survivors >> w) & 1u) {
                const int gw = group_of(state.groups, w);
                const BasicRel r = gu == gw ? BasicRel::s : (gu < gw ? BasicRel::o : BasicRel::d);
                if (!pair_ok(I, u, w, r)) return std::nullopt;
            } else if ((state.unopened >> w) & 1u) {
                if (!pair_ok(I, u, w, BasicRel::p)) return std::nullopt;
            }
        }
    }

    SweepState out;
    out.closed = state.closed | x_minus;
    out.groups = std::move(ngroups);
    out.budgets = std::move(nbudgets);
    out.unopened = state.unopened & ~y;
    return out;
}

bool ia_decide(const IAInstance& I, int k) {
    IaEngine eng(I, clamp_k(I, k));
    return eng.decide(eng.start());
}

std::uint64_t ia_count(const IAInstance& I, int k) {
    IaEngine eng(I, clamp_k(I, k));
    return eng.count(eng.start());
}

std::optional<OrderedPartition> ia_witness(const IAInstance& I, int k) {
    IaEngine eng(I, clamp_k(I, k));
    if (!eng.decide(eng.start())) return std::nullopt;
    const auto cells = eng.witness_cells();
    std::vector<std::vector<int>> point_cells;
    point_cells.reserve(cells.size());
    for (const auto& [xm, y] : cells) {
        std::vector<int> cell;
        for (int i = 0; i < I.n; ++i)
            if ((xm >> i) & 1u) cell.push_back(ia_end(i));
        for (int i = 0; i < I.n; ++i)
            if ((y >> i) & 1u) cell.push_back(ia_start(i));
        std::sort(cell.begin(), cell.end());
        point_cells.push_back(std::move(cell));
    }
    return OrderedPartition::from_cells(I.n, point_cells);
}

} // namespace tempus
