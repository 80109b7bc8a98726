#include "tempus/order_core.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace tempus {

const char* rel4_token(Rel4 r) {
    switch (r) {
    case Rel4::LT: return "lt";
    case Rel4::GT: return "gt";
    case Rel4::EQ: return "eq";
    case Rel4::INC: return "inc";
    }
    return "inc"; // unreachable
}

std::optional<Rel4> rel4_from_token(const std::string& tok) {
    if (tok == "lt") return Rel4::LT;
    if (tok == "gt") return Rel4::GT;
    if (tok == "eq") return Rel4::EQ;
    if (tok == "inc") return Rel4::INC;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// PartialOrder
// ---------------------------------------------------------------------------

int PartialOrder::index_of(int id) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), id);
    if (it == elements_.end() || *it != id) return -1;
    return static_cast<int>(it - elements_.begin());
}

bool PartialOrder::le(int a, int b) const {
    int i = index_of(a);
    int j = index_of(b);
    if (i < 0) throw UnknownElement("unknown element id " + std::to_string(a));
    if (j < 0) throw UnknownElement("unknown element id " + std::to_string(b));
    return le_idx(i, j);
}

PartialOrder make_partial_order(std::vector<int> elements,
                                const std::vector<std::pair<int, int>>& le_pairs) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    const std::size_t n = elements.size();
    if (n > 64) throw SizeLimitExceeded("partial orders are limited to 64 elements");

    auto index_of = [&](int id) {
        auto it = std::lower_bound(elements.begin(), elements.end(), id);
        if (it == elements.end() || *it != id)
            throw UnknownElement("unknown element id " + std::to_string(id));
        return static_cast<int>(it - elements.begin());
    };

    std::vector<std::uint64_t> rows(n, 0);
    for (std::size_t i = 0; i < n; ++i) rows[i] |= std::uint64_t{1} << i;
    for (const auto& [a, b] : le_pairs) rows[static_cast<std::size_t>(index_of(a))] |= std::uint64_t{1} << index_of(b);

    // Warshall closure on bit rows.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if ((rows[i] >> k) & 1u) rows[i] |= rows[k];

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (((rows[i] >> j) & 1u) && ((rows[j] >> i) & 1u))
                throw CycleError("closure relates elements " + std::to_string(elements[i]) +
                                 " and " + std::to_string(elements[j]) + " both ways");

    return PartialOrder(std::move(elements), std::move(rows));
}

Rel4 induced_relation(const PartialOrder& P, int a, int b) {
    bool ab = P.le(a, b);
    bool ba = P.le(b, a);
    if (ab && ba) return Rel4::EQ;
    if (ab) return Rel4::LT;
    if (ba) return Rel4::GT;
    return Rel4::INC;
}

PartialOrder restrict_order(const PartialOrder& P, const std::vector<int>& keep) {
    std::vector<int> ids(keep);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<int> idx;
    idx.reserve(ids.size());
    for (int id : ids) {
        int i = P.index_of(id);
        if (i < 0) throw UnknownElement("unknown element id " + std::to_string(id));
        idx.push_back(i);
    }
    std::vector<std::uint64_t> rows(ids.size(), 0);
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = 0; b < ids.size(); ++b)
            if (P.le_idx(idx[a], idx[b])) rows[a] |= std::uint64_t{1} << b;
    return PartialOrder(std::move(ids), std::move(rows));
}

// ---------------------------------------------------------------------------
// POTInstance
// ---------------------------------------------------------------------------

RelSet POTInstance::mask(int i, int j) const {
    if (i == j) return rel_bit(Rel4::EQ);
    bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = constraints.find({i, j});
    RelSet m = (it == constraints.end()) ? kRelSetFull : it->second;
    return flip ? converse_set(m) : m;
}

POTInstance sub_instance(const POTInstance& I, const std::vector<int>& X) {
    std::vector<int> vars(X);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    POTInstance out;
    out.n = static_cast<int>(vars.size());
    for (int a = 0; a < out.n; ++a)
        for (int b = a + 1; b < out.n; ++b) {
            auto it = I.constraints.find({vars[a], vars[b]});
            if (it != I.constraints.end()) out.constraints[{a, b}] = it->second;
        }
    return out;
}

// ---------------------------------------------------------------------------
// AtomicScenario
// ---------------------------------------------------------------------------

std::size_t AtomicScenario::pair_index(int n, int i, int j) {
    return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

Rel4 AtomicScenario::at(int i, int j) const {
    if (i == j) return Rel4::EQ;
    if (i < j) return rel[pair_index(n, i, j)];
    return converse(rel[pair_index(n, j, i)]);
}

void AtomicScenario::set(int i, int j, Rel4 r) {
    if (i < j)
        rel[pair_index(n, i, j)] = r;
    else
        rel[pair_index(n, j, i)] = converse(r);
}

bool scenario_realizable(const AtomicScenario& s) {
    const int n = s.n;
    // EQ is transitive (it is symmetric and reflexive by representation).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (s.at(i, j) == Rel4::EQ && s.at(j, k) == Rel4::EQ && s.at(i, k) != Rel4::EQ)
                    return false;
            }
    // Relations are congruent under EQ.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || s.at(i, j) != Rel4::EQ) continue;
            for (int w = 0; w < n; ++w) {
                if (w == i || w == j) continue;
                if (s.at(i, w) != s.at(j, w)) return false;
            }
        }
    // LT is transitive (LT chains may not end in EQ/INC/GT).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (s.at(i, j) == Rel4::LT && s.at(j, k) == Rel4::LT && s.at(i, k) != Rel4::LT)
                    return false;
            }
    return true;
}

bool satisfies_pot(const AtomicScenario& s, const POTInstance& I) {
    for (const auto& [pair, set] : I.constraints) {
        if (!rel_in(set, s.at(pair.first, pair.second))) return false;
    }
    return true;
}

PartialOrder scenario_quotient(const AtomicScenario& s) {
    const int n = s.n;
    std::vector<int> rep(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rep[static_cast<std::size_t>(i)] = i;
        for (int j = 0; j < i; ++j)
            if (s.at(j, i) == Rel4::EQ) {
                rep[static_cast<std::size_t>(i)] = rep[static_cast<std::size_t>(j)];
                break;
            }
    }
    std::vector<int> reps;
    for (int i = 0; i < n; ++i)
        if (rep[static_cast<std::size_t>(i)] == i) reps.push_back(i);
    std::vector<std::pair<int, int>> lt_pairs;
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = 0; b < reps.size(); ++b)
            if (a != b && s.at(reps[a], reps[b]) == Rel4::LT) lt_pairs.emplace_back(reps[a], reps[b]);
    return make_partial_order(reps, lt_pairs);
}

// ---------------------------------------------------------------------------
// Effective width
// ---------------------------------------------------------------------------

namespace {

// Exhaustive labeled-partition search over subsets of P, memoized per subset.
class WidthSearch {
public:
    WidthSearch(const PartialOrder& P, int k) : P_(P), k_(k), n_(static_cast<int>(P.size())) {
        lt_.assign(static_cast<std::size_t>(n_) * n_, false);
        inc_.assign(static_cast<std::size_t>(n_) * n_, false);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                bool ij = P.le_idx(i, j), ji = P.le_idx(j, i);
                lt_[static_cast<std::size_t>(i) * n_ + j] = ij && !ji;
                inc_[static_cast<std::size_t>(i) * n_ + j] = !ij && !ji;
            }
    }

    bool ok(std::uint64_t mask) {
        if (popcount(mask) <= 1) return true;
        auto it = memo_.find(mask);
        if (it != memo_.end()) return it->second;
        memo_[mask] = false; // guards against re-entry; overwritten below
        std::vector<int> idx;
        for (int i = 0; i < n_; ++i)
            if ((mask >> i) & 1u) idx.push_back(i);
        std::vector<int> label(idx.size(), 0);
        bool res = search(idx, label, 0);
        memo_[mask] = res;
        return res;
    }

    // Attempts to build one witness decomposition for the subset, expressed in
    // element ids of P.
    std::optional<WaistDecomposition> decompose(std::uint64_t mask);

private:
    static int popcount(std::uint64_t v) { return __builtin_popcountll(v); }
    bool lt(int i, int j) const { return lt_[static_cast<std::size_t>(i) * n_ + j]; }
    bool inc(int i, int j) const { return inc_[static_cast<std::size_t>(i) * n_ + j]; }

    // label: 0..k-1 waist block, k lower, k+1 upper
    bool search(const std::vector<int>& idx, std::vector<int>& label, std::size_t at) {
        if (at == idx.size()) return check(idx, label, nullptr);
        for (int l = 0; l < k_ + 2; ++l) {
            label[at] = l;
            // Eager cross-block incomparability against earlier elements.
            if (l < k_) {
                bool bad = false;
                for (std::size_t e = 0; e < at && !bad; ++e)
                    if (label[e] < k_ && label[e] != l && !inc(idx[e], idx[at])) bad = true;
                if (bad) continue;
            }
            if (search(idx, label, at + 1)) return true;
        }
        return false;
    }

    // Verifies conditions 1-6 for a full labeling; when out != nullptr also
    // requires child decompositions and assembles the witness node.
    bool check(const std::vector<int>& idx, const std::vector<int>& label, WaistDecomposition* out);

    const PartialOrder& P_;
    int k_;
    int n_;
    std::vector<bool> lt_, inc_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

bool WidthSearch::check(const std::vector<int>& idx, const std::vector<int>& label,
                        WaistDecomposition* out) {
    const std::size_t m = idx.size();
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k_));
    std::vector<int> lower, upper;
    for (std::size_t e = 0; e < m; ++e) {
        if (label[e] < k_)
            blocks[static_cast<std::size_t>(label[e])].push_back(idx[e]);
        else if (label[e] == k_)
            lower.push_back(idx[e]);
        else
            upper.push_back(idx[e]);
    }

    int nonempty_parts = static_cast<int>(!lower.empty()) + static_cast<int>(!upper.empty());
    for (const auto& b : blocks) nonempty_parts += static_cast<int>(!b.empty());
    if (m >= 2 && nonempty_parts < 2) return false; // condition 1

    // Parts hold row indices of P_ throughout; ids appear only in the witness.
    // condition 6
    for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t b = a + 1; b < blocks.size(); ++b)
            for (int x : blocks[a])
                for (int y : blocks[b])
                    if (!inc(x, y)) return false;

    auto strictly_below_some_block = [&](int x) {
        for (const auto& blk : blocks) {
            if (blk.empty()) continue;
            bool all = true;
            for (int y : blk)
                if (!lt(x, y)) { all = false; break; }
            if (all) return true;
        }
        return false;
    };
    auto strictly_above_some_block = [&](int x) {
        for (const auto& blk : blocks) {
            if (blk.empty()) continue;
            bool all = true;
            for (int y : blk)
                if (!lt(y, x)) { all = false; break; }
            if (all) return true;
        }
        return false;
    };

    for (int x : lower)
        if (!strictly_below_some_block(x)) return false; // condition 2
    for (int x : upper)
        if (!strictly_above_some_block(x)) return false; // condition 3

    // condition 4
    for (int x : lower)
        for (int y : upper) {
            if (!P_.le_idx(x, y)) continue;
            bool found = false;
            for (const auto& blk : blocks) {
                if (blk.empty()) continue;
                bool all = true;
                for (int z : blk)
                    if (!(P_.le_idx(x, z) && P_.le_idx(z, y))) { all = false; break; }
                if (all) { found = true; break; }
            }
            if (!found) return false;
        }

    auto part_mask = [&](const std::vector<int>& part) {
        std::uint64_t pm = 0;
        for (int i : part) pm |= std::uint64_t{1} << i;
        return pm;
    };

    // condition 5
    for (const auto& blk : blocks)
        if (blk.size() >= 2 && !ok(part_mask(blk))) return false;
    if (lower.size() >= 2 && !ok(part_mask(lower))) return false;
    if (upper.size() >= 2 && !ok(part_mask(upper))) return false;

    if (out != nullptr) {
        auto ids_of = [&](const std::vector<int>& part) {
            std::vector<int> ids;
            ids.reserve(part.size());
            for (int i : part) ids.push_back(P_.elements()[static_cast<std::size_t>(i)]);
            return ids;
        };
        out->waist.clear();
        out->waist_children.clear();
        for (const auto& blk : blocks) {
            if (blk.empty()) continue;
            out->waist.push_back(ids_of(blk));
            if (blk.size() >= 2) {
                auto child = decompose(part_mask(blk));
                if (!child) return false;
                out->waist_children.push_back(
                    std::make_unique<WaistDecomposition>(std::move(*child)));
            } else {
                out->waist_children.push_back(nullptr);
            }
        }
        out->lower = ids_of(lower);
        out->upper = ids_of(upper);
        if (lower.size() >= 2) {
            auto child = decompose(part_mask(lower));
            if (!child) return false;
            out->lower_child = std::make_unique<WaistDecomposition>(std::move(*child));
        }
        if (upper.size() >= 2) {
            auto child = decompose(part_mask(upper));
            if (!child) return false;
            out->upper_child = std::make_unique<WaistDecomposition>(std::move(*child));
        }
    }
    return true;
}

std::optional<WaistDecomposition> WidthSearch::decompose(std::uint64_t mask) {
    if (popcount(mask) <= 1) return WaistDecomposition{}; // leaf
    if (!ok(mask)) return std::nullopt;
    std::vector<int> idx;
    for (int i = 0; i < n_; ++i)
        if ((mask >> i) & 1u) idx.push_back(i);
    // Re-run the labeling search, this time materializing the witness.
    std::vector<int> label(idx.size(), 0);
    WaistDecomposition node;
    std::function<bool(std::size_t)> go = [&](std::size_t at) -> bool {
        if (at == idx.size()) return check(idx, label, &node);
        for (int l = 0; l < k_ + 2; ++l) {
            label[at] = l;
            node = WaistDecomposition{};
            if (go(at + 1)) return true;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return node;
}

} // namespace

bool effective_width_at_most(const PartialOrder& P, int k, std::size_t cap) {
    if (P.size() > cap)
        throw SizeLimitExceeded("effective-width search is capped at " + std::to_string(cap) +
                                " elements");
    if (P.size() <= 1) return true;
    WidthSearch search(P, k);
    std::uint64_t all = (P.size() == 64) ? ~std::uint64_t{0}
                                         : ((std::uint64_t{1} << P.size()) - 1);
    return search.ok(all);
}

std::optional<WaistDecomposition> effective_width_decompose(const PartialOrder& P, int k,
                                                            std::size_t cap) {
    if (P.size() > cap)
        throw SizeLimitExceeded("effective-width search is capped at " + std::to_string(cap) +
                                " elements");
    WidthSearch search(P, k);
    std::uint64_t all = (P.size() == 64) ? ~std::uint64_t{0}
                                         : ((std::uint64_t{1} << P.size()) - 1);
    if (P.size() <= 1) return WaistDecomposition{};
    return search.decompose(all);
}

namespace {

bool certificate_node_ok(const PartialOrder& P, int k, const WaistDecomposition& node) {
    if (node.is_leaf()) return P.size() <= 1;
    if (static_cast<int>(node.waist.size()) > k) return false;
    if (node.waist_children.size() != node.waist.size()) return false;

    // The parts must partition the ground set.
    std::vector<int> all;
    for (const auto& blk : node.waist) all.insert(all.end(), blk.begin(), blk.end());
    all.insert(all.end(), node.lower.begin(), node.lower.end());
    all.insert(all.end(), node.upper.begin(), node.upper.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
    if (all != P.elements()) return false;

    auto lt = [&](int a, int b) { return P.le(a, b) && !P.le(b, a); };
    auto incp = [&](int a, int b) { return !P.le(a, b) && !P.le(b, a); };

    int nonempty_parts = static_cast<int>(!node.lower.empty()) + static_cast<int>(!node.upper.empty());
    for (const auto& blk : node.waist) nonempty_parts += static_cast<int>(!blk.empty());
    if (P.size() >= 2 && nonempty_parts < 2) return false; // condition 1

    for (std::size_t a = 0; a < node.waist.size(); ++a) // condition 6
        for (std::size_t b = a + 1; b < node.waist.size(); ++b)
            for (int x : node.waist[a])
                for (int y : node.waist[b])
                    if (!incp(x, y)) return false;

    auto below_some = [&](int x) {
        for (const auto& blk : node.waist) {
            if (blk.empty()) continue;
            bool allb = true;
            for (int y : blk)
                if (!lt(x, y)) { allb = false; break; }
            if (allb) return true;
        }
        return false;
    };
    auto above_some = [&](int x) {
        for (const auto& blk : node.waist) {
            if (blk.empty()) continue;
            bool allb = true;
            for (int y : blk)
                if (!lt(y, x)) { allb = false; break; }
            if (allb) return true;
        }
        return false;
    };
    for (int x : node.lower)
        if (!below_some(x)) return false; // condition 2
    for (int x : node.upper)
        if (!above_some(x)) return false; // condition 3

    for (int x : node.lower) // condition 4
        for (int y : node.upper) {
            if (!P.le(x, y)) continue;
            bool found = false;
            for (const auto& blk : node.waist) {
                if (blk.empty()) continue;
                bool allb = true;
                for (int z : blk)
                    if (!(P.le(x, z) && P.le(z, y))) { allb = false; break; }
                if (allb) { found = true; break; }
            }
            if (!found) return false;
        }

    // condition 5, recursively through the supplied children
    auto child_ok = [&](const std::vector<int>& part, const WaistDecomposition* child) {
        if (child == nullptr) return part.size() <= 1;
        return certificate_node_ok(restrict_order(P, part), k, *child);
    };
    for (std::size_t i = 0; i < node.waist.size(); ++i)
        if (!child_ok(node.waist[i], node.waist_children[i].get())) return false;
    if (!child_ok(node.lower, node.lower_child.get())) return false;
    if (!child_ok(node.upper, node.upper_child.get())) return false;
    return true;
}

} // namespace

bool effective_width_certificate_check(const PartialOrder& P, int k,
                                       const WaistDecomposition& cert) {
    return certificate_node_ok(P, k, cert);
}

} // namespace tempus
