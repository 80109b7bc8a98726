#include "tempus/pot_solver.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace tempus {
namespace {

// 0-based bit layout of a position encoding e: bit 2s   <-> 1-based bit 2s+1
// ("strictly above lower temporary block s+1"), bit 2s+1 <-> 1-based bit
// 2s+2 ("strictly below upper temporary block s+1").
constexpr std::uint32_t odd_bits_mask(int k) {
    return 0x55555555u & ((k >= 16) ? 0xFFFFFFFFu : ((1u << (2 * k)) - 1u));
}
constexpr std::uint32_t even_bits_mask(int k) {
    return 0xAAAAAAAAu & ((k >= 16) ? 0xFFFFFFFFu : ((1u << (2 * k)) - 1u));
}

// Relations between two variables that are consistent with their (child)
// positions.  x < y forces every lower block below x to be below y and every
// upper block above y to be above x, hence the two set inclusions; EQ forces
// identical positions; INC is never constrained by positions.
RelSet allowed_rels(std::uint32_t ex, std::uint32_t ey, std::uint32_t om, std::uint32_t em) {
    RelSet s = rel_bit(Rel4::INC);
    if (ex == ey) s |= rel_bit(Rel4::EQ);
    const std::uint32_t ox = ex & om, oy = ey & om;
    const std::uint32_t ux = ex & em, uy = ey & em;
    if ((ox & ~oy) == 0 && (uy & ~ux) == 0) s |= rel_bit(Rel4::LT);
    if ((oy & ~ox) == 0 && (ux & ~uy) == 0) s |= rel_bit(Rel4::GT);
    return s;
}

// A call's region: variables (ascending global ids), their positions, and the
// tightened constraint masks for every local pair (a < b, oriented a -> b).
struct Node {
    std::vector<int> vars;
    std::vector<std::uint32_t> pos;
    std::vector<RelSet> masks;

    std::size_t size() const { return vars.size(); }
    std::size_t pair(std::size_t a, std::size_t b) const {
        return static_cast<std::size_t>(
            AtomicScenario::pair_index(static_cast<int>(vars.size()), static_cast<int>(a),
                                       static_cast<int>(b)));
    }
    RelSet mask(std::size_t a, std::size_t b) const { return masks[pair(a, b)]; }
};

// Role assignment produced by the partition enumerator, all in local indices.
// role values: >= 0 block slot, -2 lower side, -3 upper side.
struct Partition {
    std::vector<std::vector<int>> slots; // waist blocks, members ascending
    std::vector<int> lo;                 // variables placed below the waist
    std::vector<std::uint32_t> lo_b;     // per lo var: bitmask of blocks below it
    std::vector<int> up;                 // variables placed above the waist
    std::vector<std::uint32_t> up_a;     // per up var: bitmask of blocks above it
};

constexpr int kRoleLo = -2;
constexpr int kRoleUp = -3;

// Relation fixed between two local variables by a partition, or nullopt when
// the pair lands in the same child call.  Oriented a -> b.
std::optional<Rel4> fixed_rel(const Partition& p, const std::vector<int>& role,
                              const std::vector<int>& lo_pos, const std::vector<int>& up_pos,
                              int a, int b) {
    const int ra = role[static_cast<std::size_t>(a)];
    const int rb = role[static_cast<std::size_t>(b)];
    auto below_blocks = [&](int v) { // B set of a lower-side variable
        return p.lo_b[static_cast<std::size_t>(lo_pos[static_cast<std::size_t>(v)])];
    };
    auto above_blocks = [&](int v) { // A set of an upper-side variable
        return p.up_a[static_cast<std::size_t>(up_pos[static_cast<std::size_t>(v)])];
    };
    if (ra >= 0 && rb >= 0) {
        if (ra == rb) return std::nullopt; // same block child
        return Rel4::INC;                  // distinct blocks are incomparable
    }
    if (ra == kRoleLo && rb == kRoleLo) return std::nullopt;
    if (ra == kRoleUp && rb == kRoleUp) return std::nullopt;
    if (ra == kRoleLo && rb == kRoleUp)
        return (below_blocks(a) & above_blocks(b)) ? Rel4::LT : Rel4::INC;
    if (ra == kRoleUp && rb == kRoleLo)
        return (below_blocks(b) & above_blocks(a)) ? Rel4::GT : Rel4::INC;
    if (ra >= 0) { // a in a block, b on the lower or upper side
        if (rb == kRoleLo) return ((below_blocks(b) >> ra) & 1u) ? Rel4::GT : Rel4::INC;
        return ((above_blocks(b) >> ra) & 1u) ? Rel4::LT : Rel4::INC;
    }
    // b in a block, a on the lower or upper side.
    if (ra == kRoleLo) return ((below_blocks(a) >> rb) & 1u) ? Rel4::LT : Rel4::INC;
    return ((above_blocks(a) >> rb) & 1u) ? Rel4::GT : Rel4::INC;
}

class PotEngine {
public:
    PotEngine(const POTInstance& instance, int k,
              std::unordered_map<std::string, bool>* decide_table,
              std::unordered_map<std::string, std::unique_ptr<std::vector<std::string>>>*
                  count_table)
        : inst_(instance),
          k_(k),
          om_(odd_bits_mask(k)),
          em_(even_bits_mask(k)),
          decide_table_(decide_table),
          count_table_(count_table) {
        if (k < 1) throw std::invalid_argument("width bound k must be at least 1");
        if (k > kPotMaxK) throw SizeLimitExceeded("width bound k is capped at 8");
        if (instance.n > 64) throw SizeLimitExceeded("solver supports at most 64 variables");
    }

    Node top_node() const {
        Node node;
        node.vars.resize(static_cast<std::size_t>(inst_.n));
        for (int v = 0; v < inst_.n; ++v) node.vars[static_cast<std::size_t>(v)] = v;
        node.pos.assign(static_cast<std::size_t>(inst_.n), 0);
        fill_masks_from_instance(node);
        return node;
    }

    Node node_from_key(const WaistCallKey& key) const {
        const std::size_t want = std::size_t{1} << (2 * k_);
        if (key.sets.size() != want)
            throw std::invalid_argument("call key must hold exactly 4^k subsets");
        std::uint64_t seen = 0;
        Node node;
        for (std::size_t e = 0; e < key.sets.size(); ++e) {
            const std::uint64_t s = key.sets[e];
            if (s & seen) throw std::invalid_argument("call key subsets must be disjoint");
            seen |= s;
        }
        // Variables in ascending order regardless of position.
        for (int v = 0; v < 64; ++v) {
            if (!((seen >> v) & 1u)) continue;
            if (v >= inst_.n) throw std::invalid_argument("call key names an unknown variable");
            for (std::size_t e = 0; e < key.sets.size(); ++e)
                if ((key.sets[e] >> v) & 1u) {
                    node.vars.push_back(v);
                    node.pos.push_back(static_cast<std::uint32_t>(e));
                    break;
                }
        }
        fill_masks_from_instance(node);
        // Positions already fix relation sets among the region's variables;
        // fold them into the masks exactly as the recursion does on descent.
        const std::size_t m = node.size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                node.masks[node.pair(a, b)] &= allowed_rels(node.pos[a], node.pos[b], om_, em_);
        return node;
    }

    bool decide(const Node& node) {
        if (node.size() == 0) return true;
        const std::string key = node_key(node);
        auto it = decide_table_->find(key);
        if (it != decide_table_->end()) return it->second;
        bool ok = base_case_applies(node);
        if (!ok) {
            for_each_partition(node, [&](const Partition& p, const std::vector<int>& role,
                                         const std::vector<int>& lo_pos,
                                         const std::vector<int>& up_pos) {
                (void)role;
                (void)lo_pos;
                (void)up_pos;
                if (!children_accept(node, p)) return false;
                ok = true;
                return true; // stop enumerating
            });
        }
        (*decide_table_)[key] = ok;
        return ok;
    }

    const std::vector<std::string>& count(const Node& node) {
        const std::string key = node_key(node);
        auto it = count_table_->find(key);
        if (it != count_table_->end()) return *it->second;

        std::unordered_set<std::string> patterns;
        const std::size_t m = node.size();
        const std::size_t npairs = m < 2 ? 0 : m * (m - 1) / 2;
        const std::size_t nbytes = (npairs + 3) / 4;
        if (m == 0) {
            patterns.insert(std::string());
        } else {
            if (base_case_applies(node)) {
                std::string all_eq(nbytes, '\0');
                for (std::size_t pidx = 0; pidx < npairs; ++pidx)
                    write_code(all_eq, pidx, Rel4::EQ);
                patterns.insert(std::move(all_eq));
            }
            for_each_partition(node, [&](const Partition& p, const std::vector<int>& role,
                                         const std::vector<int>& lo_pos,
                                         const std::vector<int>& up_pos) {
                merge_partition_patterns(node, p, role, lo_pos, up_pos, nbytes, patterns);
                return false; // exhaust all partitions
            });
        }
        auto stored = std::make_unique<std::vector<std::string>>(patterns.begin(), patterns.end());
        std::sort(stored->begin(), stored->end());
        auto [pos, inserted] = count_table_->emplace(key, std::move(stored));
        (void)inserted;
        return *pos->second;
    }

    // Collect one accepted scenario's relations; requires decide(node).
    void witness(const Node& node, AtomicScenario& out) {
        const std::size_t m = node.size();
        if (m == 0) return;
        if (base_case_applies(node)) {
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b)
                    out.set(node.vars[a], node.vars[b], Rel4::EQ);
            return;
        }
        bool done = false;
        for_each_partition(node, [&](const Partition& p, const std::vector<int>& role,
                                     const std::vector<int>& lo_pos,
                                     const std::vector<int>& up_pos) {
            if (!children_accept(node, p)) return false;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b) {
                    auto r = fixed_rel(p, role, lo_pos, up_pos, static_cast<int>(a),
                                       static_cast<int>(b));
                    if (r) out.set(node.vars[a], node.vars[b], *r);
                }
            for (const auto& slot : p.slots) witness(make_block_child(node, slot), out);
            witness(make_lower_child(node, p), out);
            witness(make_upper_child(node, p), out);
            done = true;
            return true;
        });
        if (!done) throw std::logic_error("witness requested for a rejected call");
    }

    // Enumerate legal partitions into WaistPartition records (tests).
    std::vector<WaistPartition> list_partitions(const Node& node) {
        std::vector<WaistPartition> out;
        const std::size_t positions = std::size_t{1} << (2 * k_);
        for_each_partition(node, [&](const Partition& p, const std::vector<int>& role,
                                     const std::vector<int>& lo_pos,
                                     const std::vector<int>& up_pos) {
            (void)role;
            (void)lo_pos;
            (void)up_pos;
            WaistPartition wp;
            wp.n_w.assign(static_cast<std::size_t>(k_), 0);
            wp.n_lt.assign(positions, 0);
            wp.n_gt.assign(positions, 0);
            for (std::size_t s = 0; s < p.slots.size(); ++s)
                for (int lv : p.slots[s])
                    wp.n_w[s] |= std::uint64_t{1} << node.vars[static_cast<std::size_t>(lv)];
            for (std::size_t i = 0; i < p.lo.size(); ++i) {
                const int lv = p.lo[i];
                wp.n_lt[lower_child_pos(node.pos[static_cast<std::size_t>(lv)], p.lo_b[i])] |=
                    std::uint64_t{1} << node.vars[static_cast<std::size_t>(lv)];
            }
            for (std::size_t i = 0; i < p.up.size(); ++i) {
                const int lv = p.up[i];
                wp.n_gt[upper_child_pos(node.pos[static_cast<std::size_t>(lv)], p.up_a[i])] |=
                    std::uint64_t{1} << node.vars[static_cast<std::size_t>(lv)];
            }
            out.push_back(std::move(wp));
            return false;
        });
        return out;
    }

private:
    const POTInstance& inst_;
    int k_;
    std::uint32_t om_, em_;
    std::unordered_map<std::string, bool>* decide_table_;
    std::unordered_map<std::string, std::unique_ptr<std::vector<std::string>>>* count_table_;

    void fill_masks_from_instance(Node& node) const {
        const std::size_t m = node.size();
        node.masks.assign(m < 2 ? 0 : m * (m - 1) / 2, kRelSetFull);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                node.masks[node.pair(a, b)] = inst_.mask(node.vars[a], node.vars[b]);
    }

    static std::string node_key(const Node& node) {
        std::string s;
        s.reserve(1 + 3 * node.vars.size() + node.masks.size());
        s.push_back(static_cast<char>(node.vars.size()));
        for (std::size_t i = 0; i < node.vars.size(); ++i) {
            s.push_back(static_cast<char>(node.vars[i]));
            s.push_back(static_cast<char>(node.pos[i] & 0xFF));
            s.push_back(static_cast<char>((node.pos[i] >> 8) & 0xFF));
        }
        for (RelSet msk : node.masks) s.push_back(static_cast<char>(msk));
        return s;
    }

    // All variables share one position and every pair may be equal: accept
    // the all-equal scenario without further decomposition.
    static bool base_case_applies(const Node& node) {
        const std::size_t m = node.size();
        if (m == 0) return true;
        for (std::size_t i = 1; i < m; ++i)
            if (node.pos[i] != node.pos[0]) return false;
        for (RelSet msk : node.masks)
            if (!rel_in(msk, Rel4::EQ)) return false;
        return true;
    }

    static void write_code(std::string& pat, std::size_t pair_idx, Rel4 r) {
        const std::size_t byte = pair_idx / 4;
        const int shift = static_cast<int>((pair_idx % 4) * 2);
        pat[byte] = static_cast<char>(static_cast<unsigned char>(pat[byte]) |
                                      (static_cast<unsigned>(r) << shift));
    }

    // Child encodings: the lower child gains even bits (below new block s+1),
    // the upper child gains odd bits (above new block s+1); block children
    // restart at position zero because their members' positional constraints
    // were folded into the masks when this node was created.
    static std::uint32_t spread_even(std::uint32_t slots) {
        std::uint32_t e = 0;
        for (int s = 0; s < 16 && (slots >> s) != 0; ++s)
            if ((slots >> s) & 1u) e |= 1u << (2 * s + 1);
        return e;
    }
    static std::uint32_t spread_odd(std::uint32_t slots) {
        std::uint32_t e = 0;
        for (int s = 0; s < 16 && (slots >> s) != 0; ++s)
            if ((slots >> s) & 1u) e |= 1u << (2 * s);
        return e;
    }
    std::uint32_t lower_child_pos(std::uint32_t e, std::uint32_t b_set) const {
        return (e & om_) | spread_even(b_set);
    }
    std::uint32_t upper_child_pos(std::uint32_t e, std::uint32_t a_set) const {
        return (e & em_) | spread_odd(a_set);
    }

    // Oriented mask lookup: relation of local a toward local b, any order.
    static bool rel_ok(const Node& node, int a, int b, Rel4 r_a_to_b) {
        if (a < b)
            return rel_in(node.mask(static_cast<std::size_t>(a), static_cast<std::size_t>(b)),
                          r_a_to_b);
        return rel_in(node.mask(static_cast<std::size_t>(b), static_cast<std::size_t>(a)),
                      converse(r_a_to_b));
    }

    Node make_lower_child(const Node& node, const Partition& p) const {
        Node child;
        child.vars.reserve(p.lo.size());
        child.pos.reserve(p.lo.size());
        for (std::size_t i = 0; i < p.lo.size(); ++i) {
            child.vars.push_back(node.vars[static_cast<std::size_t>(p.lo[i])]);
            child.pos.push_back(
                lower_child_pos(node.pos[static_cast<std::size_t>(p.lo[i])], p.lo_b[i]));
        }
        inherit_masks(node, p.lo, child, true);
        return child;
    }
    Node make_upper_child(const Node& node, const Partition& p) const {
        Node child;
        child.vars.reserve(p.up.size());
        child.pos.reserve(p.up.size());
        for (std::size_t i = 0; i < p.up.size(); ++i) {
            child.vars.push_back(node.vars[static_cast<std::size_t>(p.up[i])]);
            child.pos.push_back(
                upper_child_pos(node.pos[static_cast<std::size_t>(p.up[i])], p.up_a[i]));
        }
        inherit_masks(node, p.up, child, true);
        return child;
    }
    Node make_block_child(const Node& node, const std::vector<int>& members) const {
        Node child;
        child.vars.reserve(members.size());
        for (int lv : members) child.vars.push_back(node.vars[static_cast<std::size_t>(lv)]);
        child.pos.assign(members.size(), 0); // fresh call, no enclosing waists
        inherit_masks(node, members, child, false);
        return child;
    }

    // Copy the parent's masks for the child's pairs; when tighten is set also
    // intersect with what the child positions allow (descent materializes the
    // positional constraints so deeper calls need only the masks).
    void inherit_masks(const Node& node, const std::vector<int>& locals, Node& child,
                       bool tighten) const {
        const std::size_t m = locals.size();
        child.masks.assign(m < 2 ? 0 : m * (m - 1) / 2, kRelSetFull);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                RelSet msk = node.mask(static_cast<std::size_t>(locals[a]),
                                       static_cast<std::size_t>(locals[b]));
                if (tighten) msk &= allowed_rels(child.pos[a], child.pos[b], om_, em_);
                child.masks[child.pair(a, b)] = msk;
            }
    }

    bool children_accept(const Node& node, const Partition& p) {
        for (const auto& slot : p.slots)
            if (!decide(make_block_child(node, slot))) return false;
        if (!decide(make_lower_child(node, p))) return false;
        return decide(make_upper_child(node, p));
    }

    void merge_partition_patterns(const Node& node, const Partition& p,
                                  const std::vector<int>& role, const std::vector<int>& lo_pos,
                                  const std::vector<int>& up_pos, std::size_t nbytes,
                                  std::unordered_set<std::string>& out) {
        const std::size_t m = node.size();
        std::string fixed(nbytes, '\0');
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                auto r = fixed_rel(p, role, lo_pos, up_pos, static_cast<int>(a),
                                   static_cast<int>(b));
                if (r) write_code(fixed, node.pair(a, b), *r);
            }

        // Child pattern sets plus the map from child pair index to node pair
        // index (both sides list variables ascending, so orientation holds).
        struct ChildPart {
            const std::vector<std::string>* set;
            std::vector<std::size_t> pair_map;
        };
        std::vector<ChildPart> parts;
        auto add_child = [&](const Node& child, const std::vector<int>& locals) {
            ChildPart cp;
            cp.set = &count(child);
            if (cp.set->empty()) return false;
            const std::size_t cm = locals.size();
            for (std::size_t a = 0; a < cm; ++a)
                for (std::size_t b = a + 1; b < cm; ++b)
                    cp.pair_map.push_back(node.pair(static_cast<std::size_t>(locals[a]),
                                                    static_cast<std::size_t>(locals[b])));
            parts.push_back(std::move(cp));
            return true;
        };
        for (const auto& slot : p.slots)
            if (!add_child(make_block_child(node, slot), slot)) return;
        if (!add_child(make_lower_child(node, p), p.lo)) return;
        if (!add_child(make_upper_child(node, p), p.up)) return;

        std::string pat = fixed;
        std::function<void(std::size_t)> emit = [&](std::size_t pi) {
            if (pi == parts.size()) {
                out.insert(pat);
                return;
            }
            const ChildPart& cp = parts[pi];
            for (const std::string& cpat : *cp.set) {
                for (std::size_t ci = 0; ci < cp.pair_map.size(); ++ci) {
                    const int cshift = static_cast<int>((ci % 4) * 2);
                    const auto code = static_cast<unsigned>(
                        (static_cast<unsigned char>(cpat[ci / 4]) >> cshift) & 0x3u);
                    const std::size_t np = cp.pair_map[ci];
                    const std::size_t byte = np / 4;
                    const int nshift = static_cast<int>((np % 4) * 2);
                    pat[byte] = static_cast<char>(
                        (static_cast<unsigned char>(pat[byte]) & ~(0x3u << nshift)) |
                        (code << nshift));
                }
                emit(pi + 1);
            }
        };
        emit(0);
    }

    // Enumerate every legal partition of the node.  Phase A assigns each
    // variable, in ascending order, to an existing block, to the next fresh
    // block (canonical slot order: blocks are numbered by their smallest
    // member), or to the lower/upper side.  Blocks may mix variables with
    // different positions: each node's masks already absorbed what its
    // positions allow, so nothing is lost when a block child restarts at
    // position zero.
    // Phase B picks the nonempty witness block sets for the lower and upper
    // variables.  Every relation a partition fixes is checked against the
    // masks as soon as both endpoints' choices are known, and same-child
    // pairs prune once their tightened mask becomes empty.
    //
    // The callback returns true to stop the enumeration (decision search).
    template <class Callback>
    bool for_each_partition(const Node& node, Callback&& cb) {
        const std::size_t m = node.size();
        if (m == 0) return false;
        Partition p;
        std::vector<int> role(m, -1);
        std::vector<int> lo_pos(m, -1), up_pos(m, -1);
        return assign_roles(node, p, role, lo_pos, up_pos, 0, cb);
    }

    template <class Callback>
    bool assign_roles(const Node& node, Partition& p, std::vector<int>& role,
                      std::vector<int>& lo_pos, std::vector<int>& up_pos, std::size_t v,
                      Callback&& cb) {
        const std::size_t m = node.size();
        if (v == m) {
            const std::size_t nblocks = p.slots.size();
            if (nblocks == 0) return false; // a step must name a waist
            if (nblocks == 1 && p.lo.empty() && p.up.empty())
                return false; // no progress: the base case owns one-part regions
            return choose_lo_sets(node, p, role, lo_pos, up_pos, 0, cb);
        }
        const int iv = static_cast<int>(v);

        // Cross-block pairs become incomparable; same-block pairs must still
        // admit some relation.
        auto slot_fits = [&](std::size_t s) -> bool {
            for (std::size_t u = 0; u < v; ++u) {
                if (role[u] < 0) continue;
                if (static_cast<std::size_t>(role[u]) == s) {
                    if (node.mask(u, v) == 0) return false;
                } else if (!rel_in(node.mask(u, v), Rel4::INC)) {
                    return false;
                }
            }
            return true;
        };

        for (std::size_t s = 0; s < p.slots.size(); ++s) {
            if (!slot_fits(s)) continue;
            role[v] = static_cast<int>(s);
            p.slots[s].push_back(iv);
            if (assign_roles(node, p, role, lo_pos, up_pos, v + 1, cb)) return true;
            p.slots[s].pop_back();
            role[v] = -1;
        }
        if (p.slots.size() < static_cast<std::size_t>(k_)) {
            const std::size_t s = p.slots.size();
            p.slots.emplace_back(1, iv);
            if (slot_fits(s)) {
                role[v] = static_cast<int>(s);
                if (assign_roles(node, p, role, lo_pos, up_pos, v + 1, cb)) return true;
                role[v] = -1;
            }
            p.slots.pop_back();
        }
        role[v] = kRoleLo;
        lo_pos[v] = static_cast<int>(p.lo.size());
        p.lo.push_back(iv);
        if (assign_roles(node, p, role, lo_pos, up_pos, v + 1, cb)) return true;
        p.lo.pop_back();
        lo_pos[v] = -1;
        role[v] = kRoleUp;
        up_pos[v] = static_cast<int>(p.up.size());
        p.up.push_back(iv);
        if (assign_roles(node, p, role, lo_pos, up_pos, v + 1, cb)) return true;
        p.up.pop_back();
        up_pos[v] = -1;
        role[v] = -1;
        return false;
    }

    template <class Callback>
    bool choose_lo_sets(const Node& node, Partition& p, std::vector<int>& role,
                        std::vector<int>& lo_pos, std::vector<int>& up_pos, std::size_t i,
                        Callback&& cb) {
        if (i == p.lo.size()) return choose_up_sets(node, p, role, lo_pos, up_pos, 0, cb);
        const int x = p.lo[i];
        const std::uint32_t full = (1u << p.slots.size()) - 1u;
        for (std::uint32_t bset = 1; bset <= full; ++bset) {
            bool ok = true;
            for (std::size_t s = 0; s < p.slots.size() && ok; ++s) {
                const Rel4 want = ((bset >> s) & 1u) ? Rel4::LT : Rel4::INC;
                for (int u : p.slots[s])
                    if (!rel_ok(node, x, u, want)) {
                        ok = false;
                        break;
                    }
            }
            // Tightened masks toward earlier lower variables must stay
            // satisfiable under the child positions.
            const std::uint32_t ex = lower_child_pos(node.pos[static_cast<std::size_t>(x)], bset);
            for (std::size_t j = 0; j < i && ok; ++j) {
                const int x2 = p.lo[j];
                const std::uint32_t ex2 =
                    lower_child_pos(node.pos[static_cast<std::size_t>(x2)], p.lo_b[j]);
                const auto a = static_cast<std::size_t>(std::min(x, x2));
                const auto b = static_cast<std::size_t>(std::max(x, x2));
                const RelSet tightened =
                    node.mask(a, b) &
                    allowed_rels(x < x2 ? ex : ex2, x < x2 ? ex2 : ex, om_, em_);
                if (tightened == 0) ok = false;
            }
            if (!ok) continue;
            p.lo_b.push_back(bset);
            if (choose_lo_sets(node, p, role, lo_pos, up_pos, i + 1, cb)) return true;
            p.lo_b.pop_back();
        }
        return false;
    }

    template <class Callback>
    bool choose_up_sets(const Node& node, Partition& p, std::vector<int>& role,
                        std::vector<int>& lo_pos, std::vector<int>& up_pos, std::size_t i,
                        Callback&& cb) {
        if (i == p.up.size()) return cb(p, role, lo_pos, up_pos);
        const int y = p.up[i];
        const std::uint32_t full = (1u << p.slots.size()) - 1u;
        for (std::uint32_t aset = 1; aset <= full; ++aset) {
            bool ok = true;
            for (std::size_t s = 0; s < p.slots.size() && ok; ++s) {
                const Rel4 want = ((aset >> s) & 1u) ? Rel4::GT : Rel4::INC;
                for (int u : p.slots[s])
                    if (!rel_ok(node, y, u, want)) {
                        ok = false;
                        break;
                    }
            }
            // Bridge rule: a lower variable sits below y exactly when some
            // new waist block separates them; otherwise they are incomparable.
            for (std::size_t j = 0; j < p.lo.size() && ok; ++j) {
                const int x = p.lo[j];
                const Rel4 want = (p.lo_b[j] & aset) ? Rel4::GT : Rel4::INC;
                if (!rel_ok(node, y, x, want)) ok = false;
            }
            const std::uint32_t ey = upper_child_pos(node.pos[static_cast<std::size_t>(y)], aset);
            for (std::size_t j = 0; j < i && ok; ++j) {
                const int y2 = p.up[j];
                const std::uint32_t ey2 =
                    upper_child_pos(node.pos[static_cast<std::size_t>(y2)], p.up_a[j]);
                const auto a = static_cast<std::size_t>(std::min(y, y2));
                const auto b = static_cast<std::size_t>(std::max(y, y2));
                const RelSet tightened =
                    node.mask(a, b) &
                    allowed_rels(y < y2 ? ey : ey2, y < y2 ? ey2 : ey, om_, em_);
                if (tightened == 0) ok = false;
            }
            if (!ok) continue;
            p.up_a.push_back(aset);
            if (choose_up_sets(node, p, role, lo_pos, up_pos, i + 1, cb)) return true;
            p.up_a.pop_back();
        }
        return false;
    }
};

int clamp_k(const POTInstance& I, int k) {
    if (k < 1) throw std::invalid_argument("width bound k must be at least 1");
    // Every quotient on n elements has effective width at most max(1, n), so
    // larger bounds are equivalent and only inflate the positional space.
    return std::min(k, std::max(I.n, 1));
}

} // namespace

PotDecideMemo::PotDecideMemo(const POTInstance& instance_, int k_)
    : instance(instance_), k(k_) {
    if (k_ < 1) throw std::invalid_argument("width bound k must be at least 1");
    if (k_ > kPotMaxK) throw SizeLimitExceeded("width bound k is capped at 8");
}

PotCountMemo::PotCountMemo(const POTInstance& instance_, int k_)
    : instance(instance_), k(k_) {
    if (k_ < 1) throw std::invalid_argument("width bound k must be at least 1");
    if (k_ > kPotMaxK) throw SizeLimitExceeded("width bound k is capped at 8");
}

bool waist_step(const WaistCallKey& key, PotDecideMemo& memo) {
    std::unordered_map<std::string, std::unique_ptr<std::vector<std::string>>> unused;
    PotEngine eng(memo.instance, memo.k, &memo.table, &unused);
    return eng.decide(eng.node_from_key(key));
}

std::uint64_t waist_step(const WaistCallKey& key, PotCountMemo& memo) {
    std::unordered_map<std::string, bool> unused;
    PotEngine eng(memo.instance, memo.k, &unused, &memo.table);
    return static_cast<std::uint64_t>(eng.count(eng.node_from_key(key)).size());
}

std::vector<WaistPartition> waist_partitions(const WaistCallKey& key, const POTInstance& I,
                                             int k) {
    std::unordered_map<std::string, bool> dt;
    std::unordered_map<std::string, std::unique_ptr<std::vector<std::string>>> ct;
    PotEngine eng(I, k, &dt, &ct);
    return eng.list_partitions(eng.node_from_key(key));
}

bool pot_decide(const POTInstance& I, int k) {
    std::unordered_map<std::string, bool> dt;
    std::unordered_map<std::string, std::unique_ptr<std::vector<std::string>>> ct;
    PotEngine eng(I, clamp_k(I, k), &dt, &ct);
    return eng.decide(eng.top_node());
}

std::uint64_t pot_count(const POTInstance& I, int k) {
    std::unordered_map<std::string, bool> dt;
    std::unordered_map<std::string, std::unique_ptr<std::vector<std::string>>> ct;
    PotEngine eng(I, clamp_k(I, k), &dt, &ct);
    return static_cast<std::uint64_t>(eng.count(eng.top_node()).size());
}

std::optional<AtomicScenario> pot_witness(const POTInstance& I, int k) {
    std::unordered_map<std::string, bool> dt;
    std::unordered_map<std::string, std::unique_ptr<std::vector<std::string>>> ct;
    PotEngine eng(I, clamp_k(I, k), &dt, &ct);
    Node top = eng.top_node();
    if (!eng.decide(top)) return std::nullopt;
    AtomicScenario s(I.n);
    eng.witness(top, s);
    return s;
}

} // namespace tempus
