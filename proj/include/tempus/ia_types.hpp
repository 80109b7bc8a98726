#ifndef TEMPUS_IA_TYPES_HPP
#define TEMPUS_IA_TYPES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tempus {

// ---------------------------------------------------------------------------
// The 13 basic interval relations.  Enum values pair each relation with its
// inverse (r ^ 1), except e which is self-inverse.
// ---------------------------------------------------------------------------

enum class BasicRel : std::uint8_t {
    p = 0,   // precedes:        r(x+) <  r(y-)
    pi = 1,  // preceded by
    m = 2,   // meets:           r(x+) == r(y-)
    mi = 3,  // met by
    o = 4,   // overlaps:        r(x-) < r(y-) < r(x+) < r(y+)
    oi = 5,  // overlapped by
    s = 6,   // starts:          r(x-) == r(y-), r(x+) < r(y+)
    si = 7,  // started by
    d = 8,   // during:          r(y-) < r(x-), r(x+) < r(y+)
    di = 9,  // contains
    f = 10,  // finishes:        r(y-) < r(x-), r(x+) == r(y+)
    fi = 11, // finished by
    e = 12,  // equals:          both endpoints tie
};

inline constexpr int kBasicRelCount = 13;

constexpr BasicRel basic_converse(BasicRel r) {
    auto v = static_cast<std::uint8_t>(r);
    return v < 12 ? static_cast<BasicRel>(v ^ 1u) : r;
}

// A subset of the 13 basic relations, bit index = enum value.
using IaRelSet = std::uint16_t;

inline constexpr IaRelSet kIaRelSetFull = 0x1FFF;

constexpr IaRelSet ia_bit(BasicRel r) { return static_cast<IaRelSet>(1u << static_cast<int>(r)); }

constexpr bool ia_in(IaRelSet s, BasicRel r) { return (s & ia_bit(r)) != 0; }

constexpr IaRelSet ia_converse_set(IaRelSet s) {
    IaRelSet out = static_cast<IaRelSet>(s & ia_bit(BasicRel::e));
    for (int v = 0; v < 12; v += 2) {
        if (s & (1u << v)) out |= static_cast<IaRelSet>(1u << (v + 1));
        if (s & (1u << (v + 1))) out |= static_cast<IaRelSet>(1u << v);
    }
    return out;
}

const char* basic_rel_token(BasicRel r); // "p", "pi", ..., "e"
std::optional<BasicRel> basic_rel_from_token(const std::string& tok);

// ---------------------------------------------------------------------------
// IAInstance: intervals 0..n-1 with relation-set constraints on pairs.
// Endpoint ids: interval i has start 2*i and end 2*i + 1.
// ---------------------------------------------------------------------------

struct IAInstance {
    int n = 0;
    std::map<std::pair<int, int>, IaRelSet> constraints; // keyed by (i, j), i < j

    // Constraint mask for the oriented pair (i, j); unconstrained pairs are
    // the full 13-relation set.
    IaRelSet mask(int i, int j) const;
};

inline constexpr int ia_start(int interval) { return 2 * interval; }
inline constexpr int ia_end(int interval) { return 2 * interval + 1; }

// ---------------------------------------------------------------------------
// OrderedPartition: a sequence of disjoint nonempty cells of endpoint ids,
// with the ranking function r mapping each endpoint to its 1-based cell index.
// ---------------------------------------------------------------------------

struct OrderedPartition {
    int n = 0;                           // interval count; endpoints are 0..2n-1
    std::vector<std::vector<int>> cells; // each cell nonempty, jointly a partition
    std::vector<int> r;                  // size 2n; r[endpoint] = 1-based cell index

    static OrderedPartition from_cells(int n, std::vector<std::vector<int>> cells);

    bool operator==(const OrderedPartition& o) const { return n == o.n && cells == o.cells; }
};

// True iff the open interiors of intervals i and j share a point:
// max(r(i-), r(j-)) < min(r(i+), r(j+)).  Meeting intervals do not overlap.
bool overlaps(const OrderedPartition& part, int i, int j);

// The unique basic relation between intervals i and j under the ranking.
BasicRel basic_relation_of(const OrderedPartition& part, int i, int j);

// Witness serialization: one "cell <rank> : <endpoint list>" line per cell,
// endpoints rendered as "<interval>-" and "<interval>+".
std::string serialize_ordered_partition(const OrderedPartition& part);

} // namespace tempus

#endif // TEMPUS_IA_TYPES_HPP
