#ifndef TEMPUS_ORDER_CORE_HPP
#define TEMPUS_ORDER_CORE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tempus {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct CycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownElement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rel4: the four possible relations between two elements of a partial order.
// ---------------------------------------------------------------------------

enum class Rel4 : std::uint8_t {
    LT = 0,  // strictly less
    GT = 1,  // strictly greater
    EQ = 2,  // equal
    INC = 3, // incomparable
};

constexpr Rel4 converse(Rel4 r) {
    switch (r) {
    case Rel4::LT: return Rel4::GT;
    case Rel4::GT: return Rel4::LT;
    case Rel4::EQ: return Rel4::EQ;
    case Rel4::INC: return Rel4::INC;
    }
    return Rel4::INC; // unreachable
}

// A subset of Rel4, one bit per relation (bit index = enum value).
using RelSet = std::uint8_t;

constexpr RelSet kRelSetFull = 0x0F;

constexpr RelSet rel_bit(Rel4 r) { return static_cast<RelSet>(1u << static_cast<int>(r)); }

constexpr bool rel_in(RelSet s, Rel4 r) { return (s & rel_bit(r)) != 0; }

// Converse of a relation set: swaps the LT and GT bits.
constexpr RelSet converse_set(RelSet s) {
    RelSet out = static_cast<RelSet>(s & (rel_bit(Rel4::EQ) | rel_bit(Rel4::INC)));
    if (rel_in(s, Rel4::LT)) out |= rel_bit(Rel4::GT);
    if (rel_in(s, Rel4::GT)) out |= rel_bit(Rel4::LT);
    return out;
}

const char* rel4_token(Rel4 r);                   // "lt", "gt", "eq", "inc"
std::optional<Rel4> rel4_from_token(const std::string& tok);

// ---------------------------------------------------------------------------
// PartialOrder: a finite ground set with a reflexive, antisymmetric,
// transitive relation.  Element ids are arbitrary ints; at most 64 elements.
// ---------------------------------------------------------------------------

class PartialOrder {
public:
    PartialOrder() = default;
    PartialOrder(std::vector<int> elements, std::vector<std::uint64_t> le_rows)
        : elements_(std::move(elements)), le_rows_(std::move(le_rows)) {}

    const std::vector<int>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    // Index of an element id, or -1 if the id is not in the ground set.
    int index_of(int id) const;

    // le by element id; throws UnknownElement.
    bool le(int a, int b) const;

    // le by element index (no id lookup).
    bool le_idx(int i, int j) const { return (le_rows_[static_cast<std::size_t>(i)] >> j) & 1u; }

    const std::vector<std::uint64_t>& rows() const { return le_rows_; }

private:
    std::vector<int> elements_;           // sorted ascending, unique
    std::vector<std::uint64_t> le_rows_;  // bit j of row i: elements_[i] <= elements_[j]
};

// Builds the reflexive-transitive closure of le_pairs over the given elements.
// Throws CycleError if the closure relates two distinct elements both ways,
// and UnknownElement if a pair mentions an id outside the element set.
PartialOrder make_partial_order(std::vector<int> elements,
                                const std::vector<std::pair<int, int>>& le_pairs);

// The unique relation between two elements of P (by element id).
Rel4 induced_relation(const PartialOrder& P, int a, int b);

// Induced sub-order on a subset of the ground set (original ids are kept).
PartialOrder restrict_order(const PartialOrder& P, const std::vector<int>& keep);

// ---------------------------------------------------------------------------
// POTInstance: variables 0..n-1 with relation-set constraints on pairs.
// ---------------------------------------------------------------------------

struct POTInstance {
    int n = 0;
    // Keyed by (i, j) with i < j.  Parsing rejects empty sets; tests may build
    // empty sets directly to cover the trivially unsatisfiable case.
    std::map<std::pair<int, int>, RelSet> constraints;

    // Constraint mask for the oriented pair (i, j); unconstrained pairs are
    // the full set.  i > j returns the converse of the stored mask.
    RelSet mask(int i, int j) const;
};

// Sub-instance on a variable subset, indices re-mapped to 0..|X|-1 in
// ascending original order.
POTInstance sub_instance(const POTInstance& I, const std::vector<int>& X);

// ---------------------------------------------------------------------------
// AtomicScenario: one Rel4 per unordered variable pair.
// ---------------------------------------------------------------------------

struct AtomicScenario {
    int n = 0;
    std::vector<Rel4> rel; // size n*(n-1)/2, pair (i,j) with i<j at pair_index

    static std::size_t pair_index(int n, int i, int j); // requires i < j

    explicit AtomicScenario(int n_ = 0)
        : n(n_), rel(static_cast<std::size_t>(n_) * (n_ > 0 ? n_ - 1 : 0) / 2, Rel4::INC) {}

    // Oriented access: at(j, i) is the converse of at(i, j); at(i, i) is EQ.
    Rel4 at(int i, int j) const;
    void set(int i, int j, Rel4 r);

    bool operator==(const AtomicScenario& o) const { return n == o.n && rel == o.rel; }
};

// True iff the scenario is the induced-relation pattern of some partial
// order: EQ is an equivalence, relations are congruent under EQ, and LT is
// transitive across EQ-classes.
bool scenario_realizable(const AtomicScenario& s);

// True iff every constrained pair's relation is a member of its constraint.
bool satisfies_pot(const AtomicScenario& s, const POTInstance& I);

// Quotient of a realizable scenario by its EQ-classes: a PartialOrder whose
// elements are the minimal variable index of each class.
PartialOrder scenario_quotient(const AtomicScenario& s);

// ---------------------------------------------------------------------------
// Effective width
// ---------------------------------------------------------------------------
//
// A partial order has effective width <= k if it can be partitioned into at
// most k+2 parts (S_1..S_k, S_<, S_>) such that
//   1. at least two parts are nonempty (vacuous when |S| <= 1),
//   2. every x in S_< lies strictly below every element of some nonempty S_i,
//   3. every x in S_> lies strictly above every element of some nonempty S_i,
//   4. for x in S_<, y in S_> with x <= y some nonempty S_i sits entirely
//      between x and y,
//   5. each part recursively has effective width <= k, and
//   6. elements of distinct waist blocks S_i, S_j are pairwise incomparable.
// Witness blocks in 2-4 must be nonempty: with empty witnesses every order
// would trivially satisfy the conditions and the measure would collapse.

struct WaistDecomposition {
    std::vector<std::vector<int>> waist; // up to k blocks of element ids
    std::vector<int> lower;              // S_<
    std::vector<int> upper;              // S_>
    // Children cover the corresponding part; a null child is permitted only
    // for parts with at most one element.  A node with no parts at all is the
    // leaf form, valid only for ground sets of size <= 1.
    std::vector<std::unique_ptr<WaistDecomposition>> waist_children;
    std::unique_ptr<WaistDecomposition> lower_child;
    std::unique_ptr<WaistDecomposition> upper_child;

    bool is_leaf() const { return waist.empty() && lower.empty() && upper.empty(); }
};

inline constexpr std::size_t kDefaultWidthSearchCap = 8;

// Exhaustive check that P has effective width <= k.  Desk-scale verifier;
// throws SizeLimitExceeded when |elements| > cap.
bool effective_width_at_most(const PartialOrder& P, int k,
                             std::size_t cap = kDefaultWidthSearchCap);

// Same search, returning one witness decomposition when it exists.
std::optional<WaistDecomposition> effective_width_decompose(
    const PartialOrder& P, int k, std::size_t cap = kDefaultWidthSearchCap);

// Validates every node of an explicit decomposition against the six
// conditions above.
bool effective_width_certificate_check(const PartialOrder& P, int k,
                                       const WaistDecomposition& cert);

} // namespace tempus

#endif // TEMPUS_ORDER_CORE_HPP
