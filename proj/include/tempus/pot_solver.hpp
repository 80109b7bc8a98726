#ifndef TEMPUS_POT_SOLVER_HPP
#define TEMPUS_POT_SOLVER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tempus/order_core.hpp"

// Recursive, memoized waist-decomposition search deciding and counting
// partially-ordered-time instances of effective width <= k.
//
// Positional encoding.  A call works on disjoint variable subsets placed at
// positions 1..4^k.  Position j carries the encoding value e = j - 1, whose
// 2k low bits record the variables' fixed relations to up to two "temporary"
// waists inherited from enclosing calls, k blocks each:
//   bit(e, 2i-1) = 1  <=>  every element of lower temporary block i lies
//                          strictly below the variable (0 means incomparable
//                          to all of that block),
//   bit(e, 2i)   = 1  <=>  the variable lies strictly below every element of
//                          upper temporary block i (0 means incomparable).
// Relations to a temporary block are always uniform across the block, which
// is what makes the 2k bits a faithful summary.
//
// Soundness refinement: positions alone forget relations fixed against
// waists further up the call tree, so on every descent the per-pair
// constraint masks are tightened with the relations permitted by the child
// positions (see allowed_rels in the implementation).  Fixing a relation then
// only requires a mask-membership test, and the memo key is the positional
// key plus the tightened masks of the region.
//
// Counting: distinct partitions can realize the same scenario, so the
// counting recursion computes per call the *set* of accepted relation
// patterns (union over partitions, plus the all-equal base pattern) rather
// than a sum of products.  Each scenario is therefore counted exactly once;
// the decision recursion keeps the cheap boolean form.

namespace tempus {

// The i-th bit of n, 1-based with bit 1 the least significant.
constexpr int bit(std::uint64_t n, int i) { return static_cast<int>((n >> (i - 1)) & 1u); }

// Positional call key: sets[j] is the bitmask of variables at position j+1
// (encoding value e = j).  Subsets must be pairwise disjoint; empty positions
// are retained because positions are semantic.
struct WaistCallKey {
    std::vector<std::uint64_t> sets; // size 4^k
};

// One step's partition of a call's variables: a new waist of k blocks plus
// positional subsets for the lower and upper child calls.  A block may mix
// parent positions; the masks of the enclosing call already encode whatever
// those positions implied about its members' mutual relations.
struct WaistPartition {
    std::vector<std::uint64_t> n_w;  // k blocks (global variable bitmasks)
    std::vector<std::uint64_t> n_lt; // 4^k lower-child positional subsets
    std::vector<std::uint64_t> n_gt; // 4^k upper-child positional subsets
};

inline constexpr int kPotMaxK = 8; // keys hold 4^k subsets; 2k bits per position

// One memo table per solve call; answers are a pure function of the call key
// and the instance, so clearing a table never changes results.
struct PotDecideMemo {
    PotDecideMemo(const POTInstance& instance_, int k_);
    const POTInstance& instance;
    int k;
    std::unordered_map<std::string, bool> table;
};

struct PotCountMemo {
    PotCountMemo(const POTInstance& instance_, int k_);
    const POTInstance& instance;
    int k;
    // Serialized key -> sorted set of accepted relation patterns (2 bits per
    // pair over the call's variables in ascending order).
    std::unordered_map<std::string, std::unique_ptr<std::vector<std::string>>> table;
};

// One recursion step on a call key: decide whether some completion of the
// key's region is accepted / count the distinct accepted completions.
bool waist_step(const WaistCallKey& key, PotDecideMemo& memo);
std::uint64_t waist_step(const WaistCallKey& key, PotCountMemo& memo);

// All legal partitions at a key (desk-scale introspection and tests).
std::vector<WaistPartition> waist_partitions(const WaistCallKey& key, const POTInstance& I,
                                             int k);

// True iff some realizable scenario satisfies I and its EQ-quotient has
// effective width <= k.  The top-level call places all variables at
// position 1 (all relation bits zero: there are no enclosing waists).
bool pot_decide(const POTInstance& I, int k);

// Number of distinct realizable scenarios satisfying I whose quotient has
// effective width <= k.
std::uint64_t pot_count(const POTInstance& I, int k);

// A witness scenario when pot_decide holds.
std::optional<AtomicScenario> pot_witness(const POTInstance& I, int k);

} // namespace tempus

#endif // TEMPUS_POT_SOLVER_HPP
