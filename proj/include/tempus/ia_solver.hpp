#ifndef TEMPUS_IA_SOLVER_HPP
#define TEMPUS_IA_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tempus/ia_types.hpp"

// Left-to-right sweep over the cells of an ordered partition of the 2n
// interval endpoints, for instances whose solutions must keep every interval
// overlapping fewer than k others.
//
// A sweep state remembers which intervals have closed, the currently open
// intervals grouped by shared opening cell (in opening order), one remaining
// overlap allowance per group, and the not-yet-opened intervals.  One step
// appends a cell: a set x_minus of open intervals closing there and a set y
// of fresh intervals opening there (not both empty; an interval never opens
// and closes in the same cell).
//
// Overlap accounting happens at opening time.  Two intervals overlap exactly
// when they are simultaneously open strictly inside some cell boundary, so a
// cell opening |y| intervals over s' survivors charges every survivor group
// |y| and starts the new group with allowance k - s' - |y| (each member
// already overlaps the s' survivors and its |y| - 1 co-openers).  Closing
// charges nothing.  Negative allowance rejects the step, which also bounds
// the number of simultaneously open intervals by k.
//
// Constraint checks happen when a pair's relation becomes determined, which
// is at the earlier closing (or the shared closing cell) of the two
// intervals, so every pair is checked exactly once per run.  Accepting runs
// correspond one-to-one to satisfying ordered partitions, so the counting
// recursion can plainly sum over steps.

namespace tempus {

struct SweepState {
    std::uint64_t closed = 0;          // intervals fully swept
    std::vector<std::uint64_t> groups; // open intervals by opening cell, oldest first
    std::vector<int> budgets;          // remaining overlap allowance per group
    std::uint64_t unopened = 0;        // derived from closed and groups; stored for clarity
};

// Initial state: nothing closed or open, every interval unopened.
SweepState sweep_start(const IAInstance& I);

// Apply one cell to the state.  Returns the successor state, or nullopt when
// the move is ill-formed (x_minus not open, y not unopened, both empty), an
// overlap allowance would go negative, or a relation determined by the cell
// violates the instance.
std::optional<SweepState> sweep_step(const IAInstance& I, int k, const SweepState& state,
                                     std::uint64_t x_minus, std::uint64_t y);

// True iff some ordered partition of the endpoints satisfies I with every
// interval overlapping fewer than k others.
bool ia_decide(const IAInstance& I, int k);

// Number of such ordered partitions.
std::uint64_t ia_count(const IAInstance& I, int k);

// A satisfying ordered partition when one exists.
std::optional<OrderedPartition> ia_witness(const IAInstance& I, int k);

} // namespace tempus

#endif // TEMPUS_IA_SOLVER_HPP
