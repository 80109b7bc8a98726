#ifndef TEMPUS_FD_CSP_HPP
#define TEMPUS_FD_CSP_HPP

#include <cstdint>
#include <optional>
#include <vector>

// Finite-domain constraint satisfaction with explicitly listed allowed
// tuples, a full-scan reference counter, and a tuple-branching solver whose
// branching factor is bounded by the largest constraint cardinality.

namespace tempus {

struct CSPConstraint {
    std::vector<int> scope;               // distinct variable indices
    std::vector<std::vector<int>> tuples; // allowed value rows, |row| == |scope|
};

struct CSPInstance {
    int n = 0;
    std::vector<CSPConstraint> constraints;
    // Declared value domain {0..d-1}; when absent the visible domain is the
    // set of values appearing in tuples.
    std::optional<int> declared_dom;
};

// Structural parameters, all measured on the constraint list alone (a
// declared domain does not change them): number of distinct tuple values,
// largest scope, largest number of constraints sharing one variable, and
// largest tuple count of a single constraint.  All zero for an empty list.
struct CSPParams {
    int dom = 0;
    int max_arity = 0;
    int max_degree = 0;
    int max_cardinality = 0;
};

CSPParams csp_params(const CSPInstance& I);

// The concrete values an assignment may use: the declared domain when
// present, otherwise the sorted distinct tuple values.
std::vector<int> csp_domain(const CSPInstance& I);

inline constexpr std::uint64_t kDefaultCspScanCap = 20'000'000;

// Reference count of satisfying assignments by scanning all |domain|^n
// candidates.  With an empty domain the empty assignment is the only
// candidate: it counts 1 when every constraint admits it (vacuously when
// none exist) and 0 otherwise.  Throws SizeLimitExceeded past the cap.
std::uint64_t csp_enumerate(const CSPInstance& I, std::uint64_t cap = kDefaultCspScanCap);

struct BranchStats {
    std::uint64_t nodes = 0;    // branch points visited
    int max_branch_factor = 0;  // most tuples explored at one branch point
};

// Depth-first search branching on the allowed tuples of a not yet fully
// assigned constraint (fewest tuples first, ties by position), filtering
// tuples against the partial assignment.  Returns a satisfying assignment;
// variables no constraint mentions get the smallest domain value, or -1 when
// the domain is empty.
std::optional<std::vector<int>> csp_branch_solve(const CSPInstance& I,
                                                 BranchStats* stats = nullptr);

// Seeded sparse binary instance: n variables over {0..d-1}, every variable
// in at most 3*d*d constraints.
CSPInstance gen_sparse_bincsp(int d, int n, std::uint64_t seed);

} // namespace tempus

#endif // TEMPUS_FD_CSP_HPP
