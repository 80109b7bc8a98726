#ifndef TEMPUS_ORACLE_HPP
#define TEMPUS_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tempus/ia_types.hpp"
#include "tempus/order_core.hpp"

// Brute-force reference implementations.  Everything here is deliberately
// naive so correctness can be audited by inspection; size caps keep runtimes
// bounded.  This module must not call into any solver code path.

namespace tempus {

struct OracleReport {
    bool decision = false;
    std::uint64_t count = 0;
    std::vector<std::string> witnesses; // serialized solutions, truncated
};

inline constexpr std::size_t kDefaultWitnessLimit = 100;
inline constexpr int kDefaultScenarioCap = 5;          // variables
inline constexpr int kDefaultOrderedPartitionCap = 8;  // points

// Visits all 4^(n(n-1)/2) atomic scenarios in lexicographic order of the
// pair sequence (0,1), (0,2), ..., each digit ordered LT < GT < EQ < INC.
void enumerate_scenarios(int n, const std::function<void(const AtomicScenario&)>& visit,
                         int cap = kDefaultScenarioCap);

// Counts realizable scenarios that satisfy I and whose EQ-quotient has
// effective width <= k.
OracleReport pot_oracle(const POTInstance& I, int k, int cap = kDefaultScenarioCap,
                        std::size_t witness_limit = kDefaultWitnessLimit);

// Visits all ordered partitions of the points 0..m-1; the total equals obn(m).
void enumerate_ordered_partitions(
    int m, const std::function<void(const std::vector<std::vector<int>>&)>& visit,
    int cap = kDefaultOrderedPartitionCap);

// Ordered Bell numbers via OBN(m) = sum_{i=1..m} C(m,i) * OBN(m-i); exact in
// 64 bits for m <= 18.
std::uint64_t obn(int m);

// Counts ordered partitions of the 2n endpoints with r(x-) < r(x+) for every
// interval, all constraints satisfied, and every interval overlapping fewer
// than k others.
OracleReport ia_oracle(const IAInstance& I, int k, int cap = kDefaultOrderedPartitionCap,
                       std::size_t witness_limit = kDefaultWitnessLimit);

// Witness serialization for POT scenarios: one "rel <i> <j> <token>" line per
// pair (i < j).
std::string serialize_scenario(const AtomicScenario& s);

} // namespace tempus

#endif // TEMPUS_ORACLE_HPP
