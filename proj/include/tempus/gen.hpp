#ifndef TEMPUS_GEN_HPP
#define TEMPUS_GEN_HPP

#include <cstdint>

#include "tempus/ia_types.hpp"
#include "tempus/order_core.hpp"

// Seeded instance generators.  Both build a concrete witness first — a
// scenario assembled from uniform waist layers for the order problem, an
// allowance-respecting endpoint sweep for the interval problem — and then
// emit constraint sets that keep that witness allowed, so plain instances
// are satisfiable at the requested bound by construction.  With unsat_mix a
// few constraints are flipped to exclude the witness, which usually (not
// provably) makes the instance unsatisfiable.

namespace tempus {

POTInstance gen_pot(int n, int k, std::uint64_t seed, bool unsat_mix = false);

IAInstance gen_ia(int n, int k, std::uint64_t seed, bool unsat_mix = false);

} // namespace tempus

#endif // TEMPUS_GEN_HPP
