#ifndef TEMPUS_IO_HPP
#define TEMPUS_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "tempus/fd_csp.hpp"
#include "tempus/ia_types.hpp"
#include "tempus/order_core.hpp"

// Plain-text instance formats.  One instance per file; `#` starts a comment
// that runs to the end of the line; blank lines are ignored.  The first
// content line names the problem:
//
//   poset <n>            ground set 0..n-1, then lines `le <i> <j>`
//                        (the reflexive-transitive closure is taken)
//   pot <n>              variables 0..n-1, then lines `c <i> <j> <rels>`
//                        with <rels> a '|'-joined subset of lt,gt,eq,inc
//   ia <n>               intervals 0..n-1, then lines `c <i> <j> <rels>`
//                        with <rels> a '|'-joined subset of
//                        p,pi,m,mi,o,oi,s,si,d,di,f,fi,e
//   csp <n>              variables 0..n-1, optional `dom <d>`, then blocks
//                        `rel <arity> <vars...> <tuple_count>` followed by
//                        tuple_count lines of <arity> values each
//
// Repeated `c` lines for one pair intersect.  An intersection that rules out
// every relation raises EmptyConstraint (the instance is trivially
// unsatisfiable, not malformed).  Everything else wrong raises ParseError
// with the offending line number.

namespace tempus {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct EmptyConstraint : std::runtime_error {
    int i, j;
    EmptyConstraint(int i_, int j_)
        : std::runtime_error("constraints on pair (" + std::to_string(i_) + ", " +
                             std::to_string(j_) + ") rule out every relation"),
          i(i_),
          j(j_) {}
};

using ParsedInstance = std::variant<POTInstance, IAInstance, CSPInstance, PartialOrder>;

// Reads any of the four formats, detecting the kind from the header line.
ParsedInstance parse_instance(std::istream& in);
ParsedInstance parse_instance_text(const std::string& text);

// Typed wrappers; raise ParseError when the input is a different kind.
POTInstance parse_pot(std::istream& in);
IAInstance parse_ia(std::istream& in);
CSPInstance parse_csp(std::istream& in);
PartialOrder parse_poset(std::istream& in);

// Canonical text: constraint lines sorted by pair, relation tokens in the
// fixed enum order, unconstrained (full-set) pairs omitted.  Serializing an
// empty relation set is refused since no text form parses back to it.
std::string serialize_pot(const POTInstance& I);
std::string serialize_ia(const IAInstance& I);
std::string serialize_csp(const CSPInstance& I);
// The poset format addresses elements by index; every non-reflexive le pair
// is written, so parsing the output reproduces the order exactly.
std::string serialize_poset(const PartialOrder& P);

std::string serialize_instance(const ParsedInstance& inst);

} // namespace tempus

#endif // TEMPUS_IO_HPP
