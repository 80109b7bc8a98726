#include "tempus/ia_types.hpp"

#include <sstream>

namespace tempus {

namespace {
const char* kTokens[kBasicRelCount] = {"p", "pi", "m",  "mi", "o",  "oi", "s",
                                       "si", "d", "di", "f",  "fi", "e"};
} // namespace

const char* basic_rel_token(BasicRel r) { return kTokens[static_cast<int>(r)]; }

std::optional<BasicRel> basic_rel_from_token(const std::string& tok) {
    for (int i = 0; i < kBasicRelCount; ++i)
        if (tok == kTokens[i]) return static_cast<BasicRel>(i);
    return std::nullopt;
}

IaRelSet IAInstance::mask(int i, int j) const {
    if (i == j) return ia_bit(BasicRel::e);
    bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = constraints.find({i, j});
    IaRelSet m = (it == constraints.end()) ? kIaRelSetFull : it->second;
    return flip ? ia_converse_set(m) : m;
}

OrderedPartition OrderedPartition::from_cells(int n, std::vector<std::vector<int>> cells) {
    OrderedPartition part;
    part.n = n;
    part.cells = std::move(cells);
    part.r.assign(static_cast<std::size_t>(2 * n), 0);
    for (std::size_t c = 0; c < part.cells.size(); ++c)
        for (int e : part.cells[c]) part.r[static_cast<std::size_t>(e)] = static_cast<int>(c) + 1;
    return part;
}

bool overlaps(const OrderedPartition& part, int i, int j) {
    int lo = std::max(part.r[static_cast<std::size_t>(ia_start(i))],
                      part.r[static_cast<std::size_t>(ia_start(j))]);
    int hi = std::min(part.r[static_cast<std::size_t>(ia_end(i))],
                      part.r[static_cast<std::size_t>(ia_end(j))]);
    return lo < hi;
}

BasicRel basic_relation_of(const OrderedPartition& part, int i, int j) {
    int a = part.r[static_cast<std::size_t>(ia_start(i))];
    int b = part.r[static_cast<std::size_t>(ia_end(i))];
    int c = part.r[static_cast<std::size_t>(ia_start(j))];
    int d = part.r[static_cast<std::size_t>(ia_end(j))];
    if (b < c) return BasicRel::p;
    if (b == c) return BasicRel::m;
    if (d < a) return BasicRel::pi;
    if (d == a) return BasicRel::mi;
    if (a == c && b == d) return BasicRel::e;
    if (a == c) return b < d ? BasicRel::s : BasicRel::si;
    if (b == d) return a < c ? BasicRel::fi : BasicRel::f;
    if (a < c) return b < d ? BasicRel::o : BasicRel::di;
    return b < d ? BasicRel::d : BasicRel::oi;
}

std::string serialize_ordered_partition(const OrderedPartition& part) {
    std::ostringstream out;
    for (std::size_t c = 0; c < part.cells.size(); ++c) {
        out << "cell " << (c + 1) << " :";
        for (int e : part.cells[c]) out << ' ' << (e / 2) << (e % 2 == 0 ? '-' : '+');
        out << '\n';
    }
    return out.str();
}

} // namespace tempus
