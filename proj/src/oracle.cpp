#include "tempus/oracle.hpp"

#include <array>
#include <sstream>

namespace tempus {

void enumerate_scenarios(int n, const std::function<void(const AtomicScenario&)>& visit,
                         int cap) {
    if (n > cap)
        throw SizeLimitExceeded("scenario enumeration is capped at " + std::to_string(cap) +
                                " variables");
    const std::size_t pairs = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
    AtomicScenario s(n);
    std::vector<int> digit(pairs, 0);
    for (;;) {
        for (std::size_t p = 0; p < pairs; ++p) s.rel[p] = static_cast<Rel4>(digit[p]);
        visit(s);
        // Lexicographic increment: last pair is the least significant digit.
        std::size_t p = pairs;
        while (p > 0) {
            --p;
            if (++digit[p] < 4) break;
            digit[p] = 0;
            if (p == 0) return;
        }
        if (pairs == 0) return;
    }
}

std::string serialize_scenario(const AtomicScenario& s) {
    std::ostringstream out;
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j)
            out << "rel " << i << ' ' << j << ' ' << rel4_token(s.at(i, j)) << '\n';
    return out.str();
}

OracleReport pot_oracle(const POTInstance& I, int k, int cap, std::size_t witness_limit) {
    OracleReport report;
    enumerate_scenarios(
        I.n,
        [&](const AtomicScenario& s) {
            if (!satisfies_pot(s, I)) return;
            if (!scenario_realizable(s)) return;
            if (!effective_width_at_most(scenario_quotient(s), k)) return;
            ++report.count;
            if (report.witnesses.size() < witness_limit)
                report.witnesses.push_back(serialize_scenario(s));
        },
        cap);
    report.decision = report.count > 0;
    return report;
}

namespace {

// Items are inserted one at a time: item t either joins an existing cell or
// founds a new cell in any of the gaps.  Every ordered partition of t+1 items
// has a unique predecessor under removal of item t, so there are no
// duplicates and the totals match the ordered Bell numbers.
void enumerate_op_rec(int m, int next, std::vector<std::vector<int>>& cells,
                      const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
    if (next == m) {
        visit(cells);
        return;
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        cells[c].push_back(next);
        enumerate_op_rec(m, next + 1, cells, visit);
        cells[c].pop_back();
    }
    for (std::size_t gap = 0; gap <= cells.size(); ++gap) {
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(gap), {next});
        enumerate_op_rec(m, next + 1, cells, visit);
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(gap));
    }
}

} // namespace

void enumerate_ordered_partitions(
    int m, const std::function<void(const std::vector<std::vector<int>>&)>& visit, int cap) {
    if (m > cap)
        throw SizeLimitExceeded("ordered-partition enumeration is capped at " +
                                std::to_string(cap) + " points");
    std::vector<std::vector<int>> cells;
    if (m == 0) {
        visit(cells);
        return;
    }
    enumerate_op_rec(m, 0, cells, visit);
}

std::uint64_t obn(int m) {
    if (m < 0) throw SizeLimitExceeded("ordered Bell numbers need m >= 0");
    if (m > 18) throw SizeLimitExceeded("obn overflows 64 bits beyond m = 18");
    std::vector<std::uint64_t> v(static_cast<std::size_t>(m) + 1, 0);
    v[0] = 1;
    for (int t = 1; t <= m; ++t) {
        // Binomials C(t, i) via a single Pascal row.
        std::vector<std::uint64_t> binom(static_cast<std::size_t>(t) + 1, 1);
        for (int i = 1; i < t; ++i)
            for (int j = i; j > 0; --j) binom[static_cast<std::size_t>(j)] += binom[static_cast<std::size_t>(j - 1)];
        std::uint64_t total = 0;
        for (int i = 1; i <= t; ++i) total += binom[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(t - i)];
        v[static_cast<std::size_t>(t)] = total;
    }
    return v[static_cast<std::size_t>(m)];
}

OracleReport ia_oracle(const IAInstance& I, int k, int cap, std::size_t witness_limit) {
    OracleReport report;
    const int points = 2 * I.n;
    enumerate_ordered_partitions(
        points,
        [&](const std::vector<std::vector<int>>& cells) {
            OrderedPartition part = OrderedPartition::from_cells(I.n, cells);
            for (int i = 0; i < I.n; ++i)
                if (part.r[static_cast<std::size_t>(ia_start(i))] >=
                    part.r[static_cast<std::size_t>(ia_end(i))])
                    return;
            for (int i = 0; i < I.n; ++i)
                for (int j = i + 1; j < I.n; ++j)
                    if (!ia_in(I.mask(i, j), basic_relation_of(part, i, j))) return;
            for (int i = 0; i < I.n; ++i) {
                int deg = 0;
                for (int j = 0; j < I.n; ++j)
                    if (j != i && overlaps(part, i, j)) ++deg;
                if (deg >= k) return;
            }
            ++report.count;
            if (report.witnesses.size() < witness_limit)
                report.witnesses.push_back(serialize_ordered_partition(part));
        },
        cap);
    report.decision = report.count > 0;
    return report;
}

} // namespace tempus
