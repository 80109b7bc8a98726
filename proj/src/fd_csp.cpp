#include "tempus/fd_csp.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "tempus/order_core.hpp" // SizeLimitExceeded
#include "tempus/rng.hpp"

namespace tempus {
namespace {

bool tuple_allowed(const CSPConstraint& c, const std::vector<int>& assign) {
    for (const auto& t : c.tuples) {
        bool match = true;
        for (std::size_t p = 0; p < c.scope.size(); ++p)
            if (assign[static_cast<std::size_t>(c.scope[p])] != t[p]) {
                match = false;
                break;
            }
        if (match) return true;
    }
    return false;
}

} // namespace

CSPParams csp_params(const CSPInstance& I) {
    CSPParams out;
    std::set<int> values;
    std::vector<int> degree(static_cast<std::size_t>(I.n), 0);
    for (const auto& c : I.constraints) {
        out.max_arity = std::max(out.max_arity, static_cast<int>(c.scope.size()));
        out.max_cardinality = std::max(out.max_cardinality, static_cast<int>(c.tuples.size()));
        for (int v : c.scope) degree[static_cast<std::size_t>(v)] += 1;
        for (const auto& t : c.tuples)
            for (int val : t) values.insert(val);
    }
    out.dom = static_cast<int>(values.size());
    for (int d : degree) out.max_degree = std::max(out.max_degree, d);
    return out;
}

std::vector<int> csp_domain(const CSPInstance& I) {
    if (I.declared_dom) {
        std::vector<int> vals(static_cast<std::size_t>(*I.declared_dom));
        for (std::size_t v = 0; v < vals.size(); ++v) vals[v] = static_cast<int>(v);
        return vals;
    }
    std::set<int> values;
    for (const auto& c : I.constraints)
        for (const auto& t : c.tuples)
            for (int val : t) values.insert(val);
    return {values.begin(), values.end()};
}

std::uint64_t csp_enumerate(const CSPInstance& I, std::uint64_t cap) {
    const std::vector<int> domain = csp_domain(I);
    if (I.n == 0 || domain.empty()) {
        // Only the empty assignment is available.  A constraint with no
        // allowed tuples forbids it; a constraint over actual variables has
        // no values to draw from here and also forbids it.
        for (const auto& c : I.constraints)
            if (c.tuples.empty() || !c.scope.empty()) return 0;
        return 1;
    }
    const std::uint64_t d = domain.size();
    std::uint64_t total = 1;
    for (int v = 0; v < I.n; ++v) {
        if (total > cap / d) throw SizeLimitExceeded("assignment scan exceeds the configured cap");
        total *= d;
    }
    std::vector<std::size_t> counter(static_cast<std::size_t>(I.n), 0);
    std::vector<int> assign(static_cast<std::size_t>(I.n), domain[0]);
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        for (const auto& c : I.constraints)
            if (c.tuples.empty() || !tuple_allowed(c, assign)) {
                ok = false;
                break;
            }
        if (ok) ++count;
        std::size_t v = 0;
        while (v < counter.size()) {
            if (++counter[v] < domain.size()) {
                assign[v] = domain[counter[v]];
                break;
            }
            counter[v] = 0;
            assign[v] = domain[0];
            ++v;
        }
        if (v == counter.size()) break;
    }
    return count;
}

std::optional<std::vector<int>> csp_branch_solve(const CSPInstance& I, BranchStats* stats) {
    BranchStats local;
    BranchStats& st = stats ? *stats : local;
    st = BranchStats{};

    const std::vector<int> domain = csp_domain(I);
    // Constraint order: fewest allowed tuples first, original position as
    // the tie breaker, so runs are deterministic.
    std::vector<std::size_t> order(I.constraints.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return I.constraints[a].tuples.size() < I.constraints[b].tuples.size();
    });

    constexpr int kUnset = -2;
    std::vector<int> assign(static_cast<std::size_t>(I.n), kUnset);

    std::vector<std::size_t> trail;
    auto place = [&](const CSPConstraint& c, const std::vector<int>& t) {
        for (std::size_t p = 0; p < c.scope.size(); ++p) {
            const auto v = static_cast<std::size_t>(c.scope[p]);
            if (assign[v] == kUnset) {
                assign[v] = t[p];
                trail.push_back(v);
            }
        }
    };

    std::function<bool(std::size_t)> run = [&](std::size_t oi) -> bool {
        if (oi == order.size()) return true;
        const CSPConstraint& c = I.constraints[order[oi]];
        bool all_assigned = true;
        for (int v : c.scope)
            if (assign[static_cast<std::size_t>(v)] == kUnset) {
                all_assigned = false;
                break;
            }
        if (all_assigned) {
            // Nothing to branch on: the earlier choices either satisfy this
            // constraint or the branch dies here.
            for (const auto& t : c.tuples) {
                bool match = true;
                for (std::size_t p = 0; p < c.scope.size(); ++p)
                    if (assign[static_cast<std::size_t>(c.scope[p])] != t[p]) {
                        match = false;
                        break;
                    }
                if (match) return run(oi + 1);
            }
            return false;
        }
        st.nodes += 1;
        int branches = 0;
        const std::size_t trail_mark = trail.size();
        for (const auto& t : c.tuples) {
            bool compatible = true;
            for (std::size_t p = 0; p < c.scope.size(); ++p) {
                const int cur = assign[static_cast<std::size_t>(c.scope[p])];
                if (cur != kUnset && cur != t[p]) {
                    compatible = false;
                    break;
                }
            }
            if (!compatible) continue;
            ++branches;
            st.max_branch_factor = std::max(st.max_branch_factor, branches);
            place(c, t);
            if (run(oi + 1)) return true;
            while (trail.size() > trail_mark) {
                assign[trail.back()] = kUnset;
                trail.pop_back();
            }
        }
        return false;
    };

    if (!run(0)) return std::nullopt;
    for (auto& v : assign)
        if (v == kUnset) v = domain.empty() ? -1 : domain[0];
    return assign;
}

CSPInstance gen_sparse_bincsp(int d, int n, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("domain size must be at least 1");
    if (n < 0) throw std::invalid_argument("variable count must be nonnegative");
    SplitMix64 rng(seed);
    CSPInstance I;
    I.n = n;
    I.declared_dom = d;
    const int degree_cap = 3 * d * d;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (degree[static_cast<std::size_t>(i)] >= degree_cap ||
                degree[static_cast<std::size_t>(j)] >= degree_cap)
                continue;
            if (!rng.coin(0.35)) continue;
            CSPConstraint c;
            c.scope = {i, j};
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    if (rng.coin(0.5)) c.tuples.push_back({a, b});
            if (c.tuples.empty()) {
                const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
                const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
                c.tuples.push_back({a, b});
            }
            degree[static_cast<std::size_t>(i)] += 1;
            degree[static_cast<std::size_t>(j)] += 1;
            I.constraints.push_back(std::move(c));
        }
    return I;
}

} // namespace tempus
