#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tempus/fd_csp.hpp"
#include "tempus/order_core.hpp"
#include "tempus/rng.hpp"

using namespace tempus;

namespace {

CSPConstraint make_con(std::vector<int> scope, std::vector<std::vector<int>> tuples) {
    CSPConstraint c;
    c.scope = std::move(scope);
    c.tuples = std::move(tuples);
    return c;
}

CSPInstance coloring(int n, const std::vector<std::pair<int, int>>& edges, int colors) {
    CSPInstance I;
    I.n = n;
    for (auto [a, b] : edges) {
        std::vector<std::vector<int>> diff;
        for (int x = 0; x < colors; ++x)
            for (int y = 0; y < colors; ++y)
                if (x != y) diff.push_back({x, y});
        I.constraints.push_back(make_con({a, b}, diff));
    }
    return I;
}

bool assignment_satisfies(const std::vector<int>& a, const CSPInstance& I) {
    for (const auto& c : I.constraints) {
        bool hit = false;
        for (const auto& t : c.tuples) {
            bool match = true;
            for (std::size_t p = 0; p < c.scope.size(); ++p)
                if (a[static_cast<std::size_t>(c.scope[p])] != t[p]) {
                    match = false;
                    break;
                }
            if (match) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

// Seeded small instance mirroring the shapes the equivalence sweep needs:
// up to 8 constraints of arity <= 3 over n <= 6 variables and domain <= 3.
CSPInstance random_instance(SplitMix64& rng) {
    CSPInstance I;
    I.n = 1 + static_cast<int>(rng.below(6));
    const int d = 1 + static_cast<int>(rng.below(3));
    I.declared_dom = d;
    const int m = static_cast<int>(rng.below(9));
    for (int c = 0; c < m; ++c) {
        const int arity = 1 + static_cast<int>(rng.below(std::min(3, I.n)));
        std::vector<int> scope;
        while (static_cast<int>(scope.size()) < arity) {
            int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(I.n)));
            if (std::find(scope.begin(), scope.end(), v) == scope.end()) scope.push_back(v);
        }
        std::vector<std::vector<int>> tuples;
        const int want = static_cast<int>(rng.below(5)); // possibly empty
        for (int t = 0; t < want; ++t) {
            std::vector<int> row;
            for (int p = 0; p < arity; ++p)
                row.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(d))));
            tuples.push_back(std::move(row));
        }
        I.constraints.push_back(make_con(std::move(scope), std::move(tuples)));
    }
    return I;
}

} // namespace

TEST_CASE("csp_params measures the constraint list") {
    CSPInstance I;
    I.n = 2;
    I.constraints.push_back(make_con({0, 1}, {{0, 1}, {1, 0}}));
    CSPParams p = csp_params(I);
    CHECK(p.dom == 2);
    CHECK(p.max_arity == 2);
    CHECK(p.max_degree == 1);
    CHECK(p.max_cardinality == 2);

    CSPInstance empty;
    empty.n = 3;
    CSPParams q = csp_params(empty);
    CHECK(q.dom == 0);
    CHECK(q.max_arity == 0);
    CHECK(q.max_degree == 0);
    CHECK(q.max_cardinality == 0);

    // A declared domain widens csp_domain but not the measured parameters.
    I.declared_dom = 5;
    CHECK(csp_params(I).dom == 2);
    CHECK(csp_domain(I) == std::vector<int>{0, 1, 2, 3, 4});
    I.declared_dom.reset();
    CHECK(csp_domain(I) == std::vector<int>{0, 1});
}

TEST_CASE("frozen instance counts") {
    CSPInstance two_vars_free;
    two_vars_free.n = 2;
    CHECK(csp_enumerate(two_vars_free) == 1); // empty visible domain
    CHECK(csp_branch_solve(two_vars_free).has_value());

    CSPInstance unary;
    unary.n = 1;
    unary.constraints.push_back(make_con({0}, {{0}}));
    CHECK(csp_enumerate(unary) == 1);
    auto w = csp_branch_solve(unary);
    REQUIRE(w.has_value());
    CHECK((*w)[0] == 0);

    CSPInstance tri = coloring(3, {{0, 1}, {1, 2}, {0, 2}}, 2);
    CHECK(csp_enumerate(tri) == 0);
    CHECK_FALSE(csp_branch_solve(tri).has_value());

    CSPInstance path = coloring(3, {{0, 1}, {1, 2}}, 2);
    CHECK(csp_enumerate(path) == 2);
    auto pw = csp_branch_solve(path);
    REQUIRE(pw.has_value());
    CHECK(assignment_satisfies(*pw, path));
}

TEST_CASE("empty-tuple constraints kill every assignment") {
    CSPInstance I;
    I.n = 1;
    I.constraints.push_back(make_con({0}, {}));
    CHECK(csp_enumerate(I) == 0);
    CHECK_FALSE(csp_branch_solve(I).has_value());
}

TEST_CASE("unconstrained variables are filled from the domain") {
    CSPInstance I;
    I.n = 3;
    I.declared_dom = 2;
    I.constraints.push_back(make_con({1}, {{1}}));
    auto w = csp_branch_solve(I);
    REQUIRE(w.has_value());
    CHECK(*w == std::vector<int>{0, 1, 0});

    CSPInstance bare;
    bare.n = 2;
    auto v = csp_branch_solve(bare); // no visible values at all
    REQUIRE(v.has_value());
    CHECK(*v == std::vector<int>{-1, -1});
}

TEST_CASE("branching solver matches the full scan on 500 seeded instances") {
    SplitMix64 rng(0xFEEDFACE1234ull);
    for (int t = 0; t < 500; ++t) {
        CSPInstance I = random_instance(rng);
        const std::uint64_t total = csp_enumerate(I);
        BranchStats stats;
        auto w = csp_branch_solve(I, &stats);
        CHECK(w.has_value() == (total > 0));
        if (w.has_value()) CHECK(assignment_satisfies(*w, I));
        CSPParams p = csp_params(I);
        if (p.max_cardinality > 0) CHECK(stats.max_branch_factor <= p.max_cardinality);
    }
}

TEST_CASE("full scan respects its candidate cap") {
    CSPInstance I;
    I.n = 10;
    I.declared_dom = 3; // 3^10 = 59049 candidates
    CHECK_THROWS_AS(csp_enumerate(I, 1000), SizeLimitExceeded);
    CHECK(csp_enumerate(I, 60000) == 59049);
}

TEST_CASE("gen_sparse_bincsp is deterministic and respects the degree cap") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        CSPInstance a = gen_sparse_bincsp(2, 5, seed);
        CSPInstance b = gen_sparse_bincsp(2, 5, seed);
        REQUIRE(a.constraints.size() == b.constraints.size());
        for (std::size_t i = 0; i < a.constraints.size(); ++i) {
            CHECK(a.constraints[i].scope == b.constraints[i].scope);
            CHECK(a.constraints[i].tuples == b.constraints[i].tuples);
        }
        CHECK(a.n == 5);
        REQUIRE(a.declared_dom.has_value());
        CHECK(*a.declared_dom == 2);
        std::vector<int> degree(static_cast<std::size_t>(a.n), 0);
        for (const auto& c : a.constraints) {
            CHECK(c.scope.size() == 2);
            for (int v : c.scope) ++degree[static_cast<std::size_t>(v)];
            for (const auto& row : c.tuples)
                for (int val : row) CHECK(val < 2);
        }
        for (int d : degree) CHECK(d <= 12); // 3 * d * d with d = 2
        CHECK(csp_params(a).max_arity <= 2);
    }
}
