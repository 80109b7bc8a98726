#include "doctest.h"

#include <cstdint>
#include <vector>

#include "tempus/gen.hpp"
#include "tempus/ia_solver.hpp"
#include "tempus/oracle.hpp"
#include "tempus/rng.hpp"

using namespace tempus;

namespace {

IAInstance free_instance(int n) {
    IAInstance I;
    I.n = n;
    return I;
}

IAInstance pair_instance(IaRelSet m01) {
    IAInstance I;
    I.n = 2;
    I.constraints[{0, 1}] = m01;
    return I;
}

IAInstance chain_instance(int n) {
    IAInstance I;
    I.n = n;
    for (int i = 0; i + 1 < n; ++i) I.constraints[{i, i + 1}] = ia_bit(BasicRel::p);
    return I;
}

// Each interval's open interior must meet fewer than k others.
bool degrees_below(const OrderedPartition& part, int k) {
    for (int i = 0; i < part.n; ++i) {
        int deg = 0;
        for (int j = 0; j < part.n; ++j)
            if (j != i && overlaps(part, i, j)) ++deg;
        if (deg >= k) return false;
    }
    return true;
}

bool partition_satisfies(const OrderedPartition& part, const IAInstance& I, int k) {
    if (part.n != I.n) return false;
    for (int i = 0; i < I.n; ++i)
        if (part.r[ia_start(i)] >= part.r[ia_end(i)]) return false;
    for (int i = 0; i < I.n; ++i)
        for (int j = i + 1; j < I.n; ++j)
            if (!ia_in(I.mask(i, j), basic_relation_of(part, i, j))) return false;
    return degrees_below(part, k);
}

} // namespace

TEST_CASE("sweep_start has everything unopened") {
    IAInstance I = free_instance(3);
    SweepState st = sweep_start(I);
    CHECK(st.closed == 0);
    CHECK(st.groups.empty());
    CHECK(st.budgets.empty());
    CHECK(st.unopened == 0b111);
}

TEST_CASE("sweep_step charges overlap allowances at opening time") {
    IAInstance I = free_instance(2);
    SweepState st = sweep_start(I);

    auto opened = sweep_step(I, 1, st, 0, 0b01);
    REQUIRE(opened.has_value());
    CHECK(opened->groups == std::vector<std::uint64_t>{0b01});
    CHECK(opened->budgets == std::vector<int>{0}); // k-1 co-overlaps left
    CHECK(opened->unopened == 0b10);

    // A second simultaneous opening needs allowance on both sides.
    CHECK_FALSE(sweep_step(I, 1, *opened, 0, 0b10).has_value());
    auto opened2 = sweep_step(I, 2, st, 0, 0b01); // k=2 leaves allowance 1
    REQUIRE(opened2.has_value());
    CHECK(opened2->budgets == std::vector<int>{1});
    auto wide = sweep_step(I, 2, *opened2, 0, 0b10);
    REQUIRE(wide.has_value());
    CHECK(wide->groups == std::vector<std::uint64_t>{0b01, 0b10});
    CHECK(wide->budgets == std::vector<int>{0, 0});

    // Closing 0 while opening 1 realizes "0 meets 1" and costs nothing.
    auto meets = sweep_step(I, 1, *opened, 0b01, 0b10);
    REQUIRE(meets.has_value());
    CHECK(meets->closed == 0b01);
    CHECK(meets->groups == std::vector<std::uint64_t>{0b10});
    CHECK(meets->unopened == 0);

    IAInstance apart = pair_instance(ia_bit(BasicRel::p));
    auto st2 = sweep_step(apart, 1, sweep_start(apart), 0, 0b01);
    REQUIRE(st2.has_value());
    CHECK_FALSE(sweep_step(apart, 1, *st2, 0b01, 0b10).has_value()); // meets violates {p}
}

TEST_CASE("sweep_step rejects ill-formed moves") {
    IAInstance I = free_instance(2);
    SweepState st = sweep_start(I);
    CHECK_FALSE(sweep_step(I, 2, st, 0, 0).has_value());       // empty cell
    CHECK_FALSE(sweep_step(I, 2, st, 0b01, 0b10).has_value()); // 0 is not open
    auto opened = sweep_step(I, 2, st, 0, 0b01);
    REQUIRE(opened.has_value());
    CHECK_FALSE(sweep_step(I, 2, *opened, 0, 0b01).has_value()); // 0 already open
}

TEST_CASE("ia solver frozen decisions and counts") {
    CHECK(ia_decide(free_instance(0), 1));
    CHECK(ia_count(free_instance(0), 1) == 1);
    CHECK(ia_decide(free_instance(1), 1));
    CHECK(ia_count(free_instance(1), 1) == 1);

    CHECK_FALSE(ia_decide(pair_instance(ia_bit(BasicRel::e)), 1));
    CHECK(ia_count(pair_instance(ia_bit(BasicRel::e)), 2) == 1);
    CHECK(ia_count(pair_instance(ia_bit(BasicRel::p)), 1) == 1);
    CHECK(ia_count(pair_instance(ia_bit(BasicRel::m)), 1) == 1);
    CHECK_FALSE(ia_decide(pair_instance(ia_bit(BasicRel::o)), 1));
    CHECK(ia_count(pair_instance(ia_bit(BasicRel::o)), 2) == 1);

    IAInstance tri;
    tri.n = 3;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) tri.constraints[{i, j}] = ia_bit(BasicRel::o);
    CHECK_FALSE(ia_decide(tri, 2));
    CHECK(ia_decide(tri, 3));
    CHECK(ia_count(tri, 3) == 1);
}

TEST_CASE("precedence chains admit exactly one ordered partition") {
    for (int n = 1; n <= 8; ++n) {
        CHECK(ia_count(chain_instance(n), 1) == 1);
        CHECK(ia_count(chain_instance(n), 2) == 1);
    }
}

TEST_CASE("solver agrees with the oracle on random small instances") {
    SplitMix64 rng(0x1234500067890ull);
    for (int t = 0; t < 150; ++t) {
        IAInstance I;
        I.n = 2 + static_cast<int>(rng.below(2));
        for (int i = 0; i < I.n; ++i)
            for (int j = i + 1; j < I.n; ++j) {
                IaRelSet m = static_cast<IaRelSet>(rng.below(kIaRelSetFull) + 1);
                I.constraints[{i, j}] = m;
            }
        for (int k = 1; k <= 3; ++k) {
            OracleReport rep = ia_oracle(I, k);
            CHECK(ia_decide(I, k) == rep.decision);
            CHECK(ia_count(I, k) == rep.count);
        }
    }
}

TEST_CASE("witnesses are valid ordered partitions of the instance") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const int n = 2 + static_cast<int>(seed % 3);
        const int k = 1 + static_cast<int>(seed % 3);
        IAInstance I = gen_ia(n, k, seed, false);
        auto w = ia_witness(I, k);
        REQUIRE(w.has_value());
        CHECK(partition_satisfies(*w, I, k));
    }
    CHECK_FALSE(ia_witness(pair_instance(ia_bit(BasicRel::o)), 1).has_value());
}

TEST_CASE("bound and size validation") {
    IAInstance I = free_instance(2);
    CHECK_THROWS_AS(ia_decide(I, 0), std::invalid_argument);
    IAInstance big;
    big.n = 65;
    CHECK_THROWS_AS(ia_decide(big, 1), SizeLimitExceeded);
    // Bounds beyond the interval count change nothing.
    IAInstance tri;
    tri.n = 3;
    CHECK(ia_count(tri, 64) == ia_count(tri, 3));
}
