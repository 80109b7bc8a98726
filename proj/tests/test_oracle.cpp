#include "doctest.h"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tempus/oracle.hpp"

using namespace tempus;

TEST_CASE("enumerate_scenarios visits every relation assignment once") {
    auto count_for = [](int n) {
        std::uint64_t c = 0;
        std::set<std::vector<Rel4>> seen;
        enumerate_scenarios(n, [&](const AtomicScenario& s) {
            ++c;
            seen.insert(s.rel);
        });
        CHECK(seen.size() == c); // no duplicates
        return c;
    };
    CHECK(count_for(0) == 1);
    CHECK(count_for(1) == 1);
    CHECK(count_for(2) == 4);
    CHECK(count_for(3) == 64);
    CHECK_THROWS_AS(enumerate_scenarios(6, [](const AtomicScenario&) {}), SizeLimitExceeded);
}

TEST_CASE("serialize_scenario lists ascending pairs") {
    AtomicScenario s(3);
    s.set(0, 1, Rel4::LT);
    CHECK(serialize_scenario(s) == "rel 0 1 lt\nrel 0 2 inc\nrel 1 2 inc\n");
}

TEST_CASE("pot_oracle frozen values") {
    POTInstance I;
    I.n = 2;

    I.constraints[{0, 1}] = rel_bit(Rel4::LT);
    OracleReport r = pot_oracle(I, 1);
    CHECK(r.decision);
    CHECK(r.count == 1);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0] == "rel 0 1 lt\n");

    I.constraints[{0, 1}] = rel_bit(Rel4::INC);
    CHECK_FALSE(pot_oracle(I, 1).decision);
    CHECK(pot_oracle(I, 1).count == 0);
    CHECK(pot_oracle(I, 2).count == 1);

    I.constraints[{0, 1}] = static_cast<RelSet>(rel_bit(Rel4::LT) | rel_bit(Rel4::GT));
    CHECK(pot_oracle(I, 1).count == 2);

    I.constraints[{0, 1}] = rel_bit(Rel4::EQ);
    CHECK(pot_oracle(I, 1).count == 1);

    I.constraints.clear(); // full masks
    CHECK(pot_oracle(I, 1).count == 3);  // weak orders on 2 labeled points
    CHECK(pot_oracle(I, 2).count == 4);  // preorders on 2 labeled points

    POTInstance F3;
    F3.n = 3;
    CHECK(pot_oracle(F3, 1).count == 13); // weak orders on 3 points
    CHECK(pot_oracle(F3, 2).count == 29); // preorders on 3 points
    CHECK(pot_oracle(F3, 3).count == 29);

    POTInstance F0;
    F0.n = 0;
    CHECK(pot_oracle(F0, 1).decision);
    CHECK(pot_oracle(F0, 1).count == 1);

    POTInstance dead;
    dead.n = 2;
    dead.constraints[{0, 1}] = 0;
    CHECK_FALSE(pot_oracle(dead, 2).decision);
    CHECK(pot_oracle(dead, 2).count == 0);
}

TEST_CASE("ordered partition enumeration matches the ordered Bell numbers") {
    const std::uint64_t expect[] = {1, 1, 3, 13, 75, 541, 4683};
    for (int m = 0; m <= 6; ++m) {
        std::uint64_t c = 0;
        std::set<std::vector<std::vector<int>>> seen;
        enumerate_ordered_partitions(m, [&](const std::vector<std::vector<int>>& cells) {
            ++c;
            seen.insert(cells);
            int items = 0;
            for (const auto& cell : cells) {
                CHECK_FALSE(cell.empty());
                items += static_cast<int>(cell.size());
            }
            CHECK(items == m);
        });
        CHECK(c == expect[m]);
        CHECK(seen.size() == c);
        CHECK(obn(m) == expect[m]);
    }
    CHECK_THROWS_AS(enumerate_ordered_partitions(9, [](const std::vector<std::vector<int>>&) {}),
                    SizeLimitExceeded);
}

TEST_CASE("obn range and growth") {
    CHECK(obn(18) > obn(17)); // largest value that fits
    CHECK_THROWS_AS(obn(19), SizeLimitExceeded);
    CHECK_THROWS_AS(obn(-1), SizeLimitExceeded);
    // Strictly below m^m for every m >= 2 that fits in 64 bits.
    for (int m = 2; m <= 12; ++m) {
        std::uint64_t mm = 1;
        for (int i = 0; i < m; ++i) mm *= static_cast<std::uint64_t>(m);
        CHECK(obn(m) < mm);
    }
}

TEST_CASE("ia_oracle frozen values") {
    IAInstance one;
    one.n = 1;
    CHECK(ia_oracle(one, 1).decision);
    CHECK(ia_oracle(one, 1).count == 1);

    IAInstance I;
    I.n = 2;

    I.constraints[{0, 1}] = ia_bit(BasicRel::e);
    CHECK_FALSE(ia_oracle(I, 1).decision); // equal intervals overlap
    CHECK(ia_oracle(I, 2).count == 1);

    I.constraints[{0, 1}] = ia_bit(BasicRel::p);
    CHECK(ia_oracle(I, 1).count == 1);

    I.constraints[{0, 1}] = ia_bit(BasicRel::m);
    CHECK(ia_oracle(I, 1).count == 1); // meeting intervals do not overlap

    I.constraints[{0, 1}] = ia_bit(BasicRel::o);
    CHECK_FALSE(ia_oracle(I, 1).decision);
    CHECK(ia_oracle(I, 2).count == 1);

    IAInstance tri;
    tri.n = 3;
    tri.constraints[{0, 1}] = ia_bit(BasicRel::o);
    tri.constraints[{0, 2}] = ia_bit(BasicRel::o);
    tri.constraints[{1, 2}] = ia_bit(BasicRel::o);
    CHECK_FALSE(ia_oracle(tri, 2).decision);
    CHECK(ia_oracle(tri, 3).count == 1);
}

TEST_CASE("ia_oracle witnesses satisfy the instance") {
    IAInstance I;
    I.n = 2;
    I.constraints[{0, 1}] = ia_bit(BasicRel::m);
    OracleReport r = ia_oracle(I, 1);
    REQUIRE(r.decision);
    REQUIRE_FALSE(r.witnesses.empty());
    // The meeting point shares one cell: "0+ 1-" must appear inside it.
    CHECK(r.witnesses[0].find("0+ 1-") != std::string::npos);
}
