#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "kgsim/coopgame.hpp"
#include "kgsim/rng.hpp"

using namespace kgsim;
using test::make_world;

namespace {

constexpr double kTol = 1e-9;

void check_matches_oracle(const Organization& org, const WorldState& world) {
  const ShapleyVector closed = shapley_closed_form(org, world);
  const ShapleyVector brute = shapley_bruteforce(org, world);
  REQUIRE(closed.values.size() == brute.values.size());
  for (const auto& [id, value] : closed.values) {
    CHECK(std::abs(value - brute.values.at(id)) <= kTol);
  }
}

// Random single-org world: n members, items assigned to uniform owner sets.
WorldState random_world(Rng& rng, int members, int items) {
  test::TestOrg org;
  org.id = 1;
  for (InventorId i = 1; i <= members; ++i) org.knowledge[i] = {};
  for (ItemId item = 0; item < items; ++item) {
    bool owned = false;
    while (!owned) {  // every item needs at least one owner
      for (InventorId i = 1; i <= members; ++i) {
        if (rng.bernoulli(0.4)) {
          org.knowledge[i].insert(item);
          owned = true;
        }
      }
    }
  }
  return make_world({org});
}

}  // namespace

TEST_CASE("coalition_value is the union size") {
  WorldState world = make_world({{1, {{1, {0, 1}}, {2, {1}}, {3, {}}}, {}}});
  CHECK(coalition_value({}, world) == 0);
  CHECK(coalition_value({1, 2}, world) == 2);
  CHECK(coalition_value({1, 2, 3}, world) ==
        static_cast<int>(org_knowledge(world, 1).size()));
}

TEST_CASE("closed-form Shapley on hand-checked cases") {
  SUBCASE("all empty sets give zero") {
    WorldState world = make_world({{1, {{1, {}}, {2, {}}, {3, {}}}, {}}});
    const ShapleyVector phi =
        shapley_closed_form(world.organizations.at(1), world);
    for (const auto& [id, value] : phi.values) CHECK(value == 0.0);
  }
  SUBCASE("B1={a,b}, B2={b} splits 1.5 / 0.5") {
    WorldState world = make_world({{1, {{1, {0, 1}}, {2, {1}}}, {}}});
    const ShapleyVector phi =
        shapley_closed_form(world.organizations.at(1), world);
    CHECK(phi.values.at(1) == doctest::Approx(1.5).epsilon(kTol));
    CHECK(phi.values.at(2) == doctest::Approx(0.5).epsilon(kTol));
    check_matches_oracle(world.organizations.at(1), world);
  }
  SUBCASE("item owned by everyone contributes 1/n each") {
    WorldState world =
        make_world({{1, {{1, {0}}, {2, {0}}, {3, {0}}, {4, {0}}}, {}}});
    const ShapleyVector phi =
        shapley_closed_form(world.organizations.at(1), world);
    for (const auto& [id, value] : phi.values) {
      CHECK(value == doctest::Approx(0.25).epsilon(kTol));
    }
  }
}

TEST_CASE("brute-force oracle basics") {
  SUBCASE("single member owns its whole set") {
    WorldState world = make_world({{1, {{1, {0}}}, {}}});
    const ShapleyVector phi =
        shapley_bruteforce(world.organizations.at(1), world);
    CHECK(phi.values.at(1) == doctest::Approx(1.0).epsilon(kTol));
  }
  SUBCASE("disjoint knowledge gives phi_i = |B_i|") {
    WorldState world =
        make_world({{1, {{1, {0, 1, 2}}, {2, {3}}, {3, {4, 5}}}, {}}});
    const ShapleyVector phi =
        shapley_bruteforce(world.organizations.at(1), world);
    CHECK(phi.values.at(1) == doctest::Approx(3.0).epsilon(kTol));
    CHECK(phi.values.at(2) == doctest::Approx(1.0).epsilon(kTol));
    CHECK(phi.values.at(3) == doctest::Approx(2.0).epsilon(kTol));
  }
  SUBCASE("factorial guard") {
    test::TestOrg big;
    for (InventorId i = 1; i <= 9; ++i) big.knowledge[i] = {};
    WorldState world = make_world({big});
    CHECK_THROWS_AS(shapley_bruteforce(world.organizations.at(1), world),
                    std::invalid_argument);
  }
}

TEST_CASE("oracle equivalence, efficiency, null player, symmetry") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int members = 2 + static_cast<int>(rng.uniform_below(5));  // 2..6
    const int items = static_cast<int>(rng.uniform_below(7));        // 0..6
    WorldState world = random_world(rng, members, items);
    const Organization& org = world.organizations.at(1);

    check_matches_oracle(org, world);

    const ShapleyVector phi = shapley_closed_form(org, world);
    const double pool = static_cast<double>(org_knowledge(world, 1).size());
    CHECK(std::abs(phi.sum() - pool) <= kTol);  // efficiency

    for (const auto& [id, value] : phi.values) {  // null player
      if (world.inventors.at(id).knowledge.empty()) CHECK(value == 0.0);
    }
  }

  SUBCASE("symmetry: identical knowledge sets, equal phi") {
    WorldState world =
        make_world({{1, {{1, {0, 1}}, {2, {0, 1}}, {3, {2}}}, {}}});
    const ShapleyVector phi =
        shapley_closed_form(world.organizations.at(1), world);
    CHECK(phi.values.at(1) == doctest::Approx(phi.values.at(2)).epsilon(kTol));
  }
}

TEST_CASE("ownership dilution never raises an existing owner's phi") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    WorldState world = random_world(rng, 4, 5);
    const Organization& org = world.organizations.at(1);
    if (world.items.empty()) continue;

    const ItemId item =
        static_cast<ItemId>(rng.uniform_below(world.items.size()));
    InventorId newcomer = 0;
    for (InventorId member : org.members) {
      if (world.inventors.at(member).knowledge.count(item) == 0) {
        newcomer = member;
        break;
      }
    }
    if (newcomer == 0) continue;  // everyone already owns it

    const ShapleyVector before = shapley_closed_form(org, world);
    world.inventors.at(newcomer).knowledge.insert(item);
    const ShapleyVector after = shapley_closed_form(org, world);
    for (const auto& [id, value] : before.values) {
      if (id == newcomer) continue;
      CHECK(after.values.at(id) <= value + kTol);
    }
  }
}
