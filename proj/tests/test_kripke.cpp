#include <algorithm>

#include "doctest.h"

#include "awmc/error.hpp"
#include "awmc/kripke.hpp"
#include "trade_fixtures.hpp"

using namespace awmc;
using awmc::testing::trade_base;

namespace {

const AtomSet kFull = AtomSet::full(2);
const AtomSet kOnlyI = AtomSet::single(0);
const AtomSet kEmpty = AtomSet{};

}  // namespace

TEST_CASE("construction rejects dangling references and bad names") {
  KripkeModelData d;
  d.worlds = {"w"};
  d.agents = {"B"};
  d.atoms = {"p"};
  d.relations = {{{"w", "nowhere"}}};
  d.valuation = {{"w"}};
  CHECK_THROWS_AS(KripkeModel(std::move(d)), ModelError);

  KripkeModelData bad_atom;
  bad_atom.worlds = {"w"};
  bad_atom.agents = {"B"};
  bad_atom.atoms = {"top"};
  bad_atom.relations = {{}};
  bad_atom.valuation = {{}};
  CHECK_THROWS_AS(KripkeModel(std::move(bad_atom)), ModelError);
}

TEST_CASE("restriction to the full atom set mirrors the base model") {
  KripkeModel m = trade_base();
  Restriction r = restrict_model(m, kFull);
  CHECK(r.world_count() == 3);
  for (int a = 0; a < m.agent_count(); ++a) {
    auto pairs = r.relation_pairs(a);
    CHECK(pairs.size() == m.relation_pairs(a).size());
  }
  CHECK(r.holds(0, {0, kFull}));        // i at w1
  CHECK_FALSE(r.holds(0, {1, kFull}));  // i at w2
  CHECK(r.holds(1, {1, kFull}));        // l at w2
}

TEST_CASE("restriction to one atom forgets the other") {
  KripkeModel m = trade_base();
  Restriction r = restrict_model(m, kOnlyI);
  CHECK(r.world_count() == 3);
  CHECK(r.defines(0));
  CHECK_FALSE(r.defines(1));
  CHECK(r.holds(0, {0, kOnlyI}));
  CHECK_FALSE(r.holds(0, {1, kOnlyI}));
  CHECK_FALSE(r.holds(0, {2, kOnlyI}));
  CHECK_THROWS_AS(r.holds(1, {0, kOnlyI}), ModelError);  // l outside the vocabulary
}

TEST_CASE("the empty restriction keeps worlds and relations, no vocabulary") {
  KripkeModel m = trade_base();
  Restriction r = restrict_model(m, kEmpty);
  CHECK(r.world_count() == 3);
  CHECK_FALSE(r.defines(0));
  CHECK_FALSE(r.defines(1));
  for (int a = 0; a < m.agent_count(); ++a)
    CHECK(r.relation_pairs(a).size() == m.relation_pairs(a).size());
}

TEST_CASE("restriction rejects atoms outside the model") {
  CHECK_THROWS_AS(restrict_model(trade_base(), AtomSet::single(5)), ModelError);
}

TEST_CASE("lattice size is the powerset size") {
  CHECK(RestrictionLattice(trade_base()).size() == 4);

  KripkeModelData d;
  d.worlds = {"w"};
  d.agents = {"B"};
  d.relations = {{{"w", "w"}}};
  KripkeModel no_atoms(std::move(d));
  RestrictionLattice l(std::move(no_atoms));
  CHECK(l.size() == 1);
  CHECK(l.restriction(kEmpty).world_count() == 1);
}

TEST_CASE("the powerset cap guards lattice construction") {
  KripkeModelData d;
  d.worlds = {"w"};
  d.agents = {"B"};
  d.atoms = {"p0", "p1", "p2"};
  d.relations = {{{"w", "w"}}};
  d.valuation = {{}, {}, {}};
  KripkeModel m(std::move(d));
  CHECK_THROWS_AS(RestrictionLattice(m, 2), ModelError);
  CHECK_NOTHROW(RestrictionLattice(m, 3));
}

TEST_CASE("information cells") {
  KripkeModel m = trade_base();
  Restriction top = restrict_model(m, kFull);
  Restriction mid = restrict_model(m, kOnlyI);

  // Buyer's cell at the actual world is a singleton; the owner's spans all.
  auto buyer = top.info_cell(0, {0, kFull});
  REQUIRE(buyer.size() == 1);
  CHECK(buyer[0] == RestrictedWorld{0, kFull});
  CHECK(top.info_cell(1, {0, kFull}).size() == 3);

  auto cell = mid.info_cell(0, {1, kOnlyI});
  REQUIRE(cell.size() == 2);
  CHECK(cell[0] == RestrictedWorld{1, kOnlyI});
  CHECK(cell[1] == RestrictedWorld{2, kOnlyI});

  // A world tagged with a different subset is not part of this restriction.
  CHECK_THROWS_AS(top.info_cell(0, {0, kOnlyI}), UnknownWorldError);
}

TEST_CASE("equivalence detection agrees with the definition checked by brute force") {
  KripkeModel m = trade_base();
  for (int a = 0; a < m.agent_count(); ++a) {
    auto pairs = m.relation_pairs(a);
    auto related = [&](int w, int v) {
      return std::find(pairs.begin(), pairs.end(), std::make_pair(w, v)) != pairs.end();
    };
    bool expected = true;
    for (int w = 0; w < m.world_count(); ++w) {
      expected = expected && related(w, w);
      for (int v = 0; v < m.world_count(); ++v) {
        if (related(w, v) && !related(v, w)) expected = false;
        for (int u = 0; u < m.world_count(); ++u)
          if (related(w, v) && related(v, u) && !related(w, u)) expected = false;
      }
    }
    CHECK(m.is_equivalence(a) == expected);
    CHECK(expected);  // both trade relations are partitions
  }
  CHECK(m.all_equivalence());
}

TEST_CASE("non-equivalence relations are flagged") {
  auto build = [](std::vector<std::pair<std::string, std::string>> pairs) {
    KripkeModelData d;
    d.worlds = {"a", "b", "c"};
    d.agents = {"x"};
    d.relations = {std::move(pairs)};
    return KripkeModel(std::move(d));
  };
  CHECK(build({{"a", "a"}, {"b", "b"}, {"c", "c"}}).is_equivalence(0));
  CHECK_FALSE(build({{"a", "a"}, {"b", "b"}}).is_equivalence(0));  // c not reflexive
  CHECK_FALSE(build({{"a", "b"}}).is_equivalence(0));
  CHECK_FALSE(build({{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}}).is_equivalence(0));
}

TEST_CASE("restrictions preserve the relation shape at every level") {
  KripkeModel m = trade_base();
  RestrictionLattice lattice(m);
  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    Restriction r = lattice.restriction(AtomSet::from_raw(mask));
    CHECK(r.world_count() == m.world_count());  // never merges worlds
    for (int a = 0; a < m.agent_count(); ++a) {
      auto base_pairs = m.relation_pairs(a);
      auto tagged = r.relation_pairs(a);
      REQUIRE(tagged.size() == base_pairs.size());
      for (std::size_t k = 0; k < tagged.size(); ++k) {
        CHECK(tagged[k].first.world == base_pairs[k].first);
        CHECK(tagged[k].second.world == base_pairs[k].second);
        CHECK(tagged[k].first.tag == AtomSet::from_raw(mask));
      }
    }
  }
}

TEST_CASE("an edge exists at one level exactly when it exists at every level") {
  KripkeModel m = trade_base();
  RestrictionLattice lattice(m);
  for (int a = 0; a < m.agent_count(); ++a) {
    for (int w = 0; w < m.world_count(); ++w) {
      WorldSet at_full = lattice.restriction(kFull).info_cell_mask(a, {w, kFull});
      for (std::uint32_t mask = 0; mask < 4; ++mask) {
        AtomSet x = AtomSet::from_raw(mask);
        CHECK(lattice.restriction(x).info_cell_mask(a, {w, x}) == at_full);
      }
    }
  }
}

TEST_CASE("worlds of different restrictions never compare equal") {
  CHECK(RestrictedWorld{0, kOnlyI} != RestrictedWorld{0, kFull});
  CHECK(RestrictedWorld{0, kOnlyI} != RestrictedWorld{0, kEmpty});
  CHECK(RestrictedWorld{0, kFull} == RestrictedWorld{0, kFull});
}
