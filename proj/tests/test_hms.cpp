#include <algorithm>

#include "doctest.h"

#include "awmc/error.hpp"
#include "awmc/hms.hpp"
#include "trade_fixtures.hpp"

using namespace awmc;
using awmc::testing::trade_frame_data;
using awmc::testing::trade_hms;

namespace {

Formula fof(const char* text) { return parse_formula(text); }

StateId st(const HmsModel& m, const char* name) {
  StateId s = m.lattice().state_index(name);
  REQUIRE(s >= 0);
  return s;
}

std::vector<StateId> states(const HmsModel& m, std::initializer_list<const char*> names) {
  std::vector<StateId> out;
  for (const char* n : names) out.push_back(st(m, n));
  std::sort(out.begin(), out.end());
  return out;
}

bool has_violation(const std::vector<FrameViolation>& vs, FrameViolation::Code code) {
  return std::any_of(vs.begin(), vs.end(), [&](const auto& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("the trade frame satisfies all five properties") {
  UnawarenessFrame frame(trade_frame_data());
  CHECK(validate_frame(frame).empty());
  CHECK_NOTHROW(trade_hms());
}

TEST_CASE("upward closure follows the projections") {
  HmsModel m = trade_hms();
  SpaceId s_i = m.lattice().space_index("S_i");
  SpaceId s_il = m.lattice().space_index("S_il");

  std::vector<StateId> not_i = {st(m, "-i")};
  CHECK(upward_closure(m.lattice(), not_i, s_i) ==
        states(m, {"-i", "(-i,l)", "(-i,-l)"}));

  CHECK(upward_closure(m.lattice(), {}, s_i).empty());

  // The top space only closes onto itself.
  std::vector<StateId> top = m.lattice().states_of(s_il);
  auto closed = upward_closure(m.lattice(), top, s_il);
  std::sort(top.begin(), top.end());
  CHECK(closed == top);

  // Members must belong to the given space.
  std::vector<StateId> foreign = {st(m, "(i,l)")};
  CHECK_THROWS_AS(upward_closure(m.lattice(), foreign, s_i), ModelError);
}

TEST_CASE("confinement rejects straddling possibility sets") {
  UnawarenessFrameData d = trade_frame_data();
  d.poss[0]["(i,l)"] = {"(i,l)", "i"};  // two spaces at once
  auto vs = validate_frame(UnawarenessFrame(std::move(d)));
  CHECK(has_violation(vs, FrameViolation::Code::Confinement));
}

TEST_CASE("stationarity reports the witnessing pair") {
  // The owner's cell at (i,l) spans the top space while the cell at the
  // member (-i,l) is a proper subset.
  UnawarenessFrameData d = trade_frame_data();
  d.poss[1]["(-i,l)"] = {"(-i,l)"};
  auto vs = validate_frame(UnawarenessFrame(std::move(d)));
  auto it = std::find_if(vs.begin(), vs.end(), [](const FrameViolation& v) {
    return v.code == FrameViolation::Code::Stationarity;
  });
  REQUIRE(it != vs.end());
  CHECK(it->agent == 1);
  CHECK(it->detail.find("(i,l)") != std::string::npos);
  CHECK(it->detail.find("(-i,l)") != std::string::npos);
}

TEST_CASE("an empty possibility set breaks reflexivity") {
  UnawarenessFrameData d = trade_frame_data();
  d.poss[0]["e"] = {};
  auto vs = validate_frame(UnawarenessFrame(std::move(d)));
  CHECK(has_violation(vs, FrameViolation::Code::GeneralizedReflexivity));
}

TEST_CASE("a poset without joins is not accepted as a lattice") {
  UnawarenessFrameData d;
  d.lattice.spaces = {{"A", {"a"}}, {"B", {"b"}}};
  d.agents = {"x"};
  d.poss.resize(1);
  d.poss[0] = {{"a", {"a"}}, {"b", {"b"}}};
  auto vs = validate_frame(UnawarenessFrame(std::move(d)));
  CHECK(has_violation(vs, FrameViolation::Code::NotLattice));
}

TEST_CASE("empty events with different base spaces stay distinct") {
  HmsModel m = trade_hms();
  Event at_i = make_event(m.lattice(), {}, m.lattice().space_index("S_i"));
  Event at_top = make_event(m.lattice(), {}, m.lattice().space_index("S_il"));
  CHECK(at_i.up.empty());
  CHECK(at_top.up.empty());
  CHECK_FALSE(at_i == at_top);
  CHECK(at_i == make_event(m.lattice(), {}, m.lattice().space_index("S_i")));
}

TEST_CASE("event negation complements within the base space") {
  HmsModel m = trade_hms();
  const Event& ei = m.valuation(0);  // the innovation event, based at S_i
  Event n = neg_event(m.lattice(), ei);
  CHECK(n.base == m.lattice().space_index("S_i"));
  CHECK(n.base_members == states(m, {"-i"}));
  CHECK(n.up == states(m, {"-i", "(-i,l)", "(-i,-l)"}));
  CHECK(neg_event(m.lattice(), n) == ei);
}

TEST_CASE("event conjunction joins the base spaces") {
  HmsModel m = trade_hms();
  Event parts[2] = {m.valuation(0), m.valuation(1)};
  Event c = conj_events(m.lattice(), parts);
  CHECK(c.base == m.lattice().space_index("S_il"));
  CHECK(c.up == states(m, {"(i,l)"}));

  Event single[1] = {m.valuation(0)};
  CHECK(conj_events(m.lattice(), single) == m.valuation(0));
}

TEST_CASE("knowledge and awareness events on the trade model") {
  HmsModel m = trade_hms();
  Event parts[2] = {m.valuation(0), m.valuation(1)};
  Event both = conj_events(m.lattice(), parts);

  // Only the buyer's singleton cell at (i,l) sits inside the conjunction.
  Event kb = k_event(m.frame(), 0, both);
  CHECK(kb.up == states(m, {"(i,l)"}));
  CHECK(kb.base == m.lattice().space_index("S_il"));

  // Awareness of the lawsuit: every other cell lands in a space where the
  // lawsuit is inexpressible.
  Event ab = a_event(m.frame(), 0, m.valuation(1));
  CHECK(ab.up == states(m, {"(i,l)"}));
  CHECK(ab.base == m.lattice().space_index("S_il"));

  // Knowing the empty event keeps its base space.
  Event empty = make_event(m.lattice(), {}, m.lattice().space_index("S_i"));
  Event ke = k_event(m.frame(), 0, empty);
  CHECK(ke.up.empty());
  CHECK(ke.base == m.lattice().space_index("S_i"));
}

TEST_CASE("denotations compose the event algebra") {
  HmsModel m = trade_hms();
  CHECK(m.denotation(fof("i")) == m.valuation(0));
  CHECK(m.denotation(fof("K{B}(i & l)")).up == states(m, {"(i,l)"}));

  Event top = m.denotation(fof("top"));
  CHECK(top.base == m.bottom());
  CHECK(top.up.size() == static_cast<std::size_t>(m.lattice().state_count()));

  CHECK_THROWS_AS(m.denotation(fof("q")), UnknownSymbolError);
}

TEST_CASE("three-valued satisfaction on the trade model") {
  HmsModel m = trade_hms();
  CHECK(m.satisfies(st(m, "(i,l)"), fof("K{B}(i & l)")) == ThreeVal::True);
  CHECK(m.satisfies(st(m, "-i"), fof("l")) == ThreeVal::Undefined);
  CHECK(m.satisfies(st(m, "(i,l)"), fof("A{O} l & !K{O} l")) == ThreeVal::True);
  CHECK(m.satisfies(st(m, "(i,l)"), fof("A{O} i & A{O} l")) == ThreeVal::True);
  CHECK(m.satisfies(st(m, "(-i,l)"), fof("K{B} !i")) == ThreeVal::True);
  CHECK(m.satisfies(st(m, "(-i,l)"), fof("A{B} l")) == ThreeVal::False);
  CHECK_THROWS_AS(m.satisfies(99, fof("top")), UnknownWorldError);
}

TEST_CASE("the event operators stay well-formed under composition") {
  HmsModel m = trade_hms();
  std::vector<Event> layer = {m.valuation(0), m.valuation(1), m.denotation(fof("top"))};
  for (int round = 0; round < 2; ++round) {
    std::vector<Event> next;
    for (const Event& e : layer) {
      next.push_back(neg_event(m.lattice(), e));
      for (int a = 0; a < 2; ++a) {
        next.push_back(k_event(m.frame(), a, e));
        next.push_back(a_event(m.frame(), a, e));
      }
      for (const Event& o : layer) {
        Event parts[2] = {e, o};
        next.push_back(conj_events(m.lattice(), parts));
      }
    }
    // Reconstructing each event from its own base members must reproduce it.
    for (const Event& e : next) CHECK(make_event(m.lattice(), e.base_members, e.base) == e);
    layer = std::move(next);
  }
}

TEST_CASE("an event and its negation partition every richer space") {
  HmsModel m = trade_hms();
  std::vector<Event> events = {m.valuation(0), m.valuation(1),
                               m.denotation(fof("K{B} i")), m.denotation(fof("!l"))};
  for (const Event& e : events) {
    Event n = neg_event(m.lattice(), e);
    std::vector<StateId> overlap;
    std::set_intersection(e.up.begin(), e.up.end(), n.up.begin(), n.up.end(),
                          std::back_inserter(overlap));
    CHECK(overlap.empty());
    for (SpaceId s = 0; s < m.lattice().space_count(); ++s) {
      if (!m.lattice().below(e.base, s)) continue;
      for (StateId w : m.lattice().states_of(s)) CHECK((e.contains(w) || n.contains(w)));
    }
  }
}

TEST_CASE("undefinedness coincides with some atom lacking a truth value") {
  HmsModel m = trade_hms();
  for (const Formula& f : enumerate_formulas({"i", "l"}, {"B", "O"}, 2)) {
    AtomSet needed;
    for (const auto& name : f.atoms()) needed = needed.with(m.atom_index(name));
    for (StateId s = 0; s < m.lattice().state_count(); ++s) {
      bool some_atom_undefined = false;
      for (int p : needed.members()) {
        const Event& e = m.valuation(p);
        Event n = neg_event(m.lattice(), e);
        if (!e.contains(s) && !n.contains(s)) some_atom_undefined = true;
      }
      bool undefined = m.satisfies(s, f) == ThreeVal::Undefined;
      if (undefined != some_atom_undefined) {
        CAPTURE(f.to_string());
        CAPTURE(m.lattice().state_name(s));
        FAIL("definedness mismatch");
      }
    }
  }
}

TEST_CASE("knowledge is factive") {
  HmsModel m = trade_hms();
  const char* agents[] = {"B", "O"};
  for (const Formula& f : enumerate_formulas({"i", "l"}, {"B", "O"}, 2)) {
    for (const char* a : agents) {
      Formula kf = Formula::knows(a, f);
      for (StateId s = 0; s < m.lattice().state_count(); ++s) {
        if (m.satisfies(s, kf) == ThreeVal::True) CHECK(m.satisfies(s, f) == ThreeVal::True);
      }
    }
  }
}
