#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awmc/formula.hpp"
#include "awmc/threeval.hpp"

namespace awmc {

using StateId = int;
using SpaceId = int;

/// Construction input for a state-space lattice. States are identified by
/// globally unique names; the order is given as (lower, upper) pairs whose
/// reflexive-transitive closure is taken; a projection map is required for
/// every comparable pair of distinct spaces.
struct StateSpaceLatticeData {
  struct Space {
    std::string name;
    std::vector<std::string> states;
  };
  struct Projection {
    std::string lower, upper;
    std::map<std::string, std::string> map;  // upper state -> lower state
  };
  std::vector<Space> spaces;
  std::vector<std::pair<std::string, std::string>> order;  // (lower, upper)
  std::vector<Projection> projections;
};

/// Lattice of disjoint state-spaces with downward projections. Construction
/// resolves references, checks the order is a partial order, and demands a
/// total projection for every comparable pair (ModelError otherwise); the
/// lattice laws themselves (completeness, size monotonicity, surjectivity,
/// commutativity) are checked by validate_frame and reported, not thrown.
class StateSpaceLattice {
 public:
  explicit StateSpaceLattice(StateSpaceLatticeData data);

  int space_count() const { return static_cast<int>(space_states_.size()); }
  int state_count() const { return static_cast<int>(state_names_.size()); }

  const std::string& space_name(SpaceId s) const { return space_names_[s]; }
  const std::string& state_name(StateId s) const { return state_names_[s]; }
  const std::vector<StateId>& states_of(SpaceId s) const { return space_states_[s]; }
  SpaceId space_of(StateId s) const { return state_space_[s]; }

  SpaceId space_index(std::string_view name) const;
  StateId state_index(std::string_view name) const;

  bool below(SpaceId lower, SpaceId upper) const { return leq_[lower][upper]; }

  /// Representation of state s in the (weakly) lower space; requires
  /// below(lower, space_of(s)).
  StateId project(StateId s, SpaceId lower) const;

  /// Greatest lower / least upper bound, when the order provides one.
  std::optional<SpaceId> meet(SpaceId a, SpaceId b) const;
  std::optional<SpaceId> join(SpaceId a, SpaceId b) const;
  /// Unique maximal / minimal space, when they exist.
  std::optional<SpaceId> top() const;
  std::optional<SpaceId> bottom() const;

 private:
  std::vector<std::string> space_names_;
  std::vector<std::vector<StateId>> space_states_;
  std::vector<std::string> state_names_;
  std::vector<SpaceId> state_space_;
  std::vector<int> state_local_;  // position inside its space
  std::vector<std::vector<bool>> leq_;
  // proj_[upper][lower] maps local index in upper to a state of lower;
  // empty when the spaces are not comparable.
  std::vector<std::vector<std::vector<StateId>>> proj_;
};

/// Event (D-up, S): the states of weakly richer spaces projecting into D,
/// together with the base space S where the event is first expressible.
/// Equality compares base space and member set.
struct Event {
  std::vector<StateId> base_members;  // D, sorted
  SpaceId base = -1;
  std::vector<StateId> up;  // upward closure of D, sorted

  bool contains(StateId s) const;
  bool operator==(const Event& o) const { return base == o.base && up == o.up; }
};

/// Upward closure of subset within space: all states of weakly richer
/// spaces whose projection lands in subset. Throws ModelError when subset
/// is not contained in the one space.
std::vector<StateId> upward_closure(const StateSpaceLattice& lattice,
                                    std::span<const StateId> subset, SpaceId space);

/// Builds (D-up, base) from D; throws ModelError when D strays outside base.
Event make_event(const StateSpaceLattice& lattice, std::vector<StateId> base_members,
                 SpaceId base);

/// Unawareness frame: the lattice plus one possibility correspondence per
/// agent (a set of states for every state).
struct UnawarenessFrameData {
  StateSpaceLatticeData lattice;
  std::vector<std::string> agents;
  /// poss[k][s] lists (by name) the states agent k considers possible at
  /// state name s; required for every state.
  std::vector<std::map<std::string, std::vector<std::string>>> poss;
};

class UnawarenessFrame {
 public:
  explicit UnawarenessFrame(UnawarenessFrameData data);
  UnawarenessFrame(StateSpaceLattice lattice, std::vector<std::string> agents,
                   std::vector<std::vector<std::vector<StateId>>> poss);

  const StateSpaceLattice& lattice() const { return lattice_; }
  int agent_count() const { return static_cast<int>(agents_.size()); }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::string& agent_name(int a) const { return agents_[a]; }
  int agent_index(std::string_view name) const;

  /// The set of states agent a considers possible at s (sorted).
  const std::vector<StateId>& possible(int a, StateId s) const { return poss_[a][s]; }

 private:
  StateSpaceLattice lattice_;
  std::vector<std::string> agents_;
  std::vector<std::vector<std::vector<StateId>>> poss_;
};

/// One violation of the frame laws. Structure covers the lattice/projection
/// laws; the five correspondence properties are reported by name.
struct FrameViolation {
  enum class Code {
    NotLattice,
    SpaceSizeOrder,
    ProjectionNotSurjective,
    ProjectionNotCommuting,
    Confinement,
    GeneralizedReflexivity,
    Stationarity,
    ProjectionsPreserveIgnorance,
    ProjectionsPreserveKnowledge,
  };

  Code code;
  int agent = -1;  // -1 for structural violations
  std::string detail;
};

/// Name of the property a code stands for, e.g. "Confinement".
std::string_view frame_violation_name(FrameViolation::Code code);

/// Checks the lattice laws and all five correspondence properties for every
/// agent and state; reports every violation with witnesses.
std::vector<FrameViolation> validate_frame(const UnawarenessFrame& frame);

/// Event negation: ((S \ D)-up, S).
Event neg_event(const StateSpaceLattice& lattice, const Event& e);
/// Event conjunction: intersection of closures, based at the join of the
/// base spaces. Requires at least one event and a lattice join.
Event conj_events(const StateSpaceLattice& lattice, std::span<const Event> events);
/// States where the agent knows the event: possibility set inside the
/// event's closure; base space kept.
Event k_event(const UnawarenessFrame& frame, int agent, const Event& e);
/// States where the agent is aware of the event: possibility set inside the
/// closure of the event's base space; base space kept.
Event a_event(const UnawarenessFrame& frame, int agent, const Event& e);

/// HMS model: a frame whose every atom denotes an event.
struct HmsValuationData {
  std::string base_space;
  std::vector<std::string> states;  // D, by name
};

class HmsModel {
 public:
  /// Validates the frame (ValidationError carrying the full report when any
  /// law fails) and the valuation events.
  HmsModel(UnawarenessFrame frame, std::vector<std::string> atoms,
           std::vector<HmsValuationData> valuation);
  HmsModel(UnawarenessFrame frame, std::vector<std::string> atoms,
           std::vector<Event> valuation);

  const UnawarenessFrame& frame() const { return frame_; }
  const StateSpaceLattice& lattice() const { return frame_.lattice(); }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom_name(int p) const { return atoms_[p]; }
  int atom_index(std::string_view name) const;
  const Event& valuation(int p) const { return valuation_[p]; }

  SpaceId top() const { return top_; }
  SpaceId bottom() const { return bottom_; }

  /// Denotation of a normalized formula as an event.
  Event denotation(const Formula& f) const;

  /// Three-valued satisfaction: true when the state lies in the formula's
  /// event, false when it lies in the negation's, undefined otherwise.
  ThreeVal satisfies(StateId state, const Formula& f) const;

 private:
  void init();

  UnawarenessFrame frame_;
  std::vector<std::string> atoms_;
  std::vector<Event> valuation_;
  SpaceId top_ = -1, bottom_ = -1;
};

}  // namespace awmc
