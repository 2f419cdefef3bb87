#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awmc/hms.hpp"
#include "awmc/lattice.hpp"

namespace awmc {

/// Atoms with a defined truth value at every state of the given set.
/// Antitone in the set.
AtomSet atom_profile(const HmsModel& model, std::span<const StateId> states);
/// Profile of one whole space.
AtomSet space_profile(const HmsModel& model, SpaceId space);

/// Pairs each state with its counterpart worlds in the transformed lattice
/// model: the top-space preimages, tagged with the state's space profile.
struct StateCorrespondence {
  /// by_state[s] lists the worlds of l_transform(model) corresponding to s.
  std::vector<std::vector<RestrictedWorld>> by_state;
};

struct LTransform {
  KripkeLatticeModel model;
  StateCorrespondence correspondence;
};

/// Builds the Kripke lattice model encoding the given HMS model: worlds are
/// the top space's states, accessibility follows the possibility
/// correspondences read at the top, and awareness maps record each
/// correspondence's target vocabulary. Throws TransformError when the
/// minimum space for a realized atom profile is not attained.
LTransform l_transform(const HmsModel& model, int atom_cap = kDefaultAtomCap);

/// The correspondence for a single state.
std::vector<RestrictedWorld> state_correspondence(const HmsModel& model, StateId state);

/// Builds the HMS model encoding the given lattice model: one space per
/// restriction, projections along tag inclusion, possibility sets composed
/// from awareness images and information cells. Requires every accessibility
/// relation to be an equivalence relation (TransformError otherwise).
///
/// States are ordered restriction-major: the state of world w under tag X
/// has id X.raw() * world_count + w, named "<world>[p,q]".
HmsModel h_transform(const KripkeLatticeModel& model);

/// The HMS state of h_transform(model) that corresponds to w.
StateId h_state_id(const KripkeLatticeModel& model, RestrictedWorld w);

struct CellCorrespondenceCex {
  int agent;
  RestrictedWorld world;    // w_Y
  RestrictedWorld witness;  // v_Y on which cell and correspondence disagree
};

/// Exhaustively checks, against the given base relations, that a lattice
/// information cell contains v_Y exactly when the possibility set at the
/// matching state contains v's projection. The overload computes the
/// l_transform base itself.
std::optional<CellCorrespondenceCex> check_cell_correspondence(const HmsModel& model,
                                                               const KripkeModel& base);
std::optional<CellCorrespondenceCex> check_cell_correspondence(const HmsModel& model);

struct AgreementCex {
  Formula formula;
  StateId state;         // HMS side
  RestrictedWorld world; // lattice side
  ThreeVal hms_value;
  ThreeVal klm_value;
};

struct AgreementResult {
  std::optional<AgreementCex> counterexample;
  std::size_t formulas = 0;
  std::size_t points = 0;  // (state, world) pairs checked per formula sweep

  bool ok() const { return !counterexample.has_value(); }
};

/// Sweeps every formula up to max_depth over the model's atoms and agents
/// and compares satisfaction on the HMS side against the lattice side across
/// the given correspondence. All three truth values must agree.
AgreementResult hms_klm_agreement(const HmsModel& model, const KripkeLatticeModel& klm,
                                  const StateCorrespondence& corr, int max_depth);

/// Agreement across the model's own transform.
AgreementResult check_equivalence_l(const HmsModel& model, int max_depth);

/// Agreement between a lattice model and its HMS encoding, at every lattice
/// world.
AgreementResult check_equivalence_h(const KripkeLatticeModel& model, int max_depth);

/// Structural equality of two lattice models under a world renaming:
/// world_map[w] is the b-world for a-world w. Atom and agent vocabularies
/// must match positionally.
bool lattice_models_equal(const KripkeLatticeModel& a, const KripkeLatticeModel& b,
                          std::span<const int> world_map);

}  // namespace awmc
