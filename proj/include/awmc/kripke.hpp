#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "awmc/sets.hpp"

namespace awmc {

inline constexpr int kMaxAtoms = 31;
inline constexpr int kMaxWorlds = 64;
/// Default cap on the atom count when materializing a full restriction
/// lattice (2^|At| restrictions). Overridable per call; the CLI reads
/// AWMC_MAX_ATOMS.
inline constexpr int kDefaultAtomCap = 16;

/// Construction input for a Kripke model. Relations are explicit ordered
/// pairs, valuations explicit world lists, all by name.
struct KripkeModelData {
  std::vector<std::string> worlds;
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  /// relations[k] lists the pairs of agents[k].
  std::vector<std::vector<std::pair<std::string, std::string>>> relations;
  /// valuation[k] lists the worlds where atoms[k] is true.
  std::vector<std::vector<std::string>> valuation;
};

/// Finite Kripke model over a fixed atom vocabulary. Immutable once built;
/// construction resolves and checks every reference (ModelError otherwise).
class KripkeModel {
 public:
  explicit KripkeModel(KripkeModelData data);

  int world_count() const { return static_cast<int>(worlds_.size()); }
  int agent_count() const { return static_cast<int>(agents_.size()); }
  int atom_count() const { return static_cast<int>(atoms_.size()); }

  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& atoms() const { return atoms_; }

  const std::string& world_name(int w) const { return worlds_[w]; }
  const std::string& agent_name(int a) const { return agents_[a]; }
  const std::string& atom_name(int p) const { return atoms_[p]; }

  /// Index lookups; -1 when absent.
  int world_index(std::string_view name) const;
  int agent_index(std::string_view name) const;
  int atom_index(std::string_view name) const;

  /// Successor set of world w under agent a's relation.
  WorldSet successors(int a, int w) const { return succ_[a][w]; }
  /// The relation as explicit ordered pairs, deterministic order.
  std::vector<std::pair<int, int>> relation_pairs(int a) const;

  /// Worlds where atom p holds.
  WorldSet valuation(int p) const { return val_[p]; }
  bool holds(int p, int w) const { return val_[p].contains(w); }

  /// True iff agent a's relation is reflexive, transitive and symmetric.
  bool is_equivalence(int a) const { return equivalence_[a]; }
  /// True iff every agent's relation is an equivalence relation.
  bool all_equivalence() const { return all_equivalence_; }

 private:
  std::vector<std::string> worlds_, agents_, atoms_;
  std::vector<std::vector<WorldSet>> succ_;  // [agent][world]
  std::vector<WorldSet> val_;                // [atom]
  std::vector<bool> equivalence_;
  bool all_equivalence_ = true;
};

/// World of a restricted model: a base world tagged with the atom subset of
/// its restriction. Equality is componentwise, so worlds of different
/// restrictions never coincide.
struct RestrictedWorld {
  int world = -1;
  AtomSet tag;

  bool operator==(const RestrictedWorld&) const = default;
  bool operator<(const RestrictedWorld& o) const {
    if (tag != o.tag) return tag < o.tag;
    return world < o.world;
  }
};

/// Restriction of a Kripke model to an atom subset X: same worlds tagged
/// with X, the same relations carried over, and the valuation defined on
/// exactly X. A lightweight view; the base model owns all data.
class Restriction {
 public:
  Restriction(const KripkeModel* base, AtomSet subset) : base_(base), subset_(subset) {}

  AtomSet atom_subset() const { return subset_; }
  const KripkeModel& base() const { return *base_; }

  int world_count() const { return base_->world_count(); }
  std::vector<RestrictedWorld> worlds() const;
  bool contains(RestrictedWorld w) const {
    return w.tag == subset_ && w.world >= 0 && w.world < base_->world_count();
  }

  /// True iff atom p is in this restriction's vocabulary.
  bool defines(int atom) const { return subset_.contains(atom); }
  /// Truth of atom p at w; requires defines(p).
  bool holds(int atom, RestrictedWorld w) const;

  /// Information cell of agent a at w: every world a's relation reaches
  /// from w inside this restriction. Throws UnknownWorldError when w does
  /// not belong to this restriction.
  std::vector<RestrictedWorld> info_cell(int agent, RestrictedWorld w) const;
  WorldSet info_cell_mask(int agent, RestrictedWorld w) const;

  std::vector<std::pair<RestrictedWorld, RestrictedWorld>> relation_pairs(int agent) const;

 private:
  const KripkeModel* base_;
  AtomSet subset_;
};

/// All restrictions of one Kripke model, ordered by atom-subset inclusion.
/// Materialized over the full powerset; construction refuses atom counts
/// beyond the cap.
class RestrictionLattice {
 public:
  explicit RestrictionLattice(KripkeModel base, int atom_cap = kDefaultAtomCap);

  const KripkeModel& base() const { return base_; }
  int atom_count() const { return base_.atom_count(); }

  /// Number of restrictions: 2^|At|.
  std::size_t size() const { return std::size_t{1} << base_.atom_count(); }

  /// The restriction for subset X; throws ModelError if X has bits outside
  /// the base vocabulary.
  Restriction restriction(AtomSet subset) const;

  /// Order: restriction(X) below restriction(Y) iff X subset of Y.
  static bool below(AtomSet x, AtomSet y) { return x.subset_of(y); }

 private:
  KripkeModel base_;
};

/// Free-function forms of the module operations.
Restriction restrict_model(const KripkeModel& model, AtomSet subset);
RestrictionLattice build_lattice(KripkeModel model, int atom_cap = kDefaultAtomCap);

/// True iff the given name is usable as a world/state/space id: nonempty,
/// printable, no whitespace, no '@' (reserved by world references).
bool is_valid_id(std::string_view name);

}  // namespace awmc
