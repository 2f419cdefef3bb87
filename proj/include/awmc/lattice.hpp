#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awmc/formula.hpp"
#include "awmc/kripke.hpp"
#include "awmc/threeval.hpp"

namespace awmc {

/// Total awareness map of one agent: for every restricted world w_X the
/// world the agent's (un)awareness turns it into. Stored as a dense table
/// over (subset, world).
class AwarenessTable {
 public:
  AwarenessTable(int atom_count, int world_count);

  /// Identity map: every world is its own awareness image.
  static AwarenessTable identity(int atom_count, int world_count);

  RestrictedWorld image(RestrictedWorld w) const { return table_[index(w)]; }
  void set(RestrictedWorld w, RestrictedWorld img) { table_[index(w)] = img; }

  int atom_count() const { return atom_count_; }
  int world_count() const { return world_count_; }

 private:
  std::size_t index(RestrictedWorld w) const;

  int atom_count_, world_count_;
  std::vector<RestrictedWorld> table_;
};

/// One violation of the awareness-map properties.
///   Downwards:     the image must be the same base world under a subset tag.
///   Introspection: inside an image's information cell, every world's own
///                  image must stay in that cell.
///   Surprise:      images at lower tags must be the intersection-forced ones.
struct AwarenessViolation {
  enum class Kind { NotDownwards, NotIntrospective, Surprise };

  Kind kind;
  int agent;
  RestrictedWorld at;                      // the world whose image misbehaves
  RestrictedWorld image;                   // its (claimed) image
  std::optional<RestrictedWorld> witness;  // Introspection: the stray cell member
  std::optional<RestrictedWorld> expected; // Surprise: the forced image
  std::optional<RestrictedWorld> got;      // Surprise: the actual image

  std::string describe(const KripkeModel& model) const;
};

/// Checks every agent's table for the three awareness-map properties over
/// the whole lattice. Empty result means valid. Deterministic order: agents,
/// then subsets descending from the full set, then worlds.
std::vector<AwarenessViolation> validate_awareness(const RestrictionLattice& lattice,
                                                   std::span<const AwarenessTable> maps);

/// Renders a worldref `id@{a,b}` for diagnostics; atoms sorted by index.
std::string world_ref(const KripkeModel& model, RestrictedWorld w);

/// A restriction lattice equipped with one validated awareness map per
/// agent. Construction runs the property validator and throws
/// ValidationError (message carries every violation) when any map is bad.
class KripkeLatticeModel {
 public:
  KripkeLatticeModel(KripkeModel base, std::vector<AwarenessTable> awareness,
                     int atom_cap = kDefaultAtomCap);

  const RestrictionLattice& lattice() const { return lattice_; }
  const KripkeModel& base() const { return lattice_.base(); }

  RestrictedWorld awareness_image(int agent, RestrictedWorld w) const {
    return awareness_[agent].image(w);
  }
  const std::vector<AwarenessTable>& awareness() const { return awareness_; }

  /// True iff w is a world of some restriction of this lattice.
  bool contains(RestrictedWorld w) const;

  /// Three-valued satisfaction at a lattice world. Throws UnknownWorldError
  /// for foreign worlds and UnknownSymbolError when the formula mentions
  /// atoms or agents outside the model's vocabulary.
  ThreeVal satisfies(RestrictedWorld at, const Formula& f) const;

 private:
  RestrictionLattice lattice_;
  std::vector<AwarenessTable> awareness_;
};

struct ValidityCounterexample {
  std::size_t model_index;
  RestrictedWorld world;
};

struct ValidityResult {
  bool valid = true;
  std::optional<ValidityCounterexample> counterexample;
};

/// Non-standard validity: f must be satisfied at every lattice world of
/// every model where all of f's atoms have a defined truth value. Returns
/// the first counterexample in deterministic order otherwise.
ValidityResult valid_over(std::span<const KripkeLatticeModel> models, const Formula& f);

}  // namespace awmc
