#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "awmc/hms.hpp"
#include "awmc/lattice.hpp"
#include "awmc/transforms.hpp"

namespace awmc {

/// A model file holds either kind, discriminated by its "kind" field
/// ("kripke_lattice" or "hms"). Loading validates: a file loads if and only
/// if the corresponding validator accepts it and every reference resolves.
using LoadedModel = std::variant<KripkeLatticeModel, HmsModel>;

LoadedModel load_model(const std::string& path, int atom_cap = kDefaultAtomCap);
LoadedModel load_model_text(const std::string& text, int atom_cap = kDefaultAtomCap);

std::string to_json_text(const KripkeLatticeModel& model);
std::string to_json_text(const HmsModel& model);

/// Writes atomically: serializes fully, then writes the file in one pass.
void save_model(const std::string& path, const KripkeLatticeModel& model);
void save_model(const std::string& path, const HmsModel& model);

/// State-correspondence sidecar for a transformed model: state name ->
/// list of worldrefs.
std::string correspondence_json_text(const HmsModel& model, const LTransform& t);

/// Parses a `id@{p,q}` world reference against the model's vocabulary.
/// Throws UnknownWorldError when the id or an atom does not resolve, or the
/// reference is malformed.
RestrictedWorld parse_world_ref(const KripkeModel& model, const std::string& ref);

}  // namespace awmc
