#include "awmc/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "awmc/error.hpp"
#include "awmc/formula.hpp"

namespace awmc {

namespace {

void require_unique(const std::vector<std::string>& names, const char* what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second)
      throw ModelError(std::string("duplicate ") + what + " name: " + n);
  }
}

}  // namespace

bool is_valid_id(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isspace(u) || !std::isprint(u) || c == '@') return false;
  }
  return true;
}

KripkeModel::KripkeModel(KripkeModelData data)
    : worlds_(std::move(data.worlds)),
      agents_(std::move(data.agents)),
      atoms_(std::move(data.atoms)) {
  if (worlds_.empty()) throw ModelError("a Kripke model needs at least one world");
  if (agents_.empty()) throw ModelError("a Kripke model needs at least one agent");
  if (world_count() > kMaxWorlds)
    throw ModelError("too many worlds (limit " + std::to_string(kMaxWorlds) + ")");
  if (atom_count() > kMaxAtoms)
    throw ModelError("too many atoms (limit " + std::to_string(kMaxAtoms) + ")");

  for (const auto& w : worlds_)
    if (!is_valid_id(w)) throw ModelError("invalid world id: '" + w + "'");
  for (const auto& a : agents_)
    if (!is_identifier(a)) throw ModelError("invalid agent name: '" + a + "'");
  for (const auto& p : atoms_) {
    if (!is_identifier(p)) throw ModelError("invalid atom name: '" + p + "'");
    if (p == "top") throw ModelError("'top' is reserved and cannot name an atom");
  }
  require_unique(worlds_, "world");
  require_unique(agents_, "agent");
  require_unique(atoms_, "atom");

  if (data.relations.size() != agents_.size())
    throw ModelError("relation table does not cover every agent");
  if (data.valuation.size() != atoms_.size())
    throw ModelError("valuation table does not cover every atom");

  succ_.assign(agents_.size(), std::vector<WorldSet>(worlds_.size()));
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    for (const auto& [from, to] : data.relations[a]) {
      int wf = world_index(from), wt = world_index(to);
      if (wf < 0 || wt < 0)
        throw ModelError("relation for agent '" + agents_[a] + "' references unknown world '" +
                         (wf < 0 ? from : to) + "'");
      succ_[a][wf] = succ_[a][wf].with(wt);
    }
  }

  val_.assign(atoms_.size(), WorldSet{});
  for (std::size_t p = 0; p < atoms_.size(); ++p) {
    for (const auto& w : data.valuation[p]) {
      int wi = world_index(w);
      if (wi < 0)
        throw ModelError("valuation of atom '" + atoms_[p] + "' references unknown world '" + w +
                         "'");
      val_[p] = val_[p].with(wi);
    }
  }

  equivalence_.resize(agents_.size());
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    bool eq = true;
    for (int w = 0; w < world_count() && eq; ++w) {
      WorldSet cell = succ_[a][w];
      if (!cell.contains(w)) eq = false;  // reflexivity
      for (int v : cell.members()) {
        if (!succ_[a][v].contains(w)) eq = false;       // symmetry
        if (!succ_[a][v].subset_of(cell)) eq = false;   // transitivity
      }
    }
    equivalence_[a] = eq;
    all_equivalence_ = all_equivalence_ && eq;
  }
}

int KripkeModel::world_index(std::string_view name) const {
  for (std::size_t i = 0; i < worlds_.size(); ++i)
    if (worlds_[i] == name) return static_cast<int>(i);
  return -1;
}

int KripkeModel::agent_index(std::string_view name) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i] == name) return static_cast<int>(i);
  return -1;
}

int KripkeModel::atom_index(std::string_view name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::pair<int, int>> KripkeModel::relation_pairs(int a) const {
  std::vector<std::pair<int, int>> out;
  for (int w = 0; w < world_count(); ++w)
    for (int v : succ_[a][w].members()) out.emplace_back(w, v);
  return out;
}

std::vector<RestrictedWorld> Restriction::worlds() const {
  std::vector<RestrictedWorld> out;
  out.reserve(base_->world_count());
  for (int w = 0; w < base_->world_count(); ++w) out.push_back({w, subset_});
  return out;
}

bool Restriction::holds(int atom, RestrictedWorld w) const {
  if (!defines(atom))
    throw ModelError("atom '" + base_->atom_name(atom) + "' is outside this restriction");
  if (!contains(w)) throw UnknownWorldError("world is not part of this restriction");
  return base_->holds(atom, w.world);
}

WorldSet Restriction::info_cell_mask(int agent, RestrictedWorld w) const {
  if (!contains(w)) throw UnknownWorldError("world is not part of this restriction");
  return base_->successors(agent, w.world);
}

std::vector<RestrictedWorld> Restriction::info_cell(int agent, RestrictedWorld w) const {
  std::vector<RestrictedWorld> out;
  for (int v : info_cell_mask(agent, w).members()) out.push_back({v, subset_});
  return out;
}

std::vector<std::pair<RestrictedWorld, RestrictedWorld>> Restriction::relation_pairs(
    int agent) const {
  std::vector<std::pair<RestrictedWorld, RestrictedWorld>> out;
  for (auto [w, v] : base_->relation_pairs(agent))
    out.push_back({{w, subset_}, {v, subset_}});
  return out;
}

RestrictionLattice::RestrictionLattice(KripkeModel base, int atom_cap) : base_(std::move(base)) {
  if (atom_cap < 0 || atom_cap > kMaxAtoms) atom_cap = kMaxAtoms;
  if (base_.atom_count() > atom_cap) {
    std::ostringstream msg;
    msg << "atom set of size " << base_.atom_count()
        << " exceeds the powerset cap of " << atom_cap
        << " (raise AWMC_MAX_ATOMS or the cap argument)";
    throw ModelError(msg.str());
  }
}

Restriction RestrictionLattice::restriction(AtomSet subset) const {
  return restrict_model(base_, subset);
}

Restriction restrict_model(const KripkeModel& model, AtomSet subset) {
  if (!subset.subset_of(AtomSet::full(model.atom_count())))
    throw ModelError("restriction subset contains atoms outside the model's atom set");
  return Restriction(&model, subset);
}

RestrictionLattice build_lattice(KripkeModel model, int atom_cap) {
  return RestrictionLattice(std::move(model), atom_cap);
}

}  // namespace awmc
