#include "awmc/transforms.hpp"

#include <algorithm>
#include <sstream>

#include "awmc/error.hpp"

namespace awmc {

namespace {

bool sorted_contains(const std::vector<StateId>& v, StateId s) {
  return std::binary_search(v.begin(), v.end(), s);
}

}  // namespace

AtomSet atom_profile(const HmsModel& model, std::span<const StateId> states) {
  AtomSet profile;
  for (int p = 0; p < model.atom_count(); ++p) {
    const Event& e = model.valuation(p);
    Event ne = neg_event(model.lattice(), e);
    bool defined_everywhere = true;
    for (StateId s : states)
      defined_everywhere = defined_everywhere && (e.contains(s) || ne.contains(s));
    if (defined_everywhere) profile = profile.with(p);
  }
  return profile;
}

AtomSet space_profile(const HmsModel& model, SpaceId space) {
  const auto& states = model.lattice().states_of(space);
  return atom_profile(model, states);
}

namespace {

struct ProfileIndex {
  // For every realized profile, the minimum space attaining it.
  std::vector<AtomSet> profile_of_space;
  std::vector<std::pair<AtomSet, SpaceId>> min_space;  // sorted by profile

  std::optional<SpaceId> min_for(AtomSet profile) const {
    for (const auto& [x, s] : min_space)
      if (x == profile) return s;
    return std::nullopt;
  }
};

ProfileIndex build_profile_index(const HmsModel& model) {
  const StateSpaceLattice& lat = model.lattice();
  ProfileIndex idx;
  idx.profile_of_space.resize(lat.space_count());
  for (SpaceId s = 0; s < lat.space_count(); ++s)
    idx.profile_of_space[s] = space_profile(model, s);

  std::vector<AtomSet> seen;
  for (SpaceId s = 0; s < lat.space_count(); ++s) {
    AtomSet x = idx.profile_of_space[s];
    if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
    seen.push_back(x);
    // Infimum of all spaces sharing the profile; the minimum is attained
    // only when that infimum carries the profile itself.
    std::optional<SpaceId> inf;
    std::vector<std::string> candidates;
    for (SpaceId t = 0; t < lat.space_count(); ++t) {
      if (idx.profile_of_space[t] != x) continue;
      candidates.push_back(lat.space_name(t));
      inf = inf ? lat.meet(*inf, t) : std::optional<SpaceId>(t);
      if (!inf) break;
    }
    if (!inf || idx.profile_of_space[*inf] != x) {
      std::ostringstream os;
      os << "minimum space for atom profile {";
      for (int p : x.members()) os << ' ' << model.atom_name(p);
      os << " } is not attained; spaces with that profile:";
      for (const auto& c : candidates) os << ' ' << c;
      throw TransformError(os.str());
    }
    idx.min_space.emplace_back(x, *inf);
  }
  return idx;
}

}  // namespace

LTransform l_transform(const HmsModel& model, int atom_cap) {
  const StateSpaceLattice& lat = model.lattice();
  const UnawarenessFrame& frame = model.frame();
  const SpaceId top = model.top();
  const std::vector<StateId>& top_states = lat.states_of(top);
  const int wc = static_cast<int>(top_states.size());
  const int n = model.atom_count();

  ProfileIndex profiles = build_profile_index(model);

  // Base Kripke model: worlds are the top states; v is accessible from w
  // when v's projection into w's possibility space is one of the
  // possibilities entertained at w.
  KripkeModelData data;
  for (StateId s : top_states) data.worlds.push_back(lat.state_name(s));
  data.agents = frame.agents();
  data.atoms = model.atoms();
  data.relations.resize(data.agents.size());
  for (int a = 0; a < frame.agent_count(); ++a) {
    for (int w = 0; w < wc; ++w) {
      const auto& pi = frame.possible(a, top_states[w]);
      SpaceId pi_space = lat.space_of(pi.front());
      for (int v = 0; v < wc; ++v) {
        if (sorted_contains(pi, lat.project(top_states[v], pi_space)))
          data.relations[a].emplace_back(data.worlds[w], data.worlds[v]);
      }
    }
  }
  data.valuation.resize(data.atoms.size());
  for (int p = 0; p < n; ++p) {
    for (int w = 0; w < wc; ++w)
      if (model.valuation(p).contains(top_states[w]))
        data.valuation[p].push_back(data.worlds[w]);
  }
  KripkeModel base(std::move(data));

  // Awareness maps. At a realized profile X the agent's image tag is the
  // profile of the space her possibility set occupies at the X-minimal
  // subjective state; unrealized profiles take the value forced from the
  // full vocabulary by the no-surprises law.
  AtomSet full = AtomSet::full(n);
  SpaceId s_full = *profiles.min_for(full);  // the top realizes the full profile
  std::vector<AwarenessTable> awareness(frame.agent_count(), AwarenessTable(n, wc));
  for (int a = 0; a < frame.agent_count(); ++a) {
    std::vector<AtomSet> top_tag(wc);
    for (int w = 0; w < wc; ++w) {
      StateId subjective = lat.project(top_states[w], s_full);
      const auto& pi = frame.possible(a, subjective);
      top_tag[w] = profiles.profile_of_space[lat.space_of(pi.front())];
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      AtomSet x = AtomSet::from_raw(mask);
      std::optional<SpaceId> sx = profiles.min_for(x);
      for (int w = 0; w < wc; ++w) {
        AtomSet y;
        if (sx) {
          StateId subjective = lat.project(top_states[w], *sx);
          const auto& pi = frame.possible(a, subjective);
          y = profiles.profile_of_space[lat.space_of(pi.front())];
        } else {
          y = x.intersect(top_tag[w]);
        }
        awareness[a].set({w, x}, {w, y});
      }
    }
  }

  LTransform out{KripkeLatticeModel(std::move(base), std::move(awareness), atom_cap),
                 StateCorrespondence{}};

  out.correspondence.by_state.resize(lat.state_count());
  for (StateId s = 0; s < lat.state_count(); ++s) {
    AtomSet x = profiles.profile_of_space[lat.space_of(s)];
    for (int w = 0; w < wc; ++w)
      if (lat.project(top_states[w], lat.space_of(s)) == s)
        out.correspondence.by_state[s].push_back({w, x});
  }
  return out;
}

std::vector<RestrictedWorld> state_correspondence(const HmsModel& model, StateId state) {
  const StateSpaceLattice& lat = model.lattice();
  if (state < 0 || state >= lat.state_count())
    throw UnknownWorldError("state is not part of this model");
  AtomSet x = space_profile(model, lat.space_of(state));
  const std::vector<StateId>& top_states = lat.states_of(model.top());
  std::vector<RestrictedWorld> out;
  for (int w = 0; w < static_cast<int>(top_states.size()); ++w)
    if (lat.project(top_states[w], lat.space_of(state)) == state) out.push_back({w, x});
  return out;
}

namespace {

std::string tag_suffix(const KripkeModel& base, AtomSet tag) {
  std::string out = "[";
  bool first = true;
  for (int p : tag.members()) {
    if (!first) out += ',';
    out += base.atom_name(p);
    first = false;
  }
  out += ']';
  return out;
}

std::string tagged_state_name(const KripkeModel& base, int w, AtomSet tag) {
  return base.world_name(w) + tag_suffix(base, tag);
}

}  // namespace

StateId h_state_id(const KripkeLatticeModel& model, RestrictedWorld w) {
  return static_cast<StateId>(w.tag.raw()) * model.base().world_count() + w.world;
}

HmsModel h_transform(const KripkeLatticeModel& model) {
  const KripkeModel& base = model.base();
  for (int a = 0; a < base.agent_count(); ++a)
    if (!base.is_equivalence(a))
      throw TransformError("agent '" + base.agent_name(a) +
                           "' has a non-equivalence accessibility relation");

  const int n = base.atom_count();
  const int wc = base.world_count();
  const std::uint32_t masks = std::uint32_t{1} << n;

  StateSpaceLatticeData lat;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    AtomSet x = AtomSet::from_raw(mask);
    StateSpaceLatticeData::Space sp;
    sp.name = "W" + tag_suffix(base, x);
    for (int w = 0; w < wc; ++w) sp.states.push_back(tagged_state_name(base, w, x));
    lat.spaces.push_back(std::move(sp));
  }
  for (std::uint32_t lo = 0; lo < masks; ++lo) {
    for (std::uint32_t hi = 0; hi < masks; ++hi) {
      if (lo == hi || !AtomSet::from_raw(lo).subset_of(AtomSet::from_raw(hi))) continue;
      lat.order.emplace_back(lat.spaces[lo].name, lat.spaces[hi].name);
      StateSpaceLatticeData::Projection pr;
      pr.lower = lat.spaces[lo].name;
      pr.upper = lat.spaces[hi].name;
      for (int w = 0; w < wc; ++w) pr.map[lat.spaces[hi].states[w]] = lat.spaces[lo].states[w];
      lat.projections.push_back(std::move(pr));
    }
  }

  StateSpaceLattice lattice{std::move(lat)};

  // Possibility sets compose unawareness with uncertainty: the information
  // cell of the awareness image.
  std::vector<std::vector<std::vector<StateId>>> poss(
      base.agent_count(), std::vector<std::vector<StateId>>(lattice.state_count()));
  for (int a = 0; a < base.agent_count(); ++a) {
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
      for (int w = 0; w < wc; ++w) {
        RestrictedWorld img = model.awareness_image(a, {w, AtomSet::from_raw(mask)});
        std::vector<StateId> cell;
        for (int v : base.successors(a, img.world).members())
          cell.push_back(h_state_id(model, {v, img.tag}));
        std::sort(cell.begin(), cell.end());
        poss[a][h_state_id(model, {w, AtomSet::from_raw(mask)})] = std::move(cell);
      }
    }
  }

  UnawarenessFrame frame(std::move(lattice), base.agents(), std::move(poss));

  std::vector<Event> valuation;
  for (int p = 0; p < n; ++p) {
    AtomSet single = AtomSet::single(p);
    std::vector<StateId> d;
    for (int w : base.valuation(p).members())
      d.push_back(static_cast<StateId>(single.raw()) * wc + w);
    valuation.push_back(make_event(frame.lattice(), std::move(d),
                                   static_cast<SpaceId>(single.raw())));
  }

  return HmsModel(std::move(frame), base.atoms(), std::move(valuation));
}

std::optional<CellCorrespondenceCex> check_cell_correspondence(const HmsModel& model,
                                                               const KripkeModel& base) {
  const StateSpaceLattice& lat = model.lattice();
  const UnawarenessFrame& frame = model.frame();
  const std::vector<StateId>& top_states = lat.states_of(model.top());
  const int wc = static_cast<int>(top_states.size());

  for (int a = 0; a < frame.agent_count(); ++a) {
    for (int w = 0; w < wc; ++w) {
      const auto& pi = frame.possible(a, top_states[w]);
      SpaceId s = lat.space_of(pi.front());
      AtomSet y = space_profile(model, s);
      for (int v = 0; v < wc; ++v) {
        bool in_cell = base.successors(a, w).contains(v);
        bool possible = sorted_contains(pi, lat.project(top_states[v], s));
        if (in_cell != possible)
          return CellCorrespondenceCex{a, {w, y}, {v, y}};
      }
    }
  }
  return std::nullopt;
}

std::optional<CellCorrespondenceCex> check_cell_correspondence(const HmsModel& model) {
  return check_cell_correspondence(model, l_transform(model).model.base());
}

AgreementResult hms_klm_agreement(const HmsModel& model, const KripkeLatticeModel& klm,
                                  const StateCorrespondence& corr, int max_depth) {
  std::vector<Formula> formulas =
      enumerate_formulas(model.atoms(), model.frame().agents(), max_depth);
  AgreementResult result;
  result.formulas = formulas.size();
  for (StateId s = 0; s < model.lattice().state_count(); ++s)
    result.points += corr.by_state[s].size();

  for (const Formula& f : formulas) {
    Event e = model.denotation(f);
    Event ne = neg_event(model.lattice(), e);
    for (StateId s = 0; s < model.lattice().state_count(); ++s) {
      ThreeVal hv = e.contains(s)    ? ThreeVal::True
                    : ne.contains(s) ? ThreeVal::False
                                     : ThreeVal::Undefined;
      for (RestrictedWorld w : corr.by_state[s]) {
        ThreeVal kv = klm.satisfies(w, f);
        if (hv != kv) {
          result.counterexample = AgreementCex{f, s, w, hv, kv};
          return result;
        }
      }
    }
  }
  return result;
}

AgreementResult check_equivalence_l(const HmsModel& model, int max_depth) {
  LTransform t = l_transform(model);
  return hms_klm_agreement(model, t.model, t.correspondence, max_depth);
}

AgreementResult check_equivalence_h(const KripkeLatticeModel& model, int max_depth) {
  HmsModel h = h_transform(model);
  const KripkeModel& base = model.base();
  std::vector<Formula> formulas = enumerate_formulas(base.atoms(), base.agents(), max_depth);
  AgreementResult result;
  result.formulas = formulas.size();
  result.points = (std::size_t{1} << base.atom_count()) * base.world_count();

  for (const Formula& f : formulas) {
    Event e = h.denotation(f);
    Event ne = neg_event(h.lattice(), e);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << base.atom_count()); ++mask) {
      for (int w = 0; w < base.world_count(); ++w) {
        RestrictedWorld rw{w, AtomSet::from_raw(mask)};
        StateId s = h_state_id(model, rw);
        ThreeVal hv = e.contains(s)    ? ThreeVal::True
                      : ne.contains(s) ? ThreeVal::False
                                       : ThreeVal::Undefined;
        ThreeVal kv = model.satisfies(rw, f);
        if (hv != kv) {
          result.counterexample = AgreementCex{f, s, rw, hv, kv};
          return result;
        }
      }
    }
  }
  return result;
}

bool lattice_models_equal(const KripkeLatticeModel& a, const KripkeLatticeModel& b,
                          std::span<const int> world_map) {
  const KripkeModel& ma = a.base();
  const KripkeModel& mb = b.base();
  if (ma.atoms() != mb.atoms() || ma.agents() != mb.agents()) return false;
  if (ma.world_count() != mb.world_count() ||
      world_map.size() != static_cast<std::size_t>(ma.world_count()))
    return false;

  for (int p = 0; p < ma.atom_count(); ++p)
    for (int w = 0; w < ma.world_count(); ++w)
      if (ma.holds(p, w) != mb.holds(p, world_map[w])) return false;

  for (int ag = 0; ag < ma.agent_count(); ++ag)
    for (int w = 0; w < ma.world_count(); ++w)
      for (int v = 0; v < ma.world_count(); ++v)
        if (ma.successors(ag, w).contains(v) !=
            mb.successors(ag, world_map[w]).contains(world_map[v]))
          return false;

  const std::uint32_t masks = std::uint32_t{1} << ma.atom_count();
  for (int ag = 0; ag < ma.agent_count(); ++ag) {
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
      for (int w = 0; w < ma.world_count(); ++w) {
        RestrictedWorld img_a = a.awareness_image(ag, {w, AtomSet::from_raw(mask)});
        RestrictedWorld img_b = b.awareness_image(ag, {world_map[w], AtomSet::from_raw(mask)});
        if (img_b.world != world_map[img_a.world] || img_b.tag != img_a.tag) return false;
      }
    }
  }
  return true;
}

}  // namespace awmc
