#include "awmc/hms.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "awmc/error.hpp"
#include "awmc/kripke.hpp"

namespace awmc {

namespace {

std::vector<StateId> sorted_unique(std::vector<StateId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool sorted_contains(const std::vector<StateId>& v, StateId s) {
  return std::binary_search(v.begin(), v.end(), s);
}

bool sorted_subset(const std::vector<StateId>& a, const std::vector<StateId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

StateSpaceLattice::StateSpaceLattice(StateSpaceLatticeData data) {
  if (data.spaces.empty()) throw ModelError("a state-space lattice needs at least one space");

  std::unordered_map<std::string, SpaceId> space_idx;
  std::unordered_map<std::string, StateId> state_idx;
  for (const auto& sp : data.spaces) {
    if (!is_valid_id(sp.name)) throw ModelError("invalid space name: '" + sp.name + "'");
    if (sp.states.empty()) throw ModelError("space '" + sp.name + "' has no states");
    if (!space_idx.emplace(sp.name, space_count()).second)
      throw ModelError("duplicate space name: '" + sp.name + "'");
    space_names_.push_back(sp.name);
    std::vector<StateId> ids;
    for (const auto& st : sp.states) {
      if (!is_valid_id(st)) throw ModelError("invalid state name: '" + st + "'");
      if (!state_idx.emplace(st, state_count()).second)
        throw ModelError("state '" + st + "' appears in more than one space");
      ids.push_back(state_count());
      state_names_.push_back(st);
      state_space_.push_back(static_cast<SpaceId>(space_states_.size()));
      state_local_.push_back(static_cast<int>(ids.size()) - 1);
    }
    space_states_.push_back(std::move(ids));
  }

  const int n = space_count();
  leq_.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [lo, hi] : data.order) {
    auto li = space_idx.find(lo), hi_it = space_idx.find(hi);
    if (li == space_idx.end() || hi_it == space_idx.end())
      throw ModelError("order references unknown space '" +
                       (li == space_idx.end() ? lo : hi) + "'");
    leq_[li->second][hi_it->second] = true;
  }
  // Reflexive-transitive closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq_[i][k])
        for (int j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (leq_[i][j] && leq_[j][i])
        throw ModelError("space order is not antisymmetric between '" + space_names_[i] +
                         "' and '" + space_names_[j] + "'");

  proj_.assign(n, std::vector<std::vector<StateId>>(n));
  for (const auto& pr : data.projections) {
    auto lo = space_idx.find(pr.lower), hi = space_idx.find(pr.upper);
    if (lo == space_idx.end() || hi == space_idx.end())
      throw ModelError("projection references unknown space '" +
                       (lo == space_idx.end() ? pr.lower : pr.upper) + "'");
    SpaceId l = lo->second, u = hi->second;
    if (l == u) throw ModelError("projection from a space to itself is implicit");
    if (!leq_[l][u])
      throw ModelError("projection given for incomparable spaces '" + pr.lower + "' and '" +
                       pr.upper + "'");
    std::vector<StateId> map(space_states_[u].size(), -1);
    for (const auto& [from, to] : pr.map) {
      auto fi = state_idx.find(from), ti = state_idx.find(to);
      if (fi == state_idx.end() || ti == state_idx.end())
        throw ModelError("projection references unknown state '" +
                         (fi == state_idx.end() ? from : to) + "'");
      if (state_space_[fi->second] != u || state_space_[ti->second] != l)
        throw ModelError("projection entry '" + from + "' -> '" + to +
                         "' does not go from '" + pr.upper + "' to '" + pr.lower + "'");
      map[state_local_[fi->second]] = ti->second;
    }
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] < 0)
        throw ModelError("projection from '" + pr.upper + "' to '" + pr.lower +
                         "' misses state '" + state_names_[space_states_[u][i]] + "'");
    proj_[u][l] = std::move(map);
  }
  for (int u = 0; u < n; ++u)
    for (int l = 0; l < n; ++l)
      if (l != u && leq_[l][u] && proj_[u][l].empty())
        throw ModelError("missing projection from '" + space_names_[u] + "' to '" +
                         space_names_[l] + "'");
}

SpaceId StateSpaceLattice::space_index(std::string_view name) const {
  for (int i = 0; i < space_count(); ++i)
    if (space_names_[i] == name) return i;
  return -1;
}

StateId StateSpaceLattice::state_index(std::string_view name) const {
  for (int i = 0; i < state_count(); ++i)
    if (state_names_[i] == name) return i;
  return -1;
}

StateId StateSpaceLattice::project(StateId s, SpaceId lower) const {
  SpaceId from = state_space_[s];
  if (lower == from) return s;
  if (!leq_[lower][from])
    throw ModelError("cannot project '" + state_names_[s] + "' into the incomparable space '" +
                     space_names_[lower] + "'");
  return proj_[from][lower][state_local_[s]];
}

std::optional<SpaceId> StateSpaceLattice::meet(SpaceId a, SpaceId b) const {
  std::optional<SpaceId> best;
  for (int c = 0; c < space_count(); ++c) {
    if (!leq_[c][a] || !leq_[c][b]) continue;
    if (!best || leq_[*best][c]) best = c;
  }
  if (!best) return std::nullopt;
  // Must dominate every lower bound, else no greatest one exists.
  for (int c = 0; c < space_count(); ++c)
    if (leq_[c][a] && leq_[c][b] && !leq_[c][*best]) return std::nullopt;
  return best;
}

std::optional<SpaceId> StateSpaceLattice::join(SpaceId a, SpaceId b) const {
  std::optional<SpaceId> best;
  for (int c = 0; c < space_count(); ++c) {
    if (!leq_[a][c] || !leq_[b][c]) continue;
    if (!best || leq_[c][*best]) best = c;
  }
  if (!best) return std::nullopt;
  for (int c = 0; c < space_count(); ++c)
    if (leq_[a][c] && leq_[b][c] && !leq_[*best][c]) return std::nullopt;
  return best;
}

std::optional<SpaceId> StateSpaceLattice::top() const {
  for (int c = 0; c < space_count(); ++c) {
    bool is_top = true;
    for (int o = 0; o < space_count(); ++o) is_top = is_top && leq_[o][c];
    if (is_top) return c;
  }
  return std::nullopt;
}

std::optional<SpaceId> StateSpaceLattice::bottom() const {
  for (int c = 0; c < space_count(); ++c) {
    bool is_bot = true;
    for (int o = 0; o < space_count(); ++o) is_bot = is_bot && leq_[c][o];
    if (is_bot) return c;
  }
  return std::nullopt;
}

bool Event::contains(StateId s) const { return sorted_contains(up, s); }

std::vector<StateId> upward_closure(const StateSpaceLattice& lattice,
                                    std::span<const StateId> subset, SpaceId space) {
  std::vector<StateId> d(subset.begin(), subset.end());
  d = sorted_unique(std::move(d));
  for (StateId s : d)
    if (lattice.space_of(s) != space)
      throw ModelError("upward closure: '" + lattice.state_name(s) +
                       "' is not a state of space '" + lattice.space_name(space) + "'");
  std::vector<StateId> out;
  for (SpaceId up = 0; up < lattice.space_count(); ++up) {
    if (!lattice.below(space, up)) continue;
    for (StateId s : lattice.states_of(up))
      if (sorted_contains(d, lattice.project(s, space))) out.push_back(s);
  }
  return sorted_unique(std::move(out));
}

Event make_event(const StateSpaceLattice& lattice, std::vector<StateId> base_members,
                 SpaceId base) {
  Event e;
  e.base_members = sorted_unique(std::move(base_members));
  e.base = base;
  e.up = upward_closure(lattice, e.base_members, base);
  return e;
}

namespace {

// Builds the event whose closure is exactly `states` based at `base`;
// ModelError when no such event exists.
Event event_from_set(const StateSpaceLattice& lattice, std::vector<StateId> states,
                     SpaceId base, const char* op) {
  states = sorted_unique(std::move(states));
  std::vector<StateId> d;
  for (StateId s : states)
    if (lattice.space_of(s) == base) d.push_back(s);
  Event e = make_event(lattice, std::move(d), base);
  if (e.up != states)
    throw ModelError(std::string(op) + " did not produce a well-formed event at base '" +
                     lattice.space_name(base) + "'");
  return e;
}

}  // namespace

Event neg_event(const StateSpaceLattice& lattice, const Event& e) {
  std::vector<StateId> complement;
  for (StateId s : lattice.states_of(e.base))
    if (!sorted_contains(e.base_members, s)) complement.push_back(s);
  return make_event(lattice, std::move(complement), e.base);
}

Event conj_events(const StateSpaceLattice& lattice, std::span<const Event> events) {
  if (events.empty()) throw ModelError("conjunction of zero events");
  SpaceId base = events[0].base;
  std::vector<StateId> inter = events[0].up;
  for (std::size_t i = 1; i < events.size(); ++i) {
    auto j = lattice.join(base, events[i].base);
    if (!j)
      throw ModelError("event conjunction needs a least upper bound of '" +
                       lattice.space_name(base) + "' and '" +
                       lattice.space_name(events[i].base) + "'");
    base = *j;
    std::vector<StateId> next;
    std::set_intersection(inter.begin(), inter.end(), events[i].up.begin(), events[i].up.end(),
                          std::back_inserter(next));
    inter = std::move(next);
  }
  return event_from_set(lattice, std::move(inter), base, "event conjunction");
}

Event k_event(const UnawarenessFrame& frame, int agent, const Event& e) {
  const StateSpaceLattice& lat = frame.lattice();
  std::vector<StateId> hold;
  for (StateId s = 0; s < lat.state_count(); ++s)
    if (sorted_subset(frame.possible(agent, s), e.up)) hold.push_back(s);
  return event_from_set(lat, std::move(hold), e.base, "knowledge event");
}

Event a_event(const UnawarenessFrame& frame, int agent, const Event& e) {
  const StateSpaceLattice& lat = frame.lattice();
  // Closure of the full base space: every state of a weakly richer space.
  std::vector<StateId> expressible =
      upward_closure(lat, lat.states_of(e.base), e.base);
  std::vector<StateId> hold;
  for (StateId s = 0; s < lat.state_count(); ++s)
    if (sorted_subset(frame.possible(agent, s), expressible)) hold.push_back(s);
  return event_from_set(lat, std::move(hold), e.base, "awareness event");
}

UnawarenessFrame::UnawarenessFrame(StateSpaceLattice lattice, std::vector<std::string> agents,
                                   std::vector<std::vector<std::vector<StateId>>> poss)
    : lattice_(std::move(lattice)), agents_(std::move(agents)), poss_(std::move(poss)) {
  if (agents_.empty()) throw ModelError("an unawareness frame needs at least one agent");
  for (const auto& a : agents_)
    if (!is_identifier(a)) throw ModelError("invalid agent name: '" + a + "'");
  if (poss_.size() != agents_.size())
    throw ModelError("possibility correspondences must cover every agent");
  for (auto& per_agent : poss_) {
    if (per_agent.size() != static_cast<std::size_t>(lattice_.state_count()))
      throw ModelError("possibility correspondence must cover every state");
    for (auto& set : per_agent) {
      set = sorted_unique(std::move(set));
      for (StateId s : set)
        if (s < 0 || s >= lattice_.state_count())
          throw ModelError("possibility correspondence references an unknown state");
    }
  }
}

namespace {

std::vector<std::vector<std::vector<StateId>>> resolve_poss(
    const StateSpaceLattice& lattice, const std::vector<std::string>& agents,
    const std::vector<std::map<std::string, std::vector<std::string>>>& poss) {
  if (poss.size() != agents.size())
    throw ModelError("possibility correspondences must cover every agent");
  std::vector<std::vector<std::vector<StateId>>> out(
      agents.size(), std::vector<std::vector<StateId>>(lattice.state_count()));
  for (std::size_t a = 0; a < agents.size(); ++a) {
    for (StateId s = 0; s < lattice.state_count(); ++s) {
      auto it = poss[a].find(lattice.state_name(s));
      if (it == poss[a].end())
        throw ModelError("agent '" + agents[a] + "' has no possibility set at state '" +
                         lattice.state_name(s) + "'");
      for (const auto& name : it->second) {
        StateId t = lattice.state_index(name);
        if (t < 0)
          throw ModelError("possibility set of '" + agents[a] + "' references unknown state '" +
                           name + "'");
        out[a][s].push_back(t);
      }
    }
    for (const auto& [name, _] : poss[a])
      if (lattice.state_index(name) < 0)
        throw ModelError("possibility correspondence of '" + agents[a] +
                         "' references unknown state '" + name + "'");
  }
  return out;
}

}  // namespace

UnawarenessFrame::UnawarenessFrame(UnawarenessFrameData data)
    : UnawarenessFrame([&data] {
        StateSpaceLattice lat(std::move(data.lattice));
        auto poss = resolve_poss(lat, data.agents, data.poss);
        return UnawarenessFrame(std::move(lat), std::move(data.agents), std::move(poss));
      }()) {}

int UnawarenessFrame::agent_index(std::string_view name) const {
  for (int i = 0; i < agent_count(); ++i)
    if (agents_[i] == name) return i;
  return -1;
}

std::string_view frame_violation_name(FrameViolation::Code code) {
  switch (code) {
    case FrameViolation::Code::NotLattice: return "CompleteLattice";
    case FrameViolation::Code::SpaceSizeOrder: return "SpaceSizeOrder";
    case FrameViolation::Code::ProjectionNotSurjective: return "ProjectionSurjective";
    case FrameViolation::Code::ProjectionNotCommuting: return "ProjectionCommuting";
    case FrameViolation::Code::Confinement: return "Confinement";
    case FrameViolation::Code::GeneralizedReflexivity: return "GeneralizedReflexivity";
    case FrameViolation::Code::Stationarity: return "Stationarity";
    case FrameViolation::Code::ProjectionsPreserveIgnorance:
      return "ProjectionsPreserveIgnorance";
    case FrameViolation::Code::ProjectionsPreserveKnowledge:
      return "ProjectionsPreserveKnowledge";
  }
  return "?";
}

std::vector<FrameViolation> validate_frame(const UnawarenessFrame& frame) {
  const StateSpaceLattice& lat = frame.lattice();
  std::vector<FrameViolation> out;
  auto structural = [&](FrameViolation::Code code, std::string detail) {
    out.push_back({code, -1, std::move(detail)});
  };

  // Lattice laws.
  for (SpaceId a = 0; a < lat.space_count(); ++a) {
    for (SpaceId b = a; b < lat.space_count(); ++b) {
      if (!lat.meet(a, b))
        structural(FrameViolation::Code::NotLattice,
                   "no greatest lower bound of '" + lat.space_name(a) + "' and '" +
                       lat.space_name(b) + "'");
      if (!lat.join(a, b))
        structural(FrameViolation::Code::NotLattice,
                   "no least upper bound of '" + lat.space_name(a) + "' and '" +
                       lat.space_name(b) + "'");
    }
  }
  for (SpaceId a = 0; a < lat.space_count(); ++a)
    for (SpaceId b = 0; b < lat.space_count(); ++b)
      if (a != b && lat.below(a, b) &&
          lat.states_of(a).size() > lat.states_of(b).size())
        structural(FrameViolation::Code::SpaceSizeOrder,
                   "'" + lat.space_name(a) + "' sits below the smaller space '" +
                       lat.space_name(b) + "'");

  // Projection laws: surjectivity and commutativity along chains.
  for (SpaceId u = 0; u < lat.space_count(); ++u) {
    for (SpaceId l = 0; l < lat.space_count(); ++l) {
      if (l == u || !lat.below(l, u)) continue;
      std::vector<bool> hit(lat.state_count(), false);
      for (StateId s : lat.states_of(u)) hit[lat.project(s, l)] = true;
      for (StateId t : lat.states_of(l))
        if (!hit[t])
          structural(FrameViolation::Code::ProjectionNotSurjective,
                     "projection from '" + lat.space_name(u) + "' misses '" +
                         lat.state_name(t) + "'");
      for (SpaceId m = 0; m < lat.space_count(); ++m) {
        if (m == l || m == u || !lat.below(l, m) || !lat.below(m, u)) continue;
        for (StateId s : lat.states_of(u)) {
          if (lat.project(lat.project(s, m), l) != lat.project(s, l))
            structural(FrameViolation::Code::ProjectionNotCommuting,
                       "projections of '" + lat.state_name(s) + "' via '" +
                           lat.space_name(m) + "' and directly to '" + lat.space_name(l) +
                           "' disagree");
        }
      }
    }
  }

  // The five correspondence properties, exhaustively.
  for (int a = 0; a < frame.agent_count(); ++a) {
    auto violation = [&](FrameViolation::Code code, std::string detail) {
      out.push_back({code, a, std::move(detail)});
    };
    // Confinement first: the later checks lean on single-space images.
    std::vector<SpaceId> image_space(lat.state_count(), -1);
    for (StateId w = 0; w < lat.state_count(); ++w) {
      const auto& pi = frame.possible(a, w);
      if (pi.empty()) {
        violation(FrameViolation::Code::GeneralizedReflexivity,
                  "empty possibility set at '" + lat.state_name(w) + "'");
        continue;
      }
      SpaceId s = lat.space_of(pi.front());
      bool one_space = true;
      for (StateId v : pi) one_space = one_space && lat.space_of(v) == s;
      if (!one_space) {
        violation(FrameViolation::Code::Confinement,
                  "possibility set at '" + lat.state_name(w) + "' straddles spaces");
        continue;
      }
      if (!lat.below(s, lat.space_of(w))) {
        violation(FrameViolation::Code::Confinement,
                  "possibility set at '" + lat.state_name(w) + "' lives in '" +
                      lat.space_name(s) + "', not weakly below '" +
                      lat.space_name(lat.space_of(w)) + "'");
        continue;
      }
      image_space[w] = s;
    }

    auto closure_of_poss = [&](StateId w) {
      return upward_closure(lat, frame.possible(a, w), image_space[w]);
    };

    for (StateId w = 0; w < lat.state_count(); ++w) {
      if (image_space[w] < 0) continue;
      const auto& pi = frame.possible(a, w);
      std::vector<StateId> pi_up = closure_of_poss(w);

      if (!sorted_contains(pi_up, w))
        violation(FrameViolation::Code::GeneralizedReflexivity,
                  "'" + lat.state_name(w) + "' lies outside the closure of its own possibility set");

      for (StateId v : pi) {
        if (frame.possible(a, v) != pi)
          violation(FrameViolation::Code::Stationarity,
                    "witness pair ('" + lat.state_name(w) + "', '" + lat.state_name(v) + "')");
      }

      for (SpaceId s = 0; s < lat.space_count(); ++s) {
        if (!lat.below(s, lat.space_of(w)) || s == lat.space_of(w)) continue;
        StateId ws = lat.project(w, s);
        if (image_space[ws] < 0) continue;
        std::vector<StateId> lower_up = closure_of_poss(ws);
        if (!sorted_subset(pi_up, lower_up))
          violation(FrameViolation::Code::ProjectionsPreserveIgnorance,
                    "closure at '" + lat.state_name(w) + "' is not contained in the closure at '" +
                        lat.state_name(ws) + "'");
      }

      // Knowledge preservation: project the cell down and compare with the
      // cell at the projected state.
      SpaceId cell_space = image_space[w];
      for (SpaceId s = 0; s < lat.space_count(); ++s) {
        if (!lat.below(s, cell_space)) continue;
        StateId ws = lat.project(w, s);
        std::vector<StateId> projected;
        for (StateId v : pi) projected.push_back(lat.project(v, s));
        projected = sorted_unique(std::move(projected));
        if (projected != frame.possible(a, ws))
          violation(FrameViolation::Code::ProjectionsPreserveKnowledge,
                    "cell at '" + lat.state_name(w) + "' projected into '" + lat.space_name(s) +
                        "' disagrees with the cell at '" + lat.state_name(ws) + "'");
      }
    }
  }
  return out;
}

HmsModel::HmsModel(UnawarenessFrame frame, std::vector<std::string> atoms,
                   std::vector<Event> valuation)
    : frame_(std::move(frame)), atoms_(std::move(atoms)), valuation_(std::move(valuation)) {
  init();
}

HmsModel::HmsModel(UnawarenessFrame frame, std::vector<std::string> atoms,
                   std::vector<HmsValuationData> valuation)
    : frame_(std::move(frame)), atoms_(std::move(atoms)) {
  const StateSpaceLattice& lat = frame_.lattice();
  for (std::size_t p = 0; p < valuation.size(); ++p) {
    SpaceId base = lat.space_index(valuation[p].base_space);
    if (base < 0)
      throw ModelError("valuation of '" + atoms_[p] + "' references unknown space '" +
                       valuation[p].base_space + "'");
    std::vector<StateId> d;
    for (const auto& name : valuation[p].states) {
      StateId s = lat.state_index(name);
      if (s < 0)
        throw ModelError("valuation of '" + atoms_[p] + "' references unknown state '" + name +
                         "'");
      d.push_back(s);
    }
    valuation_.push_back(make_event(lat, std::move(d), base));
  }
  init();
}

void HmsModel::init() {
  for (const auto& p : atoms_) {
    if (!is_identifier(p)) throw ModelError("invalid atom name: '" + p + "'");
    if (p == "top") throw ModelError("'top' is reserved and cannot name an atom");
  }
  if (valuation_.size() != atoms_.size())
    throw ModelError("valuation must cover every atom");

  auto violations = validate_frame(frame_);
  if (!violations.empty()) {
    std::ostringstream os;
    os << violations.size() << " frame violation(s):";
    for (const auto& v : violations) {
      os << "\n  " << frame_violation_name(v.code);
      if (v.agent >= 0) os << " [" << frame_.agent_name(v.agent) << "]";
      os << ": " << v.detail;
    }
    throw ValidationError(os.str());
  }
  top_ = *frame_.lattice().top();
  bottom_ = *frame_.lattice().bottom();
}

int HmsModel::atom_index(std::string_view name) const {
  for (int i = 0; i < atom_count(); ++i)
    if (atoms_[i] == name) return i;
  return -1;
}

Event HmsModel::denotation(const Formula& f) const {
  const StateSpaceLattice& lat = lattice();
  switch (f.kind()) {
    case Formula::Kind::Top: {
      // Based at the minimum space with the whole space as members, so the
      // closure is every state of the lattice.
      std::vector<StateId> d = lat.states_of(bottom_);
      return make_event(lat, std::move(d), bottom_);
    }
    case Formula::Kind::Atom: {
      int p = atom_index(f.symbol());
      if (p < 0)
        throw UnknownSymbolError("atom '" + f.symbol() + "' has no valuation in this model");
      return valuation_[p];
    }
    case Formula::Kind::Not:
      return neg_event(lat, denotation(f.lhs()));
    case Formula::Kind::And: {
      Event parts[2] = {denotation(f.lhs()), denotation(f.rhs())};
      return conj_events(lat, parts);
    }
    case Formula::Kind::Knows: {
      int a = frame_.agent_index(f.symbol());
      if (a < 0)
        throw UnknownSymbolError("agent '" + f.symbol() + "' is not in the model's agent set");
      return k_event(frame_, a, denotation(f.lhs()));
    }
  }
  throw ModelError("unreachable formula kind");
}

ThreeVal HmsModel::satisfies(StateId state, const Formula& f) const {
  if (state < 0 || state >= lattice().state_count())
    throw UnknownWorldError("state is not part of this model");
  Event e = denotation(f);
  if (e.contains(state)) return ThreeVal::True;
  if (neg_event(lattice(), e).contains(state)) return ThreeVal::False;
  return ThreeVal::Undefined;
}

}  // namespace awmc
