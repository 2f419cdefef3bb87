#include "awmc/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "awmc/error.hpp"

namespace awmc {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError("not valid JSON: " + origin);
  if (!j.is_object()) throw IoError("model file must be a JSON object: " + origin);
  return j;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw IoError(std::string("missing field '") + name + "'");
  return *it;
}

std::vector<std::string> string_list(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_array()) throw IoError(std::string("field '") + name + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw IoError(std::string("field '") + name + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

KripkeLatticeModel load_klm(const json& j, int atom_cap) {
  KripkeModelData data;
  data.worlds = string_list(j, "worlds");
  data.agents = string_list(j, "agents");
  data.atoms = string_list(j, "atoms");

  const json& relations = field(j, "relations");
  for (const auto& agent : data.agents) {
    auto it = relations.find(agent);
    if (it == relations.end())
      throw IoError("relations are missing agent '" + agent + "'");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& pair : *it) {
      if (!pair.is_array() || pair.size() != 2)
        throw IoError("relation entries must be [from, to] pairs");
      pairs.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
    data.relations.push_back(std::move(pairs));
  }

  const json& valuation = field(j, "valuation");
  for (const auto& atom : data.atoms) {
    auto it = valuation.find(atom);
    if (it == valuation.end())
      throw IoError("valuation is missing atom '" + atom + "'");
    std::vector<std::string> worlds;
    for (const auto& w : *it) worlds.push_back(w.get<std::string>());
    data.valuation.push_back(std::move(worlds));
  }

  KripkeModel base(std::move(data));
  const int n = base.atom_count();
  const int wc = base.world_count();
  if (n > atom_cap)
    throw ModelError("atom set of size " + std::to_string(n) +
                     " exceeds the powerset cap of " + std::to_string(atom_cap) +
                     " (raise AWMC_MAX_ATOMS or the cap argument)");

  const json& awareness = field(j, "awareness");
  std::vector<AwarenessTable> tables;
  for (int a = 0; a < base.agent_count(); ++a) {
    auto it = awareness.find(base.agent_name(a));
    if (it == awareness.end())
      throw IoError("awareness maps are missing agent '" + base.agent_name(a) + "'");
    AwarenessTable table(n, wc);
    std::vector<std::vector<bool>> seen(std::size_t{1} << n, std::vector<bool>(wc, false));
    for (auto entry = it->begin(); entry != it->end(); ++entry) {
      try {
        RestrictedWorld at = parse_world_ref(base, entry.key());
        RestrictedWorld img = parse_world_ref(base, entry.value().get<std::string>());
        table.set(at, img);
        seen[at.tag.raw()][at.world] = true;
      } catch (const UnknownWorldError& e) {
        throw IoError("awareness map of agent '" + base.agent_name(a) + "': " + e.what());
      }
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
      for (int w = 0; w < wc; ++w)
        if (!seen[mask][w])
          throw ValidationError("awareness map of agent '" + base.agent_name(a) +
                                "' is partial: missing world " +
                                world_ref(base, {w, AtomSet::from_raw(mask)}));
    tables.push_back(std::move(table));
  }
  return KripkeLatticeModel(std::move(base), std::move(tables), atom_cap);
}

HmsModel load_hms(const json& j) {
  UnawarenessFrameData frame;
  frame.agents = string_list(j, "agents");

  for (const auto& sp : field(j, "spaces")) {
    StateSpaceLatticeData::Space space;
    space.name = field(sp, "name").get<std::string>();
    for (const auto& st : field(sp, "states")) space.states.push_back(st.get<std::string>());
    frame.lattice.spaces.push_back(std::move(space));
  }
  for (const auto& pair : field(j, "order")) {
    if (!pair.is_array() || pair.size() != 2)
      throw IoError("order entries must be [lower, upper] pairs");
    frame.lattice.order.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  for (const auto& pr : field(j, "projections")) {
    StateSpaceLatticeData::Projection projection;
    projection.upper = field(pr, "from").get<std::string>();
    projection.lower = field(pr, "to").get<std::string>();
    for (auto it = field(pr, "map").begin(); it != field(pr, "map").end(); ++it)
      projection.map[it.key()] = it.value().get<std::string>();
    frame.lattice.projections.push_back(std::move(projection));
  }

  const json& corr = field(j, "correspondences");
  for (const auto& agent : frame.agents) {
    auto it = corr.find(agent);
    if (it == corr.end())
      throw IoError("correspondences are missing agent '" + agent + "'");
    std::map<std::string, std::vector<std::string>> per_agent;
    for (auto entry = it->begin(); entry != it->end(); ++entry) {
      std::vector<std::string> states;
      for (const auto& s : entry.value()) states.push_back(s.get<std::string>());
      per_agent[entry.key()] = std::move(states);
    }
    frame.poss.push_back(std::move(per_agent));
  }

  std::vector<std::string> atoms = string_list(j, "atoms");
  const json& valuation = field(j, "event_valuation");
  std::vector<HmsValuationData> events;
  for (const auto& atom : atoms) {
    auto it = valuation.find(atom);
    if (it == valuation.end())
      throw IoError("event valuation is missing atom '" + atom + "'");
    HmsValuationData ev;
    ev.base_space = field(*it, "base").get<std::string>();
    for (const auto& s : field(*it, "states")) ev.states.push_back(s.get<std::string>());
    events.push_back(std::move(ev));
  }

  return HmsModel(UnawarenessFrame(std::move(frame)), std::move(atoms), std::move(events));
}

}  // namespace

RestrictedWorld parse_world_ref(const KripkeModel& model, const std::string& ref) {
  auto at = ref.find('@');
  if (at == std::string::npos || at + 1 >= ref.size() || ref[at + 1] != '{' ||
      ref.back() != '}')
    throw UnknownWorldError("malformed world reference '" + ref + "' (want id@{p,q})");
  int world = model.world_index(ref.substr(0, at));
  if (world < 0)
    throw UnknownWorldError("unknown world '" + ref.substr(0, at) + "'");
  AtomSet tag;
  std::string body = ref.substr(at + 2, ref.size() - at - 3);
  std::size_t pos = 0;
  while (pos <= body.size() && !body.empty()) {
    std::size_t comma = body.find(',', pos);
    std::string atom = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
    int p = model.atom_index(atom);
    if (p < 0) throw UnknownWorldError("unknown atom '" + atom + "' in world reference");
    tag = tag.with(p);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return {world, tag};
}

LoadedModel load_model_text(const std::string& text, int atom_cap) {
  json j = parse_json(text, "input");
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "kripke_lattice") return load_klm(j, atom_cap);
  if (kind == "hms") return load_hms(j);
  throw IoError("unknown model kind '" + kind + "' (want kripke_lattice or hms)");
}

LoadedModel load_model(const std::string& path, int atom_cap) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_model_text(buf.str(), atom_cap);
  } catch (IoError& e) {
    throw IoError(std::string(e.what()) + " [" + path + "]");
  }
}

std::string to_json_text(const KripkeLatticeModel& model) {
  const KripkeModel& base = model.base();
  json j;
  j["kind"] = "kripke_lattice";
  j["worlds"] = base.worlds();
  j["agents"] = base.agents();
  j["atoms"] = base.atoms();

  json relations = json::object();
  for (int a = 0; a < base.agent_count(); ++a) {
    json pairs = json::array();
    for (auto [w, v] : base.relation_pairs(a))
      pairs.push_back({base.world_name(w), base.world_name(v)});
    relations[base.agent_name(a)] = std::move(pairs);
  }
  j["relations"] = std::move(relations);

  json valuation = json::object();
  for (int p = 0; p < base.atom_count(); ++p) {
    json worlds = json::array();
    for (int w : base.valuation(p).members()) worlds.push_back(base.world_name(w));
    valuation[base.atom_name(p)] = std::move(worlds);
  }
  j["valuation"] = std::move(valuation);

  json awareness = json::object();
  for (int a = 0; a < base.agent_count(); ++a) {
    json table = json::object();
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << base.atom_count()); ++mask)
      for (int w = 0; w < base.world_count(); ++w) {
        RestrictedWorld at{w, AtomSet::from_raw(mask)};
        table[world_ref(base, at)] = world_ref(base, model.awareness_image(a, at));
      }
    awareness[base.agent_name(a)] = std::move(table);
  }
  j["awareness"] = std::move(awareness);
  return j.dump(2) + "\n";
}

std::string to_json_text(const HmsModel& model) {
  const StateSpaceLattice& lat = model.lattice();
  const UnawarenessFrame& frame = model.frame();
  json j;
  j["kind"] = "hms";
  j["atoms"] = model.atoms();
  j["agents"] = frame.agents();

  json spaces = json::array();
  for (SpaceId s = 0; s < lat.space_count(); ++s) {
    json names = json::array();
    for (StateId st : lat.states_of(s)) names.push_back(lat.state_name(st));
    spaces.push_back({{"name", lat.space_name(s)}, {"states", std::move(names)}});
  }
  j["spaces"] = std::move(spaces);

  json order = json::array();
  json projections = json::array();
  for (SpaceId lo = 0; lo < lat.space_count(); ++lo) {
    for (SpaceId hi = 0; hi < lat.space_count(); ++hi) {
      if (lo == hi || !lat.below(lo, hi)) continue;
      order.push_back({lat.space_name(lo), lat.space_name(hi)});
      json map = json::object();
      for (StateId s : lat.states_of(hi))
        map[lat.state_name(s)] = lat.state_name(lat.project(s, lo));
      projections.push_back(
          {{"from", lat.space_name(hi)}, {"to", lat.space_name(lo)}, {"map", std::move(map)}});
    }
  }
  j["order"] = std::move(order);
  j["projections"] = std::move(projections);

  json corr = json::object();
  for (int a = 0; a < frame.agent_count(); ++a) {
    json per_agent = json::object();
    for (StateId s = 0; s < lat.state_count(); ++s) {
      json states = json::array();
      for (StateId t : frame.possible(a, s)) states.push_back(lat.state_name(t));
      per_agent[lat.state_name(s)] = std::move(states);
    }
    corr[frame.agent_name(a)] = std::move(per_agent);
  }
  j["correspondences"] = std::move(corr);

  json valuation = json::object();
  for (int p = 0; p < model.atom_count(); ++p) {
    const Event& e = model.valuation(p);
    json states = json::array();
    for (StateId s : e.base_members) states.push_back(lat.state_name(s));
    valuation[model.atom_name(p)] = {{"base", lat.space_name(e.base)},
                                     {"states", std::move(states)}};
  }
  j["event_valuation"] = std::move(valuation);
  return j.dump(2) + "\n";
}

namespace {

void write_whole_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

void save_model(const std::string& path, const KripkeLatticeModel& model) {
  write_whole_file(path, to_json_text(model));
}

void save_model(const std::string& path, const HmsModel& model) {
  write_whole_file(path, to_json_text(model));
}

std::string correspondence_json_text(const HmsModel& model, const LTransform& t) {
  const KripkeModel& base = t.model.base();
  json j = json::object();
  for (StateId s = 0; s < model.lattice().state_count(); ++s) {
    json worlds = json::array();
    for (RestrictedWorld w : t.correspondence.by_state[s])
      worlds.push_back(world_ref(base, w));
    j[model.lattice().state_name(s)] = std::move(worlds);
  }
  return j.dump(2) + "\n";
}

}  // namespace awmc
