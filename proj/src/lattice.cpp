#include "awmc/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "awmc/error.hpp"

namespace awmc {

AwarenessTable::AwarenessTable(int atom_count, int world_count)
    : atom_count_(atom_count),
      world_count_(world_count),
      table_((std::size_t{1} << atom_count) * world_count) {}

AwarenessTable AwarenessTable::identity(int atom_count, int world_count) {
  AwarenessTable t(atom_count, world_count);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << atom_count); ++mask)
    for (int w = 0; w < world_count; ++w) {
      RestrictedWorld rw{w, AtomSet::from_raw(mask)};
      t.set(rw, rw);
    }
  return t;
}

std::size_t AwarenessTable::index(RestrictedWorld w) const {
  if (w.world < 0 || w.world >= world_count_ ||
      !w.tag.subset_of(AtomSet::full(atom_count_)))
    throw UnknownWorldError("world is not part of this lattice");
  return std::size_t{w.tag.raw()} * world_count_ + w.world;
}

std::string world_ref(const KripkeModel& model, RestrictedWorld w) {
  std::string out = model.world_name(w.world);
  out += "@{";
  bool first = true;
  for (int p : w.tag.members()) {
    if (!first) out += ',';
    out += model.atom_name(p);
    first = false;
  }
  out += '}';
  return out;
}

std::string AwarenessViolation::describe(const KripkeModel& m) const {
  std::ostringstream os;
  os << "agent " << m.agent_name(agent) << ": ";
  switch (kind) {
    case Kind::NotDownwards:
      os << "image of " << world_ref(m, at) << " is " << world_ref(m, image)
         << ", which is not the same world under a smaller atom set";
      break;
    case Kind::NotIntrospective:
      os << "image of " << world_ref(m, at) << " is " << world_ref(m, image)
         << " but cell member " << world_ref(m, *witness) << " maps to "
         << world_ref(m, *got) << ", outside that cell";
      break;
    case Kind::Surprise:
      os << "image of " << world_ref(m, at) << " is " << world_ref(m, image)
         << ", forcing " << world_ref(m, *expected) << " lower down, but found "
         << world_ref(m, *got);
      break;
  }
  return os.str();
}

std::vector<AwarenessViolation> validate_awareness(const RestrictionLattice& lattice,
                                                   std::span<const AwarenessTable> maps) {
  const KripkeModel& m = lattice.base();
  const int n = m.atom_count();
  const int wc = m.world_count();
  std::vector<AwarenessViolation> out;

  for (std::size_t a = 0; a < maps.size(); ++a) {
    // Subsets descend from the full set; worlds ascend.
    for (std::uint32_t mask = (std::uint32_t{1} << n); mask-- > 0;) {
      AtomSet x = AtomSet::from_raw(mask);
      for (int w = 0; w < wc; ++w) {
        RestrictedWorld at{w, x};
        RestrictedWorld img = maps[a].image(at);

        if (img.world != w || !img.tag.subset_of(x)) {
          out.push_back({AwarenessViolation::Kind::NotDownwards, static_cast<int>(a), at, img,
                         std::nullopt, std::nullopt, std::nullopt});
          continue;  // II and NS presuppose a downward image
        }

        // Introspective idempotence: every member of the image's cell must
        // itself map into that cell (same tag, member world).
        WorldSet cell = m.successors(static_cast<int>(a), img.world);
        for (int v : cell.members()) {
          RestrictedWorld member{v, img.tag};
          RestrictedWorld member_img = maps[a].image(member);
          if (member_img.tag != img.tag || !cell.contains(member_img.world)) {
            out.push_back({AwarenessViolation::Kind::NotIntrospective, static_cast<int>(a), at,
                           img, member, std::nullopt, member_img});
          }
        }

        // No surprises: the image tag at any lower subset is forced.
        for_each_subset(x, [&](AtomSet y) {
          RestrictedWorld expected{w, y.intersect(img.tag)};
          RestrictedWorld got = maps[a].image({w, y});
          if (got != expected) {
            out.push_back({AwarenessViolation::Kind::Surprise, static_cast<int>(a), at, img,
                           std::nullopt, expected, got});
          }
        });
      }
    }
  }
  return out;
}

KripkeLatticeModel::KripkeLatticeModel(KripkeModel base, std::vector<AwarenessTable> awareness,
                                       int atom_cap)
    : lattice_(std::move(base), atom_cap), awareness_(std::move(awareness)) {
  const KripkeModel& m = lattice_.base();
  if (awareness_.size() != static_cast<std::size_t>(m.agent_count()))
    throw ModelError("awareness maps must cover every agent");
  for (const auto& t : awareness_) {
    if (t.atom_count() != m.atom_count() || t.world_count() != m.world_count())
      throw ModelError("awareness table shape does not match the model");
  }
  auto violations = validate_awareness(lattice_, awareness_);
  if (!violations.empty()) {
    std::ostringstream os;
    os << violations.size() << " awareness-map violation(s):";
    for (const auto& v : violations) os << "\n  " << v.describe(m);
    throw ValidationError(os.str());
  }
}

bool KripkeLatticeModel::contains(RestrictedWorld w) const {
  const KripkeModel& m = lattice_.base();
  return w.world >= 0 && w.world < m.world_count() &&
         w.tag.subset_of(AtomSet::full(m.atom_count()));
}

namespace {

// Formula compiled against a model's vocabulary: post-order nodes with
// resolved indices and per-node atom masks.
struct CompiledNode {
  Formula::Kind kind;
  int sym = -1;  // atom index or agent index
  int lhs = -1, rhs = -1;
  AtomSet atoms;
};

int compile_into(const Formula& f, const KripkeModel& m, std::vector<CompiledNode>& out) {
  CompiledNode node;
  node.kind = f.kind();
  switch (f.kind()) {
    case Formula::Kind::Top:
      break;
    case Formula::Kind::Atom:
      node.sym = m.atom_index(f.symbol());
      if (node.sym < 0)
        throw UnknownSymbolError("atom '" + f.symbol() + "' is not in the model's atom set");
      node.atoms = AtomSet::single(node.sym);
      break;
    case Formula::Kind::Not:
      node.lhs = compile_into(f.lhs(), m, out);
      node.atoms = out[node.lhs].atoms;
      break;
    case Formula::Kind::And:
      node.lhs = compile_into(f.lhs(), m, out);
      node.rhs = compile_into(f.rhs(), m, out);
      node.atoms = out[node.lhs].atoms.unite(out[node.rhs].atoms);
      break;
    case Formula::Kind::Knows:
      node.sym = m.agent_index(f.symbol());
      if (node.sym < 0)
        throw UnknownSymbolError("agent '" + f.symbol() + "' is not in the model's agent set");
      node.lhs = compile_into(f.lhs(), m, out);
      node.atoms = out[node.lhs].atoms;
      break;
  }
  out.push_back(node);
  return static_cast<int>(out.size()) - 1;
}

struct Evaluator {
  const KripkeLatticeModel& model;
  const std::vector<CompiledNode>& nodes;

  // Definedness comes first: a formula has a truth value at w_X exactly when
  // its atoms lie inside X; only then do the clauses decide true vs false.
  ThreeVal eval(int idx, RestrictedWorld at) const {
    const CompiledNode& n = nodes[idx];
    if (!n.atoms.subset_of(at.tag)) return ThreeVal::Undefined;
    switch (n.kind) {
      case Formula::Kind::Top:
        return ThreeVal::True;
      case Formula::Kind::Atom:
        return to_threeval(model.base().holds(n.sym, at.world));
      case Formula::Kind::Not:
        return to_threeval(!is_true(eval(n.lhs, at)));
      case Formula::Kind::And:
        return to_threeval(is_true(eval(n.lhs, at)) && is_true(eval(n.rhs, at)));
      case Formula::Kind::Knows: {
        RestrictedWorld img = model.awareness_image(n.sym, at);
        WorldSet cell = model.base().successors(n.sym, img.world);
        for (int v : cell.members()) {
          if (!is_true(eval(n.lhs, {v, img.tag}))) return ThreeVal::False;
        }
        return ThreeVal::True;
      }
    }
    return ThreeVal::Undefined;
  }
};

}  // namespace

ThreeVal KripkeLatticeModel::satisfies(RestrictedWorld at, const Formula& f) const {
  if (!contains(at)) throw UnknownWorldError("world is not part of this lattice model");
  std::vector<CompiledNode> nodes;
  int root = compile_into(f, base(), nodes);
  return Evaluator{*this, nodes}.eval(root, at);
}

ValidityResult valid_over(std::span<const KripkeLatticeModel> models, const Formula& f) {
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const KripkeLatticeModel& model = models[mi];
    std::vector<CompiledNode> nodes;
    int root = compile_into(f, model.base(), nodes);
    Evaluator ev{model, nodes};
    AtomSet needed = nodes[root].atoms;
    const int n = model.base().atom_count();
    const int wc = model.base().world_count();
    // Richest restrictions first; the first counterexample is reported.
    for (std::uint32_t mask = (std::uint32_t{1} << n); mask-- > 0;) {
      AtomSet x = AtomSet::from_raw(mask);
      if (!needed.subset_of(x)) continue;  // some atom undefined: world exempt
      for (int w = 0; w < wc; ++w) {
        if (!is_true(ev.eval(root, {w, x})))
          return {false, ValidityCounterexample{mi, {w, x}}};
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace awmc
