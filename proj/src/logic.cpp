#include "awmc/logic.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "awmc/error.hpp"

namespace awmc {

namespace {

using Args = std::span<const Formula>;
using Agents = std::span<const std::string>;

AxiomSchema schema(std::string name, std::string variant, int formulas, int agents,
                   AxiomSchema::Builder make) {
  return AxiomSchema{std::move(name), std::move(variant), formulas, agents, std::move(make), {}};
}

// A biconditional built from two side builders; the sweep checks each
// implication on its own.
AxiomSchema biconditional_schema(std::string name, int formulas, int agents,
                                 AxiomSchema::Builder lhs, AxiomSchema::Builder rhs) {
  AxiomSchema s;
  s.name = std::move(name);
  s.formula_arity = formulas;
  s.agent_arity = agents;
  s.make = [lhs, rhs](Args f, Agents a) -> std::optional<Formula> {
    auto l = lhs(f, a), r = rhs(f, a);
    if (!l || !r) return std::nullopt;
    return Formula::equivalence(*l, *r);
  };
  s.parts.emplace_back("ltr", [lhs, rhs](Args f, Agents a) -> std::optional<Formula> {
    auto l = lhs(f, a), r = rhs(f, a);
    if (!l || !r) return std::nullopt;
    return Formula::implication(*l, *r);
  });
  s.parts.emplace_back("rtl", [lhs, rhs](Args f, Agents a) -> std::optional<Formula> {
    auto l = lhs(f, a), r = rhs(f, a);
    if (!l || !r) return std::nullopt;
    return Formula::implication(*r, *l);
  });
  return s;
}

}  // namespace

std::optional<Formula> instantiate(const AxiomSchema& schema, std::span<const Formula> formulas,
                                   std::span<const std::string> agents) {
  if (formulas.size() != static_cast<std::size_t>(schema.formula_arity) ||
      agents.size() != static_cast<std::size_t>(schema.agent_arity))
    throw ModelError("schema '" + schema.display_name() + "' takes " +
                     std::to_string(schema.formula_arity) + " formula(s) and " +
                     std::to_string(schema.agent_arity) + " agent(s)");
  return schema.make(formulas, agents);
}

std::vector<AxiomSchema> axiom_schemas() {
  using F = Formula;
  std::vector<AxiomSchema> out;

  out.push_back(schema("PropTautology", "top", 0, 0, [](Args, Agents) { return F::top(); }));
  out.push_back(schema("PropTautology", "k", 2, 0, [](Args f, Agents) {
    return F::implication(f[0], F::implication(f[1], f[0]));
  }));
  out.push_back(schema("PropTautology", "s", 3, 0, [](Args f, Agents) {
    return F::implication(F::implication(f[0], F::implication(f[1], f[2])),
                          F::implication(F::implication(f[0], f[1]),
                                         F::implication(f[0], f[2])));
  }));
  out.push_back(schema("PropTautology", "contraposition", 2, 0, [](Args f, Agents) {
    return F::implication(F::implication(F::negation(f[0]), F::negation(f[1])),
                          F::implication(f[1], f[0]));
  }));
  out.push_back(schema("PropTautology", "and-elim", 2, 0, [](Args f, Agents) {
    return F::implication(F::conjunction(f[0], f[1]), f[0]);
  }));
  out.push_back(schema("PropTautology", "and-intro", 2, 0, [](Args f, Agents) {
    return F::implication(f[0], F::implication(f[1], F::conjunction(f[0], f[1])));
  }));
  out.push_back(schema("PropTautology", "excluded-middle", 1, 0, [](Args f, Agents) {
    return F::disjunction(f[0], F::negation(f[0]));
  }));

  out.push_back(biconditional_schema(
      "Symmetry", 1, 1,
      [](Args f, Agents a) -> std::optional<Formula> {
        return F::aware(a[0], F::negation(f[0]));
      },
      [](Args f, Agents a) -> std::optional<Formula> { return F::aware(a[0], f[0]); }));
  out.push_back(biconditional_schema(
      "AwarenessConjunction", 2, 1,
      [](Args f, Agents a) -> std::optional<Formula> {
        return F::aware(a[0], F::conjunction(f[0], f[1]));
      },
      [](Args f, Agents a) -> std::optional<Formula> {
        return F::conjunction(F::aware(a[0], f[0]), F::aware(a[0], f[1]));
      }));
  out.push_back(biconditional_schema(
      "AwarenessKnowledgeReflection", 1, 2,
      [](Args f, Agents a) -> std::optional<Formula> { return F::aware(a[0], f[0]); },
      [](Args f, Agents a) -> std::optional<Formula> {
        return F::aware(a[0], F::knows(a[1], f[0]));
      }));
  out.push_back(schema("T", "", 1, 1, [](Args f, Agents a) {
    return F::implication(F::knows(a[0], f[0]), f[0]);
  }));
  out.push_back(schema("Four", "", 1, 1, [](Args f, Agents a) {
    return F::implication(F::knows(a[0], f[0]), F::knows(a[0], F::knows(a[0], f[0])));
  }));
  return out;
}

AxiomSchema negative_introspection_schema() {
  using F = Formula;
  return schema("Five", "", 1, 1, [](Args f, Agents a) {
    return F::implication(F::negation(F::knows(a[0], f[0])),
                          F::knows(a[0], F::negation(F::knows(a[0], f[0]))));
  });
}

std::vector<AxiomSchema> derived_theorem_schemas() {
  using F = Formula;
  std::vector<AxiomSchema> out;
  out.push_back(schema("Weakened5", "", 1, 1, [](Args f, Agents a) {
    F kf = F::knows(a[0], f[0]);
    F antecedent = F::knows(a[0], F::negation(F::knows(a[0], F::negation(kf))));
    return F::implication(antecedent,
                          F::disjunction(kf, F::knows(a[0], F::negation(kf))));
  }));
  out.push_back(schema("AwarenessIntrospection", "", 1, 1, [](Args f, Agents a) {
    return F::implication(F::aware(a[0], f[0]), F::knows(a[0], F::aware(a[0], f[0])));
  }));
  out.push_back(biconditional_schema(
      "GeneratedByPrimitives", 1, 1,
      [](Args f, Agents a) -> std::optional<Formula> {
        if (f[0].atoms().empty()) return std::nullopt;  // no primitive conjunction to form
        return F::aware(a[0], f[0]);
      },
      [](Args f, Agents a) -> std::optional<Formula> {
        auto atoms = f[0].atoms();
        if (atoms.empty()) return std::nullopt;
        F rhs = F::aware(a[0], F::atom(atoms[0]));
        for (std::size_t i = 1; i < atoms.size(); ++i)
          rhs = F::conjunction(rhs, F::aware(a[0], F::atom(atoms[i])));
        return rhs;
      }));
  out.push_back(biconditional_schema(
      "SymmetryOfAwareness", 1, 1,
      [](Args f, Agents a) -> std::optional<Formula> {
        return F::aware(a[0], F::negation(f[0]));
      },
      [](Args f, Agents a) -> std::optional<Formula> { return F::aware(a[0], f[0]); }));
  out.push_back(schema("UnawarenessBound", "", 1, 1, [](Args f, Agents a) {
    F triple = F::knows(
        a[0], F::negation(F::knows(a[0], F::negation(F::knows(a[0], f[0])))));
    return F::implication(F::unaware(a[0], f[0]), F::negation(triple));
  }));
  return out;
}

std::string SweepReport::to_text(std::span<const KripkeLatticeModel> models) const {
  std::ostringstream os;
  for (const auto& line : lines) {
    os << "SCHEMA " << line.schema << " INSTANCE " << line.instance.to_string();
    if (line.counterexample) {
      os << " MODEL " << line.counterexample->model_index << " WORLD "
         << world_ref(models[line.counterexample->model_index].base(),
                      line.counterexample->world)
         << " -> CEX";
    } else {
      os << " MODEL - WORLD - -> VALID";
    }
    os << '\n';
  }
  return os.str();
}

namespace {

void for_each_tuple(std::size_t pool, int arity, std::vector<std::size_t>& idx,
                    const std::function<void()>& fn) {
  if (arity == 0) {
    fn();
    return;
  }
  for (std::size_t i = 0; i < pool; ++i) {
    idx.push_back(i);
    for_each_tuple(pool, arity - 1, idx, fn);
    idx.pop_back();
  }
}

}  // namespace

SweepReport sweep_schemas(std::span<const KripkeLatticeModel> models,
                          std::span<const AxiomSchema> schemas,
                          const std::vector<std::string>& atom_pool,
                          const std::vector<std::string>& agent_pool, int max_arg_depth) {
  for (const auto& m : models)
    if (!m.base().all_equivalence())
      throw ModelError("schema sweeps require equivalence accessibility relations");

  std::vector<Formula> args = enumerate_formulas(atom_pool, agent_pool, max_arg_depth);
  SweepReport report;

  for (const AxiomSchema& sch : schemas) {
    std::vector<std::size_t> fi, ai;
    for_each_tuple(args.size(), sch.formula_arity, fi, [&] {
      for_each_tuple(agent_pool.size(), sch.agent_arity, ai, [&] {
        std::vector<Formula> fs;
        for (std::size_t i : fi) fs.push_back(args[i]);
        std::vector<std::string> as;
        for (std::size_t i : ai) as.push_back(agent_pool[i]);
        auto check_one = [&](const std::string& label, const Formula& instance) {
          ValidityResult vr = valid_over(models, instance);
          report.lines.push_back({label, instance, vr.counterexample});
          if (!vr.valid) ++report.counterexamples;
        };
        if (sch.parts.empty()) {
          std::optional<Formula> instance = sch.make(fs, as);
          if (instance) check_one(sch.display_name(), *instance);
        } else {
          // Biconditionals sweep one direction at a time so a failure pins
          // the offending implication.
          for (const auto& [tag, builder] : sch.parts) {
            std::optional<Formula> part = builder(fs, as);
            if (part) check_one(sch.display_name() + ":" + tag, *part);
          }
        }
      });
    });
  }
  return report;
}

RkOutcome rk_apply(std::span<const KripkeLatticeModel> models, const RkPremise& rk) {
  if (rk.premises.empty()) throw ModelError("the inference rule needs at least one premise");

  std::vector<std::string> premise_atoms;
  for (const Formula& p : rk.premises) {
    auto a = p.atoms();
    premise_atoms.insert(premise_atoms.end(), a.begin(), a.end());
  }
  for (const auto& atom : rk.conclusion.atoms()) {
    if (std::find(premise_atoms.begin(), premise_atoms.end(), atom) == premise_atoms.end())
      throw SideConditionError("conclusion atom '" + atom +
                               "' does not occur in any premise");
  }

  Formula conj = rk.premises[0];
  Formula lifted = Formula::knows(rk.agent, rk.premises[0]);
  for (std::size_t i = 1; i < rk.premises.size(); ++i) {
    conj = Formula::conjunction(conj, rk.premises[i]);
    lifted = Formula::conjunction(lifted, Formula::knows(rk.agent, rk.premises[i]));
  }

  RkOutcome out;
  out.premise_implication_valid =
      valid_over(models, Formula::implication(conj, rk.conclusion)).valid;
  ValidityResult lifted_result = valid_over(
      models, Formula::implication(lifted, Formula::knows(rk.agent, rk.conclusion)));
  out.conclusion_implication_valid = lifted_result.valid;
  out.conclusion_counterexample = lifted_result.counterexample;
  return out;
}

namespace {

// Bounded draw from the standard 64-bit Mersenne engine; the engine's output
// sequence is pinned by the standard, so corpora are reproducible everywhere.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

}  // namespace

std::vector<KripkeLatticeModel> generate_models(const GeneratorParams& params) {
  if (params.atom_count < 0 || params.atom_count > 3 || params.world_count < 1 ||
      params.world_count > 4 || params.agent_count < 1 || params.agent_count > 2 ||
      params.sample_count < 0)
    throw ModelError("generator bounds: atoms <= 3, worlds <= 4, agents <= 2");

  std::mt19937_64 rng(params.seed);
  std::vector<KripkeLatticeModel> out;
  out.reserve(params.sample_count);

  const int atoms = params.atom_count;
  const int worlds = params.world_count;
  const int agents = params.agent_count;

  for (int sample = 0; sample < params.sample_count; ++sample) {
    KripkeModelData data;
    for (int w = 0; w < worlds; ++w) data.worlds.push_back("w" + std::to_string(w));
    for (int a = 0; a < agents; ++a) data.agents.push_back("a" + std::to_string(a));
    for (int p = 0; p < atoms; ++p) data.atoms.push_back("p" + std::to_string(p));

    // Random partition per agent: worlds with the same block id share a cell.
    std::vector<std::vector<int>> block(agents, std::vector<int>(worlds));
    data.relations.resize(agents);
    for (int a = 0; a < agents; ++a) {
      for (int w = 0; w < worlds; ++w) block[a][w] = static_cast<int>(draw(rng, worlds));
      for (int w = 0; w < worlds; ++w)
        for (int v = 0; v < worlds; ++v)
          if (block[a][w] == block[a][v])
            data.relations[a].emplace_back(data.worlds[w], data.worlds[v]);
    }

    data.valuation.resize(atoms);
    for (int p = 0; p < atoms; ++p)
      for (int w = 0; w < worlds; ++w)
        if (draw(rng, 2) == 1) data.valuation[p].push_back(data.worlds[w]);

    // One awareness target per information cell; equal targets across a
    // cell keep introspection intact, intersection keeps lower tags
    // surprise-free.
    std::vector<AwarenessTable> awareness(agents, AwarenessTable(atoms, worlds));
    for (int a = 0; a < agents; ++a) {
      std::vector<std::optional<AtomSet>> cell_target(worlds);
      std::vector<AtomSet> target(worlds);
      for (int w = 0; w < worlds; ++w) {
        int b = block[a][w];
        if (!cell_target[b])
          cell_target[b] =
              AtomSet::from_raw(static_cast<std::uint32_t>(draw(rng, 1u << atoms)));
        target[w] = *cell_target[b];
      }
      for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << atoms); ++mask) {
        AtomSet x = AtomSet::from_raw(mask);
        for (int w = 0; w < worlds; ++w)
          awareness[a].set({w, x}, {w, x.intersect(target[w])});
      }
    }

    out.emplace_back(KripkeModel(std::move(data)), std::move(awareness));
  }
  return out;
}

}  // namespace awmc
