#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awmc/error.hpp"
#include "awmc/lattice.hpp"

namespace awmc {

/// One axiom schema: a named shape instantiated with argument formulas and
/// agents. `make` may decline an argument tuple (e.g. a shape that needs at
/// least one atom in its argument) by returning nullopt. Biconditional
/// schemas additionally expose their two implications in `parts`, which the
/// sweep checks separately so a counterexample names the failing direction.
struct AxiomSchema {
  using Builder =
      std::function<std::optional<Formula>(std::span<const Formula>, std::span<const std::string>)>;

  std::string name;     // PropTautology, Symmetry, AwarenessConjunction, ...
  std::string variant;  // shape tag within PropTautology, empty otherwise
  int formula_arity = 0;
  int agent_arity = 0;
  Builder make;
  std::vector<std::pair<std::string, Builder>> parts;  // sweep granules, may be empty

  std::string display_name() const {
    return variant.empty() ? name : name + ":" + variant;
  }
};

/// Checked instantiation: verifies the argument counts against the schema's
/// arities (ModelError on mismatch), then builds the instance. nullopt when
/// the schema declines the arguments.
std::optional<Formula> instantiate(const AxiomSchema& schema, std::span<const Formula> formulas,
                                   std::span<const std::string> agents);

/// The axiom schemas of the unawareness logic: propositional tautology
/// shapes, awareness symmetry, awareness conjunction, awareness-knowledge
/// reflection, truth, positive introspection.
std::vector<AxiomSchema> axiom_schemas();

/// Standard negative introspection (!K{a}f -> K{a}!K{a}f). Deliberately not
/// among axiom_schemas(): it fails on models with genuine unawareness, and
/// sweeps use it as a sanity probe.
AxiomSchema negative_introspection_schema();

/// Consequences the axioms entail: the weakened negative-introspection
/// schema, awareness introspection, awareness generated by primitive
/// propositions, symmetry under negation, and the unawareness bound.
std::vector<AxiomSchema> derived_theorem_schemas();

struct SweepLine {
  std::string schema;  // display name
  Formula instance;
  std::optional<ValidityCounterexample> counterexample;
};

struct SweepReport {
  std::vector<SweepLine> lines;
  std::size_t counterexamples = 0;

  bool all_valid() const { return counterexamples == 0; }
  /// Line-oriented rendering:
  ///   SCHEMA <name> INSTANCE <formula> MODEL <id|-> WORLD <ref|-> -> VALID|CEX
  std::string to_text(std::span<const KripkeLatticeModel> models) const;
};

/// Instantiates every schema with every argument tuple of formulas up to
/// max_arg_depth (over the given pools) and agents, and checks validity over
/// the models. Requires equivalence relations throughout.
SweepReport sweep_schemas(std::span<const KripkeLatticeModel> models,
                          std::span<const AxiomSchema> schemas,
                          const std::vector<std::string>& atom_pool,
                          const std::vector<std::string>& agent_pool, int max_arg_depth);

/// An application of the knowledge-lifting inference rule.
struct RkPremise {
  std::vector<Formula> premises;
  Formula conclusion = Formula::top();
  std::string agent;
};

/// Thrown when the conclusion mentions atoms outside the premises' atoms.
struct SideConditionError : Error {
  using Error::Error;
};

struct RkOutcome {
  bool premise_implication_valid = false;
  bool conclusion_implication_valid = false;
  std::optional<ValidityCounterexample> conclusion_counterexample;

  /// The rule preserves validity on this model set.
  bool preserved() const { return !premise_implication_valid || conclusion_implication_valid; }
};

/// Checks validity preservation of the rule on concrete models: when the
/// conjoined premises imply the conclusion validly, the knowledge-lifted
/// implication must be valid too. Throws SideConditionError when the atom
/// side condition fails.
RkOutcome rk_apply(std::span<const KripkeLatticeModel> models, const RkPremise& rk);

struct GeneratorParams {
  std::uint64_t seed = 0;
  int atom_count = 2;   // <= 3
  int world_count = 4;  // <= 4
  int agent_count = 2;  // <= 2
  int sample_count = 0;
};

/// Deterministic pseudo-random valid lattice models: random partitions as
/// accessibility, random valuations, awareness maps drawn per information
/// cell (equal targets across a cell keep introspection intact) and closed
/// downwards. Identical parameters reproduce identical models.
std::vector<KripkeLatticeModel> generate_models(const GeneratorParams& params);

}  // namespace awmc
