// awmc: inspect, check, transform and sweep awareness models from the
// command line. See README.md for the file format and exit codes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "awmc/error.hpp"
#include "awmc/logic.hpp"
#include "awmc/model_io.hpp"
#include "awmc/transforms.hpp"

namespace {

using namespace awmc;

// Exit codes: 0 true/ok, 1 false/violations, 2 undefined, 3 parse error,
// 4 validation or transform error, 5 unknown world, 10 anything else.
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUndefined = 2;
constexpr int kExitParse = 3;
constexpr int kExitValidation = 4;
constexpr int kExitUnknownWorld = 5;
constexpr int kExitOther = 10;

int atom_cap_from_env() {
  const char* env = std::getenv("AWMC_MAX_ATOMS");
  if (!env) return kDefaultAtomCap;
  int cap = std::atoi(env);
  if (cap <= 0 || cap > kMaxAtoms) {
    std::cerr << "AWMC_MAX_ATOMS must be between 1 and " << kMaxAtoms << "\n";
    std::exit(kExitValidation);
  }
  return cap;
}

int cmd_parse(const std::string& text) {
  std::cout << parse_formula(text).to_string() << "\n";
  return kExitTrue;
}

int cmd_check(const std::string& model_path, const std::string& point,
              const std::string& formula_text) {
  Formula f = parse_formula(formula_text);
  LoadedModel model = load_model(model_path, atom_cap_from_env());

  ThreeVal verdict;
  if (const auto* klm = std::get_if<KripkeLatticeModel>(&model)) {
    verdict = klm->satisfies(parse_world_ref(klm->base(), point), f);
  } else {
    const auto& hms = std::get<HmsModel>(model);
    StateId s = hms.lattice().state_index(point);
    if (s < 0) throw UnknownWorldError("unknown state '" + point + "'");
    verdict = hms.satisfies(s, f);
  }
  std::cout << to_string(verdict) << "\n";
  switch (verdict) {
    case ThreeVal::True: return kExitTrue;
    case ThreeVal::False: return kExitFalse;
    default: return kExitUndefined;
  }
}

int cmd_transform(const std::string& direction, const std::string& in_path,
                  const std::string& out_path) {
  LoadedModel model = load_model(in_path, atom_cap_from_env());
  if (direction == "l") {
    const auto* hms = std::get_if<HmsModel>(&model);
    if (!hms) throw TransformError("direction l needs an hms input model");
    LTransform t = l_transform(*hms, atom_cap_from_env());
    // Serialize everything before touching the filesystem; no partial pairs.
    std::string side_text = correspondence_json_text(*hms, t);
    save_model(out_path, t.model);
    std::ofstream side(out_path + ".corr");
    if (!side) throw IoError("cannot write '" + out_path + ".corr'");
    side << side_text;
    std::cout << "wrote " << out_path << " and " << out_path << ".corr\n";
  } else {
    const auto* klm = std::get_if<KripkeLatticeModel>(&model);
    if (!klm) throw TransformError("direction h needs a kripke_lattice input model");
    save_model(out_path, h_transform(*klm));
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitTrue;
}

int cmd_validate(const std::string& in_path) {
  // Loading re-runs the validators; reaching this line means zero violations.
  LoadedModel model = load_model(in_path, atom_cap_from_env());
  if (const auto* klm = std::get_if<KripkeLatticeModel>(&model)) {
    std::cout << "3/3 awareness-map properties hold ("
              << klm->base().agent_count() << " agents, "
              << klm->lattice().size() << " restrictions)\n";
    std::cout << (klm->base().all_equivalence()
                      ? "all accessibility relations are equivalence relations\n"
                      : "note: some accessibility relation is not an equivalence relation\n");
  } else {
    const auto& hms = std::get<HmsModel>(model);
    std::cout << "5/5 HMS properties hold (" << hms.frame().agent_count() << " agents, "
              << hms.lattice().space_count() << " spaces, "
              << hms.lattice().state_count() << " states)\n";
  }
  return kExitTrue;
}

int cmd_equiv(const std::string& in_path, int depth) {
  LoadedModel model = load_model(in_path, atom_cap_from_env());
  AgreementResult r;
  if (const auto* klm = std::get_if<KripkeLatticeModel>(&model)) {
    r = check_equivalence_h(*klm, depth);
  } else {
    r = check_equivalence_l(std::get<HmsModel>(model), depth);
  }
  if (r.ok()) {
    std::cout << "0 counterexamples / " << r.formulas << " formulas x " << r.points
              << " (state,world) pairs\n";
    return kExitTrue;
  }
  std::cout << "counterexample: formula " << r.counterexample->formula.to_string()
            << " disagrees (" << to_string(r.counterexample->hms_value) << " vs "
            << to_string(r.counterexample->klm_value) << ")\n";
  return kExitFalse;
}

int cmd_axioms(std::uint64_t seed, int samples, int depth) {
  GeneratorParams params;
  params.seed = seed;
  params.sample_count = samples;
  std::vector<KripkeLatticeModel> corpus = generate_models(params);

  std::vector<std::string> atom_pool = {"p0", "p1"};
  std::vector<std::string> agent_pool = {"a0", "a1"};

  SweepReport axioms = sweep_schemas(corpus, axiom_schemas(), atom_pool, agent_pool, depth);
  SweepReport derived =
      sweep_schemas(corpus, derived_theorem_schemas(), atom_pool, agent_pool, depth);
  AxiomSchema five = negative_introspection_schema();
  SweepReport probe = sweep_schemas(corpus, {&five, 1}, atom_pool, agent_pool, depth);

  std::cout << axioms.to_text(corpus) << derived.to_text(corpus) << probe.to_text(corpus);
  std::cout << "models swept: " << corpus.size() << "\n";
  std::cout << "axiom counterexamples: " << axioms.counterexamples << "\n";
  std::cout << "derived-theorem counterexamples: " << derived.counterexamples << "\n";
  std::cout << "negative-introspection counterexamples: " << probe.counterexamples << "\n";

  bool ok = axioms.all_valid() && derived.all_valid() && probe.counterexamples > 0;
  return ok ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"awareness-model checker: Kripke lattice and HMS models"};
  app.require_subcommand(1);

  std::string formula_text, model_path, point, direction, in_path, out_path;
  int equiv_depth = 2;
  int axioms_depth = 1;
  int samples = 20;
  std::uint64_t seed = 0;

  auto* parse_cmd = app.add_subcommand("parse", "echo the normalized form of a formula");
  parse_cmd->add_option("formula", formula_text)->required();

  auto* check_cmd = app.add_subcommand("check", "three-valued check of a formula at a world");
  check_cmd->add_option("model", model_path)->required();
  check_cmd->add_option("world", point)->required();
  check_cmd->add_option("formula", formula_text)->required();

  auto* transform_cmd = app.add_subcommand("transform", "transform between model kinds");
  transform_cmd->add_option("direction", direction)->required()->check(CLI::IsMember({"l", "h"}));
  transform_cmd->add_option("input", in_path)->required();
  transform_cmd->add_option("output", out_path)->required();

  auto* validate_cmd = app.add_subcommand("validate", "run the structural validators");
  validate_cmd->add_option("model", model_path)->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "sweep satisfaction agreement across transforms");
  equiv_cmd->add_option("model", model_path)->required();
  equiv_cmd->add_option("--depth", equiv_depth, "maximum formula depth")->capture_default_str();

  auto* axioms_cmd = app.add_subcommand("axioms", "validity sweeps over a generated corpus");
  axioms_cmd->add_option("--seed", seed)->capture_default_str();
  axioms_cmd->add_option("--samples", samples)->capture_default_str();
  axioms_cmd->add_option("--depth", axioms_depth, "maximum argument depth")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (parse_cmd->parsed()) return cmd_parse(formula_text);
    if (check_cmd->parsed()) return cmd_check(model_path, point, formula_text);
    if (transform_cmd->parsed()) return cmd_transform(direction, in_path, out_path);
    if (validate_cmd->parsed()) return cmd_validate(model_path);
    if (equiv_cmd->parsed()) return cmd_equiv(model_path, equiv_depth);
    if (axioms_cmd->parsed()) return cmd_axioms(seed, samples, axioms_depth);
    return kExitOther;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitTrue : kExitOther;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownWorldError& e) {
    std::cerr << e.what() << "\n";
    return kExitUnknownWorld;
  } catch (const UnknownSymbolError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const TransformError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const ModelError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
