#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "translucent/acceptance.hpp"
#include "translucent/domination.hpp"
#include "translucent/errors.hpp"
#include "translucent/json_io.hpp"
#include "translucent/logic.hpp"
#include "translucent/random.hpp"
#include "translucent/rationalizability.hpp"
#include "translucent/witness.hpp"

namespace translucent::cli {

using nlohmann::json;

std::string CommandResult::output() const {
  if (json_requested && payload) return payload->dump(2) + "\n";
  return report;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw InputError("cannot write file '" + path + "'");
}

Game load_game(const std::string& path) { return parse_game(read_file(path)); }

struct LoadedStructure {
  CounterfactualStructure structure;
  std::optional<StateIndex> designated;
};

// Structure files may carry an optional "designated" state id next to the
// structure proper.
LoadedStructure load_structure(const std::string& path) {
  const std::string text = read_file(path);
  const auto base = std::filesystem::path(path).parent_path().string();
  LoadedStructure out{parse_structure(text, nullptr, base), std::nullopt};
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_object() && doc.contains("designated")) {
    if (!doc["designated"].is_string()) throw InputError("structure: 'designated' must be a state id");
    out.designated = out.structure.state_index(doc["designated"].get<std::string>());
  }
  return out;
}

std::string structure_file(const CounterfactualStructure& m, std::optional<StateIndex> designated) {
  json doc = json::parse(serialize_structure(m));
  if (designated) doc["designated"] = m.id(*designated);
  return doc.dump(2) + "\n";
}

std::string set_str(const Game& g, std::size_t player, const std::vector<std::size_t>& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k > 0) out += ",";
    out += g.strategy_name(player, set[k]);
  }
  return out + "}";
}

std::string family_str(const Game& g, const std::vector<std::vector<std::size_t>>& sets) {
  std::string out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i > 0) out += " x ";
    out += set_str(g, i, sets[i]);
  }
  return out;
}

json family_json(const Game& g, const std::vector<std::vector<std::size_t>>& sets) {
  json out = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    json names = json::array();
    for (std::size_t s : sets[i]) names.push_back(g.strategy_name(i, s));
    out.push_back(names);
  }
  return out;
}

json trace_json(const Game& g, const DeletionTrace& trace) {
  json rounds = json::array();
  for (const auto& family : trace.rounds) rounds.push_back(family_json(g, family.sets()));
  json certificates = json::array();
  for (const auto& c : trace.certificates) {
    certificates.push_back({{"player", c.player + 1},
                            {"deleted", g.strategy_name(c.player, c.deleted)},
                            {"dominator", g.strategy_name(c.player, c.dominator)},
                            {"min", c.dominator_min.str()},
                            {"max", c.dominated_max.str()},
                            {"round", c.round}});
  }
  return {{"rounds", rounds}, {"certificates", certificates}};
}

std::string trace_report(const Game& g, const DeletionTrace& trace) {
  std::ostringstream out;
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    out << "round " << k << ": " << family_str(g, trace.rounds[k].sets()) << "\n";
    for (const auto& c : trace.certificates) {
      if (c.round != k) continue;
      out << "  player " << c.player + 1 << " deletes " << g.strategy_name(c.player, c.deleted)
          << ": dominator " << g.strategy_name(c.player, c.dominator) << ", min " << c.dominator_min
          << " > max " << c.dominated_max << "\n";
    }
  }
  out << "survivors after " << trace.round_count() << " round" << (trace.round_count() == 1 ? "" : "s")
      << ": " << family_str(g, trace.final_family().sets()) << "\n";
  return out.str();
}

Profile parse_profile(const Game& g, const std::string& text) {
  std::vector<std::string> names;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    names.push_back(first == std::string::npos ? "" : item.substr(first, last - first + 1));
  }
  return g.profile_from_names(names);
}

GameParams parse_params(const std::vector<std::string>& items) {
  GameParams params;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("parameter '" + item + "' is not key=value");
    params[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
  }
  return params;
}

// Options shared by the subcommands; CLI11 binds into these.
struct Options {
  bool json = false;
  std::string game;
  std::string structure;
  std::size_t budget = kDefaultStrategyBudget;
  // solve
  bool rationalizable = false;
  bool strict_baseline = false;
  bool restricted_pool = false;
  // mc
  std::string mode = "counterfactual";
  std::string formula;
  std::string state;
  // validate
  bool appropriate = false;
  bool strong = false;
  bool unilateral = false;
  bool epsilon = false;
  // witness / gen
  std::string profile;
  std::string out;
  std::string kind;
  std::string name;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> states;
  // verify-paper
  bool serial = false;
};

CommandResult solve(const Options& o) {
  const Game g = load_game(o.game);
  CommandResult r;
  if (o.rationalizable) {
    const auto rp = minimax_rationalizable_profiles(g, o.budget, Execution::kParallel);
    json profiles = json::array();
    std::ostringstream report;
    report << rp.profiles.size() << " minimax rationalizable profile" << (rp.profiles.size() == 1 ? "" : "s")
           << "\n";
    for (const auto& p : rp.profiles) {
      const auto& z = rp.witnesses.at(p);
      profiles.push_back({{"profile", g.profile_names(p)}, {"witness", family_json(g, z.sets)}});
      std::string names;
      for (const auto& n : g.profile_names(p)) names += (names.empty() ? "" : ",") + n;
      report << "(" << names << ")  Z = " << family_str(g, z.sets) << "\n";
    }
    r.payload = json{{"profiles", profiles}};
    r.report = report.str();
    return r;
  }
  if (o.strict_baseline) {
    const DeletionTrace trace = iterated_strict_dominance(g);
    r.payload = trace_json(g, trace);
    r.report = "iterated strict dominance\n" + trace_report(g, trace);
    return r;
  }
  const DeletionTrace trace = nsd_fixpoint(g);
  if (o.restricted_pool) {
    const DeletionTrace restricted = nsd_fixpoint(g, DominatorPool::kSurviving);
    const bool agree = restricted.rounds == trace.rounds;
    r.payload = json{{"agree", agree}, {"full", trace_json(g, trace)}, {"restricted", trace_json(g, restricted)}};
    r.report = "full dominator pool\n" + trace_report(g, trace) + "surviving dominator pool\n" +
               trace_report(g, restricted) + (agree ? "round sequences agree\n" : "round sequences differ\n");
    r.exit_code = agree ? 0 : 1;
    return r;
  }
  r.payload = trace_json(g, trace);
  r.report = trace_report(g, trace);
  return r;
}

CommandResult model_check(const Options& o) {
  const LoadedStructure loaded = load_structure(o.structure);
  const auto& m = loaded.structure;
  const EvalMode mode = o.mode == "probability" ? EvalMode::kProbability : EvalMode::kCounterfactual;
  const Formula f = parse_formula(o.formula, m.game());
  const StateSet sat = ModelChecker(m, mode).satisfying(f);

  CommandResult r;
  json ids = json::array();
  std::string listed;
  for (StateIndex w : sat.members()) {
    ids.push_back(m.id(w));
    listed += (listed.empty() ? "" : ", ") + m.id(w);
  }
  json payload{{"formula", f.str()}, {"mode", o.mode}, {"states", ids}};
  std::ostringstream report;
  report << "[[" << f.str() << "]] = {" << listed << "}\n";

  std::optional<StateIndex> focus = loaded.designated;
  if (!o.state.empty()) focus = m.state_index(o.state);
  if (focus) {
    const bool holds = sat.contains(*focus);
    payload["state"] = m.id(*focus);
    payload["holds"] = holds;
    report << m.id(*focus) << ": " << (holds ? "holds" : "does not hold") << "\n";
    r.exit_code = holds ? 0 : 1;
  } else {
    r.exit_code = sat.empty() ? 1 : 0;
  }
  r.payload = payload;
  r.report = report.str();
  return r;
}

json violations_json(const ValidationReport& report, const Game& g, const CounterfactualStructure& m) {
  json out = json::array();
  for (const auto& v : report.violations) {
    json entry{{"condition", v.condition}, {"state", m.id(v.state)}, {"player", v.player + 1}, {"message", v.message}};
    if (v.strategy) entry["strategy"] = g.strategy_name(v.player, *v.strategy);
    out.push_back(entry);
  }
  return out;
}

CommandResult validate(const Options& o) {
  const LoadedStructure loaded = load_structure(o.structure);
  const auto& m = loaded.structure;
  const bool all = !o.appropriate && !o.strong && !o.unilateral && !o.epsilon;
  CommandResult r;
  json payload = json::object();
  std::ostringstream report;
  bool ok = true;
  auto section = [&](const char* key, const char* label, const ValidationReport& v) {
    payload[key] = {{"ok", v.ok()}, {"violations", violations_json(v, m.game(), m)}};
    report << label << ": " << (v.ok() ? "yes" : "no") << "\n";
    for (const auto& violation : v.violations) report << "  " << violation.condition << ": " << violation.message << "\n";
    ok = ok && v.ok();
  };
  if (all || o.appropriate) section("appropriate", "appropriate", validate_appropriate(m));
  if (all || o.strong) section("strongly_appropriate", "strongly appropriate", validate_strongly_appropriate(m));
  if (all || o.unilateral) {
    const bool unilateral = respects_unilateral_deviations(m);
    payload["unilateral"] = unilateral;
    report << "respects unilateral deviations: " << (unilateral ? "yes" : "no") << "\n";
    ok = ok && unilateral;
  }
  if (all || o.epsilon) {
    const Rational eps = translucency_epsilon(m);
    payload["epsilon"] = eps.str();
    report << "epsilon: " << eps << "\n";
  }
  r.exit_code = ok ? 0 : 1;
  r.payload = payload;
  r.report = report.str();
  return r;
}

CommandResult witness(const Options& o) {
  const Game g = load_game(o.game);
  const Profile profile = parse_profile(g, o.profile);
  CommandResult r;
  const auto z = find_witness_sets(g, profile, o.budget, Execution::kParallel);
  if (!z) {
    r.exit_code = 1;
    r.report = "profile is not minimax rationalizable\n";
    r.payload = json{{"rationalizable", false}};
    return r;
  }
  const CanonicalWitness w = build_canonical_witness(g, *z, profile);
  const WitnessReport check = verify_ccbr_witness(w, profile);
  std::ostringstream report;
  report << "witness sets: " << family_str(g, z->sets) << "\n"
         << "states: " << w.structure.state_count() << " (" << w.belief_states.size() << " belief, "
         << w.punishment_states.size() << " punishment, 1 designated)\n"
         << "strongly appropriate: " << (check.strongly_appropriate ? "yes" : "no") << "\n"
         << "CCBR at '" << w.structure.id(w.designated) << "': " << (check.designated_in_ccbr ? "yes" : "no")
         << " (stable at level " << check.stable_level << ")\n";
  for (const auto& problem : check.problems) report << "  " << problem << "\n";
  if (!o.out.empty()) {
    write_file(o.out, structure_file(w.structure, w.designated));
    report << "wrote " << o.out << "\n";
  }
  r.exit_code = check.pass() ? 0 : 1;
  r.payload = json{{"rationalizable", true},
                   {"witness", family_json(g, z->sets)},
                   {"states", w.structure.state_count()},
                   {"designated", w.structure.id(w.designated)},
                   {"appropriate", check.appropriate},
                   {"strongly_appropriate", check.strongly_appropriate},
                   {"ccbr", check.designated_in_ccbr},
                   {"stable_level", check.stable_level}};
  r.report = report.str();
  return r;
}

CommandResult generate(const Options& o) {
  std::string content;
  const GameParams params = parse_params(o.params);
  auto need_seed = [&]() {
    if (!o.seed) throw InputError("gen " + o.kind + " requires --seed");
    return *o.seed;
  };
  auto need_name = [&]() {
    if (o.name.empty()) throw InputError("gen " + o.kind + " requires a builtin name");
    return o.name;
  };
  if (o.kind == "game") {
    content = serialize_game(builtin_game(need_name(), params));
  } else if (o.kind == "structure") {
    const auto built = builtin_structure(need_name(), params);
    content = structure_file(built.structure, built.designated);
  } else if (o.kind == "random-game") {
    content = serialize_game(random_game(need_seed()));
  } else if (o.kind == "random-structure") {
    const std::uint64_t seed = need_seed();
    auto game = std::make_shared<const Game>(o.game.empty() ? random_game(seed) : load_game(o.game));
    std::size_t widest = 2;
    for (std::size_t i = 0; i < game->player_count(); ++i) widest = std::max(widest, game->strategy_count(i));
    const std::size_t states = o.states.value_or(widest);
    content = structure_file(random_appropriate_structure(game, derive_seed(seed, 0, 0), states), std::nullopt);
  } else {
    throw InputError("unknown gen kind '" + o.kind + "' (game, structure, random-game, random-structure)");
  }
  CommandResult r;
  if (o.out.empty()) {
    r.report = content;
  } else {
    write_file(o.out, content);
    r.report = "wrote " + o.out + "\n";
  }
  r.payload = json::parse(content);
  return r;
}

CommandResult verify_paper(const Options& o) {
  AcceptanceOptions options;
  options.seed = *o.seed;
  options.execution = o.serial ? Execution::kSerial : Execution::kParallel;
  const auto results = run_acceptance(options);
  CommandResult r;
  json criteria = json::array();
  std::ostringstream report;
  bool all = true;
  report << "seed " << options.seed << "\n";
  for (const auto& c : results) {
    all = all && c.pass;
    criteria.push_back({{"id", c.id},
                        {"title", c.title},
                        {"pass", c.pass},
                        {"trials", c.trials},
                        {"failures", c.failures},
                        {"detail", c.detail}});
    std::string title = c.title;
    title.resize(32, ' ');
    report << (c.id < 10 ? " " : "") << c.id << "  " << title << (c.pass ? "PASS" : "FAIL") << "  " << c.detail
           << "\n";
  }
  report << (all ? "all criteria pass\n" : "some criteria fail\n");
  r.exit_code = all ? 0 : 1;
  r.payload = json{{"seed", options.seed}, {"pass", all}, {"criteria", criteria}};
  r.report = report.str();
  return r;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Minimax domination, counterfactual structures and translucent rationality", "translucent"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "iterated minimax deletion on a game file");
  solve_cmd->add_option("--game", o.game, "game JSON file")->required();
  solve_cmd->add_flag("--rationalizable", o.rationalizable, "list minimax rationalizable profiles");
  solve_cmd->add_flag("--strict-baseline", o.strict_baseline, "classical iterated strict dominance");
  solve_cmd->add_flag("--remark35,--restricted-pool", o.restricted_pool,
                      "compare against dominators drawn from surviving strategies only");
  solve_cmd->add_option("--budget", o.budget, "largest strategy count for witness enumeration");

  auto* mc_cmd = app.add_subcommand("mc", "model-check a formula on a structure file");
  mc_cmd->add_option("--structure", o.structure, "structure JSON file")->required();
  mc_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"counterfactual", "probability"}));
  mc_cmd->add_option("--formula", o.formula)->required();
  mc_cmd->add_option("--state", o.state, "state id to report a verdict for");

  auto* validate_cmd = app.add_subcommand("validate", "check structure conditions (all when none selected)");
  validate_cmd->add_option("--structure", o.structure, "structure JSON file")->required();
  validate_cmd->add_flag("--appropriate", o.appropriate);
  validate_cmd->add_flag("--strong", o.strong);
  validate_cmd->add_flag("--unilateral", o.unilateral);
  validate_cmd->add_flag("--epsilon", o.epsilon);

  auto* witness_cmd = app.add_subcommand("witness", "canonical CCBR witness for a profile");
  witness_cmd->add_option("--game", o.game, "game JSON file")->required();
  witness_cmd->add_option("--profile", o.profile, "comma-separated strategy names")->required();
  witness_cmd->add_option("--out", o.out, "write the structure here");
  witness_cmd->add_option("--budget", o.budget, "largest strategy count for witness enumeration");

  auto* gen_cmd = app.add_subcommand("gen", "write builtin or random games and structures");
  gen_cmd->add_option("kind", o.kind, "game, structure, random-game or random-structure")->required();
  gen_cmd->add_option("name", o.name, "builtin name (ladder, translucent_pd, pd_naive)");
  gen_cmd->add_option("--param", o.params, "builtin parameter key=value, e.g. k=5 or p=1/2");
  gen_cmd->add_option("--seed", o.seed);
  gen_cmd->add_option("--states", o.states, "state count for random-structure");
  gen_cmd->add_option("--game", o.game, "game file for random-structure");
  gen_cmd->add_option("--out", o.out, "output file (stdout when absent)");

  auto* verify_cmd = app.add_subcommand("verify-paper", "run the full acceptance suite");
  verify_cmd->add_option("--seed", o.seed)->required();
  verify_cmd->add_flag("--serial", o.serial, "run trials on the serial reference path");

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", o.json, "machine-readable output");

  CommandResult result;
  std::vector<std::string> argv_storage{"translucent"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    result.report = out.str();
    result.errors = err.str();
    result.exit_code = code == 0 ? 0 : 2;
    return result;
  }

  try {
    if (solve_cmd->parsed()) result = solve(o);
    if (mc_cmd->parsed()) result = model_check(o);
    if (validate_cmd->parsed()) result = validate(o);
    if (witness_cmd->parsed()) result = witness(o);
    if (gen_cmd->parsed()) result = generate(o);
    if (verify_cmd->parsed()) result = verify_paper(o);
  } catch (const std::exception& e) {
    result = {};
    result.exit_code = 2;
    result.errors = std::string("error: ") + e.what() + "\n";
  }
  result.json_requested = o.json;
  return result;
}

}  // namespace translucent::cli
