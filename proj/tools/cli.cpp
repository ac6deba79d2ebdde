#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "normsys/ctl.hpp"
#include "normsys/dsl.hpp"
#include "normsys/ecosystem.hpp"
#include "normsys/kripke.hpp"
#include "normsys/nfa.hpp"
#include "normsys/recognition.hpp"
#include "normsys/synthesis.hpp"
#include "normsys/validation.hpp"

namespace normsys::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

/// A failure attributable to the user's input; exit status 2.
struct InputError : Error {
  using Error::Error;
};

struct Options {
  std::string model;
  std::vector<std::string> norms;
  std::string family;
  std::size_t active = 0;
  std::string formula;
  std::string mode;
  std::size_t kmax = 2;
  std::uint64_t budget = 10'000'000;
  std::optional<std::uint64_t> timeout_ms;
  std::optional<std::size_t> depth;
  bool json = false;
  bool no_timing = false;
  std::string replay;
  std::string observer;
  std::string out = ".";
  std::string norm_out;
  std::string config;
  std::string nfa;
};

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_ = Clock::now();
};

std::string render_scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render_scalar(v[i]);
    return s + ")";
  }
  return v.dump();
}

/// Human form: one "key: value" line per field; arrays of compound values
/// are listed one item per line.
void print_human(std::ostream& out, const Json& record, const std::string& indent = "") {
  for (const auto& [key, value] : record.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      print_human(out, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && (value[0].is_array() || value[0].is_object())) {
      out << indent << key << ":\n";
      for (const auto& item : value) {
        if (item.is_object()) {
          out << indent << "  -\n";
          print_human(out, item, indent + "    ");
        } else {
          out << indent << "  - " << render_scalar(item) << '\n';
        }
      }
    } else if (value.is_string()) {
      const std::string text = value.get<std::string>();
      if (text.find('\n') != std::string::npos) {
        out << indent << key << ": |\n";
        std::istringstream lines(text);
        for (std::string line; std::getline(lines, line);) out << indent << "  " << line << '\n';
      } else {
        out << indent << key << ": " << text << '\n';
      }
    } else if (value.is_array()) {
      out << indent << key << ":";
      for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : " ") << render_scalar(value[i]);
      out << '\n';
    } else {
      out << indent << key << ": " << render_scalar(value) << '\n';
    }
  }
}

void emit(std::ostream& out, const Options& opt, Json record, const Stopwatch& clock) {
  if (!opt.no_timing) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(3) << clock.elapsed_ms();
    record["time_ms"] = std::stod(ms.str());
  }
  if (opt.json) {
    out << record.dump() << '\n';
  } else {
    print_human(out, record);
  }
}

std::string read_input(const std::string& path) {
  if (path.empty()) throw InputError("missing input path");
  if (!fs::exists(path)) throw InputError("no such file: '" + path + "'");
  return dsl::read_file(path);
}

MasPtr load_model(const std::string& path) {
  if (path.empty()) throw InputError("--model is required");
  return dsl::parse_model(read_input(path));
}

NormativeSystem load_norm(const std::string& path, const Mas& mas) {
  NormativeSystem norm = dsl::parse_norm(read_input(path), mas);
  if (norm.name().empty()) norm.set_name(fs::path(path).stem().string());
  return norm;
}

Formula load_formula(const std::string& arg) {
  if (arg.empty()) throw InputError("--formula is required");
  if (fs::exists(arg)) return dsl::parse_formula(dsl::read_file(arg));
  return dsl::parse_formula(arg);
}

Json state_json(const Mas& mas, const NormativeSystem& norm, ProductState p) {
  return Json::array({mas.state_name(p.state), norm.norm_state_name(p.norm)});
}

Json path_json(const Mas& mas, const NormativeSystem& norm, const std::vector<ProductState>& path) {
  Json arr = Json::array();
  for (ProductState p : path) arr.push_back(state_json(mas, norm, p));
  return arr;
}

std::vector<ProductState> path_from_json(const Json& arr, const Mas& mas, const NormativeSystem& norm) {
  if (!arr.is_array()) throw InputError("witness path must be an array");
  std::vector<ProductState> path;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string()) {
      throw InputError("witness states are [state, norm-state] pairs");
    }
    auto s = mas.find_state(item[0].get<std::string>());
    auto q = norm.find_norm_state(item[1].get<std::string>());
    if (!s || !q) throw InputError("witness names an unknown state: " + item.dump());
    path.push_back({*s, *q});
  }
  return path;
}

struct LoadedFamily {
  NormFamily family;
  std::vector<std::string> norm_names;
};

LoadedFamily load_family(const Options& opt, bool active_given) {
  dsl::FamilyDocument doc;
  fs::path base = ".";
  if (!opt.family.empty()) {
    doc = dsl::parse_family(read_input(opt.family));
    base = fs::path(opt.family).parent_path();
    auto resolve = [&](const std::string& p) {
      const fs::path path(p);
      return path.is_absolute() || base.empty() ? path.string() : (base / path).string();
    };
    if (doc.model) doc.model = resolve(*doc.model);
    for (auto& n : doc.norms) n = resolve(n);
  }
  if (!opt.model.empty()) doc.model = opt.model;
  if (!opt.norms.empty()) doc.norms = opt.norms;
  if (active_given || opt.family.empty()) doc.active = opt.active;
  if (!opt.observer.empty()) doc.observer = opt.observer;
  if (!doc.model) throw InputError("--model is required");
  if (doc.norms.empty()) throw InputError("--norms or --family is required");

  MasPtr mas = load_model(*doc.model);
  std::vector<NormativeSystem> members;
  LoadedFamily loaded;
  for (const auto& path : doc.norms) {
    members.push_back(load_norm(path, *mas));
    loaded.norm_names.push_back(members.back().name());
  }
  if (doc.active >= members.size()) throw InputError("--active is out of range");

  std::vector<std::string> obs;
  if (doc.observer) {
    auto agent = mas->find_agent(*doc.observer);
    if (!agent) throw InputError("unknown observer agent '" + *doc.observer + "'");
    obs = observations_of(*mas, *agent);
  } else if (doc.observations.empty()) {
    throw InputError("the new agent's observations are not given (use --observer or a family file)");
  } else {
    obs = mas->states();  // unlisted states are told apart by name
  }
  for (const auto& [state, value] : doc.observations) {
    auto s = mas->find_state(state);
    if (!s) throw InputError("family observes unknown state '" + state + "'");
    obs[*s] = value;
  }
  loaded.family = NormFamily::make(mas, std::move(members), doc.active, std::move(obs));
  ValidationReport report = validate_family(loaded.family);
  if (!report.ok()) throw ValidationError(std::move(report));
  return loaded;
}

int cmd_validate(const Options& opt, std::ostream& out) {
  Stopwatch clock;
  MasPtr mas = dsl::parse_model_unchecked(read_input(opt.model));
  Json record;
  record["command"] = "validate";
  ValidationReport report = validate_mas(*mas);
  record["model"] = opt.model;
  record["states"] = mas->state_count();
  record["transitions"] = mas->transitions().size();
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(Json::array({v.rule, v.detail}));
  for (const auto& path : opt.norms) {
    if (!report.ok()) break;
    NormativeSystem norm = dsl::parse_norm_unchecked(read_input(path), *mas);
    for (const auto& v : validate_norm(*mas, norm).violations) {
      violations.push_back(Json::array({v.rule, path + ": " + v.detail}));
    }
  }
  record["valid"] = violations.empty();
  if (!violations.empty()) record["violations"] = violations;
  emit(out, opt, record, clock);
  return violations.empty() ? kExitOk : kExitInput;
}

int cmd_check(const Options& opt, std::ostream& out) {
  MasPtr mas = load_model(opt.model);
  NormativeSystem norm = opt.norms.empty() ? NormativeSystem::identity(*mas) : load_norm(opt.norms[0], *mas);
  const Formula f = load_formula(opt.formula);
  Stopwatch clock;
  const ReachableProduct product = reachable(apply_norm(mas, norm));
  const bool holds = ctl::check(product, f);
  Json record;
  record["command"] = "check";
  record["formula"] = f.to_string();
  record["verdict"] = holds;
  record["reachable_states"] = product.size();
  emit(out, opt, record, clock);
  return kExitOk;
}

int cmd_synth(const Options& opt, std::ostream& out) {
  MasPtr mas = load_model(opt.model);
  const Formula f = load_formula(opt.formula);
  SynthesisBudget budget;
  budget.max_candidates = opt.budget;
  if (opt.timeout_ms) budget.wall_clock = std::chrono::milliseconds(*opt.timeout_ms);
  Stopwatch clock;
  const SynthesisOutcome result = opt.mode == "static" ? synthesize_static(mas, f, budget)
                                                       : synthesize_dynamic(mas, f, opt.kmax, budget);
  Json record;
  record["command"] = "synth";
  record["mode"] = opt.mode;
  record["outcome"] = to_string(result.kind);
  record["bound"] = result.bound;
  record["candidates"] = result.candidates;
  if (result.norm) {
    const std::string text = dsl::serialize_norm(*mas, *result.norm);
    record["norm"] = text;
    if (!opt.norm_out.empty()) {
      dsl::write_file(opt.norm_out, text);
      record["written"] = opt.norm_out;
    }
  }
  emit(out, opt, record, clock);
  return kExitOk;
}

Json lasso_json(const NormFamily& fam, const LassoWitness& w) {
  Json j;
  j["rival"] = w.rival;
  j["loop_start"] = w.loop_start;
  j["active_path"] = path_json(*fam.mas, fam.member(fam.active), w.active_path);
  j["rival_path"] = path_json(*fam.mas, fam.member(w.rival), w.rival_path);
  return j;
}

int replay(const Options& opt, const LoadedFamily& loaded, bool nc1, std::ostream& out) {
  Stopwatch clock;
  Json record;
  try {
    record = Json::parse(read_input(opt.replay));
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("replay file is not a machine-mode record: ") + e.what());
  }
  if (!record.contains("witness")) throw InputError("replay record carries no witness");
  const NormFamily& fam = loaded.family;
  const Json& w = record["witness"];
  bool valid = false;
  try {
    if (nc1) {
      LassoWitness lasso;
      lasso.rival = w.at("rival").get<std::uint32_t>();
      lasso.loop_start = w.at("loop_start").get<std::size_t>();
      if (lasso.rival >= fam.size()) throw InputError("witness rival out of range");
      lasso.active_path = path_from_json(w.at("active_path"), *fam.mas, fam.member(fam.active));
      lasso.rival_path = path_from_json(w.at("rival_path"), *fam.mas, fam.member(lasso.rival));
      valid = validate_nc1_witness(fam, lasso);
    } else {
      valid = validate_nc2_witness(fam, path_from_json(w.at("path"), *fam.mas, fam.member(fam.active)));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed witness: ") + e.what());
  }
  Json result;
  result["command"] = nc1 ? "nc1" : "nc2";
  result["replay"] = valid ? "valid" : "invalid";
  emit(out, opt, result, clock);
  return valid ? kExitOk : kExitInput;
}

int cmd_recognize(const Options& opt, bool active_given, bool nc1, std::ostream& out) {
  const LoadedFamily loaded = load_family(opt, active_given);
  if (!opt.replay.empty()) return replay(opt, loaded, nc1, out);
  const NormFamily& fam = loaded.family;
  Stopwatch clock;
  const RecognitionVerdict verdict = nc1 ? decide_nc1(fam) : decide_nc2(fam);
  Json record;
  record["command"] = nc1 ? "nc1" : "nc2";
  record["norms"] = loaded.norm_names;
  record["active"] = fam.active;
  record["verdict"] = verdict.label();
  record["explored"] = verdict.explored;
  if (verdict.lasso) record["witness"] = lasso_json(fam, *verdict.lasso);
  if (verdict.path) {
    Json w;
    w["path"] = path_json(*fam.mas, fam.member(fam.active), *verdict.path);
    w["observations"] = extend_observation(fam, *verdict.path);
    record["witness"] = w;
  }
  if (opt.depth) {
    // A bounded search is conclusive once the bound covers every simple
    // path of the explored structure (or the shortest witness for nc2).
    const std::size_t depth = *opt.depth;
    bool found = false;
    bool complete = false;
    bool consistent = false;
    if (nc1) {
      found = nc1_bruteforce(fam, depth).has_value();
      complete = depth > verdict.explored;
      consistent = complete ? found == !verdict.successful : !found || !verdict.successful;
    } else {
      found = nc2_bruteforce(fam, depth).has_value();
      complete = verdict.successful ? depth >= verdict.path->size() : depth >= verdict.explored;
      consistent = complete ? found == verdict.successful : !found || verdict.successful;
    }
    Json cross;
    cross["depth"] = depth;
    cross["witness_found"] = found;
    cross["complete"] = complete;
    cross["consistent"] = consistent;
    record["bruteforce"] = cross;
  }
  emit(out, opt, record, clock);
  return kExitOk;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory '" + dir + "': " + ec.message());
}

std::string family_text(const std::string& model, const std::vector<std::string>& norms,
                        const std::vector<std::string>& state_names, const std::vector<std::string>& obs) {
  dsl::FamilyDocument doc;
  doc.model = model;
  doc.norms = norms;
  for (std::size_t s = 0; s < state_names.size(); ++s) doc.observations.emplace_back(state_names[s], obs[s]);
  return dsl::serialize_family(doc);
}

int cmd_gen_eco(const Options& opt, std::ostream& out) {
  Stopwatch clock;
  EcoConfig cfg;
  try {
    cfg = parse_eco_config(read_input(opt.config));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  const Ecosystem eco = gen_ecosystem(cfg);
  ensure_dir(opt.out);
  const fs::path dir(opt.out);
  Json written = Json::array();
  auto write = [&](const std::string& name, const std::string& text) {
    dsl::write_file((dir / name).string(), text);
    written.push_back(name);
  };
  const Mas& mas = *eco.mas;
  write("model.mas", dsl::serialize_model(mas));
  write("n1.norm", dsl::serialize_norm(mas, norm_round_robin(eco)));
  write("n2.norm", dsl::serialize_norm(mas, norm_fifo(eco)));
  write("n6.norm", dsl::serialize_norm(mas, norm_skip2(eco)));
  try {
    const auto statics = static_norms_simple(eco);
    write("n3.norm", dsl::serialize_norm(mas, statics[0]));
    write("n4.norm", dsl::serialize_norm(mas, statics[1]));
    write("n5.norm", dsl::serialize_norm(mas, statics[2]));
  } catch (const Error&) {
    // Only the one-producer two-consumer case has them.
  }
  const auto [phi1, phi2] = objectives(cfg);
  write("phi1.ctl", dsl::serialize_formula(phi1));
  write("phi2.ctl", dsl::serialize_formula(phi2));
  write("phi1_and_phi2.ctl", dsl::serialize_formula(Formula::conjunction(phi1, phi2)));
  if (cfg.include_new_agent) {
    const auto obs = newcomer_observations(eco);
    write("n1-n2.family", family_text("model.mas", {"n1.norm", "n2.norm"}, mas.states(), obs));
    write("n2-n6.family", family_text("model.mas", {"n2.norm", "n6.norm"}, mas.states(), obs));
  }
  Json record;
  record["command"] = "gen eco";
  record["states"] = mas.state_count();
  record["transitions"] = mas.transitions().size();
  record["written"] = written;
  emit(out, opt, record, clock);
  return kExitOk;
}

int cmd_gen_nfa(const Options& opt, std::ostream& out) {
  Stopwatch clock;
  const Nfa nfa = dsl::parse_nfa(read_input(opt.nfa));
  const NormFamily fam = build_nfa_recognition_instance(nfa);
  ensure_dir(opt.out);
  const fs::path dir(opt.out);
  dsl::write_file((dir / "model.mas").string(), dsl::serialize_model(*fam.mas));
  dsl::write_file((dir / "n0.norm").string(), dsl::serialize_norm(*fam.mas, fam.member(0)));
  dsl::write_file((dir / "n1.norm").string(), dsl::serialize_norm(*fam.mas, fam.member(1)));
  dsl::FamilyDocument doc;
  doc.model = "model.mas";
  doc.norms = {"n0.norm", "n1.norm"};
  doc.observer = fam.mas->agent_name(0);
  dsl::write_file((dir / "instance.family").string(), dsl::serialize_family(doc));
  Json record;
  record["command"] = "gen nfa-instance";
  record["states"] = fam.mas->state_count();
  record["run_universal"] = nfa_run_universal(nfa);
  record["written"] = Json::array({"model.mas", "n0.norm", "n1.norm", "instance.family"});
  emit(out, opt, record, clock);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Verification workbench for dynamic normative multiagent systems", "normctl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", opt.json, "Emit one machine-readable record");
  app.add_flag("--no-timing", opt.no_timing, "Omit timings from the report");

  auto model_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--model", opt.model, "System (.mas)");
    if (required) o->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a system and optional norms for well-formedness");
  model_opt(validate, true);
  validate->add_option("--norm", opt.norms, "Norm (.norm); repeatable");

  auto* check = app.add_subcommand("check", "Model check a formula on the norm-applied system");
  model_opt(check, true);
  check->add_option("--norm", opt.norms, "Norm (.norm); the identity norm when omitted")->expected(0, 1);
  check->add_option("--formula", opt.formula, "Formula file (.ctl) or formula text")->required();

  auto* synth = app.add_subcommand("synth", "Search for a norm enforcing a formula");
  synth->add_option("mode", opt.mode, "static or dynamic")
      ->required()
      ->check(CLI::IsMember({"static", "dynamic"}));
  model_opt(synth, true);
  synth->add_option("--formula", opt.formula, "Formula file (.ctl) or formula text")->required();
  synth->add_option("--kmax", opt.kmax, "Largest number of normative states")->check(CLI::PositiveNumber);
  synth->add_option("--budget", opt.budget, "Largest number of candidates to verify");
  synth->add_option("--timeout-ms", opt.timeout_ms, "Wall-clock limit");
  synth->add_option("--out", opt.norm_out, "Write a found norm here");

  CLI::Option* active_opts[2] = {nullptr, nullptr};
  CLI::App* recog[2] = {nullptr, nullptr};
  const char* names[2] = {"nc1", "nc2"};
  const char* blurbs[2] = {"Can the newcomer always recognise the active norm?",
                           "Can the newcomer find a way to recognise the active norm?"};
  for (int i = 0; i < 2; ++i) {
    recog[i] = app.add_subcommand(names[i], blurbs[i]);
    model_opt(recog[i], false);
    recog[i]->add_option("--norms", opt.norms, "Candidate norms (.norm), in index order");
    recog[i]->add_option("--family", opt.family, "Family file (.family)");
    active_opts[i] = recog[i]->add_option("--active", opt.active, "Index of the active norm");
    recog[i]->add_option("--observer", opt.observer, "Take the newcomer's observations from this agent");
    recog[i]->add_option("--depth", opt.depth, "Cross-check with the exhaustive search to this depth");
    recog[i]->add_option("--replay", opt.replay, "Revalidate the witness of an earlier --json record");
  }

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  auto* eco = gen->add_subcommand("eco", "Producer-consumer system from a configuration");
  eco->add_option("--config", opt.config, "key = value configuration")->required();
  eco->add_option("--out", opt.out, "Output directory");
  auto* nfa = gen->add_subcommand("nfa-instance", "Recognition instance from an automaton");
  nfa->add_option("--nfa", opt.nfa, "Automaton (.nfa)")->required();
  nfa->add_option("--out", opt.out, "Output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "normctl: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt, out);
    if (check->parsed()) return cmd_check(opt, out);
    if (synth->parsed()) return cmd_synth(opt, out);
    if (recog[0]->parsed()) return cmd_recognize(opt, active_opts[0]->count() > 0, true, out);
    if (recog[1]->parsed()) return cmd_recognize(opt, active_opts[1]->count() > 0, false, out);
    if (eco->parsed()) return cmd_gen_eco(opt, out);
    if (nfa->parsed()) return cmd_gen_nfa(opt, out);
  } catch (const ValidationError& e) {
    err << "normctl: " << e.what();
    return kExitInput;
  } catch (const Error& e) {
    err << "normctl: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "normctl: " << e.what() << '\n';
    return kExitInput;
  }
  err << "normctl: no command\n";
  return kExitUsage;
}

}  // namespace normsys::cli
