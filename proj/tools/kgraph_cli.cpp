// kgraph: validate and analyze k-graph instance documents.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kgraph/kgraph.hpp"

namespace fs = std::filesystem;
using namespace kgraph;
using report::Json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kBudget = 3 };

struct Settings {
  std::string input;
  std::string fixture;
  std::size_t degree_bound = 4;
  std::size_t budget = Budget::kDefault;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  bool timing = false;
  // subcommand specific
  std::string side = "gamma";
  std::string dot_out;
  std::string skeleton = "all";
  std::size_t count = 100;
  std::string out_dir = "corpus";
  bool oracle = false;
  bool degree_set = false, budget_set = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

InstanceDocument load(Settings& s) {
  InstanceDocument doc;
  if (!s.fixture.empty()) {
    auto d = corpus::find(s.fixture);
    if (!d) throw InputError("unknown fixture '" + s.fixture + "'");
    doc = std::move(*d);
  } else if (!s.input.empty()) {
    try {
      doc = parse_document(read_file(s.input));
    } catch (const InputError& e) {
      throw InputError(s.input + ": " + e.what());
    }
  } else {
    throw InputError("one of --input or --fixture is required");
  }
  if (!s.degree_set && doc.options.degree_bound) s.degree_bound = static_cast<std::size_t>(*doc.options.degree_bound);
  if (!s.budget_set && doc.options.budget) s.budget = *doc.options.budget;
  return doc;
}

struct Loaded {
  BuiltInstance built;
  Json validation;
  bool valid = true;
  QuasiProductVerdict verdict;
};

Loaded load_instance(const InstanceDocument& doc, const Settings& s) {
  Loaded l{build_instance(doc), Json::object(), true, {}};
  bool ok = true;
  l.validation["lambda"] = report::validate(l.built.lambda, &ok);
  l.valid = l.valid && ok;
  l.validation["gamma"] = report::validate(l.built.gamma, &ok);
  l.valid = l.valid && ok;
  l.validation["host"] = report::validate(l.built.host, &ok);
  l.valid = l.valid && ok;
  if (!l.valid) return l;
  QuasiProductOptions opt;
  opt.embedding = l.built.embedding;
  opt.gamma_root = l.built.root;
  opt.budget = s.budget;
  l.verdict = verify_quasi_product(KGraph(l.built.host), KGraph(l.built.lambda), KGraph(l.built.gamma), opt);
  return l;
}

const QuasiProductInstance& require_qp(const Loaded& l) {
  if (!l.valid) throw PreconditionError("the document's rules are not valid; run validate for the witness");
  if (!l.verdict.instance) throw PreconditionError("not a quasi-product: " + l.verdict.reason);
  return *l.verdict.instance;
}

int cmd_validate(const InstanceDocument& doc, const Settings& s, Json& out) {
  if (doc.kgraph) {
    bool ok = true;
    out["kgraph"] = report::validate(build_rule(*doc.kgraph), &ok);
    return ok ? kOk : kNegative;
  }
  auto l = load_instance(doc, s);
  out["validation"] = l.validation;
  if (!l.valid) return kNegative;
  out["quasi_product"] = report::quasi_product(l.verdict);
  return l.verdict.instance ? kOk : kNegative;
}

int cmd_analyze(const InstanceDocument& doc, const Settings& s, Json& out) {
  if (doc.kgraph) {
    bool ok = true;
    auto rule = build_rule(*doc.kgraph);
    out["kgraph"] = report::validate(rule, &ok);
    if (!ok) return kNegative;
    KGraph kg(rule);
    auto cs = detect_cycle_factor(kg);
    out["cycle_factor"] = cs ? Json{{"n", cs->n}, {"k", cs->k}} : Json(nullptr);
    out["vertex_fixing_automorphisms_trivial"] = vertex_fixing_automorphisms(kg.graph()).trivial();
    return kOk;
  }
  auto l = load_instance(doc, s);
  out["validation"] = l.validation;
  if (!l.valid) return kNegative;
  out["quasi_product"] = report::quasi_product(l.verdict);
  if (!l.verdict.instance) return kNegative;
  const auto& qp = *l.verdict.instance;
  Json st, rel;
  for (Side side : {Side::gamma, Side::lambda}) {
    st[side_name(side)] = report::stability(qp, check_stable(qp, side, s.degree_bound));
    try {
      rel[side_name(side)] = report::relaxed(qp, check_relaxed_stable(qp, side, s.degree_bound));
    } catch (const PreconditionError& e) {
      rel[side_name(side)] = Json{{"error", e.what()}};
    }
  }
  out["stability"] = st;
  out["relaxed_stability"] = rel;
  out["matched_pair"] = report::laws(verify_mp_axioms(qp.pair(), s.degree_bound));
  out["action_composition"] = report::composition(qp, check_action_composition(qp.pair(), s.degree_bound));
  return kOk;
}

int cmd_stabilize(const InstanceDocument& doc, const Settings& s, Json& out) {
  if (s.side != "gamma" && s.side != "lambda") throw InputError("--side must be gamma or lambda");
  Side side = s.side == "gamma" ? Side::gamma : Side::lambda;
  auto l = load_instance(doc, s);
  const auto& qp = require_qp(l);
  out["relaxed_stability"] = report::relaxed(qp, check_relaxed_stable(qp, side, s.degree_bound));
  auto r = stabilize(qp, side, s.degree_bound);
  out["stabilization"] = report::stabilization(qp, r);
  auto stabilized = instance_document(doc.name + "_stabilized", l.built.lambda, l.built.gamma, r.stabilized,
                                      l.built.embedding);
  stabilized.root = doc.root;
  out["document"] = document_json(stabilized);
  return r.verified() ? kOk : kNegative;
}

int cmd_decide(const InstanceDocument& doc, const Settings& s, Json& out) {
  auto l = load_instance(doc, s);
  const auto& qp = require_qp(l);
  auto d = decide_product(qp, s.degree_bound);
  out["decision"] = report::decision(qp, d);
  try {
    auto sc = apply_polytree_shortcuts(qp, l.built.tree_factors, s.degree_bound, s.budget);
    out["shortcut"] = report::shortcut(qp, sc);
  } catch (const PreconditionError&) {
    // no polytree structure to exploit
  }
  if (s.oracle) {
    auto r = brute_force_iso(qp.host(), product_kgraph(qp.lambda(), qp.gamma()), s.budget);
    out["oracle"] = Json{{"isomorphic", r.iso.has_value()}, {"nodes", r.nodes}};
  }
  return d.answer == Answer::yes ? kOk : kNegative;
}

int cmd_cstar(const InstanceDocument& doc, const Settings& s, Json& out) {
  if (doc.kgraph) {
    auto rule = build_rule(*doc.kgraph);
    auto v = validate_rule(rule);
    if (!v.valid) throw PreconditionError("rule is not valid; run validate for the witness");
    KGraph kg(rule);
    auto cs = detect_cycle_factor(kg);
    out["cycle_factor"] = cs ? Json{{"n", cs->n}, {"k", cs->k}} : Json(nullptr);
    out["name"] = cstar_name(kg, "C*(Λ)");
    out["presentation"] = report::ck(emit_ck_presentation(kg));
    return kOk;
  }
  auto l = load_instance(doc, s);
  const auto& qp = require_qp(l);
  Json reports = Json::array();
  auto d = decide_product(qp, s.degree_bound);
  if (d.answer == Answer::yes) reports.push_back(report::tensor(qp));
  if (detect_cycle_factor(qp.gamma())) {
    try {
      reports.push_back(report::crossed_product(qp, crossed_product_report(qp, s.degree_bound)));
    } catch (const PreconditionError& e) {
      reports.push_back(Json{{"kind", "crossed-product"}, {"error", e.what()}});
    }
  }
  out["product"] = answer_name(d.answer);
  out["reports"] = reports;
  out["presentation"] = report::ck(emit_ck_presentation(qp.host()));
  return kOk;
}

int cmd_dot(const InstanceDocument& doc, const Settings& s, Json& out) {
  if (s.dot_out.empty()) throw InputError("--dot-out is required");
  fs::create_directories(s.dot_out);
  std::vector<std::pair<std::string, ColoredGraph>> graphs;
  if (doc.kgraph) {
    graphs.push_back({"host", build_skeleton(*doc.kgraph)});
  } else {
    auto b = build_instance(doc);
    graphs.push_back({"host", b.host.graph});
    graphs.push_back({"lambda", b.lambda.graph});
    graphs.push_back({"gamma", b.gamma.graph});
  }
  if (s.skeleton != "all" && s.skeleton != "host" && s.skeleton != "lambda" && s.skeleton != "gamma")
    throw InputError("--skeleton must be host, lambda, gamma or all");
  Json files = Json::array();
  for (const auto& [which, g] : graphs) {
    if (s.skeleton != "all" && s.skeleton != which) continue;
    fs::path p = fs::path(s.dot_out) / (doc.name + "." + which + ".dot");
    write_file(p.string(), to_dot(g, doc.name + "_" + which));
    files.push_back(p.string());
  }
  if (files.empty()) throw InputError("document has no " + s.skeleton + " skeleton");
  out["files"] = files;
  return kOk;
}

// Normal forms against the rewrite closure, and the matched-pair laws.
int cmd_fuzz(Settings& s, Json& out) {
  fuzz::Rng rng(s.seed);
  std::optional<std::pair<ColoredGraph, ColoredGraph>> skeletons;
  if (!s.input.empty() || !s.fixture.empty()) {
    auto doc = load(s);
    if (!doc.is_quasi_product()) throw InputError("fuzz needs a document with lambda and gamma");
    skeletons = {build_skeleton(*doc.lambda), build_skeleton(*doc.gamma)};
  }
  std::size_t rules = 0, paths = 0, closure_violations = 0, law_checks = 0, law_violations = 0;
  Json examples = Json::array();
  for (std::size_t i = 0; i < s.count; ++i) {
    fuzz::BoxCase c;
    if (skeletons) {
      auto made = fuzz::make_case(rng, skeletons->first, skeletons->second);
      if (!made) throw PreconditionError("no valid rule found on the given box skeleton");
      c = std::move(*made);
    } else {
      c = fuzz::random_box_case(rng);
    }
    ++rules;
    KGraph host(c.host);
    Budget budget(s.budget);
    for (const Path& p : enumerate_paths(host.graph(), s.degree_bound)) {
      ++paths;
      auto closure = host.rewrite_closure(p, &budget);
      std::set<std::vector<Color>> orders;
      bool ok = true;
      for (const Path& q : closure) {
        ok = ok && host.normalize(q) == host.normalize(p);
        ok = ok && orders.insert(q.colors(host.graph())).second;
      }
      auto colors = p.colors(host.graph());
      std::sort(colors.begin(), colors.end());
      std::size_t perms = 0;
      do ++perms;
      while (std::next_permutation(colors.begin(), colors.end()));
      ok = ok && perms == closure.size();
      if (!ok) {
        ++closure_violations;
        if (examples.size() < 5) examples.push_back("closure of " + to_string(host.graph(), p));
      }
    }
    auto qp = fuzz::quasi_product(c);
    auto laws = verify_mp_axioms(qp.pair(), s.degree_bound);
    for (const auto& l : laws.laws) {
      law_checks += l.checked;
      law_violations += l.failed;
      for (const auto& e : l.examples)
        if (examples.size() < 5) examples.push_back(l.law + ": " + e);
    }
  }
  out["seed"] = s.seed;
  out["rules"] = rules;
  out["paths_checked"] = paths;
  out["closure_violations"] = closure_violations;
  out["law_checks"] = law_checks;
  out["law_violations"] = law_violations;
  if (!examples.empty()) out["examples"] = examples;
  return closure_violations + law_violations == 0 ? kOk : kNegative;
}

int cmd_corpus(const Settings& s, Json& out) {
  fs::create_directories(s.out_dir);
  Json files = Json::array();
  for (const auto& d : corpus::all()) {
    fs::path p = fs::path(s.out_dir) / (d.name + ".json");
    write_file(p.string(), serialize_document(d));
    files.push_back(p.string());
  }
  out["files"] = files;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, validate and analyze finite k-graphs and quasi-products"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* c, bool needs_input) {
    if (needs_input) {
      c->add_option("--input", s.input, "Instance document");
      c->add_option("--fixture", s.fixture, "Bundled fixture name instead of --input");
    }
    c->add_option("--degree-bound", s.degree_bound, "Total degree bound for bounded checks")
        ->check(CLI::Range(1, 16))
        ->each([&](const std::string&) { s.degree_set = true; });
    c->add_option("--budget", s.budget, "Backtracking node budget")->each([&](const std::string&) {
      s.budget_set = true;
    });
    c->add_option("--seed", s.seed, "Random seed");
    c->add_option("--out", s.out, "Write the report here instead of stdout");
    c->add_option("--format", s.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    c->add_flag("--timing", s.timing, "Include wall-clock time in the report");
  };

  auto* validate = app.add_subcommand("validate", "Check the rules and the quasi-product conditions");
  auto* analyze = app.add_subcommand("analyze", "Quasi-product, stability and matched-pair analysis");
  auto* stab = app.add_subcommand("stabilize", "Build the stabilized host and the isomorphism theta");
  auto* decide = app.add_subcommand("decide-product", "Decide whether the host is the product of its factors");
  auto* cstar = app.add_subcommand("report-cstar", "Symbolic C*-algebra structure report");
  auto* dot = app.add_subcommand("export-dot", "Write skeletons as DOT files");
  auto* fz = app.add_subcommand("fuzz", "Random valid rules checked against the invariant suite");
  auto* corp = app.add_subcommand("corpus", "Write the bundled fixtures as documents");
  for (auto* c : {validate, analyze, stab, decide, cstar, dot, fz}) common(c, true);
  common(corp, false);
  stab->add_option("--side", s.side, "Side to stabilize")->check(CLI::IsMember({"gamma", "lambda"}));
  decide->add_flag("--oracle", s.oracle, "Also run the brute-force isomorphism search");
  dot->add_option("--dot-out", s.dot_out, "Output directory")->required();
  dot->add_option("--skeleton", s.skeleton, "host, lambda, gamma or all");
  fz->add_option("--count", s.count, "Number of rules");
  corp->add_option("--out-dir", s.out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  auto* cmd = app.get_subcommands().front();
  Json out;
  out["command"] = cmd->get_name();
  int code = kOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (cmd == fz) {
      code = cmd_fuzz(s, out);
    } else if (cmd == corp) {
      code = cmd_corpus(s, out);
    } else {
      auto doc = load(s);
      out["name"] = doc.name;
      if (cmd == validate) code = cmd_validate(doc, s, out);
      else if (cmd == analyze) code = cmd_analyze(doc, s, out);
      else if (cmd == stab) code = cmd_stabilize(doc, s, out);
      else if (cmd == decide) code = cmd_decide(doc, s, out);
      else if (cmd == cstar) code = cmd_cstar(doc, s, out);
      else if (cmd == dot) code = cmd_dot(doc, s, out);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "kgraph: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "kgraph: " << e.what() << "\n";
    return kInput;
  }
  if (s.timing)
    out["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out["exit_code"] = code;

  const std::string text = s.format == "text" ? report::to_text(out) : pretty_json(out);
  if (s.out.empty()) {
    std::cout << text;
  } else {
    write_file(s.out, text);
  }
  return code;
}
