// rauzy: command-line driver over the library.
//
// Exit codes: 0 ok, 1 usage or I/O, 2 no valid Rauzy order, 3 degenerate
// evolution, 4 primitivization failure, 5 other library failure (budgets).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rauzy/primitivize.hpp"
#include "rauzy/protocol.hpp"
#include "rauzy/rauzy_graph.hpp"
#include "rauzy/spec_io.hpp"

namespace {

using namespace rauzy;

enum Exit : int { kOk = 0, kUsage = 1, kNoValidOrder = 2, kDegenerate = 3, kPrimitivize = 4, kLibrary = 5 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::InvalidSpec:
    case ErrorKind::UnknownLetter:
    case ErrorKind::NotEndomorphism:
      return kUsage;
    case ErrorKind::NoValidOrder:
      return kNoValidOrder;
    case ErrorKind::DegenerateResult:
      return kDegenerate;
    case ErrorKind::SeedErasable:
    case ErrorKind::NoPrimitiveComponent:
    case ErrorKind::UnboundedInterior:
      return kPrimitivize;
    default:
      return kLibrary;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

struct Common {
  std::string spec_path;
  std::size_t budget = 0;

  MorphicWordSpec load() const {
    auto spec = load_spec(spec_path);
    if (budget != 0) spec.prefix_budget = budget;
    return spec;
  }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--spec", common.spec_path, "morphism spec (JSON)")->required();
  cmd->add_option("--budget", common.budget, "override prefix_budget");
}

struct WordArgs {
  Common common;
  std::optional<std::size_t> complexity;
  std::optional<std::size_t> factors;
  bool check_periodic = false;
};

int cmd_word(const WordArgs& args) {
  FactorOracle oracle(args.common.load());
  const Alphabet& alphabet = oracle.alphabet();
  if (args.complexity) {
    std::size_t max_diff = 0;
    std::cout << "n p(n) p(n+1)-p(n)\n";
    for (std::size_t n = 1; n <= *args.complexity; ++n) {
      const std::size_t diff = oracle.first_difference(n);
      max_diff = std::max(max_diff, diff);
      std::cout << n << ' ' << oracle.complexity(n) << ' ' << diff << '\n';
    }
    std::cout << "# max_difference: " << max_diff << '\n';
  }
  if (args.factors) {
    const auto& all = oracle.factors(*args.factors);
    for (const auto& f : all) std::cout << alphabet.encode(f) << '\n';
    std::cout << "# factors: " << all.size() << '\n';
  }
  if (args.check_periodic) {
    const auto verdict = detect_word_periodicity(oracle);
    if (const auto* p = std::get_if<EventuallyPeriodic>(&verdict)) {
      std::cout << "# periodicity: EventuallyPeriodic(" << p->period << ")\n";
    } else if (const auto* w = std::get_if<NonPeriodicWitness>(&verdict)) {
      std::cout << "# periodicity: NonPeriodic\n# probed_up_to: " << w->probed_up_to << '\n';
    } else {
      std::cout << "# periodicity: Unknown\n# reason: " << std::get<PeriodicityUnknown>(verdict).reason << '\n';
    }
  }
  return kOk;
}

struct RauzyArgs {
  Common common;
  std::optional<std::size_t> k;
  std::string dot;
};

int cmd_rauzy(const RauzyArgs& args) {
  FactorOracle oracle(args.common.load());
  const std::size_t k = args.k ? *args.k : choose_initial_k(oracle);
  const auto graph = build_rauzy_graph(oracle, k);
  const auto shape = graph_shape(graph);
  if (!args.dot.empty()) write_file(args.dot, to_dot(graph, oracle.alphabet()));
  std::cout << shape.distributing.size() << " distributing, " << shape.collecting.size() << " collecting, "
            << shape.bidirectional.size() << " bispecial\n";
  for (auto v : shape.bidirectional) std::cout << "bispecial: " << oracle.alphabet().encode(graph.vertices()[v]) << '\n';
  std::cout << "# k: " << k << '\n'
            << "# vertices: " << graph.vertices().size() << '\n'
            << "# edges: " << graph.edges().size() << '\n'
            << "# distributing: " << shape.distributing.size() << '\n'
            << "# collecting: " << shape.collecting.size() << '\n'
            << "# bispecial: " << shape.bidirectional.size() << '\n'
            << "# strongly_connected: " << (shape.strongly_connected ? "true" : "false") << '\n';
  return kOk;
}

struct EvolveArgs {
  Common common;
  std::size_t steps = 20;
  std::optional<std::size_t> k;
  std::string protocol_path;
  bool detect = false;
  bool extract = false;
  std::string extract_path;
  std::optional<std::size_t> verify;
  bool check = false;
  std::size_t path_budget = 12;
};

int cmd_evolve(const EvolveArgs& args) {
  FactorOracle oracle(args.common.load());
  const std::size_t k = args.k ? *args.k : choose_initial_k(oracle);
  const Scheme s0 = scheme_from_rauzy_graph(build_rauzy_graph(oracle, k), oracle);

  ProtocolOptions options;
  options.max_steps = args.steps;
  options.check_properties = args.check;
  options.check.path_budget = args.path_budget;
  const Protocol protocol = run(oracle, s0, options);
  if (!args.protocol_path.empty()) write_file(args.protocol_path, protocol.to_jsonl());

  std::cout << "# k: " << k << '\n' << "# steps: " << protocol.entries.size() << '\n';
  if (!protocol.entries.empty()) std::cout << "# final_scale: " << protocol.entries.back().scale << '\n';
  if (protocol.failure) {
    const auto& f = *protocol.failure;
    std::cerr << "evolution stopped at step " << f.step << ": " << f.message << '\n';
    std::cout << "# failed_step: " << f.step << '\n' << "# failure: " << to_string(f.kind) << '\n';
    return f.kind == ErrorKind::DegenerateResult ? kDegenerate : exit_code(f.kind);
  }

  if (!args.detect && !args.extract && !args.verify) return kOk;
  const Period period = detect_period(protocol);
  std::cout << "# periodic: p=" << period.preperiod << ", k=" << period.period << '\n'
            << "# preperiod: " << period.preperiod << '\n'
            << "# period: " << period.period << '\n';
  if (!args.extract && !args.verify) return kOk;

  const auto system = extract_substitution(protocol, period.preperiod, period.period, oracle.alphabet());
  const std::string json = dump_spec(system.spec(oracle.spec().prefix_budget));
  if (!args.extract_path.empty()) {
    write_file(args.extract_path, json + "\n");
  } else if (args.extract) {
    std::cout << json << '\n';
  }
  std::cout << "# extracted_letters: " << system.phi.source().size() << '\n'
            << "# growth_rate: " << growth_rate(system.phi) << '\n';
  if (args.verify) {
    const auto cmp = verify_language_equality(oracle, system, *args.verify);
    std::cout << "# language_equal: " << (cmp.equal ? "true" : "false") << '\n'
              << "# verified_length: " << *args.verify << '\n'
              << "# closure_mode: " << (cmp.closure_mode ? "true" : "false") << '\n';
    if (cmp.first_difference) std::cout << "# first_difference: " << *cmp.first_difference << '\n';
  }
  return kOk;
}

struct PrimitivizeArgs {
  Common common;
  std::string out;
  std::size_t run_budget = 32;
};

int cmd_primitivize(const PrimitivizeArgs& args) {
  const auto spec = args.common.load();
  PrimitivizeOptions options;
  options.run_budget = args.run_budget;
  const auto result = primitivize(spec, options);
  std::cout << result.report(spec);
  const std::string json = dump_spec(result.system.spec(spec.prefix_budget));
  if (args.out.empty()) {
    std::cout << json << '\n';
  } else {
    write_file(args.out, json + "\n");
  }
  return kOk;
}

int cmd_check_ur(const Common& common) {
  const auto verdict = check_uniform_recurrence(common.load());
  if (const auto* e = std::get_if<UrEvidence>(&verdict)) {
    std::cout << "# verdict: UR_Evidence\n# max_recurrence_ratio: " << e->max_ratio << '\n';
  } else if (const auto* n = std::get_if<NotUr>(&verdict)) {
    std::cout << "# verdict: NotUR\n# reason: " << n->reason << '\n';
  } else {
    std::cout << "# verdict: Unknown\n# reason: " << std::get<UrUnknown>(verdict).reason << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rauzy graphs and schemes for morphic words"};
  app.require_subcommand(1);

  WordArgs word;
  auto* word_cmd = app.add_subcommand("word", "factor statistics of the word");
  add_common(word_cmd, word.common);
  word_cmd->add_option("--complexity", word.complexity, "print p(n) for n = 1..N");
  word_cmd->add_option("--factors", word.factors, "list the factors of length N");
  word_cmd->add_flag("--check-periodic", word.check_periodic, "decide eventual periodicity");

  RauzyArgs rauzy;
  auto* rauzy_cmd = app.add_subcommand("rauzy", "Rauzy graph of order k");
  add_common(rauzy_cmd, rauzy.common);
  rauzy_cmd->add_option("--k", rauzy.k, "order (default: least valid order)");
  rauzy_cmd->add_option("--dot", rauzy.dot, "write the graph in DOT format");

  EvolveArgs evolve;
  auto* evolve_cmd = app.add_subcommand("evolve", "deterministic scheme evolution");
  add_common(evolve_cmd, evolve.common);
  evolve_cmd->add_option("--steps", evolve.steps, "number of evolution steps")->capture_default_str();
  evolve_cmd->add_option("--k", evolve.k, "order of the initial Rauzy graph");
  evolve_cmd->add_option("--protocol", evolve.protocol_path, "write the protocol as JSON lines");
  evolve_cmd->add_flag("--detect-period", evolve.detect, "report (preperiod, period)");
  evolve_cmd->add_option("--extract", evolve.extract_path, "extract the substitution system (to a file if given)")
      ->expected(0, 1);
  evolve_cmd->add_option("--verify", evolve.verify, "compare factor sets up to length L");
  evolve_cmd->add_flag("--check", evolve.check, "check scheme properties at every step");
  evolve_cmd->add_option("--path-budget", evolve.path_budget, "edge budget for sampled property checks")
      ->capture_default_str();

  PrimitivizeArgs prim;
  auto* prim_cmd = app.add_subcommand("primitivize", "reduce to a primitive morphism");
  add_common(prim_cmd, prim.common);
  prim_cmd->add_option("--out", prim.out, "write the reduced spec");
  prim_cmd->add_option("--run-budget", prim.run_budget, "longest bounded run")->capture_default_str();

  Common ur;
  auto* ur_cmd = app.add_subcommand("check-ur", "semi-decide uniform recurrence");
  add_common(ur_cmd, ur);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }
  // --extract given without a value still counts.
  if (evolve_cmd->count("--extract") > 0) evolve.extract = true;

  try {
    if (*word_cmd) return cmd_word(word);
    if (*rauzy_cmd) return cmd_rauzy(rauzy);
    if (*evolve_cmd) return cmd_evolve(evolve);
    if (*prim_cmd) return cmd_primitivize(prim);
    if (*ur_cmd) return cmd_check_ur(ur);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return kUsage;
}
