// pground: parallel instantiator for disjunctive logic programs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pground/bench.hpp"
#include "pground/depgraph.hpp"
#include "pground/error.hpp"
#include "pground/generators.hpp"
#include "pground/grounder.hpp"
#include "pground/oracle.hpp"
#include "pground/parser.hpp"
#include "pground/stats_json.hpp"

namespace {

using namespace pground;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw InvalidParams("not a number: '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

struct SchedulerFlags {
  std::size_t threads = 1;
  std::string levels = "c,r,s";
  Count w_seq = SchedulerConfig{}.w_seq;
  Count w_hard = SchedulerConfig{}.w_hard;
  std::size_t split_factor = SchedulerConfig{}.split_factor;
  std::size_t max_ground = SchedulerConfig{}.max_ground;

  void attach(CLI::App& app) {
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--levels", levels, "active parallelism levels, subset of c,r,s (or none)");
    app.add_option("--w-seq", w_seq, "rule weight below which a rule is not split");
    app.add_option("--w-hard", w_hard, "rule weight above which tail splits are unary");
    app.add_option("--split-factor", split_factor, "splits per worker for heavy rules");
    app.add_option("--max-ground", max_ground, "maximum number of ground rules");
  }

  SchedulerConfig config() const {
    SchedulerConfig c;
    c.workers = threads;
    c.levels = Levels::parse(levels);
    c.w_seq = w_seq;
    c.w_hard = w_hard;
    c.split_factor = split_factor;
    c.max_ground = max_ground;
    c.validate();
    return c;
  }
};

std::string located(const std::string& file, SourceSpan span, const std::string& message) {
  return file + ":" + std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pground: parallel grounder for disjunctive logic programs"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string stats_path;
  bool dump_deps = false;
  bool with_facts = false;
  SchedulerFlags ground_flags;
  auto* ground = app.add_subcommand("ground", "instantiate a program");
  ground->add_option("file", input, "input program")->required();
  ground->add_option("-o,--output", output, "output file (default stdout)");
  ground->add_option("--stats", stats_path, "write grounding statistics as JSON");
  ground->add_flag("--dump-deps", dump_deps, "print the component graph as DOT instead of grounding");
  ground->add_flag("--with-facts", with_facts, "include EDB facts in the output");
  ground_flags.attach(*ground);

  std::string problem;
  InstanceParams params;
  auto* gen = app.add_subcommand("gen", "print a benchmark instance");
  gen->add_option("problem", problem, "threecol, nqueens, reach or hampath")->required();
  gen->add_option("--n", params.n, "grid size, board size or node count");
  gen->add_option("--tree-levels", params.tree_levels, "reach: tree levels");
  gen->add_option("--siblings", params.siblings, "reach: children per node");
  gen->add_option("--seed", params.seed, "hampath: random seed");

  std::string bench_problem;
  InstanceParams bench_params;
  std::string threads_list = "1";
  std::string sizes_list;
  std::size_t runs = 5;
  bool bench_json = false;
  SchedulerFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "time grounding across configurations");
  bench->add_option("problem", bench_problem, "threecol, nqueens, reach or hampath")->required();
  bench->add_option("--n", bench_params.n, "grid size, board size or node count");
  bench->add_option("--tree-levels", bench_params.tree_levels, "reach: tree levels");
  bench->add_option("--siblings", bench_params.siblings, "reach: children per node");
  bench->add_option("--seed", bench_params.seed, "hampath: random seed");
  bench->add_option("--threads-list", threads_list, "comma-separated worker counts");
  bench->add_option("--levels-list", sizes_list, "comma-separated instance sizes (tree levels for reach, n otherwise)");
  bench->add_option("--runs", runs, "timed runs per configuration")->check(CLI::PositiveNumber);
  bench->add_flag("--json", bench_json, "print the report as JSON");
  bench_flags.attach(*bench);

  std::string oracle_mode;
  std::string oracle_input;
  std::size_t cap = 20;
  auto* oracle = app.add_subcommand("oracle", "brute-force reference semantics");
  oracle->add_option("mode", oracle_mode, "answersets")->required()->check(CLI::IsMember({"answersets"}));
  oracle->add_option("file", oracle_input, "input program")->required();
  oracle->add_option("--cap", cap, "maximum number of enumerated atoms");

  CLI11_PARSE(app, argc, argv);

  const std::string& file = ground->parsed() ? input : oracle_input;
  try {
    if (ground->parsed()) {
      const auto config = ground_flags.config();
      const Program program = parse_program(read_file(input));
      if (dump_deps) {
        auto components = compute_components(build_dependency_graph(program), program);
        write_output(output, components_to_dot(components, program.vocabulary));
        return 0;
      }
      auto result = ground_program(program, config);
      write_output(output, render_ground_program(result.program, program.vocabulary,
                                                 with_facts ? std::span<const GroundAtom>(program.edb)
                                                            : std::span<const GroundAtom>()));
      if (!stats_path.empty()) write_output(stats_path, stats_to_json(result.stats, program).dump(2) + "\n");
    } else if (gen->parsed()) {
      std::cout << generate_instance(problem, params);
    } else if (bench->parsed()) {
      BenchConfig config;
      config.problem = bench_problem;
      config.params = bench_params;
      config.sizes = parse_list(sizes_list);
      config.threads = parse_list(threads_list);
      config.runs = runs;
      config.scheduler = bench_flags.config();
      auto report = run_bench(config);
      std::cout << (bench_json ? bench_to_json(report).dump(2) + "\n" : render_bench_table(report));
    } else if (oracle->parsed()) {
      Program program = parse_program(read_file(oracle_input));
      for (const auto& set : answer_sets(program, cap)) {
        std::string line = "{";
        std::vector<std::string> atoms;
        for (const auto& atom : set) atoms.push_back(render_atom(atom, program.vocabulary));
        std::sort(atoms.begin(), atoms.end());
        for (std::size_t i = 0; i < atoms.size(); ++i) line += (i ? ", " : "") + atoms[i];
        std::cout << line << "}\n";
      }
    }
  } catch (const SyntaxError& e) {
    std::cerr << located(file, e.span(), e.what()) << "\n";
    return 1;
  } catch (const SafetyError& e) {
    std::cerr << located(file, e.span(), e.what()) << "\n";
    return 1;
  } catch (const ResourceExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
