// Copyright 2026 The ptree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PTREE_CLI_HPP_
#define PTREE_CLI_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "ptree/counting.hpp"
#include "ptree/errors.hpp"
#include "ptree/factor.hpp"
#include "ptree/families.hpp"
#include "ptree/io.hpp"
#include "ptree/periodic.hpp"
#include "ptree/random.hpp"

namespace ptree::cli {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

// Diagnostics on stderr, filtered by PTREE_LOG (error, info or debug).
class Logger {
 public:
  Logger(LogLevel level, std::ostream& sink) : level_(level), sink_(&sink) {}

  static LogLevel level_from_env() {
    const char* value = std::getenv("PTREE_LOG");
    if (value == nullptr) return LogLevel::kError;
    const std::string v(value);
    if (v == "debug") return LogLevel::kDebug;
    if (v == "info") return LogLevel::kInfo;
    return LogLevel::kError;
  }

  void error(const std::string& msg) const { *sink_ << "ptree: error: " << msg << '\n'; }
  void info(const std::string& msg) const {
    if (level_ >= LogLevel::kInfo) *sink_ << "ptree: " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level_ >= LogLevel::kDebug) *sink_ << "ptree: debug: " << msg << '\n';
  }

 private:
  LogLevel level_;
  std::ostream* sink_;
};

struct RunConfig {
  std::string method = "factor";
  EvalOptions eval;
  std::string output = "json";
  std::vector<std::size_t> schur_set;  // empty: V(S) for presentations with k >= 1, else {1}
};

inline std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void require_valid_presentation(const PeriodicPresentation& p) {
  const auto diags = validate(p);
  if (!diags.empty()) throw InvalidInput("invalid presentation: " + diags.front().message);
}

// ---------------------------------------------------------------------------
// Single-method evaluation.

inline CountResult oracle_result(const WeightedGraph& g) {
  return timed([&] { return CountResult::from_exact(Method::kOracle, tau_oracle(g), g.has_integer_weights()); });
}

inline CountResult eigen_result(const WeightedGraph& g, const EvalOptions& opts) {
  return timed([&] {
    CountResult r;
    r.method = Method::kEigen;
    const long double value = tau_eigen(g);
    detail::finish_float_result(r, static_cast<double>(value), g.has_integer_weights(), opts);
    r.approx = value;
    return r;
  });
}

inline CountResult schur_result(const WeightedGraph& g, const std::vector<std::size_t>& v1) {
  return timed([&] { return tau_schur(g, v1); });
}

inline std::vector<std::size_t> default_schur_set(const CountInput& in) {
  if (const auto* p = std::get_if<PeriodicPresentation>(&in); p != nullptr && p->fixed_size > 0) {
    std::vector<std::size_t> v;
    for (std::size_t z = 1; z <= p->fixed_size; ++z) v.push_back(p->fixed_vertex(z));
    return v;
  }
  return {1};
}

// Expanded graph of the input, computed once.
class CountJob {
 public:
  CountJob(CountInput input, RunConfig cfg) : input_(std::move(input)), cfg_(std::move(cfg)) {
    if (const auto* p = presentation()) require_valid_presentation(*p);
  }

  const PeriodicPresentation* presentation() const { return std::get_if<PeriodicPresentation>(&input_); }

  const WeightedGraph& graph() {
    if (!graph_) {
      if (const auto* g = std::get_if<WeightedGraph>(&input_)) {
        graph_ = *g;
      } else {
        graph_ = expand(*presentation());
      }
    }
    return *graph_;
  }

  CountResult run(const std::string& method) {
    if (method == "factor") {
      const PeriodicPresentation* p = presentation();
      if (p == nullptr) throw InvalidInput("method factor requires a presentation, not a raw graph");
      return count_factorized(*p, cfg_.eval);
    }
    if (method == "oracle") return oracle_result(graph());
    if (method == "eigen") return eigen_result(graph(), cfg_.eval);
    if (method == "schur") {
      return schur_result(graph(), cfg_.schur_set.empty() ? default_schur_set(input_) : cfg_.schur_set);
    }
    if (method == "closed") throw InvalidInput("method closed is only available through `ptree family`");
    throw InvalidInput("unknown method '" + method + "'");
  }

  std::vector<std::string> all_methods() const {
    std::vector<std::string> m;
    if (presentation() != nullptr) m.push_back("factor");
    m.insert(m.end(), {"oracle", "eigen", "schur"});
    return m;
  }

 private:
  CountInput input_;
  RunConfig cfg_;
  std::optional<WeightedGraph> graph_;
};

// Exact methods and exactly rounded floating methods must give the same
// integer. The eigenvalue product is approximate by construction and, like
// any unresolved rounding (residual 1/2 or more), is held to 1e-8 relative.
inline bool results_agree(const std::vector<CountResult>& results) {
  auto resolved = [](const CountResult& r) {
    return r.rounded && r.method != Method::kEigen && r.round_residual < 0.5;
  };
  for (std::size_t a = 0; a < results.size(); ++a)
    for (std::size_t b = a + 1; b < results.size(); ++b) {
      const CountResult& x = results[a];
      const CountResult& y = results[b];
      if (resolved(x) && resolved(y)) {
        if (*x.rounded != *y.rounded) return false;
        continue;
      }
      const long double scale = std::max({std::fabs(x.approx), std::fabs(y.approx), 1.0L});
      if (!(std::fabs(x.approx - y.approx) <= 1e-8L * scale)) return false;
    }
  return true;
}

inline void emit_results(const std::vector<CountResult>& results, bool multi, const RunConfig& cfg, std::ostream& out) {
  const bool agree = results_agree(results);
  if (cfg.output == "plain") {
    for (const CountResult& r : results) out << count_result_to_plain(r) << '\n';
    if (multi) out << "agree=" << (agree ? "true" : "false") << '\n';
    return;
  }
  if (!multi) {
    out << count_result_to_json(results.front()) << '\n';
    return;
  }
  out << "{\"results\": [";
  for (std::size_t i = 0; i < results.size(); ++i) out << (i ? ", " : "") << count_result_to_json(results[i]);
  out << "], \"agree\": " << (agree ? "true" : "false") << "}\n";
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns the process exit code.

inline int cmd_count(const std::string& path, const RunConfig& cfg, std::ostream& out, const Logger& log) {
  CountJob job(input_from_json(parse_json_text(read_input(path))), cfg);
  const bool multi = cfg.method == "all";
  const std::vector<std::string> methods = multi ? job.all_methods() : std::vector<std::string>{cfg.method};
  std::vector<CountResult> results;
  for (const std::string& m : methods) {
    log.info("count: running " + m);
    results.push_back(job.run(m));
    log.debug(m + " finished in " + detail::format_float(results.back().millis) + " ms");
  }
  emit_results(results, multi, cfg, out);
  return 0;
}

inline int cmd_expand(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const PeriodicPresentation p = presentation_from_json(parse_json_text(read_input(path)));
  require_valid_presentation(p);
  const WeightedGraph g = expand(p);
  if (cfg.output == "plain") {
    out << g.vertex_count() << ' ' << g.edges().size() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << to_string(e.w) << '\n';
  } else {
    out << graph_to_json(g).dump() << '\n';
  }
  return 0;
}

inline int cmd_validate(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const PeriodicPresentation p = presentation_from_json(parse_json_text(read_input(path)));
  const std::vector<Diagnostic> diags = validate(p);
  if (cfg.output == "plain") {
    if (diags.empty()) out << "ok\n";
    for (const Diagnostic& d : diags) out << d.code << ": " << d.message << '\n';
  } else {
    out << Json{{"valid", diags.empty()}, {"diagnostics", diagnostics_to_json(diags)}}.dump() << '\n';
  }
  return diags.empty() ? 0 : 2;
}

struct FamilyParams {
  std::string kind;
  long spokes = 3;
  long rings = 1;
  std::string x = "1";
  std::string y = "1";
  long n = 0;
  std::vector<long> steps;
  bool emit_presentation = false;
};

struct FamilyInstance {
  PeriodicPresentation presentation;
  std::function<CountResult(const EvalOptions&)> closed;
};

inline FamilyInstance make_family(const FamilyParams& f) {
  if (f.kind == "cobweb") {
    CobwebSpec s{f.spokes, f.rings, parse_rational(f.x), parse_rational(f.y)};
    s.check();
    return {cobweb_presentation(s), [s](const EvalOptions& o) { return cobweb_gf_closed(s, o); }};
  }
  if (f.kind == "circulant" || f.kind == "join-k2-circulant") {
    if (f.n == 0) throw InvalidInput(f.kind + ": --n is required");
    if (f.steps.empty()) throw InvalidInput(f.kind + ": --steps is required");
    CirculantSpec s{f.n, f.steps, f.kind != "circulant"};
    s.check();
    if (s.join_k2) {
      return {circulant_presentation(s), [s](const EvalOptions& o) { return join_k2_circulant_tau(s, o); }};
    }
    return {circulant_presentation(s), [s](const EvalOptions& o) { return circulant_tau(s, o); }};
  }
  throw InvalidInput("unknown family '" + f.kind + "'");
}

inline int cmd_family(const FamilyParams& f, const RunConfig& cfg, std::ostream& out, const Logger& log) {
  FamilyInstance inst = make_family(f);
  if (f.emit_presentation) {
    out << presentation_to_json(inst.presentation).dump() << '\n';
    return 0;
  }
  const bool multi = cfg.method == "all";
  std::vector<CountResult> results;
  if (cfg.method == "closed" || multi) results.push_back(inst.closed(cfg.eval));
  if (multi || cfg.method != "closed") {
    CountJob job(inst.presentation, cfg);
    const std::vector<std::string> methods = multi ? std::vector<std::string>{"factor", "oracle"}
                                                   : std::vector<std::string>{cfg.method};
    for (const std::string& m : methods) {
      log.info("family " + f.kind + ": running " + m);
      results.push_back(job.run(m));
    }
  }
  emit_results(results, multi, cfg, out);
  return 0;
}

struct BenchParams {
  std::string suite;
  std::vector<long> sizes;
  long rings = 3;
  long count = 20;
  std::uint64_t seed = 1;
};

inline std::string bench_value(const CountResult& r) {
  if (r.rounded) return to_string(*r.rounded);
  if (r.exact) return to_string(*r.exact);
  return detail::format_float(r.approx);
}

// CSV columns: instance,n_total,method,millis,value,agree. `agree` reports
// whether every method on the instance produced the same count.
inline int cmd_bench(const BenchParams& b, const RunConfig& cfg, std::ostream& out, const Logger& log) {
  struct Instance {
    std::string name;
    PeriodicPresentation presentation;
    std::function<CountResult(const EvalOptions&)> closed;
  };
  std::vector<Instance> instances;
  if (b.suite == "cobweb-scaling") {
    const std::vector<long> sizes = b.sizes.empty() ? std::vector<long>{50, 100, 200} : b.sizes;
    for (long n : sizes) {
      CobwebSpec s{n, b.rings, 1, 1};
      instances.push_back({"cobweb-N" + std::to_string(n) + "-M" + std::to_string(b.rings), cobweb_presentation(s),
                           [s](const EvalOptions& o) { return cobweb_gf_closed(s, o); }});
    }
  } else if (b.suite == "circulant-scaling") {
    const std::vector<long> sizes = b.sizes.empty() ? std::vector<long>{50, 100, 200} : b.sizes;
    for (long n : sizes) {
      CirculantSpec s{n, {1, 2}, false};
      instances.push_back({"circulant-n" + std::to_string(n), circulant_presentation(s),
                           [s](const EvalOptions& o) { return circulant_tau(s, o); }});
    }
  } else if (b.suite == "random") {
    std::mt19937_64 rng(b.seed);
    for (long i = 0; i < b.count; ++i) {
      instances.push_back({"random-" + std::to_string(i), random_presentation(rng), nullptr});
    }
  } else {
    throw InvalidInput("unknown bench suite '" + b.suite + "'");
  }

  out << "instance,n_total,method,millis,value,agree\n";
  for (Instance& inst : instances) {
    log.info("bench: " + inst.name);
    CountJob job(inst.presentation, cfg);
    std::vector<CountResult> results;
    if (inst.closed) results.push_back(inst.closed(cfg.eval));
    const std::vector<std::string> methods = inst.closed ? std::vector<std::string>{"factor", "oracle"}
                                                         : std::vector<std::string>{"factor", "oracle", "schur", "eigen"};
    for (const std::string& m : methods) results.push_back(job.run(m));
    const bool agree = results_agree(results);
    for (const CountResult& r : results) {
      out << inst.name << ',' << inst.presentation.total_vertices() << ',' << method_name(r.method) << ','
          << detail::format_float(r.millis) << ',' << bench_value(r) << ',' << (agree ? "true" : "false") << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

inline void add_run_flags(CLI::App* sub, RunConfig& cfg, const std::vector<std::string>& methods) {
  sub->add_option("--method", cfg.method, "Counting method")->check(CLI::IsMember(methods));
  sub->add_option("--imag-tol", cfg.eval.imag_tol, "Tolerance on imaginary residuals")->check(CLI::PositiveNumber);
  sub->add_option("--round-tol", cfg.eval.round_tol, "Relative tolerance on the rounding residual")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--parallel", cfg.eval.parallel, "Evaluate quotient blocks on a worker pool");
  sub->add_option("--precision-bits", cfg.eval.precision_bits, "Working precision in bits (0: automatic)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("-o,--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "plain"}));
  sub->add_option("--schur-set", cfg.schur_set, "Comma-separated 1-based vertices eliminated by the Schur path")
      ->delimiter(',');
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const Logger log(Logger::level_from_env(), err);
  CLI::App app{"Spanning-tree counts of rotationally symmetric graphs", "ptree"};
  app.require_subcommand(1);

  RunConfig count_cfg;
  std::string count_input;
  CLI::App* count = app.add_subcommand("count", "Count spanning trees of a presentation or graph");
  count->add_option("-i,--input", count_input, "Presentation or graph JSON ('-' for stdin)")->required();
  add_run_flags(count, count_cfg, {"factor", "oracle", "eigen", "schur", "closed", "all"});

  RunConfig expand_cfg;
  std::string expand_input;
  CLI::App* expand_cmd = app.add_subcommand("expand", "Write the full graph of a presentation");
  expand_cmd->add_option("-i,--input", expand_input, "Presentation JSON")->required();
  expand_cmd->add_option("-o,--output", expand_cfg.output, "Output format")->check(CLI::IsMember({"json", "plain"}));

  RunConfig validate_cfg;
  std::string validate_input;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a presentation");
  validate_cmd->add_option("-i,--input", validate_input, "Presentation JSON")->required();
  validate_cmd->add_option("-o,--output", validate_cfg.output, "Output format")
      ->check(CLI::IsMember({"json", "plain"}));

  RunConfig family_cfg;
  family_cfg.method = "closed";
  FamilyParams fam;
  CLI::App* family = app.add_subcommand("family", "Closed forms for cobweb, circulant and join families");
  family->add_option("kind", fam.kind, "Family")
      ->required()
      ->check(CLI::IsMember({"cobweb", "circulant", "join-k2-circulant"}));
  family->add_option("--spokes", fam.spokes, "Cobweb spokes");
  family->add_option("--rings", fam.rings, "Cobweb rings");
  family->add_option("--x", fam.x, "Spoke weight");
  family->add_option("--y", fam.y, "Ring weight");
  family->add_option("--n", fam.n, "Circulant order");
  family->add_option("--steps", fam.steps, "Comma-separated circulant steps")->delimiter(',');
  family->add_flag("--presentation", fam.emit_presentation, "Print the presentation JSON instead of counting");
  add_run_flags(family, family_cfg, {"closed", "factor", "oracle", "eigen", "schur", "all"});

  RunConfig bench_cfg;
  BenchParams bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time factorized against direct counting (CSV)");
  bench_cmd->add_option("--suite", bench.suite, "Benchmark suite")
      ->required()
      ->check(CLI::IsMember({"cobweb-scaling", "circulant-scaling", "random"}));
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated orders N")->delimiter(',');
  bench_cmd->add_option("--rings", bench.rings, "Cobweb rings")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--count", bench.count, "Random instances")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Random seed");
  bench_cmd->add_flag("--parallel", bench_cfg.eval.parallel, "Evaluate quotient blocks on a worker pool");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (count->parsed()) return cmd_count(count_input, count_cfg, out, log);
    if (expand_cmd->parsed()) return cmd_expand(expand_input, expand_cfg, out);
    if (validate_cmd->parsed()) return cmd_validate(validate_input, validate_cfg, out);
    if (family->parsed()) return cmd_family(fam, family_cfg, out, log);
    if (bench_cmd->parsed()) return cmd_bench(bench, bench_cfg, out, log);
  } catch (const ParseError& e) {
    log.error(e.what());
    return 1;
  } catch (const ResidualExceeded& e) {
    log.error(e.what());
    return 3;
  } catch (const NumericError& e) {
    log.error(e.what());
    return 3;
  } catch (const Error& e) {
    log.error(e.what());
    return 2;
  }
  return 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ptree"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ptree::cli

#endif  // PTREE_CLI_HPP_
