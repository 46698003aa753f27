// Copyright 2026 The cayley-perc Authors.
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

// cayley-perc: percolation experiments on Cayley graphs of S_n generated by
// transposition trees.
//
//   cayley-perc simulate --n 9 --tree star --eps-min 0.05 --eps-max 1 --eps-steps 20 --out fig1.csv --plot fig1.svg
//   cayley-perc survival --lambda-list 1.5,2
//   cayley-perc diameter --n 6 --tree prufer:1,2,3,4
//   cayley-perc verify --suite all
//   cayley-perc plot --in fig1.csv --plot fig1.svg
//
// Exit codes: 0 success, 1 usage error, 2 capability/cap error,
// 3 verification-suite failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif
#include "cayley_perc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCapability = 2;
constexpr int kExitVerification = 3;

struct GridFlags {
  double eps_min = 0.05;
  double eps_max = 1.0;
  int eps_steps = 20;
  std::vector<double> lambda_list;
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--eps-min", g.eps_min, "Smallest ε of the grid")->capture_default_str();
  cmd->add_option("--eps-max", g.eps_max, "Largest ε of the grid")->capture_default_str();
  cmd->add_option("--eps-steps", g.eps_steps, "Number of ε grid points")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--lambda-list", g.lambda_list, "Explicit λ values (overrides the ε grid)")->delimiter(',');
}

cperc::OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return cperc::OutputFormat::kCsv;
  if (s == "json") return cperc::OutputFormat::kJson;
  throw cperc::UsageError("unknown format '" + s + "' (expected csv | json)");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    cperc::write_file_atomic(out_path, text);
  }
}

void print_summary(const std::vector<cperc::SweepRow>& rows) {
  std::fprintf(stderr, "%10s %10s %8s %12s %10s %12s\n", "epsilon", "lambda", "trials", "mean_rel", "sd_rel", "survival_at_epsilon(eps)");
  for (const auto& s : cperc::summarize(rows)) {
    std::fprintf(stderr, "%10.4f %10.6f %8d %12.6f %10.6f %12.6f\n", s.epsilon, s.lambda, s.trials,
                 s.mean_relative_giant, s.sd_relative_giant, s.predicted_survival);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex percolation on Cayley graphs of S_n generated by transposition trees"};
  app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
  app.require_subcommand(1);

  // simulate
  cperc::SweepConfig cfg = cperc::default_sweep_config();
  GridFlags sim_grid;
  std::string sim_format = "csv", sim_plot;
  bool allow_large = false;
  std::uint64_t budget_mib = cfg.decomposition.memory_budget_bytes >> 20;
  auto* sim = app.add_subcommand("simulate", "Run a percolation sweep and write one row per (ε, trial)");
  sim->add_option("--n", cfg.n, "Degree of the symmetric group")->capture_default_str();
  sim->add_option("--tree", cfg.tree_spec, "star | bubble | prufer:a,b,... | edges:a-b,c-d,...")->capture_default_str();
  add_grid_flags(sim, sim_grid);
  sim->add_option("--trials", cfg.trials, "Trials per grid point")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--seed", cfg.master_seed, "Master seed")->capture_default_str();
  sim->add_option("--k", cfg.k, "Γ_{n,k} threshold exponent k")->capture_default_str();
  sim->add_option("--delta", cfg.delta, "Γ_{n,k} threshold exponent δ")->capture_default_str();
  sim->add_option("--ck", cfg.c_k, "Γ_{n,k} threshold constant c_k")->capture_default_str();
  sim->add_option("--out", cfg.output_path, "Output file (stdout when omitted)");
  sim->add_option("--format", sim_format, "csv | json")->capture_default_str();
  sim->add_option("--plot", sim_plot, "Also write an SVG plot to this path");
  sim->add_option("--workers", cfg.workers, "Worker threads (0: all cores)")->capture_default_str();
  sim->add_flag("--allow-large", allow_large, "Acknowledge the memory needed for n = 12");
  sim->add_option("--memory-budget-mib", budget_mib, "Memory budget per sample")->capture_default_str();

  // survival
  GridFlags surv_grid;
  std::string surv_out, surv_format = "csv";
  auto* surv = app.add_subcommand("survival", "Tabulate the survival probability ℘(ε) = π_P(1+ε)");
  add_grid_flags(surv, surv_grid);
  surv->add_option("--out", surv_out, "Output file (stdout when omitted)");
  surv->add_option("--format", surv_format, "csv | json")->capture_default_str();

  // diameter
  int diam_n = 5, diam_cap = cperc::CayleyGraph::kDefaultMetricCap;
  std::string diam_tree = "star";
  auto* diam = app.add_subcommand("diameter", "Ordering sequence and diameter bounds of a transposition tree");
  diam->add_option("--n", diam_n, "Degree of the symmetric group")->capture_default_str();
  diam->add_option("--tree", diam_tree, "star | bubble | prufer:a,b,... | edges:a-b,c-d,...")->capture_default_str();
  diam->add_option("--metric-cap", diam_cap, "Largest n for the exact BFS diameter")->capture_default_str();

  // verify
  std::string suite = "all";
  cperc::SuiteBudget budget;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", suite, "boundary | diameter | order | survival | branching | all")->capture_default_str();
  ver->add_option("--n", budget.n, "Degree for the exhaustive suites")->capture_default_str();
  ver->add_option("--samples", budget.samples, "Random samples (boundary/order suites)")->capture_default_str();
  ver->add_option("--runs", budget.runs, "Monte-Carlo runs per point (branching suite)")->capture_default_str();
  ver->add_option("--seed", budget.seed, "Seed")->capture_default_str();

  // plot
  std::string plot_in, plot_out;
  auto* plt = app.add_subcommand("plot", "Render a sweep CSV as an SVG plot");
  plt->add_option("--in", plot_in, "Sweep CSV written by `simulate`")->required();
  plt->add_option("--plot,--out", plot_out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sim) {
      cfg.format = parse_format(sim_format);
      cfg.decomposition.allow_large = allow_large;
      cfg.decomposition.memory_budget_bytes = budget_mib << 20;
      if (!sim_grid.lambda_list.empty()) {
        cfg.lambda_grid = sim_grid.lambda_list;
      } else {
        cfg.epsilon_grid = cperc::linspace(sim_grid.eps_min, sim_grid.eps_max, sim_grid.eps_steps);
      }
      const auto rows = cperc::run_sweep(cfg);
      emit(cperc::render_rows(rows, cfg.format), cfg.output_path);
      if (!sim_plot.empty()) cperc::emit_plot(rows, sim_plot);
      print_summary(rows);
    } else if (*surv) {
      const auto fmt = parse_format(surv_format);
      std::vector<double> lambdas = surv_grid.lambda_list;
      if (lambdas.empty()) {
        for (double e : cperc::linspace(surv_grid.eps_min, surv_grid.eps_max, surv_grid.eps_steps)) lambdas.push_back(1 + e);
      }
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      std::string csv = "lambda,epsilon,survival,near_critical_2eps,residual,iterations,regime\n";
      for (double lam : lambdas) {
        const auto r = cperc::survival_poisson(lam);
        const double eps = lam - 1.0;
        csv += cperc::format_double(lam) + ',' + cperc::format_double(eps) + ',' + cperc::format_double(r.value) + ',' +
               cperc::format_double(cperc::near_critical_survival(eps)) + ',' + cperc::format_double(r.residual) + ',' +
               std::to_string(r.iterations) + ',' + cperc::to_string(r.regime) + '\n';
        arr.push_back({{"lambda", lam}, {"epsilon", eps}, {"survival", r.value},
                       {"near_critical_2eps", cperc::near_critical_survival(eps)}, {"residual", r.residual},
                       {"iterations", r.iterations}, {"regime", cperc::to_string(r.regime)}});
      }
      emit(fmt == cperc::OutputFormat::kJson ? arr.dump(2) + "\n" : csv, surv_out);
    } else if (*diam) {
      const auto tree = cperc::parse_tree_spec(diam_tree, diam_n);
      const auto bounds = tree.diameter_bounds();
      std::cout << "tree " << tree.id() << " on n=" << tree.n() << "\n";
      std::cout << "order sequence (v_i s_i):";
      for (const auto& m : tree.order_sequence()) std::cout << " (" << m.v << ' ' << m.s << ')';
      std::cout << "\nsubtree diameters:";
      for (int d : tree.subtree_diameters()) std::cout << ' ' << d;
      std::cout << "\nsum of subtree diameters: " << bounds.subtree_sum << "\n";
      std::cout << "universal bound C(n,2): " << bounds.universal << "\n";
      if (bounds.closed_form) {
        std::cout << bounds.closed_form_name << " closed form: " << *bounds.closed_form << "\n";
      }
      if (diam_n <= diam_cap) {
        const cperc::CayleyGraph g(tree, diam_cap);
        std::cout << "exact diameter (BFS): " << g.exact_diameter() << "\n";
      } else {
        std::cout << "exact diameter: skipped (n above --metric-cap " << diam_cap << ")\n";
      }
    } else if (*ver) {
      std::vector<std::string> names =
          suite == "all" ? cperc::suite_names() : std::vector<std::string>{suite};
      bool all_ok = true;
      for (const auto& name : names) {
        const auto rep = cperc::run_verification_suite(name, budget);
        std::printf("%-10s %s  passed=%d failed=%d worst_margin=%.6g\n", rep.name.c_str(), rep.ok() ? "PASS" : "FAIL",
                    rep.passed, rep.failed, rep.worst_margin);
        for (const auto& f : rep.failures) std::printf("    %s\n", f.c_str());
        all_ok = all_ok && rep.ok();
      }
      return all_ok ? kExitOk : kExitVerification;
    } else if (*plt) {
      const auto rows = cperc::parse_csv(cperc::read_file(plot_in));
      cperc::emit_plot(rows, plot_out);
    }
  } catch (const cperc::CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
