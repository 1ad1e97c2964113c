// Command-line front end. Every command prints one JSON document (or CSV
// rows) with the layout {command, params, results, seed, version,
// wall_time_ms}.

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "assocperc/couplings.hpp"
#include "assocperc/domination.hpp"
#include "assocperc/error.hpp"
#include "assocperc/exact_dp.hpp"
#include "assocperc/experiments.hpp"
#include "assocperc/joint_table_io.hpp"
#include "assocperc/markov_chain.hpp"
#include "assocperc/oracle.hpp"
#include "assocperc/renorm.hpp"

using json = nlohmann::ordered_json;
using namespace assocperc;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string out;
  std::string format = "json";
  int threads = 0;
  std::uint64_t seed = 1;
  bool no_timing = false;
};

std::vector<double> parse_sweep(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    double v = 0.0;
    const char* last = item.data() + item.size();
    const auto [end, ec] = std::from_chars(item.data(), last, v);
    require(ec == std::errc() && end == last && !item.empty(), "--p-sweep expects start:stop:step");
    parts.push_back(v);
  }
  require(parts.size() == 3, "--p-sweep expects start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  require(step > 0.0 && stop >= start, "--p-sweep needs step > 0 and stop >= start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  require(count <= 100000, "--p-sweep has too many points");
  std::vector<double> ps;
  // Snap to 12 decimals so that 0.7 + 2 * 0.05 prints as 0.8.
  for (long i = 0; i < count; ++i) {
    ps.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return ps;
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const Common& c, const std::string& command, const json& params,
          const json& results, double elapsed_ms) {
  json doc;
  doc["command"] = command;
  doc["params"] = params;
  doc["results"] = results;
  doc["seed"] = c.seed;
  doc["version"] = kVersion;
  doc["wall_time_ms"] = c.no_timing ? 0 : static_cast<std::int64_t>(std::llround(elapsed_ms));
  std::ostringstream text;
  if (c.format == "json") {
    text << doc.dump(2) << '\n';
  } else {
    if (!results.empty()) {
      bool first = true;
      for (const auto& [key, value] : results.front().items()) {
        text << (first ? "" : ",") << key;
        first = false;
      }
      text << '\n';
      for (const auto& row : results) {
        first = true;
        for (const auto& [key, value] : row.items()) {
          text << (first ? "" : ",") << csv_cell(value);
          first = false;
        }
        text << '\n';
      }
    }
  }
  if (c.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(c.out);
    if (!f) throw IoError("cannot open output file '" + c.out + "'");
    f << text.str();
    if (!f) throw IoError("failed writing output file '" + c.out + "'");
  }
}

json mc_row(const McEstimate& e) {
  return {{"w", e.w},
          {"ell", e.ell},
          {"p", e.p},
          {"trials", e.trials},
          {"survivors", e.survivors},
          {"point_estimate", e.point_estimate},
          {"ci_low", e.ci_low},
          {"ci_high", e.ci_high},
          {"confidence", e.confidence}};
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Write output to this file instead of stdout");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", c.threads, "OpenMP threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", c.seed, "Master seed");
  sub->add_flag("--no-timing", c.no_timing, "Report wall_time_ms as 0 for reproducible output");
}

// Built-in oracle checks for `verify` without a table.
json builtin_checks(bool& all_passed) {
  json rows = json::array();
  auto add = [&](const std::string& name, bool ok, const std::string& detail) {
    rows.push_back({{"check", name}, {"passed", ok}, {"detail", detail}});
    all_passed = all_passed && ok;
  };
  double worst = 0.0;
  for (int w = 1; w <= 2; ++w) {
    for (int ell = 0; ell <= 2; ++ell) {
      for (double p : {0.2, 0.5, 0.77}) {
        worst = std::max(worst, std::abs(exact_survival(w, ell, p) - brute_force_survival(w, ell, p)));
      }
    }
  }
  std::ostringstream d1;
  d1 << "max |dp - brute force| = " << worst;
  add("exact_dp_vs_brute_force", worst <= 1e-12, d1.str());

  const JointTable ex = example1_table();
  const SmallGraph cyc = four_cycle();
  const bool pa = check_positive_association(ex);
  const bool ind = check_k_independence(ex, cyc, 1);
  const bool cond = check_lemma1_condition_ii(ex, cyc, 1);
  const double c0 = conditional_probability(ex, {{0, true}}, {});
  const double c1 = conditional_probability(ex, {{0, true}}, {{3, true}, {1, true}});
  const double c2 = conditional_probability(ex, {{0, true}}, {{3, true}, {1, true}, {2, false}});
  std::ostringstream d2;
  d2 << "PA=" << pa << " 1-independent=" << ind << " condition_ii=" << cond << " witness=" << c0
     << "," << c1 << "," << c2;
  add("cycle_parity", !pa && ind && !cond && c0 == 0.5 && c1 == 0.5 && c2 == 0.0, d2.str());

  bool chain_ok = true;
  const BoxGeometry geom(4, 0);
  for (double p : {0.3, 0.5, 0.8}) {
    for (int len = 1; len <= 4; ++len) {
      const LevelSubset w{geom.level_width(1), low_bits(len), 1};
      const FiniteDistribution eta = kernel_row({KernelKind::kPiPP, p}, w, geom);
      const FiniteDistribution x = transition_prob(w, geom, p).entries;
      const FiniteDistribution prod = kernel_row({KernelKind::kProduct, p}, w, geom);
      chain_ok = chain_ok && check_domination(eta, x) && check_domination(x, prod);
    }
  }
  add("domination_chain", chain_ok, "pi_pp row <= chain row <= product row, intervals of length <= 4");
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Survival probabilities and couplings for 1-independent percolation"};
  app.require_subcommand(1);
  Common c;
  int w = 20, ell = 0, max_iters = kDefaultRenormIters, n_dim = 3, i_max = 4, d = 2, depth = 10,
      k = 1;
  double p = 0.77, confidence = 0.99, eps = kDefaultEscapeEps;
  std::string sweep, table_path, which, kernel = "product";
  std::uint64_t trials = 100000;

  auto* exact = app.add_subcommand("exact-survival", "Exact survival probability by the column DP");
  auto* mc = app.add_subcommand("mc-survival", "Monte Carlo survival estimate with exact CI");
  auto* ren = app.add_subcommand("renorm", "Iterate the renormalization map");
  auto* br = app.add_subcommand("branching", "Branching model on oriented Z^n");
  auto* tree = app.add_subcommand("tree-moments", "Moments of the tree martingale");
  auto* ver = app.add_subcommand("verify", "Run oracle checks or verify a joint edge law");
  auto* rep = app.add_subcommand("reproduce", "Reproduce the survival tables");

  for (auto* sub : {exact, mc}) {
    sub->add_option("--w", w, "Box width")->required();
    sub->add_option("--ell", ell, "Box length");
    auto* po = sub->add_option("--p", p, "Parameter");
    auto* so = sub->add_option("--p-sweep", sweep, "Parameter grid start:stop:step");
    po->excludes(so);
  }
  mc->add_option("--trials", trials, "Number of trials");
  mc->add_option("--confidence", confidence, "Confidence level");
  ren->add_option("--w", w, "Box width");
  ren->add_option("--p", p, "Starting parameter p0");
  ren->add_option("--max-iters", max_iters, "Maximum number of map applications");
  ren->add_option("--eps", eps, "Escape threshold");
  br->add_option("--n", n_dim, "Dimension");
  br->add_option("--p", p, "Parameter");
  br->add_option("--i-max", i_max, "Largest even level index");
  br->add_option("--trials", trials, "Number of trials");
  tree->add_option("--d", d, "Arity");
  tree->add_option("--p", p, "Parameter");
  tree->add_option("--depth", depth, "Depth");
  tree->add_option("--trials", trials, "Number of trials");
  tree->add_option("--kernel", kernel, "product or sibling_block");
  ver->add_option("--table", table_path, "Joint edge law file");
  ver->add_option("--k", k, "Independence range for the table checks");
  rep->add_option("--table", which, "fig5 or fig6")->required()->check(CLI::IsMember({"fig5", "fig6"}));
  rep->add_option("--trials", trials, "Trials per estimate (Monte Carlo table)");
  for (auto* sub : {exact, mc, ren, br, tree, ver, rep}) add_common(sub, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c.threads > 0) omp_set_num_threads(c.threads);
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
    };
    const std::vector<double> ps = sweep.empty() ? std::vector<double>{p} : parse_sweep(sweep);
    json params;
    json results = json::array();
    int exit_code = 0;
    std::string command = app.get_subcommands().front()->get_name();

    if (*exact) {
      params = {{"w", w}, {"ell", ell}, {"p", ps}};
      for (double q : ps) {
        results.push_back({{"w", w}, {"ell", ell}, {"p", q}, {"q", exact_survival(w, ell, q)}});
      }
    } else if (*mc) {
      params = {{"w", w}, {"ell", ell}, {"p", ps}, {"trials", trials}, {"confidence", confidence}};
      for (double q : ps) results.push_back(mc_row(mc_survival(w, ell, q, trials, c.seed, confidence)));
    } else if (*ren) {
      params = {{"w", w}, {"p0", p}, {"max_iters", max_iters}, {"eps", eps}};
      const RenormTrajectory t = iterate(p, w, max_iters, eps);
      for (const auto& s : t.steps) {
        results.push_back({{"n", s.n},
                           {"p", s.p},
                           {"q_long", s.q_long},
                           {"q_square", s.q_square},
                           {"verdict", verdict_name(t.verdict)}});
      }
    } else if (*br) {
      params = {{"n", n_dim}, {"p", p}, {"i_max", i_max}, {"trials", trials}};
      for (const auto& r : branching_experiment(n_dim, p, i_max, trials, c.seed)) {
        results.push_back({{"i", r.i}, {"nonempty", r.nonempty}, {"frequency", r.frequency},
                           {"bound", r.bound}});
      }
    } else if (*tree) {
      params = {{"d", d}, {"p", p}, {"depth", depth}, {"trials", trials}, {"kernel", kernel}};
      const TreeMomentReport r = tree_moments(d, p, depth, trials, c.seed, parse_kernel(kernel));
      results.push_back({{"d", r.d},
                         {"p", r.p},
                         {"depth", r.depth},
                         {"trials", r.trials},
                         {"kernel", kernel_name(r.kernel)},
                         {"mean_x", r.mean_x},
                         {"mean_stderr", r.mean_stderr},
                         {"second_moment", r.second_moment}});
    } else if (*ver) {
      if (table_path.empty()) {
        params = {{"suite", "builtin"}};
        bool ok = true;
        results = builtin_checks(ok);
        if (!ok) exit_code = 1;
      } else {
        params = {{"table", table_path}, {"k", k}};
        const EdgeLaw law = read_edge_law(table_path);
        const bool pa = check_positive_association(law.table);
        const bool ind = check_k_independence(law.table, law.graph, k);
        const bool cond = check_lemma1_condition_ii(law.table, law.graph, k);
        results.push_back({{"check", "positive_association"}, {"passed", pa}});
        results.push_back({{"check", "k_independence"}, {"passed", ind}});
        results.push_back({{"check", "condition_ii"}, {"passed", cond}});
        results.push_back({{"check", "condition_equivalence"}, {"passed", cond == (pa && ind)}});
      }
    } else if (*rep) {
      command = "reproduce";
      if (which == "fig5") {
        params = {{"table", which}, {"w", kFig5Width}};
        for (const auto& r : reproduce_fig5()) {
          results.push_back({{"p0", r.p0}, {"q_long", r.q_long}, {"q_square", r.q_square},
                             {"p1", r.p1}});
        }
      } else {
        params = {{"table", which}, {"w", kFig6Width}, {"trials", trials}, {"confidence", 0.99}};
        for (const auto& r : reproduce_fig6(trials, c.seed)) {
          results.push_back({{"p0", r.p0},
                             {"q_long", r.q_long.point_estimate},
                             {"q_long_ci_low", r.q_long.ci_low},
                             {"q_long_ci_high", r.q_long.ci_high},
                             {"q_square", r.q_square.point_estimate},
                             {"q_square_ci_low", r.q_square.ci_low},
                             {"q_square_ci_high", r.q_square.ci_high},
                             {"p1_low", r.p1_low},
                             {"p1_high", r.p1_high}});
        }
      }
    }
    emit(c, command, params, results, elapsed());
    return exit_code;
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
