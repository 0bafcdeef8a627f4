#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kemst/errors.hpp"
#include "kemst/event_stability.hpp"
#include "kemst/format.hpp"
#include "kemst/generators.hpp"
#include "kemst/lipschitz.hpp"
#include "kemst/morph.hpp"
#include "kemst/scenario_io.hpp"
#include "kemst/trace_io.hpp"

using namespace kemst;
namespace fs = std::filesystem;

namespace {

// Minimax oracle ratios for the circle scenario in slide mode, frozen from
// oracle runs at 51, 201, 401 and 801 time steps (all identical).
constexpr double kCircleOracle5 = 1.154508497187;
constexpr double kCircleOracle6 = 1.200000000000;
constexpr double kCircleOracle7 = 1.207829933953;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Verdict()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::printf("%s [%d] %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PointConfig random_config(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointConfig cfg;
  for (int i = 0; i < n; ++i) cfg.positions.push_back({u(rng), u(rng)});
  return cfg;
}

// A swap on either a random tree or the EMST of a slightly earlier
// configuration. With `longest`, e is a longest edge of the tree path of e'.
std::optional<SwapEvent> random_swap(std::mt19937_64& rng, int n, bool longest, PointConfig& cfg) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::normal_distribution<double> jitter(0.0, 0.05);
  cfg = random_config(n, rng);
  SpanningTree tree = random_spanning_tree(n, rng);
  if (rng() % 2 == 0) {
    PointConfig before = cfg;
    for (auto& p : before.positions)
      for (double& x : p) x += jitter(rng);
    tree = emst(before);
  }
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int a = pick(rng), b = pick(rng);
    if (a == b || tree.contains(make_edge(a, b))) continue;
    const std::vector<int> cyc = fundamental_cycle(tree, a, b);
    const double ep = cfg.distance(a, b);
    std::vector<Edge> ok;
    double worst = -1.0;
    Edge worst_edge{};
    for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
      const Edge e = make_edge(cyc[k], cyc[k + 1]);
      const double len = edge_length(cfg, e);
      if (len >= ep) ok.push_back(e);
      if (len > worst) worst = len, worst_edge = e;
    }
    if (ok.empty()) continue;
    const Edge e = longest ? worst_edge : ok[rng() % ok.size()];
    return make_swap_event(0.0, tree, e, make_edge(a, b));
  }
  return std::nullopt;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict markov_brothers() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_margin = -1e300;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int s = 1 + trial % 6;
    const double T = 0.5 + 0.1 * (trial % 11);
    const auto sc = gen_random_polynomial(2, s, 1, T, 9000 + trial, true);
    for (const auto& traj : sc.points) {
      const auto& poly = std::get<PolynomialMotion>(traj.motion());
      const Coeffs d = poly_derivative(poly.coords[0]);
      double sampled = 0.0;
      for (int i = 0; i <= 20000; ++i) sampled = std::max(sampled, std::abs(poly_eval(d, T * i / 20000.0)));
      worst_margin = std::max(worst_margin, sampled - s * s / T);
      ++checked;
    }
  }
  double worst_cheb = 1e300;
  for (int s = 1; s <= 6; ++s) {
    for (double T : {1.0, 2.5}) {
      const auto sc = gen_chebyshev(s, 2, T);
      const auto& poly = std::get<PolynomialMotion>(sc.points[0].motion());
      const Coeffs d = poly_derivative(poly.coords[0]);
      double sampled = 0.0;
      for (int i = 0; i <= 20000; ++i) sampled = std::max(sampled, std::abs(poly_eval(d, T * i / 20000.0)));
      worst_cheb = std::min(worst_cheb, sampled / (s * s / T));
    }
  }
  const double secs = elapsed_since(t0);
  const bool pass = worst_margin <= 1e-6 && worst_cheb >= 0.999 && secs < 5.0;
  return {pass, std::to_string(checked) + " polynomials, max(|h'| - s^2/T) = " + fmt("%.3e", worst_margin) +
                    ", min Chebyshev |h'| / (s^2/T) = " + fmt("%.6f", worst_cheb) + ", " + fmt("%.2fs", secs) +
                    " (limit 5s)"};
}

int chebyshev_events(int s, double k) {
  auto sc = gen_chebyshev(s, 11);
  sc.k = k;
  return run_event_regime(sc, 0).event_count;
}

Verdict event_upper_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (int s = 3; s <= 5; ++s) {
    for (double k : {0.05, 0.1, 0.2}) {
      const int count = chebyshev_events(s, k);
      const int bound = static_cast<int>(std::ceil(s * s / k - 1e-9)) + 1;
      pass = pass && count <= bound;
      detail += "s=" + std::to_string(s) + ",k=" + fmt("%g", k) + ":" + std::to_string(count) + "<=" +
                std::to_string(bound) + " ";
    }
  }
  const double secs = elapsed_since(t0);
  return {pass && secs < 10.0, detail + fmt("%.2fs", secs) + " (limit 10s)"};
}

Verdict event_growth() {
  const int n = 11;
  const double ks[3] = {0.2, 0.1, 0.05};
  bool pass = true;
  int pairs = 0;
  std::string detail;
  for (int s = 3; s <= 5; ++s) {
    for (int j = 0; j + 1 < 3; ++j) {
      const double k_big = ks[j], k_small = ks[j + 1];
      const int a = chebyshev_events(s, k_big), b = chebyshev_events(s, k_small);
      const double factor = static_cast<double>(b) / a;
      const bool in_regime = 1.0 / k_small <= n;
      if (in_regime) {
        ++pairs;
        pass = pass && factor >= 1.8 && factor <= 2.2;
      }
      detail += "s=" + std::to_string(s) + " " + fmt("%g", k_big) + "->" + fmt("%g", k_small) + ": " +
                fmt("%.3f", factor) + (in_regime ? "" : " (1/k > n, not checked)") + "; ";
    }
  }
  return {pass && pairs > 0, detail};
}

Verdict approximation_bound() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> kdist(0.02, 0.2);
  std::uniform_int_distribution<int> ndist(2, 30), sdist(1, 4), ddist(1, 2);
  double worst = -1e300;
  int records = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto sc = gen_random_polynomial(ndist(rng), sdist(rng), ddist(rng), 1.0, rng());
    sc.k = kdist(rng);
    const auto trace = run_event_regime(sc, 101);
    const double allowance = 4.0 * sc.k * static_cast<double>(sc.size());
    for (const auto& r : trace.records) {
      worst = std::max(worst, r.tree_length - r.opt_length - allowance);
      ++records;
    }
  }
  return {worst <= 1e-9, "50 scenarios, " + std::to_string(records) +
                             " records, max(tree - opt - 4kn) = " + fmt("%.4f", worst) + " (must be <= 1e-9)"};
}

Verdict slide_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(515);
  std::uniform_int_distribution<int> ndist(5, 20);
  double worst = 0.0;
  int done = 0;
  while (done < 500) {
    PointConfig cfg;
    const auto ev = random_swap(rng, ndist(rng), false, cfg);
    if (!ev) continue;
    const MorphPlan plan = plan_slide_morph(*ev, cfg);
    check_plan(plan, *ev);
    worst = std::max(worst, plan.max_intermediate / tree_length(cfg, ev->old_tree));
    ++done;
  }
  const double secs = elapsed_since(t0);
  return {worst <= 1.5 && secs < 30.0, "500 swaps, max intermediate / old length = " + fmt("%.6f", worst) +
                                           " (bound 1.5), " + fmt("%.2fs", secs) + " (limit 30s)"};
}

Verdict rotation_bound() {
  std::mt19937_64 rng(616);
  std::uniform_int_distribution<int> ndist(5, 20);
  double worst = -1e300;
  double worst_ratio = 0.0;
  int done = 0;
  while (done < 500) {
    PointConfig cfg;
    const auto ev = random_swap(rng, ndist(rng), true, cfg);
    if (!ev) continue;
    const MorphPlan plan = plan_rotation_morph(*ev, cfg);
    check_plan(plan, *ev);
    const double old_len = tree_length(cfg, ev->old_tree);
    worst = std::max(worst, plan.max_intermediate - 4.0 / 3.0 * old_len);
    worst_ratio = std::max(worst_ratio, plan.max_intermediate / old_len);
    ++done;
  }
  return {worst <= 1e-9, "500 swaps, max intermediate / old length = " + fmt("%.6f", worst_ratio) +
                             " (bound 4/3 + 1e-9)"};
}

Verdict diamond_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cert = diamond_certificate(6);
  const double secs = elapsed_since(t0);
  const double threshold = 10.0 - 2.0 * std::sqrt(2.0);
  const double target = threshold / (9.0 - 2.0 * std::sqrt(2.0));
  const bool pass = cert.lower_bound >= threshold - 1e-9 && cert.ratio() >= target - 1e-9 && secs < 60.0;
  return {pass, "certified minimum over rotation paths = " + fmt("%.12f", cert.lower_bound) +
                    " (threshold 10 - 2 sqrt 2 = " + fmt("%.12f", threshold) + "), attained by a witness path with max " +
                    fmt("%.12f", cert.witness_max) + "; ratio " + fmt("%.6f", cert.ratio()) + " vs " +
                    fmt("%.6f", target) + ", " + fmt("%.2fs", secs) + " (limit 60s)"};
}

void diamond_notes() {
  for (int per_side : {4, 6, 8, 12}) {
    const auto cert = diamond_certificate(per_side);
    const double g = DiamondGeometry::standard(per_side).chain_spacing();
    std::printf("INFO [7] per_side=%d: bound %.12f = 10 - 2 sqrt 2 - g with g = %.12f (residual %.2e), ratio %.6f\n",
                per_side, cert.lower_bound, g, cert.lower_bound - (10.0 - 2.0 * std::sqrt(2.0) - g), cert.ratio());
  }
  const auto trace = run_topo_regime(gen_diamond(6), MorphMode::rotation, 101);
  std::printf("INFO [7] rotation regime on the diamond scenario: max ratio %.9f (target %.6f), %d swaps, %d fallbacks\n",
              trace.max_ratio, (10.0 - 2.0 * std::sqrt(2.0)) / (9.0 - 2.0 * std::sqrt(2.0)), trace.swap_count,
              trace.fallback_count);
}

Verdict circle_trend() {
  const double pinned[3] = {kCircleOracle5, kCircleOracle6, kCircleOracle7};
  double got[3];
  std::string detail;
  bool pass = true;
  const double cap = (M_PI + 1.0) / M_PI;
  for (int i = 0; i < 3; ++i) {
    got[i] = minimax_flip_oracle(gen_circle(5 + i), MorphMode::slide, 201).ratio;
    pass = pass && got[i] > 1.10 && got[i] < cap + 1e-6 && std::abs(got[i] - pinned[i]) <= 1e-9;
    if (i > 0) pass = pass && got[i] >= got[i - 1];
    detail += "n=" + std::to_string(5 + i) + ": " + fmt("%.12f", got[i]) + " ";
  }
  return {pass, detail + "(nondecreasing, > 1.10, < (pi+1)/pi = " + fmt("%.6f", cap) + ", equal to fixtures)"};
}

Verdict lipschitz_no_completion() {
  const int n = 64;
  const double K = kSplitConstant / std::log(static_cast<double>(n));
  const auto res = run_lipschitz_regime(gen_split(n), K, 101);
  bool closed_ok = true;
  for (int j = 1; j <= 4 * n; ++j) {
    const double x = static_cast<double>(j) / n;
    closed_ok = closed_ok && K * std::log(1.0 / x + std::sqrt(1.0 + 1.0 / (x * x))) < 1.0 && slide_cannot_finish(x, K);
  }
  // Closed form against quadrature: progress of every pending slide, and a
  // completion time with a budget large enough to finish.
  double gap = 0.0;
  const auto sc = gen_split(n);
  for (const auto& s : res.slides) {
    const double x = std::abs(sc.at(0.0).positions[s.v][1] - sc.at(0.0).positions[s.w][1]);
    gap = std::max(gap, std::abs(split_progress(x, K, s.t0, 1.0) - s.budget_integral));
  }
  for (int j = 1; j <= 8; ++j) {
    const double x = static_cast<double>(j) / n;
    const double big = 2.0;
    const auto closed = completion_time(x, big, 0.0);
    const auto numeric = completion_time_numeric([x](double t) { return std::sqrt(x * x + t * t); }, big, 0.0, 1.0);
    if (closed && numeric) gap = std::max(gap, std::abs(*closed - *numeric));
    else if (closed.has_value() != numeric.has_value()) gap = INFINITY;
  }
  const bool pass = res.completed == 0 && closed_ok && res.final_ratio >= n / 8.0 && gap <= 1e-8;
  return {pass, "completed " + std::to_string(res.completed) + " of " + std::to_string(res.slides.size()) +
                    " slides, closed-form test " + (closed_ok ? "holds" : "fails") + " for x >= 1/n, final ratio " +
                    fmt("%.6f", res.final_ratio) + " (>= n/8 = 8), closed form vs quadrature gap " + fmt("%.2e", gap)};
}

Verdict any_tree() {
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<int> ndist(3, 50);
  double worst_edge = 0.0, worst_total = 0.0;
  int failed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = ndist(rng);
    const PointConfig cfg = random_config(n, rng);
    try {
      const auto audit = any_tree_bound_audit(cfg, random_spanning_tree(n, rng));
      worst_edge = std::max(worst_edge, audit.max_edge / audit.opt_length);
      worst_total = std::max(worst_total, audit.total / ((n - 1) * audit.opt_length));
    } catch (const AuditFailure&) {
      ++failed;
    }
  }
  return {failed == 0, "200 trees, max edge / OPT = " + fmt("%.4f", worst_edge) + ", max total / ((n-1) OPT) = " +
                           fmt("%.4f", worst_total) + ", violations " + std::to_string(failed)};
}

Verdict emst_oracle() {
  std::mt19937_64 rng(1111);
  const auto trees = enumerate_spanning_trees(6);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const PointConfig cfg = random_config(6, rng);
    double best = INFINITY;
    for (const auto& t : trees) best = std::min(best, tree_length(cfg, t));
    worst = std::max(worst, std::abs(emst_length_prim(cfg) - best));
    worst = std::max(worst, std::abs(tree_length(cfg, emst(cfg)) - best));
  }
  return {worst <= 1e-12, "200 configs, " + std::to_string(trees.size()) + " trees each, max |Prim - enumeration| = " +
                              fmt("%.2e", worst)};
}

Verdict determinism(const std::string& cli) {
  auto traces = [] {
    std::vector<std::string> out;
    auto rnd = gen_random_polynomial(15, 3, 2, 1.0, 77);
    rnd.k = 0.05;
    const auto ev = run_event_regime(rnd, 101);
    out.push_back(event_trace_csv(ev));
    out.push_back(format_double(estimate_stability_ratio(ev, rnd, 500, 9)));
    out.push_back(topo_trace_csv(run_topo_regime(gen_circle(6), MorphMode::slide, 51)));
    out.push_back(lipschitz_trace_csv(run_lipschitz_regime(gen_split(16), 1.0, 51)));
    out.push_back(scenario_to_json(rnd));
    return out;
  };
  const bool in_process = traces() == traces();

  const fs::path base = fs::temp_directory_path() / "kemst_acceptance_determinism";
  fs::remove_all(base);
  bool cross_process = true;
  int files = 0;
  for (const char* run : {"a", "b"}) {
    const std::string dir = (base / run).string();
    const std::string cmd = cli + " run-event random --n 12 --s 3 --seed 7 --k 0.05 --out " + dir +
                            " >/dev/null && " + cli + " run-topo circle --n 6 --mode slide --out " + dir +
                            " >/dev/null && " + cli + " run-lipschitz split --n 16 --jobs 2 split --out " + dir +
                            " >/dev/null";
    cross_process = cross_process && std::system(cmd.c_str()) == 0;
  }
  if (cross_process) {
    for (const auto& entry : fs::directory_iterator(base / "a")) {
      cross_process = cross_process && read_file(entry.path()) == read_file(base / "b" / entry.path().filename());
      ++files;
    }
  }
  fs::remove_all(base);
  return {in_process && cross_process && files > 0,
          std::string("in-process traces ") + (in_process ? "identical" : "differ") + ", CLI traces " +
              (cross_process ? "identical" : "differ") + " across " + std::to_string(files) + " files"};
}

}  // namespace

int main() {
  report(1, "Markov brothers speed bound", markov_brothers);
  report(2, "event count upper bound", event_upper_bound);
  report(3, "event count growth when halving k", event_growth);
  report(4, "approximation audit", approximation_bound);
  report(5, "slide morph bound", slide_bound);
  report(6, "rotation morph bound", rotation_bound);
  report(7, "diamond rotation lower bound", diamond_bound);
  diamond_notes();
  report(8, "circle oracle trend", circle_trend);
  report(9, "Lipschitz no-completion", lipschitz_no_completion);
  report(10, "any-tree bound", any_tree);
  report(11, "EMST oracle equivalence", emst_oracle);
  report(12, "determinism", [] { return determinism(KEMST_CLI_PATH); });
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
