#include "validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "ergodic.hpp"
#include "error.hpp"
#include "heat.hpp"
#include "io.hpp"
#include "numerics.hpp"
#include "pricing.hpp"
#include "random.hpp"
#include "rotation.hpp"
#include "stochastic.hpp"
#include "trading.hpp"

namespace logerg::validation {

namespace {

using stochastic::GbmParams;
using stochastic::ItoParams;
using stochastic::WienerPath;

constexpr std::uint64_t kMasterSeed = 20240601;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Outcome emo_round_trip(double scale) {
  const double tol = 1e-10 * scale;
  std::mt19937_64 rng(derive_seed(kMasterSeed, 1));
  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const double horizon = uniform(rng, 0.5, 3.0);
    const TimeGrid grid = TimeGrid::uniform(horizon, horizon / 1000.0);
    const WienerPath w = stochastic::simulate_wiener(grid, derive_seed(kMasterSeed, 1000 + i));
    ItoParams params;
    SamplePath y = [&] {
      if (i % 2 == 0) {
        const GbmParams gbm{uniform(rng, -0.2, 0.3), uniform(rng, 0.05, 0.5), uniform(rng, 10.0, 200.0)};
        params = ItoParams::log_gbm(gbm);
        return stochastic::log_path(stochastic::simulate_gbm(gbm, w));
      }
      const double kappa = uniform(rng, 0.5, 3.0);
      const double level = uniform(rng, -1.0, 1.0);
      const double vol = uniform(rng, 0.1, 0.6);
      params.mu = [kappa, level](double, double x) { return kappa * (level - x); };
      params.sigma = [vol](double, double) { return vol; };
      params.y0 = uniform(rng, -2.0, 2.0);
      return stochastic::simulate_ito(params, w);
    }();
    if (std::abs(w.terminal()) < 1e-6) continue;  // IEMO singular at W_T = 0
    const ergodic::DecomposedPath dec = ergodic::decompose(y, params, w);
    const ergodic::EmoConfig cfg{uniform(rng, 1.6, 3.0), horizon, w.terminal()};
    const SamplePath z = ergodic::apply_emo(dec, cfg);
    const SamplePath back = ergodic::apply_iemo(z, dec.y0, cfg, dec);
    for (std::size_t k = 0; k < y.size(); ++k) worst = std::max(worst, std::abs(back[k] - y[k]));
    ++used;
  }
  return {used >= 190 && worst <= tol,
          fmt("%zu paths, max |IEMO(EMO(Y)) - Y| = %.3e (tol %.1e)", used, worst, tol)};
}

Outcome constant_annihilation(double) {
  const TimeGrid grid = TimeGrid::uniform(1.0, 1e-3);
  const WienerPath w = stochastic::simulate_wiener(grid, derive_seed(kMasterSeed, 2));
  const GbmParams gbm{0.1, 0.2, 100.0};
  const ItoParams params = ItoParams::log_gbm(gbm);
  const SamplePath y = stochastic::log_path(stochastic::simulate_gbm(gbm, w));
  ergodic::DecomposedPath dec = ergodic::decompose(y, params, w);
  const ergodic::EmoConfig cfg{2.0, 1.0, w.terminal()};
  const SamplePath base = ergodic::apply_emo(dec, cfg);
  std::size_t mismatches = 0;
  for (double shift : {1.0, -7.5, 1e6, 0.1}) {
    ergodic::DecomposedPath moved = dec;
    moved.y0 += shift;
    const SamplePath z = ergodic::apply_emo(moved, cfg);
    if (!std::equal(z.values().begin(), z.values().end(), base.values().begin())) ++mismatches;
  }
  const SamplePath z100 = ergodic::construct_z_gbm(gbm, w, 2.0);
  const SamplePath z7 = ergodic::construct_z_gbm({0.1, 0.2, 7.0}, w, 2.0);
  const bool closed_equal = std::equal(z100.values().begin(), z100.values().end(), z7.values().begin());
  return {mismatches == 0 && closed_equal,
          fmt("%zu/4 y0 shifts changed Z; closed form s0 100 vs 7 %s", mismatches,
              closed_equal ? "bit-identical" : "differs")};
}

Outcome mean_reversion(double scale) {
  const GbmParams gbm{0.1, 0.2, 100.0};
  const TimeGrid grid = TimeGrid::uniform(1.0, 1e-4);
  const std::size_t paths = 1000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < paths; ++i) {
    const WienerPath w = stochastic::simulate_wiener(grid, derive_seed(kMasterSeed + 3, i));
    const SamplePath price = stochastic::simulate_gbm(gbm, w);
    const SamplePath z = ergodic::z_from_gbm_price(gbm, price, 2.0).z;
    const trading::RecurrenceSet rec = trading::detect_recurrences(z);
    const bool interior = std::any_of(rec.taus.begin(), rec.taus.end(),
                                      [](double t) { return t > 0.0 && t < 1.0; });
    hits += interior ? 1 : 0;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(paths);
  const double need = 1.0 - 0.01 * scale;
  return {frac >= need, fmt("%zu/%zu paths recur in (0, T): %.4f (need >= %.4f)", hits, paths, frac, need)};
}

Outcome ergodicity(double scale) {
  const GbmParams gbm{0.1, 0.2, 100.0};
  const double horizon = 100.0;
  const double dt = 0.01;
  const std::size_t paths = 1000;
  const std::uint64_t seed = kMasterSeed + 4;
  const double hs[] = {horizon};
  const double z_diag = ergodic::z_ergodicity_curve(gbm, 2.0, dt, hs, paths, seed).values[0];
  double y_diag = 0.0;
  {
    const TimeGrid grid = TimeGrid::uniform(horizon, dt);
    const auto wieners = stochastic::simulate_wiener_ensemble(grid, seed, paths);
    std::vector<SamplePath> ys;
    ys.reserve(paths);
    for (const auto& w : wieners) ys.push_back(stochastic::log_path(stochastic::simulate_gbm(gbm, w)));
    y_diag = ergodic::ergodicity_diagnostic(ys, hs).values[0];
  }
  const double tol = 1e-3 * scale;
  return {std::abs(z_diag) <= tol && std::abs(z_diag) < std::abs(y_diag),
          fmt("T'=100, %zu paths: Z diagnostic %.3e (tol %.1e), Y diagnostic %.4f", paths, z_diag,
              tol, y_diag)};
}

Outcome sine_fixture(double scale) {
  const double dt = 1e-3;
  const TimeGrid grid = TimeGrid::uniform(1.0, dt);
  std::vector<double> zv(grid.size());
  std::vector<double> xv(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.time(k);
    zv[k] = std::sin(2.0 * kPi * t);
    xv[k] = 100.0 + 10.0 * std::sin(2.0 * kPi * t) + 20.0 * t;
  }
  const SamplePath z(grid, zv, PathKind::kZProcess);
  const SamplePath x(grid, xv, PathKind::kPrice);
  const double tol = dt * scale;
  const trading::RecurrenceSet rec = trading::detect_recurrences(z);
  bool ok = rec.taus.size() == 3;
  const double want_tau[] = {0.0, 0.5, 1.0};
  for (std::size_t i = 0; ok && i < 3; ++i) ok = std::abs(rec.taus[i] - want_tau[i]) <= tol;
  const auto ex = trading::build_excursions(z, rec);
  const auto stats = trading::sojourn_stats(ex);
  ok = ok && ex.size() == 2 && stats.mean_above && stats.mean_below &&
       std::abs(*stats.mean_above - 0.5) <= tol && std::abs(*stats.mean_below - 0.5) <= tol;
  ok = ok && std::abs(ex[0].oet - 0.25) <= tol && std::abs(ex[1].oet - 0.75) <= tol;
  const double l = 2.0;
  const double s = 1.5;
  double profit = 0.0;
  double brute = 0.0;
  if (ok) {
    const trading::TradeLedger ledger = trading::build_ledger(x, ex, l, s);
    profit = trading::trade_profit(ledger);
    // Entry at each recurrence, exit at the OET, leverage by side.
    for (const auto& e : ex) {
      const double move = std::abs(x.at_time(e.start) - x.at_time(e.oet));
      brute += (e.side == trading::Side::kBelow ? l : s) * move;
    }
    ok = std::abs(profit - brute) <= 1e-12 * scale * std::max(1.0, std::abs(brute));
  }
  return {ok, fmt("taus %zu, excursions %zu, profit %.12g vs brute force %.12g", rec.taus.size(),
                  ex.size(), profit, brute)};
}

Outcome equidistribution(double scale) {
  const double freq = rotation::equidistribution_test(std::sqrt(2.0), 0.2, 0.5, 0.0, 1000000);
  const double tol = 0.005 * scale;
  return {std::abs(freq - 0.3) <= tol, fmt("frequency %.6f vs 0.3 (tol %.4f)", freq, tol)};
}

Outcome kac(double scale) {
  const double theta = 0.5 * (std::sqrt(5.0) - 1.0);
  const double tol = 0.02 * scale;
  bool ok = true;
  std::string detail;
  for (double p : {0.1, 0.25, 0.5}) {
    const auto res = rotation::kac_return_time(theta, 0.0, p, 0.0, 100000);
    const double rel = std::abs(res.mean * p - 1.0);
    ok = ok && rel <= tol;
    detail += fmt("p=%.2f mean %.4f (1/p %.1f); ", p, res.mean, 1.0 / p);
  }
  detail += fmt("tol %.3f relative", tol);
  return {ok, detail};
}

Outcome birkhoff(double scale) {
  const double theta = std::sqrt(2.0);
  const auto poly = rotation::TestFunction::trig(0.37, {0.5, -0.25, 0.1}, {0.3, 0.2});
  const auto sine = rotation::TestFunction::trig(0.0, {}, {1.0});
  const double avg = rotation::birkhoff_average(poly, 0.0, theta, 1000000);
  const double avg_sin = rotation::birkhoff_average(sine, 0.0, theta, 1000000);
  const double tol = 1e-3 * scale;
  return {std::abs(avg - 0.37) <= tol && std::abs(avg_sin) <= tol,
          fmt("trig polynomial %.7f vs 0.37, sin(2 pi x) %.3e (tol %.1e)", avg, avg_sin, tol)};
}

Outcome heat(double scale) {
  using namespace pricing;
  const double eta = 1.0;
  const double tau = 0.25;
  const double s2 = 0.25;
  auto gauss = [](double y, double var) { return std::exp(-y * y / (2.0 * var)) / std::sqrt(2.0 * kPi * var); };
  HeatProblem g;
  g.eta = eta;
  g.tau_end = tau;
  g.grid = SpatialGrid::centered(0.0, 0.01, 600);
  g.initial.resize(g.grid.count);
  for (std::size_t j = 0; j < g.grid.count; ++j) g.initial[j] = gauss(g.grid.at(j), s2);
  g.far_field = [&](double y, double t) { return gauss(y, s2 + eta * t); };
  const auto conv = solve_heat_convolution(g);
  const auto fd = solve_heat_fd(g, 1e-3, FdScheme::kCrankNicolson);
  double err_conv = 0.0;
  double err_fd = 0.0;
  for (std::size_t j = 0; j < g.grid.count; ++j) {
    const double exact = gauss(g.grid.at(j), s2 + eta * tau);
    err_conv = std::max(err_conv, std::abs(conv[j] - exact));
    err_fd = std::max(err_fd, std::abs(fd[j] - exact));
  }

  PricingInputs in;
  in.r = 0.05;
  in.T = 1.0;
  in.beta = 2.0;
  in.mu = 0.1;
  in.sigma = 0.2;
  in.tau = 0.5;
  in.w_terminal = 0.3;
  in.K = std::exp(std::exp(1.0));
  in.z = 0.05;
  const HeatTransform ht = transform_bsp_to_heat(in, SpatialGrid::centered(0.0, 0.01, 1000));
  const auto pc = solve_heat_convolution(ht.problem);
  const auto pf = solve_heat_fd(ht.problem, 1e-3, FdScheme::kCrankNicolson);
  const double margin = 6.0 * std::sqrt(ht.problem.eta * ht.problem.tau_end);
  double diff = 0.0;
  double peak = 0.0;
  for (std::size_t j = 0; j < ht.problem.grid.count; ++j) {
    const double y = ht.problem.grid.at(j);
    if (y - ht.problem.grid.lower < margin || ht.problem.grid.upper() - y < margin) continue;
    diff = std::max(diff, std::abs(pf[j] - pc[j]));
    peak = std::max(peak, std::abs(pc[j]));
  }
  const double rel = diff / peak;
  const double tol_abs = 1e-4 * scale;
  const double tol_rel = 1e-3 * scale;
  return {err_conv <= tol_abs && err_fd <= tol_abs && rel <= tol_rel,
          fmt("Gaussian max error: convolution %.2e, CN %.2e (tol %.0e); payoff FD vs convolution "
              "%.2e relative (tol %.0e)",
              err_conv, err_fd, tol_abs, rel, tol_rel)};
}

Outcome pricing_cross(double scale) {
  using namespace pricing;
  double worst_gap = 0.0;
  double best_gap = INFINITY;
  double worst_id1 = 0.0;
  double worst_id2 = 0.0;
  std::size_t points = 0;
  for (double tau : {0.25, 0.5, 0.75}) {
    for (double z : {0.05, 1.5, 3.5}) {
      for (double x : {50.0, 100.0, 150.0}) {
        PricingInputs in;
        in.r = 0.05;
        in.K = std::exp(std::exp(1.0));
        in.T = 1.0;
        in.beta = 2.0;
        in.mu = 0.1;
        in.sigma = 0.2;
        in.tau = tau;
        in.z = z;
        in.X = x;
        in.w_terminal = 0.3;
        const DerivedCoefficients c = derive_coefficients(in);
        const double tb = std::pow(in.T, in.beta);
        const double id1 = std::abs(c.lambda * in.r * std::abs(in.z) - tb * c.B * c.B);
        const double id2 = std::abs(2.0 * c.p * c.lambda - c.B * c.B * tb * tb * in.tau);
        worst_id1 = std::max(worst_id1, id1);
        worst_id2 = std::max(worst_id2, id2);
        const double closed = price_ergodic_bs(in).value;
        const double pde = price_via_pde(in);
        const double gap = std::abs(closed - pde) / std::abs(pde);
        worst_gap = std::max(worst_gap, gap);
        best_gap = std::min(best_gap, gap);
        ++points;
      }
    }
  }
  const double tol_gap = 1e-2 * scale;
  const double tol_id = 1e-12 * scale;
  return {worst_gap <= tol_gap && worst_id1 <= tol_id && worst_id2 <= tol_id,
          fmt("%zu points: closed form vs PDE relative gap %.3g..%.3g (tol %.0e); "
              "|lambda r|z| - T^b B^2| <= %.2e, |2 p lambda - B^2 T^2b tau| <= %.3g (tol %.0e)",
              points, best_gap, worst_gap, tol_gap, worst_id1, worst_id2, tol_id)};
}

Outcome rotation_price(double scale) {
  pricing::PricingInputs in;
  in.r = 0.05;
  in.t = 1.0;
  in.w_terminal = 1.0;
  in.T = 1.0;
  in.beta = 2.0;
  in.s_t0 = 100.0;
  in.K = 50.0;
  const double c = pricing::price_rotation_call(in).value;
  in.w_terminal = 0.0;
  const double c0 = pricing::price_rotation_call(in).value;
  const double want0 = -std::exp(-in.r * in.t) * in.K;
  const double tol = 1e-3 * scale;
  return {std::abs(c - (-48.221)) <= tol && c0 == want0,
          fmt("C = %.6f vs -48.221 (tol %.0e); W_T=0: %.15g vs %.15g", c, tol, c0, want0)};
}

Outcome plot_data(double scale) {
  const GbmParams gbm{0.1, 0.2, 100.0};
  const TimeGrid grid = TimeGrid::uniform(1.0, 1e-3);
  const WienerPath w = stochastic::simulate_wiener(grid, derive_seed(kMasterSeed, 12));
  const SamplePath price = stochastic::simulate_gbm(gbm, w);
  const auto pz = ergodic::z_from_gbm_price(gbm, price, 2.0);
  const trading::RecurrenceSet rec = trading::detect_recurrences(pz.z);
  const double strike = 50.0;
  const auto theta = rotation::theta_process(pz.z, price, strike, pz.config);

  std::stringstream f1;
  std::stringstream f2;
  std::stringstream f3;
  io::write_fig1_csv(f1, price);
  io::write_fig2_csv(f2, pz.z, rec);
  io::write_fig3_csv(f3, price, pz.z, theta);
  const io::CsvTable t1 = io::read_csv_table(f1);
  const io::CsvTable t2 = io::read_csv_table(f2);
  const io::CsvTable t3 = io::read_csv_table(f3);

  std::string why;
  const std::size_t p1 = t1.column("price");
  bool ok = t1.rows.size() == grid.size();
  for (const auto& r : t1.rows) ok = ok && r[p1] > 0.0;
  if (!ok) why += "fig1 ";

  // Markers sit on the reference level; Z takes both signs.
  const std::size_t zc = t2.column("z");
  const std::size_t mc = t2.column("recurrence");
  double zmax = 0.0;
  for (const auto& r : t2.rows) zmax = std::max(zmax, std::abs(r[zc]));
  const double marker_tol = 1e-9 * scale * std::max(zmax, 1e-300);
  std::size_t markers = 0;
  std::size_t interior = 0;
  bool pos = false;
  bool neg = false;
  bool f2ok = true;
  for (const auto& r : t2.rows) {
    pos = pos || r[zc] > 0.0;
    neg = neg || r[zc] < 0.0;
    if (r[mc] == 1.0) {
      ++markers;
      interior += (r[0] > 0.0 && r[0] < grid.horizon()) ? 1 : 0;
      f2ok = f2ok && std::abs(r[zc]) <= marker_tol;
    }
  }
  f2ok = f2ok && markers == rec.taus.size() && interior >= 1 && pos && neg;
  if (!f2ok) why += "fig2 ";
  ok = ok && f2ok;

  // Circle position is a function of price: (theta - z)/ln(1 - K/S) is the
  // same constant W_T/T^beta on every row.
  const std::size_t pc = t3.column("price");
  const std::size_t zc3 = t3.column("z");
  const std::size_t tc = t3.column("theta");
  const std::size_t xc = t3.column("circle_x");
  const std::size_t rc = t3.column("circle_re");
  const std::size_t ic = t3.column("circle_im");
  const double slope = pz.config.w_terminal / pz.config.t_pow_beta();
  bool f3ok = t3.rows.size() == grid.size();
  double worst = 0.0;
  for (const auto& r : t3.rows) {
    const double x = r[xc];
    f3ok = f3ok && x >= 0.0 && x < 1.0;
    f3ok = f3ok && std::abs(r[rc] * r[rc] + r[ic] * r[ic] - 1.0) <= 1e-12 * scale;
    const double predicted = rotation::reduce_unit(r[zc3] + slope * std::log1p(-strike / r[pc]));
    double d = std::abs(predicted - x);
    d = std::min(d, 1.0 - d);
    worst = std::max(worst, d);
    f3ok = f3ok && std::abs(rotation::reduce_unit(r[tc]) - x) <= 1e-15;
  }
  f3ok = f3ok && worst <= 1e-9 * scale;
  if (!f3ok) why += "fig3 ";
  ok = ok && f3ok;
  return {ok, fmt("fig1 %zu rows; fig2 %zu markers (%zu interior); fig3 max circle residual %.2e%s%s",
                  t1.rows.size(), markers, interior, worst, why.empty() ? "" : "; failed: ",
                  why.c_str())};
}

using Check = Outcome (*)(double);

struct Entry {
  const char* name;
  Check check;
};

constexpr Entry kEntries[kCriterionCount] = {
    {"EMO/IEMO round trip", emo_round_trip},
    {"constant annihilation", constant_annihilation},
    {"mean reversion of GBM Z paths", mean_reversion},
    {"ergodicity diagnostic", ergodicity},
    {"sine-path trading fixture", sine_fixture},
    {"equidistribution", equidistribution},
    {"Kac return times", kac},
    {"Birkhoff averages", birkhoff},
    {"heat solver semigroup", heat},
    {"pricing cross-validation", pricing_cross},
    {"rotation price formula", rotation_price},
    {"plot data structure", plot_data},
};

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCriterionCount) fail(ErrorCode::kInvalidArgument, "no criterion " + std::to_string(id));
  return kEntries[id - 1].name;
}

std::vector<CriterionResult> run_validation(const ValidationOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  if (options.only < 0 || options.only > kCriterionCount) {
    fail(ErrorCode::kInvalidArgument, "validation: criterion id out of range");
  }
  if (!(options.tolerance_scale >= 0.0) || !std::isfinite(options.tolerance_scale)) {
    fail(ErrorCode::kInvalidArgument, "validation: tolerance scale must be finite and >= 0");
  }
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (options.only != 0 && id != options.only) continue;
    CriterionResult r;
    r.id = id;
    r.name = kEntries[id - 1].name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = kEntries[id - 1].check(options.tolerance_scale);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace logerg::validation
