#include "trading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace logerg::trading {

std::string to_string(Side side) { return side == Side::kAbove ? "above" : "below"; }

std::string to_string(Direction direction) {
  return direction == Direction::kLong ? "long" : "short";
}

namespace {

int classify(double value, double band) {
  if (std::abs(value) <= band) return 0;
  return value > 0.0 ? 1 : -1;
}

}  // namespace

RecurrenceSet detect_recurrences(const SamplePath& z, double eps) {
  if (!(eps >= 0.0)) fail(ErrorCode::kInvalidArgument, "detect_recurrences: eps must be >= 0");
  const TimeGrid& grid = z.grid();
  const std::size_t n = z.size();

  double scale = 0.0;
  for (double v : z.values()) scale = std::max(scale, std::abs(v));
  const double band = std::max(eps, 64.0 * std::numeric_limits<double>::epsilon() * scale);

  std::vector<int> sign(n);
  for (std::size_t k = 0; k < n; ++k) sign[k] = classify(z[k], band);

  RecurrenceSet rec{{}, eps};
  if (std::all_of(sign.begin(), sign.end(), [](int s) { return s == 0; })) {
    rec.taus.push_back(0.0);
    return rec;
  }

  std::vector<double> candidates;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sign[k] * sign[k + 1] == -1) {
      const double frac = z[k] / (z[k] - z[k + 1]);
      candidates.push_back(grid.time(k) + frac * grid.step());
    }
  }
  // Runs of nodes inside the zero band.
  for (std::size_t k = 0; k < n;) {
    if (sign[k] != 0) {
      ++k;
      continue;
    }
    std::size_t j = k;
    while (j + 1 < n && sign[j + 1] == 0) ++j;
    if (eps > 0.0) {
      for (std::size_t i = k; i <= j; ++i) candidates.push_back(grid.time(i));
    } else if (k == 0) {
      candidates.push_back(0.0);
    } else if (j == n - 1) {
      candidates.push_back(grid.horizon());
    } else if (sign[k - 1] * sign[j + 1] == -1) {
      candidates.push_back(0.5 * (grid.time(k) + grid.time(j)));
    }
    k = j + 1;
  }

  std::sort(candidates.begin(), candidates.end());
  const double min_gap = grid.step() * (1.0 - 1e-9);
  for (double t : candidates) {
    if (rec.taus.empty() || t - rec.taus.back() >= min_gap) rec.taus.push_back(t);
  }
  return rec;
}

std::vector<Excursion> build_excursions(const SamplePath& z, const RecurrenceSet& rec) {
  std::vector<Excursion> out;
  if (rec.taus.size() < 2) return out;
  const TimeGrid& grid = z.grid();
  const double dt = grid.step();
  const double slack = 1e-9 * dt;

  for (std::size_t i = 0; i + 1 < rec.taus.size(); ++i) {
    const double start = rec.taus[i];
    const double end = rec.taus[i + 1];
    const auto first = static_cast<std::size_t>(std::max(0.0, std::floor(start / dt)));
    double peak = 0.0;
    std::optional<std::size_t> arg;
    for (std::size_t k = first; k < z.size() && grid.time(k) < end - slack; ++k) {
      if (grid.time(k) <= start + slack) continue;
      const double a = std::abs(z[k]);
      if (!arg || a > peak) {
        peak = a;
        arg = k;
      }
    }
    if (!arg || peak == 0.0) continue;
    Excursion e;
    e.index = i;
    e.start = start;
    e.end = end;
    e.delta = end - start;
    e.side = z[*arg] > 0.0 ? Side::kAbove : Side::kBelow;
    e.peak = peak;
    e.oet = grid.time(*arg);
    out.push_back(e);
  }
  return out;
}

SojournStats sojourn_stats(std::span<const Excursion> excursions) {
  SojournStats stats;
  double sum_above = 0.0;
  double sum_below = 0.0;
  for (const auto& e : excursions) {
    if (e.side == Side::kAbove) {
      sum_above += e.delta;
      ++stats.count_above;
    } else {
      sum_below += e.delta;
      ++stats.count_below;
    }
  }
  if (stats.count_above > 0) stats.mean_above = sum_above / static_cast<double>(stats.count_above);
  if (stats.count_below > 0) stats.mean_below = sum_below / static_cast<double>(stats.count_below);
  return stats;
}

TradeLedger build_ledger(const SamplePath& price, std::vector<Excursion> excursions,
                         double long_leverage, double short_leverage) {
  if (!(long_leverage >= 0.0) || !(short_leverage >= 0.0)) {
    fail(ErrorCode::kInvalidArgument, "trade ledger: leverages must be nonnegative");
  }
  TradeLedger ledger;
  ledger.long_leverage = long_leverage;
  ledger.short_leverage = short_leverage;
  for (const auto& e : excursions) {
    const double entry = price.at_time(e.start);
    const double exit = price.at_time(e.oet);
    if (!(entry > 0.0) || !(exit > 0.0)) {
      fail(ErrorCode::kDomain, "trade ledger: non-positive price for excursion " +
                                   std::to_string(e.index));
    }
    ledger.entry_price.push_back(entry);
    ledger.exit_price.push_back(exit);
  }
  ledger.excursions = std::move(excursions);
  return ledger;
}

double trade_profit(const TradeLedger& ledger, IndicatorMode mode) {
  if (!(ledger.long_leverage >= 0.0) || !(ledger.short_leverage >= 0.0)) {
    fail(ErrorCode::kInvalidArgument, "trade_profit: leverages must be nonnegative");
  }
  const std::size_t n = ledger.excursions.size();
  if (ledger.entry_price.size() != n || ledger.exit_price.size() != n) {
    fail(ErrorCode::kInvalidArgument, "trade_profit: one (entry, exit) pair per excursion required");
  }
  double below = 0.0;
  double above = 0.0;
  double all = 0.0;
  bool any_below = false;
  bool any_above = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double move = std::abs(ledger.entry_price[i] - ledger.exit_price[i]);
    all += move;
    if (ledger.excursions[i].side == Side::kBelow) {
      below += move;
      any_below = true;
    } else {
      above += move;
      any_above = true;
    }
  }
  if (mode == IndicatorMode::kLiteral) {
    return ledger.long_leverage * (any_below ? all : 0.0) +
           ledger.short_leverage * (any_above ? all : 0.0);
  }
  return ledger.long_leverage * below + ledger.short_leverage * above;
}

SignalReport generate_signals(const SamplePath& z, std::span<const Excursion> excursions) {
  SignalReport report;
  for (const auto& e : excursions) {
    Signal s;
    s.entry_time = e.start;
    s.direction = e.side == Side::kBelow ? Direction::kLong : Direction::kShort;
    s.exit_time = e.oet;
    s.entry_z = z.at_time(e.start);
    s.exit_z = z.at_time(e.oet);
    report.signals.push_back(s);
  }
  return report;
}

TauPath simulate_recurrence_sde(const stochastic::GbmParams& params,
                                const stochastic::WienerPath& wiener, double tau0,
                                const RecurrenceSdeOptions& options) {
  params.validate();
  const double q = params.q();
  if (std::abs(q) < 1e-14) {
    fail(ErrorCode::kSingular,
         "recurrence sde: q = mu - sigma^2/2 = 0 makes the drift coefficient singular");
  }
  const TimeGrid& grid = wiener.grid();
  const auto start = static_cast<std::size_t>(std::llround(options.start_time / grid.step()));
  if (start >= grid.steps()) {
    fail(ErrorCode::kInvalidArgument, "recurrence sde: start time beyond the grid");
  }

  TauPath out{grid, start, {tau0}, params, std::nullopt, {}};
  for (std::size_t k = start; k < grid.steps(); ++k) {
    const double w = wiener[k];
    if (std::abs(w) < 1e-12) {
      fail(ErrorCode::kSingular, "recurrence sde: |W| < 1e-12 at index " + std::to_string(k) +
                                     " (dW/W singular)");
    }
    if (k > start && (w > 0.0) != (wiener[k - 1] > 0.0)) {
      out.halted_at = k;
      out.halt_reason = "W changed sign at index " + std::to_string(k);
      break;
    }
    const double tau = out.taus.back();
    const double coef = options.form == RecurrenceSdeForm::kTheorem
                            ? (params.sigma + q * tau) / q
                            : params.sigma / (0.5 * params.sigma * params.sigma - params.mu) + tau;
    out.taus.push_back(tau - coef * wiener.increment(k) / w);
  }
  return out;
}

BoundReport oet_bound_report(std::span<const Excursion> excursions,
                             const stochastic::ItoParams& params, const SamplePath* state) {
  if (!params.mu || !params.sigma) {
    fail(ErrorCode::kInvalidArgument, "oet_bound_report: drift and volatility functions are required");
  }
  BoundReport report;
  std::size_t flagged = 0;
  for (const auto& e : excursions) {
    BoundEntry entry;
    entry.index = e.index;
    entry.contained = e.start < e.oet && e.oet < e.end;
    entry.dt_m = e.oet - e.start;
    entry.dtau = e.end - e.start;
    const double x = state ? state->at_time(e.oet) : 0.0;
    const double mu = params.mu(e.oet, x);
    if (mu != 0.0) entry.ratio = params.sigma(e.oet, x) / mu;
    entry.flagged = entry.ratio && *entry.ratio > entry.dtau;
    flagged += entry.flagged ? 1 : 0;
    report.all_contained = report.all_contained && entry.contained;
    report.entries.push_back(entry);
  }
  if (!excursions.empty()) {
    report.flagged_fraction = static_cast<double>(flagged) / static_cast<double>(excursions.size());
  }
  return report;
}

}  // namespace logerg::trading
