#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grid.hpp"
#include "stochastic.hpp"

namespace logerg::trading {

/// Times at which Z returns to its reference level 0.
struct RecurrenceSet {
  std::vector<double> taus;  ///< strictly increasing
  double eps = 0.0;
};

enum class Side { kAbove, kBelow };
std::string to_string(Side side);

/// Sojourn of Z between two consecutive recurrence times.
struct Excursion {
  std::size_t index = 0;  ///< i of tau_i
  double start = 0.0;     ///< tau_i
  double end = 0.0;       ///< tau_{i+1}
  double delta = 0.0;     ///< end - start
  Side side = Side::kAbove;
  double peak = 0.0;      ///< M_i = max |Z| on the excursion
  double oet = 0.0;       ///< t_{M_i}, the order execution time
};

struct SojournStats {
  std::optional<double> mean_above;  ///< empty when there is no above-excursion
  std::optional<double> mean_below;
  std::size_t count_above = 0;
  std::size_t count_below = 0;
};

/// Excursions with the entry price X(tau_i) and exit price X(t_M) of each trade.
struct TradeLedger {
  std::vector<Excursion> excursions;
  std::vector<double> entry_price;
  std::vector<double> exit_price;
  double long_leverage = 1.0;   ///< l
  double short_leverage = 1.0;  ///< s
};

/// How the class indicator of the profit formula is read.
enum class IndicatorMode {
  kPerExcursion,  ///< each excursion contributes to its own class only
  kLiteral,       ///< indicator = class nonempty; every excursion enters both sums
};

/// Detects zero crossings (sign changes, located by linear interpolation) and,
/// when eps > 0, every node with |Z| <= eps. With eps = 0 a node that sits on
/// zero counts only at the path boundary or when Z changes sign across it;
/// tangencies are ignored. Values within 64 ulp of the path scale are treated
/// as zero. Candidates closer than one grid step to the previous kept time are
/// dropped. A path that is identically zero yields the single time 0.
RecurrenceSet detect_recurrences(const SamplePath& z, double eps = 0.0);

/// One excursion per consecutive recurrence pair that contains a grid node
/// with Z != 0. Peak ties resolve to the earliest node.
std::vector<Excursion> build_excursions(const SamplePath& z, const RecurrenceSet& rec);

SojournStats sojourn_stats(std::span<const Excursion> excursions);

/// Prices are read from the price path by linear interpolation.
TradeLedger build_ledger(const SamplePath& price, std::vector<Excursion> excursions,
                         double long_leverage, double short_leverage);

double trade_profit(const TradeLedger& ledger,
                    IndicatorMode mode = IndicatorMode::kPerExcursion);

enum class Direction { kLong, kShort };
std::string to_string(Direction direction);

struct Signal {
  double entry_time = 0.0;
  Direction direction = Direction::kLong;
  double exit_time = 0.0;
  double entry_z = 0.0;
  double exit_z = 0.0;
};

struct SignalReport {
  std::vector<Signal> signals;
};

/// Long when Z is below the reference level, short when above; exit at the OET.
SignalReport generate_signals(const SamplePath& z, std::span<const Excursion> excursions);

/// Which printed form of the GBM recurrence-time dynamics to integrate.
enum class RecurrenceSdeForm {
  kTheorem,       ///< d tau = -[(sigma + q tau)/q] dW/W
  kPrintedFinal,  ///< d tau = -[sigma/(sigma^2/2 - mu) + tau] dW/W
};

struct RecurrenceSdeOptions {
  RecurrenceSdeForm form = RecurrenceSdeForm::kTheorem;
  double start_time = 0.0;  ///< integration starts at this grid node
};

struct TauPath {
  TimeGrid grid;
  std::size_t start_index = 0;
  std::vector<double> taus;  ///< taus[j] lives on node start_index + j
  stochastic::GbmParams params;
  std::optional<std::size_t> halted_at;  ///< node where W changed sign
  std::string halt_reason;
};

/// Euler scheme tau_{k+1} = tau_k - c(tau_k) dW_k / W_k. Throws kSingular when
/// q = 0 or |W_k| < 1e-12; stops early (halted_at) when W changes sign.
TauPath simulate_recurrence_sde(const stochastic::GbmParams& params,
                                const stochastic::WienerPath& wiener, double tau0,
                                const RecurrenceSdeOptions& options = {});

struct BoundEntry {
  std::size_t index = 0;
  bool contained = false;  ///< tau_i < t_M < tau_{i+1}
  std::optional<double> ratio;  ///< sigma(t_M)/mu(t_M); empty when mu = 0
  double dt_m = 0.0;            ///< t_M - tau_i
  double dtau = 0.0;            ///< tau_{i+1} - tau_i
  bool flagged = false;         ///< ratio > dtau
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  double flagged_fraction = 0.0;
  bool all_contained = true;
};

/// Tabulates the order-execution-time relations per excursion; nothing here is
/// asserted. `state` (optional) supplies x for the coefficient evaluation.
BoundReport oet_bound_report(std::span<const Excursion> excursions,
                             const stochastic::ItoParams& params,
                             const SamplePath* state = nullptr);

}  // namespace logerg::trading
