#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ergodic.hpp"
#include "grid.hpp"
#include "pricing.hpp"
#include "rotation.hpp"
#include "trading.hpp"

namespace logerg::io {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Metadata line of a path file: `# {"kind":..,"seed":..,"params":{..}}`.
struct PathHeader {
  PathKind kind = PathKind::kPrice;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, double>> params;
};

/// Columns t,value, preceded by the header line when one is given.
void write_path_csv(std::ostream& os, const SamplePath& path, const PathHeader* header = nullptr);

/// Reads t,value rows (a header line is optional). The times must form a
/// uniform grid starting at 0. The kind comes from the header, else `fallback`.
SamplePath read_path_csv(std::istream& is, PathKind fallback = PathKind::kPrice,
                         PathHeader* header_out = nullptr);

void write_path_file(const std::string& file, const SamplePath& path,
                     const PathHeader* header = nullptr);
SamplePath read_path_file(const std::string& file, PathKind fallback = PathKind::kPrice,
                          PathHeader* header_out = nullptr);

/// t,path_0000,path_0001,... on a shared grid.
void write_wide_csv(std::ostream& os, std::span<const SamplePath> paths);

void write_diagnostic_csv(std::ostream& os, const ergodic::DiagnosticCurve& curve);

void write_excursions_csv(std::ostream& os, const trading::TradeLedger& ledger);
void write_signals_csv(std::ostream& os, const trading::SignalReport& report);
std::string signals_json(const trading::SignalReport& report);
void write_bound_report_csv(std::ostream& os, const trading::BoundReport& report);
std::string bound_report_json(const trading::BoundReport& report);

/// Price against time: t,price.
void write_fig1_csv(std::ostream& os, const SamplePath& price);
/// Z against time with recurrences marked: t,z,recurrence. A recurrence that
/// falls between nodes gets its own row (z interpolated, marker 1).
void write_fig2_csv(std::ostream& os, const SamplePath& z, const trading::RecurrenceSet& rec);
/// Price against circle position: t,price,z,theta,circle_x,circle_re,circle_im
/// with circle_x = theta mod 1 and (re, im) = e^{2 pi i circle_x}.
void write_fig3_csv(std::ostream& os, const SamplePath& price, const SamplePath& z,
                    const rotation::ThetaPath& theta);

void write_orbit_csv(std::ostream& os, std::span<const rotation::OrbitPoint> points);

/// Numeric table with a header row; '#' lines are skipped, empty cells read as NaN.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws kIo when absent.
  std::size_t column(const std::string& name) const;
};
CsvTable read_csv_table(std::istream& is);

/// Column names of the pricing sweep.
std::string pricing_csv_header();
std::string pricing_csv_row(const pricing::PricingRecord& rec);
std::string pricing_json(const pricing::PricingRecord& rec);

}  // namespace logerg::io
