#include "io.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "numerics.hpp"

namespace logerg::io {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(ErrorCode::kIo, "line " + std::to_string(line) + ": cannot parse number '" +
                             std::string(s) + "'");
  }
  return v;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

ordered_json jopt(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

void write_path_csv(std::ostream& os, const SamplePath& path, const PathHeader* header) {
  if (header) {
    ordered_json h;
    h["kind"] = std::string(to_string(header->kind));
    h["seed"] = header->seed ? ordered_json(*header->seed) : ordered_json(nullptr);
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : header->params) params[k] = v;
    h["params"] = params;
    os << "# " << h.dump() << '\n';
  }
  os << "t,value\n";
  const TimeGrid& g = path.grid();
  for (std::size_t k = 0; k < path.size(); ++k) {
    os << format_double(g.time(k)) << ',' << format_double(path[k]) << '\n';
  }
}

SamplePath read_path_csv(std::istream& is, PathKind fallback, PathHeader* header_out) {
  std::string line;
  std::size_t lineno = 0;
  PathKind kind = fallback;
  bool seen_columns = false;
  std::vector<double> ts;
  std::vector<double> vs;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto h = ordered_json::parse(line.substr(1), nullptr, false);
      if (h.is_discarded() || !h.is_object()) {
        fail(ErrorCode::kIo, "line " + std::to_string(lineno) + ": malformed JSON header");
      }
      if (h.contains("kind")) kind = path_kind_from_string(h["kind"].get<std::string>());
      if (header_out) {
        header_out->kind = kind;
        if (h.contains("seed") && h["seed"].is_number_unsigned()) {
          header_out->seed = h["seed"].get<std::uint64_t>();
        }
        if (h.contains("params") && h["params"].is_object()) {
          for (const auto& [k, v] : h["params"].items()) {
            if (v.is_number()) header_out->params.emplace_back(k, v.get<double>());
          }
        }
      }
      continue;
    }
    if (!seen_columns) {
      if (line.rfind("t,", 0) != 0) {
        fail(ErrorCode::kIo, "line " + std::to_string(lineno) + ": expected column header 't,value'");
      }
      seen_columns = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      fail(ErrorCode::kIo, "line " + std::to_string(lineno) + ": expected two columns");
    }
    ts.push_back(parse_double(std::string_view(line).substr(0, comma), lineno));
    vs.push_back(parse_double(std::string_view(line).substr(comma + 1), lineno));
  }
  if (ts.size() < 3) fail(ErrorCode::kIo, "path file: need at least 3 rows");
  if (ts.front() != 0.0) fail(ErrorCode::kIo, "path file: times must start at 0");
  const TimeGrid grid = TimeGrid::uniform(ts.back(), ts.back() / static_cast<double>(ts.size() - 1));
  if (grid.size() != ts.size()) fail(ErrorCode::kIo, "path file: time column is not uniform");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (std::abs(ts[k] - grid.time(k)) > 1e-9 * std::max(1.0, grid.horizon())) {
      fail(ErrorCode::kIo, "path file: time column is not uniform at row " + std::to_string(k));
    }
  }
  if (header_out) header_out->kind = kind;
  return SamplePath(grid, std::move(vs), kind);
}

void write_path_file(const std::string& file, const SamplePath& path, const PathHeader* header) {
  std::ofstream os(file, std::ios::binary);
  if (!os) fail(ErrorCode::kIo, "cannot open '" + file + "' for writing");
  write_path_csv(os, path, header);
  if (!os) fail(ErrorCode::kIo, "write failed: '" + file + "'");
}

SamplePath read_path_file(const std::string& file, PathKind fallback, PathHeader* header_out) {
  std::ifstream is(file, std::ios::binary);
  if (!is) fail(ErrorCode::kIo, "cannot open '" + file + "'");
  return read_path_csv(is, fallback, header_out);
}

void write_wide_csv(std::ostream& os, std::span<const SamplePath> paths) {
  if (paths.empty()) fail(ErrorCode::kInvalidArgument, "wide csv: no paths");
  for (const auto& p : paths) require_same_grid(paths[0].grid(), p.grid(), "wide csv");
  os << 't';
  char name[32];
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::snprintf(name, sizeof name, ",path_%04zu", i);
    os << name;
  }
  os << '\n';
  const TimeGrid& g = paths[0].grid();
  for (std::size_t k = 0; k < g.size(); ++k) {
    os << format_double(g.time(k));
    for (const auto& p : paths) os << ',' << format_double(p[k]);
    os << '\n';
  }
}

void write_diagnostic_csv(std::ostream& os, const ergodic::DiagnosticCurve& curve) {
  os << "horizon,value\n";
  for (std::size_t i = 0; i < curve.horizons.size(); ++i) {
    os << format_double(curve.horizons[i]) << ',' << format_double(curve.values[i]) << '\n';
  }
}

void write_excursions_csv(std::ostream& os, const trading::TradeLedger& ledger) {
  os << "index,start,end,delta,side,peak,oet,entry_price,exit_price\n";
  for (std::size_t i = 0; i < ledger.excursions.size(); ++i) {
    const auto& e = ledger.excursions[i];
    os << e.index << ',' << format_double(e.start) << ',' << format_double(e.end) << ','
       << format_double(e.delta) << ',' << trading::to_string(e.side) << ','
       << format_double(e.peak) << ',' << format_double(e.oet) << ','
       << format_double(ledger.entry_price[i]) << ',' << format_double(ledger.exit_price[i]) << '\n';
  }
}

void write_signals_csv(std::ostream& os, const trading::SignalReport& report) {
  os << "entry_time,direction,exit_time,entry_z,exit_z\n";
  for (const auto& s : report.signals) {
    os << format_double(s.entry_time) << ',' << trading::to_string(s.direction) << ','
       << format_double(s.exit_time) << ',' << format_double(s.entry_z) << ','
       << format_double(s.exit_z) << '\n';
  }
}

std::string signals_json(const trading::SignalReport& report) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : report.signals) {
    arr.push_back({{"entry_time", s.entry_time},
                   {"direction", trading::to_string(s.direction)},
                   {"exit_time", s.exit_time},
                   {"entry_z", s.entry_z},
                   {"exit_z", s.exit_z}});
  }
  return ordered_json{{"signals", arr}}.dump(2);
}

void write_bound_report_csv(std::ostream& os, const trading::BoundReport& report) {
  os << "index,contained,ratio,dt_m,dtau,flagged\n";
  for (const auto& e : report.entries) {
    os << e.index << ',' << (e.contained ? 1 : 0) << ',' << opt(e.ratio) << ','
       << format_double(e.dt_m) << ',' << format_double(e.dtau) << ',' << (e.flagged ? 1 : 0)
       << '\n';
  }
}

std::string bound_report_json(const trading::BoundReport& report) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : report.entries) {
    arr.push_back({{"index", e.index},
                   {"contained", e.contained},
                   {"ratio", jopt(e.ratio)},
                   {"dt_m", e.dt_m},
                   {"dtau", e.dtau},
                   {"flagged", e.flagged}});
  }
  return ordered_json{{"entries", arr},
                      {"flagged_fraction", report.flagged_fraction},
                      {"all_contained", report.all_contained}}
      .dump(2);
}

void write_fig1_csv(std::ostream& os, const SamplePath& price) {
  os << "t,price\n";
  for (std::size_t k = 0; k < price.size(); ++k) {
    os << format_double(price.grid().time(k)) << ',' << format_double(price[k]) << '\n';
  }
}

void write_fig2_csv(std::ostream& os, const SamplePath& z, const trading::RecurrenceSet& rec) {
  os << "t,z,recurrence\n";
  const TimeGrid& g = z.grid();
  const double snap = 1e-9 * g.step();
  std::size_t r = 0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double t = g.time(k);
    bool marked = false;
    while (r < rec.taus.size() && rec.taus[r] <= t + snap) {
      if (std::abs(rec.taus[r] - t) <= snap) {
        marked = true;
      } else {
        os << format_double(rec.taus[r]) << ',' << format_double(z.at_time(rec.taus[r])) << ",1\n";
      }
      ++r;
    }
    os << format_double(t) << ',' << format_double(z[k]) << ',' << (marked ? 1 : 0) << '\n';
  }
}

void write_fig3_csv(std::ostream& os, const SamplePath& price, const SamplePath& z,
                    const rotation::ThetaPath& theta) {
  require_same_grid(price.grid(), theta.theta.grid(), "fig3");
  require_same_grid(price.grid(), z.grid(), "fig3");
  os << "t,price,z,theta,circle_x,circle_re,circle_im\n";
  for (std::size_t k = 0; k < price.size(); ++k) {
    const double x = rotation::reduce_unit(theta.theta[k]);
    os << format_double(price.grid().time(k)) << ',' << format_double(price[k]) << ','
       << format_double(z[k]) << ',' << format_double(theta.theta[k]) << ',' << format_double(x) << ','
       << format_double(std::cos(2.0 * kPi * x)) << ',' << format_double(std::sin(2.0 * kPi * x))
       << '\n';
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  fail(ErrorCode::kIo, "csv: missing column '" + name + "'");
}

CsvTable read_csv_table(std::istream& is) {
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
      const auto comma = l.find(',', pos);
      cells.push_back(l.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return cells;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (table.columns.empty()) {
      table.columns = split(line);
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != table.columns.size()) {
      fail(ErrorCode::kIo, "csv line " + std::to_string(lineno) + ": expected " +
                               std::to_string(table.columns.size()) + " cells");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      row.push_back(c.empty() ? std::numeric_limits<double>::quiet_NaN() : parse_double(c, lineno));
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) fail(ErrorCode::kIo, "csv: no header row");
  return table;
}

void write_orbit_csv(std::ostream& os, std::span<const rotation::OrbitPoint> points) {
  os << "step,x\n";
  for (const auto& p : points) os << p.step << ',' << format_double(p.x) << '\n';
}

std::string pricing_csv_header() {
  return "r,K,T,beta,mu,sigma,tau,z,w_terminal,s_t0,X,t,"
         "rotation_price,rotation_negative,rotation_error,"
         "ergodic_bs_price,ergodic_bs_negative,ergodic_bs_error,"
         "pde_price,pde_error,relative_gap";
}

namespace {

std::string csv_text(const std::string& s) {
  if (s.empty()) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string pricing_csv_row(const pricing::PricingRecord& rec) {
  const auto& in = rec.inputs;
  std::ostringstream os;
  for (double v : {in.r, in.K, in.T, in.beta, in.mu, in.sigma, in.tau, in.z, in.w_terminal,
                   in.s_t0, in.X, in.t}) {
    os << format_double(v) << ',';
  }
  os << (rec.rotation ? format_double(rec.rotation->value) : "") << ','
     << (rec.rotation ? (rec.rotation->negative ? "1" : "0") : "") << ','
     << csv_text(rec.rotation_error) << ','
     << (rec.ergodic_bs ? format_double(rec.ergodic_bs->value) : "") << ','
     << (rec.ergodic_bs ? (rec.ergodic_bs->negative ? "1" : "0") : "") << ','
     << csv_text(rec.ergodic_bs_error) << ',' << opt(rec.pde) << ',' << csv_text(rec.pde_error)
     << ',' << opt(rec.relative_gap);
  return os.str();
}

std::string pricing_json(const pricing::PricingRecord& rec) {
  const auto& in = rec.inputs;
  ordered_json j;
  j["inputs"] = {{"r", in.r},     {"K", in.K},         {"T", in.T},
                 {"beta", in.beta}, {"mu", in.mu},       {"sigma", in.sigma},
                 {"tau", in.tau}, {"z", in.z},         {"w_terminal", in.w_terminal},
                 {"s_t0", in.s_t0}, {"X", in.X},       {"t", in.t}};
  auto engine = [](const std::optional<pricing::PriceResult>& r, const std::string& err) {
    ordered_json e;
    e["price"] = r ? ordered_json(r->value) : ordered_json(nullptr);
    e["negative"] = r ? ordered_json(r->negative) : ordered_json(nullptr);
    e["error"] = err.empty() ? ordered_json(nullptr) : ordered_json(err);
    return e;
  };
  j["rotation"] = engine(rec.rotation, rec.rotation_error);
  j["ergodic_bs"] = engine(rec.ergodic_bs, rec.ergodic_bs_error);
  j["pde"] = {{"price", jopt(rec.pde)},
              {"error", rec.pde_error.empty() ? ordered_json(nullptr) : ordered_json(rec.pde_error)}};
  if (rec.coefficients) {
    const auto& c = *rec.coefficients;
    j["coefficients"] = {{"q", c.q},   {"B", c.B},           {"eta", c.eta}, {"p", c.p},
                         {"lambda", c.lambda}, {"y", c.y}, {"a", c.a},     {"b", c.b}};
  } else {
    j["coefficients"] = nullptr;
  }
  j["relative_gap"] = jopt(rec.relative_gap);
  return j.dump(2);
}

}  // namespace logerg::io
