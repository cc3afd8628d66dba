// logerg: simulation campaigns, trading analysis, rotation diagnostics,
// pricing sweeps and the acceptance suite, on top of the C API.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "logerg/logerg.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct CliFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(logerg_status st, const std::string& what) {
  if (st == LOGERG_OK) return;
  char buf[1024];
  logerg_copy_last_error(buf, sizeof buf);
  throw CliFailure(what + ": " + logerg_status_name(st) + ": " + buf);
}

struct PathDeleter {
  void operator()(logerg_path* p) const { logerg_path_free(p); }
};
struct TradeDeleter {
  void operator()(logerg_trade* t) const { logerg_trade_free(t); }
};
using PathPtr = std::unique_ptr<logerg_path, PathDeleter>;
using TradePtr = std::unique_ptr<logerg_trade, TradeDeleter>;

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string indexed(const std::string& stem, std::size_t i, const std::string& ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04zu.%s", stem.c_str(), i, ext.c_str());
  return buf;
}

// JSON config files. Nested objects are subcommand sections; a manifest
// written by a previous run is accepted as-is (its "config" member is used).
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return section(app, default_also).dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& is) const override {
    ordered_json j;
    try {
      j = ordered_json::parse(is);
    } catch (const std::exception& e) {
      throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config must be a JSON object");
    if (j.contains("config") && j["config"].is_object() && j.contains("command")) j = j["config"];
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

  static ordered_json section(const CLI::App* app, bool default_also) {
    ordered_json out = ordered_json::object();
    for (const CLI::Option* op : app->get_options()) {
      const std::string& name = op->get_lnames().empty() ? std::string() : op->get_lnames().front();
      if (name.empty() || name == "help" || name == "config") continue;
      if (op->get_expected_max() == 0) {
        out[name] = op->count() > 0;
        continue;
      }
      std::vector<std::string> vals = op->results();
      if (vals.empty() && default_also) {
        const std::string d = op->get_default_str();
        if (d.empty()) continue;
        vals = split_default(d);
      }
      if (vals.empty()) continue;
      if (op->get_expected_max() > 1) {
        ordered_json arr = ordered_json::array();
        for (const auto& v : vals) arr.push_back(typed(v));
        out[name] = arr;
      } else {
        out[name] = typed(vals.back());
      }
    }
    for (const CLI::App* sub : app->get_subcommands()) {
      out[sub->get_name()] = section(sub, default_also);
    }
    return out;
  }

 private:
  static std::vector<std::string> split_default(const std::string& d) {
    std::string s = d;
    if (s.size() >= 2 && (s.front() == '[' || s.front() == '{') && (s.back() == ']' || s.back() == '}')) {
      s = s.substr(1, s.size() - 2);
    }
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
      if (!tok.empty()) out.push_back(tok);
    }
    return out;
  }

  static ordered_json typed(const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    std::uint64_t u = 0;
    auto r = std::from_chars(v.data(), v.data() + v.size(), u);
    if (r.ec == std::errc() && r.ptr == v.data() + v.size()) return u;
    double d = 0.0;
    r = std::from_chars(v.data(), v.data() + v.size(), d);
    if (r.ec == std::errc() && r.ptr == v.data() + v.size() && std::isfinite(d)) return d;
    return v;
  }

  static std::string scalar(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return num(v.get<double>());
    throw CLI::ConfigError("unsupported config value " + v.dump());
  }

  static void collect(const ordered_json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        collect(value, p, items);
        continue;
      }
      if (value.is_null()) continue;
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

struct Global {
  std::uint64_t seed = 42;
  std::string out = "out";
  std::string format = "csv";
  bool json() const { return format == "json"; }
};

struct RunContext {
  const CLI::App* app = nullptr;
  std::string command;
  std::vector<std::string> outputs;

  std::string file(const Global& g, const std::string& name) {
    outputs.push_back(name);
    return (fs::path(g.out) / name).string();
  }

  void write_manifest(const Global& g) {
    ordered_json m;
    m["tool"] = "logerg";
    m["abi_version"] = logerg_abi_version();
    m["command"] = command;
    m["config"] = JsonConfig::section(app, true);
    m["outputs"] = outputs;
    const std::string path = (fs::path(g.out) / "manifest.json").string();
    std::ofstream os(path, std::ios::binary);
    os << m.dump(2) << '\n';
    if (!os) throw CliFailure("cannot write " + path);
  }
};

void prepare_out(const Global& g) {
  std::error_code ec;
  fs::create_directories(g.out, ec);
  if (ec || !fs::is_directory(g.out)) {
    throw CliFailure("cannot create output directory '" + g.out + "': " + ec.message());
  }
  const fs::path probe = fs::path(g.out) / ".logerg_write_probe";
  {
    std::ofstream os(probe);
    if (!os) throw CliFailure("output directory '" + g.out + "' is not writable");
  }
  fs::remove(probe, ec);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  if (!os) throw CliFailure("cannot write " + path);
}

// ---- simulate -------------------------------------------------------------

struct SimulateOpts {
  std::string model = "gbm";
  double mu = 0.1;
  double sigma = 0.2;
  double s0 = 100.0;
  double drift = 0.0;
  double vol = 0.2;
  double y0 = 0.0;
  double horizon = 1.0;
  double dt = 1e-3;
  std::size_t paths = 1;
  bool wide = false;
  double beta = 2.0;
  std::vector<double> diagnostic_horizons;
};

void cmd_simulate(const Global& g, const SimulateOpts& o, RunContext& ctx) {
  const logerg_gbm_params gbm{o.mu, o.sigma, o.s0};
  std::vector<PathPtr> paths;
  for (std::size_t i = 0; i < o.paths; ++i) {
    logerg_path* w = nullptr;
    check(logerg_path_simulate_wiener(o.horizon, o.dt, logerg_derive_seed(g.seed, i), &w), "simulate");
    PathPtr wiener(w);
    logerg_path* p = nullptr;
    if (o.model == "gbm") {
      check(logerg_path_simulate_gbm(&gbm, wiener.get(), &p), "simulate gbm");
    } else {
      check(logerg_path_simulate_ito_constant(o.drift, o.vol, o.y0, wiener.get(), &p), "simulate ito");
    }
    paths.emplace_back(p);
  }
  std::vector<logerg_param> params;
  if (o.model == "gbm") {
    params = {{"mu", o.mu}, {"sigma", o.sigma}, {"s0", o.s0}};
  } else {
    params = {{"drift", o.drift}, {"vol", o.vol}, {"y0", o.y0}};
  }
  params.push_back({"horizon", o.horizon});
  params.push_back({"dt", o.dt});
  prepare_out(g);
  if (o.wide) {
    std::vector<const logerg_path*> raw;
    for (const auto& p : paths) raw.push_back(p.get());
    check(logerg_paths_write_wide_csv(raw.data(), raw.size(), ctx.file(g, "paths.csv").c_str()), "write");
  } else {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      check(logerg_path_write_csv(paths[i].get(), ctx.file(g, indexed("path", i, "csv")).c_str(),
                                  params.data(), params.size()),
            "write path");
    }
  }
  if (!o.diagnostic_horizons.empty()) {
    std::vector<const logerg_path*> logs_raw;
    std::vector<PathPtr> logs;
    for (const auto& p : paths) {
      if (o.model == "gbm") {
        logerg_path* l = nullptr;
        check(logerg_path_log(p.get(), &l), "log path");
        logs.emplace_back(l);
        logs_raw.push_back(l);
      } else {
        logs_raw.push_back(p.get());
      }
    }
    const auto& hs = o.diagnostic_horizons;
    std::vector<double> yv(hs.size());
    check(logerg_ergodicity_diagnostic(logs_raw.data(), logs_raw.size(), hs.data(), hs.size(), 0, 0.0,
                                       yv.data()),
          "diagnostic");
    std::vector<double> zv(hs.size(), std::nan(""));
    if (o.model == "gbm") {
      check(logerg_z_ergodicity_curve(&gbm, o.beta, o.dt, hs.data(), hs.size(), o.paths, g.seed, zv.data()),
            "z diagnostic");
    }
    std::ostringstream os;
    os << "horizon,value,z_value\n";
    for (std::size_t i = 0; i < hs.size(); ++i) os << num(hs[i]) << ',' << num(yv[i]) << ',' << num(zv[i]) << '\n';
    write_text(ctx.file(g, "diagnostic.csv"), os.str());
  }
  ctx.write_manifest(g);
  std::cout << "simulate: wrote " << ctx.outputs.size() + 1 << " files to " << g.out << '\n';
}

// ---- trade ----------------------------------------------------------------

struct TradeOpts {
  std::vector<std::string> price_csv;
  std::string z_csv;
  double mu = 0.1;
  double sigma = 0.2;
  double s0 = 100.0;
  double horizon = 1.0;
  double dt = 1e-3;
  std::size_t paths = 1;
  double beta = 2.0;
  double eps = 0.0;
  double long_leverage = 1.0;
  double short_leverage = 1.0;
  bool literal = false;
};

void cmd_trade(const Global& g, const TradeOpts& o, RunContext& ctx) {
  const logerg_gbm_params gbm{o.mu, o.sigma, o.s0};
  struct Input {
    PathPtr price;
    PathPtr z;
    double w_terminal = std::nan("");
  };
  std::vector<Input> inputs;
  if (!o.z_csv.empty()) {
    if (o.price_csv.size() > 1) throw CliFailure("--z-csv takes at most one --price-csv");
    Input in;
    logerg_path* z = nullptr;
    check(logerg_path_read_csv(o.z_csv.c_str(), LOGERG_PATH_ZPROCESS, &z), "read " + o.z_csv);
    in.z.reset(z);
    if (!o.price_csv.empty()) {
      logerg_path* p = nullptr;
      check(logerg_path_read_csv(o.price_csv[0].c_str(), LOGERG_PATH_PRICE, &p), "read " + o.price_csv[0]);
      in.price.reset(p);
    }
    inputs.push_back(std::move(in));
  } else if (!o.price_csv.empty()) {
    for (const auto& f : o.price_csv) {
      Input in;
      logerg_path* p = nullptr;
      check(logerg_path_read_csv(f.c_str(), LOGERG_PATH_PRICE, &p), "read " + f);
      in.price.reset(p);
      inputs.push_back(std::move(in));
    }
  } else {
    for (std::size_t i = 0; i < o.paths; ++i) {
      Input in;
      logerg_path* w = nullptr;
      check(logerg_path_simulate_wiener(o.horizon, o.dt, logerg_derive_seed(g.seed, i), &w), "simulate");
      PathPtr wiener(w);
      logerg_path* p = nullptr;
      check(logerg_path_simulate_gbm(&gbm, wiener.get(), &p), "simulate gbm");
      in.price.reset(p);
      inputs.push_back(std::move(in));
    }
  }
  for (auto& in : inputs) {
    if (in.z) continue;
    logerg_path* z = nullptr;
    check(logerg_z_from_price(&gbm, in.price.get(), o.beta, &z, &in.w_terminal), "Z from price");
    in.z.reset(z);
  }

  prepare_out(g);
  logerg_trade_options topt;
  logerg_trade_options_default(&topt);
  topt.eps = o.eps;
  topt.long_leverage = o.long_leverage;
  topt.short_leverage = o.short_leverage;
  topt.literal_indicator = o.literal ? 1 : 0;
  const logerg_format fmt = g.json() ? LOGERG_FORMAT_JSON : LOGERG_FORMAT_CSV;
  const std::string ext = g.json() ? "json" : "csv";

  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "path,w_terminal,recurrences,interior_recurrence,excursions,count_above,count_below,"
         "mean_above,mean_below,profit\n";
  double total_profit = 0.0;
  std::size_t with_interior = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto& in = inputs[i];
    logerg_trade* t = nullptr;
    check(logerg_trade_analyze(in.z.get(), in.price.get(), &topt, &t), "trade analysis");
    TradePtr trade(t);
    std::vector<double> taus(logerg_trade_recurrence_count(t));
    check(logerg_trade_copy_recurrences(t, taus.data(), taus.size()), "recurrences");
    const double horizon = logerg_path_horizon(in.z.get());
    bool interior = false;
    for (double tau : taus) interior = interior || (tau > 0.0 && tau < horizon);
    with_interior += interior ? 1 : 0;
    logerg_sojourn soj;
    check(logerg_trade_sojourn(t, &soj), "sojourns");
    double profit = std::nan("");
    if (in.price) {
      check(logerg_trade_profit(t, &profit), "profit");
    } else if (logerg_trade_excursion_count(t) == 0) {
      profit = 0.0;
    }
    if (!std::isnan(profit)) total_profit += profit;

    check(logerg_trade_write_signals(t, ctx.file(g, indexed("signals", i, ext)).c_str(), fmt), "signals");
    check(logerg_trade_write_excursions(t, ctx.file(g, indexed("excursions", i, "csv")).c_str()), "excursions");
    check(logerg_trade_write_bound_report(t, &gbm, ctx.file(g, indexed("bounds", i, ext)).c_str(), fmt),
          "bound report");
    check(logerg_trade_write_fig2(t, ctx.file(g, indexed("fig2", i, "csv")).c_str()), "fig2");
    if (in.price) check(logerg_write_fig1(in.price.get(), ctx.file(g, indexed("fig1", i, "csv")).c_str()), "fig1");

    const std::size_t nex = logerg_trade_excursion_count(t);
    csv << i << ',' << num(in.w_terminal) << ',' << taus.size() << ',' << (interior ? 1 : 0) << ',' << nex
        << ',' << soj.count_above << ',' << soj.count_below << ',' << num(soj.mean_above) << ','
        << num(soj.mean_below) << ',' << num(profit) << '\n';
    auto jnum = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
    rows.push_back({{"path", i},
                    {"w_terminal", jnum(in.w_terminal)},
                    {"recurrences", taus.size()},
                    {"interior_recurrence", interior},
                    {"excursions", nex},
                    {"count_above", soj.count_above},
                    {"count_below", soj.count_below},
                    {"mean_above", jnum(soj.mean_above)},
                    {"mean_below", jnum(soj.mean_below)},
                    {"profit", jnum(profit)}});
  }
  if (g.json()) {
    ordered_json s;
    s["paths"] = rows;
    s["aggregate"] = {{"count", inputs.size()},
                      {"total_profit", total_profit},
                      {"mean_profit", inputs.empty() ? 0.0 : total_profit / static_cast<double>(inputs.size())},
                      {"fraction_with_interior_recurrence",
                       inputs.empty() ? 0.0 : static_cast<double>(with_interior) / static_cast<double>(inputs.size())}};
    write_text(ctx.file(g, "summary.json"), s.dump(2) + "\n");
  } else {
    write_text(ctx.file(g, "summary.csv"), csv.str());
  }
  ctx.write_manifest(g);
  std::cout << "trade: " << inputs.size() << " path(s), total profit " << num(total_profit) << '\n';
}

// ---- rotate ---------------------------------------------------------------

struct RotateOpts {
  double theta = std::sqrt(2.0);
  double x0 = 0.0;
  std::size_t n = 1000000;
  std::vector<double> intervals = {0.2, 0.5, 0.0, 0.1, 0.5, 0.9};
  double kac_theta = 0.5 * (std::sqrt(5.0) - 1.0);
  std::vector<double> arcs = {0.1, 0.25, 0.5};
  std::size_t returns = 100000;
  std::size_t orbit_points = 1000;
  double strike = 50.0;
  double mu = 0.1;
  double sigma = 0.2;
  double s0 = 100.0;
  double horizon = 1.0;
  double dt = 1e-3;
  double beta = 2.0;
};

void cmd_rotate(const Global& g, const RotateOpts& o, RunContext& ctx) {
  if (o.intervals.size() % 2 != 0) throw CliFailure("--interval takes pairs a b");
  prepare_out(g);
  ordered_json report;

  std::ostringstream eq;
  eq << "a,b,n,frequency,expected,abs_error\n";
  ordered_json eqj = ordered_json::array();
  for (std::size_t i = 0; i < o.intervals.size(); i += 2) {
    const double a = o.intervals[i];
    const double b = o.intervals[i + 1];
    double f = 0.0;
    check(logerg_equidistribution(o.theta, a, b, o.x0, o.n, &f), "equidistribution");
    eq << num(a) << ',' << num(b) << ',' << o.n << ',' << num(f) << ',' << num(b - a) << ','
       << num(std::abs(f - (b - a))) << '\n';
    eqj.push_back({{"a", a}, {"b", b}, {"n", o.n}, {"frequency", f}, {"expected", b - a}});
  }

  std::ostringstream kac;
  kac << "arc_length,returns,mean_return,expected,rel_error\n";
  ordered_json kacj = ordered_json::array();
  for (double p : o.arcs) {
    double m = 0.0;
    check(logerg_kac(o.kac_theta, 0.0, p, 0.0, o.returns, 0, &m), "kac");
    kac << num(p) << ',' << o.returns << ',' << num(m) << ',' << num(1.0 / p) << ','
        << num(std::abs(m * p - 1.0)) << '\n';
    kacj.push_back({{"arc_length", p}, {"returns", o.returns}, {"mean_return", m}, {"expected", 1.0 / p}});
  }

  std::ostringstream bk;
  bk << "function,average,integral,abs_error\n";
  ordered_json bkj = ordered_json::array();
  struct Row {
    const char* name;
    double constant;
    std::vector<double> c;
    std::vector<double> s;
  };
  const Row rows[] = {{"constant_0.37", 0.37, {}, {}},
                      {"sin_2pi_x", 0.0, {}, {1.0}},
                      {"trig_poly_0.37", 0.37, {0.5, -0.25, 0.1}, {0.3, 0.2}}};
  for (const auto& r : rows) {
    double avg = 0.0;
    check(logerg_birkhoff_trig(r.constant, r.c.data(), r.c.size(), r.s.data(), r.s.size(), o.x0,
                               o.theta, o.n, &avg),
          "birkhoff");
    bk << r.name << ',' << num(avg) << ',' << num(r.constant) << ',' << num(std::abs(avg - r.constant)) << '\n';
    bkj.push_back({{"function", r.name}, {"average", avg}, {"integral", r.constant}});
  }

  if (g.json()) {
    report["equidistribution"] = eqj;
    report["kac"] = kacj;
    report["birkhoff"] = bkj;
    write_text(ctx.file(g, "rotation.json"), report.dump(2) + "\n");
  } else {
    write_text(ctx.file(g, "equidistribution.csv"), eq.str());
    write_text(ctx.file(g, "kac.csv"), kac.str());
    write_text(ctx.file(g, "birkhoff.csv"), bk.str());
  }
  if (o.orbit_points > 0) {
    check(logerg_write_orbit_csv(o.x0, o.theta, o.orbit_points, ctx.file(g, "orbit.csv").c_str()), "orbit");
  }

  const logerg_gbm_params gbm{o.mu, o.sigma, o.s0};
  logerg_path* w = nullptr;
  check(logerg_path_simulate_wiener(o.horizon, o.dt, logerg_derive_seed(g.seed, 0), &w), "simulate");
  PathPtr wiener(w);
  logerg_path* p = nullptr;
  check(logerg_path_simulate_gbm(&gbm, wiener.get(), &p), "simulate gbm");
  PathPtr price(p);
  logerg_path* z = nullptr;
  double wt = 0.0;
  check(logerg_z_from_price(&gbm, price.get(), o.beta, &z, &wt), "Z from price");
  PathPtr zp(z);
  check(logerg_write_fig3(price.get(), zp.get(), o.strike, o.beta, wt, ctx.file(g, "fig3.csv").c_str()), "fig3");

  ctx.write_manifest(g);
  std::cout << "rotate: wrote " << ctx.outputs.size() + 1 << " files to " << g.out << '\n';
}

// ---- price ----------------------------------------------------------------

struct PriceOpts {
  std::vector<double> r = {0.05};
  std::vector<double> K = {std::exp(std::exp(1.0))};
  std::vector<double> T = {1.0};
  std::vector<double> beta = {2.0};
  std::vector<double> mu = {0.1};
  std::vector<double> sigma = {0.2};
  std::vector<double> tau = {0.5};
  std::vector<double> z = {0.05};
  std::vector<double> w_terminal = {0.3};
  std::vector<double> s_t0 = {100.0};
  std::vector<double> X = {100.0};
  std::vector<double> t = {1.0};
  std::string preset = "none";
};

void cmd_price(const Global& g, const PriceOpts& o, RunContext& ctx) {
  std::vector<double> taus = o.tau;
  std::vector<double> zs = o.z;
  std::vector<double> xs = o.X;
  if (o.preset == "cross") {
    taus = {0.25, 0.5, 0.75};
    zs = {0.05, 1.5, 3.5};
    xs = {50.0, 100.0, 150.0};
  }
  std::vector<logerg_pricing_inputs> pts;
  for (double r : o.r)
    for (double K : o.K)
      for (double T : o.T)
        for (double b : o.beta)
          for (double mu : o.mu)
            for (double s : o.sigma)
              for (double tau : taus)
                for (double z : zs)
                  for (double wt : o.w_terminal)
                    for (double st0 : o.s_t0)
                      for (double x : xs)
                        for (double t : o.t) pts.push_back({r, K, T, b, mu, s, tau, z, wt, st0, x, t});
  prepare_out(g);
  const std::string csv = ctx.file(g, "sweep.csv");
  const std::string json = g.json() ? ctx.file(g, "sweep.json") : std::string();
  std::size_t bad = 0;
  check(logerg_price_sweep(pts.data(), pts.size(), csv.c_str(), g.json() ? json.c_str() : nullptr, &bad),
        "price sweep");
  ctx.write_manifest(g);
  std::cout << "price: " << pts.size() << " point(s), " << bad << " with engine domain errors\n";
}

// ---- validate -------------------------------------------------------------

struct ValidateOpts {
  int only = 0;
  double tolerance_scale = 1.0;
};

int cmd_validate(const Global& g, const ValidateOpts& o, bool write_files, RunContext& ctx) {
  struct Collected {
    std::vector<ordered_json> rows;
  } col;
  auto cb = [](const logerg_criterion_result* r, void* p) {
    auto* c = static_cast<Collected*>(p);
    std::printf("criterion %2d  %s  %-32s %7.2fs  %s\n", r->id, r->passed ? "PASS" : "FAIL", r->name,
                r->seconds, r->detail);
    std::fflush(stdout);
    c->rows.push_back({{"id", r->id}, {"name", r->name}, {"passed", r->passed != 0}, {"detail", r->detail}});
  };
  int all = 0;
  check(logerg_validate(o.only, o.tolerance_scale, cb, &col, &all), "validate");
  std::size_t passed = 0;
  for (const auto& r : col.rows) passed += r["passed"].get<bool>() ? 1 : 0;
  std::printf("%zu/%zu criteria passed\n", passed, col.rows.size());
  if (write_files) {
    prepare_out(g);
    write_text(ctx.file(g, "validation.json"), ordered_json(col.rows).dump(2) + "\n");
    ctx.write_manifest(g);
  }
  return all ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logerg: log-ergodic processes, mean-reversion trading, rotations and option pricing"};
  app.option_defaults()->always_capture_default();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file (a manifest.json from an earlier run also works)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"csv", "json"}));

  SimulateOpts so;
  auto* sim = app.add_subcommand("simulate", "simulate price paths");
  sim->add_option("--model", so.model, "gbm or ito (constant coefficients)")->check(CLI::IsMember({"gbm", "ito"}));
  sim->add_option("--mu", so.mu, "GBM drift");
  sim->add_option("--sigma", so.sigma, "GBM volatility");
  sim->add_option("--s0", so.s0, "GBM initial price");
  sim->add_option("--drift", so.drift, "Ito drift");
  sim->add_option("--vol", so.vol, "Ito volatility");
  sim->add_option("--y0", so.y0, "Ito initial value");
  sim->add_option("--horizon", so.horizon, "T");
  sim->add_option("--dt", so.dt, "time step");
  sim->add_option("--paths", so.paths, "ensemble size")->check(CLI::PositiveNumber);
  sim->add_flag("--wide", so.wide, "one wide CSV instead of a file per path");
  sim->add_option("--beta", so.beta, "inhibition degree for the Z diagnostic");
  sim->add_option("--diagnostic-horizons", so.diagnostic_horizons, "horizons for diagnostic.csv");

  TradeOpts to;
  auto* trd = app.add_subcommand("trade", "recurrences, signals and profit of Z paths");
  trd->add_option("--price-csv", to.price_csv, "price path file(s)");
  trd->add_option("--z-csv", to.z_csv, "Z path file (skips the transform)");
  trd->add_option("--mu", to.mu, "GBM drift");
  trd->add_option("--sigma", to.sigma, "GBM volatility");
  trd->add_option("--s0", to.s0, "GBM initial price");
  trd->add_option("--horizon", to.horizon, "T for simulated paths");
  trd->add_option("--dt", to.dt, "time step for simulated paths");
  trd->add_option("--paths", to.paths, "simulated paths when no file is given")->check(CLI::PositiveNumber);
  trd->add_option("--beta", to.beta, "inhibition degree");
  trd->add_option("--eps", to.eps, "recurrence band (0 = sign changes)");
  trd->add_option("--long-leverage", to.long_leverage, "l");
  trd->add_option("--short-leverage", to.short_leverage, "s");
  trd->add_flag("--literal", to.literal, "class indicator read as class nonempty");

  RotateOpts ro;
  auto* rot = app.add_subcommand("rotate", "irrational rotation diagnostics");
  rot->add_option("--theta", ro.theta, "rotation angle");
  rot->add_option("--x0", ro.x0, "starting point");
  rot->add_option("--n", ro.n, "orbit length")->check(CLI::PositiveNumber);
  rot->add_option("--interval", ro.intervals, "equidistribution intervals as pairs a b");
  rot->add_option("--kac-theta", ro.kac_theta, "angle for the return-time table");
  rot->add_option("--arc", ro.arcs, "arc lengths [0, p)");
  rot->add_option("--returns", ro.returns, "returns per arc")->check(CLI::PositiveNumber);
  rot->add_option("--orbit-points", ro.orbit_points, "orbit.csv length (0 = none)");
  rot->add_option("--strike", ro.strike, "strike of the angle process");
  rot->add_option("--mu", ro.mu, "GBM drift");
  rot->add_option("--sigma", ro.sigma, "GBM volatility");
  rot->add_option("--s0", ro.s0, "GBM initial price");
  rot->add_option("--horizon", ro.horizon, "T");
  rot->add_option("--dt", ro.dt, "time step");
  rot->add_option("--beta", ro.beta, "inhibition degree");

  PriceOpts po;
  auto* prc = app.add_subcommand("price", "pricing sweep over the cartesian product of inputs");
  prc->add_option("--r", po.r, "short rate(s)");
  prc->add_option("--K", po.K, "strike(s)");
  prc->add_option("--T", po.T, "horizon(s)");
  prc->add_option("--beta", po.beta, "inhibition degree(s)");
  prc->add_option("--mu", po.mu, "drift(s)");
  prc->add_option("--sigma", po.sigma, "volatility(ies)");
  prc->add_option("--tau", po.tau, "time(s) to maturity");
  prc->add_option("--z", po.z, "Z level(s)");
  prc->add_option("--w-terminal", po.w_terminal, "W_T value(s)");
  prc->add_option("--s-t0", po.s_t0, "spot(s) at purchase");
  prc->add_option("--X", po.X, "underlying price(s)");
  prc->add_option("--t", po.t, "valuation time(s)");
  prc->add_option("--preset", po.preset, "cross = 3x3x3 (tau, z, X) grid")->check(CLI::IsMember({"none", "cross"}));

  ValidateOpts vo;
  auto* val = app.add_subcommand("validate", "run the acceptance suite");
  val->add_option("--only", vo.only, "run a single criterion")->check(CLI::Range(0, logerg_criterion_count()));
  val->add_option("--tolerance-scale", vo.tolerance_scale, "multiply every tolerance (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunContext ctx;
  ctx.app = &app;
  try {
    if (*sim) {
      ctx.command = "simulate";
      cmd_simulate(g, so, ctx);
    } else if (*trd) {
      ctx.command = "trade";
      cmd_trade(g, to, ctx);
    } else if (*rot) {
      ctx.command = "rotate";
      cmd_rotate(g, ro, ctx);
    } else if (*prc) {
      ctx.command = "price";
      cmd_price(g, po, ctx);
    } else if (*val) {
      ctx.command = "validate";
      return cmd_validate(g, vo, app.get_option("--out")->count() > 0, ctx);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
