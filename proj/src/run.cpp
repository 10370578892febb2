#include "qdyn/run.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "qdyn/closed_form.hpp"
#include "qdyn/dynamics.hpp"
#include "qdyn/entanglement.hpp"
#include "qdyn/linalg.hpp"
#include "qdyn/report.hpp"

namespace qdyn::cli {
namespace {

using nlohmann::ordered_json;

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

EwlKind parse_kind(const std::string& kind) {
  if (kind == "phi") return EwlKind::Phi;
  if (kind == "psi") return EwlKind::Psi;
  throw ConfigError("kind must be phi or psi, got: " + kind);
}

EWLParams ewl_of(const RunConfig& cfg) {
  EWLParams q;
  q.kind = parse_kind(cfg.kind);
  q.r = cfg.r;
  q.a = cfg.a;
  q.b_abs = std::sqrt(std::max(0.0, 1.0 - cfg.a * cfg.a));
  q.delta = cfg.delta;
  return q;
}

void validate_common(const RunConfig& cfg) {
  try {
    check_params(cfg.params);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  parse_kind(cfg.kind);
  require(std::isfinite(cfg.r) && cfg.r >= 0.0 && cfg.r <= 1.0, "r must lie in [0, 1]");
  require(std::isfinite(cfg.a) && cfg.a >= 0.0 && cfg.a <= 1.0, "a must lie in [0, 1]");
  require(std::isfinite(cfg.delta), "delta must be finite");
  require(std::isfinite(cfg.t_max) && cfg.t_max >= 0.0, "t-max must be >= 0");
  require(cfg.steps >= 2, "steps must be >= 2");
  require(cfg.format == "csv" || cfg.format == "json",
          "format must be csv or json, got: " + cfg.format);
  require(cfg.workers >= 0, "workers must be >= 0");
  require(std::isfinite(cfg.perturb_oracle), "perturb-oracle must be finite");
}

void emit_warnings(const RunConfig& cfg) {
  for (const std::string& w : param_warnings(cfg.params)) {
    std::cerr << "warning: " << w << '\n';
  }
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<size_t>(i)] = lo + (hi - lo) * (static_cast<double>(i) / (count - 1));
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<double> time_grid(const RunConfig& cfg) {
  if (cfg.t_max == 0.0) return {0.0};
  return linspace(0.0, cfg.t_max, cfg.steps);
}

// Output destination: a file when configured, stdout otherwise. Binary mode
// keeps line endings byte-exact.
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& out() { return *os; }
};

ordered_json matrix_json(const Mat& m) {
  ordered_json re = ordered_json::array();
  ordered_json im = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json rrow = ordered_json::array();
    ordered_json irow = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rrow.push_back(round12(m(i, j).real()));
      irow.push_back(round12(m(i, j).imag()));
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return ordered_json{{"re", re}, {"im", im}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,rho11,rho22,rho33,rho44,re_rho14,im_rho14,re_rho23,im_rho23,"
        "concurrence,l1_coherence\n";
  for (size_t i = 0; i < tr.times.size(); ++i) {
    os << fmt12(tr.times[i]);
    for (double p : tr.populations[i]) os << ',' << fmt12(p);
    os << ',' << fmt12(tr.rho14[i].real()) << ',' << fmt12(tr.rho14[i].imag()) << ','
       << fmt12(tr.rho23[i].real()) << ',' << fmt12(tr.rho23[i].imag()) << ','
       << fmt12(tr.concurrence[i]) << ',' << fmt12(tr.l1_coherence[i]) << '\n';
  }
}

void write_trajectory_json(std::ostream& os, const Trajectory& tr) {
  const size_t npts = tr.times.size();
  ordered_json j;
  auto column = [&](auto&& get) {
    ordered_json col = ordered_json::array();
    for (size_t i = 0; i < npts; ++i) col.push_back(round12(get(i)));
    return col;
  };
  j["t"] = column([&](size_t i) { return tr.times[i]; });
  for (int k = 0; k < 4; ++k) {
    j["rho" + std::to_string(k + 1) + std::to_string(k + 1)] =
        column([&](size_t i) { return tr.populations[i][static_cast<size_t>(k)]; });
  }
  j["re_rho14"] = column([&](size_t i) { return tr.rho14[i].real(); });
  j["im_rho14"] = column([&](size_t i) { return tr.rho14[i].imag(); });
  j["re_rho23"] = column([&](size_t i) { return tr.rho23[i].real(); });
  j["im_rho23"] = column([&](size_t i) { return tr.rho23[i].imag(); });
  j["concurrence"] = column([&](size_t i) { return tr.concurrence[i]; });
  j["l1_coherence"] = column([&](size_t i) { return tr.l1_coherence[i]; });
  os << j.dump(2) << '\n';
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw ConfigError("invalid number in " + what + ": '" + s + "'");
  }
}

// One sweep cell: fully specified model + initial state (+ time for
// trajectory sweeps). Cells are evaluated independently and are pure.
struct GridPoint {
  SpinChainParams p;
  EWLParams q;
  std::optional<double> t;
};

void apply_axis(GridPoint& g, const std::string& name, double v) {
  if (name == "t") {
    g.t = v;
  } else if (name == "B") {
    g.p.B = v;
  } else if (name == "JDelta") {
    g.p.Delta = v / g.p.J;
  } else if (name == "a2") {
    g.q.a = std::sqrt(v);
    g.q.b_abs = std::sqrt(std::max(0.0, 1.0 - v));
  } else if (name == "n") {
    g.p.n = v;
  } else {  // "r" (names are validated in parse_axis)
    g.q.r = v;
  }
}

struct CellResult {
  double concurrence = 0.0;
  double l1 = 0.0;
};

CellResult eval_cell(const GridPoint& g) {
  const Liouvillian fop = model_liouvillian(g.p);
  if (g.t.has_value()) {
    const Trajectory tr = propagate(fop, ewl_density(g.q), {*g.t});
    return {tr.concurrence.front(), tr.l1_coherence.front()};
  }
  const Mat rho = steady_state(fop);
  return {concurrence(rho), l1_coherence(rho)};
}

std::vector<CellResult> run_grid(const std::vector<GridPoint>& grid, int workers) {
  std::vector<CellResult> out(grid.size());
  int w = workers;
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  w = std::min<int>(w, static_cast<int>(grid.size()));
  if (w <= 1) {
    for (size_t i = 0; i < grid.size(); ++i) out[i] = eval_cell(grid[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&] {
    while (!stop.load()) {
      const size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      try {
        out[i] = eval_cell(grid[i]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(w));
  for (int k = 0; k < w; ++k) pool.emplace_back(body);
  for (std::thread& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

// ---- validate -------------------------------------------------------------

struct Check {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool skipped = false;
  std::string note;
  bool passed() const { return skipped || max_deviation <= tolerance; }
};

double max_abs_diff(const Mat& got, const Mat& want, double bump) {
  return (got - (want.array() + bump).matrix()).cwiseAbs().maxCoeff();
}

SpinChainParams with_jd(SpinChainParams p, double jd) {
  p.Delta = (p.J != 0.0) ? jd / p.J : 0.0;
  return p;
}

void run_trajectory_checks(const RunConfig& cfg, std::vector<Check>& checks) {
  Check state{"trajectory_state", 0.0, 1e-8, false, ""};
  Check conc{"trajectory_concurrence", 0.0, 1e-8, false, ""};
  if (cfg.params.B != 0.0 || cfg.delta != 0.0) {
    state.skipped = conc.skipped = true;
    state.note = conc.note = "out of oracle domain";
    checks.push_back(state);
    checks.push_back(conc);
    return;
  }
  const double bump = cfg.perturb_oracle;
  const std::vector<double> times = linspace(0.0, 5.0, 21);
  const std::vector<double> jds = (cfg.params.J != 0.0)
                                      ? std::vector<double>{0.5, 1.0}
                                      : std::vector<double>{0.0};
  for (double n : {0.0, 0.2}) {
    for (double jd : jds) {
      SpinChainParams p = with_jd(cfg.params, jd);
      p.n = n;
      const Liouvillian fop = model_liouvillian(p);
      for (double r : {1.0, 0.5}) {
        for (double a2 : {0.25, 0.5}) {
          for (EwlKind kind : {EwlKind::Phi, EwlKind::Psi}) {
            const EWLParams q = make_ewl(kind, r, std::sqrt(a2));
            const ClosedFormContext ctx = make_context(p, q);
            const Trajectory tr = propagate(fop, ewl_density(q), times);
            for (size_t i = 0; i < times.size(); ++i) {
              const double t = times[i];
              state.max_deviation =
                  std::max(state.max_deviation,
                           max_abs_diff(tr.states[i], closed_form_state(kind, t, ctx), bump));
              double ref = closed_form_concurrence(kind, t, ctx);
              conc.max_deviation =
                  std::max(conc.max_deviation, std::abs(tr.concurrence[i] - (ref + bump)));
              if (r == 1.0) {
                ref = closed_form_concurrence_pure(kind, t, ctx);
                conc.max_deviation =
                    std::max(conc.max_deviation, std::abs(tr.concurrence[i] - (ref + bump)));
              }
            }
          }
        }
      }
    }
  }
  checks.push_back(state);
  checks.push_back(conc);
}

void run_steady_checks(const RunConfig& cfg, std::vector<Check>& checks) {
  const double bump = cfg.perturb_oracle;
  Check state{"steady_state", 0.0, 1e-8, false, ""};
  Check conc{"final_concurrence", 0.0, 1e-8, false, ""};
  struct Point {
    double n, B, jd;
  };
  const std::vector<Point> battery = {
      {0.0, 0.0, 1.0},   {0.0, 1.5, 0.5},  {0.2, 0.0, 1.0},
      {0.2, 1.5, 0.5},   {0.5, 0.7, 0.3},
      {cfg.params.n, cfg.params.B, cfg.params.J * cfg.params.Delta}};
  for (const Point& pt : battery) {
    SpinChainParams p = with_jd(cfg.params, pt.jd);
    p.n = pt.n;
    p.B = pt.B;
    const ClosedFormContext ctx = make_context(p, EWLParams{});
    const Mat rho = steady_state(model_liouvillian(p));
    state.max_deviation =
        std::max(state.max_deviation, max_abs_diff(rho, steady_state_closed(ctx), bump));
    conc.max_deviation = std::max(
        conc.max_deviation, std::abs(concurrence(rho) - (final_concurrence(ctx) + bump)));
  }
  checks.push_back(state);
  checks.push_back(conc);
}

void run_maximum_checks(const RunConfig& cfg, std::vector<Check>& checks) {
  const double bump = cfg.perturb_oracle;
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

  Check cmax{"cmax_formula", 0.0, 1e-6, false, ""};
  for (double n : {0.0, 0.1, 0.2, 0.25}) {
    SpinChainParams base = cfg.params;
    base.n = n;
    base.B = 0.0;
    const auto analytic = golden_section_max(
        [&](double jd) {
          return final_concurrence(make_context(with_jd(base, jd), EWLParams{}));
        },
        0.0, 6.0, 1e-10);
    cmax.max_deviation =
        std::max(cmax.max_deviation, std::abs(analytic.second - (cmax_infinity(n) + bump)));
  }
  checks.push_back(cmax);

  Check value{"golden_section_value", 0.0, 1e-6, false, ""};
  Check position{"golden_section_position", 0.0, 1e-4, false, ""};
  for (double B : {0.0, 1.0, 2.0}) {
    SpinChainParams base = cfg.params;
    base.n = 0.0;
    base.B = B;
    const double want_pos = std::sqrt(4.0 * B * B + 1.0) * golden;
    const double want_val = (std::sqrt(5.0) - 1.0) / 4.0;
    const auto analytic = golden_section_max(
        [&](double jd) {
          return final_concurrence(make_context(with_jd(base, jd), EWLParams{}));
        },
        0.0, 6.0, 1e-10);
    const auto numeric = golden_section_max(
        [&](double jd) {
          return concurrence(steady_state(model_liouvillian(with_jd(base, jd))));
        },
        0.0, 6.0, 1e-10);
    for (const auto& route : {analytic, numeric}) {
      value.max_deviation =
          std::max(value.max_deviation, std::abs(route.second - (want_val + bump)));
      position.max_deviation =
          std::max(position.max_deviation, std::abs(route.first - (want_pos + bump)));
    }
  }
  checks.push_back(value);
  checks.push_back(position);
}

}  // namespace

SweepAxis parse_axis(const std::string& spec) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t colon = spec.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(spec.substr(start));
      break;
    }
    parts.push_back(spec.substr(start, colon - start));
    start = colon + 1;
  }
  require(parts.size() == 4, "axis spec must be name:lo:hi:count, got: '" + spec + "'");
  SweepAxis ax;
  ax.name = parts[0];
  const bool known = ax.name == "t" || ax.name == "B" || ax.name == "JDelta" ||
                     ax.name == "a2" || ax.name == "n" || ax.name == "r";
  require(known, "unknown sweep axis '" + ax.name + "' (expected t, B, JDelta, a2, n, r)");
  ax.lo = parse_number(parts[1], "axis " + ax.name);
  ax.hi = parse_number(parts[2], "axis " + ax.name);
  try {
    size_t pos = 0;
    ax.count = std::stoi(parts[3], &pos);
    if (pos != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (...) {
    throw ConfigError("invalid count in axis '" + spec + "'");
  }
  require(ax.count >= 2, "axis count must be >= 2");
  require(ax.lo < ax.hi, "axis range must satisfy lo < hi, got: '" + spec + "'");
  if (ax.name == "t" || ax.name == "n") {
    require(ax.lo >= 0.0, "axis " + ax.name + " requires lo >= 0");
  }
  if (ax.name == "a2" || ax.name == "r") {
    require(ax.lo >= 0.0 && ax.hi <= 1.0, "axis " + ax.name + " must stay within [0, 1]");
  }
  return ax;
}

void cmd_evolve(const RunConfig& cfg) {
  validate_common(cfg);
  require(cfg.axes.empty(), "evolve takes no sweep axes");
  emit_warnings(cfg);
  const Liouvillian fop = model_liouvillian(cfg.params);
  const Trajectory tr = propagate(fop, ewl_density(ewl_of(cfg)), time_grid(cfg));
  Sink sink(cfg.out);
  if (cfg.format == "csv") {
    write_trajectory_csv(sink.out(), tr);
  } else {
    write_trajectory_json(sink.out(), tr);
  }
}

void cmd_sweep(const RunConfig& cfg) {
  validate_common(cfg);
  require(cfg.axes.size() == 2, "sweep requires exactly two axes");
  const SweepAxis ax1 = parse_axis(cfg.axes[0]);
  const SweepAxis ax2 = parse_axis(cfg.axes[1]);
  require(ax1.name != ax2.name, "sweep axes must differ");
  if (ax1.name == "JDelta" || ax2.name == "JDelta") {
    require(cfg.params.J != 0.0, "JDelta axis requires J != 0");
  }
  emit_warnings(cfg);
  const std::vector<double> v1 = linspace(ax1.lo, ax1.hi, ax1.count);
  const std::vector<double> v2 = linspace(ax2.lo, ax2.hi, ax2.count);

  const GridPoint base{cfg.params, ewl_of(cfg), std::nullopt};
  std::vector<GridPoint> grid;
  grid.reserve(v1.size() * v2.size());
  for (double x1 : v1) {
    for (double x2 : v2) {
      GridPoint g = base;
      apply_axis(g, ax1.name, x1);
      apply_axis(g, ax2.name, x2);
      grid.push_back(g);
    }
  }
  const std::vector<CellResult> res = run_grid(grid, cfg.workers);

  Sink sink(cfg.out);
  if (cfg.format == "csv") {
    sink.out() << ax1.name << ',' << ax2.name << ",concurrence";
    if (cfg.include_coherence) sink.out() << ",l1_coherence";
    sink.out() << '\n';
    size_t idx = 0;
    for (double x1 : v1) {
      for (double x2 : v2) {
        sink.out() << fmt12(x1) << ',' << fmt12(x2) << ',' << fmt12(res[idx].concurrence);
        if (cfg.include_coherence) sink.out() << ',' << fmt12(res[idx].l1);
        sink.out() << '\n';
        ++idx;
      }
    }
  } else {
    ordered_json j;
    auto values_json = [](const std::vector<double>& v) {
      ordered_json arr = ordered_json::array();
      for (double x : v) arr.push_back(round12(x));
      return arr;
    };
    j["axis1"] = ordered_json{{"name", ax1.name}, {"values", values_json(v1)}};
    j["axis2"] = ordered_json{{"name", ax2.name}, {"values", values_json(v2)}};
    ordered_json conc = ordered_json::array();
    for (const CellResult& c : res) conc.push_back(round12(c.concurrence));
    j["concurrence"] = conc;  // row-major: axis1 outer, axis2 inner
    if (cfg.include_coherence) {
      ordered_json coh = ordered_json::array();
      for (const CellResult& c : res) coh.push_back(round12(c.l1));
      j["l1_coherence"] = coh;
    }
    sink.out() << j.dump(2) << '\n';
  }
}

void cmd_steady(const RunConfig& cfg) {
  validate_common(cfg);
  emit_warnings(cfg);
  const Mat rho = steady_state(model_liouvillian(cfg.params));
  const ClosedFormContext ctx = make_context(cfg.params, EWLParams{});
  const double dev = (rho - steady_state_closed(ctx)).cwiseAbs().maxCoeff();
  ordered_json j;
  j["steady_state"] = matrix_json(rho);
  j["concurrence"] = round12(concurrence(rho));
  j["l1_coherence"] = round12(l1_coherence(rho));
  j["k_m"] = round12(k_m(ctx));
  j["max_deviation"] = round12(dev);
  Sink sink(cfg.out);
  sink.out() << j.dump(2) << '\n';
}

void cmd_spectrum(const RunConfig& cfg) {
  validate_common(cfg);
  emit_warnings(cfg);
  const Vec lam = spectrum(model_liouvillian(cfg.params));
  Sink sink(cfg.out);
  if (cfg.format == "csv") {
    sink.out() << "re_lambda,im_lambda\n";
    for (int i = 0; i < lam.size(); ++i) {
      sink.out() << fmt12(lam(i).real()) << ',' << fmt12(lam(i).imag()) << '\n';
    }
  } else {
    ordered_json j;
    ordered_json re = ordered_json::array(), im = ordered_json::array();
    for (int i = 0; i < lam.size(); ++i) {
      re.push_back(round12(lam(i).real()));
      im.push_back(round12(lam(i).imag()));
    }
    j["re_lambda"] = re;
    j["im_lambda"] = im;
    sink.out() << j.dump(2) << '\n';
  }
}

bool cmd_validate(const RunConfig& cfg) {
  validate_common(cfg);
  emit_warnings(cfg);
  std::vector<Check> checks;
  run_trajectory_checks(cfg, checks);
  run_steady_checks(cfg, checks);
  run_maximum_checks(cfg, checks);

  bool all_pass = true;
  ordered_json list = ordered_json::array();
  for (const Check& c : checks) {
    ordered_json entry;
    entry["name"] = c.name;
    entry["max_deviation"] = round12(c.max_deviation);
    entry["tolerance"] = c.tolerance;
    entry["status"] = c.skipped ? "skipped" : (c.passed() ? "pass" : "fail");
    if (!c.note.empty()) entry["note"] = c.note;
    list.push_back(entry);
    all_pass = all_pass && c.passed();
  }
  ordered_json j;
  j["checks"] = list;
  j["overall"] = all_pass ? "pass" : "fail";
  Sink sink(cfg.out);
  sink.out() << j.dump(2) << '\n';
  return all_pass;
}

int run_command(const std::string& name, const RunConfig& cfg) {
  try {
    if (name == "evolve") {
      cmd_evolve(cfg);
    } else if (name == "sweep") {
      cmd_sweep(cfg);
    } else if (name == "steady") {
      cmd_steady(cfg);
    } else if (name == "spectrum") {
      cmd_spectrum(cfg);
    } else if (name == "validate") {
      return cmd_validate(cfg) ? 0 : 1;
    } else {
      throw ConfigError("unknown command: " + name);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateSteadyStateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace qdyn::cli
