#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "entroscope/cft1d.hpp"
#include "entroscope/geometry.hpp"
#include "entroscope/holographic.hpp"
#include "entroscope/lattice.hpp"
#include "entroscope/summation.hpp"
#include "entroscope/twist.hpp"

namespace entroscope::cli {

namespace {

constexpr double kPi = std::numbers::pi;

using scaling::DivergenceFit;
using scaling::EntropySeries;
using MetaMap = std::map<std::string, std::string>;

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void put(MetaMap& m, const std::string& key, double v) { m[key] = fmt17(v); }
void put(MetaMap& m, const std::string& key, long v) { m[key] = std::to_string(v); }
void put(MetaMap& m, const std::string& key, const std::string& v) { m[key] = v; }

void write_fit_csv(std::ostream& out, const DivergenceFit& f) {
  out << "# fit: kind=" << scaling::to_string(f.kind) << "\n";
  out << "# fit: exponent=" << fmt17(f.exponent) << "\n";
  out << "# fit: coefficient=" << fmt17(f.coefficient) << "\n";
  out << "# fit: offset=" << fmt17(f.offset) << "\n";
  out << "# fit: residual_rms=" << fmt17(f.residual_rms) << "\n";
  out << "# fit: window_min=" << fmt17(f.window.first) << "\n";
  out << "# fit: window_max=" << fmt17(f.window.second) << "\n";
  if (!f.note.empty()) out << "# fit: note=" << f.note << "\n";
}

void write_fit_json(std::ostream& out, const DivergenceFit& f) {
  out << "{\"kind\":\"" << scaling::to_string(f.kind) << "\""
      << ",\"exponent\":" << fmt17(f.exponent)
      << ",\"coefficient\":" << fmt17(f.coefficient)
      << ",\"offset\":" << fmt17(f.offset)
      << ",\"residual_rms\":" << fmt17(f.residual_rms) << ",\"window\":["
      << fmt17(f.window.first) << "," << fmt17(f.window.second) << "]"
      << ",\"note\":\"" << json_escape(f.note) << "\"}";
}

// ---- command plumbing ------------------------------------------------------

struct CommandResult {
  EntropySeries series;
  std::optional<DivergenceFit> fit;
};

EntropySeries one_point_series(double param, double value, std::string param_name,
                               MetaMap meta) {
  return EntropySeries({{param, value}}, std::move(param_name), std::move(meta));
}

std::vector<std::pair<long, long>> parse_blocks(const std::string& text) {
  std::vector<std::pair<long, long>> blocks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw domain_error("blocks must look like start:end[,start:end...]");
    blocks.emplace_back(std::stol(item.substr(0, colon)),
                        std::stol(item.substr(colon + 1)));
  }
  if (blocks.empty()) throw domain_error("blocks must be nonempty");
  return blocks;
}

// Grid evaluation with worker threads; exceptions from workers are replayed
// on the calling thread.
std::vector<double> evaluate_grid(const std::vector<double>& params,
                                  const std::function<double(double)>& f) {
  std::vector<double> values(params.size());
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  detail::parallel_index(params.size(), [&](std::size_t i) {
    if (failed.load()) return;
    try {
      values[i] = f(params[i]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!failed.exchange(true)) first_error = std::current_exception();
    }
  });
  if (failed) std::rethrow_exception(first_error);
  return values;
}

std::vector<double> make_grid(double from, double to, int points, bool log_grid) {
  if (!(from > 0.0) || !(to > from)) throw domain_error("need 0 < from < to");
  if (points < 2) throw domain_error("points must be at least 2");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    const double t = double(i) / double(points - 1);
    grid[i] = log_grid ? from * std::pow(to / from, t) : from + (to - from) * t;
  }
  return grid;
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void emit_series(const EntropySeries& series, const std::optional<DivergenceFit>& fit,
                 OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << "param,value\n";
    for (const auto& [p, v] : series.points) out << fmt17(p) << "," << fmt17(v) << "\n";
    MetaMap meta = series.meta;
    meta["param_name"] = series.param_name;
    for (const auto& [k, v] : meta) out << "# meta: " << k << "=" << v << "\n";
    if (fit) write_fit_csv(out, *fit);
    return;
  }
  out << "{\"param_name\":\"" << json_escape(series.param_name) << "\",\"points\":[";
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    if (i) out << ",";
    out << "[" << fmt17(series.points[i].first) << ","
        << fmt17(series.points[i].second) << "]";
  }
  out << "],\"meta\":{";
  bool first = true;
  for (const auto& [k, v] : series.meta) {
    if (!first) out << ",";
    first = false;
    out << "\"" << json_escape(k) << "\":\"" << json_escape(v) << "\"";
  }
  out << "},\"fit\":";
  if (fit) {
    write_fit_json(out, *fit);
  } else {
    out << "null";
  }
  out << "}\n";
}

EntropySeries parse_csv_series(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "param,value")
    throw domain_error("CSV series must start with a 'param,value' header");
  std::vector<std::pair<double, double>> points;
  MetaMap meta;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# meta: ", 0) == 0) {
      const std::string body = line.substr(8);
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw domain_error("malformed meta line: " + line);
      meta[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    if (line.rfind("# fit: ", 0) == 0) continue;  // fits are derived, not identity
    if (line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw domain_error("malformed CSV row: " + line);
    points.emplace_back(std::stod(line.substr(0, comma)),
                        std::stod(line.substr(comma + 1)));
  }
  std::string param_name = "param";
  if (auto it = meta.find("param_name"); it != meta.end()) {
    param_name = it->second;
    meta.erase(it);
  }
  return EntropySeries(std::move(points), std::move(param_name), std::move(meta));
}

namespace {

// ---- subcommand handlers ---------------------------------------------------

struct CommonOpts {
  std::string format = "csv";
  std::string output = "-";
  std::string config;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--format", c.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", c.output, "Output path, '-' for stdout");
  sub->add_option("--config", c.config, "Flat key=value config file; flags override");
}

struct Cft1dOpts {
  bool single = false, two_interval = false, mi = false, sing_coeff = false;
  double L = 0, x = 0, epsilon = 0, c = 1.0;
  double a1 = 0, b1 = 0, a2 = 0, b2 = 0;
};

CommandResult run_cft1d(const Cft1dOpts& o) {
  const int modes = int(o.single) + int(o.two_interval) + int(o.mi) + int(o.sing_coeff);
  if (modes != 1)
    throw domain_error("choose exactly one of --single, --two-interval, --mi, --sing-coeff");
  cft1d::CentralCharge charge(o.c);
  MetaMap meta;
  put(meta, "command", std::string("cft1d"));
  put(meta, "c", o.c);
  put(meta, "unit", std::string("nats"));
  if (o.single) {
    put(meta, "mode", std::string("single"));
    put(meta, "L", o.L);
    put(meta, "epsilon", o.epsilon);
    return {one_point_series(o.L, cft1d::single_interval_entropy(o.L, o.epsilon, charge),
                             "L", meta),
            std::nullopt};
  }
  if (o.two_interval) {
    cft1d::IntervalPair p(o.a1, o.b1, o.a2, o.b2, o.epsilon);
    put(meta, "mode", std::string("two-interval"));
    put(meta, "a1", o.a1);
    put(meta, "b1", o.b1);
    put(meta, "a2", o.a2);
    put(meta, "b2", o.b2);
    put(meta, "epsilon", o.epsilon);
    if (o.c != 1.0)
      put(meta, "functional_form",
          std::string("free-fermion two-interval form scaled by c; exact only at c 1"));
    return {one_point_series(o.a2 - o.b1, cft1d::two_interval_entropy(p, charge), "x", meta),
            std::nullopt};
  }
  if (o.mi) {
    put(meta, "mode", std::string("mi"));
    put(meta, "L", o.L);
    put(meta, "x", o.x);
    if (o.c != 1.0)
      put(meta, "functional_form",
          std::string("free-fermion two-interval form scaled by c; exact only at c 1"));
    return {one_point_series(
                o.x, cft1d::mutual_information_equal_intervals(o.L, o.x, charge), "x", meta),
            std::nullopt};
  }
  put(meta, "mode", std::string("sing-coeff"));
  return {one_point_series(o.c, cft1d::singularity_coefficient(charge), "c", meta),
          std::nullopt};
}

struct LatticeOpts {
  bool mi = false, entropy = false;
  long L = 0, x = 0;
  double kF = kPi / 2.0;
  double renyi = 1.0;
  std::string blocks;
};

CommandResult run_lattice(const LatticeOpts& o) {
  if (int(o.mi) + int(o.entropy) != 1)
    throw domain_error("choose exactly one of --mi, --entropy");
  MetaMap meta;
  put(meta, "command", std::string("lattice"));
  put(meta, "kF", o.kF);
  put(meta, "renyi", o.renyi);
  put(meta, "unit", std::string("nats"));
  lattice::RenyiIndex n(o.renyi);
  if (o.mi) {
    put(meta, "mode", std::string("mi"));
    put(meta, "L", o.L);
    put(meta, "x", o.x);
    return {one_point_series(double(o.x),
                             lattice::lattice_mutual_information(o.L, o.x, o.kF, n), "x",
                             meta),
            std::nullopt};
  }
  const auto blocks = parse_blocks(o.blocks);
  lattice::LatticeBlockSpec spec(blocks, o.kF);
  const auto C = lattice::build_correlation_matrix(spec);
  put(meta, "mode", std::string("entropy"));
  put(meta, "blocks", o.blocks);
  return {one_point_series(double(C.size()), lattice::entropy_from_correlations(C, n),
                           "n_sites", meta),
          std::nullopt};
}

struct HoloOpts {
  bool constants = false, strip = false, mi = false, adiabatic = false;
  double w = 0, L = 0, x = 0, epsilon = -1.0, prefactor = 1.0;
  std::string profile;
  double x0 = 0, R = 0, m = 0, w0 = std::numeric_limits<double>::infinity();
  double ymin = 0, ymax = 0;
};

holo::AdiabaticProfile make_profile(const HoloOpts& o) {
  if (o.profile == "parabolic")
    return holo::AdiabaticProfile::parabolic(o.x0, o.R, o.w0, o.ymin, o.ymax);
  if (o.profile == "corner")
    return holo::AdiabaticProfile::corner(o.x0, o.m, o.w0, o.ymin, o.ymax);
  throw domain_error("profile must be parabolic or corner");
}

CommandResult run_holo(const HoloOpts& o) {
  const int modes = int(o.constants) + int(o.strip) + int(o.mi) + int(o.adiabatic);
  if (modes != 1)
    throw domain_error(
        "choose exactly one of --constants, --strip-entropy, --mi, --adiabatic");
  MetaMap meta;
  put(meta, "command", std::string("holo"));
  put(meta, "units", std::string("L_Lambda^2 / (4 G_N), prefactor included"));
  if (o.constants) {
    const auto& sc = holo::strip_constants();
    put(meta, "mode", std::string("constants"));
    put(meta, "k1", sc.k1_quadrature);
    put(meta, "k2", sc.k2_quadrature);
    put(meta, "k2_closed_form", sc.k2_closed_form);
    put(meta, "critical_separation_ratio", holo::critical_separation_ratio());
    put(meta, "rows", std::string("1 k1, 2 k2, 3 x*/w"));
    return {EntropySeries({{1.0, sc.k1_quadrature},
                           {2.0, sc.k2_quadrature},
                           {3.0, holo::critical_separation_ratio()}},
                          "index", meta),
            std::nullopt};
  }
  put(meta, "prefactor", o.prefactor);
  if (o.strip) {
    put(meta, "mode", std::string("strip-entropy"));
    put(meta, "w", o.w);
    put(meta, "L", o.L);
    put(meta, "epsilon", o.epsilon);
    return {one_point_series(o.w, holo::strip_entropy(o.w, o.L, o.epsilon, o.prefactor),
                             "w", meta),
            std::nullopt};
  }
  if (o.mi) {
    const double eps = o.epsilon > 0.0 ? o.epsilon : o.w / 100.0;
    holo::StripConfig cfg(o.w, o.L, o.x, eps, o.prefactor);
    put(meta, "mode", std::string("mi"));
    put(meta, "w", o.w);
    put(meta, "L", o.L);
    put(meta, "x", o.x);
    put(meta, "epsilon", eps);
    return {one_point_series(o.x, holo::two_strip_mutual_information(cfg), "x", meta),
            std::nullopt};
  }
  const auto profile = make_profile(o);
  const auto result = holo::adiabatic_mutual_information(profile, o.prefactor);
  put(meta, "mode", std::string("adiabatic"));
  put(meta, "profile", o.profile);
  put(meta, "x0", o.x0);
  if (o.profile == "parabolic") put(meta, "R", o.R);
  if (o.profile == "corner") put(meta, "m", o.m);
  put(meta, "w0", o.w0);
  put(meta, "ymin", o.ymin);
  put(meta, "ymax", o.ymax);
  put(meta, "max_slope", result.max_slope);
  put(meta, "adiabatic_warning", std::string(result.adiabatic_warning ? "true" : "false"));
  return {one_point_series(o.x0, result.mi, "x0", meta), std::nullopt};
}

struct TwistOpts {
  bool circle = false, sphere = false, wedge = false, cross_flat = false,
       cross_circles = false, mesh_circle = false;
  double R = 0, epsilon = 0, theta = 0, arm = 0;
  double L = 0, x = 0, R1 = 0, R2 = 0, dist = 0;
  int panels = 2048;
  double alpha = 1.0;
  bool transverse = false;
};

CommandResult run_twist(const TwistOpts& o) {
  const int modes = int(o.circle) + int(o.sphere) + int(o.wedge) + int(o.cross_flat) +
                    int(o.cross_circles) + int(o.mesh_circle);
  if (modes != 1)
    throw domain_error(
        "choose exactly one of --circle, --sphere, --wedge, --cross-flat, "
        "--cross-circles, --mesh-circle");
  MetaMap meta;
  put(meta, "command", std::string("twist"));
  put(meta, "norm_alpha", o.alpha);
  put(meta, "transverse", std::string(o.transverse ? "true" : "false"));
  put(meta, "prefactor_convention",
      std::string("values scale with norm_alpha, the theory-dependent replica constant"));
  put(meta, "unit", std::string("nats"));
  const geom::SpatialDim d2{2}, d3{3};
  if (o.circle || o.mesh_circle || o.sphere) {
    twist::TwistKernelConfig cfg(o.sphere ? d3 : d2, o.transverse, o.alpha);
    put(meta, "R", o.R);
    put(meta, "epsilon", o.epsilon);
    double value = 0.0;
    if (o.circle) {
      put(meta, "mode", std::string("circle"));
      value = twist::circle_entropy_reduced(o.R, o.epsilon, cfg);
    } else if (o.sphere) {
      put(meta, "mode", std::string("sphere"));
      value = twist::sphere_entropy_reduced(o.R, o.epsilon, cfg);
    } else {
      put(meta, "mode", std::string("mesh-circle"));
      put(meta, "panels", long(o.panels));
      const auto mesh =
          geom::discretize_boundary(geom::Circle{o.R}, o.panels, d2);
      value = twist::self_entropy_integral(mesh, o.epsilon, cfg);
    }
    return {one_point_series(o.epsilon / o.R, value, "eps_over_R", meta), std::nullopt};
  }
  if (o.wedge) {
    twist::TwistKernelConfig cfg(d2, false, o.alpha);
    put(meta, "mode", std::string("wedge"));
    put(meta, "arm", o.arm);
    put(meta, "normalization", std::string("theta pi/2 maps to 1"));
    return {one_point_series(o.theta, twist::wedge_log_coefficient(o.theta, o.arm, cfg),
                             "theta", meta),
            std::nullopt};
  }
  twist::TwistKernelConfig cfg(d2, o.transverse, o.alpha);
  put(meta, "panels", long(o.panels));
  if (o.cross_flat) {
    put(meta, "mode", std::string("cross-flat"));
    put(meta, "L", o.L);
    put(meta, "x", o.x);
    const auto [a, b] = twist::facing_segments(o.L, o.x, o.panels);
    return {one_point_series(o.x, twist::cross_mutual_information(a, b, cfg), "x", meta),
            std::nullopt};
  }
  put(meta, "mode", std::string("cross-circles"));
  put(meta, "R1", o.R1);
  put(meta, "R2", o.R2);
  put(meta, "dist", o.dist);
  const auto a = geom::discretize_boundary(geom::Circle{o.R1}, o.panels, d2);
  const auto b = geom::translated(
      geom::discretize_boundary(geom::Circle{o.R2}, o.panels, d2), {o.dist, 0.0, 0.0});
  return {one_point_series(o.dist, twist::cross_mutual_information(a, b, cfg), "dist", meta),
          std::nullopt};
}

struct ScanOpts {
  std::string engine;
  std::string param;
  double from = 0, to = 0;
  int points = 0;
  bool log_grid = false, then_fit = false;
  // engine parameters
  double L = 0, c = 1.0, kF = kPi / 2.0, renyi = 1.0;
  double w = 0, prefactor = 1.0;
  std::string profile;
  double R = 0, m = 0, w0 = std::numeric_limits<double>::infinity();
  double ymin = 0, ymax = 0;
  double R1 = 0, R2 = 0;
  int panels = 2048;
  double alpha = 1.0;
  bool transverse = false;
};

void require_param(const ScanOpts& o, const std::string& expected) {
  if (o.param != expected)
    throw domain_error("engine " + o.engine + " sweeps param '" + expected +
                       "', not '" + o.param + "'");
}

CommandResult run_scan(const ScanOpts& o) {
  MetaMap meta;
  put(meta, "command", std::string("scan"));
  put(meta, "engine", o.engine);
  put(meta, "from", o.from);
  put(meta, "to", o.to);
  put(meta, "points", long(o.points));
  put(meta, "grid", std::string(o.log_grid ? "log" : "linear"));
  put(meta, "unit", std::string("nats"));
  std::vector<double> grid = make_grid(o.from, o.to, o.points, o.log_grid);
  std::vector<double> values;
  std::string param_name = o.param;

  if (o.engine == "cft1d") {
    require_param(o, "x");
    put(meta, "L", o.L);
    put(meta, "c", o.c);
    cft1d::CentralCharge charge(o.c);
    const double L = o.L;
    values = evaluate_grid(grid, [L, charge](double x) {
      return cft1d::mutual_information_equal_intervals(L, x, charge);
    });
  } else if (o.engine == "lattice") {
    require_param(o, "x");
    const long L = std::lround(o.L);
    if (L < 1) throw domain_error("L must be a positive site count");
    put(meta, "L", L);
    put(meta, "kF", o.kF);
    put(meta, "renyi", o.renyi);
    lattice::RenyiIndex n(o.renyi);
    std::vector<double> xs;
    for (double g : grid) {
      const long xi = std::max(1L, std::lround(g));
      if (xs.empty() || double(xi) > xs.back()) xs.push_back(double(xi));
    }
    grid = std::move(xs);
    const double kF = o.kF;
    values = evaluate_grid(grid, [L, kF, n](double x) {
      return lattice::lattice_mutual_information(L, std::lround(x), kF, n);
    });
  } else if (o.engine == "holo") {
    require_param(o, "x");
    put(meta, "w", o.w);
    put(meta, "L", o.L);
    put(meta, "prefactor", o.prefactor);
    const double w = o.w, L = o.L, pf = o.prefactor;
    values = evaluate_grid(grid, [w, L, pf](double x) {
      return holo::two_strip_mutual_information(holo::StripConfig(w, L, x, w / 100.0, pf));
    });
  } else if (o.engine == "holo-adiabatic") {
    require_param(o, "x0");
    put(meta, "profile", o.profile);
    if (o.profile == "parabolic") put(meta, "R", o.R);
    if (o.profile == "corner") put(meta, "m", o.m);
    put(meta, "w0", o.w0);
    put(meta, "ymin", o.ymin);
    put(meta, "ymax", o.ymax);
    put(meta, "prefactor", o.prefactor);
    std::atomic<bool> warned{false};
    const ScanOpts& so = o;
    values = evaluate_grid(grid, [&so, &warned](double x0) {
      HoloOpts h;
      h.profile = so.profile;
      h.x0 = x0;
      h.R = so.R;
      h.m = so.m;
      h.w0 = so.w0;
      h.ymin = so.ymin;
      h.ymax = so.ymax;
      const auto r = holo::adiabatic_mutual_information(make_profile(h), so.prefactor);
      if (r.adiabatic_warning) warned.store(true);
      return r.mi;
    });
    put(meta, "adiabatic_warning", std::string(warned.load() ? "true" : "false"));
  } else if (o.engine == "twist-flat") {
    require_param(o, "x");
    put(meta, "L", o.L);
    put(meta, "panels", long(o.panels));
    put(meta, "norm_alpha", o.alpha);
    twist::TwistKernelConfig cfg(geom::SpatialDim{2}, o.transverse, o.alpha);
    const double L = o.L;
    const int panels = o.panels;
    values = evaluate_grid(grid, [L, panels, cfg](double x) {
      const auto [a, b] = twist::facing_segments(L, x, panels);
      return twist::cross_mutual_information(a, b, cfg);
    });
  } else if (o.engine == "twist-circles") {
    require_param(o, "dist");
    put(meta, "R1", o.R1);
    put(meta, "R2", o.R2);
    put(meta, "panels", long(o.panels));
    put(meta, "norm_alpha", o.alpha);
    twist::TwistKernelConfig cfg(geom::SpatialDim{2}, o.transverse, o.alpha);
    const auto base_a = geom::discretize_boundary(geom::Circle{o.R1}, o.panels,
                                                  geom::SpatialDim{2});
    const auto base_b = geom::discretize_boundary(geom::Circle{o.R2}, o.panels,
                                                  geom::SpatialDim{2});
    values = evaluate_grid(grid, [&base_a, &base_b, cfg](double dist) {
      return twist::cross_mutual_information(
          base_a, geom::translated(base_b, {dist, 0.0, 0.0}), cfg);
    });
  } else {
    throw domain_error(
        "engine must be one of cft1d, lattice, holo, holo-adiabatic, twist-flat, "
        "twist-circles");
  }

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) pts.emplace_back(grid[i], values[i]);
  EntropySeries series(std::move(pts), std::move(param_name), std::move(meta));
  std::optional<DivergenceFit> fit;
  if (o.then_fit) fit = scaling::fit_divergence(series);
  return {std::move(series), fit};
}

struct FitOpts {
  std::string input;
};

CommandResult run_fit(const FitOpts& o) {
  EntropySeries series = [&] {
    if (o.input == "-") return parse_csv_series(std::cin);
    std::ifstream in(o.input);
    if (!in) throw domain_error("cannot open input file: " + o.input);
    return parse_csv_series(in);
  }();
  auto fit = scaling::fit_divergence(series);
  return {std::move(series), fit};
}

// Injects "--key=value" tokens from a flat config file just after the
// subcommand token, so explicit flags (parsed later) take precedence.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args,
                                           std::ostream& err) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open config file: " + path);
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw domain_error("config lines must be key=value, got: " + line);
    injected.push_back("--" + line.substr(0, eq) + "=" + line.substr(eq + 1));
  }
  (void)err;
  std::vector<std::string> out;
  out.push_back(args.front());  // subcommand
  for (auto& t : injected) out.push_back(std::move(t));
  for (std::size_t i = 1; i < args.size(); ++i) out.push_back(args[i]);
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entroscope: entanglement-scaling numerics across four engines"};
  app.require_subcommand(1);

  CommonOpts common;
  Cft1dOpts cft;
  LatticeOpts lat;
  HoloOpts hol;
  TwistOpts twi;
  ScanOpts scn;
  FitOpts fit;

  auto* sub_cft = app.add_subcommand("cft1d", "Exact 1+1D free-fermion CFT formulas");
  add_common(sub_cft, common);
  sub_cft->add_flag("--single", cft.single, "Single-interval entropy");
  sub_cft->add_flag("--two-interval", cft.two_interval, "Two-interval entropy");
  sub_cft->add_flag("--mi", cft.mi, "Equal-interval mutual information");
  sub_cft->add_flag("--sing-coeff", cft.sing_coeff, "Collision log coefficient c/3");
  sub_cft->add_option("--L", cft.L, "Interval length");
  sub_cft->add_option("--x", cft.x, "Separation");
  sub_cft->add_option("--epsilon", cft.epsilon, "UV cutoff");
  sub_cft->add_option("--c", cft.c, "Central charge");
  sub_cft->add_option("--a1", cft.a1);
  sub_cft->add_option("--b1", cft.b1);
  sub_cft->add_option("--a2", cft.a2);
  sub_cft->add_option("--b2", cft.b2);

  auto* sub_lat = app.add_subcommand("lattice", "Free-fermion chain oracle");
  add_common(sub_lat, common);
  sub_lat->add_flag("--mi", lat.mi, "Two-block mutual information");
  sub_lat->add_flag("--entropy", lat.entropy, "Block entropy");
  sub_lat->add_option("--L", lat.L, "Block length in sites");
  sub_lat->add_option("--x", lat.x, "Gap in sites");
  sub_lat->add_option("--kF", lat.kF, "Fermi momentum in (0, pi)");
  sub_lat->add_option("--renyi", lat.renyi, "Renyi index n >= 1");
  sub_lat->add_option("--blocks", lat.blocks, "Blocks as start:end[,start:end...]");

  auto* sub_hol = app.add_subcommand("holo", "Minimal-surface strip engine");
  add_common(sub_hol, common);
  sub_hol->add_flag("--constants", hol.constants, "k1, k2 and the critical ratio");
  sub_hol->add_flag("--strip-entropy", hol.strip, "Single-strip entropy");
  sub_hol->add_flag("--mi", hol.mi, "Two-strip mutual information");
  sub_hol->add_flag("--adiabatic", hol.adiabatic, "Curved-strip collision MI");
  sub_hol->add_option("--w", hol.w, "Strip width");
  sub_hol->add_option("--L", hol.L, "Strip length");
  sub_hol->add_option("--x", hol.x, "Strip separation");
  sub_hol->add_option("--epsilon", hol.epsilon, "Bulk UV cutoff");
  sub_hol->add_option("--prefactor", hol.prefactor, "Overall L_Lambda^2/(4 G_N)");
  sub_hol->add_option("--profile", hol.profile, "parabolic or corner");
  sub_hol->add_option("--x0", hol.x0, "Closest approach");
  sub_hol->add_option("--R", hol.R, "Radius of curvature (parabolic)");
  sub_hol->add_option("--m", hol.m, "Corner slope");
  sub_hol->add_option("--w0", hol.w0, "Strip width (inf allowed)");
  sub_hol->add_option("--ymin", hol.ymin, "Profile range start");
  sub_hol->add_option("--ymax", hol.ymax, "Profile range end");

  auto* sub_twi = app.add_subcommand("twist", "Gaussian twist-operator engine");
  add_common(sub_twi, common);
  sub_twi->add_flag("--circle", twi.circle, "Reduced circle self-integral");
  sub_twi->add_flag("--sphere", twi.sphere, "Reduced sphere self-integral");
  sub_twi->add_flag("--wedge", twi.wedge, "Wedge log coefficient");
  sub_twi->add_flag("--cross-flat", twi.cross_flat, "Facing-segment MI");
  sub_twi->add_flag("--cross-circles", twi.cross_circles, "Circle-pair MI");
  sub_twi->add_flag("--mesh-circle", twi.mesh_circle, "Panel-sum circle self-integral");
  sub_twi->add_option("--R", twi.R, "Radius");
  sub_twi->add_option("--epsilon", twi.epsilon, "Cutoff");
  sub_twi->add_option("--theta", twi.theta, "Wedge deficit angle in (0, pi)");
  sub_twi->add_option("--arm", twi.arm, "Wedge arm length");
  sub_twi->add_option("--L", twi.L, "Segment length");
  sub_twi->add_option("--x", twi.x, "Segment separation");
  sub_twi->add_option("--R1", twi.R1, "First circle radius");
  sub_twi->add_option("--R2", twi.R2, "Second circle radius");
  sub_twi->add_option("--dist", twi.dist, "Circle center distance");
  sub_twi->add_option("--panels", twi.panels, "Panels per mesh");
  sub_twi->add_option("--alpha", twi.alpha, "norm_alpha prefactor");
  sub_twi->add_flag("--transverse", twi.transverse, "Include the transverse kernel term");

  auto* sub_scn = app.add_subcommand("scan", "Sweep a parameter and optionally fit");
  add_common(sub_scn, common);
  sub_scn->add_option("--engine", scn.engine,
                      "cft1d|lattice|holo|holo-adiabatic|twist-flat|twist-circles")
      ->required();
  sub_scn->add_option("--param", scn.param, "Swept parameter name")->required();
  sub_scn->add_option("--from", scn.from)->required();
  sub_scn->add_option("--to", scn.to)->required();
  sub_scn->add_option("--points", scn.points)->required();
  sub_scn->add_flag("--log-grid", scn.log_grid, "Geometric grid");
  sub_scn->add_flag("--then-fit", scn.then_fit, "Attach a divergence fit");
  sub_scn->add_option("--L", scn.L);
  sub_scn->add_option("--c", scn.c);
  sub_scn->add_option("--kF", scn.kF);
  sub_scn->add_option("--renyi", scn.renyi);
  sub_scn->add_option("--w", scn.w);
  sub_scn->add_option("--prefactor", scn.prefactor);
  sub_scn->add_option("--profile", scn.profile);
  sub_scn->add_option("--R", scn.R);
  sub_scn->add_option("--m", scn.m);
  sub_scn->add_option("--w0", scn.w0);
  sub_scn->add_option("--ymin", scn.ymin);
  sub_scn->add_option("--ymax", scn.ymax);
  sub_scn->add_option("--R1", scn.R1);
  sub_scn->add_option("--R2", scn.R2);
  sub_scn->add_option("--panels", scn.panels);
  sub_scn->add_option("--alpha", scn.alpha);
  sub_scn->add_flag("--transverse", scn.transverse);

  auto* sub_fit = app.add_subcommand("fit", "Fit a stored CSV series");
  add_common(sub_fit, common);
  sub_fit->add_option("--input", fit.input, "CSV path, '-' for stdin")->required();

  try {
    const std::vector<std::string> args = apply_config_file(raw_args, err);
    // CLI11 parses tokens in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    CommandResult result;
    if (sub_cft->parsed()) result = run_cft1d(cft);
    else if (sub_lat->parsed()) result = run_lattice(lat);
    else if (sub_hol->parsed()) result = run_holo(hol);
    else if (sub_twi->parsed()) result = run_twist(twi);
    else if (sub_scn->parsed()) result = run_scan(scn);
    else result = run_fit(fit);

    const OutputFormat format =
        common.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (common.output == "-") {
      emit_series(result.series, result.fit, format, out);
    } else {
      std::ofstream file(common.output);
      if (!file) throw domain_error("cannot open output path: " + common.output);
      emit_series(result.series, result.fit, format, file);
      if (!file.good()) throw domain_error("failed writing output: " + common.output);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace entroscope::cli
