#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "heunwell/cli.hpp"
#include "heunwell/errors.hpp"
#include "heunwell/heun.hpp"
#include "heunwell/json_io.hpp"
#include "heunwell/oracle.hpp"
#include "heunwell/potential.hpp"
#include "heunwell/spectrum.hpp"
#include "heunwell/wavefunction.hpp"

namespace heunwell::cli {

namespace {

struct Common {
  PotentialParams p;
  std::string variant = "well";
  std::string output;
  std::string format;
  std::string config;
  int digits = 15;
};

struct Range {
  std::optional<double> x_start;
  std::optional<double> x_end;
  std::size_t n = 1001;
};

struct Options {
  Range range;
  std::string closed_form;
  bool asymptotes = false;
  bool with_z = false;
  double E = 0.0;
  double c1 = 0.0;
  double c2 = 1.0;
  int s0 = 1, s1 = 1, s2 = 1;
  std::optional<double> E_min;
  std::size_t n_scan = 2000;
  std::optional<double> x_max;
  std::size_t n_nodes = 4000;
  std::optional<double> E_start, E_end;
  double a_start = -10.0, a_end = -0.01;
  std::size_t oracle_n = 200001;
  std::size_t oracle_scan = 600;
  std::size_t stride = 100;
  double inject_V2 = 0.0;
  bool skip_oracle = false;
};

std::vector<std::string> provenance(const std::string& command, const PotentialParams& p) {
  return {std::string("heunwell ") + HEUNWELL_VERSION + " " + command, describe(p)};
}

// Default x-window: inside the image, ten |sigma| wide on each open side.
std::pair<double, double> default_window(const PotentialParams& p, bool whole_line, double reach = 10.0) {
  const double s = std::abs(p.sigma);
  if (whole_line || p.variant == Variant::barrier) return {p.x0 - reach * s, p.x0 + reach * s};
  if (p.sigma > 0.0) return {p.x0 + 0.01 * s, p.x0 + reach * s};
  return {p.x0 - reach * s, p.x0 - 0.01 * s};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw InvalidParameter("--n must be at least 2");
  if (!(hi > lo)) throw InvalidParameter("--x-end must exceed --x-start");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  xs.back() = hi;
  return xs;
}

std::string csv(const Table& t, int digits) {
  std::ostringstream s;
  write_csv(s, t, digits);
  return s.str();
}

std::string cmd_potential(const Common& c, const Options& o) {
  const PotentialParams& p = c.p;
  const bool closed = !o.closed_form.empty();
  if (o.closed_form == "a-minus1" && std::abs(p.a + 1.0) > 1e-12) {
    throw InvalidParameter("--closed-form a-minus1 requires --a -1");
  }
  const auto [lo, hi] = default_window(p, closed);
  const auto xs = linspace(o.range.x_start.value_or(lo), o.range.x_end.value_or(hi), o.range.n);

  Table t;
  t.comments = provenance("potential", p);
  t.columns = {"x", "V"};
  if (o.with_z) t.columns.push_back("z");
  const bool asym = o.asymptotes && !closed && p.variant == Variant::well;
  if (asym) {
    t.columns.push_back("origin_asymptote");
    t.columns.push_back("tail_asymptote");
  }
  if (o.closed_form == "a-minus1") {
    t.comments.push_back("closed form a=-1; parametric equivalent: " + describe(a_minus1_parametric_equivalent(p)));
  } else if (o.closed_form == "cubic") {
    t.comments.push_back("closed form cubic; parametric equivalent: " + describe(cubic_parametric_equivalent(p)));
  }
  for (double x : xs) {
    std::vector<double> row{x};
    if (closed) {
      const BranchPoint pt = o.closed_form == "cubic" ? cubic_z(x, p) : a_minus1_z(x, p);
      row.push_back(p.V0 + p.V1 / pt.z);
      if (o.with_z) row.push_back(pt.z);
    } else {
      row.push_back(potential_value(x, p));
      if (o.with_z) row.push_back(z_of_x(x, p));
    }
    if (asym) {
      row.push_back(p.V0 + asymptote_origin(x, p));
      row.push_back(p.V0 + p.V1 + asymptote_infinity(x, p));
    }
    t.rows.push_back(std::move(row));
  }
  return csv(t, c.digits);
}

std::string cmd_wavefunction(const Common& c, const Options& o) {
  const WaveSolution ws{c.p, o.E, ExponentSigns{o.s0, o.s1, o.s2}, o.c1, o.c2};
  const auto [lo, hi] = default_window(c.p, false, 20.0);
  const auto xs = linspace(o.range.x_start.value_or(lo), o.range.x_end.value_or(hi), o.range.n);
  const auto points = locate_sorted(xs, c.p);
  Table t;
  t.comments = provenance("wavefunction", c.p);
  t.comments.push_back("E=" + format_number(o.E) + " c1=" + format_number(o.c1) + " c2=" + format_number(o.c2) +
                       " signs=" + std::to_string(o.s0) + "," + std::to_string(o.s1) + "," + std::to_string(o.s2));
  t.columns = {"x", "re_psi", "im_psi"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const cplx psi = psi_general(points[i], ws);
    t.rows.push_back({xs[i], psi.real(), psi.imag()});
  }
  return csv(t, c.digits);
}

std::string cmd_spectrum(const Common& c, const Options& o) {
  AnalyzeOptions opts;
  opts.E_min = o.E_min;
  opts.n_scan = o.n_scan;
  opts.x_max = o.x_max;
  opts.n_nodes = o.n_nodes;
  const SpectrumResult r = analyze(c.p, opts);
  nlohmann::json j = to_json(r);
  j["params"] = to_json(c.p);
  return j.dump(2) + "\n";
}

std::string cmd_scan(const Common& c, const Options& o) {
  const double lo = o.E_start.value_or(default_energy_floor(c.p));
  const double hi = o.E_end.value_or(-1e-6);
  if (!(hi < 0.0)) throw InvalidParameter("--E-end must be negative");
  const auto es = linspace(lo, hi, o.range.n);
  Table t;
  t.comments = provenance("scan", c.p);
  t.columns = {"E", "S"};
  for (double E : es) {
    double S = std::nan("");
    try {
      S = spectrum_function(E, c.p);
    } catch (const PoleError&) {
      // left as nan: S is infinite here
    }
    t.rows.push_back({E, S});
  }
  return csv(t, c.digits);
}

std::string cmd_zero_energy(const Common& c, const Options& o) {
  const PotentialParams& p = c.p;
  const ZeroEnergySolution sol(p, o.c1 == 0.0 ? 1.0 : o.c1);
  const auto [lo, hi] = default_window(p, false, 100.0);
  const double x_start = o.range.x_start.value_or(lo);
  const double x_end = o.range.x_end.value_or(hi);
  const auto xs = linspace(x_start, x_end, o.range.n);
  // Log-asymptote fitted over the last decade of the window.
  const double far = p.sigma > 0.0 ? x_end : x_start;
  const LogTailFit fit = fit_log_tail(sol, p.x0 + 0.1 * (far - p.x0), far);
  const auto points = locate_sorted(xs, p);
  Table t;
  t.comments = provenance("zero-energy", p);
  t.comments.push_back("c1=" + format_number(sol.c1().real()) + " c2=" + format_number(sol.c2().real()) +
                       " tail A=" + format_number(fit.A) + " B=" + format_number(fit.B) +
                       " fit_residual=" + format_number(fit.residual));
  t.columns = {"x", "psi", "asymptote"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    t.rows.push_back({xs[i], sol.at(points[i]).real(), fit.A + fit.B * std::log(points[i].one_minus_z)});
  }
  return csv(t, c.digits);
}

std::string cmd_estimates(const Common& c) {
  nlohmann::json j;
  j["params"] = to_json(c.p);
  j["bargmann"] = json_number(bargmann_bound(c.p));
  const CalogeroBounds cb = calogero_chadan_bounds(c.p);
  j["calogero"] = json_number(cb.calogero);
  j["chadan"] = json_number(cb.chadan);
  j["small_a_cap"] = json_number(small_a_cap(c.p));
  return j.dump(2) + "\n";
}

std::string cmd_chadan_curve(const Common& c, const Options& o) {
  const GridFunction g = chadan_curve(c.p, o.a_start, o.a_end, o.range.n);
  Table t = to_table(g, "a", "n_c");
  t.comments = provenance("chadan-curve", c.p);
  return csv(t, c.digits);
}

std::string cmd_oracle(const Common& c, const Options& o) {
  ShootingConfig cfg;
  cfg.n = o.oracle_n;
  cfg.n_scan = o.oracle_scan;
  if (o.E_min) cfg.E_lo = o.E_min;
  if (o.x_max) cfg.x_max = o.x_max;
  const ShootingResult r = shooting_eigenvalues(c.p, cfg);
  if (c.format == "csv") {
    if (o.stride == 0) throw InvalidParameter("--stride must be positive");
    std::vector<GridFunction> states;
    for (double E : r.energies) states.push_back(reference_wavefunction(E, c.p, cfg));
    Table t;
    t.comments = provenance("oracle", c.p);
    std::string levels = "energies:";
    for (double E : r.energies) levels += " " + format_number(E);
    t.comments.push_back(levels);
    t.columns = {"x"};
    for (std::size_t k = 0; k < states.size(); ++k) t.columns.push_back("psi_" + std::to_string(k));
    const GridFunction grid = numerov_integrate(0.0, c.p, cfg);
    for (std::size_t i = 0; i < grid.size(); i += o.stride) {
      std::vector<double> row{grid.x(i)};
      for (const auto& s : states) row.push_back(s.values[i]);
      t.rows.push_back(std::move(row));
    }
    return csv(t, c.digits);
  }
  nlohmann::json j;
  j["params"] = to_json(c.p);
  nlohmann::json energies = nlohmann::json::array();
  for (double E : r.energies) energies.push_back(json_number(E));
  j["eigenvalues"] = energies;
  j["node_counts"] = r.node_counts;
  j["renormalizations"] = r.renormalizations;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string cmd_verify(const Common& c, const Options& o) {
  VerifyOptions opts;
  opts.inject_V2 = o.inject_V2;
  opts.run_oracle = !o.skip_oracle;
  nlohmann::json j = to_json(verify(c.p, opts));
  j["params"] = to_json(c.p);
  return j.dump(2) + "\n";
}

std::string cmd_debug_map(const Common& c, const Options& o) {
  nlohmann::json j = to_json(heun_params(o.E, c.p, ExponentSigns{o.s0, o.s1, o.s2}));
  j["termination_residual"] = json_number(termination_check(heun_params(o.E, c.p, ExponentSigns{o.s0, o.s1, o.s2})));
  return j.dump(2) + "\n";
}

// Applies config entries to options that were not given on the command line.
void apply_config(CLI::App& app, CLI::App& sub, const std::string& path) {
  for (const auto& [key, value] : read_config_file(path)) {
    const std::string flag = "--" + key;
    CLI::Option* opt = sub.get_option_no_throw(flag);
    if (!opt) opt = app.get_option_no_throw(flag);
    if (!opt || flag == "--config") throw InvalidParameter("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;  // flags win
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singular-well / step-barrier hypergeometric potential toolkit"};
  app.set_version_flag("--version", std::string(HEUNWELL_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  Options o;
  auto* opt_a = app.add_option("--a", c.p.a, "singularity position a (a != 0, 1)");
  auto* opt_sigma = app.add_option("--sigma", c.p.sigma, "length scale sigma (nonzero)");
  app.add_option("--x0", c.p.x0, "origin shift x0");
  auto* opt_V0 = app.add_option("--V0", c.p.V0, "constant term V0");
  auto* opt_V1 = app.add_option("--V1", c.p.V1, "coefficient V1 of 1/z");
  app.add_option("--variant", c.variant, "well or barrier")->check(CLI::IsMember({"well", "barrier"}));
  app.add_option("--m", c.p.m, "mass");
  app.add_option("--hbar", c.p.hbar, "reduced Planck constant");
  app.add_option("--config", c.config, "key = value parameter file (flags take precedence)");
  app.add_option("-o,--output", c.output, "write to this file instead of stdout");
  app.add_option("--format", c.format, "json or csv (oracle only)")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--digits", c.digits, "significant digits in CSV output")->check(CLI::Range(1, 17));

  auto add_range = [&o](CLI::App* sub, std::size_t default_n) {
    o.range.n = default_n;
    sub->add_option("--x-start", o.range.x_start, "first x sample");
    sub->add_option("--x-end", o.range.x_end, "last x sample");
    sub->add_option("--n", o.range.n, "number of samples")->capture_default_str();
  };
  auto add_signs = [&o](CLI::App* sub) {
    sub->add_option("--s0", o.s0, "sign of alpha0")->check(CLI::IsMember({-1, 1}));
    sub->add_option("--s1", o.s1, "sign of alpha1")->check(CLI::IsMember({-1, 1}));
    sub->add_option("--s2", o.s2, "sign of alpha2")->check(CLI::IsMember({-1, 1}));
  };

  auto* potential = app.add_subcommand("potential", "sample V(x) as CSV");
  add_range(potential, 1001);
  potential->add_option("--closed-form", o.closed_form, "a-minus1 or cubic")
      ->check(CLI::IsMember({"a-minus1", "cubic"}));
  potential->add_flag("--asymptotes", o.asymptotes, "add origin and tail asymptote columns (well)");
  potential->add_flag("--with-z", o.with_z, "add the z(x) column");

  auto* wavefunction = app.add_subcommand("wavefunction", "sample the general solution as CSV (x, Re psi, Im psi)");
  add_range(wavefunction, 1001);
  wavefunction->add_option("--E", o.E, "energy")->required();
  wavefunction->add_option("--c1", o.c1, "first-kind coefficient")->capture_default_str();
  wavefunction->add_option("--c2", o.c2, "second-kind coefficient")->capture_default_str();
  add_signs(wavefunction);

  auto* spectrum = app.add_subcommand("spectrum", "bound states, node count and estimates as JSON");
  spectrum->add_option("--E-min", o.E_min, "lower end of the energy scan");
  spectrum->add_option("--n-scan", o.n_scan, "scan cells")->capture_default_str();
  spectrum->add_option("--x-max", o.x_max, "reach of the zero-energy node count");
  spectrum->add_option("--n-nodes", o.n_nodes, "zero-energy samples")->capture_default_str();

  auto* scan = app.add_subcommand("scan", "spectrum function S(E) as CSV");
  add_range(scan, 1000);
  scan->add_option("--E-start", o.E_start, "first energy");
  scan->add_option("--E-end", o.E_end, "last energy (negative)");

  auto* zero = app.add_subcommand("zero-energy", "zero-energy solution and its log asymptote as CSV");
  add_range(zero, 2001);
  zero->add_option("--c1", o.c1, "first-term coefficient (default 1)");

  app.add_subcommand("estimates", "Bargmann, Calogero and Chadan estimates as JSON");

  auto* chadan = app.add_subcommand("chadan-curve", "n_c(a) as CSV");
  chadan->add_option("--a-start", o.a_start, "first a")->capture_default_str();
  chadan->add_option("--a-end", o.a_end, "last a")->capture_default_str();
  chadan->add_option("--n", o.range.n, "number of samples")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Numerov shooting eigenvalues (json) or eigenfunctions (csv)");
  oracle->add_option("--grid", o.oracle_n, "Numerov grid points")->capture_default_str();
  oracle->add_option("--n-scan", o.oracle_scan, "energy scan cells")->capture_default_str();
  oracle->add_option("--E-min", o.E_min, "lower end of the energy scan");
  oracle->add_option("--x-max", o.x_max, "tail cutoff measured from x0");
  oracle->add_option("--stride", o.stride, "CSV row stride")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "self-consistency report as JSON");
  verify_cmd->add_option("--V2", o.inject_V2, "inject a V2/z^2 term into the termination identity");
  verify_cmd->add_flag("--skip-oracle", o.skip_oracle, "omit the Numerov cross-check");

  auto* debug = app.add_subcommand("debug-map", "Heun parameters at one energy as JSON");
  debug->add_option("--E", o.E, "energy")->required();
  add_signs(debug);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  std::string text;
  try {
    if (!c.config.empty()) {
      try {
        apply_config(app, *sub, c.config);
      } catch (const CLI::ParseError& e) {
        throw InvalidParameter(std::string("config file: ") + e.what());
      }
    }
    for (auto* required : {opt_a, opt_sigma, opt_V0, opt_V1}) {
      if (name == "chadan-curve" && required == opt_a) continue;
      if (required->count() == 0) throw InvalidParameter("missing required parameter " + required->get_name());
    }
    c.p.variant = parse_variant(c.variant);
    if (name == "chadan-curve") {
      if (opt_a->count() == 0) c.p.a = o.a_start;
    }
    if (c.format.empty()) c.format = "json";
    if (name != "potential" || o.closed_form.empty()) c.p.validate();

    if (name == "potential") text = cmd_potential(c, o);
    else if (name == "wavefunction") text = cmd_wavefunction(c, o);
    else if (name == "spectrum") text = cmd_spectrum(c, o);
    else if (name == "scan") text = cmd_scan(c, o);
    else if (name == "zero-energy") text = cmd_zero_energy(c, o);
    else if (name == "estimates") text = cmd_estimates(c);
    else if (name == "chadan-curve") text = cmd_chadan_curve(c, o);
    else if (name == "oracle") text = cmd_oracle(c, o);
    else if (name == "verify") text = cmd_verify(c, o);
    else if (name == "debug-map") text = cmd_debug_map(c, o);
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (c.output.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file || !(file << text)) {
    err << "error: cannot write '" << c.output << "'\n";
    return 1;
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"heunwell"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace heunwell::cli
