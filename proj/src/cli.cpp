#include "tracelab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "tracelab/errors.hpp"
#include "tracelab/green.hpp"
#include "tracelab/intervals.hpp"
#include "tracelab/io.hpp"
#include "tracelab/measure.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/schrodinger.hpp"
#include "tracelab/substitution.hpp"
#include "tracelab/surface.hpp"
#include "tracelab/verify.hpp"
#include "tracelab/version.hpp"

namespace tracelab {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct RunConfig {
  std::string sub = "a>ab;b>a";
  double kappa = 0.0;
  std::string grid;          // "lo:hi:step", empty = command default
  std::string complex_grid;  // "re_lo:re_hi:im_lo:im_hi:n"
  std::size_t N = 10000;     // transfer-matrix length
  std::size_t L = 1000;      // Dirichlet block length
  std::size_t windows = 32;  // number of Dirichlet blocks
  int n_power = 5;           // substitution power for the lattice size
  double target = 2.0;       // mixed-boundary-condition trace level
  std::string method = "green";
  double rescape = 1e3;
  int nmax = 60;
  double tol = 1e-9;
  double gamma_max = 0.0;  // 0 = scale to the grid maximum
  std::string out_dir = ".";
  unsigned workers = 1;
  bool quick = false;
  std::uint64_t seed = DEFAULT_SEED;
};

struct RealGrid {
  double lo, hi, step;
};

struct ComplexGrid {
  double re_lo, re_hi, im_lo, im_hi;
  std::size_t n;
};

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    std::string tok = text.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidArgument("bad number '" + tok + "' in grid '" + text + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

RealGrid parse_real_grid(const std::string& text) {
  std::vector<double> v = split_numbers(text, ':');
  if (v.size() != 3)
    throw InvalidArgument("--grid expects lo:hi:step, got '" + text + "'");
  RealGrid g{v[0], v[1], v[2]};
  if (!(g.step > 0.0) || g.hi < g.lo)
    throw InvalidArgument("--grid needs hi >= lo and step > 0");
  return g;
}

ComplexGrid parse_complex_grid(const std::string& text) {
  std::vector<double> v = split_numbers(text, ':');
  if (v.size() != 5)
    throw InvalidArgument(
        "--complex-grid expects re_lo:re_hi:im_lo:im_hi:n, got '" + text +
        "'");
  ComplexGrid g{v[0], v[1], v[2], v[3], std::size_t(std::llround(v[4]))};
  if (g.re_hi < g.re_lo || g.im_hi < g.im_lo || g.n < 2 ||
      double(g.n) != v[4])
    throw InvalidArgument(
        "--complex-grid needs re_hi >= re_lo, im_hi >= im_lo, integer n >= 2");
  return g;
}

std::vector<double> real_grid_points(const RealGrid& g) {
  std::vector<double> pts;
  std::size_t n = std::size_t(std::floor((g.hi - g.lo) / g.step + 1e-9)) + 1;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(g.lo + double(i) * g.step);
  return pts;
}

// The manifest covers every parameter that can change output content; the
// worker count is deliberately excluded (results are identical for any
// worker count) and appended unhashed, so reruns with different parallelism
// produce byte-identical data files.
std::pair<ojson, std::string> build_manifest(const RunConfig& cfg,
                                             const std::string& command) {
  ojson m;
  m["command"] = command;
  m["version"] = TRACELAB_VERSION;
  m["substitution"] = cfg.sub;
  m["kappa"] = cfg.kappa;
  m["grid"] = cfg.grid;
  m["complex_grid"] = cfg.complex_grid;
  m["N"] = cfg.N;
  m["L"] = cfg.L;
  m["windows"] = cfg.windows;
  m["n_power"] = cfg.n_power;
  m["target"] = cfg.target;
  m["method"] = cfg.method;
  m["rescape"] = cfg.rescape;
  m["nmax"] = cfg.nmax;
  m["tol"] = cfg.tol;
  m["gamma_max"] = cfg.gamma_max;
  m["quick"] = cfg.quick;
  m["seed"] = cfg.seed;
  std::string hash = fnv1a_hex(m.dump());
  m["workers"] = cfg.workers;
  m["hash"] = hash;
  return {std::move(m), std::move(hash)};
}

std::ofstream open_out(const fs::path& p, bool binary = false) {
  std::ofstream os(p, binary ? std::ios::binary : std::ios::out);
  if (!os) throw InvalidArgument("cannot open output file: " + p.string());
  return os;
}

// writes <command>_manifest.json (hyphens in the command become underscores)
std::string emit_manifest(const RunConfig& cfg, const std::string& command) {
  auto [m, hash] = build_manifest(cfg, command);
  fs::create_directories(cfg.out_dir);
  std::string stem = command;
  std::replace(stem.begin(), stem.end(), '-', '_');
  auto os = open_out(fs::path(cfg.out_dir) / (stem + "_manifest.json"));
  os << m.dump(2) << "\n";
  return hash;
}

EscapeParams escape_params(const RunConfig& cfg) {
  EscapeParams ep;
  ep.r_escape = cfg.rescape;
  ep.n_max = cfg.nmax;
  ep.tol = cfg.tol;
  return ep;
}

// ---------------------------------------------------------------------------

int cmd_info(const RunConfig& cfg, std::ostream& out) {
  Substitution sub = Substitution::parse(cfg.sub);
  Classification cls = classify(sub);
  out << "substitution: " << sub.str() << "\n";
  out << "abelianization M: " << cls.M.str() << "\n";
  out << "det: " << cls.M.det() << "\n";
  out << "trace: " << cls.M.tr() << "\n";
  out << "hyperbolic: " << (cls.hyperbolic ? "yes" : "no") << "\n";
  if (!cls.hyperbolic) {
    out << "not hyperbolic\n";
    return 2;
  }
  AbelianData ab = abelian_data(sub);
  out << "lambda: " << format_g12(ab.lambda) << "\n";
  out << "normal form N: " << ab.N.str() << "\n";
  out << "conjugator C: " << ab.conjugator.str() << "\n";
  out << "alpha: " << format_g12(ab.alpha) << "\n";
  out << "beta: " << format_g12(ab.beta) << "\n";
  try {
    TraceMap tm =
        trace_map(sub, Complex(4.0 + cfg.kappa * cfg.kappa, 0.0));
    out << "v+: " << vertex_name(infinity_vertex(tm, Direction::Forward))
        << "\n";
  } catch (const Error&) {
    out << "v+: (not determined)\n";
  }
  try {
    out << "u+: " << invariant_word_prefix(sub, 60) << "\n";
  } catch (const Error&) {
    out << "u+: (substitution is not positive)\n";
  }
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  Substitution sub = Substitution::parse(cfg.sub);
  RealGrid g =
      cfg.grid.empty()
          ? RealGrid{-2.5 + std::min(0.0, cfg.kappa),
                     2.5 + std::max(0.0, cfg.kappa), 0.005}
          : parse_real_grid(cfg.grid);
  OperatorFamily fam = operator_family(sub, cfg.kappa, 2);
  SpectrumEstimate est =
      spectrum_escape(fam, g.lo, g.hi, g.step, escape_params(cfg));
  std::string hash = emit_manifest(cfg, "spectrum");
  fs::path dir(cfg.out_dir);
  {
    auto os = open_out(dir / "spectrum_inner.csv");
    write_intervals_csv(os, hash, est.inner);
  }
  {
    auto os = open_out(dir / "spectrum_outer.csv");
    write_intervals_csv(os, hash, est.outer);
  }
  out << "spectrum: " << est.inner.parts().size() << " inner / "
      << est.outer.parts().size() << " outer bands -> " << dir.string()
      << "\n";
  return 0;
}

int cmd_dos(const RunConfig& cfg, std::ostream& out) {
  Substitution sub = Substitution::parse(cfg.sub);
  OperatorFamily fam =
      operator_family(sub, cfg.kappa, cfg.L * cfg.windows);
  SpectralMeasure dos =
      density_of_states(fam, cfg.L, cfg.windows, int(cfg.workers));
  std::string hash = emit_manifest(cfg, "dos");
  auto os = open_out(fs::path(cfg.out_dir) / "dos.csv");
  write_measure_csv(os, hash, dos);
  out << "dos: " << dos.size() << " atoms -> "
      << (fs::path(cfg.out_dir) / "dos.csv").string() << "\n";
  return 0;
}

int cmd_lyapunov(const RunConfig& cfg, std::ostream& out) {
  Substitution sub = Substitution::parse(cfg.sub);
  if (cfg.grid.empty() == cfg.complex_grid.empty())
    throw InvalidArgument(
        "lyapunov needs exactly one of --grid or --complex-grid");

  std::vector<Complex> pts;
  if (!cfg.grid.empty()) {
    for (double e : real_grid_points(parse_real_grid(cfg.grid)))
      pts.emplace_back(e, 0.0);
  } else {
    ComplexGrid g = parse_complex_grid(cfg.complex_grid);
    for (std::size_t k = 0; k < g.n; ++k) {
      double im = g.im_lo + (g.im_hi - g.im_lo) * double(k) / double(g.n - 1);
      for (std::size_t j = 0; j < g.n; ++j) {
        double re =
            g.re_lo + (g.re_hi - g.re_lo) * double(j) / double(g.n - 1);
        pts.emplace_back(re, im);
      }
    }
  }

  std::vector<std::string> methods;
  if (cfg.method == "all")
    methods = {"direct", "green", "thouless"};
  else if (cfg.method == "direct" || cfg.method == "green" ||
           cfg.method == "thouless")
    methods = {cfg.method};
  else
    throw InvalidArgument("unknown --method '" + cfg.method + "'");

  bool need_family =
      std::count(methods.begin(), methods.end(), "thouless") <
      long(methods.size());
  OperatorFamily fam;
  if (need_family)
    fam = operator_family(sub, cfg.kappa, std::max<std::size_t>(cfg.N, 2));
  SpectralMeasure dos;
  if (std::count(methods.begin(), methods.end(), "thouless") > 0) {
    OperatorFamily dfam =
        operator_family(sub, cfg.kappa, cfg.L * cfg.windows);
    dos = density_of_states(dfam, cfg.L, cfg.windows, int(cfg.workers));
  }

  EscapeParams ep = escape_params(cfg);
  std::vector<std::vector<std::string>> rows;
  for (const std::string& method : methods) {
    std::vector<double> vals(pts.size());
    parallel_for(pts.size(), cfg.workers, [&](std::size_t i) {
      if (method == "direct") {
        vals[i] = lyapunov_direct(fam, pts[i], cfg.N);
      } else if (method == "green") {
        vals[i] = lyapunov_green(fam, pts[i], ep);
      } else {
        try {
          vals[i] = lyapunov_thouless(dos, pts[i]);
        } catch (const AtAtom&) {
          vals[i] = std::numeric_limits<double>::quiet_NaN();
        }
      }
    });
    for (std::size_t i = 0; i < pts.size(); ++i)
      rows.push_back({format_g12(pts[i].real()), format_g12(pts[i].imag()),
                      std::isnan(vals[i]) ? "nan" : format_g12(vals[i]),
                      method});
  }

  std::string hash = emit_manifest(cfg, "lyapunov");
  auto os = open_out(fs::path(cfg.out_dir) / "lyapunov.csv");
  write_csv(os, hash, {"re", "im", "gamma", "method"}, rows);
  out << "lyapunov: " << rows.size() << " rows -> "
      << (fs::path(cfg.out_dir) / "lyapunov.csv").string() << "\n";
  return 0;
}

int cmd_green_map(const RunConfig& cfg, std::ostream& out) {
  Substitution sub = Substitution::parse(cfg.sub);
  ComplexGrid g = parse_complex_grid(
      cfg.complex_grid.empty() ? "-3:3:-1:1:101" : cfg.complex_grid);
  OperatorFamily fam = operator_family(sub, cfg.kappa, 2);
  EscapeParams ep = escape_params(cfg);

  const std::size_t n = g.n;
  std::vector<double> vals(n * n);  // index k*n+j, im ascending with k
  parallel_for(n * n, cfg.workers, [&](std::size_t i) {
    std::size_t k = i / n, j = i % n;
    double im = g.im_lo + (g.im_hi - g.im_lo) * double(k) / double(n - 1);
    double re = g.re_lo + (g.re_hi - g.re_lo) * double(j) / double(n - 1);
    vals[i] = lyapunov_green(fam, Complex(re, im), ep);
  });

  double gamma_max = cfg.gamma_max;
  if (gamma_max <= 0.0) {
    for (double v : vals)
      if (std::isfinite(v)) gamma_max = std::max(gamma_max, v);
    if (gamma_max <= 0.0) gamma_max = 1.0;
  }

  std::string hash = emit_manifest(cfg, "green-map");
  fs::path dir(cfg.out_dir);
  {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      double im = g.im_lo + (g.im_hi - g.im_lo) * double(k) / double(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        double re =
            g.re_lo + (g.re_hi - g.re_lo) * double(j) / double(n - 1);
        rows.push_back({format_g12(re), format_g12(im),
                        format_g12(vals[k * n + j]), "green"});
      }
    }
    auto os = open_out(dir / "green_map.csv");
    write_csv(os, hash, {"re", "im", "gamma", "method"}, rows);
  }
  {
    // image rows run top-down: row 0 holds the highest imaginary part
    std::vector<std::uint16_t> pixels(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t k = n - 1 - r;
      for (std::size_t j = 0; j < n; ++j) {
        double v = vals[k * n + j] / gamma_max;
        v = std::clamp(v, 0.0, 1.0);
        pixels[r * n + j] = std::uint16_t(std::lround(v * 65535.0));
      }
    }
    auto os = open_out(dir / "green_map.pgm", /*binary=*/true);
    write_pgm16(os, hash, n, n, pixels);
  }
  out << "green-map: " << n << "x" << n << " grid, gamma_max "
      << format_g12(gamma_max) << " -> " << dir.string() << "\n";
  return 0;
}

int cmd_lambda_points(const RunConfig& cfg, std::ostream& out) {
  Substitution sub = Substitution::parse(cfg.sub);
  if (cfg.n_power < 1) throw InvalidArgument("--n-power must be >= 1");
  Word w = "a";
  for (int i = 0; i < cfg.n_power; ++i) w = substitute(sub, w);
  const std::size_t ell = w.size();
  OperatorFamily fam =
      operator_family(sub, cfg.kappa, std::max<std::size_t>(ell, 2));
  std::vector<double> roots = mixed_bc_eigenvalues(fam, ell, cfg.target);

  std::string hash = emit_manifest(cfg, "lambda-points");
  std::vector<std::vector<std::string>> rows;
  rows.reserve(roots.size());
  for (double r : roots) rows.push_back({format_g12(r)});
  auto os = open_out(fs::path(cfg.out_dir) / "lambda_points.csv");
  write_csv(os, hash, {"E"}, rows);
  out << "lambda-points: lattice " << ell << ", " << roots.size()
      << " roots -> "
      << (fs::path(cfg.out_dir) / "lambda_points.csv").string() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opt;
  opt.quick = cfg.quick;
  opt.workers = cfg.workers;
  opt.seed = cfg.seed;
  std::vector<CriterionResult> results = run_acceptance(opt, &out);

  std::string hash = emit_manifest(cfg, "verify");
  ojson rep;
  rep["manifest"] = hash;
  rep["version"] = TRACELAB_VERSION;
  rep["quick"] = cfg.quick;
  rep["seed"] = cfg.seed;
  rep["workers"] = cfg.workers;
  ojson criteria = ojson::array();
  bool all_pass = true;
  for (const CriterionResult& r : results) {
    ojson c;
    c["index"] = r.index;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["seconds"] = r.seconds;
    ojson checks = ojson::array();
    for (const SubCheck& s : r.checks) {
      ojson e;
      e["label"] = s.label;
      e["measured"] = s.measured;
      e["want"] = s.want;
      e["pass"] = s.pass;
      checks.push_back(std::move(e));
    }
    c["checks"] = std::move(checks);
    criteria.push_back(std::move(c));
    all_pass &= r.pass;
  }
  rep["criteria"] = std::move(criteria);
  rep["all_pass"] = all_pass;
  auto os = open_out(fs::path(cfg.out_dir) / "verify_report.json");
  os << rep.dump(2) << "\n";

  int passed = 0;
  for (const CriterionResult& r : results) passed += r.pass ? 1 : 0;
  out << "verification: " << passed << "/" << results.size()
      << " criteria passed\n";
  return all_pass ? 0 : 4;
}

// invalid-input errors exit 2; anything else raised by the library is a
// numerical failure, exit 3
int exit_code_for(const Error& e) {
  if (dynamic_cast<const InvalidArgument*>(&e) != nullptr ||
      dynamic_cast<const ParseError*>(&e) != nullptr ||
      dynamic_cast<const NotHyperbolic*>(&e) != nullptr ||
      dynamic_cast<const NormalFormNotFound*>(&e) != nullptr ||
      dynamic_cast<const NoFixedSeed*>(&e) != nullptr ||
      dynamic_cast<const WordTooLong*>(&e) != nullptr ||
      dynamic_cast<const IndexOutOfRange*>(&e) != nullptr ||
      dynamic_cast<const PrefixTooShort*>(&e) != nullptr ||
      dynamic_cast<const NotProbability*>(&e) != nullptr ||
      dynamic_cast<const InsufficientProbes*>(&e) != nullptr ||
      dynamic_cast<const EmptySet*>(&e) != nullptr ||
      dynamic_cast<const InverseWordsUnavailable*>(&e) != nullptr ||
      dynamic_cast<const InvalidInverse*>(&e) != nullptr)
    return 2;
  return 3;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  cfg.seed = seed_from_env();
  cfg.workers = default_workers();

  CLI::App app{"spectral laboratory for substitution Schrodinger operators "
               "and trace-map dynamics"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* c) {
    c->add_option("--sub", cfg.sub, "substitution rules")
        ->capture_default_str();
    c->add_option("--kappa", cfg.kappa, "coupling constant")
        ->capture_default_str();
    c->add_option("--out", cfg.out_dir, "output directory")
        ->capture_default_str();
    c->add_option("--workers", cfg.workers, "worker threads")
        ->capture_default_str();
  };
  auto add_escape = [&](CLI::App* c) {
    c->add_option("--rescape", cfg.rescape, "escape radius")
        ->capture_default_str();
    c->add_option("--nmax", cfg.nmax, "iteration budget")
        ->capture_default_str();
    c->add_option("--tol", cfg.tol, "escape-limit tolerance")
        ->capture_default_str();
  };
  auto add_dos = [&](CLI::App* c) {
    c->add_option("--L", cfg.L, "Dirichlet block length")
        ->capture_default_str();
    c->add_option("--windows", cfg.windows, "number of Dirichlet blocks")
        ->capture_default_str();
  };

  CLI::App* c_info =
      app.add_subcommand("info", "substitution invariants and normal form");
  add_common(c_info);

  CLI::App* c_spec = app.add_subcommand(
      "spectrum", "escape-classified spectrum scan (inner/outer CSVs)");
  add_common(c_spec);
  add_escape(c_spec);
  c_spec->add_option("--grid", cfg.grid,
                     "real energy grid lo:hi:step (default covers the "
                     "spectrum at the given coupling)");

  CLI::App* c_dos = app.add_subcommand(
      "dos", "density of states from Dirichlet windows (dos.csv)");
  add_common(c_dos);
  add_dos(c_dos);

  CLI::App* c_lyap = app.add_subcommand(
      "lyapunov", "Lyapunov exponent over an energy grid (lyapunov.csv)");
  add_common(c_lyap);
  add_escape(c_lyap);
  add_dos(c_lyap);
  c_lyap->add_option("--grid", cfg.grid, "real energy grid lo:hi:step");
  c_lyap->add_option("--complex-grid", cfg.complex_grid,
                     "complex energy grid re_lo:re_hi:im_lo:im_hi:n");
  c_lyap->add_option("--N", cfg.N, "transfer-matrix length (direct method)")
      ->capture_default_str();
  c_lyap
      ->add_option("--method", cfg.method,
                   "direct | green | thouless | all")
      ->check(CLI::IsMember({"direct", "green", "thouless", "all"}))
      ->capture_default_str();

  CLI::App* c_gmap = app.add_subcommand(
      "green-map", "Green-function Lyapunov map as CSV + 16-bit PGM");
  add_common(c_gmap);
  add_escape(c_gmap);
  c_gmap->add_option("--complex-grid", cfg.complex_grid,
                     "complex energy grid re_lo:re_hi:im_lo:im_hi:n "
                     "(default -3:3:-1:1:101)");
  c_gmap
      ->add_option("--gamma-max", cfg.gamma_max,
                   "gray-scale clip level (0 = grid maximum)")
      ->capture_default_str();

  CLI::App* c_lpts = app.add_subcommand(
      "lambda-points",
      "mixed-boundary-condition eigenvalues on a substitution lattice");
  add_common(c_lpts);
  c_lpts
      ->add_option("--n-power", cfg.n_power,
                   "substitution power fixing the lattice size")
      ->capture_default_str();
  c_lpts->add_option("--target", cfg.target, "trace level")
      ->capture_default_str();

  CLI::App* c_ver =
      app.add_subcommand("verify", "run the acceptance criteria suite");
  add_common(c_ver);
  c_ver->add_flag("--quick", cfg.quick,
                  "reduced resolution, wider documented tolerances");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("tracelab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help / --version
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    CLI::App* picked = app.get_subcommands().front();
    const std::string name = picked->get_name();
    if (name == "info") return cmd_info(cfg, out);
    if (name == "spectrum") return cmd_spectrum(cfg, out);
    if (name == "dos") return cmd_dos(cfg, out);
    if (name == "lyapunov") return cmd_lyapunov(cfg, out);
    if (name == "green-map") return cmd_green_map(cfg, out);
    if (name == "lambda-points") return cmd_lambda_points(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tracelab
