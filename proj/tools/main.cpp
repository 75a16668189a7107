// divreg: batch front end for spectral reports, cutoff ladders, signature
// fits, series regularization, the worked QED examples and the Coulomb
// first-order tables.

#include "divreg/asymptotics.hpp"
#include "divreg/coulomb.hpp"
#include "divreg/dirac.hpp"
#include "divreg/errors.hpp"
#include "divreg/fitter.hpp"
#include "divreg/qed_examples.hpp"
#include "divreg/quadrature.hpp"
#include "divreg/serialization.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace divreg;

namespace {

enum ExitCode { kOk = 0, kParse = 2, kDomain = 3, kNumerical = 4 };

// Failure that still produced output worth keeping.
class NonConvergence : public NumericalError {
public:
  using NumericalError::NumericalError;
};

struct Output {
  std::string path;

  void write(const std::string &text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
      throw DomainError("cannot open output file '" + path + "'");
    f << text;
  }
};

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

void error_json(const std::string &kind, const std::string &message,
                int code) {
  const Json j{{"schema_version", kSchemaVersion},
               {"error", {{"kind", kind}, {"message", message},
                          {"exit_code", code}}}};
  std::cerr << j.dump(2) << "\n";
}

// Two-column data file plus a gnuplot stub.
void write_plot(const std::string &prefix, const std::string &ylabel,
                const std::vector<std::pair<double, double>> &points,
                bool logx) {
  if (prefix.empty())
    return;
  std::ofstream dat(prefix + ".dat", std::ios::binary);
  if (!dat)
    throw DomainError("cannot open plot file '" + prefix + ".dat'");
  dat << "# lambda value\n";
  for (const auto &[x, y] : points)
    dat << format_double(x) << ' ' << format_double(y) << '\n';
  std::ofstream gp(prefix + ".gp", std::ios::binary);
  if (!gp)
    throw DomainError("cannot open plot script '" + prefix + ".gp'");
  gp << "# gnuplot -p " << prefix << ".gp\n";
  if (logx)
    gp << "set logscale x\n";
  gp << "set xlabel 'lambda'\nset ylabel '" << ylabel << "'\n";
  gp << "plot '" << prefix << ".dat' using 1:2 with linespoints title '"
     << ylabel << "'\n";
}

std::vector<double> ladder_grid(double lmin, double lmax, int per_decade) {
  if (!(lmin > 0.0) || !(lmax > lmin))
    throw DomainError("ladder grid: need 0 < lmin < lmax");
  if (per_decade < 1)
    throw DomainError("ladder grid: points per decade must be >= 1");
  const double decades = std::log10(lmax / lmin);
  const auto count =
      static_cast<std::size_t>(std::llround(decades * per_decade)) + 1;
  return geometric_grid(lmin, lmax, std::max<std::size_t>(count, 2));
}

BasisFunction parse_basis(const std::string &s) {
  // "a:p" with a an integer or "n/d".
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw DomainError("basis '" + s + "': expected power:logpower");
  int logpower = 0;
  try {
    std::size_t used = 0;
    logpower = std::stoi(s.substr(colon + 1), &used);
    if (used != s.size() - colon - 1)
      throw std::invalid_argument(s);
  } catch (const std::logic_error &) {
    throw DomainError("basis '" + s + "': logpower must be an integer");
  }
  return basis_from_json(Json{{"power", s.substr(0, colon)}, {"logpower", logpower}});
}

// ---------------------------------------------------------------- spectral

struct SpectralArgs {
  std::vector<double> q{0.0, 0.0, 0.0};
  double m = 1.0;
  Output out;
};

void run_spectral(const SpectralArgs &a) {
  if (!(a.m >= 0.0))
    throw DomainError("spectral: m must be non-negative");
  const Momentum3 q{a.q[0], a.q[1], a.q[2]};
  const auto sys = dirac::eigensystem(q, a.m);
  const auto h = dirac::hamiltonian(q, a.m);
  double residual = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto g = sys.eigenvectors.column_block(k, 1);
    residual = std::max(
        residual, (h * g - sys.eigenvalues[k] * g).frobenius_norm());
  }
  const Json j{{"schema_version", kSchemaVersion},
               {"command", "spectral"},
               {"q", a.q},
               {"m", a.m},
               {"eigenvalues", sys.eigenvalues},
               {"eigenvectors", to_json(sys.eigenvectors)},
               {"degenerate", sys.degenerate},
               {"max_residual", residual}};
  a.out.write(dump(j));
}

// ------------------------------------------------------------------ ladder

struct LadderArgs {
  double delta = 1.0;
  std::vector<double> shift{0.0, 0.0, 0.0, 0.0};
  double lmin = 10.0;
  double lmax = 1000.0;
  int per_decade = 4;
  double rel_tol = 1e-10;
  std::string plot;
  Output out;
};

void run_ladder(const LadderArgs &a) {
  if (!(a.delta > 0.0))
    throw DomainError("ladder: delta must be positive");
  if (!(a.rel_tol > 0.0))
    throw DomainError("ladder: rel-tol must be positive");
  const auto radii = ladder_grid(a.lmin, a.lmax, a.per_decade);
  const FourVector p{a.shift[0], a.shift[1], a.shift[2], a.shift[3]};
  Ball4Options opt;
  opt.rel_tol = a.rel_tol;
  const auto s = shifted_denominator_ladder(p, a.delta, radii, opt);

  std::ostringstream os;
  std::vector<std::string> comments{
      "generator: divreg ladder",
      "integrand: 1/((k-p)^2+delta)^2 over |k|<lambda (Euclidean)",
      "delta=" + format_double(a.delta) + " p=" + format_double(p.p1) + "," +
          format_double(p.p2) + "," + format_double(p.p3) + "," +
          format_double(p.p4)};
  if (!s.all_converged())
    comments.emplace_back("warning: some rungs did not converge");
  write_ladder_csv(os, s, comments);
  a.out.write(os.str());

  std::vector<std::pair<double, double>> pts;
  for (const auto &r : s.rungs)
    pts.emplace_back(r.lambda, r.value.real());
  write_plot(a.plot, "integral", pts, true);
  if (!s.all_converged())
    throw NonConvergence("ladder: quadrature budget exhausted on some rungs");
}

// --------------------------------------------------------------------- fit

struct FitArgs {
  std::string input;
  std::vector<std::string> basis;
  double threshold = kDefaultSignatureThreshold;
  bool unweighted = false;
  std::string regulator = "ultraviolet_cutoff";
  Output out;
};

void run_fit(const FitArgs &a) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in)
    throw DomainError("fit: cannot open input '" + a.input + "'");
  const auto samples = read_ladder_csv(in);
  if (!(a.threshold > 0.0))
    throw DomainError("fit: threshold must be positive");
  const auto kind = regulator_from_string(a.regulator);
  std::vector<BasisFunction> basis;
  for (const auto &b : a.basis)
    basis.push_back(parse_basis(b));
  FitOptions opt;
  opt.use_error_weights = !a.unweighted;

  Json j;
  if (basis.empty()) {
    const auto def = basis::default_set();
    j = to_json(fit(samples, def, opt));
    j["signature"] = to_json(detect_signature(samples, a.threshold, kind, opt));
    j["threshold"] = a.threshold;
  } else {
    j = to_json(fit(samples, basis, opt));
  }
  j["command"] = "fit";
  j["samples"] = samples.size();
  a.out.write(dump(j));
}

// -------------------------------------------------------------- regularize

struct RegularizeArgs {
  std::string input;
  double lambda = 100.0;
  std::size_t order = 0;
  double reference_scale = 1.0;
  Output out;
};

void run_regularize(const RegularizeArgs &a) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in)
    throw DomainError("regularize: cannot open input '" + a.input + "'");
  Json series_json;
  try {
    series_json = Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw DomainError(std::string("regularize: invalid JSON: ") + e.what());
  }
  const auto series = series_from_json(series_json);
  SeriesRegularizationOptions opt;
  opt.order = a.order;
  opt.reference_scale = a.reference_scale;
  auto j = to_json(regularize_series(series, a.lambda, opt));
  j["command"] = "regularize";
  a.out.write(dump(j));
}

// ----------------------------------------------------------------- example

struct ExampleArgs {
  std::string id;
  std::vector<double> momentum{1.0, 0.0, 0.0, 0.0};
  double p_sq = 1.0;
  double m = 1.0;
  double e = 1.0;
  double lambda = 0.01;
  double cutoff = 1000.0;
  int mu = 1;
  bool skip_cross_check = false;
  Output out;
};

void run_example(const ExampleArgs &a) {
  ExampleReport r;
  if (a.id == "5.1") {
    ElectronOptions opt;
    opt.quadrature_cross_check = !a.skip_cross_check;
    const FourVector p{a.momentum[0], a.momentum[1], a.momentum[2],
                       a.momentum[3]};
    r = electron_self_energy(p, a.m, a.e, opt);
  } else if (a.id == "5.3") {
    r = photon_self_energy(a.p_sq, a.m, a.e);
  } else if (a.id == "5.6") {
    r = vertex_part(a.m, a.e, a.lambda, a.cutoff, a.mu);
  } else {
    throw DomainError("example: unknown id '" + a.id + "'");
  }
  auto j = to_json(r);
  j["command"] = "example";
  a.out.write(dump(j));
}

// ----------------------------------------------------------------- coulomb

struct CoulombArgs {
  std::string mode = "s1";
  double z = 1.0;
  double e = 1.0;
  std::vector<int> l{0};
  std::vector<double> beta;
  std::vector<double> weight;
  double k_min = 0.5;
  double k_max = 5.0;
  std::size_t k_count = 10;
  double p = 1.0;
  std::vector<double> t_values;
  std::vector<double> tau_values;
  std::string plot;
  Output out;
};

void run_coulomb(const CoulombArgs &a) {
  CoulombPotentialSpec spec;
  spec.z = a.z;
  spec.e = a.e;
  spec.measure.beta = a.beta;
  spec.measure.weight = a.weight;
  spec.validate();
  if (!(a.k_min > 0.0) || !(a.k_max >= a.k_min) || a.k_count < 1)
    throw DomainError("coulomb: need 0 < k-min <= k-max and k-count >= 1");
  const auto ks = a.k_count == 1 || a.k_max == a.k_min
                      ? std::vector<double>{a.k_min}
                      : geometric_grid(a.k_min, a.k_max, a.k_count);

  if (a.mode == "s1") {
    std::vector<S1Row> rows;
    std::vector<std::pair<double, double>> pts;
    for (int l : a.l) {
      spec.l = l;
      for (double k : ks) {
        rows.push_back({k, l, s1(spec, k)});
        if (l == a.l.front())
          pts.emplace_back(k, rows.back().value.imag());
      }
    }
    std::ostringstream os;
    write_s1_csv(os, rows);
    a.out.write(os.str());
    write_plot(a.plot, "Im S1", pts, true);
  } else if (a.mode == "kernel") {
    std::ostringstream os;
    os << "k,p,l,R\n";
    for (int l : a.l) {
      spec.l = l;
      for (double k : ks)
        os << format_double(k) << ',' << format_double(a.p) << ',' << l << ','
           << format_double(kernel_R(spec, k, a.p)) << '\n';
    }
    a.out.write(os.str());
  } else if (a.mode == "divergence") {
    std::vector<double> t = a.t_values, tau = a.tau_values;
    if (t.empty() && tau.empty()) {
      for (double v = 10.0; v <= 1e5; v *= 10.0) {
        t.push_back(v);
        tau.push_back(-v);
      }
    }
    Json checks = Json::array();
    for (double k : ks) {
      const auto x = coulomb_divergence_check(a.z, k, t, tau);
      const auto adm = check_admissible(split_divergent(x).divergent);
      checks.push_back({{"k", k},
                        {"expansion", to_json(x)},
                        {"admissibility", to_json(adm)}});
    }
    const Json j{{"schema_version", kSchemaVersion},
                 {"command", "coulomb"},
                 {"mode", "divergence"},
                 {"z", a.z},
                 {"checks", checks}};
    a.out.write(dump(j));
  } else {
    throw DomainError("coulomb: unknown mode '" + a.mode + "'");
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"divreg: deviation factors for divergent integrals and series"};
  app.set_config("--config", "", "Key-value config file (TOML/INI style)");
  app.require_subcommand(1);

  auto add_output = [](CLI::App *sub, Output &out) {
    sub->add_option("-o,--output", out.path, "Output file (default stdout)");
  };

  SpectralArgs spectral;
  auto *sp = app.add_subcommand("spectral", "Eigensystem of H(q)");
  sp->add_option("--q", spectral.q, "Momentum q1 q2 q3")->expected(3);
  sp->add_option("--m", spectral.m, "Mass");
  add_output(sp, spectral.out);

  LadderArgs ladder;
  auto *ld = app.add_subcommand("ladder", "Cutoff ladder of the standard "
                                          "shifted-denominator integral");
  ld->add_option("--delta", ladder.delta, "Delta = l - p^2 > 0");
  ld->add_option("--shift", ladder.shift, "Shift p1 p2 p3 p4")->expected(4);
  ld->add_option("--lmin", ladder.lmin, "Smallest cutoff");
  ld->add_option("--lmax", ladder.lmax, "Largest cutoff");
  ld->add_option("--points-per-decade", ladder.per_decade, "Grid density");
  ld->add_option("--rel-tol", ladder.rel_tol, "Quadrature relative tolerance");
  ld->add_option("--plot", ladder.plot, "Write <prefix>.dat and <prefix>.gp");
  add_output(ld, ladder.out);

  FitArgs fitargs;
  auto *ft = app.add_subcommand("fit", "Fit a ladder CSV over a basis");
  ft->add_option("--input", fitargs.input, "Ladder CSV")->required();
  ft->add_option("--basis", fitargs.basis,
                 "Basis functions as power:logpower (default: full set "
                 "with signature detection)");
  ft->add_option("--threshold", fitargs.threshold, "Signature threshold");
  ft->add_flag("--unweighted", fitargs.unweighted, "Ignore error column");
  ft->add_option("--regulator", fitargs.regulator, "Regulator kind");
  add_output(ft, fitargs.out);

  RegularizeArgs reg;
  auto *rg = app.add_subcommand("regularize",
                                "Deviation factor and regular series");
  rg->add_option("--input", reg.input, "Series JSON")->required();
  rg->add_option("--lambda", reg.lambda, "Regulator value");
  rg->add_option("--order", reg.order, "Regular orders to return (0 = N)");
  rg->add_option("--reference-scale", reg.reference_scale, "Reference A");
  add_output(rg, reg.out);

  ExampleArgs ex;
  auto *eg = app.add_subcommand("example", "Worked QED examples");
  eg->add_option("--id", ex.id, "5.1, 5.3 or 5.6")
      ->required()
      ->check(CLI::IsMember({"5.1", "5.3", "5.6"}));
  eg->add_option("--momentum", ex.momentum, "p1 p2 p3 p4 (5.1)")->expected(4);
  eg->add_option("--p2", ex.p_sq, "p^2 (5.3)");
  eg->add_option("--m", ex.m, "Mass");
  eg->add_option("--e", ex.e, "Coupling");
  eg->add_option("--lambda", ex.lambda, "Photon mass (5.6)");
  eg->add_option("--cutoff", ex.cutoff, "Ultraviolet cutoff L (5.6)");
  eg->add_option("--mu", ex.mu, "Vertex index 1..4 (5.6)");
  eg->add_flag("--skip-cross-check", ex.skip_cross_check,
               "Skip the quadrature ladder cross-check (5.1)");
  add_output(eg, ex.out);

  CoulombArgs cl;
  auto *cb = app.add_subcommand("coulomb", "Coulomb first-order quantities");
  cb->add_option("--mode", cl.mode, "s1, kernel or divergence")
      ->check(CLI::IsMember({"s1", "kernel", "divergence"}));
  cb->add_option("--z", cl.z, "Coulomb strength");
  cb->add_option("--e", cl.e, "Coupling");
  cb->add_option("--l", cl.l, "Angular momenta");
  cb->add_option("--beta", cl.beta, "Yukawa support points");
  cb->add_option("--weight", cl.weight, "Yukawa weights");
  cb->add_option("--k-min", cl.k_min, "Smallest k");
  cb->add_option("--k-max", cl.k_max, "Largest k");
  cb->add_option("--k-count", cl.k_count, "Number of k values");
  cb->add_option("--p", cl.p, "Second kernel argument (kernel mode)");
  cb->add_option("--t", cl.t_values, "t values, positive increasing");
  cb->add_option("--tau", cl.tau_values, "tau values, negative decreasing");
  cb->add_option("--plot", cl.plot, "Write <prefix>.dat and <prefix>.gp");
  add_output(cb, cl.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    error_json("parse", e.what(), kParse);
    return kParse;
  }

  try {
    if (sp->parsed())
      run_spectral(spectral);
    else if (ld->parsed())
      run_ladder(ladder);
    else if (ft->parsed())
      run_fit(fitargs);
    else if (rg->parsed())
      run_regularize(reg);
    else if (eg->parsed())
      run_example(ex);
    else if (cb->parsed())
      run_coulomb(cl);
  } catch (const DomainError &e) {
    error_json("domain", e.what(), kDomain);
    return kDomain;
  } catch (const NumericalError &e) {
    error_json("numerical", e.what(), kNumerical);
    return kNumerical;
  } catch (const std::exception &e) {
    error_json("internal", e.what(), 1);
    return 1;
  }
  return kOk;
}
