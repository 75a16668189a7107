#include "divreg/quadrature.hpp"

#include "divreg/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <utility>

namespace divreg {

namespace {

using std::numbers::pi;

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// A node sample: the value at full angular resolution and at the halved
// rule (identical for one-dimensional integrands).
struct Sample {
  Complex full;
  Complex half;
};

struct Panel {
  double a;
  double b;
  Complex kronrod;
  Complex kronrod_half;
  double error;
};

struct PanelOrder {
  bool operator()(const Panel &x, const Panel &y) const {
    if (x.error != y.error)
      return x.error < y.error;
    return x.a > y.a;
  }
};

template <class NodeFn> Panel gk15(NodeFn &node, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex kron{}, kron_half{}, gauss{};
  for (std::size_t j = 0; j < 8; ++j) {
    const double dx = half * kXgk[j];
    const bool gauss_node = (j % 2 == 1);
    const int reps = (j == 7) ? 1 : 2;
    for (int s = 0; s < reps; ++s) {
      const Sample v = node(s == 0 ? centre - dx : centre + dx);
      kron += kWgk[j] * v.full;
      kron_half += kWgk[j] * v.half;
      if (gauss_node)
        gauss += kWg[j / 2] * v.full;
    }
  }
  kron *= half;
  kron_half *= half;
  gauss *= half;
  return {a, b, kron, kron_half, std::abs(kron - gauss)};
}

// Globally adaptive bisection on the worst panel. Angular error (the gap to
// the halved rule) is not reducible by radial refinement and is reported
// separately.
template <class NodeFn>
QuadratureResult adaptive(NodeFn &node, double a, double b, double rel_tol,
                          double abs_tol, std::size_t max_evaluations,
                          std::size_t &evaluations) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  const std::size_t before = evaluations;
  heap.push(gk15(node, a, b));
  // Cost of one panel; a bisection costs two.
  const std::size_t panel_cost = std::max<std::size_t>(1, evaluations - before);
  Complex total = heap.top().kronrod;
  double radial_err = heap.top().error;

  bool converged = true;
  while (true) {
    const double target = std::max(abs_tol, rel_tol * std::abs(total));
    if (radial_err <= target)
      break;
    if (evaluations + 2 * panel_cost > max_evaluations) {
      converged = false;
      break;
    }
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      converged = false; // interval at machine resolution
      break;
    }
    heap.pop();
    Panel left = gk15(node, worst.a, mid);
    Panel right = gk15(node, mid, worst.b);
    total += left.kronrod + right.kronrod - worst.kronrod;
    radial_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Resum in a fixed order to shed the drift of incremental updates.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel &x, const Panel &y) { return x.a < y.a; });
  Complex sum{}, sum_half{};
  double err = 0.0;
  for (const auto &p : panels) {
    sum += p.kronrod;
    sum_half += p.kronrod_half;
    err += p.error;
  }
  const double angular_err = std::abs(sum - sum_half);
  const double total_err = err + angular_err;
  if (total_err > std::max(abs_tol, rel_tol * std::abs(sum)))
    converged = false;
  return {sum, total_err, converged, evaluations};
}

[[noreturn]] void throw_non_finite(const char *who, double x) {
  std::ostringstream os;
  os.precision(17);
  os << who << ": non-finite integrand value at x = " << x;
  throw NumericalError(os.str());
}

[[noreturn]] void throw_non_finite(const char *who, const FourVector &k) {
  std::ostringstream os;
  os.precision(17);
  os << who << ": non-finite integrand value at k = (" << k.p1 << ", "
     << k.p2 << ", " << k.p3 << ", " << k.p4 << ")";
  throw NumericalError(os.str());
}

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Chebyshev rule of the second kind: int_{-1}^{1} sqrt(1 - y^2) g(y) dy.
struct ChebyshevNode {
  double y;
  double s; // sqrt(1 - y^2)
  double w;
};

std::vector<ChebyshevNode> chebyshev2(int n) {
  std::vector<ChebyshevNode> out;
  out.reserve(std::size_t(n));
  for (int i = 1; i <= n; ++i) {
    const double t = double(i) * pi / double(n + 1);
    const double s = std::sin(t);
    out.push_back({std::cos(t), s, pi / double(n + 1) * s * s});
  }
  return out;
}

// Unit vector orthogonal to the (normalised) axis.
FourVector orthogonal_unit(const FourVector &n) {
  const std::array<double, 4> c = {n.p1, n.p2, n.p3, n.p4};
  std::size_t best = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (std::abs(c[i]) < std::abs(c[best]))
      best = i;
  std::array<double, 4> e{};
  e[best] = 1.0;
  const double d = c[best];
  FourVector v{e[0] - d * c[0], e[1] - d * c[1], e[2] - d * c[2],
               e[3] - d * c[3]};
  const double norm = std::sqrt(v.norm_sq());
  return (1.0 / norm) * v;
}

class AxialAngular {
public:
  AxialAngular(const BallIntegrand &f, const FourVector &axis, double rel_tol,
               std::size_t &evaluations)
      : f_(f), evaluations_(evaluations), rel_tol_(rel_tol) {
    const double norm = std::sqrt(axis.norm_sq());
    axis_ = norm > 0.0 ? (1.0 / norm) * axis : FourVector{0, 0, 0, 1};
    perp_ = orthogonal_unit(axis_);
  }

  // 4 pi int_{-1}^{1} sqrt(1-y^2) f(r (y n + sqrt(1-y^2) e)) dy with
  // nested Chebyshev rules doubled until self-consistent.
  Sample operator()(double r) {
    constexpr int kMaxLevel = 10; // n + 1 = 1024
    int m = 8;                    // n + 1 of the coarsest rule
    std::vector<Complex> values(std::size_t(m - 1));
    for (int i = 1; i < m; ++i)
      values[std::size_t(i - 1)] = eval(r, i, m);
    Complex coarse = sum(values, m).first;
    for (int level = 4; level <= kMaxLevel; ++level) {
      const int m2 = 2 * m;
      std::vector<Complex> fine(std::size_t(m2 - 1));
      for (int i = 1; i < m2; ++i) {
        fine[std::size_t(i - 1)] = (i % 2 == 0) ? values[std::size_t(i / 2 - 1)]
                                                : eval(r, i, m2);
      }
      const auto [refined, scale] = sum(fine, m2);
      values = std::move(fine);
      m = m2;
      // Compare against the absolute-value integral so that integrands
      // averaging to zero still terminate.
      const bool done = std::abs(refined - coarse) <= 0.01 * rel_tol_ * scale;
      if (done || level == kMaxLevel)
        return {refined, coarse};
      coarse = refined;
    }
    return {coarse, coarse};
  }

private:
  Complex eval(double r, int i, int m) {
    const double t = double(i) * pi / double(m);
    const double y = std::cos(t);
    const double s = std::sin(t);
    const FourVector k = r * ((y * axis_) + (s * perp_));
    const Complex v = f_(k);
    ++evaluations_;
    if (!finite(v))
      throw_non_finite("ball4_integrate", k);
    return v;
  }

  static std::pair<Complex, double> sum(const std::vector<Complex> &values,
                                         int m) {
    Complex acc{};
    double abs_acc = 0.0;
    for (int i = 1; i < m; ++i) {
      const double s = std::sin(double(i) * pi / double(m));
      acc += (s * s) * values[std::size_t(i - 1)];
      abs_acc += (s * s) * std::abs(values[std::size_t(i - 1)]);
    }
    const double w = 4.0 * pi * pi / double(m);
    return {acc * w, abs_acc * w};
  }

  const BallIntegrand &f_;
  std::size_t &evaluations_;
  double rel_tol_;
  FourVector axis_;
  FourVector perp_;
};

class ProductAngular {
public:
  ProductAngular(const BallIntegrand &f, const Ball4Options &opt,
                 std::size_t &evaluations)
      : f_(f), evaluations_(evaluations) {
    if (opt.chi_nodes < 2 || opt.theta_nodes < 2 || opt.phi_nodes < 2)
      throw DomainError("ball4_integrate: angular rules need >= 2 nodes");
    full_ = make(opt.chi_nodes, opt.theta_nodes, opt.phi_nodes);
    half_ = make(std::max(1, (opt.chi_nodes + 1) / 2 - 1),
                 std::max(1, opt.theta_nodes / 2),
                 std::max(1, opt.phi_nodes / 2));
  }

  Sample operator()(double r) { return {apply(full_, r), apply(half_, r)}; }

private:
  struct Rule {
    std::vector<FourVector> directions;
    std::vector<double> weights;
  };

  static Rule make(int n_chi, int n_theta, int n_phi) {
    Rule rule;
    const auto chi = chebyshev2(n_chi);
    const auto theta = gauss_legendre(std::size_t(n_theta));
    for (const auto &c : chi) {
      for (std::size_t j = 0; j < theta.nodes.size(); ++j) {
        const double x = theta.nodes[j];
        const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
        for (int l = 0; l < n_phi; ++l) {
          const double phi = 2.0 * pi * double(l) / double(n_phi);
          rule.directions.push_back({c.s * sx * std::cos(phi),
                                     c.s * sx * std::sin(phi), c.s * x, c.y});
          rule.weights.push_back(c.w * theta.weights[j] * 2.0 * pi /
                                 double(n_phi));
        }
      }
    }
    return rule;
  }

  Complex apply(const Rule &rule, double r) {
    Complex acc{};
    for (std::size_t i = 0; i < rule.directions.size(); ++i) {
      const FourVector k = r * rule.directions[i];
      const Complex v = f_(k);
      ++evaluations_;
      if (!finite(v))
        throw_non_finite("ball4_integrate", k);
      acc += rule.weights[i] * v;
    }
    return acc;
  }

  const BallIntegrand &f_;
  std::size_t &evaluations_;
  Rule full_;
  Rule half_;
};

} // namespace

QuadratureResult segment_integrate(const RealIntegrand &f, double a, double b,
                                   const SegmentOptions &opt) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("segment_integrate: requires finite a < b");
  if (!(opt.rel_tol > 0.0) || opt.abs_tol < 0.0)
    throw DomainError("segment_integrate: tolerances must be positive");

  std::size_t evaluations = 0;
  if (opt.endpoint_singular) {
    const double width = b - a;
    auto node = [&](double t) -> Sample {
      const double x = a + width * t * t * (3.0 - 2.0 * t);
      const double jac = width * 6.0 * t * (1.0 - t);
      const Complex v = f(x);
      ++evaluations;
      if (!finite(v))
        throw_non_finite("segment_integrate", x);
      const Complex w = v * jac;
      return {w, w};
    };
    return adaptive(node, 0.0, 1.0, opt.rel_tol, opt.abs_tol,
                    opt.max_evaluations, evaluations);
  }
  auto node = [&](double x) -> Sample {
    const Complex v = f(x);
    ++evaluations;
    if (!finite(v))
      throw_non_finite("segment_integrate", x);
    return {v, v};
  };
  return adaptive(node, a, b, opt.rel_tol, opt.abs_tol, opt.max_evaluations,
                  evaluations);
}

QuadratureResult ball4_integrate(const BallIntegrand &f, double radius,
                                 const Ball4Options &opt) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw DomainError("ball4_integrate: radius must be positive");
  if (!(opt.rel_tol > 0.0) || opt.abs_tol < 0.0)
    throw DomainError("ball4_integrate: tolerances must be positive");

  std::size_t evaluations = 0;
  if (opt.axis) {
    if (!(opt.axis->norm_sq() > 0.0))
      throw DomainError("ball4_integrate: axis must be a nonzero vector");
    AxialAngular angular(f, *opt.axis, opt.rel_tol, evaluations);
    auto node = [&](double r) -> Sample {
      const Sample s = angular(r);
      const double r3 = r * r * r;
      return {r3 * s.full, r3 * s.half};
    };
    return adaptive(node, 0.0, radius, opt.rel_tol, opt.abs_tol,
                    opt.max_evaluations, evaluations);
  }
  ProductAngular angular(f, opt, evaluations);
  auto node = [&](double r) -> Sample {
    const Sample s = angular(r);
    const double r3 = r * r * r;
    return {r3 * s.full, r3 * s.half};
  };
  return adaptive(node, 0.0, radius, opt.rel_tol, opt.abs_tol,
                  opt.max_evaluations, evaluations);
}

bool SampledIntegral::all_converged() const noexcept {
  return std::all_of(rungs.begin(), rungs.end(),
                     [](const LadderRung &r) { return r.converged; });
}

void SampledIntegral::validate() const {
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const auto &r = rungs[i];
    if (!(r.lambda > 0.0) || !std::isfinite(r.lambda))
      throw DomainError("SampledIntegral: regulator values must be positive");
    if (i > 0 && !(r.lambda > rungs[i - 1].lambda))
      throw DomainError(
          "SampledIntegral: regulator values must be strictly increasing");
    if (!(r.error >= 0.0))
      throw DomainError("SampledIntegral: errors must be non-negative");
  }
}

std::vector<double> SampledIntegral::lambdas() const {
  std::vector<double> out;
  out.reserve(rungs.size());
  for (const auto &r : rungs)
    out.push_back(r.lambda);
  return out;
}

std::vector<Complex> SampledIntegral::values() const {
  std::vector<Complex> out;
  out.reserve(rungs.size());
  for (const auto &r : rungs)
    out.push_back(r.value);
  return out;
}

SampledIntegral cutoff_ladder(const BallIntegrand &f,
                              std::span<const double> radii,
                              const Ball4Options &opt) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw DomainError(
          "cutoff_ladder: radii must be positive and strictly increasing");
  }
  SampledIntegral ladder;
  ladder.rungs.reserve(radii.size());
  for (double radius : radii) {
    const auto r = ball4_integrate(f, radius, opt);
    ladder.rungs.push_back({radius, r.value, r.error, r.converged});
  }
  return ladder;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo))
    throw DomainError("geometric_grid: requires 0 < lo < hi");
  if (count < 2)
    throw DomainError("geometric_grid: need at least two points");
  std::vector<double> out(count);
  const double step = std::log(hi / lo) / double(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo * std::exp(step * double(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

GaussRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0)
    throw DomainError("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Tricomi initial guess.
    double x = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 =
            ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) /
            double(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = centre - half * x;
    rule.nodes[n - 1 - i] = centre + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

} // namespace divreg
