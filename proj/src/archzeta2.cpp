#include "arrzeta/archzeta2.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numeric>
#include <random>

#include "arrzeta/error.hpp"
#include "arrzeta/quadrature.hpp"

namespace arrzeta {

namespace {

template <class F>
auto dispatch(Precision p, F&& f) {
  if (p == Precision::extended) return f.template operator()<long double>();
  return f.template operator()<double>();
}

template <class Real>
quad::PlanarOptions<Real> planar_options(const QuadratureConfig& q) {
  quad::PlanarOptions<Real> o;
  o.abs_tol = static_cast<Real>(q.target_abs_tol);
  o.max_intervals = q.max_refinements;
  o.far_radius = static_cast<Real>(q.outer_radius);
  o.tail_extrapolation = q.tail_extrapolation;
  o.threads = q.threads;
  return o;
}

QuadratureStats convert(const quad::PlanarStats& s) {
  QuadratureStats out;
  out.evaluations = s.evaluations;
  out.radial_intervals = s.radial_intervals;
  out.max_angular_points = s.max_angular_points;
  out.angular_unconverged = s.angular_unconverged;
  out.patches = s.patches;
  out.converged = s.radial_converged && s.angular_unconverged == 0;
  return out;
}

void merge(QuadratureStats& into, const QuadratureStats& s) {
  into.evaluations += s.evaluations;
  into.radial_intervals += s.radial_intervals;
  into.max_angular_points = std::max(into.max_angular_points, s.max_angular_points);
  into.angular_unconverged += s.angular_unconverged;
  into.patches = std::max(into.patches, s.patches);
  into.converged = into.converged && s.converged;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

void check_c_regime(double b1, double d) {
  if (!(d < 2 * b1)) throw PreconditionError("counterterm regime violated: need d < 2 b1");
  if (!(b1 < d)) throw PreconditionError("need b1 < d");
}

void check_b_prime(const LineConfig& cfg, const std::vector<double>& bp) {
  if (bp.size() + 1 != cfg.size())
    throw PreconditionError("b_prime must have one entry per line after the first");
  double sum = 0;
  for (double x : bp) {
    if (!(x >= -1e-12)) throw PreconditionError("b_prime entries must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - (cfg.d - cfg.b1)) > 1e-9 * std::max(1.0, cfg.d))
    throw PreconditionError("b_prime must sum to d - b1");
}

bool near_boundary(const std::vector<double>& bp) {
  return std::any_of(bp.begin(), bp.end(), [](double x) { return x <= 1e-9; });
}

// Normalized C-integrand |u|^{-4b1/d} prod |u/a_l + 1|^{-4b_l/d}; log_powers[l] adds
// (log|u/a_l + 1|)^k; extra scales the result.
template <class Real>
quad::PlanarKernel<Real> c_kernel(const LineConfig& cfg, const std::vector<double>& bp,
                                  const std::vector<int>& log_powers, double extra) {
  quad::PlanarKernel<Real> k;
  const Real d = static_cast<Real>(cfg.d);
  k.origin_exponent = -4 * static_cast<Real>(cfg.b1) / d;
  Real log_scale = 0;
  for (std::size_t l = 0; l < bp.size(); ++l) {
    const std::complex<Real> a(static_cast<Real>(cfg.slopes[l + 1].real()),
                               static_cast<Real>(cfg.slopes[l + 1].imag()));
    const Real p = -4 * static_cast<Real>(bp[l]) / d;
    const int kpow = log_powers.empty() ? 0 : log_powers[l];
    if (p == 0 && kpow == 0) continue;
    k.points.push_back({-a, p, kpow});
    log_scale -= p * std::log(std::abs(a));
  }
  k.scale = static_cast<Real>(extra) * std::exp(log_scale);
  return k;
}

// Finds gamma with (x1^g - x2^g)/(x2^g - x3^g) = ratio, x1 > x2 > x3 > 0.
std::optional<double> solve_rate(double x1, double x2, double x3, double ratio) {
  auto f = [&](double g) {
    return (std::pow(x1, g) - std::pow(x2, g)) / (std::pow(x2, g) - std::pow(x3, g));
  };
  double lo = 0.02, hi = 12;
  if (!(ratio > f(lo) && ratio < f(hi))) return std::nullopt;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (f(mid) < ratio ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

template <class Real>
CConstantReport c_constant_impl(const LineConfig& cfg, const std::vector<double>& bp,
                                const QuadratureConfig& q) {
  auto kernel = c_kernel<Real>(cfg, bp, {}, 1.0);
  auto opt = planar_options<Real>(q);
  for (double x : q.delta_schedule) opt.delta_schedule.push_back(static_cast<Real>(x));
  quad::PlanarIntegrator<Real> integ(kernel, opt);
  auto res = integ.run();
  const Real p2 = kernel.origin_exponent + 2;

  CConstantReport rep;
  rep.stats = convert(res.stats);
  for (std::size_t k = 0; k < q.delta_schedule.size(); ++k) {
    const Real delta = static_cast<Real>(q.delta_schedule[k]);
    const Real counter = quad::two_pi<Real> * std::pow(delta, p2) / p2;
    rep.trace.push_back({q.delta_schedule[k], static_cast<double>(res.outside_delta[k].value + counter),
                         static_cast<double>(res.outside_delta[k].error)});
  }
  rep.continued = static_cast<double>(res.continued->value);
  rep.continued_error = static_cast<double>(res.continued->error);
  rep.expected_rate = static_cast<double>(p2 + 2);

  const std::size_t n = rep.trace.size();
  const auto& last = rep.trace.back();
  rep.raw = last.value;
  rep.extrapolated = last.value;
  double quad_err = std::max(last.error, rep.continued_error);
  rep.last_pair_spread = n >= 2 ? std::abs(rep.trace[n - 2].value - last.value) : 0;
  if (n >= 3) {
    const auto &t1 = rep.trace[n - 3], &t2 = rep.trace[n - 2], &t3 = rep.trace[n - 1];
    const double d12 = t1.value - t2.value, d23 = t2.value - t3.value;
    if (std::abs(d23) > 4 * quad_err && d23 != 0) {
      if (auto g = solve_rate(t1.delta, t2.delta, t3.delta, d12 / d23)) {
        const double kappa = d23 / (std::pow(t2.delta, *g) - std::pow(t3.delta, *g));
        rep.measured_rate = *g;
        rep.extrapolated = t3.value - kappa * std::pow(t3.delta, *g);
        rep.extrapolation_used = true;
      }
    }
  }
  rep.value = rep.extrapolated;
  rep.error = std::max({rep.last_pair_spread, std::abs(rep.value - rep.continued) + quad_err,
                        quad_err});
  if (rep.last_pair_spread > 10 * q.target_abs_tol) {
    std::vector<std::pair<double, double>> trace;
    for (const auto& t : rep.trace) trace.emplace_back(t.delta, t.value);
    throw NumericalError("delta trace did not converge: last spread " +
                             std::to_string(rep.last_pair_spread),
                         std::move(trace));
  }
  return rep;
}

template <class Real>
std::pair<double, double> log_integral(const LineConfig& cfg, const std::vector<double>& bp,
                                       const std::vector<int>& powers, double extra,
                                       const QuadratureConfig& q, QuadratureStats* stats) {
  auto kernel = c_kernel<Real>(cfg, bp, powers, extra);
  quad::PlanarIntegrator<Real> integ(kernel, planar_options<Real>(q));
  auto res = integ.run();
  if (stats) merge(*stats, convert(res.stats));
  return {static_cast<double>(res.continued->value), static_cast<double>(res.continued->error)};
}

// h_s(lambda) = W_s(lambda) / W_s(0), W_s(lambda) = 2 pi int rho^{e-1} chi(rho) chi(lambda rho).
template <class Real>
class ZetaWeight {
public:
  using V = std::complex<Real>;

  explicit ZetaWeight(V e) : e_(e) {
    j1_ = integrate([](Real rho) { return quad::plateau<Real>(rho); }, 1, 2, {});
    const Real a = 0.5, b = 2;
    const Real width = (b - a) / kSegments;
    for (int s = 0; s < kSegments; ++s) {
      Segment seg{a + s * width, a + (s + 1) * width, {}};
      for (int j = 0; j < kNodes; ++j) seg.values[j] = exact(node(seg, j));
      segs_.push_back(seg);
    }
    for (const auto& seg : segs_) {
      const Real x = seg.lo + (seg.hi - seg.lo) * Real(0.37);
      interp_error_ = std::max(interp_error_, std::abs(interpolate(seg, x) - exact(x)));
    }
  }

  V operator()(Real lambda) const {
    if (lambda <= Real(0.5)) return V(1);
    if (lambda >= 2) return std::exp(-e_ * std::log(lambda));
    std::size_t s = static_cast<std::size_t>((lambda - Real(0.5)) / (Real(1.5) / kSegments));
    s = std::min(s, segs_.size() - 1);
    return interpolate(segs_[s], lambda);
  }

  V exact(Real lambda) const {
    if (lambda <= Real(0.5)) return V(1);
    const Real m = std::max(Real(1), lambda);
    const Real lo = 1 / m, hi = std::min(Real(2), 2 / lambda);
    const V j = integrate(
        [&](Real rho) { return quad::plateau<Real>(rho) * quad::plateau<Real>(lambda * rho); }, lo,
        hi, {Real(1), 1 / lambda});
    return (std::exp(-e_ * std::log(m)) + e_ * j) / (V(1) + e_ * j1_);
  }

  V j1() const { return j1_; }
  Real interpolation_error() const { return interp_error_; }

private:
  static constexpr int kSegments = 24;
  static constexpr int kNodes = 24;
  struct Segment {
    Real lo, hi;
    V values[kNodes];
  };

  static Real node(const Segment& s, int j) {
    const Real c = std::cos(std::numbers::pi_v<Real> * j / (kNodes - 1));
    return (s.lo + s.hi) / 2 + (s.hi - s.lo) / 2 * c;
  }

  static V interpolate(const Segment& s, Real x) {
    V num{}, den{};
    for (int j = 0; j < kNodes; ++j) {
      const Real xj = node(s, j);
      if (x == xj) return s.values[j];
      Real w = (j % 2 == 0) ? 1 : -1;
      if (j == 0 || j == kNodes - 1) w /= 2;
      const Real t = w / (x - xj);
      num += t * s.values[j];
      den += t;
    }
    return num / den;
  }

  // int_lo^hi rho^{e-1} g(rho) d rho, split at the given breakpoints.
  template <class G>
  V integrate(G g, Real lo, Real hi, std::vector<Real> breaks) const {
    if (!(hi > lo)) return V{};
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    V total{};
    auto f = [&](Real rho) {
      return quad::Estimate<Real, V>{std::exp((e_ - V(1)) * std::log(rho)) * g(rho), 0};
    };
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const Real a = std::max(lo, breaks[i]), b = std::min(hi, breaks[i + 1]);
      if (b > a)
        total += quad::adaptive<Real, V>(f, a, b, std::numeric_limits<Real>::epsilon() * 10,
                                         std::numeric_limits<Real>::epsilon() * 10, 200)
                     .estimate.value;
    }
    return total;
  }

  V e_;
  V j1_;
  std::vector<Segment> segs_;
  Real interp_error_ = 0;
};

struct ZetaParts {
  std::complex<double> integral;  // int K_s h_s dA
  double integral_error = 0;
  std::complex<double> j1, e;
  double weight_error = 0;
  QuadratureStats stats;
};

template <class Real>
ZetaParts zeta_parts(const LineConfig& cfg, const std::vector<double>& b, std::complex<double> s,
                     const QuadratureConfig& q) {
  using V = std::complex<Real>;
  const V sv(static_cast<Real>(s.real()), static_cast<Real>(s.imag()));
  const Real d = static_cast<Real>(cfg.d);
  const V e = 2 * d * sv + V(4);
  auto weight = std::make_shared<ZetaWeight<Real>>(e);
  quad::PlanarKernel<V> k;
  k.origin_exponent = 2 * static_cast<Real>(b[0]) * sv;
  for (std::size_t l = 1; l < b.size(); ++l) {
    if (b[l] == 0) continue;
    const std::complex<Real> a(static_cast<Real>(cfg.slopes[l].real()),
                               static_cast<Real>(cfg.slopes[l].imag()));
    k.points.push_back({-a, 2 * static_cast<Real>(b[l]) * sv, 0});
  }
  k.radial_weight = [weight](Real lambda) { return (*weight)(lambda); };
  quad::PlanarIntegrator<V> integ(k, planar_options<Real>(q));
  auto res = integ.run();
  ZetaParts out;
  const V i = res.continued->value;
  out.integral = {static_cast<double>(i.real()), static_cast<double>(i.imag())};
  out.integral_error = static_cast<double>(res.continued->error);
  const V j1 = weight->j1();
  out.j1 = {static_cast<double>(j1.real()), static_cast<double>(j1.imag())};
  out.e = {static_cast<double>(e.real()), static_cast<double>(e.imag())};
  // Weight error acts on the annulus 1/2 < |u| < 2 only; bound it by the total mass.
  out.weight_error = static_cast<double>(weight->interpolation_error()) *
                     (std::abs(out.integral) + out.integral_error) * 4;
  out.stats = convert(res.stats);
  return out;
}

ZetaParts compute_parts(const LineConfig& cfg, const std::vector<double>& b, std::complex<double> s,
                        const QuadratureConfig& q) {
  return dispatch(q.precision, [&]<class Real>() { return zeta_parts<Real>(cfg, b, s, q); });
}

void check_b(const LineConfig& cfg, const std::vector<double>& b) {
  cfg.validate();
  if (b.size() != cfg.size()) throw PreconditionError("multiplicity vector length mismatch");
  if (!(b[0] > 0)) throw PreconditionError("b1 must be positive");
  for (double x : b)
    if (!(x >= 0)) throw PreconditionError("multiplicities must be nonnegative");
  if (!close(b[0], cfg.b1) || !close(std::accumulate(b.begin(), b.end(), 0.0), cfg.d))
    throw PreconditionError("multiplicities disagree with the line configuration");
}

unsigned nd_order_bound(const std::vector<double>& b, double d) {
  const bool integral =
      std::all_of(b.begin(), b.end(), [](double x) { return x == std::round(x) && x < 1e9; });
  if (integral) {
    std::vector<RationalVector> forms;
    Multiplicities mult;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] == 0) continue;
      forms.push_back({Rational(1), Rational(static_cast<long>(i))});
      mult.push_back(static_cast<long>(b[i]));
    }
    const long di = std::accumulate(mult.begin(), mult.end(), 0L);
    return pole_order_bound(Arrangement(2, forms), mult, Rational(-2) / Rational(di),
                            ResolutionKind::all_edges)
        .bound;
  }
  return std::any_of(b.begin(), b.end(), [&](double x) { return close(2 * x, d); }) ? 2 : 1;
}

SignVerdict verdict_of(double value, double error) {
  if (std::abs(value) <= error) return SignVerdict::inconclusive;
  return value > 0 ? SignVerdict::positive : SignVerdict::negative;
}

double slope_factor(const LineConfig& cfg, const std::vector<double>& bp) {
  double log_f = 0;
  for (std::size_t l = 0; l < bp.size(); ++l)
    log_f -= 4 * bp[l] / cfg.d * std::log(std::abs(cfg.slopes[l + 1]));
  return std::exp(log_f);
}

}  // namespace

std::string to_string(Precision p) {
  return p == Precision::extended ? "extended" : "double";
}

Precision parse_precision(const std::string& s) {
  if (s == "double") return Precision::double_precision;
  if (s == "extended") return Precision::extended;
  throw PreconditionError("unknown precision '" + s + "' (expected double or extended)");
}

Precision precision_from_env(Precision fallback) {
  const char* v = std::getenv("ARRZETA_PRECISION");
  if (!v || !*v) return fallback;
  return parse_precision(v);
}

void LineConfig::validate() const {
  if (slopes.size() < 2) throw PreconditionError("need at least two lines");
  if (slopes[0] != std::complex<double>(0)) throw PreconditionError("first slope must be 0");
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (!std::isfinite(slopes[i].real()) || !std::isfinite(slopes[i].imag()))
      throw PreconditionError("slopes must be finite");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(slopes[i] - slopes[j]) <= 1e-12)
        throw PreconditionError("slopes must be pairwise distinct");
  }
  if (!(b1 > 0) || !(d > b1)) throw PreconditionError("need 0 < b1 < d");
}

LineConfig line_config(std::vector<std::complex<double>> slopes, const std::vector<double>& b) {
  if (b.size() != slopes.size()) throw PreconditionError("multiplicity vector length mismatch");
  LineConfig cfg{std::move(slopes), std::accumulate(b.begin(), b.end(), 0.0), b.at(0)};
  cfg.validate();
  return cfg;
}

std::pair<LineConfig, std::vector<double>> line_config_from_arrangement(const Arrangement& a,
                                                                        const Multiplicities& b) {
  if (a.dim() != 2) throw PreconditionError("line configurations need a plane arrangement");
  if (b.size() != a.size()) throw PreconditionError("multiplicity vector length mismatch");
  if (a.size() < 2) throw PreconditionError("need at least two lines");
  const std::size_t m =
      static_cast<std::size_t>(std::max_element(b.begin(), b.end()) - b.begin());
  const RationalVector x = a.form(m);
  // Second coordinate: a form not proportional to any line.
  RationalVector y;
  for (long t = 0;; ++t) {
    RationalVector cand{Rational(t), Rational(1)};
    if (t > 0 && t % 2 == 0) cand = {Rational(1), Rational(t)};
    bool ok = rank({x, cand}, 2) == 2;
    for (std::size_t i = 0; ok && i < a.size(); ++i) ok = !proportional(a.form(i), cand);
    if (ok) {
      y = cand;
      break;
    }
  }
  const Rational det = x[0] * y[1] - x[1] * y[0];
  std::vector<std::complex<double>> slopes{0.0};
  std::vector<double> mult{static_cast<double>(b[m])};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == m) continue;
    const auto& f = a.form(i);
    // f = alpha x + beta y.
    const Rational alpha = (f[0] * y[1] - f[1] * y[0]) / det;
    const Rational beta = (x[0] * f[1] - x[1] * f[0]) / det;
    slopes.emplace_back((beta / alpha).to_double());
    mult.push_back(static_cast<double>(b[i]));
  }
  return {line_config(std::move(slopes), mult), mult};
}

std::vector<double> QuadratureConfig::default_delta_schedule() {
  std::vector<double> s;
  for (int k = 0; k < 12; ++k) s.push_back(std::ldexp(1e-2, -k));
  return s;
}

void QuadratureConfig::validate() const {
  if (!(target_abs_tol > 0)) throw PreconditionError("target tolerance must be positive");
  if (delta_schedule.empty()) throw PreconditionError("delta schedule must not be empty");
  for (std::size_t i = 0; i < delta_schedule.size(); ++i) {
    if (!(delta_schedule[i] > 0)) throw PreconditionError("delta values must be positive");
    if (i > 0 && !(delta_schedule[i] < delta_schedule[i - 1]))
      throw PreconditionError("delta schedule must be strictly decreasing");
  }
  if (outer_radius < 0) throw PreconditionError("outer radius must be nonnegative");
  if (max_refinements < 1) throw PreconditionError("max_refinements must be positive");
}

CConstantReport c_constant(const LineConfig& cfg, const std::vector<double>& b_prime,
                           const QuadratureConfig& q) {
  cfg.validate();
  q.validate();
  check_c_regime(cfg.b1, cfg.d);
  check_b_prime(cfg, b_prime);
  double max_slope = 0;
  for (const auto& a : cfg.slopes) max_slope = std::max(max_slope, std::abs(a));
  if (q.outer_radius != 0 && q.outer_radius <= max_slope + 1)
    throw PreconditionError("outer radius must exceed max |a_l| + 1");
  return dispatch(q.precision,
                  [&]<class Real>() { return c_constant_impl<Real>(cfg, b_prime, q); });
}

GradientReport grad_c(const LineConfig& cfg, const std::vector<double>& b_prime,
                      const QuadratureConfig& q) {
  cfg.validate();
  q.validate();
  check_c_regime(cfg.b1, cfg.d);
  check_b_prime(cfg, b_prime);
  GradientReport out;
  out.near_boundary = near_boundary(b_prime);
  for (std::size_t j = 0; j < b_prime.size(); ++j) {
    std::vector<int> powers(b_prime.size(), 0);
    powers[j] = 1;
    auto [v, e] = dispatch(q.precision, [&]<class Real>() {
      return log_integral<Real>(cfg, b_prime, powers, -4 / cfg.d, q, nullptr);
    });
    out.values.push_back(v);
    out.errors.push_back(e);
  }
  return out;
}

HessianReport hess_c(const LineConfig& cfg, const std::vector<double>& b_prime,
                     const QuadratureConfig& q) {
  cfg.validate();
  q.validate();
  check_c_regime(cfg.b1, cfg.d);
  check_b_prime(cfg, b_prime);
  const std::size_t n = b_prime.size();
  HessianReport out;
  out.near_boundary = near_boundary(b_prime);
  out.values.assign(n, std::vector<double>(n, 0));
  out.errors.assign(n, std::vector<double>(n, 0));
  const double factor = 16 / (cfg.d * cfg.d);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      std::vector<int> powers(n, 0);
      ++powers[j];
      ++powers[k];
      auto [v, e] = dispatch(q.precision, [&]<class Real>() {
        return log_integral<Real>(cfg, b_prime, powers, factor, q, nullptr);
      });
      out.values[j][k] = out.values[k][j] = v;
      out.errors[j][k] = out.errors[k][j] = e;
    }
  Eigen::MatrixXd h(n, n);
  double frob = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      h(j, k) = out.values[j][k];
      frob += out.errors[j][k] * out.errors[j][k];
      out.asymmetry = std::max(out.asymmetry, std::abs(out.values[j][k] - out.values[k][j]));
    }
  out.eigen_error = std::sqrt(frob);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  return out;
}

double log_canonical_threshold(const std::vector<double>& b) {
  const double d = std::accumulate(b.begin(), b.end(), 0.0);
  double lct = 2 / d;
  for (double x : b) lct = std::min(lct, 1 / x);
  return lct;
}

ZetaValue direct_zeta(const LineConfig& cfg, const std::vector<double>& b, std::complex<double> s,
                      const QuadratureConfig& q) {
  check_b(cfg, b);
  q.validate();
  if (!(s.real() > -log_canonical_threshold(b)))
    throw PreconditionError("s lies outside the convergence region Re s > -lct");
  auto p = compute_parts(cfg, b, s, q);
  // zeta = 2 pi Phi I with Phi = 1/e + J1.
  const std::complex<double> phi = 1.0 / p.e + p.j1;
  ZetaValue out;
  out.value = 2 * std::numbers::pi * phi * p.integral;
  out.error = 2 * std::numbers::pi * std::abs(phi) * (p.integral_error + p.weight_error);
  out.stats = p.stats;
  return out;
}

ZetaValue regular_part(const LineConfig& cfg, const std::vector<double>& b, double s,
                       const QuadratureConfig& q) {
  check_b(cfg, b);
  q.validate();
  const double d = cfg.d;
  if (!(s > -2 / d)) throw PreconditionError("regular part needs s > -2/d");
  if (!(s > -2 / b[0])) throw PreconditionError("continuation needs s > -2/b1");
  for (std::size_t l = 1; l < b.size(); ++l)
    if (b[l] > 0 && !(s > -1 / b[l])) throw PreconditionError("s too small for the off-origin lines");
  if (close(s, -1 / b[0])) throw PreconditionError("s is the pole -1/b1");
  auto p = compute_parts(cfg, b, s, q);
  // (s + 2/d) zeta = (pi/d)(1 + e J1) I.
  const std::complex<double> f = std::numbers::pi / d * (1.0 + p.e * p.j1);
  ZetaValue out;
  out.value = f * p.integral;
  out.error = std::abs(f) * (p.integral_error + p.weight_error);
  out.stats = p.stats;
  return out;
}

std::string to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::positive: return "positive";
    case SignVerdict::negative: return "negative";
    case SignVerdict::order_two: return "order-two";
    case SignVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ResidueReport residue_nd(const LineConfig& cfg, const std::vector<double>& b,
                         const QuadratureConfig& q) {
  check_b(cfg, b);
  if (close(2 * cfg.b1, cfg.d))
    throw PreconditionError("b1 = d/2: -2/d may have order two; use the order-two analysis");
  if (!(2 * cfg.b1 > cfg.d)) throw PreconditionError("b1 < d/2: use residue_fit instead");
  const std::vector<double> bp(b.begin() + 1, b.end());
  auto c = c_constant(cfg, bp, q);
  ResidueReport rep;
  rep.method = "c-constant";
  rep.c_value = c.value;
  const double f = std::numbers::pi / cfg.d * slope_factor(cfg, bp);
  rep.residue = f * c.value;
  rep.error_estimate = f * c.error;
  rep.delta_trace = c.trace;
  rep.order_bound = nd_order_bound(b, cfg.d);
  rep.sign_verdict = verdict_of(rep.residue, rep.error_estimate);
  return rep;
}

ResidueReport residue_fit(const LineConfig& cfg, const std::vector<double>& b,
                          const QuadratureConfig& q, int degree) {
  check_b(cfg, b);
  if (degree < 1 || degree > 6) throw PreconditionError("fit degree must be in [1, 6]");
  const double d = cfg.d;
  for (double x : b)
    if (close(2 * x, d))
      throw PreconditionError("some b_i = d/2: -2/d is not a simple candidate; use the order-two analysis");
  const double s0 = -2 / d;
  // Poles of (s + 2/d) zeta between -2/d and the grid are modeled by h/(h - h_p).
  std::vector<double> modeled;
  double dist = std::abs(-2 / b[0] - s0);
  for (double x : b) {
    if (x == 0) continue;
    const double p = -1 / x;
    if (p > s0) {
      if (std::find_if(modeled.begin(), modeled.end(), [&](double m) { return close(m, p - s0); }) ==
          modeled.end())
        modeled.push_back(p - s0);
    } else {
      dist = std::min(dist, s0 - p);
    }
  }
  double h_max = std::min(0.05, 0.4 * dist);
  for (double hp : modeled) h_max = std::min(h_max, 0.6 * hp);
  const int npts = 4 * (degree + 1 + static_cast<int>(modeled.size()));

  ResidueReport rep;
  rep.method = "fit";
  rep.fit_degree = degree;
  rep.order_bound = nd_order_bound(b, d);
  for (int k = 1; k <= npts; ++k) {
    const double s = s0 + h_max * k / npts;
    auto z = regular_part(cfg, b, s, q);
    rep.fit_grid.push_back({s, z.value.real(), z.error});
  }
  auto fit = [&](int deg, Eigen::VectorXd* residuals, Eigen::RowVectorXd* c0_row) {
    const int cols = deg + 1 + static_cast<int>(modeled.size());
    Eigen::MatrixXd a(npts, cols);
    Eigen::VectorXd y(npts);
    for (int k = 0; k < npts; ++k) {
      const double h = rep.fit_grid[k].s - s0;
      for (int j = 0; j <= deg; ++j) a(k, j) = std::pow(h / h_max, j);
      for (std::size_t m = 0; m < modeled.size(); ++m)
        a(k, deg + 1 + static_cast<int>(m)) = h / (h - modeled[m]);
      y(k) = rep.fit_grid[k].value;
    }
    Eigen::MatrixXd pinv = a.completeOrthogonalDecomposition().pseudoInverse();
    Eigen::VectorXd c = pinv * y;
    if (residuals) *residuals = y - a * c;
    if (c0_row) *c0_row = pinv.row(0);
    return c(0);
  };
  Eigen::VectorXd resid;
  Eigen::RowVectorXd row;
  const double r = fit(degree, &resid, &row);
  const double r_next = fit(degree + 1, nullptr, nullptr);
  double prop = 0;
  for (int k = 0; k < npts; ++k) prop += std::abs(row(k)) * rep.fit_grid[k].error;
  rep.residue = r;
  rep.c_value = r;
  rep.error_estimate = std::abs(r - r_next) + prop;
  rep.fit_residual = resid.cwiseAbs().maxCoeff() / std::max(std::abs(r), 1e-300);
  rep.sign_verdict = verdict_of(r, rep.error_estimate);
  if (rep.fit_residual > 1e-3) {
    rep.sign_verdict = SignVerdict::inconclusive;
    rep.note = "fit residual above threshold";
  }
  return rep;
}

CConstantCheckReport verify_c_constant(const LineConfig& cfg_in, double b1, double d, std::size_t samples,
                               const QuadratureConfig& q, std::uint64_t seed) {
  LineConfig cfg = cfg_in;
  cfg.b1 = b1;
  cfg.d = d;
  cfg.validate();
  q.validate();
  check_c_regime(b1, d);
  const std::size_t n = cfg.size() - 1;
  const double mass = d - b1;

  CConstantCheckReport rep;
  rep.b1 = b1;
  rep.d = d;
  QuadratureConfig inner = q;
  inner.threads = 1;

  std::vector<std::vector<double>> points;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(n, 0);
    v[j] = mass;
    points.push_back(v);
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<double> x(n);
    double sum = 0;
    for (auto& v : x) sum += (v = expo(rng));
    for (auto& v : x) v = mass * (0.1 / static_cast<double>(n) + 0.9 * v / sum);
    points.push_back(x);
  }

  auto vertex_task = [&](const std::vector<double>& bp) {
    VertexCheck v;
    v.b_prime = bp;
    try {
      auto c = c_constant(cfg, bp, inner);
      v.c_value = c.value;
      v.c_error = c.error;
    } catch (const NumericalError& e) {
      throw NumericalError(std::string("vertex check: ") + e.what(), e.trace());
    }
    v.vanishes = std::abs(v.c_value) <= 10 * q.target_abs_tol;
    return v;
  };
  auto sample_task = [&](const std::vector<double>& bp) {
    SampleCheck s;
    s.b_prime = bp;
    try {
      auto c = c_constant(cfg, bp, inner);
      s.c_value = c.value;
      s.c_error = c.error;
    } catch (const NumericalError& e) {
      throw NumericalError(std::string("interior sample: ") + e.what(), e.trace());
    }
    auto h = hess_c(cfg, bp, inner);
    s.min_eigenvalue = h.min_eigenvalue;
    s.eigen_error = h.eigen_error;
    const double f = std::numbers::pi / d * slope_factor(cfg, bp);
    s.residue = f * s.c_value;
    s.residue_error = f * s.c_error;
    s.negative = s.c_value < 0 && std::abs(s.c_value) > s.c_error;
    s.convex = s.min_eigenvalue > s.eigen_error;
    s.residue_negative = s.residue < 0 && std::abs(s.residue) > s.residue_error;
    return s;
  };

  const std::size_t workers = std::max(1u, q.threads);
  std::vector<std::future<void>> jobs;
  rep.vertices.resize(n);
  rep.samples.resize(samples);
  std::size_t next = 0;
  while (next < points.size()) {
    jobs.clear();
    for (std::size_t w = 0; w < workers && next < points.size(); ++w, ++next) {
      const std::size_t i = next;
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, [&, i] {
        if (i < n) rep.vertices[i] = vertex_task(points[i]);
        else rep.samples[i - n] = sample_task(points[i]);
      }));
    }
    for (auto& j : jobs) j.get();
  }
  rep.all_pass = std::all_of(rep.vertices.begin(), rep.vertices.end(),
                             [](const VertexCheck& v) { return v.vanishes; }) &&
                 std::all_of(rep.samples.begin(), rep.samples.end(), [](const SampleCheck& s) {
                   return s.negative && s.convex && s.residue_negative;
                 });
  return rep;
}

}  // namespace arrzeta
