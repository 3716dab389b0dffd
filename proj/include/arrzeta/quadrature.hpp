#pragma once

// Quadrature of kernels |u|^p0 * prod |u - z_l|^{p_l} (log|1 - u/z_l|)^{k_l} * w(|u|)
// over the complex plane, with a smooth partition of unity around the singular points.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace arrzeta::quad {

template <class T>
struct real_of {
  using type = T;
};
template <class T>
struct real_of<std::complex<T>> {
  using type = T;
};
template <class V>
using real_t = typename real_of<V>::type;

template <class Real>
constexpr Real two_pi = 2 * std::numbers::pi_v<Real>;

// 0 for x <= 0, 1 for x >= 1, C-infinity in between.
template <class Real>
Real smooth_step(Real x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const Real a = std::exp(-1 / x), b = std::exp(-1 / (1 - x));
  return a / (a + b);
}

// 1 on [0, 1], 0 on [2, inf).
template <class Real>
Real plateau(Real r) {
  return smooth_step<Real>(2 - r);
}

template <class Real, class V>
struct Estimate {
  V value{};
  Real error = 0;
};

template <class Real>
struct GaussKronrod15 {
  static constexpr long double xgk[8] = {
      0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
      0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
      0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
      0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
  static constexpr long double wgk[8] = {
      0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
      0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
      0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
      0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
  static constexpr long double wg[4] = {
      0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
      0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};
};

// f returns Estimate<Real, V> so inner quadrature errors propagate.
template <class Real, class V, class F>
Estimate<Real, V> gk15(F& f, Real a, Real b) {
  using GK = GaussKronrod15<Real>;
  const Real c = (a + b) / 2, h = (b - a) / 2;
  V kron{}, gauss{};
  Real inner = 0;
  for (int i = 0; i < 8; ++i) {
    const Real x = static_cast<Real>(GK::xgk[i]) * h;
    const Real wk = static_cast<Real>(GK::wgk[i]);
    if (i == 7) {
      auto fc = f(c);
      kron += wk * fc.value;
      gauss += static_cast<Real>(GK::wg[3]) * fc.value;
      inner += wk * fc.error;
      continue;
    }
    auto f1 = f(c - x), f2 = f(c + x);
    kron += wk * (f1.value + f2.value);
    inner += wk * (f1.error + f2.error);
    if (i % 2 == 1) gauss += static_cast<Real>(GK::wg[i / 2]) * (f1.value + f2.value);
  }
  return {kron * h, std::abs(kron - gauss) * std::abs(h) + inner * std::abs(h)};
}

template <class Real, class V>
struct AdaptiveResult {
  Estimate<Real, V> estimate;
  int intervals = 0;
  bool converged = true;
};

// Global adaptive bisection on [a, b].
template <class Real, class V, class F>
AdaptiveResult<Real, V> adaptive(F& f, Real a, Real b, Real abs_tol, Real rel_tol,
                                 int max_intervals) {
  struct Piece {
    Real a, b;
    Estimate<Real, V> e;
    bool operator<(const Piece& o) const { return e.error < o.e.error; }
  };
  std::priority_queue<Piece> heap;
  auto first = gk15<Real, V>(f, a, b);
  heap.push({a, b, first});
  V total = first.value;
  Real err = first.error;
  AdaptiveResult<Real, V> out;
  out.intervals = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (out.intervals >= max_intervals) {
      out.converged = false;
      break;
    }
    Piece p = heap.top();
    heap.pop();
    const Real m = (p.a + p.b) / 2;
    auto l = gk15<Real, V>(f, p.a, m), r = gk15<Real, V>(f, m, p.b);
    total += l.value + r.value - p.e.value;
    err += l.error + r.error - p.e.error;
    heap.push({p.a, m, l});
    heap.push({m, p.b, r});
    ++out.intervals;
  }
  // Re-sum to shed accumulated rounding in the running totals.
  total = V{};
  err = 0;
  while (!heap.empty()) {
    total += heap.top().e.value;
    err += heap.top().e.error;
    heap.pop();
  }
  out.estimate = {total, err};
  return out;
}

struct AngularStats {
  int max_points = 0;
  long evaluations = 0;
  int unconverged = 0;
};

// Periodic trapezoid rule on [0, 2pi) with doubling until the change is below
// rel_tol times the integral of |g|, or below abs_floor.
template <class Real, class V, class G>
Estimate<Real, V> periodic_trapezoid(G& g, int n0, int n_max, Real rel_tol, AngularStats& st,
                                     Real abs_floor = 0) {
  int n = n0;
  V sum{};
  Real abs_sum = 0;
  for (int j = 0; j < n; ++j) {
    V v = g(two_pi<Real> * j / n);
    sum += v;
    abs_sum += std::abs(v);
  }
  st.evaluations += n;
  V prev = sum * (two_pi<Real> / n);
  for (;;) {
    V add{};
    for (int j = 0; j < n; ++j) {
      V v = g(two_pi<Real> * (2 * j + 1) / (2 * n));
      add += v;
      abs_sum += std::abs(v);
    }
    st.evaluations += n;
    sum += add;
    n *= 2;
    const V cur = sum * (two_pi<Real> / n);
    const Real scale = abs_sum * (two_pi<Real> / n);
    const Real diff = std::abs(cur - prev);
    if (diff <= rel_tol * scale || diff <= abs_floor || diff <= std::numeric_limits<Real>::min()) {
      st.max_points = std::max(st.max_points, n);
      return {cur, diff};
    }
    if (n >= n_max) {
      st.max_points = std::max(st.max_points, n);
      ++st.unconverged;
      return {cur, diff};
    }
    prev = cur;
  }
}

template <class V>
struct SingularPoint {
  std::complex<real_t<V>> z;
  V exponent{};
  int log_power = 0;  // power of log|1 - u/z|
};

template <class V>
struct PlanarKernel {
  using Real = real_t<V>;
  V origin_exponent{};
  std::vector<SingularPoint<V>> points;
  V scale = V(1);
  std::function<V(Real)> radial_weight;  // empty means 1
};

template <class Real>
struct PlanarOptions {
  Real abs_tol = 1e-10;
  Real rel_tol = 1e-12;
  Real angular_rel_tol = std::is_same_v<Real, double> ? 1e-13 : 1e-16;
  std::vector<Real> delta_schedule;  // decreasing; plain cutoffs at the origin
  bool continued = true;             // also compute the origin-subtracted continuation
  int max_intervals = 400;
  int max_angular = 1 << 15;
  int patch_depth = 44;    // dyadic levels before the analytic tail
  int max_far_panels = 160;
  Real far_radius = 0;           // far panels always reach at least this radius
  bool tail_extrapolation = true;  // add the geometric tail beyond the last far panel
  unsigned threads = 1;
};

struct PlanarStats {
  long evaluations = 0;
  int radial_intervals = 0;
  int max_angular_points = 0;
  int angular_unconverged = 0;
  int origin_panels = 0;
  int far_panels = 0;
  int patches = 0;
  bool radial_converged = true;
  double far_tail_ratio = 0;
};

template <class V>
struct PlanarResult {
  using Real = real_t<V>;
  std::optional<Estimate<Real, V>> continued;           // whole-plane continuation
  std::vector<Estimate<Real, V>> outside_delta;         // integral over |u| > delta_k
  PlanarStats stats;
};

template <class V>
class PlanarIntegrator {
public:
  using Real = real_t<V>;
  using C = std::complex<Real>;

  PlanarIntegrator(PlanarKernel<V> kernel, PlanarOptions<Real> opt)
      : k_(std::move(kernel)), opt_(std::move(opt)) {
    const std::size_t n = k_.points.size();
    for (const auto& p : k_.points)
      if (!(std::real(V(p.exponent)) > -2))
        throw std::domain_error("singular point exponent must exceed -2");
    if (opt_.continued && !(std::real(V(k_.origin_exponent)) > -4))
      throw std::domain_error("origin continuation needs exponent above -4");
    rho_.resize(n);
    logz_.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
      const C z = k_.points[l].z;
      Real m = std::abs(z);
      for (std::size_t j = 0; j < n; ++j)
        if (j != l) m = std::min(m, std::abs(z - k_.points[j].z));
      rho_[l] = m / 2;
      logz_[l] = std::log(std::abs(z));
    }
    r_in_ = 1;
    r_out_ = 1;
    if (n > 0) {
      r_in_ = std::numeric_limits<Real>::max();
      r_out_ = 0;
      for (std::size_t l = 0; l < n; ++l) {
        r_in_ = std::min(r_in_, std::abs(k_.points[l].z) - rho_[l]);
        r_out_ = std::max(r_out_, std::abs(k_.points[l].z) + rho_[l]);
      }
      feature_ = *std::min_element(rho_.begin(), rho_.end()) / 2;
    }
    if (!opt_.delta_schedule.empty() && opt_.delta_schedule.front() >= r_in_)
      throw std::invalid_argument("delta schedule must lie inside the origin zone");
    log_rest0_ = V{};
    rest0_has_log_ = false;
    for (std::size_t l = 0; l < n; ++l) {
      log_rest0_ += k_.points[l].exponent * logz_[l];
      if (k_.points[l].log_power > 0) rest0_has_log_ = true;
    }
    w0_ = weight(0);
  }

  Real inner_radius() const { return r_in_; }
  Real outer_radius() const { return r_out_; }
  const std::vector<Real>& patch_radii() const { return rho_; }

  PlanarResult<V> run() const {
    PlanarResult<V> out;
    const std::size_t np = k_.points.size();
    // Tasks: 0 plain origin, 1 continued origin, 2 middle, 3 far, 4.. patches.
    const std::size_t ntasks = 4 + np;
    std::vector<std::vector<Estimate<Real, V>>> parts(ntasks);
    std::vector<PlanarStats> stats(ntasks);
    auto task = [&](std::size_t t) {
      PlanarStats& st = stats[t];
      if (t == 0) {
        if (!opt_.delta_schedule.empty()) parts[t] = origin_plain(st);
      } else if (t == 1) {
        if (opt_.continued) parts[t] = {origin_continued(st)};
      } else if (t == 2) {
        parts[t] = {middle(st)};
      } else if (t == 3) {
        parts[t] = {far(st)};
      } else {
        parts[t] = {patch(t - 4, st)};
      }
    };
    if (opt_.threads > 1) {
      std::vector<std::future<void>> jobs;
      std::size_t next = 0;
      while (next < ntasks) {
        jobs.clear();
        for (unsigned w = 0; w < opt_.threads && next < ntasks; ++w, ++next)
          jobs.push_back(std::async(std::launch::async, task, next));
        for (auto& j : jobs) j.get();
      }
    } else {
      for (std::size_t t = 0; t < ntasks; ++t) task(t);
    }

    // Fixed-order reduction.
    Estimate<Real, V> common{};
    for (std::size_t t = 2; t < ntasks; ++t) {
      common.value += parts[t][0].value;
      common.error += parts[t][0].error;
    }
    if (opt_.continued) {
      Estimate<Real, V> c = common;
      c.value += parts[1][0].value;
      c.error += parts[1][0].error;
      out.continued = Estimate<Real, V>{k_.scale * c.value, std::abs(k_.scale) * c.error};
    }
    if (!opt_.delta_schedule.empty()) {
      // parts[0][k] is the panel from delta_k up to the previous boundary.
      Estimate<Real, V> acc = common;
      const auto& panels = parts[0];
      std::size_t pi = 0;
      for (std::size_t k = 0; k < opt_.delta_schedule.size(); ++k) {
        for (; pi < panels.size() && panel_lo_[pi] >= opt_.delta_schedule[k]; ++pi) {
          acc.value += panels[pi].value;
          acc.error += panels[pi].error;
        }
        out.outside_delta.push_back({k_.scale * acc.value, std::abs(k_.scale) * acc.error});
      }
    }
    for (const auto& s : stats) {
      out.stats.evaluations += s.evaluations;
      out.stats.radial_intervals += s.radial_intervals;
      out.stats.max_angular_points = std::max(out.stats.max_angular_points, s.max_angular_points);
      out.stats.angular_unconverged += s.angular_unconverged;
      out.stats.origin_panels += s.origin_panels;
      out.stats.far_panels += s.far_panels;
      out.stats.radial_converged = out.stats.radial_converged && s.radial_converged;
      out.stats.far_tail_ratio = std::max(out.stats.far_tail_ratio, s.far_tail_ratio);
    }
    out.stats.patches = static_cast<int>(np);
    return out;
  }

private:
  V weight(Real lambda) const { return k_.radial_weight ? k_.radial_weight(lambda) : V(1); }

  static V vexp(const V& x) { return std::exp(x); }

  static V vexpm1(const V& x) {
    if constexpr (std::is_same_v<V, Real>) {
      return std::expm1(x);
    } else {
      const Real a = x.real(), b = x.imag();
      const Real s = std::sin(b / 2);
      return V(std::expm1(a) * std::cos(b) - 2 * s * s, std::exp(a) * std::sin(b));
    }
  }

  static V power(Real base_log, const V& e) { return vexp(e * base_log); }

  // log|1 - u/z_l| for |u| well inside |z_l|.
  Real log_rel_small(const C& u, std::size_t l) const {
    const C w = u / k_.points[l].z;
    return std::log1p(std::norm(w) - 2 * w.real()) / 2;
  }

  // Kernel without the |u|^p0 factor and weight, at |u| < r_in, relative form.
  // Returns (S, logs) with rest(u) = exp(log_rest0 + S) * logs.
  std::pair<V, Real> rest_parts(const C& u) const {
    V s{};
    Real logs = 1;
    for (std::size_t l = 0; l < k_.points.size(); ++l) {
      const auto& p = k_.points[l];
      const Real lw = log_rel_small(u, l);
      s += p.exponent * lw;
      for (int j = 0; j < p.log_power; ++j) logs *= lw;
    }
    return {s, logs};
  }

  // Full kernel (without scale) at a generic point; mask multiplies.
  V full(const C& u, Real mask, Real lambda, const V& w) const {
    if (mask == 0) return V{};
    V s = k_.origin_exponent * std::log(lambda);
    Real logs = 1;
    for (std::size_t l = 0; l < k_.points.size(); ++l) {
      const auto& p = k_.points[l];
      const Real la = std::log(std::abs(u - p.z));
      s += p.exponent * la;
      if (p.log_power > 0) {
        const Real lw = la - logz_[l];
        for (int j = 0; j < p.log_power; ++j) logs *= lw;
      }
    }
    return mask * logs * vexp(s) * w;
  }

  Real patch_mask(const C& u) const {
    Real m = 1;
    for (std::size_t l = 0; l < k_.points.size(); ++l)
      m -= plateau<Real>(2 * std::abs(u - k_.points[l].z) / rho_[l]);
    return m < 0 ? Real(0) : m;
  }

  int angular_start(Real lambda) const {
    if (k_.points.empty()) return 16;
    const Real want = 4 * two_pi<Real> * lambda / feature_;
    int n = 16;
    while (n < want && n < 4096) n *= 2;
    return n;
  }

  template <class G>
  Estimate<Real, V> angular(G& g, int n0, PlanarStats& st, Real abs_floor = 0) const {
    AngularStats as;
    auto e = periodic_trapezoid<Real, V>(g, n0, opt_.max_angular, opt_.angular_rel_tol, as,
                                         abs_floor);
    st.evaluations += as.evaluations;
    st.max_angular_points = std::max(st.max_angular_points, as.max_points);
    st.angular_unconverged += as.unconverged;
    return e;
  }

  template <class F>
  Estimate<Real, V> radial(F& f, Real a, Real b, Real tol, PlanarStats& st) const {
    auto r = adaptive<Real, V>(f, a, b, tol, opt_.rel_tol, opt_.max_intervals);
    st.radial_intervals += r.intervals;
    st.radial_converged = st.radial_converged && r.converged;
    return r.estimate;
  }

  Real panel_tol() const { return opt_.abs_tol / 512; }

  // Panels on (delta_min, r_in), boundaries include every delta in the schedule.
  std::vector<Estimate<Real, V>> origin_plain(PlanarStats& st) const {
    std::vector<Real> bounds{r_in_};
    std::size_t k = 0;
    const auto& sched = opt_.delta_schedule;
    while (bounds.back() > sched.back()) {
      Real next = bounds.back() / 2;
      while (k < sched.size() && sched[k] >= bounds.back()) ++k;
      if (k < sched.size() && sched[k] >= next) next = sched[k];
      bounds.push_back(next);
    }
    auto f = [&](Real lambda) {
      const V w = weight(lambda);
      auto g = [&](Real gamma) {
        const C u = std::polar(lambda, gamma);
        auto [s, logs] = rest_parts(u);
        return logs * vexp(log_rest0_ + s) * w;
      };
      auto a = angular(g, 16, st);
      const V pw = power(std::log(lambda), k_.origin_exponent + V(1));
      return Estimate<Real, V>{pw * a.value, std::abs(pw) * a.error};
    };
    std::vector<Estimate<Real, V>> panels;
    panel_lo_.clear();
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      panels.push_back(radial(f, bounds[i + 1], bounds[i], panel_tol(), st));
      panel_lo_.push_back(bounds[i + 1]);
    }
    st.origin_panels += static_cast<int>(panels.size());
    return panels;
  }

  // Origin zone with the |u|^p0 * rest(0) * w(0) term integrated analytically.
  Estimate<Real, V> origin_continued(PlanarStats& st) const {
    const V rest0 = rest0_has_log_ ? V{} : vexp(log_rest0_);
    const V g0 = two_pi<Real> * rest0 * w0_;
    auto f = [&](Real lambda) {
      const V w = weight(lambda);
      auto g = [&](Real gamma) {
        const C u = std::polar(lambda, gamma);
        auto [s, logs] = rest_parts(u);
        if (rest0_has_log_) return V(logs * vexp(log_rest0_ + s) * w);
        return rest0 * (w * vexpm1(s) + (w - w0_));
      };
      auto a = angular(g, 16, st);
      const V pw = power(std::log(lambda), k_.origin_exponent + V(1));
      return Estimate<Real, V>{pw * a.value, std::abs(pw) * a.error};
    };
    Estimate<Real, V> total{};
    const V q = k_.origin_exponent + V(2);
    if (std::abs(g0) != 0) {
      if (std::abs(q) == 0) throw std::domain_error("continuation pole at the origin exponent -2");
      total.value = g0 * power(std::log(r_in_), q) / q;
    }
    Real hi = r_in_;
    V last{}, before{};
    int small = 0;
    for (int panel = 0; panel < 400; ++panel) {
      const Real lo = hi / 2;
      auto e = radial(f, lo, hi, panel_tol(), st);
      total.value += e.value;
      total.error += e.error;
      ++st.origin_panels;
      before = last;
      last = e.value;
      hi = lo;
      small = std::abs(e.value) < panel_tol() / 64 ? small + 1 : 0;
      if (small >= 3 && panel > 8) break;
    }
    // Geometric tail below the last panel.
    if (std::abs(before) > 0) {
      const Real ratio = std::abs(last) / std::abs(before);
      if (ratio < 1) total.error += std::abs(last) * ratio / (1 - ratio);
      else total.error += std::abs(last) * 64;
    }
    return total;
  }

  // Angular floors keep each zone's integrated floor below abs_tol / 1000.
  Real floor_base() const { return opt_.abs_tol / 1000 / two_pi<Real>; }

  Estimate<Real, V> middle(PlanarStats& st) const {
    if (k_.points.empty()) return {};
    const Real floor = floor_base() / (r_out_ * r_out_);
    auto f = [&](Real lambda) {
      const V w = weight(lambda);
      auto g = [&](Real gamma) {
        const C u = std::polar(lambda, gamma);
        return full(u, patch_mask(u), lambda, w);
      };
      auto a = angular(g, angular_start(lambda), st, floor);
      return Estimate<Real, V>{lambda * a.value, lambda * a.error};
    };
    return radial(f, r_in_, r_out_, opt_.abs_tol / 16, st);
  }

  Estimate<Real, V> far(PlanarStats& st) const {
    auto f = [&](Real lambda) {
      const V w = weight(lambda);
      auto g = [&](Real gamma) {
        const C u = std::polar(lambda, gamma);
        return full(u, Real(1), lambda, w);
      };
      auto a = angular(g, 16, st, floor_base() * r_out_ / (lambda * lambda * lambda));
      return Estimate<Real, V>{lambda * a.value, lambda * a.error};
    };
    Estimate<Real, V> total{};
    Real lo = r_out_;
    V last{}, before{};
    int small = 0;
    for (int panel = 0; panel < opt_.max_far_panels; ++panel) {
      const Real hi = lo * 2;
      auto e = radial(f, lo, hi, panel_tol(), st);
      total.value += e.value;
      total.error += e.error;
      ++st.far_panels;
      before = last;
      last = e.value;
      lo = hi;
      small = std::abs(e.value) < panel_tol() / 64 ? small + 1 : 0;
      if (small >= 3 && lo >= opt_.far_radius) break;
    }
    if (std::abs(before) > 0) {
      const V ratio = last / before;
      const Real mag = std::abs(ratio);
      st.far_tail_ratio = static_cast<double>(mag);
      if (mag < Real(0.9)) {
        const V tail = last * ratio / (V(1) - ratio);
        if (opt_.tail_extrapolation) total.value += tail;
        total.error += std::abs(tail);
      } else {
        total.error += std::abs(last) * 1000;
        st.radial_converged = false;
      }
    }
    return total;
  }

  Estimate<Real, V> patch(std::size_t l, PlanarStats& st) const {
    const auto& p = k_.points[l];
    const C z = p.z;
    const Real rho = rho_[l];
    const Real q_re = std::real(V(p.exponent)) + 2;
    Real mass = std::pow(rho, q_re) / q_re;
    for (int j = 0; j < p.log_power; ++j) mass *= 1 + std::abs(std::log(rho / 2) - logz_[l]) + 1 / q_re;
    const Real floor = floor_base() / std::max(Real(1), mass);
    // Angular factor: kernel without the t^{p_l} (log)^k singular part.
    auto h = [&](Real t) {
      auto g = [&](Real theta) {
        const C u = z + std::polar(t, theta);
        const Real lambda = std::abs(u);
        V s = k_.origin_exponent * std::log(lambda);
        Real logs = 1;
        for (std::size_t m = 0; m < k_.points.size(); ++m) {
          if (m == l) continue;
          const auto& q = k_.points[m];
          const Real la = std::log(std::abs(u - q.z));
          s += q.exponent * la;
          for (int j = 0; j < q.log_power; ++j) logs *= la - logz_[m];
        }
        return logs * vexp(s) * weight(lambda);
      };
      return angular(g, 16, st, floor);
    };
    auto singular = [&](Real t) {
      const Real lt = std::log(t);
      V v = power(lt, p.exponent + V(1));
      for (int j = 0; j < p.log_power; ++j) v *= (lt - logz_[l]);
      return v;
    };
    auto f_outer = [&](Real t) {
      const Real psi = plateau<Real>(2 * t / rho);
      if (psi == 0) return Estimate<Real, V>{};
      auto a = h(t);
      const V sv = singular(t) * psi;
      return Estimate<Real, V>{sv * a.value, std::abs(sv) * a.error};
    };
    auto f_inner = [&](Real t) {
      auto a = h(t);
      const V sv = singular(t);
      return Estimate<Real, V>{sv * a.value, std::abs(sv) * a.error};
    };
    Estimate<Real, V> total = radial(f_outer, rho / 2, rho, opt_.abs_tol / 64, st);
    Real hi = rho / 2;
    for (int level = 0; level < opt_.patch_depth; ++level) {
      const Real lo = hi / 2;
      auto e = radial(f_inner, lo, hi, panel_tol(), st);
      total.value += e.value;
      total.error += e.error;
      hi = lo;
    }
    // Leading term on (0, eps): H(0) * integral of t^{p+1} (log t - log|z|)^k.
    const Real eps = hi;
    const V q = p.exponent + V(2);
    const Real big_l = std::log(eps) - logz_[l];
    V series{};
    Real fact = 1;  // k!/(k-j)!
    V qpow = q;
    for (int j = 0; j <= p.log_power; ++j) {
      const Real sign = j % 2 == 0 ? 1 : -1;
      series += sign * fact * std::pow(big_l, p.log_power - j) / qpow;
      fact *= static_cast<Real>(p.log_power - j);
      qpow *= q;
    }
    const V tail_int = power(std::log(eps), q) * series;
    auto h0 = h(eps);
    const V tail = tail_int * h0.value;
    total.value += tail;
    total.error += std::abs(tail_int) * h0.error + std::abs(tail) * eps / rho;
    return total;
  }

  PlanarKernel<V> k_;
  PlanarOptions<Real> opt_;
  std::vector<Real> rho_, logz_;
  Real r_in_, r_out_, feature_ = 1;
  V log_rest0_;
  bool rest0_has_log_ = false;
  V w0_;
  mutable std::vector<Real> panel_lo_;
};

}  // namespace arrzeta::quad
