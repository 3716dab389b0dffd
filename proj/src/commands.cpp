#include "arrzeta/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "arrzeta/bfunction.hpp"
#include "arrzeta/error.hpp"
#include "arrzeta/io.hpp"
#include "arrzeta/resolution.hpp"
#include "arrzeta/topzeta.hpp"

namespace arrzeta {

using nlohmann::json;

namespace {

const char* const kTestFunction =
    "test function phi(x, y) = chi(|x|) chi(|y|), chi = 1 on [0, 1], 0 on [2, inf), "
    "smooth step from exp(-1/t)";

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) throw PreconditionError("empty entry in list '" + s + "'");
    out.push_back(cur.substr(b, e - b + 1));
  }
  if (out.empty()) throw PreconditionError("empty list");
  return out;
}

json rational_json(const Rational& x) { return x.str(); }

json rationals_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json estimate(double value, double error) { return {{"value", value}, {"error", error}}; }

json edge_json(const Arrangement& a, const Edge& e) {
  json labels = json::array();
  for (auto i : e.hyperplanes)
    labels.push_back(i < a.labels().size() && !a.labels()[i].empty() ? a.labels()[i]
                                                                      : "H" + std::to_string(i));
  return {{"hyperplanes", e.hyperplanes}, {"codim", e.codim}, {"labels", labels}};
}

json arrangement_json(const Arrangement& a) {
  json hs = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json h = {{"coefficients", rationals_json(a.form(i))},
              {"multiplicity", a.multiplicities()[i]}};
    if (i < a.labels().size() && !a.labels()[i].empty()) h["label"] = a.labels()[i];
    hs.push_back(h);
  }
  return {{"dimension", a.dim()}, {"hyperplanes", hs}};
}

json hypotheses_json(const Arrangement& a) {
  auto c = classify(a);
  return {{"central", c.central}, {"essential", c.essential}, {"indecomposable", !c.decomposable}};
}

ResolutionKind resolution_kind(const std::string& s) {
  if (s == "edges" || s == "all-edges") return ResolutionKind::all_edges;
  if (s == "dense" || s == "dense-edges") return ResolutionKind::dense_edges;
  throw PreconditionError("unknown resolution '" + s + "' (expected edges or dense)");
}

VerifyMode verify_mode(const std::string& s) {
  if (s == "combinatorial") return VerifyMode::combinatorial;
  if (s == "numeric2d") return VerifyMode::numeric2d;
  if (s == "both") return VerifyMode::both;
  throw PreconditionError("unknown mode '" + s + "' (expected combinatorial, numeric2d or both)");
}

QuadratureConfig quadrature_config(const CommandOptions& o) {
  QuadratureConfig q;
  q.target_abs_tol = o.tol;
  if (o.delta_schedule) q.delta_schedule = parse_real_list(*o.delta_schedule);
  q.precision = o.precision;
  q.threads = std::max(1u, o.threads);
  q.validate();
  return q;
}

json quadrature_json(const QuadratureConfig& q) {
  return {{"target_abs_tol", q.target_abs_tol},
          {"delta_schedule", q.delta_schedule},
          {"outer_radius", q.outer_radius},
          {"tail_extrapolation", q.tail_extrapolation},
          {"max_refinements", q.max_refinements},
          {"precision", to_string(q.precision)},
          {"threads", q.threads}};
}

json slopes_json(const LineConfig& c) {
  json out = json::array();
  for (const auto& a : c.slopes) out.push_back({a.real(), a.imag()});
  return out;
}

// r lines through the origin with normals (1, 0), (1, 1), (1, -1), (1, 2), (1, -2), ...
LoadedArrangement default_lines(std::size_t r) {
  if (r < 1) throw PreconditionError("--b is empty");
  std::vector<RationalVector> forms{{Rational(1), Rational(0)}};
  for (long k = 1; forms.size() < r; ++k) {
    forms.push_back({Rational(1), Rational(k)});
    if (forms.size() < r) forms.push_back({Rational(1), Rational(-k)});
  }
  LoadedArrangement out{Arrangement(2, std::move(forms), std::vector<long>(r, 1)), {}};
  out.warnings.push_back("no arrangement file: using " + std::to_string(r) +
                         " generic lines with normals (1,0), (1,1), (1,-1), ...");
  return out;
}

struct Context {
  explicit Context(const CommandOptions& o) : opt(o) {}

  const CommandOptions& opt;
  json inputs = json::object();
  json results = json::object();
  json hypotheses = nullptr;
  json assumptions = json::array();
  json warnings = json::array();
  std::string status = "ok";
  int exit_code = exit_ok;
  std::optional<Arrangement> arrangement;

  const Arrangement& arr() {
    if (!arrangement) {
      if (!opt.file && !opt.b) throw PreconditionError("this command needs an arrangement file or --b");
      auto loaded = opt.file ? load_arrangement(*opt.file) : default_lines(parse_int_list(*opt.b).size());
      for (auto& w : loaded.warnings) warnings.push_back(w);
      arrangement = std::move(loaded.arrangement);
      if (opt.b) {
        auto b = parse_int_list(*opt.b);
        if (b.size() != arrangement->size())
          throw PreconditionError("--b has " + std::to_string(b.size()) + " entries for " +
                                  std::to_string(arrangement->size()) + " hyperplanes");
        *arrangement = arrangement->with_multiplicities(b);
      }
      inputs["arrangement"] = arrangement_json(*arrangement);
      inputs["b"] = arrangement->multiplicities();
    }
    return *arrangement;
  }

  void inconclusive(const std::string& why) {
    status = "inconclusive";
    exit_code = exit_inconclusive;
    results["inconclusive_reason"] = why;
  }
};

void cmd_lattice(Context& c) {
  const auto& a = c.arr();
  auto poset = build_edge_poset(a);
  json edges = json::array();
  std::map<std::size_t, std::size_t> by_codim;
  for (const auto& e : poset.edges()) {
    edges.push_back(edge_json(a, e));
    ++by_codim[e.codim];
  }
  json counts = json::object();
  for (auto [k, n] : by_codim) counts[std::to_string(k)] = n;
  c.results = {{"edges", edges}, {"edge_count", poset.size()}, {"count_by_codim", counts}};
  c.hypotheses = hypotheses_json(a);
}

void cmd_dense(Context& c) {
  const auto& a = c.arr();
  json edges = json::array();
  for (const auto& e : dense_edges(a)) edges.push_back(edge_json(a, e));
  c.results = {{"dense_edges", edges}, {"count", edges.size()}};
  c.hypotheses = hypotheses_json(a);
}

void cmd_resolution(Context& c) {
  const auto& a = c.arr();
  const auto kind = resolution_kind(c.opt.resolution);
  json data = json::array();
  for (const auto& r : resolution_data(a, kind)) {
    data.push_back({{"edge", edge_json(a, r.edge)},
                    {"nu", r.nu},
                    {"N", rational_json(r.p(a.multiplicities()))},
                    {"p_functional", rationals_json(r.p_functional)}});
  }
  c.results = {{"divisors", data}, {"count", data.size()}};
  c.hypotheses = hypotheses_json(a);
}

void cmd_lct(Context& c) {
  const auto& a = c.arr();
  const Rational l = lct(a, a.multiplicities());
  const Rational nd = Rational(static_cast<long>(a.dim())) / Rational(a.degree());
  c.results = {{"lct", rational_json(l)},
               {"n_over_d", rational_json(nd)},
               {"lct_equals_n_over_d", l == nd}};
  c.hypotheses = hypotheses_json(a);
}

json pole_bound_json(const Arrangement& a, const PoleOrderBound& p) {
  json w = json::array();
  for (const auto& e : p.witness) w.push_back(edge_json(a, e));
  return {{"bound", p.bound}, {"witness", w}, {"uses_intersection_assumption", p.uses_intersection_assumption}};
}

void cmd_candidates(Context& c) {
  const auto& a = c.arr();
  const auto kind = resolution_kind(c.opt.resolution);
  std::vector<CandidatePole> poles;
  if (c.opt.kind == "motivic") {
    poles = candidate_poles_motivic(a, a.multiplicities());
  } else if (c.opt.kind == "archimedean") {
    std::optional<Rational> s_min;
    if (c.opt.s_min) s_min = Rational::parse(*c.opt.s_min);
    poles = candidate_poles_archimedean(a, a.multiplicities(), c.opt.beta_max, s_min, kind);
  } else {
    throw PreconditionError("unknown candidate kind '" + c.opt.kind + "'");
  }
  json list = json::array();
  for (const auto& p : poles) {
    json src = json::array();
    for (const auto& s : p.sources) src.push_back({{"edge", edge_json(a, s.edge)}, {"beta", s.beta}});
    list.push_back({{"value", rational_json(p.value)}, {"order_bound", p.order_bound}, {"sources", src}});
  }
  c.results = {{"kind", c.opt.kind}, {"beta_max", c.opt.beta_max}, {"candidates", list}};
  if (c.opt.s0) {
    auto pb = pole_order_bound(a, a.multiplicities(), Rational::parse(*c.opt.s0), kind);
    c.results["pole_order"] = pole_bound_json(a, pb);
    c.results["pole_order"]["s0"] = *c.opt.s0;
  }
  if (a.dim() >= 3) c.assumptions.push_back(kIntersectionAssumption);
  c.hypotheses = hypotheses_json(a);
}

json margins_json(const Arrangement& a, const std::vector<EdgeMargin>& m) {
  json out = json::array();
  for (const auto& e : m) out.push_back({{"edge", edge_json(a, e.edge)}, {"margin", rational_json(e.margin)}});
  return out;
}

Edge edge_from_option(const Arrangement& a, const std::optional<std::string>& spec) {
  auto poset = build_edge_poset(a);
  if (!spec) return poset[poset.top()];
  std::vector<std::size_t> idx;
  for (long i : parse_int_list(*spec)) {
    if (i < 0 || static_cast<std::size_t>(i) >= a.size())
      throw PreconditionError("hyperplane index out of range in --edge");
    idx.push_back(static_cast<std::size_t>(i));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  auto f = poset.find(idx);
  if (!f) throw PreconditionError("--edge is not a saturated edge of the arrangement");
  return poset[*f];
}

void cmd_good_tuple(Context& c) {
  const auto& a = c.arr();
  const auto kind = resolution_kind(c.opt.resolution);
  c.hypotheses = hypotheses_json(a);
  const Edge w = edge_from_option(a, c.opt.edge);
  c.results["edge"] = edge_json(a, w);
  const bool at_origin = w.hyperplanes.size() == a.size();
  if (c.opt.b) {
    auto chk = is_good_tuple(a, a.multiplicities(), w, kind);
    c.results["good"] = chk.good;
    c.results["margins"] = margins_json(a, chk.margins);
    c.results["violations"] = margins_json(a, chk.violations);
    if (chk.good && at_origin) {
      const Rational l = lct(a, a.multiplicities());
      c.results["lct"] = rational_json(l);
      c.results["lct_equals_n_over_d"] =
          l == Rational(static_cast<long>(a.dim())) / Rational(a.degree());
    }
    return;
  }
  if (at_origin && (!c.hypotheses["essential"].get<bool>() || !c.hypotheses["indecomposable"].get<bool>())) {
    c.status = "hypotheses-not-met";
    c.exit_code = exit_hypotheses;
    c.results["message"] = std::string("hypotheses not met: ") +
                           (!c.hypotheses["essential"].get<bool>() ? "essential=false"
                                                                    : "indecomposable=false");
    return;
  }
  try {
    auto cert = find_good_tuple(a, kind, w);
    c.results["exists"] = true;
    c.results["tuple"] = cert.tuple;
    c.results["epsilon"] = rational_json(cert.epsilon);
    c.results["margins"] = margins_json(a, cert.margins);
    if (at_origin) {
      const Rational l = lct(a, cert.tuple);
      const long d = std::accumulate(cert.tuple.begin(), cert.tuple.end(), 0L);
      c.results["lct"] = rational_json(l);
      c.results["lct_equals_n_over_d"] = l == Rational(static_cast<long>(a.dim())) / Rational(d);
    }
  } catch (const NoGoodTupleError& e) {
    c.results["exists"] = false;
    c.results["message"] = e.what();
  }
}

void cmd_topzeta(Context& c) {
  const auto& a = c.arr();
  auto z = topzeta_local_dim2(a, a.multiplicities());
  json poles = json::array();
  for (const auto& p : ratfun_poles(z.value))
    poles.push_back({{"pole", rational_json(p.pole)},
                     {"order", p.order},
                     {"residue", p.residue ? json(p.residue->str()) : json(nullptr)}});
  json strata = json::array();
  for (const auto& t : z.strata_trace) {
    json ex = json::array();
    for (auto [n, nu] : t.exponents) ex.push_back({{"N", n}, {"nu", nu}});
    strata.push_back({{"label", t.label}, {"euler_characteristic", t.euler_characteristic}, {"exponents", ex}});
  }
  auto surv = nd_pole_survives(a, a.multiplicities());
  c.results = {{"value", z.value.str()},
               {"numerator", z.value.numerator().str()},
               {"denominator", z.value.denominator().str()},
               {"value_at_zero", rational_json(z.value(Rational(0)))},
               {"poles", poles},
               {"strata", strata},
               {"within_theorem_hypotheses", z.within_theorem_hypotheses},
               {"nd_pole", {{"survives", surv.survives},
                            {"order", surv.order},
                            {"residue", surv.residue ? json(surv.residue->str()) : json(nullptr)},
                            {"potential_order_two", surv.potential_order_two}}}};
  c.hypotheses = hypotheses_json(a);
}

void cmd_bfun(Context& c) {
  const auto& a = c.arr();
  auto bf = catalog_lookup(a, a.multiplicities());
  c.hypotheses = hypotheses_json(a);
  if (!bf) {
    c.results = {{"known", false}};
    return;
  }
  json roots = json::array();
  for (const auto& [r, m] : bf->roots) roots.push_back({{"root", rational_json(r)}, {"multiplicity", m}});
  const Rational nd = -Rational(static_cast<long>(a.dim())) / Rational(a.degree());
  c.results = {{"known", true},
               {"provenance", bf->provenance},
               {"roots", roots},
               {"degree", bf->degree()},
               {"has_minus_n_over_d", bf->has_root(nd)}};
}

void cmd_scan(Context& c) {
  c.inputs["r"] = c.opt.r;
  c.inputs["b_max"] = c.opt.b_max;
  auto hits = scan_cancellations(c.opt.r, c.opt.b_max, std::max(1u, c.opt.threads));
  c.results = {{"cancellations", hits}, {"count", hits.size()}};
}

// Line configuration from the file or from --slopes with --b.
std::pair<LineConfig, std::vector<double>> numeric_config(Context& c, bool need_b) {
  if (c.opt.file || (!c.opt.slopes && c.opt.b)) {
    const auto& a = c.arr();
    if (a.dim() != 2) throw PreconditionError("numeric commands need a plane arrangement (n = 2)");
    auto out = line_config_from_arrangement(a, a.multiplicities());
    c.inputs["line_config"] = {{"slopes", slopes_json(out.first)}, {"b", out.second}};
    return out;
  }
  if (!c.opt.slopes) throw PreconditionError("need an arrangement file or --slopes");
  std::vector<std::complex<double>> slopes;
  for (const auto& r : parse_rational_list(*c.opt.slopes)) slopes.emplace_back(r.to_double());
  std::vector<double> b;
  if (c.opt.b) {
    b = parse_real_list(*c.opt.b);
  } else if (need_b) {
    throw PreconditionError("--b is required with --slopes");
  } else {
    b.assign(slopes.size(), 1.0);
    b[0] = c.opt.b1.value_or(1.0);
    if (c.opt.d && slopes.size() > 1) {
      const double rest = (*c.opt.d - b[0]) / static_cast<double>(slopes.size() - 1);
      for (std::size_t i = 1; i < b.size(); ++i) b[i] = rest;
    }
  }
  auto cfg = line_config(slopes, b);
  c.inputs["line_config"] = {{"slopes", slopes_json(cfg)}, {"b", b}};
  return {cfg, b};
}

json residue_json(const ResidueReport& r) {
  json trace = json::array();
  for (const auto& t : r.delta_trace) trace.push_back({{"delta", t.delta}, {"value", t.value}, {"error", t.error}});
  json grid = json::array();
  for (const auto& g : r.fit_grid) grid.push_back({{"s", g.s}, {"value", g.value}, {"error", g.error}});
  json out = {{"method", r.method},
              {"residue", estimate(r.residue, r.error_estimate)},
              {"order_bound", r.order_bound},
              {"sign_verdict", to_string(r.sign_verdict)},
              {"delta_trace", trace}};
  if (r.method != "fit" && r.residue != 0)
    out["c_value"] = estimate(r.c_value, r.error_estimate * std::abs(r.c_value / r.residue));
  if (r.method == "fit")
    out["fit"] = {{"degree", r.fit_degree}, {"max_relative_residual", r.fit_residual}, {"grid", grid}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

ResidueReport residue_by_method(const LineConfig& cfg, const std::vector<double>& b,
                                const QuadratureConfig& q, const std::string& method) {
  std::string m = method;
  if (m == "auto") m = 2 * cfg.b1 > cfg.d ? "nd" : "fit";
  if (m == "nd") return residue_nd(cfg, b, q);
  if (m == "fit") return residue_fit(cfg, b, q);
  throw PreconditionError("unknown residue method '" + method + "' (expected auto, nd or fit)");
}

void cmd_residue(Context& c, const QuadratureConfig& q) {
  auto [cfg, b] = numeric_config(c, true);
  c.assumptions.push_back(kTestFunction);
  auto r = residue_by_method(cfg, b, q, c.opt.method);
  c.results = residue_json(r);
  c.results["pole"] = -2 / cfg.d;
  if (r.sign_verdict == SignVerdict::inconclusive) c.inconclusive("residue sign not resolved by the error bar");
}

void cmd_verify_c_constant(Context& c, const QuadratureConfig& q) {
  if (!c.opt.b1 || !c.opt.d) throw PreconditionError("verify-c-constant needs --b1 and --d");
  auto [cfg, b] = numeric_config(c, false);
  c.inputs["b1"] = *c.opt.b1;
  c.inputs["d"] = *c.opt.d;
  c.inputs["samples"] = c.opt.samples;
  auto rep = verify_c_constant(cfg, *c.opt.b1, *c.opt.d, c.opt.samples, q, c.opt.seed);
  json vertices = json::array(), samples = json::array();
  for (const auto& v : rep.vertices)
    vertices.push_back({{"b_prime", v.b_prime}, {"c", estimate(v.c_value, v.c_error)}, {"vanishes", v.vanishes}});
  for (const auto& s : rep.samples)
    samples.push_back({{"b_prime", s.b_prime},
                       {"c", estimate(s.c_value, s.c_error)},
                       {"min_hessian_eigenvalue", estimate(s.min_eigenvalue, s.eigen_error)},
                       {"residue", estimate(s.residue, s.residue_error)},
                       {"negative", s.negative},
                       {"convex", s.convex},
                       {"residue_negative", s.residue_negative}});
  c.results = {{"vertices", vertices}, {"samples", samples}, {"all_pass", rep.all_pass}};
  if (!rep.all_pass) c.inconclusive("some vertex or interior check failed");
}

void cmd_verify_nd(Context& c, const QuadratureConfig& q) {
  const auto& a = c.arr();
  const auto mode = verify_mode(c.opt.mode);
  const auto kind = resolution_kind(c.opt.resolution);
  c.hypotheses = hypotheses_json(a);
  const bool essential = c.hypotheses["essential"], indecomposable = c.hypotheses["indecomposable"];
  if (!essential || !indecomposable) {
    c.status = "hypotheses-not-met";
    c.exit_code = exit_hypotheses;
    c.results["message"] = std::string("hypotheses not met: ") +
                           (!essential ? "essential=false" : "indecomposable=false");
    return;
  }
  if (mode == VerifyMode::numeric2d && a.dim() != 2)
    throw PreconditionError("numeric2d mode needs n = 2");

  const auto& b = a.multiplicities();
  const long n = static_cast<long>(a.dim()), d = a.degree();
  const Rational s0 = -Rational(n) / Rational(d);
  c.results["target_root"] = rational_json(s0);
  bool holds = false;
  json reasons = json::array();

  if (mode != VerifyMode::numeric2d) {
    auto poset = build_edge_poset(a);
    auto chk = is_good_tuple(a, b, poset[poset.top()], kind);
    const Rational l = lct(a, b);
    json comb = {{"good_tuple", chk.good},
                 {"margins", margins_json(a, chk.margins)},
                 {"violations", margins_json(a, chk.violations)},
                 {"lct", rational_json(l)},
                 {"lct_equals_n_over_d", l == -s0}};
    if (chk.good) {
      comb["verdict"] = "n/d-conjecture holds for this b via the good-dense-edge case";
      holds = true;
      reasons.push_back("good tuple at the origin");
    } else {
      comb["verdict"] = "not covered by the good-dense-edge case";
    }
    c.results["combinatorial"] = comb;
  }

  if (mode != VerifyMode::combinatorial) {
    if (a.dim() != 2) {
      c.results["numeric2d"] = {{"skipped", "n >= 3"}};
    } else {
      c.assumptions.push_back(kTestFunction);
      auto [cfg, bd] = line_config_from_arrangement(a, b);
      c.inputs["line_config"] = {{"slopes", slopes_json(cfg)}, {"b", bd}};
      json num = json::object();
      const auto order = pole_order_bound(a, b, s0, ResolutionKind::all_edges);
      num["order_bound"] = order.bound;
      const bool half = std::any_of(b.begin(), b.end(), [&](long x) { return 2 * x == d; });
      std::string verdict = "inconclusive";
      if (half) {
        auto surv = nd_pole_survives(a, b);
        num["topological_pole_order"] = surv.order;
        verdict = surv.order == 2 && order.bound == 2 ? "pole order 2" : "inconclusive";
      } else {
        auto r = residue_by_method(cfg, bd, q, "auto");
        num["residue"] = residue_json(r);
        if (r.sign_verdict == SignVerdict::positive) verdict = "simple pole residue>0";
        if (r.sign_verdict == SignVerdict::negative) verdict = "simple pole residue<0";
      }
      num["verdict"] = verdict;
      if (verdict != "inconclusive" && s0 >= Rational(-1) && s0 < 0) {
        holds = true;
        reasons.push_back("-2/d is a pole of the archimedean zeta function in [-1, 0)");
      }
      c.results["numeric2d"] = num;
    }
  }

  if (auto bf = catalog_lookup(a, b))
    c.results["bfunction_catalog"] = {{"provenance", bf->provenance}, {"has_root", bf->has_root(s0)}};
  c.results["reasons"] = reasons;
  c.results["verdict"] = holds ? "holds" : "inconclusive";
  if (!holds) c.inconclusive("neither path established -n/d as a root");
}

void cmd_normalize(Context& c) {
  const auto& a = c.arr();
  c.results = {{"text", emit_arrangement(a)}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "lattice", "dense",   "resolution", "lct",          "candidates",      "good-tuple", "topzeta",
      "bfun",    "residue", "scan",       "verify-c-constant", "verify-nd", "normalize"};
  return names;
}

std::vector<long> parse_int_list(const std::string& s) {
  std::vector<long> out;
  for (const auto& t : split_list(s)) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw PreconditionError("not an integer: '" + t + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split_list(s)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) {
      try {
        v = Rational::parse(t).to_double();
        used = t.size();
      } catch (const std::exception&) {
        throw PreconditionError("not a number: '" + t + "'");
      }
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& t : split_list(s)) {
    try {
      out.push_back(Rational::parse(t));
    } catch (const std::exception&) {
      throw PreconditionError("not a rational: '" + t + "'");
    }
  }
  return out;
}

CommandOutput run_command(const CommandOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  Context c(opt);
  c.inputs["file"] = opt.file ? json(*opt.file) : json(nullptr);
  c.inputs["resolution"] = opt.resolution;
  c.inputs["mode"] = opt.mode;
  c.inputs["seed"] = opt.seed;
  json error = nullptr;
  try {
    c.inputs["resolution"] = to_string(resolution_kind(opt.resolution));
    const auto q = quadrature_config(opt);
    c.inputs["quadrature"] = quadrature_json(q);
    const auto& cmd = opt.command;
    if (cmd == "lattice") cmd_lattice(c);
    else if (cmd == "dense") cmd_dense(c);
    else if (cmd == "resolution") cmd_resolution(c);
    else if (cmd == "lct") cmd_lct(c);
    else if (cmd == "candidates") cmd_candidates(c);
    else if (cmd == "good-tuple") cmd_good_tuple(c);
    else if (cmd == "topzeta") cmd_topzeta(c);
    else if (cmd == "bfun") cmd_bfun(c);
    else if (cmd == "residue") cmd_residue(c, q);
    else if (cmd == "scan") cmd_scan(c);
    else if (cmd == "verify-c-constant") cmd_verify_c_constant(c, q);
    else if (cmd == "verify-nd") cmd_verify_nd(c, q);
    else if (cmd == "normalize") cmd_normalize(c);
    else throw PreconditionError("unknown command '" + cmd + "'");
  } catch (const ParseError& e) {
    error = {{"type", "parse"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
  } catch (const NumericalError& e) {
    json trace = json::array();
    for (auto [x, v] : e.trace()) trace.push_back({{"delta", x}, {"value", v}});
    error = {{"type", "numerical"}, {"message", e.what()}, {"trace", trace}};
  } catch (const PreconditionError& e) {
    error = {{"type", "precondition"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    error = {{"type", "error"}, {"message", e.what()}};
  }
  if (!error.is_null()) {
    const bool numerical = error["type"] == "numerical";
    c.status = numerical ? "inconclusive" : "error";
    c.exit_code = numerical ? exit_inconclusive : exit_error;
    c.results = json::object();
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json report = {{"schema", kReportSchema},
                 {"tool", {{"name", "arrzeta"}, {"version", kToolVersion}}},
                 {"command", opt.command},
                 {"inputs", c.inputs},
                 {"hypotheses", c.hypotheses},
                 {"results", c.results},
                 {"assumptions", c.assumptions},
                 {"warnings", c.warnings},
                 {"status", c.status},
                 {"exit_code", c.exit_code},
                 {"timing", {{"wall_seconds", wall}}}};
  if (!error.is_null()) report["error"] = error;
  return {report, c.exit_code};
}

}  // namespace arrzeta
