#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arrzeta/arrangement.hpp"
#include "arrzeta/resolution.hpp"

namespace arrzeta {

enum class Precision { double_precision, extended };

std::string to_string(Precision p);
Precision parse_precision(const std::string& s);
// Reads ARRZETA_PRECISION ("double" or "extended"); fallback when unset.
Precision precision_from_env(Precision fallback = Precision::double_precision);

// Lines f_i = x + a_i y with a_1 = 0; b1 is the multiplicity of f_1.
struct LineConfig {
  std::vector<std::complex<double>> slopes;
  double d = 0;
  double b1 = 0;

  void validate() const;
  std::size_t size() const { return slopes.size(); }
};

LineConfig line_config(std::vector<std::complex<double>> slopes, const std::vector<double>& b);

// Moves a line of maximal multiplicity to x and the others to x + a_i y.
// Returns the config and the multiplicity vector reordered to match.
std::pair<LineConfig, std::vector<double>> line_config_from_arrangement(const Arrangement& a,
                                                                        const Multiplicities& b);

struct QuadratureConfig {
  double target_abs_tol = 1e-6;
  std::vector<double> delta_schedule = default_delta_schedule();
  double outer_radius = 0;  // 0 means automatic
  bool tail_extrapolation = true;
  int max_refinements = 400;
  Precision precision = Precision::double_precision;
  unsigned threads = 1;

  static std::vector<double> default_delta_schedule();
  void validate() const;
};

struct QuadratureStats {
  long evaluations = 0;
  int radial_intervals = 0;
  int max_angular_points = 0;
  int angular_unconverged = 0;
  int patches = 0;
  bool converged = true;
};

struct DeltaSample {
  double delta = 0;
  double value = 0;  // integral outside delta plus counterterm
  double error = 0;
};

struct CConstantReport {
  double value = 0;
  double error = 0;
  double raw = 0;           // trace value at the smallest delta
  double extrapolated = 0;  // Richardson limit with measured rate
  double measured_rate = 0;
  double expected_rate = 0;  // 4 - 4 b1/d
  bool extrapolation_used = false;
  double continued = 0;  // origin-subtracted continuation, no cutoff
  double continued_error = 0;
  double last_pair_spread = 0;
  std::vector<DeltaSample> trace;
  QuadratureStats stats;
};

CConstantReport c_constant(const LineConfig& cfg, const std::vector<double>& b_prime,
                           const QuadratureConfig& q);

struct GradientReport {
  std::vector<double> values;
  std::vector<double> errors;
  bool near_boundary = false;
};

struct HessianReport {
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> errors;
  double asymmetry = 0;
  double min_eigenvalue = 0;
  double eigen_error = 0;  // Frobenius norm of the entry errors
  bool near_boundary = false;
};

GradientReport grad_c(const LineConfig& cfg, const std::vector<double>& b_prime,
                      const QuadratureConfig& q);
HessianReport hess_c(const LineConfig& cfg, const std::vector<double>& b_prime,
                     const QuadratureConfig& q);

struct ZetaValue {
  std::complex<double> value;
  double error = 0;
  QuadratureStats stats;
};

// Local zeta integral with the product plateau test function, for Re s > -lct.
ZetaValue direct_zeta(const LineConfig& cfg, const std::vector<double>& b, std::complex<double> s,
                      const QuadratureConfig& q);

// (s + 2/d) zeta(s), continued to Re s > max(-2/b1, -min 1/b_l) past -lct when b1 > d/2.
ZetaValue regular_part(const LineConfig& cfg, const std::vector<double>& b, double s,
                       const QuadratureConfig& q);

double log_canonical_threshold(const std::vector<double>& b);

enum class SignVerdict { positive, negative, order_two, inconclusive };
std::string to_string(SignVerdict v);

struct FitPoint {
  double s = 0;
  double value = 0;  // (s + 2/d) zeta(s)
  double error = 0;
};

struct ResidueReport {
  std::string method;  // "c-constant" or "fit"
  double c_value = 0;
  double residue = 0;
  double error_estimate = 0;
  unsigned order_bound = 0;
  SignVerdict sign_verdict = SignVerdict::inconclusive;
  std::vector<DeltaSample> delta_trace;
  std::vector<FitPoint> fit_grid;
  int fit_degree = 0;
  double fit_residual = 0;  // max residual relative to |residue|
  std::string note;
};

ResidueReport residue_nd(const LineConfig& cfg, const std::vector<double>& b,
                         const QuadratureConfig& q);
ResidueReport residue_fit(const LineConfig& cfg, const std::vector<double>& b,
                          const QuadratureConfig& q, int degree = 2);

struct SampleCheck {
  std::vector<double> b_prime;
  double c_value = 0;
  double c_error = 0;
  double min_eigenvalue = 0;
  double eigen_error = 0;
  double residue = 0;
  double residue_error = 0;
  bool negative = false;
  bool convex = false;
  bool residue_negative = false;
};

struct VertexCheck {
  std::vector<double> b_prime;
  double c_value = 0;
  double c_error = 0;
  bool vanishes = false;
};

struct CConstantCheckReport {
  double b1 = 0, d = 0;
  std::vector<VertexCheck> vertices;
  std::vector<SampleCheck> samples;
  bool all_pass = false;
};

CConstantCheckReport verify_c_constant(const LineConfig& cfg, double b1, double d, std::size_t samples,
                               const QuadratureConfig& q, std::uint64_t seed = 20240611);

}  // namespace arrzeta
