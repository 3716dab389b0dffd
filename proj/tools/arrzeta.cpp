#include <cstdlib>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "arrzeta/commands.hpp"
#include "arrzeta/io.hpp"

namespace {

const std::map<std::string, std::string> kHelp{
    {"lattice", "intersection lattice (edges with codimensions)"},
    {"dense", "dense edges"},
    {"resolution", "canonical resolution numerics (nu, N) per divisor"},
    {"lct", "log canonical threshold"},
    {"candidates", "candidate poles of the zeta functions"},
    {"good-tuple", "check or find a good multiplicity tuple"},
    {"topzeta", "local topological zeta function (plane arrangements)"},
    {"bfun", "catalog b-function when a closed form applies"},
    {"residue", "residue of the archimedean zeta function at -2/d (plane arrangements)"},
    {"scan", "scan multiplicity tuples where -2/d cancels in the topological zeta function"},
    {"verify-c-constant", "vertex, sign and convexity checks of the counterterm constant"},
    {"verify-nd", "n/d-conjecture pipeline (combinatorial and numeric)"},
    {"normalize", "parse and re-emit an arrangement file"},
};

}  // namespace

int main(int argc, char** argv) {
  using arrzeta::CommandOptions;
  CLI::App app{"arrzeta: singularity invariants of central hyperplane arrangements"};
  app.require_subcommand(1);
  app.set_version_flag("--version", arrzeta::kToolVersion);

  CommandOptions opt;
  std::string out_path;
  std::string file, b, delta_schedule, slopes, s_min, s0, edge;
  double b1 = 0, d = 0;
  bool pretty = false;

  for (const auto& name : arrzeta::command_names()) {
    auto* sub = app.add_subcommand(name, kHelp.at(name));
    if (name == "verify-c-constant") sub->alias("verify-section4");
    sub->add_option("file", file, "arrangement file");
    sub->add_option("--b", b, "multiplicities (comma list)");
    sub->add_option("--tol", opt.tol, "target absolute tolerance for quadrature");
    sub->add_option("--delta-schedule", delta_schedule, "excision radii (comma list)");
    sub->add_option("--resolution", opt.resolution, "resolution model")
        ->check(CLI::IsMember({"edges", "dense"}));
    sub->add_option("--mode", opt.mode, "verify-nd mode")
        ->check(CLI::IsMember({"combinatorial", "numeric2d", "both"}));
    sub->add_option("--seed", opt.seed, "sampling seed (verify-c-constant)");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_flag("--pretty", pretty, "indent the JSON report");
    sub->add_option("--slopes", slopes, "line slopes (comma list of rationals)");
    sub->add_option("--b1", b1, "distinguished multiplicity (verify-c-constant)");
    sub->add_option("--d", d, "degree (verify-c-constant)");
    sub->add_option("--samples", opt.samples, "interior samples (verify-c-constant)");
    sub->add_option("--method", opt.method, "residue method")
        ->check(CLI::IsMember({"auto", "nd", "fit"}));
    sub->add_option("--kind", opt.kind, "candidate kind")
        ->check(CLI::IsMember({"archimedean", "motivic"}));
    sub->add_option("--beta-max", opt.beta_max, "largest shift for archimedean candidates");
    sub->add_option("--s-min", s_min, "lower cutoff for candidates (rational)");
    sub->add_option("--s0", s0, "report the pole order bound at this candidate (rational)");
    sub->add_option("--edge", edge, "edge as a comma list of hyperplane indices");
    sub->add_option("--r", opt.r, "number of lines (scan)");
    sub->add_option("--b-max", opt.b_max, "largest multiplicity (scan)");
  }

  CLI11_PARSE(app, argc, argv);

  const auto* sub = app.get_subcommands().front();
  opt.command = sub->get_name();
  auto set = [&](const char* flag, const std::string& v, std::optional<std::string>& dst) {
    if (sub->count(flag) > 0) dst = v;
  };
  set("file", file, opt.file);
  set("--b", b, opt.b);
  set("--delta-schedule", delta_schedule, opt.delta_schedule);
  set("--slopes", slopes, opt.slopes);
  set("--s-min", s_min, opt.s_min);
  set("--s0", s0, opt.s0);
  set("--edge", edge, opt.edge);
  if (sub->count("--b1") > 0) opt.b1 = b1;
  if (sub->count("--d") > 0) opt.d = d;

  try {
    opt.precision = arrzeta::precision_from_env();
  } catch (const std::exception& e) {
    std::cerr << "arrzeta: " << e.what() << "\n";
    return arrzeta::exit_error;
  }

  auto result = arrzeta::run_command(opt);
  std::string text = result.report.dump(pretty ? 2 : -1) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    try {
      arrzeta::write_file_atomic(out_path, text);
    } catch (const std::exception& e) {
      std::cerr << "arrzeta: " << e.what() << "\n";
      return arrzeta::exit_error;
    }
  }
  if (result.report.contains("error"))
    std::cerr << "arrzeta: " << result.report["error"]["message"].get<std::string>() << "\n";
  return result.exit_code;
}
