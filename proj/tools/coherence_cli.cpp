#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include <CLI11.hpp>

#include "coherence/axioms.hpp"
#include "coherence/json_io.hpp"
#include "coherence/measures.hpp"

namespace {

using coherence::AuditSummary;
using coherence::AxiomReport;
using coherence::DensityMatrix;
using coherence::KrausChannel;
using coherence::MeasureId;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input_error = 2;

std::ostream& value_stream() {
  std::cout << std::fixed << std::setprecision(9);
  return std::cout;
}

DensityMatrix resolve_state(const std::string& spec) {
  if (spec == "paper-state") return coherence::paper_counterexample_state();
  return coherence::load_state_file(spec);
}

KrausChannel resolve_channel(const std::string& spec) {
  if (spec == "paper-channel") return coherence::paper_counterexample_channel();
  return coherence::load_channel_file(spec);
}

json report_to_json(const AxiomReport& r) {
  return json{{"condition", coherence::condition_name(r.condition)},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"margin", r.margin},
              {"tolerance", r.tolerance},
              {"passed", r.passed}};
}

int run_measure(const std::string& state_spec, const std::string& measure_name, bool as_json) {
  const DensityMatrix rho = resolve_state(state_spec);
  const MeasureId id = coherence::parse_measure(measure_name);

  double value = 0.0;
  std::string method = "closed_form";
  std::optional<DensityMatrix> argmin;
  switch (id) {
    case MeasureId::L1:
      value = coherence::c_l1(rho);
      break;
    case MeasureId::RelativeEntropy:
      value = coherence::c_relative_entropy(rho);
      break;
    case MeasureId::Trace: {
      auto r = coherence::c_trace(rho);
      value = r.value;
      method = coherence::method_name(r.method);
      argmin = std::move(r.argmin_state);
      break;
    }
    case MeasureId::Fidelity: {
      auto r = coherence::c_fidelity(rho);
      value = r.value;
      method = coherence::method_name(r.method);
      argmin = std::move(r.argmin_state);
      break;
    }
  }

  if (as_json) {
    json out{{"verb", "measure"}, {"measure", coherence::measure_name(id)}, {"value", value}, {"method", method}};
    if (argmin) out["argmin"] = coherence::state_to_json(*argmin);
    std::cout << out.dump(2) << '\n';
    return exit_ok;
  }
  value_stream() << coherence::measure_name(id) << " = " << value << "  (method: " << method << ")\n";
  if (argmin) {
    std::cout << "optimal incoherent state diagonal:";
    for (int i = 0; i < argmin->dim(); ++i) value_stream() << ' ' << (*argmin)(i, i).real();
    std::cout << '\n';
  }
  return exit_ok;
}

int run_check(const std::string& state_spec, const std::string& channel_spec, const std::string& measure_name,
              std::string condition, bool as_json) {
  const DensityMatrix rho = resolve_state(state_spec);
  const KrausChannel channel = resolve_channel(channel_spec);
  const MeasureId id = coherence::parse_measure(measure_name);

  AxiomReport report;
  if (condition == "c2a")
    report = coherence::check_c2a(id, rho, channel);
  else if (condition == "c2b")
    report = coherence::check_c2b(id, rho, channel);
  else
    throw std::invalid_argument("condition must be c2a or c2b, got '" + condition + "'");

  if (as_json) {
    json out = report_to_json(report);
    out["verb"] = "check";
    out["measure"] = coherence::measure_name(id);
    std::cout << out.dump(2) << '\n';
  } else {
    value_stream() << coherence::condition_name(report.condition) << " " << coherence::measure_name(id)
                   << ": lhs = " << report.lhs << "  rhs = " << report.rhs << "  margin = " << report.margin
                   << "  -> " << (report.passed ? "PASSED" : "VIOLATED") << '\n';
  }
  return report.passed ? exit_ok : exit_violation;
}

int run_counterexample(bool as_json) {
  const coherence::ViolationWitness w = coherence::reproduce_counterexample();
  const auto outcomes = coherence::subselect(w.channel, w.state);
  const double p1 = outcomes.at(0).probability;

  if (as_json) {
    json out = report_to_json(w.report);
    out["verb"] = "counterexample";
    out["measure"] = "fidelity";
    out["p1"] = p1;
    out["violation_found"] = !w.report.passed;
    out["state"] = coherence::state_to_json(w.state);
    out["channel"] = coherence::channel_to_json(w.channel);
    std::cout << out.dump(2) << '\n';
  } else {
    value_stream() << "C2b check, fidelity measure, amplitude-damping-like channel on rx=ry=1/2, rz=-sqrt(2)/2\n"
                   << "  C_F(rho)          = " << w.report.lhs << '\n'
                   << "  sum_n p_n C_F     = " << w.report.rhs << '\n'
                   << "  p1                = " << p1 << '\n'
                   << "  margin            = " << w.report.margin << '\n'
                   << "  C2b " << (!w.report.passed ? "VIOLATED (expected)" : "not violated (unexpected)") << '\n';
  }
  return !w.report.passed ? exit_ok : exit_violation;
}

int run_sweep(const std::string& out_file, int steps, bool as_json) {
  const double edge = std::sqrt(2.0) / 2.0;
  const auto rows = coherence::sweep_rz(-edge, edge, steps);

  std::ofstream out(out_file);
  if (!out) {
    std::cerr << "error: cannot write " << out_file << '\n';
    return exit_input_error;
  }
  coherence::write_sweep_csv(out, rows);
  if (!out.good()) {
    std::cerr << "error: write failed for " << out_file << '\n';
    return exit_input_error;
  }

  const double rz_star = coherence::find_intersection();
  if (as_json) {
    json j{{"verb", "sweep"},
           {"out", out_file},
           {"rows", rows.size()},
           {"intersection_rz", rz_star},
           {"c_f_rho", rows.front().c_f_rho}};
    std::cout << j.dump(2) << '\n';
  } else {
    value_stream() << "wrote " << rows.size() << " rows to " << out_file << '\n'
                   << "intersection rz* = " << rz_star << '\n';
  }
  return exit_ok;
}

int run_theorem(const std::string& cls, int samples, std::uint64_t seed, int grid, bool as_json) {
  coherence::QutritClass tag;
  if (cls == "x")
    tag = coherence::QutritClass::X;
  else if (cls == "y")
    tag = coherence::QutritClass::Y;
  else if (cls == "z")
    tag = coherence::QutritClass::Z;
  else
    throw std::invalid_argument("class must be x, y, or z, got '" + cls + "'");

  const auto summary = coherence::verify_class_theorem(tag, samples, seed, grid);
  const bool ok = summary.max_value_deviation < 1e-6 && summary.max_argmin_deviation < 1e-4 &&
                  summary.min_grid_margin >= -1e-10;

  if (as_json) {
    json j{{"verb", "theorem"},
           {"class", cls},
           {"samples", summary.samples},
           {"grid_points", grid},
           {"max_value_deviation", summary.max_value_deviation},
           {"max_argmin_deviation", summary.max_argmin_deviation},
           {"min_grid_margin", summary.min_grid_margin},
           {"passed", ok}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << std::scientific << std::setprecision(3) << "class " << cls << ", " << summary.samples
              << " samples: max value deviation " << summary.max_value_deviation << ", max argmin deviation "
              << summary.max_argmin_deviation << ", min grid margin " << summary.min_grid_margin << " -> "
              << (ok ? "PASSED" : "FAILED") << '\n';
  }
  return ok ? exit_ok : exit_violation;
}

json tally_to_json(const coherence::ConditionTally& t) {
  return json{{"passed", t.passed}, {"violations", t.violations}, {"worst_margin", t.worst_margin}};
}

int run_audit(const std::string& measure_name, int dim, int samples, std::uint64_t seed, bool as_json) {
  const MeasureId id = coherence::parse_measure(measure_name);
  const AuditSummary s = coherence::audit_measure(id, dim, samples, seed);

  if (as_json) {
    json j{{"verb", "audit"},
           {"measure", coherence::measure_name(id)},
           {"dim", dim},
           {"samples", samples},
           {"seed", seed},
           {"C1", tally_to_json(s.c1)},
           {"C2a", tally_to_json(s.c2a)},
           {"C2b", tally_to_json(s.c2b)},
           {"C3", tally_to_json(s.c3)},
           {"known_c2b_violations", s.known_c2b_violations},
           {"clean", s.clean()}};
    std::cout << j.dump(2) << '\n';
  } else {
    const auto line = [](const char* name, const coherence::ConditionTally& t) {
      std::cout << "  " << name << ": " << t.passed << " passed, " << t.violations << " violated, worst margin "
                << std::scientific << std::setprecision(3) << t.worst_margin << std::fixed << std::setprecision(9)
                << '\n';
    };
    std::cout << "audit " << coherence::measure_name(id) << " dim " << dim << " over " << samples << " samples:\n";
    line("C1 ", s.c1);
    line("C2a", s.c2a);
    line("C2b", s.c2b);
    line("C3 ", s.c3);
    if (s.known_c2b_violations > 0)
      std::cout << "  " << s.known_c2b_violations << " C2b violations are known, per the fidelity counterexample\n";
    std::cout << "  result: " << (s.clean() ? "clean" : "VIOLATIONS FOUND") << '\n';
  }
  return s.clean() ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence -- coherence measures, incoherent channels, and axiom checks for small density matrices"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit machine-readable JSON reports");

  std::string state_spec, channel_spec, measure_spec = "l1", condition = "c2b", out_file, cls = "x";
  int steps = 500, samples = 200, dim = 2, grid = 100;
  std::uint64_t seed = 42;

  auto* measure_cmd = app.add_subcommand("measure", "evaluate one coherence measure on a state");
  measure_cmd->add_option("--state", state_spec, "state JSON file, or the built-in 'paper-state'")->required();
  measure_cmd->add_option("--measure", measure_spec, "l1 | trace | fidelity | relent")->required();

  auto* check_cmd = app.add_subcommand("check", "check monotonicity condition C2a or C2b");
  check_cmd->add_option("--state", state_spec, "state JSON file, or 'paper-state'")->required();
  check_cmd->add_option("--channel", channel_spec, "channel JSON file, or 'paper-channel'")->required();
  check_cmd->add_option("--measure", measure_spec, "l1 | trace | fidelity | relent")->required();
  check_cmd->add_option("--condition", condition, "c2a | c2b")->required();

  auto* counter_cmd =
      app.add_subcommand("counterexample", "reproduce the fidelity C2b violation (exit 0 when the violation shows)");

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep rz and write the fidelity-coherence comparison CSV");
  sweep_cmd->add_option("--out", out_file, "output CSV path")->required();
  sweep_cmd->add_option("--steps", steps, "number of rows (rz values)")->check(CLI::Range(2, 10000000));

  auto* theorem_cmd = app.add_subcommand("theorem", "brute-force the optimal-incoherent-state theorem for a class");
  theorem_cmd->add_option("--class", cls, "x | y | z")->required();
  theorem_cmd->add_option("--samples", samples, "random class states to test")->check(CLI::PositiveNumber);
  theorem_cmd->add_option("--seed", seed, "sampling seed");
  theorem_cmd->add_option("--grid", grid, "simplex grid subdivisions")->check(CLI::Range(50, 100000));

  auto* audit_cmd = app.add_subcommand("audit", "randomized C1/C2a/C2b/C3 audit for one measure");
  audit_cmd->add_option("--measure", measure_spec, "l1 | trace | fidelity | relent")->required();
  audit_cmd->add_option("--dim", dim, "state dimension, 2 or 3")->check(CLI::Range(2, 3));
  audit_cmd->add_option("--samples", samples, "number of random samples")->check(CLI::PositiveNumber);
  audit_cmd->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input_error;
  }

  try {
    if (measure_cmd->parsed()) return run_measure(state_spec, measure_spec, as_json);
    if (check_cmd->parsed()) return run_check(state_spec, channel_spec, measure_spec, condition, as_json);
    if (counter_cmd->parsed()) return run_counterexample(as_json);
    if (sweep_cmd->parsed()) return run_sweep(out_file, steps, as_json);
    if (theorem_cmd->parsed()) return run_theorem(cls, samples, seed, grid, as_json);
    if (audit_cmd->parsed()) return run_audit(measure_spec, dim, samples, seed, as_json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}
