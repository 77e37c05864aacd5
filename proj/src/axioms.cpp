#include "coherence/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "coherence/seeding.hpp"

namespace coherence {

namespace {

constexpr double monotonicity_tol = 1e-8;  // separates solver noise from real violations
constexpr double c1_tol = 1e-9;

AxiomReport make_report(Condition c, double lhs, double rhs, double tolerance) {
  AxiomReport r;
  r.condition = c;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tolerance = tolerance;
  r.passed = r.margin >= -tolerance;
  return r;
}

void require_incoherent_channel(const KrausChannel& channel, const char* op) {
  const auto v = validate(channel);
  if (!v.complete)
    throw std::invalid_argument(std::string(op) + ": channel '" + channel.label +
                                "' fails completeness, |sum K^dagger K - I| = " + std::to_string(v.completeness_error));
  if (!v.incoherent)
    throw std::invalid_argument(std::string(op) + ": channel '" + channel.label +
                                "' fails incoherence (an operator has two nonzero entries in one column)");
}

double average_outcome_coherence(MeasureId measure, const KrausChannel& channel, const DensityMatrix& rho) {
  double avg = 0.0;
  for (const auto& out : subselect(channel, rho))
    if (out.state) avg += out.probability * evaluate(measure, *out.state);
  return avg;
}

DensityMatrix mix_states(std::span<const DensityMatrix> states, std::span<const double> weights) {
  ComplexMatrix acc = ComplexMatrix::zero(states.front().dim());
  for (std::size_t k = 0; k < states.size(); ++k) acc = acc + cplx(weights[k]) * states[k].matrix();
  for (int i = 0; i < acc.dim(); ++i) acc(i, i) = acc(i, i).real();
  return DensityMatrix::from_matrix(std::move(acc));
}

}  // namespace

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::C1:
      return "C1";
    case Condition::C2a:
      return "C2a";
    case Condition::C2b:
      return "C2b";
    default:
      return "C3";
  }
}

AxiomReport check_c1(MeasureId measure, int dim, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("check_c1: samples >= 1");
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto delta = random_diagonal_state(dim, sub_seed(seed, static_cast<std::uint64_t>(i)));
    worst = std::max(worst, evaluate(measure, delta));
  }
  return make_report(Condition::C1, 0.0, worst, c1_tol);
}

AxiomReport check_c2a(MeasureId measure, const DensityMatrix& rho, const KrausChannel& channel) {
  require_incoherent_channel(channel, "check_c2a");
  const double lhs = evaluate(measure, rho);
  const double rhs = evaluate(measure, apply(channel, rho));
  return make_report(Condition::C2a, lhs, rhs, monotonicity_tol);
}

AxiomReport check_c2b(MeasureId measure, const DensityMatrix& rho, const KrausChannel& channel) {
  require_incoherent_channel(channel, "check_c2b");
  const double lhs = evaluate(measure, rho);
  const double rhs = average_outcome_coherence(measure, channel, rho);
  return make_report(Condition::C2b, lhs, rhs, monotonicity_tol);
}

AxiomReport check_c3(MeasureId measure, std::span<const DensityMatrix> states, std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size())
    throw std::invalid_argument("check_c3: need equally many states and weights");
  const int dim = states.front().dim();
  double sum = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].dim() != dim) throw std::invalid_argument("check_c3: mixed state dimensions");
    if (weights[k] < 0.0) throw std::invalid_argument("check_c3: negative weight");
    sum += weights[k];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("check_c3: weights sum to " + std::to_string(sum) + ", not 1");

  double lhs = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) lhs += weights[k] * evaluate(measure, states[k]);
  const double rhs = evaluate(measure, mix_states(states, weights));
  return make_report(Condition::C3, lhs, rhs, monotonicity_tol);
}

DensityMatrix paper_counterexample_state() {
  return from_bloch({0.5, 0.5, -std::sqrt(2.0) / 2.0});
}

KrausChannel paper_counterexample_channel() {
  return amplitude_damping_like(1.0, 0.5, std::sqrt(3.0) / 2.0);
}

ViolationWitness reproduce_counterexample() {
  DensityMatrix rho = paper_counterexample_state();
  KrausChannel channel = paper_counterexample_channel();
  const AxiomReport report = check_c2b(MeasureId::Fidelity, rho, channel);
  return {std::move(rho), std::move(channel), MeasureId::Fidelity, report};
}

std::vector<SweepRow> sweep_rz(double rz_min, double rz_max, int steps) {
  const double bound = std::sqrt(2.0) / 2.0 + 1e-12;
  if (!(rz_min < rz_max) || rz_min < -bound || rz_max > bound)
    throw std::invalid_argument("sweep_rz: need -sqrt(2)/2 <= rz_min < rz_max <= sqrt(2)/2");
  if (steps < 2) throw std::invalid_argument("sweep_rz: steps >= 2");

  const KrausChannel channel = paper_counterexample_channel();
  std::vector<SweepRow> rows(static_cast<std::size_t>(steps));
  const double h = (rz_max - rz_min) / (steps - 1);
  for (int k = 0; k < steps; ++k) {
    const double rz = rz_min + k * h;
    const DensityMatrix rho = from_bloch({0.5, 0.5, rz});
    SweepRow row;
    row.rz = rz;
    row.c_f_rho = c_fidelity(rho).value;
    row.total_avg = 0.0;
    for (const auto& out : subselect(channel, rho)) {
      if (!out.state) continue;
      const double contribution = out.probability * c_fidelity(*out.state).value;
      if (out.outcome_index == 0) row.p1_cf_rho1 = contribution;
      row.total_avg += contribution;
    }
    rows[static_cast<std::size_t>(k)] = row;
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "rz,c_f_rho,p1_cf_rho1,total_avg\n";
  out << std::fixed << std::setprecision(9);
  for (const auto& r : rows) out << r.rz << ',' << r.c_f_rho << ',' << r.p1_cf_rho1 << ',' << r.total_avg << '\n';
}

double find_intersection() {
  const KrausChannel channel = paper_counterexample_channel();
  const auto total_avg = [&](double rz) {
    const DensityMatrix rho = from_bloch({0.5, 0.5, rz});
    double avg = 0.0;
    for (const auto& out : subselect(channel, rho))
      if (out.state) avg += out.probability * c_fidelity(*out.state).value;
    return avg;
  };
  const double target = c_fidelity(paper_counterexample_state()).value;

  double lo = -std::sqrt(2.0) / 2.0;
  double hi = -0.5;
  double flo = total_avg(lo) - target;
  double fhi = total_avg(hi) - target;
  if (flo * fhi > 0.0)
    throw std::runtime_error("find_intersection: no sign change on [-sqrt(2)/2, -0.5] (defect)");

  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = total_avg(mid) - target;
    if ((fmid <= 0.0) == (fhi <= 0.0)) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

TheoremSummary verify_class_theorem(QutritClass tag, int samples, std::uint64_t seed, int grid_points,
                                    ExecPolicy policy) {
  if (samples < 1) throw std::invalid_argument("verify_class_theorem: samples >= 1");
  if (grid_points < 50) throw std::invalid_argument("verify_class_theorem: grid_points >= 50");

  double max_value_dev = 0.0;
  double max_argmin_dev = 0.0;
  double min_grid_margin = std::numeric_limits<double>::infinity();

  const auto run_sample = [&](int i, double& value_dev, double& argmin_dev, double& grid_margin) {
    const QutritClassState s = random_qutrit_class(tag, sub_seed(seed, static_cast<std::uint64_t>(i)));
    const DensityMatrix rho = s.to_density();
    const double expected = 2.0 * std::abs(s.off_diagonal);

    DiagonalObjective objective(rho, DistanceKind::Trace);
    const GridBest grid = scan_simplex_grid(3, grid_points, ExecPolicy::Serial, objective);
    const GridBest refined = refine_simplex_min(3, grid.coords, grid.value, 1.5 / grid_points, objective);

    value_dev = std::abs(refined.value - expected);
    argmin_dev = 0.0;
    for (int k = 0; k < 3; ++k)
      argmin_dev += std::abs(refined.coords[static_cast<std::size_t>(k)] - s.diagonal[static_cast<std::size_t>(k)]);
    grid_margin = grid.value - expected;  // proof bound: >= 0 up to roundoff at every node
  };

  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic) reduction(max : max_value_dev, max_argmin_dev) \
    reduction(min : min_grid_margin)
    for (int i = 0; i < samples; ++i) {
      double vd, ad, gm;
      run_sample(i, vd, ad, gm);
      max_value_dev = std::max(max_value_dev, vd);
      max_argmin_dev = std::max(max_argmin_dev, ad);
      min_grid_margin = std::min(min_grid_margin, gm);
    }
  } else {
    for (int i = 0; i < samples; ++i) {
      double vd, ad, gm;
      run_sample(i, vd, ad, gm);
      max_value_dev = std::max(max_value_dev, vd);
      max_argmin_dev = std::max(max_argmin_dev, ad);
      min_grid_margin = std::min(min_grid_margin, gm);
    }
  }

  return {max_value_dev, max_argmin_dev, min_grid_margin, samples};
}

namespace {

struct SampleChecks {
  AxiomReport c1, c2a, c2b, c3;
};

SampleChecks audit_one(MeasureId measure, int dim, std::uint64_t seed) {
  const Ensemble ensemble = dim == 2 ? Ensemble::BlochBall : Ensemble::HilbertSchmidt;
  SampleChecks out;

  const DensityMatrix diag = random_diagonal_state(dim, splitmix64(seed ^ 0x11));
  out.c1 = make_report(Condition::C1, 0.0, evaluate(measure, diag), c1_tol);

  const DensityMatrix rho = random_state(dim, splitmix64(seed ^ 0x22), ensemble);
  const KrausChannel channel = random_incoherent_channel(dim, splitmix64(seed ^ 0x33));
  out.c2a = check_c2a(measure, rho, channel);
  out.c2b = check_c2b(measure, rho, channel);

  const DensityMatrix rho2 = random_state(dim, splitmix64(seed ^ 0x44), ensemble);
  std::mt19937_64 rng(splitmix64(seed ^ 0x55));
  const double w = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const DensityMatrix states[] = {rho, rho2};
  const double weights[] = {w, 1.0 - w};
  out.c3 = check_c3(measure, states, weights);
  return out;
}

void tally(ConditionTally& t, const AxiomReport& r) {
  if (r.passed)
    ++t.passed;
  else
    ++t.violations;
  t.worst_margin = std::min(t.worst_margin, std::min(r.margin, 0.0));
}

}  // namespace

AuditSummary audit_measure(MeasureId measure, int dim, int samples, std::uint64_t seed, ExecPolicy policy) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("audit_measure: dim must be 2 or 3");
  if (samples < 1) throw std::invalid_argument("audit_measure: samples >= 1");

  AuditSummary summary;
  summary.measure = measure;
  summary.dim = dim;
  summary.samples = samples;

  std::vector<SampleChecks> checks(static_cast<std::size_t>(samples),
                                   SampleChecks{});

  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < samples; ++i)
      checks[static_cast<std::size_t>(i)] = audit_one(measure, dim, sub_seed(seed, static_cast<std::uint64_t>(i)));
  } else {
    for (int i = 0; i < samples; ++i)
      checks[static_cast<std::size_t>(i)] = audit_one(measure, dim, sub_seed(seed, static_cast<std::uint64_t>(i)));
  }

  for (const auto& c : checks) {
    tally(summary.c1, c.c1);
    tally(summary.c2a, c.c2a);
    tally(summary.c2b, c.c2b);
    tally(summary.c3, c.c3);
    if (!c.c2b.passed && measure == MeasureId::Fidelity && dim == 2) ++summary.known_c2b_violations;
  }
  return summary;
}

}  // namespace coherence
