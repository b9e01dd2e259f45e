#include "vkg/picard.hpp"

#include <algorithm>
#include <cmath>

namespace vkg {

namespace {

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double q_of(const IterateState& s) {
  double q = 0.0;
  for (double v : s.ux_norm) q = std::max(q, v);
  return q;
}

}  // namespace

IterateState initial_iterate(const CoupledProblem& problem) {
  const auto [steps, dt] = time_steps(problem.T, problem.dt);
  IterateState s;
  const PhaseGrid f0 = PhaseGrid::sample(problem.x_axis, problem.v_axis, problem.particles);
  f0.check_coverage(2, "initial particle data");
  FieldEngine engine(problem.x_axis, problem.field, dt, problem.T, problem.solver);
  const FieldState field0 = engine.initial();
  const double p0 = measure_support(f0).momentum;
  for (std::size_t n = 0; n <= steps; ++n) {
    s.times.push_back(static_cast<double>(n) * dt);
    s.f.push_back(f0);
    s.u.push_back(field0.u);
    s.ux.push_back(field0.ux);
    s.momentum.push_back(p0);
    s.ux_norm.push_back(sup_abs(field0.ux));
  }
  return s;
}

IterateState picard_iterate(const IterateState& prev, const CoupledProblem& problem) {
  const auto [steps, dt] = time_steps(problem.T, problem.dt);
  if (prev.times.size() != steps + 1) throw ConfigError("previous iterate has a different time grid");
  IterateState s;
  s.index = prev.index + 1;
  VlasovState vlasov(problem.particles, problem.x_axis, problem.v_axis);
  s.f.reserve(steps + 1);
  s.f.push_back(vlasov.f());
  s.times.push_back(0.0);
  double running = measure_support(vlasov.f()).momentum;
  s.momentum.push_back(running);

  // Linear transport in the frozen previous field.
  for (std::size_t n = 0; n < steps; ++n) {
    const double t0 = static_cast<double>(n) * dt;
    const double t1 = static_cast<double>(n + 1) * dt;
    GridForce force{&problem.x_axis, prev.ux[n], prev.ux[n + 1], t0, t1};
    try {
      vlasov.step(force, dt);
    } catch (const DomainCoverageError& e) {
      s.blow_up = true;
      s.blow_up_reason = e.what();
      break;
    }
    running = measure_support(vlasov.f(), running).momentum;
    s.f.push_back(vlasov.f());
    s.times.push_back(t1);
    s.momentum.push_back(running);
  }

  // Field with the original data and source -ρ⁽ⁿ⁾.
  FieldEngine engine(problem.x_axis, problem.field, dt, problem.T, problem.solver);
  FieldState field = engine.initial();
  s.u.push_back(field.u);
  s.ux.push_back(field.ux);
  s.ux_norm.push_back(sup_abs(field.ux));
  for (std::size_t n = 0; n + 1 < s.f.size(); ++n) {
    try {
      field = engine.advance(compute_rho(s.f[n]));
    } catch (const DomainCoverageError& e) {
      s.blow_up = true;
      s.blow_up_reason = e.what();
      break;
    }
    s.u.push_back(field.u);
    s.ux.push_back(field.ux);
    s.ux_norm.push_back(sup_abs(field.ux));
  }
  const std::size_t complete = std::min(s.f.size(), s.ux.size());
  s.f.resize(complete, s.f.front());
  s.times.resize(complete);
  s.momentum.resize(complete);
  s.u.resize(complete);
  s.ux.resize(complete);
  s.ux_norm.resize(complete);
  return s;
}

GapEntry cauchy_gap(const IterateState& a, const IterateState& b) {
  if (a.times != b.times) throw ConfigError("iterates have different time grids");
  GapEntry g;
  g.n = std::max(a.index, b.index);
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    if (!(a.f[k].x_axis() == b.f[k].x_axis()) || !(a.f[k].v_axis() == b.f[k].v_axis()))
      throw ConfigError("iterates live on different phase grids");
    g.ux_gap = std::max(g.ux_gap, sup_diff(a.ux[k], b.ux[k]));
    g.f_gap = std::max(g.f_gap, sup_diff(a.f[k].values(), b.f[k].values()));
  }
  g.q = std::max(q_of(a), q_of(b));
  return g;
}

bool ConvergenceReport::monotone_from(std::size_t from) const {
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i - 1].n >= from && entries[i].ux_gap > entries[i - 1].ux_gap) return false;
  return true;
}

PicardResult run_picard(const CoupledProblem& problem, std::size_t max_iterations, double rel_tol,
                        std::size_t min_iterations) {
  PicardResult out;
  out.report.relative_tolerance = rel_tol;
  IterateState prev = initial_iterate(problem);
  double q = q_of(prev);
  for (std::size_t n = 1; n <= max_iterations; ++n) {
    IterateState next = picard_iterate(prev, problem);
    if (next.blow_up) {
      out.report.blow_up = true;
      out.report.blow_up_reason = next.blow_up_reason;
      out.last = std::move(next);
      return out;
    }
    GapEntry e = cauchy_gap(next, prev);
    q = std::max(q, q_of(next));
    e.q = q;
    if (!out.report.entries.empty() && out.report.entries.back().ux_gap > 0.0)
      e.ratio = e.ux_gap / out.report.entries.back().ux_gap;
    out.report.entries.push_back(e);
    prev = std::move(next);
    const double g0 = out.report.initial_gap();
    if (e.ux_gap <= rel_tol * g0 || (g0 == 0.0 && n >= 2)) out.report.converged = true;
    if (out.report.converged && n >= min_iterations) break;
  }
  out.last = std::move(prev);
  return out;
}

}  // namespace vkg
