#include "gamow/cn_oracle.hpp"

#include <cmath>
#include <string>

namespace gamow {

namespace {

constexpr cplx kI{0.0, 1.0};

long long step_of(double t, double dt) {
  const double s = t / dt;
  const double rounded = std::round(s);
  if (std::abs(s - rounded) > 1e-9 * std::max(1.0, std::abs(s)))
    throw PreconditionViolation(
        "sample time " + std::to_string(t) + " is not an integer multiple of dt = " +
        std::to_string(dt) + "; snapping would jitter every observable by O(dt)");
  return static_cast<long long>(rounded);
}

}  // namespace

void validate_grid(const ShellModel& model, const Grid1D& grid) {
  if (!(grid.L > 0.0) || !(grid.h > 0.0) || !(grid.dt > 0.0))
    throw PreconditionViolation("grid lengths and steps must be positive");
  const double ratio = model.radius_R / grid.h;
  if (std::abs(ratio - std::round(ratio)) > 1e-9)
    throw PreconditionViolation("R/h must be an integer so the shell sits on a node");
  if (grid.dt > grid.h)
    throw PreconditionViolation("dt <= h keeps the Cayley phase error below the spatial one");
  if (grid.cap_width < 2.0 * model.radius_R)
    throw PreconditionViolation("absorbing layer thinner than 2R reflects");
  if (grid.L < 10.0 * model.radius_R)
    throw PreconditionViolation("box shorter than 10R contaminates the interior early");
  if (grid.cap_width >= grid.L)
    throw PreconditionViolation("absorbing layer must leave interior room");
  if (grid.cap_strength < 0.0)
    throw PreconditionViolation("cap strength must be >= 0");
}

std::vector<WaveField> propagate_cn(const ShellModel& model,
                                    const InitialState& psi0,
                                    const Grid1D& grid,
                                    const std::vector<double>& sample_times,
                                    double reflect_threshold) {
  validate_grid(model, grid);
  if (psi0.radius_R != model.radius_R)
    throw ModelMismatch("initial state radius differs from shell radius");
  if (sample_times.empty())
    throw PreconditionViolation("need at least one sample time");

  std::vector<long long> steps(sample_times.size());
  for (size_t i = 0; i < sample_times.size(); ++i) {
    if (sample_times[i] < 0.0) throw NegativeTime("sample times must be >= 0");
    steps[i] = step_of(sample_times[i], grid.dt);
    if (i > 0 && steps[i] <= steps[i - 1])
      throw PreconditionViolation("sample times must be strictly increasing");
  }
  if (steps.back() > 20'000'000)
    throw StabilityBudgetExceeded(std::to_string(steps.back()) +
                                  " steps requested");

  const int n = grid.n_interior();
  const int j_shell = static_cast<int>(std::round(model.radius_R / grid.h)) - 1;
  const double r0 = grid.L - grid.cap_width;

  // H = -d^2/dr^2 + (lambda/h) at the shell node - i s ((r-r0)/w)^4 outside r0.
  VecC diag(n), lower(n - 1), upper(n - 1);
  for (int j = 0; j < n; ++j) {
    const double r = grid.r_of(j);
    cplx d = 2.0 / (grid.h * grid.h);
    if (j == j_shell) d += model.lambda / grid.h;
    if (r > r0) {
      const double q = (r - r0) / grid.cap_width;
      d -= kI * grid.cap_strength * q * q * q * q;
    }
    diag[j] = d;
  }
  lower.setConstant(-1.0 / (grid.h * grid.h));
  upper.setConstant(-1.0 / (grid.h * grid.h));

  const cplx half_step = 0.5 * kI * grid.dt;
  const VecC a_diag = VecC::Ones(n) + half_step * diag;
  const VecC a_off = half_step * lower;
  const VecC b_diag = VecC::Ones(n) - half_step * diag;
  const VecC b_off = -half_step * lower;

  VecC psi(n);
  std::vector<double> r_nodes(n);
  for (int j = 0; j < n; ++j) {
    r_nodes[j] = grid.r_of(j);
    psi[j] = psi0(r_nodes[j]);
  }

  std::vector<WaveField> out;
  out.reserve(sample_times.size());
  const int j_edge =
      static_cast<int>(std::round((grid.L - 0.5 * model.radius_R) / grid.h)) - 1;

  auto take_sample = [&](size_t i) {
    double edge_max = 0.0;
    for (int j = std::max(j_edge, 0); j < n; ++j)
      edge_max = std::max(edge_max, std::abs(psi[j]));
    if (edge_max > reflect_threshold)
      throw ReflectionDetected("trailing-edge amplitude " +
                               std::to_string(edge_max) + " at t = " +
                               std::to_string(sample_times[i]));
    out.push_back(WaveField{sample_times[i], r_nodes, psi});
  };

  size_t next = 0;
  if (steps[0] == 0) take_sample(next++);
  VecC rhs(n);
  for (long long step = 1; next < steps.size(); ++step) {
    rhs[0] = b_diag[0] * psi[0] + b_off[0] * psi[1];
    for (int j = 1; j < n - 1; ++j)
      rhs[j] =
          b_off[j - 1] * psi[j - 1] + b_diag[j] * psi[j] + b_off[j] * psi[j + 1];
    rhs[n - 1] = b_off[n - 2] * psi[n - 2] + b_diag[n - 1] * psi[n - 1];
    psi = thomas_solve<cplx>(a_off, a_diag, a_off, std::move(rhs));
    rhs.resize(n);
    if (step == steps[next]) take_sample(next++);
  }
  return out;
}

std::vector<OracleSample> oracle_probabilities(
    const ShellModel& model, const InitialState& psi0, const Grid1D& grid,
    const std::vector<double>& sample_times, double reflect_threshold) {
  const std::vector<WaveField> fields =
      propagate_cn(model, psi0, grid, sample_times, reflect_threshold);
  const int j_shell = static_cast<int>(std::round(model.radius_R / grid.h)) - 1;
  std::vector<OracleSample> out;
  out.reserve(fields.size());
  for (const WaveField& f : fields) {
    OracleSample s;
    s.time = f.time;
    // Trapezoid over [0, R]: psi(0) = 0 by the Dirichlet wall, the shell node
    // r = R carries the half weight.
    double p = 0.0;
    cplx ov{};
    for (int j = 0; j <= j_shell; ++j) {
      const double wgt = (j == j_shell) ? 0.5 : 1.0;
      p += wgt * std::norm(f.psi[j]);
      ov += wgt * psi0(f.r[j]) * f.psi[j];
    }
    s.P = grid.h * p;
    s.S = grid.h * ov;
    double nrm = 0.0;
    for (Eigen::Index j = 0; j < f.psi.size(); ++j) nrm += std::norm(f.psi[j]);
    s.norm = grid.h * nrm;
    out.push_back(s);
  }
  return out;
}

}  // namespace gamow
