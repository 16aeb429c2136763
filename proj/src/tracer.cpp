#include "gerstner/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace gerstner {

CircleFit fit_circle(std::span<const TrajectorySample> samples) {
  if (samples.size() < 3) throw ParameterError("circle fit needs at least 3 samples");
  const auto n = static_cast<Eigen::Index>(samples.size());

  // Shift to the centroid so the normal equations stay well scaled.
  Vector2d centroid = Vector2d::Zero();
  for (const auto& s : samples) centroid += s.position;
  centroid /= static_cast<double>(n);

  // x^2 + z^2 = 2 cx x + 2 cz z + (r^2 - cx^2 - cz^2)
  Eigen::MatrixX3d design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector2d p = samples[static_cast<std::size_t>(i)].position - centroid;
    design.row(i) << 2 * p.x(), 2 * p.y(), 1;
    rhs(i) = p.squaredNorm();
  }
  const Eigen::Vector3d coeffs = design.colPivHouseholderQr().solve(rhs);
  CircleFit fit;
  fit.center = centroid + coeffs.head<2>();
  fit.radius = std::sqrt(std::max(0.0, coeffs(2) + coeffs.head<2>().squaredNorm()));
  return fit;
}

Trajectory trace(const EulerianPointd& start, const WaveParametersd& params, double dt, int n_steps,
                 const InversionSettings& settings) {
  if (!(dt > 0) || dt > 0.01 * params.period() * (1 + 1e-12)) {
    throw ParameterError("trace step dt must satisfy 0 < dt <= T/100");
  }
  if (n_steps < 2) throw ParameterError("trace needs at least 2 steps");
  if (!in_domain(start, params, settings)) throw DomainError("trace start point is not below the free surface");

  auto velocity = [&](double t, const Vector2d& p) {
    return eulerian_velocity({t, p.x(), p.y()}, params, settings);
  };

  Trajectory out;
  out.start = start;
  out.dt = dt;
  out.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
  Vector2d p(start.x, start.z);
  out.samples.push_back({start.t, p});
  for (int i = 0; i < n_steps; ++i) {
    // t from the step index, so sample times carry no accumulated drift.
    const double t = start.t + i * dt;
    const Vector2d k1 = velocity(t, p);
    const Vector2d k2 = velocity(t + dt / 2, p + dt / 2 * k1);
    const Vector2d k3 = velocity(t + dt / 2, p + dt / 2 * k2);
    const Vector2d k4 = velocity(t + dt, p + dt * k3);
    p += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    out.samples.push_back({start.t + (i + 1) * dt, p});
  }

  out.fit = fit_circle(out.samples);

  std::vector<double> angles;
  angles.reserve(out.samples.size());
  for (const auto& s : out.samples) {
    const Vector2d d = s.position - out.fit.center;
    double angle = std::atan2(d.y(), d.x());
    if (!angles.empty()) {
      const double prev = angles.back();
      angle = prev + std::remainder(angle - prev, 2 * std::numbers::pi);
    }
    angles.push_back(angle);
  }

  std::vector<double> increments;
  increments.reserve(angles.size() - 1);
  for (std::size_t i = 1; i < angles.size(); ++i) increments.push_back(angles[i] - angles[i - 1]);
  out.clockwise = std::all_of(increments.begin(), increments.end(), [](double d) { return d < 0; });

  const double mean = (angles.back() - angles.front()) / static_cast<double>(increments.size());
  for (double d : increments) {
    out.angular_nonuniformity = std::max(out.angular_nonuniformity, std::abs(d - mean) / std::abs(mean));
  }
  out.inferred_period = 2 * std::numbers::pi * dt / std::abs(mean);
  return out;
}

double compare_to_analytic(const Trajectory& trajectory, const WaveParametersd& params,
                           const InversionSettings& settings) {
  const LagrangianLabeld label = invert_map(trajectory.start, params, settings);
  double worst = 0;
  for (const auto& s : trajectory.samples) {
    worst = std::max(worst, (s.position - flow_map(s.t, label, params)).norm());
  }
  return worst;
}

double closure_error(const Trajectory& trajectory) {
  return (trajectory.samples.back().position - trajectory.samples.front().position).norm();
}

}  // namespace gerstner
