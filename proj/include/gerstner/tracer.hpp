#pragma once

#include <span>
#include <vector>

#include "gerstner/inversion.hpp"

namespace gerstner {

struct TrajectorySample {
  double t = 0;
  Vector2d position;
};

struct CircleFit {
  Vector2d center = Vector2d::Zero();
  double radius = 0;
};

/// Particle path integrated through the Eulerian velocity field, with the
/// circle and rotation rate inferred from the samples.
struct Trajectory {
  EulerianPointd start;
  double dt = 0;
  std::vector<TrajectorySample> samples;
  CircleFit fit;
  /// 2 pi over the mean angular rate about the fitted center.
  double inferred_period = 0;
  /// Unwrapped polar angle about the fitted center strictly decreases.
  bool clockwise = false;
  /// max |d_i - mean| / |mean| over consecutive angle increments d_i.
  double angular_nonuniformity = 0;
};

/// Algebraic least-squares circle through the points (Kasa fit).
CircleFit fit_circle(std::span<const TrajectorySample> samples);

/// Classical RK4 on dx/dt = eulerian_velocity(t, x) for n_steps steps of dt.
/// Requires 0 < dt <= T / 100 with T = 2 pi / (k c); throws DomainError if the
/// particle leaves the fluid.
Trajectory trace(const EulerianPointd& start, const WaveParametersd& params, double dt, int n_steps,
                 const InversionSettings& settings = {});

/// Largest distance between the integrated samples and the closed-form path of
/// the label found by inverting the start point.
double compare_to_analytic(const Trajectory& trajectory, const WaveParametersd& params,
                           const InversionSettings& settings = {});

/// Distance between the last and first samples.
double closure_error(const Trajectory& trajectory);

}  // namespace gerstner
