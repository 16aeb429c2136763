#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "gerstner/fields.hpp"

namespace gerstner {
namespace {

constexpr double kPi = std::numbers::pi;

// Independent root of k c^2 + 2 omega c - g on (0, hi) by bisection.
double bisect_speed(double k, double omega, double g, double hi = 100) {
  double lo = 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (k * mid * mid + 2 * omega * mid - g > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

WaveParametersd with(double k, double omega, double b0 = -0.1) {
  return WaveParametersd({.k = k, .omega = omega, .b0 = b0});
}

TEST(WaveParameters, RejectsInvalidConstants) {
  EXPECT_THROW(WaveParametersd({.k = 0}), ParameterError);
  EXPECT_THROW(WaveParametersd({.k = -1}), ParameterError);
  EXPECT_THROW(WaveParametersd({.omega = -1e-5}), ParameterError);
  EXPECT_THROW(WaveParametersd({.g = 0}), ParameterError);
  EXPECT_THROW(WaveParametersd({.rho = 0}), ParameterError);
  EXPECT_THROW(WaveParametersd({.b0 = 0.1}), ParameterError);
  EXPECT_THROW(WaveParametersd({.p0 = std::nan("")}), ParameterError);
  EXPECT_NO_THROW(WaveParametersd({.b0 = 0}));
}

TEST(WaveParameters, DefaultsAreEquatorialConstants) {
  const WaveParametersd p;
  EXPECT_EQ(p.omega(), 7.3e-5);
  EXPECT_EQ(p.g(), 9.8);
  EXPECT_EQ(p.b0(), -0.1);
  EXPECT_GT(p.speed(), 0);
}

TEST(LagrangianLabel, EnforcesSurfaceLabel) {
  const WaveParametersd p;
  EXPECT_NO_THROW(make_label(0.3, -0.1, p));
  EXPECT_THROW(make_label(0.3, -0.05, p), ParameterError);
}

TEST(WaveSpeed, ClassicalLimit) {
  EXPECT_NEAR(wave_speed(with(1, 0)), std::sqrt(9.8), 1e-15);
  EXPECT_NEAR(wave_speed(with(1, 0)), 3.1304951685, 1e-10);
}

TEST(WaveSpeed, MatchesBisectionOracle) {
  const double oracle = bisect_speed(0.5, 7.3e-5, 9.8);
  EXPECT_NEAR(oracle, 4.427042726643128, 1e-12);
  EXPECT_NEAR(wave_speed(with(0.5, 7.3e-5)), oracle, 1e-12);
  EXPECT_NEAR(wave_speed(with(0.5, 7.3e-5)), 4.42704, 1e-5);
}

TEST(WaveSpeed, DispersionResidualProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> k(0.01, 10), omega(0, 1e-3), g(1, 20);
  for (int i = 0; i < 500; ++i) {
    const WaveParametersd p({.k = k(rng), .omega = omega(rng), .g = g(rng)});
    EXPECT_LE(std::abs(dispersion_residual(p)), 1e-12 * p.g());
    EXPECT_NEAR(p.speed(), bisect_speed(p.k(), p.omega(), p.g(), 1e3), 1e-11 * p.speed());
  }
}

TEST(WaveSpeed, RotationSlowsTheWave) {
  EXPECT_LT(wave_speed(with(1, 1e-2)), wave_speed(with(1, 0)));
}

TEST(FlowMap, SpecialPhases) {
  const WaveParametersd p = with(1, 7.3e-5, 0);
  const Vector2d origin = flow_map(0.0, LagrangianLabeld{0, 0}, p);
  EXPECT_NEAR(origin.x(), 0, 1e-15);
  EXPECT_NEAR(origin.y(), 1, 1e-15);
  const Vector2d trough = flow_map(0.0, LagrangianLabeld{kPi, 0}, p);
  EXPECT_NEAR(trough.x(), kPi, 1e-15);
  EXPECT_NEAR(trough.y(), -1, 1e-15);
}

TEST(FlowMap, DeepParticlesStayAtTheirLabel) {
  const WaveParametersd p;
  const Vector2d deep = flow_map(1.3, LagrangianLabeld{0.7, -40}, p);
  EXPECT_NEAR(deep.x(), 0.7, 1e-16);
  EXPECT_NEAR(deep.y(), -40, 1e-14);
}

TEST(FlowMap, CircleAndPeriodicityProperties) {
  std::mt19937_64 rng(3);
  for (double k : {0.2, 1.0, 3.0}) {
    const WaveParametersd p = with(k, 7.3e-5, -0.1 / k);
    std::uniform_real_distribution<double> a(-10 / k, 10 / k), b(p.b0() - 4 / k, p.b0()), t(0, 5 * p.period());
    for (int i = 0; i < 200; ++i) {
      const LagrangianLabeld label{a(rng), b(rng)};
      const double time = t(rng);
      const Vector2d pos = flow_map(time, label, p);
      const double radius = std::exp(k * label.b) / k;
      EXPECT_NEAR((pos - Vector2d(label.a, label.b)).norm(), radius, 1e-12 * std::max(radius, 1.0));
      EXPECT_LE((flow_map(time + p.period(), label, p) - pos).norm(), 1e-10);
      const Vector2d shifted = flow_map(time, LagrangianLabeld{label.a + p.wavelength(), label.b}, p);
      EXPECT_LE((shifted - pos - Vector2d(p.wavelength(), 0)).norm(), 1e-10);
    }
  }
}

TEST(FlowMap, PhaseReductionKeepsLargeTimesAccurate) {
  const WaveParametersd p;
  const LagrangianLabeld label{0.4, -0.6};
  const double far = 1e6 * p.period();
  EXPECT_LE((flow_map(far, label, p) - flow_map(0.0, label, p)).norm(), 1e-8);
  EXPECT_LE(std::abs(phase(far, label, p)), kPi);
}

TEST(FlowVelocity, PhaseZeroAndSpeed) {
  const WaveParametersd p;
  const double c = p.speed();
  const double b = -0.7;
  // ka = kct at t = a / c
  const LagrangianLabeld label{1.1, b};
  const double t = label.a / c;
  const Vector2d v = flow_velocity(t, label, p);
  const Vector2d acc = flow_acceleration(t, label, p);
  EXPECT_NEAR(v.x(), c * std::exp(b), 1e-14);
  EXPECT_NEAR(v.y(), 0, 1e-14);
  EXPECT_NEAR(acc.x(), 0, 1e-13);
  EXPECT_NEAR(acc.y(), -p.k() * c * c * std::exp(b), 1e-13);
  for (double s : {0.0, 0.3, 1.7, 9.1}) {
    EXPECT_NEAR(flow_velocity(s, label, p).norm(), c * std::exp(b), 1e-14);
  }
}

TEST(FlowVelocity, MatchesCentralDifferencesOfFlowMap) {
  std::mt19937_64 rng(5);
  const WaveParametersd p;
  std::uniform_real_distribution<double> a(-6, 6), b(-3, -0.1), t(0, 4);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const LagrangianLabeld label{a(rng), b(rng)};
    const double s = t(rng);
    const Vector2d fd_v = (flow_map(s + h, label, p) - flow_map(s - h, label, p)) / (2 * h);
    const Vector2d fd_a = (flow_velocity(s + h, label, p) - flow_velocity(s - h, label, p)) / (2 * h);
    const Vector2d v = flow_velocity(s, label, p);
    const Vector2d acc = flow_acceleration(s, label, p);
    EXPECT_LE((fd_v - v).norm(), 1e-7 * v.norm());
    EXPECT_LE((fd_a - acc).norm(), 1e-7 * acc.norm());
  }
}

TEST(FlowVelocity, CentralDifferenceErrorIsSecondOrder) {
  const WaveParametersd p;
  const LagrangianLabeld label{0.37, -0.45};
  const double s = 0.83;
  auto error = [&](double h) {
    return ((flow_map(s + h, label, p) - flow_map(s - h, label, p)) / (2 * h) - flow_velocity(s, label, p)).norm();
  };
  const double ratio = error(1e-2) / error(5e-3);
  EXPECT_GT(ratio, 3.9);
  EXPECT_LT(ratio, 4.1);
}

TEST(Jacobian, DeterminantAndInverse) {
  const WaveParametersd p;
  const LagrangianLabeld label{0.2, -1};
  EXPECT_NEAR(jacobian(0.4, label, p).determinant(), 0.8646647167633873, 1e-13);
  EXPECT_NEAR(jacobian_determinant(label, p), 1 - std::exp(-2.0), 1e-15);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> a(-6, 6), b(p.b0() - 3, p.b0() - 0.01), t(0, 10);
  for (int i = 0; i < 100; ++i) {
    const LagrangianLabeld l{a(rng), b(rng)};
    const double s = t(rng);
    const Matrix2d j = jacobian(s, l, p);
    EXPECT_NEAR(j.determinant(), jacobian_determinant(l, p), 1e-13);
    EXPECT_LE((j * inverse_jacobian(s, l, p) - Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Jacobian, MatchesFiniteDifferencesInLabels) {
  const WaveParametersd p;
  const LagrangianLabeld l{0.9, -0.35};
  const double s = 0.21;
  const double h = 1e-6;
  Matrix2d fd;
  fd.col(0) = (flow_map(s, LagrangianLabeld{l.a + h, l.b}, p) - flow_map(s, LagrangianLabeld{l.a - h, l.b}, p)) / (2 * h);
  fd.col(1) = (flow_map(s, LagrangianLabeld{l.a, l.b + h}, p) - flow_map(s, LagrangianLabeld{l.a, l.b - h}, p)) / (2 * h);
  EXPECT_LE((fd - jacobian(s, l, p)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Jacobian, IdentityAtDepth) {
  const WaveParametersd p;
  EXPECT_LE((jacobian(2.0, LagrangianLabeld{1, -50}, p) - Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-20);
}

TEST(Jacobian, InverseIsSingularAtZeroLabel) {
  const WaveParametersd p = with(1, 7.3e-5, 0);
  EXPECT_THROW(inverse_jacobian(0.0, LagrangianLabeld{0, 0}, p), SingularityError);
  EXPECT_FALSE(kinematics(0.0, LagrangianLabeld{0, 0}, p).inverse_jacobian.has_value());
  EXPECT_TRUE(kinematics(0.0, LagrangianLabeld{0, -0.5}, p).inverse_jacobian.has_value());
}

// Label derivatives of the particle velocity: the second column of the
// mixed-derivative table belongs to z, as differentiation of (x_t, z_t) shows.
TEST(VelocityLabelGradient, MatchesFiniteDifferences) {
  const WaveParametersd p;
  const LagrangianLabeld l{-1.3, -0.6};
  const double s = 1.9;
  const double h = 1e-6;
  Matrix2d fd;
  fd.col(0) = (flow_velocity(s, LagrangianLabeld{l.a + h, l.b}, p) -
               flow_velocity(s, LagrangianLabeld{l.a - h, l.b}, p)) / (2 * h);
  fd.col(1) = (flow_velocity(s, LagrangianLabeld{l.a, l.b + h}, p) -
               flow_velocity(s, LagrangianLabeld{l.a, l.b - h}, p)) / (2 * h);
  EXPECT_LE((fd - velocity_label_gradient(s, l, p)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(VelocityGradient, ClosedFormIsDivergenceFreeWithLabelVorticity) {
  std::mt19937_64 rng(13);
  const WaveParametersd p;
  std::uniform_real_distribution<double> a(-6, 6), b(-3, -0.11), t(0, 4);
  for (int i = 0; i < 100; ++i) {
    const LagrangianLabeld l{a(rng), b(rng)};
    const Matrix2d grad = velocity_gradient(t(rng), l, p);
    const double scale = p.k() * p.speed() / -std::expm1(2 * p.k() * l.b);
    EXPECT_LE(std::abs(grad.trace()), 1e-13 * scale);
    EXPECT_NEAR(grad(0, 1) - grad(1, 0), vorticity(l.b, p), 1e-13 * scale);
  }
}

TEST(Pressure, SurfaceValueAndReducedForm) {
  const WaveParametersd p;
  EXPECT_DOUBLE_EQ(pressure_lagrangian(p.b0(), p), p.p0());
  const double k = p.k();
  for (double b : {-0.1, -0.5, -1.0, -3.0, -10.0}) {
    const double reduced = p.p0() + p.rho() * p.g() / (2 * k) * (std::exp(2 * k * b) - std::exp(2 * k * p.b0())) -
                           p.rho() * p.g() * (b - p.b0());
    EXPECT_NEAR(pressure_lagrangian(b, p), reduced, 1e-12 * reduced);
  }
  EXPECT_THROW(pressure_lagrangian(0.0, p), ParameterError);
}

TEST(Pressure, DepthDerivativeTendsToHydrostatic) {
  const WaveParametersd p;
  const double h = 1e-6;
  const double rho_g = p.rho() * p.g();
  for (double b : {-0.2, -0.8, -2.0, -6.0}) {
    const double fd = (pressure_lagrangian(b + h, p) - pressure_lagrangian(b - h, p)) / (2 * h);
    const double expected = rho_g * std::exp(2 * p.k() * b) - rho_g;
    EXPECT_NEAR(fd, expected, 1e-6 * std::abs(expected));
  }
  const double deep = (pressure_lagrangian(-20 + h, p) - pressure_lagrangian(-20 - h, p)) / (2 * h);
  EXPECT_NEAR(deep, -rho_g, 1e-6 * rho_g);
}

TEST(Vorticity, ClosedFormValues) {
  const WaveParametersd p;
  const double kc = p.k() * p.speed();
  EXPECT_NEAR(vorticity(-std::log(2.0) / (2 * p.k()), p), -2 * kc, 1e-13 * kc);
  EXPECT_NEAR(vorticity(-40.0, p), 0, 1e-30);
  EXPECT_THROW(vorticity(0.0, p), SingularityError);
}

TEST(Vorticity, NegativeAndDecreasingInDepthLabel) {
  const WaveParametersd p;
  double previous = 0;
  for (int i = 0; i < 50; ++i) {
    const double b = -6.0 + i * (6.0 - 0.01) / 49;  // increasing b
    const double gamma = vorticity(b, p);
    EXPECT_LT(gamma, 0);
    if (i > 0) EXPECT_LT(gamma, previous);
    previous = gamma;
  }
}

TEST(SurfaceSlope, KinematicIdentityHoldsAlgebraically) {
  const WaveParametersd p;
  const double c = p.speed();
  for (int i = 0; i < 100; ++i) {
    const double a = -3 + 0.06 * i;
    const double t = 0.013 * i;
    const Vector2d v = flow_velocity(t, LagrangianLabeld{a, p.b0()}, p);
    EXPECT_NEAR(v.y() - (v.x() - c) * surface_slope(t, a, p), 0, 1e-12 * c);
  }
}

TEST(ClassicalGerstner, OmegaZeroFieldsUseSqrtGOverK) {
  const WaveParametersd rotating = with(2, 7.3e-5);
  const WaveParametersd classical = with(2, 0);
  EXPECT_NEAR(classical.speed(), std::sqrt(9.8 / 2), 1e-13 * classical.speed());
  const LagrangianLabeld l{0.3, -0.4};
  const double c = classical.speed();
  const Vector2d v = flow_velocity(0.5, l, classical);
  const double theta = 2 * 0.3 - 2 * c * 0.5;
  EXPECT_NEAR(v.x(), c * std::exp(2 * -0.4) * std::cos(theta), 1e-14);
  EXPECT_LT(rotating.speed(), classical.speed());
}

TEST(ScalarTemplate, LongDoubleInstantiation) {
  const WaveParameters<long double> p(WaveConstants<long double>{});
  EXPECT_LE(std::abs(dispersion_residual(p)), 1e-15L * p.g());
  const Vector2<long double> pos = flow_map(0.0L, LagrangianLabel<long double>{0, -0.1L}, p);
  EXPECT_NEAR(static_cast<double>(pos.y()), -0.1 + std::exp(-0.1), 1e-15);
}

}  // namespace
}  // namespace gerstner
