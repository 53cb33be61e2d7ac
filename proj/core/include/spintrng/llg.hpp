#pragma once

#include "spintrng/constants.hpp"
#include "spintrng/device.hpp"
#include "spintrng/field.hpp"
#include "spintrng/vec3.hpp"

// Single-device macrospin dynamics.
//
// The equation of motion is integrated in the Gilbert-equivalent explicit
// (Landau-Lifshitz) form,
//
//   dm/dt = -gamma0/(1+alpha^2) [ m x H  +  alpha m x (m x H)
//                                 + a_J(I) m x (m x p) ],
//
// with p = +x the fixed-layer direction and a_J = hbar P I / (2 e mu0 Ms V)
// in field units (A/m).  Positive current drives the free layer toward P
// (m.x = +1).  The spin torque enters as a damping-like term; the O(alpha)
// precession-like byproduct of the Gilbert-to-explicit conversion is dropped
// together with the field-like (secondary) torque.
//
// Thermal noise is a field h with per-axis std thermal_field_std(), held
// constant within a step and evaluated at the midpoint state, which realizes
// the Stratonovich interpretation.  The noise scale satisfies the
// fluctuation-dissipation balance sigma^2 = 2 alpha kB T/(mu0 gamma0 Ms V dt):
// the stationary covariance of the linearized dynamics then matches
// equipartition exactly, and the full nonlinear equilibrium is checked
// against the Boltzmann distribution in the test suite.
//
// The small functions live in the header: they sit inside the fixed-point
// loop of the coupled integrator and account for most of its flops.

namespace spintrng {

// Deterministic part of the effective field at time t: shape-anisotropy
// (demag) field -Ms*(Nx mx, Ny my, Nz mz) plus the external applied field.
inline Vec3 effective_field(const Vec3& m, const MtjMaterialParams& mat,
                            const Environment& env, double t) {
  const Vec3 h{-mat.ms * mat.demag.nx * m.x, -mat.ms * mat.demag.ny * m.y,
               -mat.ms * mat.demag.nz * m.z};
  return h + external_field_at(env.external_field, t);
}

// Per-axis standard deviation of the discrete thermal field for step dt.
double thermal_field_std(const MtjMaterialParams& mat, const Environment& env,
                         double dt);

// Spin-torque term a_J * m x (m x p); the integrator applies it inside the
// bracket above, so its net effect carries the same -gamma0/(1+alpha^2)
// prefactor as the damping term.
inline Vec3 slonczewski_torque(const Vec3& m, double current,
                               const MtjMaterialParams& mat) {
  using namespace constants;
  const double a_j = hbar * mat.polarization * current /
                     (2.0 * q_electron * mu0 * mat.ms * mat.volume);
  const Vec3 p{1.0, 0.0, 0.0};
  return a_j * cross(m, cross(m, p));
}

// Right-hand side of the explicit-form LLG given the total field (thermal
// sample included by the caller) and the instantaneous current.
inline Vec3 llg_rhs(const Vec3& m, const Vec3& h_total, double current,
                    const MtjMaterialParams& mat) {
  const double pref = -constants::gamma0 / (1.0 + mat.alpha * mat.alpha);
  const Vec3 mxh = cross(m, h_total);
  const Vec3 damping = cross(m, mxh);
  return pref *
         (mxh + mat.alpha * damping + slonczewski_torque(m, current, mat));
}

// One implicit-midpoint step: solves  m' = m + dt * f((m+m')/2, t+dt/2)  by
// fixed-point iteration (tolerance 1e-12, max 50 sweeps), then renormalizes.
// thermal_field must already be scaled by thermal_field_std.  Throws
// NumericalError if the iteration stalls (dt too large) or the
// pre-renormalization norm drifts by more than 1e-6.
Vec3 llg_step_midpoint(const Vec3& m, double current,
                       const MtjMaterialParams& mat, const Environment& env,
                       double t, double dt, const Vec3& thermal_field);

namespace detail {
inline constexpr double fixed_point_tol = 1e-12;
inline constexpr int fixed_point_max_iters = 50;
inline constexpr double norm_drift_limit = 1e-6;
}  // namespace detail

}  // namespace spintrng
