#include "spintrng/llg.hpp"

#include <cmath>

#include "spintrng/errors.hpp"

namespace spintrng {

double thermal_field_std(const MtjMaterialParams& mat, const Environment& env,
                         double dt) {
  if (!(dt > 0.0)) throw ConfigError("thermal_field_std: dt must be positive");
  using namespace constants;
  return std::sqrt(2.0 * mat.alpha * k_boltzmann * env.temperature /
                   (mu0 * gamma0 * mat.ms * mat.volume * dt));
}

Vec3 llg_step_midpoint(const Vec3& m, double current,
                       const MtjMaterialParams& mat, const Environment& env,
                       double t, double dt, const Vec3& thermal_field) {
  const double t_mid = t + 0.5 * dt;
  Vec3 next = m;
  bool converged = false;
  for (int it = 0; it < detail::fixed_point_max_iters; ++it) {
    const Vec3 mid = 0.5 * (m + next);
    const Vec3 h = effective_field(mid, mat, env, t_mid) + thermal_field;
    const Vec3 proposal = m + dt * llg_rhs(mid, h, current, mat);
    const Vec3 delta = proposal - next;
    next = proposal;
    if (std::fabs(delta.x) < detail::fixed_point_tol &&
        std::fabs(delta.y) < detail::fixed_point_tol &&
        std::fabs(delta.z) < detail::fixed_point_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError(
        "llg_step_midpoint: fixed-point iteration did not converge; reduce dt");
  }
  const double n = norm(next);
  if (std::fabs(n - 1.0) > detail::norm_drift_limit) {
    throw NumericalError("llg_step_midpoint: norm drift exceeded tolerance");
  }
  return {next.x / n, next.y / n, next.z / n};
}

}  // namespace spintrng
