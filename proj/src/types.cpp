#include "bcnd/types.hpp"

#include <cmath>

namespace bcnd {

double reduce_angle(double q) {
  const double two_pi = 2.0 * M_PI;
  double r = std::remainder(q, two_pi);  // (-pi, pi], with -pi possible
  if (r <= -M_PI) r += two_pi;
  return r;
}

RVector reduce_angles(const RVector& q) {
  RVector out(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) out[i] = reduce_angle(q[i]);
  return out;
}

bool in_closed_chamber(double x, const RVector& p_hat, double slack) {
  const int n = static_cast<int>(p_hat.size());
  if (n == 0) return false;
  if (p_hat[0] > slack) return false;
  for (int k = 0; k + 1 < n; ++k)
    if (p_hat[k] - p_hat[k + 1] < std::abs(x) / 2 - slack) return false;
  return true;
}

double chamber_margin(double x, const RVector& p_hat) {
  const int n = static_cast<int>(p_hat.size());
  double m = -p_hat[0];
  for (int k = 0; k + 1 < n; ++k)
    m = std::min(m, p_hat[k] - p_hat[k + 1] - std::abs(x) / 2);
  return m;
}

void check_global_point(const GlobalPoint& gp) {
  const int n = gp.n();
  if (n < 1) throw DomainViolation("global point must have n >= 1 components");
  if (std::abs(gp.z[n - 1]) >= 1.0)
    throw DomainViolation("last component must lie in the open unit disk");
}

}  // namespace bcnd
