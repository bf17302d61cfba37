#include "liechannel/lie.hpp"

#include <cmath>
#include <cstdlib>

namespace liechannel {

namespace {

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("LIECHANNEL_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && value > 0.0) {
      tol.contact = value;
      tol.rank = value;
      tol.sig = value;
      tol.residual = value;
    }
  }
  return tol;
}

Tolerances& mutable_defaults() {
  static Tolerances tol = tolerances_from_env();
  return tol;
}

}  // namespace

const Tolerances& default_tolerances() { return mutable_defaults(); }
void set_default_tolerances(const Tolerances& tol) { mutable_defaults() = tol; }

LieVec basis::e(int i) {
  LieVec v = LieVec::Zero();
  v[i] = 1.0;
  return v;
}

const Eigen::Matrix<double, 6, 6>& gram() {
  static const Eigen::Matrix<double, 6, 6> g = [] {
    Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    m(basis::kOrigin, basis::kInfinity) = -1.0;
    m(basis::kInfinity, basis::kOrigin) = -1.0;
    m(basis::kTime, basis::kTime) = -1.0;
    return m;
  }();
  return g;
}

double inner(const LieVec& a, const LieVec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[4] - a[4] * b[3] - a[5] * b[5];
}

LieVec lift_sphere(const Vec3& center, double radius) {
  LieVec v;
  v << center, 1.0, 0.5 * (center.squaredNorm() - radius * radius), radius;
  return v;
}

LieVec lift_plane(const Vec3& normal, double offset) {
  LieVec v;
  v << normal, 0.0, offset, 1.0;
  return v;
}

LieVec lift_point(const Vec3& x) { return lift_sphere(x, 0.0); }

LieVec mobius_sphere(const Vec3& center, double radius) {
  if (radius == 0.0) throw GeometryError("mobius_sphere: zero radius");
  LieVec v;
  v << center, 1.0, 0.5 * (center.squaredNorm() - radius * radius), 0.0;
  return v / radius;
}

LieVec mobius_plane(const Vec3& normal, double offset) {
  LieVec v;
  v << normal, 0.0, offset, 0.0;
  return v;
}

bool is_null(const LieVec& v, const Tolerances& tol) {
  const double n2 = v.squaredNorm();
  return std::abs(inner(v, v)) <= tol.contact * n2;
}

SphereDescriptor unlift(const LieVec& eta, const Tolerances& tol) {
  const double scale = eta.norm();
  if (scale == 0.0 || !is_null(eta, tol)) throw GeometryError("not a Lie sphere");
  const LieVec u = eta / scale;
  const double u0 = u[basis::kOrigin];
  if (std::abs(u0) <= tol.rank) {
    const double rest = std::hypot(u.head<3>().norm(), u[basis::kTime]);
    if (rest <= tol.rank) return PointAtInfinity{};
    const double t = u[basis::kTime];
    Vec3 n = u.head<3>() / t;
    const double len = n.norm();
    return Plane{n / len, u[basis::kInfinity] / t / len};
  }
  const LieVec w = u / u0;
  const Vec3 c = w.head<3>();
  if (std::abs(u[basis::kTime]) <= tol.rank) return PointSphere{c};
  return Sphere{c, w[basis::kTime]};
}

Vec3 unlift_point(const LieVec& eta, const Tolerances& tol) {
  const auto d = unlift(eta, tol);
  if (const auto* p = std::get_if<PointSphere>(&d)) return p->x;
  throw GeometryError("not a finite point sphere");
}

SphereDescriptor unlift_mobius(const LieVec& sigma, const Tolerances& tol) {
  const double n2 = inner(sigma, sigma);
  if (n2 <= tol.sig * sigma.squaredNorm()) throw GeometryError("not a spacelike sphere vector");
  LieVec s = sigma / std::sqrt(n2);
  s[basis::kTime] = 0.0;
  return unlift(s + basis::e6(), tol);
}

bool in_oriented_contact(const LieVec& a, const LieVec& b, const Tolerances& tol) {
  if (!is_null(a, tol) || !is_null(b, tol)) throw GeometryError("not a Lie sphere");
  return std::abs(inner(a, b)) <= tol.contact * a.norm() * b.norm();
}

double projective_distance(const LieVec& a, const LieVec& b) {
  const LieVec ua = a.normalized();
  const LieVec ub = b.normalized();
  return (ua - ua.dot(ub) * ub).norm();
}

double projective_deviation(const LieVec& a, const LieVec& b) {
  return 1.0 - std::abs(a.normalized().dot(b.normalized()));
}

LieVec normalize_against(const LieVec& v, const LieVec& reference, double target) {
  const double s = inner(v, reference);
  if (std::abs(s) <= 1e-14 * v.norm() * reference.norm())
    throw GeometryError("cannot normalize: vector orthogonal to reference");
  return v * (target / s);
}

LieVec reflect(const LieVec& v, const LieVec& m) {
  return v - 2.0 * inner(v, m) / inner(m, m) * m;
}

}  // namespace liechannel
