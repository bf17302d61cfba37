#include "liechannel/builder.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace liechannel {

namespace {

constexpr double pi = std::numbers::pi;

LegendreNet assemble(const char* who, const GridShape& g, std::vector<ContactElement> f) {
  try {
    return LegendreNet(make_grid(g), std::move(f));
  } catch (const GeometryError& e) {
    throw GeometryError(std::string(who) + ": Legendre condition violated by the supplied normals: " +
                        e.what());
  }
}

void check_profile(const char* who, const DiscreteCurve3D& c, std::span<const Vec3> normals) {
  if (c.points.size() < 2) throw GeometryError(std::string(who) + ": profile needs 2 or more points");
  if (normals.size() != c.points.size())
    throw GeometryError(std::string(who) + ": one normal per profile point required");
  c.validate();
  for (const auto& n : normals)
    if (std::abs(n.norm() - 1.0) > 1e-9) throw GeometryError(std::string(who) + ": normals must be unit");
}

struct Mirror {
  Vec3 nu;
  double d;
  Vec3 point(const Vec3& x) const { return x - 2.0 * (nu.dot(x) - d) * nu; }
  Vec3 dir(const Vec3& n) const { return n - 2.0 * nu.dot(n) * nu; }
};

// Unit vector from the circumcentre of (x0, x1, x2) to x0.
Vec3 osculating_normal(const Vec3& x0, const Vec3& x1, const Vec3& x2) {
  const Vec3 a = x1 - x0, b = x2 - x0;
  const Vec3 axb = a.cross(b);
  if (axb.norm() < 1e-12 * a.norm() * b.norm()) return a.unitOrthogonal();
  const Vec3 c = x0 + (b.squaredNorm() * axb.cross(a) + a.squaredNorm() * b.cross(axb)) /
                          (2.0 * axb.squaredNorm());
  return (x0 - c).normalized();
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v;
  do v = Vec3(g(rng), g(rng), g(rng));
  while (v.norm() < 1e-3);
  return v.normalized();
}

}  // namespace

std::vector<Vec3> transport_normals(std::span<const Vec3> points, const Vec3& n0) {
  std::vector<Vec3> out{n0.normalized()};
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const Vec3 u = (points[k + 1] - points[k]).normalized();
    const Vec3& n = out.back();
    out.push_back(n - 2.0 * n.dot(u) * u);
  }
  return out;
}

LegendreNet make_revolution(const DiscreteCurve3D& profile, std::span<const Vec3> normals, int m) {
  if (m < 3) throw GeometryError("make_revolution: m must be at least 3");
  check_profile("make_revolution", profile, normals);
  for (std::size_t b = 0; b < profile.points.size(); ++b) {
    const Vec3& x = profile.points[b];
    if (std::abs(x.y()) > 1e-12 || std::abs(normals[b].y()) > 1e-12)
      throw GeometryError("make_revolution: profile and normals must lie in the xz-plane");
    if (x.x() <= 1e-9) throw GeometryError("make_revolution: profile touches the axis");
  }
  const int n = static_cast<int>(profile.points.size());
  std::vector<ContactElement> f;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < m; ++a) {
      const Eigen::AngleAxisd rot(2 * pi * a / m, Vec3::UnitZ());
      f.push_back(contact_from_point_normal(rot * profile.points[b], rot * normals[b]));
    }
  return assemble("make_revolution", GridShape{m, n, true, profile.closed}, std::move(f));
}

LegendreNet make_cylinder(const DiscreteCurve3D& profile, std::span<const Vec3> normals,
                          std::span<const double> offsets) {
  check_profile("make_cylinder", profile, normals);
  if (offsets.size() < 2) throw GeometryError("make_cylinder: need 2 or more offsets");
  for (std::size_t b = 0; b < profile.points.size(); ++b)
    if (std::abs(profile.points[b].z()) > 1e-12 || std::abs(normals[b].z()) > 1e-12)
      throw GeometryError("make_cylinder: profile and normals must lie in the xy-plane");
  const int n = static_cast<int>(profile.points.size());
  const int m = static_cast<int>(offsets.size());
  std::vector<ContactElement> f;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < m; ++a)
      f.push_back(contact_from_point_normal(profile.points[b] + offsets[a] * Vec3::UnitZ(),
                                            normals[b]));
  return assemble("make_cylinder", GridShape{m, n, false, profile.closed}, std::move(f));
}

LegendreNet make_cone(const DiscreteCurve3D& profile, std::span<const Vec3> normals,
                      std::span<const double> scales) {
  check_profile("make_cone", profile, normals);
  if (scales.size() < 2) throw GeometryError("make_cone: need 2 or more scales");
  for (double s : scales)
    if (s <= 0) throw GeometryError("make_cone: scales must be positive");
  for (std::size_t b = 0; b < profile.points.size(); ++b) {
    if (std::abs(profile.points[b].norm() - 1.0) > 1e-9)
      throw GeometryError("make_cone: profile must lie on the unit sphere");
    if (std::abs(profile.points[b].dot(normals[b])) > 1e-9)
      throw GeometryError("make_cone: normals must be orthogonal to the profile points");
  }
  const int n = static_cast<int>(profile.points.size());
  const int m = static_cast<int>(scales.size());
  std::vector<ContactElement> f;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < m; ++a)
      f.push_back(contact_from_point_normal(scales[a] * profile.points[b], normals[b]));
  return assemble("make_cone", GridShape{m, n, false, profile.closed}, std::move(f));
}

LegendreNet make_dupin_torus(double R, double r, int m, int n) {
  if (!(R > r && r > 0)) throw GeometryError("make_dupin_torus: need R > r > 0");
  if (m < 3 || n < 3) throw GeometryError("make_dupin_torus: m and n must be at least 3");
  std::vector<ContactElement> f;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < m; ++a) {
      const double u = 2 * pi * a / m, v = 2 * pi * b / n;
      const Vec3 nrm(std::cos(v) * std::cos(u), std::cos(v) * std::sin(u), std::sin(v));
      f.push_back(contact_from_point_normal(Vec3(R * std::cos(u), R * std::sin(u), 0) + r * nrm, nrm));
    }
  return assemble("make_dupin_torus", GridShape{m, n, true, true}, std::move(f));
}

LegendreNet make_reflection_example(int kind, std::uint64_t seed) {
  if (kind < 1 || kind > 3) throw GeometryError("make_reflection_example: kind must be 1, 2 or 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Vec3> x, nrm;
  bool closed = true;
  const int steps = 5;
  if (kind == 1) {
    const int m = 8;
    const Vec3 q(0, 0, 0.5 + U(rng));
    for (int a = 0; a < m; ++a) {
      const double t = 2 * pi * (a + 0.3 * (U(rng) - 0.5)) / m;
      x.emplace_back(std::cos(t), std::sin(t), 0);
      nrm.push_back((x.back() - q).normalized());
    }
  } else if (kind == 2) {
    const int m = 6;
    for (int a = 0; a < m; ++a) {
      const double t = 2 * pi * (a + 0.2 * (U(rng) - 0.5)) / m;
      const double lat = (a % 2 ? 0.35 : -0.25) + 0.1 * U(rng);
      nrm.emplace_back(std::cos(lat) * std::cos(t), std::cos(lat) * std::sin(t), std::sin(lat));
      x.push_back(1.5 * nrm.back());
    }
  } else {
    closed = false;
    const int m = 8;
    for (int a = 0; a < m; ++a) {
      const double t = 1.6 * pi * (a + 0.3 * (U(rng) - 0.5)) / (m - 1);
      x.emplace_back(std::cos(t), std::sin(t), 0);
    }
    const Vec3 n0 = (x[0] + Vec3(0, 0.4, 0.3)).normalized();
    nrm = transport_normals(x, n0);
  }

  std::vector<Mirror> planes;
  const Vec3 common = random_unit(rng);
  std::vector<Vec3> cx = x;
  for (int s = 0; s < steps; ++s) {
    const Vec3 nu = kind == 3 ? common : random_unit(rng);
    double far = -1e300;
    for (const auto& p : cx) far = std::max(far, nu.dot(p));
    planes.push_back({nu, far + 0.3 + 0.5 * U(rng)});
    for (auto& p : cx) p = planes.back().point(p);
  }

  const int m = static_cast<int>(x.size());
  std::vector<ContactElement> f;
  std::vector<Vec3> px = x, pn = nrm;
  for (int b = 0; b <= steps; ++b) {
    for (int a = 0; a < m; ++a) f.push_back(contact_from_point_normal(px[a], pn[a]));
    if (b == steps) break;
    for (int a = 0; a < m; ++a) {
      px[a] = planes[b].point(px[a]);
      pn[a] = planes[b].dir(pn[a]);
    }
  }
  return assemble("make_reflection_example", GridShape{m, steps + 1, closed, false}, std::move(f));
}

ProfileWithNormals random_revolution_profile(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double a1 = 0.5 * U(rng), a2 = 0.3 * U(rng), w = 1.0 + 0.5 * U(rng);
  ProfileWithNormals p;
  for (int b = 0; b < n; ++b) {
    const double z = 0.4 * b + 0.05 * U(rng);
    p.curve.points.emplace_back(2.0 + a1 * std::sin(w * z) + a2 * std::cos(2 * z), 0.0, z);
  }
  const auto& x = p.curve.points;
  p.normals = transport_normals(x, osculating_normal(x[0], x[1], x[2]));
  return p;
}

ProfileWithNormals random_cylinder_profile(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double a1 = 0.6 * U(rng), w = 1.0 + 0.5 * U(rng);
  ProfileWithNormals p;
  for (int b = 0; b < n; ++b) {
    const double s = 0.4 * b + 0.05 * U(rng);
    p.curve.points.emplace_back(s, a1 * std::sin(w * s) + 0.2 * s * s, 0.0);
  }
  const auto& x = p.curve.points;
  p.normals = transport_normals(x, osculating_normal(x[0], x[1], x[2]));
  return p;
}

ProfileWithNormals random_cone_profile(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double h = 0.5 * U(rng), a1 = 0.3 * U(rng);
  ProfileWithNormals p;
  for (int b = 0; b < n; ++b) {
    const double phi = 0.3 * b + 0.04 * U(rng);
    p.curve.points.push_back(Vec3(std::cos(phi), std::sin(phi), h + a1 * std::sin(2 * phi)).normalized());
  }
  const auto& x = p.curve.points;
  const Vec3 n0 = osculating_normal(x[0], x[1], x[2]);
  p.normals = transport_normals(x, n0 - n0.dot(x[0]) * x[0]);
  return p;
}

}  // namespace liechannel
