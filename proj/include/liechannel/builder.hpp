#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liechannel/channel.hpp"

namespace liechannel {

/// Normals along a polygon compatible with the Legendre condition: each
/// normal is the mirror image of the previous one in the perpendicular
/// bisector of the edge.
std::vector<Vec3> transport_normals(std::span<const Vec3> points, const Vec3& n0);

/// Rotates a profile in the xz-plane about the z-axis. a (wrapped, '+') is the
/// rotation index, b the profile index.
LegendreNet make_revolution(const DiscreteCurve3D& profile, std::span<const Vec3> normals, int m);
/// Translates a profile in the xy-plane along z. a ('+', the rulings) is the
/// offset index, b the profile index.
LegendreNet make_cylinder(const DiscreteCurve3D& profile, std::span<const Vec3> normals,
                          std::span<const double> offsets);
/// Scales a profile on the unit sphere from the origin. a ('+', the rulings)
/// is the scale index, b the profile index. Normals must be orthogonal to the
/// profile points.
LegendreNet make_cone(const DiscreteCurve3D& profile, std::span<const Vec3> normals,
                      std::span<const double> scales);
/// Torus of revolution sampled on curvature lines, outward normals; u
/// (parallels, '+') and v (meridians, '-') both wrapped.
LegendreNet make_dupin_torus(double R, double r, int m, int n);

/// Nets obtained by reflecting a curve with normals in a sequence of planes.
/// kind 1: circle with concurrent normals, random planes.
/// kind 2: non-circular curve on a sphere with radial normals, random planes.
/// kind 3: circle with non-concurrent normals, parallel planes.
LegendreNet make_reflection_example(int kind, std::uint64_t seed = 1);

/// Random generator inputs used by tests and the CLI.
struct ProfileWithNormals {
  DiscreteCurve3D curve;
  std::vector<Vec3> normals;
};
ProfileWithNormals random_revolution_profile(std::uint64_t seed, int n);
ProfileWithNormals random_cylinder_profile(std::uint64_t seed, int n);
ProfileWithNormals random_cone_profile(std::uint64_t seed, int n);

// ---------------------------------------------------------------------------

/// Regular discrete sphere curve: unit Möbius vectors s on vertices and sigma
/// on edges (sigma[j] joins vertex j and j+1, cyclically when closed).
struct SphereCurve {
  std::vector<LieVec> s;
  std::vector<LieVec> sigma;
  bool closed = false;

  int edge_count() const { return static_cast<int>(sigma.size()); }
};

struct SphereCurveIssue {
  std::string kind;  // "unit", "pencil", "angle", "size"
  int index = -1;
  double residual = 0.0;
  std::string message;
};

struct SphereCurveReport {
  std::vector<SphereCurveIssue> issues;
  double max_pencil_residual = 0.0;
  double max_angle_residual = 0.0;
  bool ok() const { return issues.empty(); }
};

SphereCurveReport validate_sphere_curve(const SphereCurve& sc,
                                        const Tolerances& tol = default_tolerances());

/// Enveloped spheres and face-spheres of a channel certificate.
SphereCurve sphere_curve_from_certificate(const ChannelCertificate& cert);

/// Oriented spheres through circle cj forming a Dupin cyclide with circle ci
/// and sphere si as curvature data. Generically exactly two.
std::vector<LieVec> admissible_partner_spheres(const Subspace& ci, const LieVec& si,
                                               const Subspace& cj,
                                               const Tolerances& tol = default_tolerances());

struct BuildOptions {
  int samples = 16;
  double phase = 0.0;
  /// Explicit vertices on the first circle; overrides samples/phase.
  std::vector<Vec3> initial_points;
};

struct BuildResult {
  LegendreNet net;
  ChannelCertificate certificate;
  double max_discriminant = 0.0;  // relative, per propagated point
  double max_cross_check = 0.0;   // double root vs direct projection
  double monodromy = 0.0;         // closed curves only
};

BuildResult channel_from_sphere_curve(const SphereCurve& sc, const BuildOptions& opt = {},
                                      const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------

/// Face-cyclide family of the first face spanned by c1[0], c1[1], c2[1], c2[0]
/// after propagating f0.
FaceCyclideFamily blend_first_family(const DiscreteCurve3D& c1, const DiscreteCurve3D& c2,
                                     const ContactElement& f0,
                                     const Tolerances& tol = default_tolerances());

struct BlendResult {
  LegendreNet net;
  ChannelCertificate certificate;
  double max_quad_defect = 0.0;
  double max_continuation_residual = 0.0;
};

/// Channel net with c1, c2 as its first two '-'-lines (a = 0, 1). The
/// generating circles carry `samples` vertices.
BlendResult blend_channel(const DiscreteCurve3D& c1, const DiscreteCurve3D& c2,
                          const ContactElement& f0, double t0, int samples = 8,
                          const Tolerances& tol = default_tolerances());

}  // namespace liechannel
