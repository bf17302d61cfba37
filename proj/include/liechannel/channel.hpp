#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liechannel/legendre.hpp"

namespace liechannel {

struct DiscreteCurve3D {
  std::vector<Vec3> points;
  bool closed = false;

  /// Throws if two consecutive vertices coincide.
  void validate() const;
};

/// sigma_{k+1}/sigma_1 of the Möbius point lifts (after centering and scaling
/// the points). Vanishes iff the points lie on a circle (k = 3) or a sphere
/// (k = 4), lines and planes included.
double lift_rank_defect(std::span<const Vec3> points, int k);

struct ChannelLine {
  CoordinateLine line;
  LieVec sphere = LieVec::Zero();  // constant curvature sphere, unit aux norm
  double constancy = 0.0;          // max projective deviation of consecutive spheres
  double envelope_residual = 0.0;  // max |(s, v)| over contact element generators
  // generating circle: plus = point-sphere 3-space, minus = its complement
  DupinCyclide circle;
  double circle_mismatch = 0.0;    // left vs right ribbon version
  double circle_residual = 0.0;    // vertices off the circle
  LieVec quer_sphere = LieVec::Zero();
};

struct ChannelRibbon {
  Ribbon ribbon;
  int left = -1, right = -1;  // indices of the bounding lines
  DupinCyclide cyclide;
  LieVec face_sphere = LieVec::Zero();
  LieVec face_quer_sphere = LieVec::Zero();
  double face_quer_residual = 0.0;
};

struct ChannelCertificate {
  Label direction = Label::Plus;
  std::vector<ChannelLine> lines;
  std::vector<ChannelRibbon> ribbons;
  // set when circles / face-spheres / quer-spheres could not be derived
  std::string derived_error;

  bool derived_ok() const { return derived_error.empty(); }
};

struct ChannelFailure {
  char check = 'a';  // 'a': constancy along a line, 'b': ribbon span
  int index = -1;    // line or ribbon index
  double value = 0.0;
  std::string message;
};

struct ChannelResult {
  std::optional<ChannelCertificate> certificate;
  std::optional<ChannelFailure> failure;

  bool ok() const { return certificate.has_value(); }
};

ChannelResult verify_channel(const LegendreNet& net, Label dir,
                             const Tolerances& tol = default_tolerances());

/// Generating circle per line from the adjacent ribbons' Lie cyclides via
/// y -> y + (y, p) s. Throws on a point-sphere curvature sphere or when the
/// two sides disagree.
std::vector<DupinCyclide> generating_circles(ChannelCertificate& cert, const LegendreNet& net,
                                             const Tolerances& tol = default_tolerances());
/// Sphere containing both bounding circles of each ribbon (unit Möbius vector).
std::vector<LieVec> face_spheres(ChannelCertificate& cert,
                                 const Tolerances& tol = default_tolerances());
std::vector<LieVec> quer_spheres(ChannelCertificate& cert,
                                 const Tolerances& tol = default_tolerances());
/// Sphere orthogonal to the face-sphere whose inversion swaps the bounding
/// circles and their vertices.
std::vector<LieVec> face_quer_spheres(ChannelCertificate& cert, const LegendreNet& net,
                                      const Tolerances& tol = default_tolerances());

struct DupinResult {
  bool ok = false;
  DupinCyclide cyclide;
  std::string message;
};
DupinResult is_dupin_cyclide(const LegendreNet& net, const Tolerances& tol = default_tolerances());

/// ((z1-z2)(z3-z4)) / ((z2-z3)(z4-z1)) in an orthonormal frame of the circle's
/// plane. Throws on coincident or non-concircular points.
double cross_ratio(const Vec3& x1, const Vec3& x2, const Vec3& x3, const Vec3& x4,
                   double tol = 1e-6);

struct CrossRatioReport {
  double spread = 0.0;  // max relative spread over quadruples
  int quadruples = 0;
};
/// Cross-ratios of consecutive vertex quadruples on every generating circle.
/// Needs a grid complex so vertex order along circles corresponds.
CrossRatioReport cross_ratio_constancy(const ChannelCertificate& cert, const LegendreNet& net);

bool is_ribaucour_pair(const DiscreteCurve3D& a, const DiscreteCurve3D& b,
                       const Tolerances& tol = default_tolerances());
bool is_multi_circular(const LegendreNet& net, Label dir,
                       const Tolerances& tol = default_tolerances());
/// Every coordinate quadrilateral of a grid net, of any span in both
/// directions, is circular.
bool is_multi_circular_net(const LegendreNet& net, const Tolerances& tol = default_tolerances());

/// Euclidean vertex positions along a coordinate line.
DiscreteCurve3D line_curve(const LegendreNet& net, const CoordinateLine& line);

}  // namespace liechannel
