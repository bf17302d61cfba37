#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "liechannel/builder.hpp"

namespace liechannel {

namespace {

constexpr double pi = std::numbers::pi;

const LieVec& p_vec() {
  static const LieVec p = SpaceForm{}.point_complex;
  return p;
}

// Lie sphere scaled so that (S, p) = -1.
LieVec lie_normalized(const LieVec& s) {
  const double sp = inner(s, p_vec());
  if (std::abs(sp) <= 1e-12 * s.norm()) throw GeometryError("sphere is a point sphere");
  return s / -sp;
}

// Point sphere scaled to e0 coefficient 1 where possible.
LieVec point_normalized(const LieVec& x) {
  const double u0 = x[basis::kOrigin];
  return std::abs(u0) > 1e-12 * x.norm() ? LieVec(x / u0) : LieVec(x.normalized());
}

Subspace with(const Subspace& s, const LieVec& v, const Tolerances& tol) {
  auto vs = s.vectors();
  vs.push_back(v);
  return Subspace::span(vs, tol);
}

struct CircleFrame {
  LieVec et, e1, e2;
  LieVec at(double theta) const { return et + std::cos(theta) * e1 + std::sin(theta) * e2; }
  double angle_of(const LieVec& x) const {
    return std::atan2(inner(x, e2), inner(x, e1)) + (inner(x, et) > 0 ? pi : 0.0);
  }
};

CircleFrame circle_frame(const Subspace& c, const Tolerances& tol) {
  const auto fr = gram_frame(c, tol);
  if (fr.spacelike.size() != 2 || fr.timelike.size() != 1)
    throw GeometryError("circle point space is not of signature (2,1)");
  return {fr.timelike[0], fr.spacelike[0], fr.spacelike[1]};
}

struct Propagated {
  LieVec y;
  double discriminant;
  double cross_check;
};

// Corresponding point on the next circle: double root of (Y, X^-) = 0 on Y
// in the next circle, X^- the transverse part of X in the cyclide.
Propagated propagate(const LieVec& x, const Subspace& dminus, const CircleFrame& next,
                     const LieVec& s_next, const Tolerances& tol) {
  const LieVec xm = project_onto(x, dminus, tol);
  const double A = inner(next.et, xm), B = inner(next.e1, xm), C = inner(next.e2, xm);
  const double R = std::hypot(B, C);
  if (R <= 1e-14 * xm.norm()) throw GeometryError("degenerate point propagation");
  const double scale = A * A + B * B + C * C;
  const double phi = std::atan2(C, B);
  // at a double root cos(theta - phi) = -sign(A); acos would lose half the digits
  const double theta = phi + (A > 0 ? pi : 0.0);
  const LieVec y = point_normalized(next.at(theta));
  const LieVec direct = xm + inner(xm, p_vec()) * s_next;
  return {y, std::abs(B * B + C * C - A * A) / scale, projective_distance(y, direct)};
}

// Circle point space of a Möbius sphere pair: orthocomplement of (a, b, p).
Subspace circle_of(const LieVec& a, const LieVec& b, const Tolerances& tol) {
  const Subspace c = orthocomplement(Subspace::span({a, b, p_vec()}, tol));
  if (c.dim() != 3 || !signature(c, tol).is(2, 1))
    throw GeometryError("degenerate pencil: spheres do not meet in a circle");
  return c;
}

ContactElement step(const ContactElement& f, const Vec3& x) {
  const LieVec X = lift_point(x);
  return ContactElement::from_spheres(X, f.member_orthogonal_to(X));
}

void check_pair(const DiscreteCurve3D& c1, const DiscreteCurve3D& c2, const ContactElement& f0,
                const Tolerances& tol) {
  c1.validate();
  c2.validate();
  if (c1.points.size() != c2.points.size() || c1.points.size() < 2)
    throw GeometryError("blend: curves need equal length of at least 2");
  if (c1.closed || c2.closed) throw GeometryError("blend: closed curves are not supported");
  if (!is_ribaucour_pair(c1, c2, tol)) throw GeometryError("blend: not a Ribaucour pair");
  if (!f0.contains(lift_point(c1.points[0]), 1e-9))
    throw GeometryError("blend: contact element does not contain the first vertex of c1");
}

struct Strip {
  LegendreNet net;
  double quad_defect = 0.0;
};

Strip propagate_strip(const DiscreteCurve3D& c1, const DiscreteCurve3D& c2,
                      const ContactElement& f0, std::size_t rows, const Tolerances& tol) {
  std::vector<ContactElement> f(2 * rows);
  f[0] = f0;
  f[1] = step(f0, c2.points[0]);
  double defect = 0.0;
  for (std::size_t b = 0; b + 1 < rows; ++b) {
    f[2 * (b + 1)] = step(f[2 * b], c1.points[b + 1]);
    f[2 * (b + 1) + 1] = step(f[2 * b + 1], c2.points[b + 1]);
    const auto other = step(f[2 * (b + 1)], c2.points[b + 1]);
    defect = std::max(defect, subspace_distance(other.plane(), f[2 * (b + 1) + 1].plane()));
  }
  if (defect > tol.residual)
    throw GeometryError("blend: inconsistent quad propagation (" + std::to_string(defect) + ")");
  return {LegendreNet(make_grid(2, static_cast<int>(rows), false), std::move(f), tol), defect};
}

}  // namespace

SphereCurveReport validate_sphere_curve(const SphereCurve& sc, const Tolerances& tol) {
  SphereCurveReport rep;
  const int n = static_cast<int>(sc.s.size());
  const int ne = n - (sc.closed ? 0 : 1);
  if (n < 2 || sc.edge_count() != ne) {
    rep.issues.push_back({"size", -1, 0.0,
                          "need at least 2 vertex spheres and " + std::to_string(ne) +
                              " edge spheres"});
    return rep;
  }
  auto unit = [&](const LieVec& v, int idx, const char* what) {
    const double r = std::max(std::abs(inner(v, v) - 1.0), std::abs(inner(v, p_vec())));
    if (r > tol.residual)
      rep.issues.push_back({"unit", idx, r, std::string(what) + " " + std::to_string(idx) +
                                                " is not a unit Möbius sphere vector"});
  };
  for (int j = 0; j < n; ++j) unit(sc.s[j], j, "vertex sphere");
  for (int e = 0; e < ne; ++e) unit(sc.sigma[e], e, "edge sphere");

  for (int j = 0; j < n; ++j) {
    const bool has_prev = sc.closed || j > 0;
    const bool has_next = sc.closed || j + 1 < n;
    if (!has_prev || !has_next) continue;
    const LieVec& a = sc.sigma[(j + ne - 1) % ne];
    const LieVec& b = sc.sigma[j % ne];
    const Subspace pencil = Subspace::span({a, b}, tol);
    if (pencil.dim() != 2 || !signature(pencil, tol).is(2, 0)) {
      rep.issues.push_back({"pencil", j, 1.0,
                            "edge spheres at vertex " + std::to_string(j) +
                                " do not form an elliptic pencil"});
      continue;
    }
    const double r = pencil.residual(sc.s[j]);
    rep.max_pencil_residual = std::max(rep.max_pencil_residual, r);
    if (r > tol.residual)
      rep.issues.push_back({"pencil", j, r,
                            "vertex sphere " + std::to_string(j) +
                                " is not in the pencil of its edge spheres"});
  }
  for (int e = 0; e < ne; ++e) {
    const LieVec& sg = sc.sigma[e];
    const double a = inner(sc.s[e], sg), b = inner(sc.s[(e + 1) % n], sg);
    const double r = std::abs(a * a - b * b);
    rep.max_angle_residual = std::max(rep.max_angle_residual, r);
    if (r > tol.residual)
      rep.issues.push_back({"angle", e, r,
                            "edge sphere " + std::to_string(e) +
                                " meets its vertex spheres at different angles"});
  }
  return rep;
}

SphereCurve sphere_curve_from_certificate(const ChannelCertificate& cert) {
  SphereCurve sc;
  for (const auto& l : cert.lines) sc.s.push_back(lie_normalized(l.sphere) - p_vec());
  sc.closed = cert.ribbons.size() == cert.lines.size();
  sc.sigma.resize(cert.ribbons.size());
  for (const auto& rb : cert.ribbons) {
    if (rb.left < 0 || rb.left >= static_cast<int>(sc.sigma.size()))
      throw GeometryError("certificate ribbons are not ordered along the lines");
    sc.sigma[rb.left] = rb.face_sphere;
  }
  return sc;
}

std::vector<LieVec> admissible_partner_spheres(const Subspace& ci, const LieVec& si,
                                               const Subspace& cj, const Tolerances& tol) {
  const Subspace both = intersect(orthocomplement(ci), orthocomplement(cj), tol.rank);
  if (both.dim() != 2) throw GeometryError("circles are not cospherical or coincide");
  const LieVec a = both.vector(0), b = both.vector(1);
  const LieVec w = a * inner(si, b) - b * inner(si, a);
  if (w.norm() <= tol.rank) throw GeometryError("sphere is orthogonal to the whole pencil");
  const Subspace q = intersect(orthocomplement(cj), orthocomplement(Subspace::span({w})), tol.rank);
  std::vector<LieVec> out;
  if (q.dim() != 2) return out;
  const auto fr = gram_frame(q, tol);
  if (fr.spacelike.size() == 1 && fr.timelike.size() == 1) {
    for (double sg : {1.0, -1.0}) out.push_back(fr.spacelike[0] + sg * fr.timelike[0]);
  } else if (!fr.null.empty()) {
    out.push_back(fr.null[0]);
  }
  for (auto& v : out) {
    const double sp = inner(v, p_vec());
    v = std::abs(sp) > 1e-12 * v.norm() ? LieVec(v / -sp) : LieVec(v.normalized());
  }
  return out;
}

BuildResult channel_from_sphere_curve(const SphereCurve& sc, const BuildOptions& opt,
                                      const Tolerances& tol) {
  const auto rep = validate_sphere_curve(sc, tol);
  if (!rep.ok()) throw GeometryError("invalid sphere curve: " + rep.issues.front().message);
  const int n = static_cast<int>(sc.s.size());
  const int ne = sc.edge_count();
  const int samples =
      opt.initial_points.empty() ? opt.samples : static_cast<int>(opt.initial_points.size());
  if (samples < 3) throw GeometryError("samples_per_circle must be at least 3");

  std::vector<Subspace> circles;
  for (int j = 0; j < n; ++j) circles.push_back(circle_of(sc.s[j], sc.sigma[j < ne ? j : ne - 1], tol));

  // oriented lifts and Lie cyclides per edge
  std::vector<LieVec> S{sc.s[0] + p_vec()};
  std::vector<double> sign{1.0};
  std::vector<Subspace> dminus;
  for (int e = 0; e < ne; ++e) {
    const int j = (e + 1) % n;
    const auto cand = admissible_partner_spheres(circles[e], S[e], circles[j], tol);
    if (cand.size() != 2)
      throw GeometryError("orientation search finds " + std::to_string(cand.size()) +
                          " candidates at edge " + std::to_string(e));
    double best[2];
    for (int k = 0; k < 2; ++k) {
      const LieVec lift = (k == 0 ? 1.0 : -1.0) * sc.s[j] + p_vec();
      best[k] = std::min(projective_distance(lift, cand[0]), projective_distance(lift, cand[1]));
    }
    const double thr = 1e-6;
    int pick = best[0] <= best[1] ? 0 : 1;
    if (best[0] <= thr && best[1] <= thr) pick = sign.back() > 0 ? 0 : 1;
    if (best[pick] > thr)
      throw GeometryError("edge " + std::to_string(e) +
                          ": vertex sphere matches neither admissible orientation");
    sign.push_back(pick == 0 ? 1.0 : -1.0);
    S.push_back(sign.back() * sc.s[j] + p_vec());
    const Subspace dm = intersect(with(circles[e], S[e], tol), with(circles[j], S.back(), tol), tol.rank);
    if (dm.dim() != 3 || !signature(dm, tol).is(2, 1))
      throw GeometryError("edge " + std::to_string(e) + ": no Lie cyclide through both circles");
    dminus.push_back(dm);
  }

  std::vector<CircleFrame> frames;
  for (const auto& c : circles) frames.push_back(circle_frame(c, tol));
  std::vector<std::vector<LieVec>> pts(1);
  if (!opt.initial_points.empty()) {
    for (const auto& x : opt.initial_points) {
      const LieVec X = lift_point(x);
      if (circles[0].residual(X) > 1e-7)
        throw GeometryError("initial point does not lie on the first circle");
      pts[0].push_back(X);
    }
  } else {
    for (int k = 0; k < samples; ++k)
      pts[0].push_back(point_normalized(frames[0].at(opt.phase + 2 * pi * k / samples)));
  }

  BuildResult out;
  for (int e = 0; e < ne; ++e) {
    const int j = (e + 1) % n;
    std::vector<LieVec> next;
    for (const auto& x : pts[e]) {
      const auto pr = propagate(x, dminus[e], frames[j], S[e + 1], tol);
      out.max_discriminant = std::max(out.max_discriminant, pr.discriminant);
      out.max_cross_check = std::max(out.max_cross_check, pr.cross_check);
      next.push_back(pr.y);
    }
    pts.push_back(std::move(next));
  }
  if (out.max_discriminant > 1e-7)
    throw GeometryError("double-root discriminant exceeds tolerance (" +
                        std::to_string(out.max_discriminant) + ")");

  int rows = static_cast<int>(pts.size());
  bool wrap = false;
  if (sc.closed) {
    for (int k = 0; k < samples; ++k)
      out.monodromy = std::max(out.monodromy, projective_distance(pts.back()[k], pts[0][k]));
    // orientation must also come back
    if (out.monodromy <= 1e-7 && projective_distance(S.back(), S.front()) <= 1e-7) {
      wrap = true;
      --rows;
    }
  }
  std::vector<ContactElement> f;
  for (int b = 0; b < rows; ++b)
    for (int a = 0; a < samples; ++a)
      f.push_back(ContactElement::from_spheres(pts[b][a], S[b], tol));
  out.net = LegendreNet(make_grid(GridShape{samples, rows, true, wrap}), std::move(f), tol);
  auto res = verify_channel(out.net, Label::Plus, tol);
  if (!res.ok()) throw GeometryError("built net is not channel: " + res.failure->message);
  out.certificate = std::move(*res.certificate);
  return out;
}

FaceCyclideFamily blend_first_family(const DiscreteCurve3D& c1, const DiscreteCurve3D& c2,
                                     const ContactElement& f0, const Tolerances& tol) {
  check_pair(c1, c2, f0, tol);
  const auto strip = propagate_strip(c1, c2, f0, 2, tol);
  return face_cyclide_family(strip.net, 0, tol);
}

BlendResult blend_channel(const DiscreteCurve3D& c1, const DiscreteCurve3D& c2,
                          const ContactElement& f0, double t0, int samples,
                          const Tolerances& tol) {
  check_pair(c1, c2, f0, tol);
  if (samples < 3) throw GeometryError("blend: samples must be at least 3");
  const std::size_t rows = c1.points.size();
  const auto strip = propagate_strip(c1, c2, f0, rows, tol);
  BlendResult out;
  out.max_quad_defect = strip.quad_defect;

  // '+' spheres between c1[b] and c2[b]
  std::vector<LieVec> S;
  for (std::size_t b = 0; b < rows; ++b) {
    const int e = strip.net.complex().edge_id(static_cast<int>(2 * b), static_cast<int>(2 * b + 1));
    S.push_back(lie_normalized(strip.net.sphere(e)));
  }
  auto phi = [&](const LieVec& y, std::size_t b) -> LieVec {
    return y + inner(y, p_vec()) * S[b];
  };
  auto image = [&](const Subspace& d, std::size_t b) {
    std::vector<LieVec> v;
    for (const auto& y : d.vectors()) v.push_back(phi(y, b));
    return Subspace::span(v, tol);
  };

  std::vector<DupinCyclide> cy{face_cyclide_family(strip.net, 0, tol).at(t0)};
  std::vector<Subspace> circles{image(cy[0].minus, 0)};
  for (std::size_t b = 0; b + 1 < rows; ++b) {
    circles.push_back(image(cy[b].minus, b + 1));
    if (b + 2 == rows) break;
    const auto fam = face_cyclide_family(strip.net, static_cast<int>(b + 1), tol);
    const Subspace normal = orthocomplement(circles.back());
    Eigen::Matrix<double, 3, 2> M;
    const LieVec pw1 = phi(fam.w1(), b + 1), pw2 = phi(fam.w2(), b + 1);
    for (int i = 0; i < 3; ++i) {
      M(i, 0) = inner(normal.vector(i), pw1);
      M(i, 1) = inner(normal.vector(i), pw2);
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(M, Eigen::ComputeFullV);
    const double res = svd.singularValues()[1] / std::max(1.0, svd.singularValues()[0]);
    out.max_continuation_residual = std::max(out.max_continuation_residual, res);
    if (res > 1e-7)
      throw GeometryError("blend: no continuation parameter at ribbon " + std::to_string(b + 1));
    const Eigen::Vector2d v = svd.matrixV().col(1);
    // minus part carries -sin t w1 + cos t w2
    cy.push_back(fam.at(std::atan2(-v[0], v[1])));
  }

  // sample the first circle through c1[0], c2[0] and the remaining arc
  const auto frame0 = circle_frame(circles[0], tol);
  const LieVec x1 = lift_point(c1.points[0]), x2 = lift_point(c2.points[0]);
  const double th1 = frame0.angle_of(x1), th2 = frame0.angle_of(x2);
  double delta = std::remainder(th2 - th1, 2 * pi);
  const double dir = delta >= 0 ? 1.0 : -1.0;
  const double rest = 2 * pi - std::abs(delta);
  std::vector<LieVec> row{x1, x2};
  for (int k = 1; k <= samples - 2; ++k)
    row.push_back(point_normalized(frame0.at(th2 + dir * rest * k / (samples - 1))));

  std::vector<ContactElement> f;
  for (std::size_t b = 0; b < rows; ++b) {
    if (b > 0) {
      const auto fr = circle_frame(circles[b], tol);
      std::vector<LieVec> next;
      for (const auto& x : row) next.push_back(propagate(x, cy[b - 1].minus, fr, S[b], tol).y);
      next[0] = lift_point(c1.points[b]);
      next[1] = lift_point(c2.points[b]);
      row = std::move(next);
    }
    for (const auto& x : row) f.push_back(ContactElement::from_spheres(x, S[b], tol));
  }
  out.net = LegendreNet(make_grid(GridShape{samples, static_cast<int>(rows), true, false}),
                        std::move(f), tol);
  auto res = verify_channel(out.net, Label::Plus, tol);
  if (!res.ok()) throw GeometryError("blended net is not channel: " + res.failure->message);
  out.certificate = std::move(*res.certificate);
  return out;
}

}  // namespace liechannel
