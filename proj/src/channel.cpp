#include "liechannel/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace liechannel {

namespace {

const LieVec& p_vec() {
  static const LieVec p = SpaceForm{}.point_complex;
  return p;
}

LieVec unit_spacelike(const LieVec& v, const char* what) {
  const double n2 = inner(v, v);
  if (n2 <= 1e-14 * v.squaredNorm()) throw GeometryError(std::string(what) + " is not spacelike");
  LieVec u = v / std::sqrt(n2);
  Eigen::Index i = 0;
  u.cwiseAbs().maxCoeff(&i);
  return u[i] < 0 ? LieVec(-u) : u;
}

Subspace span_of(std::initializer_list<const Subspace*> parts, std::vector<LieVec> extra,
                 const Tolerances& tol) {
  for (const auto* s : parts)
    for (const auto& v : s->vectors()) extra.push_back(v);
  return Subspace::span(extra, tol);
}

std::vector<int> line_of_vertex(const ChannelCertificate& cert, int n) {
  std::vector<int> out(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < static_cast<int>(cert.lines.size()); ++i)
    for (int v : cert.lines[i].line.vertices) out[v] = i;
  return out;
}

// Rung endpoints ordered (left line, right line).
std::pair<int, int> rung_ends(const QuadComplex& c, int e, const std::vector<int>& line_of,
                              int left) {
  const auto& ed = c.edges()[e];
  return line_of[ed.a] == left ? std::pair{ed.a, ed.b} : std::pair{ed.b, ed.a};
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

}  // namespace

void DiscreteCurve3D::validate() const {
  const std::size_t n = points.size();
  for (std::size_t k = 0; k + 1 < n + (closed ? 1 : 0); ++k) {
    const Vec3& a = points[k];
    const Vec3& b = points[(k + 1) % n];
    if ((a - b).norm() <= 1e-12 * (1.0 + a.norm()))
      throw GeometryError("consecutive curve vertices " + std::to_string(k) + " coincide");
  }
}

double lift_rank_defect(std::span<const Vec3> points, int k) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n <= k) return 0.0;
  Vec3 centre = Vec3::Zero();
  for (const auto& x : points) centre += x;
  centre /= static_cast<double>(n);
  double scale = 0.0;
  for (const auto& x : points) scale += (x - centre).squaredNorm();
  scale = std::sqrt(scale / static_cast<double>(n));
  if (scale == 0.0) return 0.0;
  Eigen::MatrixXd m(n, 5);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3 y = (points[i] - centre) / scale;
    m.row(i) << y.x(), y.y(), y.z(), 1.0, 0.5 * y.squaredNorm();
    m.row(i).normalize();
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  return k < sv.size() ? sv[k] / sv[0] : 0.0;
}

ChannelResult verify_channel(const LegendreNet& net, Label dir, const Tolerances& tol) {
  const QuadComplex& c = net.complex();
  ChannelResult res;
  ChannelCertificate cert;
  cert.direction = dir;

  const auto lines = coordinate_lines(c, dir);
  std::vector<int> line_of_edge(c.edges().size(), -1);
  for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
    for (int e : lines[i].edges) line_of_edge[e] = i;
    ChannelLine cl;
    cl.line = lines[i];
    const auto& es = lines[i].edges;
    for (std::size_t k = 1; k < es.size(); ++k)
      cl.constancy = std::max(cl.constancy, projective_deviation(net.sphere(es[k - 1]),
                                                                 net.sphere(es[k])));
    if (cl.constancy > tol.contact) {
      res.failure = ChannelFailure{'a', i, cl.constancy,
                                   std::string("curvature spheres along '") + to_string(dir) + "'-line " +
                                       std::to_string(i) + " are not constant (deviation " +
                                       fmt(cl.constancy) + ")"};
      return res;
    }
    LieVec acc = LieVec::Zero();
    const LieVec& ref = net.sphere(es.front());
    for (int e : es) acc += (ref.dot(net.sphere(e)) < 0 ? -1.0 : 1.0) * net.sphere(e);
    cl.sphere = acc.normalized();
    for (int v : lines[i].vertices)
      for (int g = 0; g < 2; ++g) {
        const LieVec& gv = net.element(v).generator(g);
        cl.envelope_residual =
            std::max(cl.envelope_residual, std::abs(inner(cl.sphere, gv)) / gv.norm());
      }
    cert.lines.push_back(std::move(cl));
  }

  const auto ribbons = coordinate_ribbons(c, dir);
  for (int r = 0; r < static_cast<int>(ribbons.size()); ++r) {
    ChannelRibbon cr;
    cr.ribbon = ribbons[r];
    const auto fe = c.face_edges(ribbons[r].faces.front());
    const int le = dir == Label::Plus ? fe[3] : fe[0];
    const int re = dir == Label::Plus ? fe[1] : fe[2];
    cr.left = le >= 0 ? line_of_edge[le] : -1;
    cr.right = re >= 0 ? line_of_edge[re] : -1;
    std::vector<LieVec> opp;
    for (int e : ribbons[r].rungs)
      if (e >= 0) opp.push_back(net.sphere(e));
    const Subspace span = Subspace::span(opp, tol);
    const auto sig = signature(span, tol);
    const auto fail = [&](const std::string& why) {
      res.failure = ChannelFailure{'b', r, static_cast<double>(span.dim()),
                                   std::string("'") + to_string(dir) + "'-ribbon " + std::to_string(r) +
                                       ": " + why};
    };
    if (ribbons[r].faces.size() == 1 && span.dim() == 2) {
      try {
        cr.cyclide = face_cyclide_family(net, ribbons[r].faces.front(), tol).at(0.0);
      } catch (const GeometryError& e) {
        fail(e.what());
        return res;
      }
    } else if (span.dim() != 3 || !sig.is(2, 1)) {
      std::ostringstream why;
      why << "opposite curvature spheres span dimension " << span.dim() << " with signature ("
          << sig.n_plus << "," << sig.n_minus << "," << sig.n_null << "), expected 3 and (2,1)";
      fail(why.str());
      return res;
    } else {
      const Subspace comp = orthocomplement(span);
      cr.cyclide = dir == Label::Plus ? DupinCyclide{comp, span} : DupinCyclide{span, comp};
    }
    cert.ribbons.push_back(std::move(cr));
  }

  try {
    generating_circles(cert, net, tol);
    face_spheres(cert, tol);
    quer_spheres(cert, tol);
    face_quer_spheres(cert, net, tol);
  } catch (const GeometryError& e) {
    cert.derived_error = e.what();
  }
  res.certificate = std::move(cert);
  return res;
}

std::vector<DupinCyclide> generating_circles(ChannelCertificate& cert, const LegendreNet& net,
                                             const Tolerances& tol) {
  const LieVec& p = p_vec();
  std::vector<DupinCyclide> out;
  for (int i = 0; i < static_cast<int>(cert.lines.size()); ++i) {
    auto& cl = cert.lines[i];
    const double sp = inner(cl.sphere, p);
    if (std::abs(sp) <= tol.rank * cl.sphere.norm())
      throw GeometryError("line " + std::to_string(i) +
                          ": curvature sphere is a point sphere, no admissible projection");
    const LieVec s = cl.sphere / -sp;
    std::vector<Subspace> versions;
    for (const auto& rb : cert.ribbons) {
      if (rb.left != i && rb.right != i) continue;
      const Subspace& transverse =
          cert.direction == Label::Plus ? rb.cyclide.minus : rb.cyclide.plus;
      std::vector<LieVec> img;
      for (const auto& y : transverse.vectors()) img.push_back(y + inner(y, p) * s);
      versions.push_back(Subspace::span(img, tol));
    }
    if (versions.empty()) throw GeometryError("line " + std::to_string(i) + " bounds no ribbon");
    cl.circle_mismatch = 0.0;
    for (std::size_t k = 1; k < versions.size(); ++k)
      cl.circle_mismatch = std::max(cl.circle_mismatch, subspace_distance(versions[0], versions[k]));
    if (cl.circle_mismatch > tol.residual)
      throw GeometryError("line " + std::to_string(i) +
                          ": generating circles from adjacent ribbons disagree (" +
                          fmt(cl.circle_mismatch) + ")");
    cl.circle = {versions[0], orthocomplement(versions[0])};
    cl.circle_residual = 0.0;
    for (int v : cl.line.vertices)
      cl.circle_residual =
          std::max(cl.circle_residual, versions[0].residual(net.element(v).point_sphere()));
    out.push_back(cl.circle);
  }
  return out;
}

std::vector<LieVec> face_spheres(ChannelCertificate& cert, const Tolerances& tol) {
  std::vector<LieVec> out;
  for (int r = 0; r < static_cast<int>(cert.ribbons.size()); ++r) {
    auto& rb = cert.ribbons[r];
    if (rb.left < 0 || rb.right < 0) throw GeometryError("ribbon without bounding lines");
    const Subspace all = span_of({&cert.lines[rb.left].circle.plus,
                                  &cert.lines[rb.right].circle.plus},
                                 {p_vec()}, tol);
    const Subspace fs = orthocomplement(all);
    if (fs.dim() != 1)
      throw GeometryError("ribbon " + std::to_string(r) +
                          ": generating circles are not cospherical");
    rb.face_sphere = unit_spacelike(fs.vector(0), "face-sphere");
    out.push_back(rb.face_sphere);
  }
  return out;
}

std::vector<LieVec> quer_spheres(ChannelCertificate& cert, const Tolerances& tol) {
  std::vector<LieVec> out;
  for (int i = 0; i < static_cast<int>(cert.lines.size()); ++i) {
    auto& cl = cert.lines[i];
    const Subspace pencil = orthocomplement(span_of({&cl.circle.plus}, {p_vec()}, tol));
    if (pencil.dim() != 2) throw GeometryError("degenerate circle pencil");
    const LieVec a = pencil.vector(0), b = pencil.vector(1);
    const LieVec q = a * inner(cl.sphere, b) - b * inner(cl.sphere, a);
    if (q.norm() <= tol.rank)
      throw GeometryError("line " + std::to_string(i) + ": no quer-sphere");
    cl.quer_sphere = unit_spacelike(q, "quer-sphere");
    out.push_back(cl.quer_sphere);
  }
  return out;
}

std::vector<LieVec> face_quer_spheres(ChannelCertificate& cert, const LegendreNet& net,
                                      const Tolerances& tol) {
  const QuadComplex& c = net.complex();
  const auto line_of = line_of_vertex(cert, c.vertex_count());
  std::vector<LieVec> out;
  for (int r = 0; r < static_cast<int>(cert.ribbons.size()); ++r) {
    auto& rb = cert.ribbons[r];
    // sphere through each circle orthogonal to the face-sphere
    auto through = [&](int line) {
      const Subspace k = orthocomplement(
          span_of({&cert.lines[line].circle.plus}, {p_vec(), rb.face_sphere}, tol));
      if (k.dim() != 1) throw GeometryError("ribbon " + std::to_string(r) + ": degenerate circle");
      return unit_spacelike(k.vector(0), "circle sphere");
    };
    const LieVec ki = through(rb.left), kj = through(rb.right);
    double best = std::numeric_limits<double>::infinity();
    std::ostringstream tried;
    for (double sgn : {-1.0, 1.0}) {
      const LieVec m = ki + sgn * kj;
      if (inner(m, m) <= tol.sig * m.squaredNorm()) continue;
      double worst = 0.0;
      for (int e : rb.ribbon.rungs) {
        const auto [u, w] = rung_ends(c, e, line_of, rb.left);
        worst = std::max(worst, projective_distance(reflect(net.element(u).point_sphere(), m),
                                                    net.element(w).point_sphere()));
      }
      tried << " " << fmt(worst);
      if (worst < best) {
        best = worst;
        rb.face_quer_sphere = unit_spacelike(m, "face-quer-sphere");
      }
    }
    if (!(best <= tol.residual))
      throw GeometryError("ribbon " + std::to_string(r) +
                          ": no swapping reflection found (candidate residuals" + tried.str() +
                          ")");
    rb.face_quer_residual = best;
    out.push_back(rb.face_quer_sphere);
  }
  return out;
}

DupinResult is_dupin_cyclide(const LegendreNet& net, const Tolerances& tol) {
  DupinResult out;
  for (Label d : {Label::Plus, Label::Minus}) {
    const auto r = verify_channel(net, d, tol);
    if (!r.ok()) {
      out.message = std::string("direction '") + to_string(d) + "' fails: " + r.failure->message;
      return out;
    }
  }
  const QuadComplex& c = net.complex();
  std::vector<LieVec> ps, ms;
  for (int e = 0; e < static_cast<int>(c.edges().size()); ++e)
    (c.edges()[e].label == Label::Plus ? ps : ms).push_back(net.sphere(e));
  const Subspace P = Subspace::span(ps, tol), M = Subspace::span(ms, tol);
  if (P.dim() == 3)
    out.cyclide = {P, orthocomplement(P)};
  else if (M.dim() == 3)
    out.cyclide = {orthocomplement(M), M};
  else if (!c.faces().empty())
    out.cyclide = face_cyclide_family(net, 0, tol).at(0.0);
  else {
    out.message = "no faces";
    return out;
  }
  if (const auto d = dupin_defect(out.cyclide, tol); !d.empty()) {
    out.message = d;
    return out;
  }
  for (const auto& v : ps)
    if (!out.cyclide.plus.contains(v, tol.residual)) {
      out.message = "'+' curvature spheres leave a fixed (2,1)-plane";
      return out;
    }
  for (const auto& v : ms)
    if (!out.cyclide.minus.contains(v, tol.residual)) {
      out.message = "'-' curvature spheres leave the complementary (2,1)-plane";
      return out;
    }
  out.ok = true;
  return out;
}

double cross_ratio(const Vec3& x1, const Vec3& x2, const Vec3& x3, const Vec3& x4, double tol) {
  const std::array<Vec3, 4> x{x1, x2, x3, x4};
  double scale = 0.0;
  for (const auto& v : x) scale = std::max(scale, (v - x1).norm());
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if ((x[i] - x[j]).norm() <= 1e-12 * scale || scale == 0.0)
        throw GeometryError("cross_ratio: coincident points");
  if (lift_rank_defect(x, 3) > tol) throw GeometryError("cross_ratio: points are not concircular");
  const Vec3 u = (x2 - x1).normalized();
  Vec3 w = Vec3::Zero();
  for (const Vec3* y : {&x3, &x4}) {
    const Vec3 d = *y - x1;
    const Vec3 perp = d - d.dot(u) * u;
    if (perp.norm() > w.norm()) w = perp;
  }
  if (w.norm() <= 1e-12 * scale) w = u.unitOrthogonal();
  w.normalize();
  std::array<std::complex<double>, 4> z;
  for (int k = 0; k < 4; ++k) z[k] = {(x[k] - x1).dot(u), (x[k] - x1).dot(w)};
  const auto cr = ((z[0] - z[1]) * (z[2] - z[3])) / ((z[1] - z[2]) * (z[3] - z[0]));
  if (std::abs(cr.imag()) > tol * std::max(1.0, std::abs(cr)))
    throw GeometryError("cross_ratio: points are not concircular");
  return cr.real();
}

CrossRatioReport cross_ratio_constancy(const ChannelCertificate& cert, const LegendreNet& net) {
  if (!net.complex().grid()) throw GeometryError("cross-ratio constancy needs a grid complex");
  CrossRatioReport out;
  if (cert.lines.empty()) return out;
  const std::size_t n = cert.lines.front().line.vertices.size();
  for (const auto& l : cert.lines)
    if (l.line.vertices.size() != n) throw GeometryError("generating circles differ in length");
  if (n < 4) return out;
  const bool closed = cert.lines.front().line.closed;
  const std::size_t nq = closed ? n : n - 3;
  for (std::size_t q = 0; q < nq; ++q) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, mag = 0.0;
    for (const auto& l : cert.lines) {
      const auto& vs = l.line.vertices;
      const double cr = cross_ratio(net.point(vs[q]), net.point(vs[(q + 1) % n]),
                                    net.point(vs[(q + 2) % n]), net.point(vs[(q + 3) % n]));
      lo = std::min(lo, cr);
      hi = std::max(hi, cr);
      mag = std::max(mag, std::abs(cr));
    }
    out.spread = std::max(out.spread, (hi - lo) / std::max(mag, 1e-300));
    ++out.quadruples;
  }
  return out;
}

bool is_ribaucour_pair(const DiscreteCurve3D& a, const DiscreteCurve3D& b, const Tolerances& tol) {
  const std::size_t n = a.points.size();
  if (n != b.points.size() || n < 2) return false;
  const std::size_t segs = a.closed ? n : n - 1;
  for (std::size_t k = 0; k < segs; ++k) {
    const std::size_t k1 = (k + 1) % n;
    const std::array<Vec3, 4> q{a.points[k], a.points[k1], b.points[k1], b.points[k]};
    if (lift_rank_defect(q, 3) > tol.rank) return false;
  }
  return true;
}

bool is_multi_circular(const LegendreNet& net, Label dir, const Tolerances& tol) {
  const QuadComplex& c = net.complex();
  const auto lines = coordinate_lines(c, dir);
  std::vector<int> line_of(static_cast<std::size_t>(c.vertex_count()), -1);
  std::vector<int> line_of_edge(c.edges().size(), -1);
  for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
    for (int v : lines[i].vertices) line_of[v] = i;
    for (int e : lines[i].edges) line_of_edge[e] = i;
  }
  for (const auto& rb : coordinate_ribbons(c, dir)) {
    const auto fe = c.face_edges(rb.faces.front());
    const int left = line_of_edge[dir == Label::Plus ? fe[3] : fe[0]];
    std::vector<std::pair<Vec3, Vec3>> rungs;
    for (int e : rb.rungs) {
      const auto [u, w] = rung_ends(c, e, line_of, left);
      rungs.emplace_back(net.point(u), net.point(w));
    }
    for (std::size_t i = 0; i < rungs.size(); ++i)
      for (std::size_t j = i + 1; j < rungs.size(); ++j) {
        const std::array<Vec3, 4> q{rungs[i].first, rungs[j].first, rungs[j].second,
                                    rungs[i].second};
        if (lift_rank_defect(q, 3) > tol.rank) return false;
      }
  }
  return true;
}

bool is_multi_circular_net(const LegendreNet& net, const Tolerances& tol) {
  const auto& g = net.complex().grid();
  if (!g) throw GeometryError("multi-circularity needs a grid complex");
  const int m = g->n_plus, n = g->n_minus;
  std::vector<Vec3> x;
  for (int v = 0; v < net.complex().vertex_count(); ++v) x.push_back(net.point(v));
  for (int a1 = 0; a1 < m; ++a1)
    for (int a2 = a1 + 1; a2 < m; ++a2)
      for (int b1 = 0; b1 < n; ++b1)
        for (int b2 = b1 + 1; b2 < n; ++b2) {
          const std::array<Vec3, 4> q{x[g->vertex(a1, b1)], x[g->vertex(a2, b1)],
                                      x[g->vertex(a2, b2)], x[g->vertex(a1, b2)]};
          if (lift_rank_defect(q, 3) > tol.rank) return false;
        }
  return true;
}

DiscreteCurve3D line_curve(const LegendreNet& net, const CoordinateLine& line) {
  DiscreteCurve3D out;
  out.closed = line.closed;
  for (int v : line.vertices) out.points.push_back(net.point(v));
  return out;
}

}  // namespace liechannel
