#include "liechannel/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace liechannel {

namespace {

double ratio(const Bivector& num, const Bivector& den) {
  return (num.array() * den.array()).sum() / den.squaredNorm();
}

// Vertex star on a degree-4 interior vertex: edge neighbours and the
// opposite corner of every incident face.
struct Star {
  std::vector<int> edge_nb, diag;
};

std::optional<Star> star(const QuadComplex& c, int v) {
  if (!c.is_interior(v) || c.degree(v) != 4) return std::nullopt;
  Star s;
  std::vector<int> faces;
  for (int e : c.incident_edges(v)) {
    s.edge_nb.push_back(c.other_end(e, v));
    for (int f : c.edge_faces(e))
      if (std::find(faces.begin(), faces.end(), f) == faces.end()) faces.push_back(f);
  }
  if (faces.size() != 4) return std::nullopt;
  for (int f : faces) {
    const auto& q = c.faces()[f].v;
    const auto pos = std::find(q.begin(), q.end(), v) - q.begin();
    s.diag.push_back(q[(pos + 2) % 4]);
  }
  return s;
}

std::vector<Vec3> gather(std::span<const Vec3> pts, std::initializer_list<const std::vector<int>*> ids,
                         int v) {
  std::vector<Vec3> out{pts[v]};
  for (const auto* l : ids)
    for (int i : *l) out.push_back(pts[i]);
  return out;
}

}  // namespace

Bivector wedge(const LieVec& x, const LieVec& y) {
  return y * (x.transpose() * gram()) - x * (y.transpose() * gram());
}

Bivector mixed_area(const Quad& a, const Quad& b) {
  const LieVec da_ik = a[0] - a[2], da_jl = a[1] - a[3];
  const LieVec db_ik = b[0] - b[2], db_jl = b[1] - b[3];
  return 0.25 * (wedge(da_ik, db_jl) + wedge(db_ik, da_jl));
}

LieVec space_form_point(const ContactElement& f, const SpaceForm& sf) {
  const LieVec x = f.member_orthogonal_to(sf.point_complex);
  const double xq = inner(x, sf.space_form);
  if (std::abs(xq) <= 1e-12 * x.norm()) throw GeometryError("point lies at infinity of the space form");
  return x / -xq;
}

LieVec space_form_normal(const ContactElement& f, const SpaceForm& sf) {
  const LieVec n = f.member_orthogonal_to(sf.space_form);
  const double np = inner(n, sf.point_complex);
  if (std::abs(np) <= 1e-12 * n.norm()) throw GeometryError("tangent sphere is a point sphere");
  return n / -np;
}

FaceCurvature gauss_mean(const Quad& f, const Quad& n) {
  const Bivector aff = mixed_area(f, f);
  const double scale = std::max({(f[0] - f[2]).norm() * (f[1] - f[3]).norm(), 1e-300});
  if (aff.norm() <= 1e-12 * scale) throw GeometryError("degenerate face");
  const Bivector anf = mixed_area(n, f), ann = mixed_area(n, n);
  FaceCurvature out;
  out.K = ratio(ann, aff);
  out.H = -ratio(anf, aff);
  out.residual = std::max((ann - out.K * aff).norm(), (anf + out.H * aff).norm()) /
                 (aff.norm() * (1.0 + std::abs(out.K) + std::abs(out.H)));
  return out;
}

EdgeCurvature edge_curvature(const LieVec& fi, const LieVec& fj, const LieVec& ni,
                             const LieVec& nj) {
  const LieVec df = fj - fi, dn = nj - ni;
  if (df.norm() <= 1e-14 * fi.norm()) throw GeometryError("coincident vertices on an edge");
  EdgeCurvature out;
  out.kappa = -dn.dot(df) / df.squaredNorm();
  out.residual = (dn + out.kappa * df).norm() / (df.norm() * (1.0 + std::abs(out.kappa)));
  return out;
}

CurvatureReport principal_curvatures(const LegendreNet& net, const SpaceForm& sf) {
  const QuadComplex& c = net.complex();
  std::vector<LieVec> F, N;
  for (const auto& f : net.elements()) {
    F.push_back(space_form_point(f, sf));
    N.push_back(space_form_normal(f, sf));
  }
  CurvatureReport rep;
  for (const auto& e : c.edges()) {
    rep.edges.push_back(edge_curvature(F[e.a], F[e.b], N[e.a], N[e.b]));
    rep.max_edge_residual = std::max(rep.max_edge_residual, rep.edges.back().residual);
  }
  for (int fi = 0; fi < static_cast<int>(c.faces().size()); ++fi) {
    const auto& v = c.faces()[fi].v;
    FaceCurvature fc;
    try {
      fc = gauss_mean({F[v[0]], F[v[1]], F[v[2]], F[v[3]]}, {N[v[0]], N[v[1]], N[v[2]], N[v[3]]});
    } catch (const GeometryError&) {
      throw GeometryError("degenerate face " + std::to_string(fi));
    }
    const auto fe = c.face_edges(fi);  // ij, jk, kl, li
    const double kij = rep.edges[fe[0]].kappa, kjk = rep.edges[fe[1]].kappa;
    const double kkl = rep.edges[fe[2]].kappa, kli = rep.edges[fe[3]].kappa;
    const double lhs = (kij - kli - kjk + kkl) * fc.H;
    auto rel = [&](double rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs) + std::abs(rhs)); };
    fc.identity_residual = rel(kij * kkl - kjk * kli);
    fc.printed_identity_residual = rel(kjk * kli - kij * kkl);
    rep.max_face_residual = std::max(rep.max_face_residual, fc.residual);
    rep.max_identity_residual = std::max(rep.max_identity_residual, fc.identity_residual);
    rep.faces.push_back(fc);
  }
  return rep;
}

std::string to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::pass: return "pass";
    case IsoStatus::fail: return "fail";
    case IsoStatus::spherical: return "spherical";
    default: return "not-applicable";
  }
}

std::vector<VertexTest> is_isothermic_5point(std::span<const Vec3> points, const QuadComplex& c,
                                             const Tolerances& tol) {
  std::vector<VertexTest> out(c.vertex_count());
  for (int v = 0; v < c.vertex_count(); ++v) {
    const auto s = star(c, v);
    if (!s) continue;
    const auto nine = gather(points, {&s->edge_nb, &s->diag}, v);
    if (lift_rank_defect(nine, 4) <= tol.spherical) {
      out[v] = {IsoStatus::spherical, lift_rank_defect(nine, 4)};
      continue;
    }
    // with a non-spherical star the 5-point sphere cannot hold all edge neighbours
    const double r = lift_rank_defect(gather(points, {&s->diag}, v), 4);
    out[v] = {r <= tol.rank ? IsoStatus::pass : IsoStatus::fail, r};
  }
  return out;
}

std::vector<VertexTest> diagonal_concircular(std::span<const Vec3> points, const QuadComplex& c,
                                             const Tolerances& tol) {
  std::vector<VertexTest> out(c.vertex_count());
  for (int v = 0; v < c.vertex_count(); ++v) {
    const auto s = star(c, v);
    if (!s) continue;
    std::vector<Vec3> d;
    for (int i : s->diag) d.push_back(points[i]);
    const double r = lift_rank_defect(d, 3);
    out[v] = {r <= tol.rank ? IsoStatus::pass : IsoStatus::fail, r};
  }
  return out;
}

std::string to_string(VessiotType t) {
  switch (t) {
    case VessiotType::revolution: return "revolution";
    case VessiotType::cylinder: return "cylinder";
    case VessiotType::cone: return "cone";
    default: return "none";
  }
}

VessiotClass vessiot_classify(const ChannelCertificate& cert, const Tolerances& tol) {
  if (cert.ribbons.size() < 3) throw GeometryError("insufficient data: fewer than 3 face-spheres");
  std::vector<LieVec> fs;
  for (const auto& rb : cert.ribbons) fs.push_back(rb.face_sphere);
  VessiotClass out;
  out.witness = Subspace::span(fs, tol);
  out.signature = signature(out.witness, tol);
  if (out.witness.dim() == 3) {
    if (out.signature.is(2, 1)) out.type = VessiotType::revolution;
    else if (out.signature.is(3, 0)) out.type = VessiotType::cone;
    else if (out.signature.is(2, 0, 1)) out.type = VessiotType::cylinder;
  }
  return out;
}

CmcAnalysis ribbon_cmc_analysis(const LegendreNet&, const ChannelCertificate& cert,
                                const CurvatureReport& report, const Tolerances& tol) {
  if (cert.direction != Label::Plus)
    throw GeometryError("ribbon_cmc_analysis expects circular direction '+'");
  CmcAnalysis out;
  double hmin = 1e300, hmax = -1e300;
  for (const auto& f : report.faces) {
    hmin = std::min(hmin, f.H);
    hmax = std::max(hmax, f.H);
  }
  out.h_spread = report.faces.empty() ? 0.0 : hmax - hmin;
  out.constant_h = out.h_spread <= 1e-8 * std::max(1.0, std::abs(hmax));
  const double eq = std::max(tol.residual, 1e-9);
  for (const auto& rb : cert.ribbons) {
    RibbonCmc r;
    const auto& rungs = rb.ribbon.rungs;
    const int nf = static_cast<int>(rb.ribbon.faces.size());
    std::vector<double> k;
    for (int e : rungs) k.push_back(report.edges[e].kappa);
    r.rungs = static_cast<int>(k.size());
    const int nr = r.rungs;
    const int pairs = rb.ribbon.closed && nf > 2 ? nf : nf - 1;
    for (int t = 0; t < pairs; ++t) {
      const int t1 = (t + 1) % nf;
      const double H = 0.5 * (report.faces[rb.ribbon.faces[t]].H + report.faces[rb.ribbon.faces[t1]].H);
      const double ki = k[t % nr], kj = k[(t + 1) % nr], kk = k[(t + 2) % nr];
      r.residuals.push_back((ki - kk) * (kj - H));
    }
    for (double a : k) {
      int cnt = 0;
      for (double b : k) cnt += std::abs(a - b) <= eq * std::max(1.0, std::abs(a)) ? 1 : 0;
      r.coinciding = std::max(r.coinciding, cnt);
    }
    r.torus_type = out.constant_h && r.coinciding >= 3;
    out.ribbons.push_back(std::move(r));
  }
  return out;
}

}  // namespace liechannel
