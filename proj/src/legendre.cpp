#include "liechannel/legendre.hpp"

#include <cmath>
#include <sstream>

namespace liechannel {

namespace {

double max_gram_entry(const Subspace& s) {
  return s.dim() == 0 ? 0.0 : s.restricted_gram().cwiseAbs().maxCoeff();
}

// Sign convention: largest-magnitude coordinate positive.
LieVec canonical_sign(const LieVec& v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  return v[i] < 0 ? LieVec(-v) : v;
}

}  // namespace

ContactElement ContactElement::from_spheres(const LieVec& a, const LieVec& b,
                                            const Tolerances& tol) {
  const Subspace s = Subspace::span({a, b}, tol);
  if (s.dim() != 2) throw GeometryError("contact element needs two independent spheres");
  if (max_gram_entry(s) > tol.contact) throw GeometryError("plane is not totally isotropic");
  ContactElement f;
  f.plane_ = s;
  const LieVec p = s.vector(0) * inner(s.vector(1), basis::e6()) -
                   s.vector(1) * inner(s.vector(0), basis::e6());
  if (p.norm() > tol.rank) {
    f.g0_ = p.normalized();
    // second generator: the member orthogonal to e_inf (the tangent plane) if distinct
    const LieVec q = s.vector(0) * inner(s.vector(1), basis::einf()) -
                     s.vector(1) * inner(s.vector(0), basis::einf());
    LieVec other = q.norm() > tol.rank ? LieVec(q.normalized()) : LieVec(s.vector(1));
    if (projective_distance(other, f.g0_) < tol.rank)
      other = (s.vector(0) - s.vector(0).dot(f.g0_) * f.g0_).normalized();
    f.g1_ = other - other.dot(f.g0_) * f.g0_;
    f.g1_.normalize();
  } else {
    f.g0_ = s.vector(0);
    f.g1_ = s.vector(1);
  }
  return f;
}

LieVec ContactElement::member_orthogonal_to(const LieVec& v) const {
  const double a = inner(g0_, v);
  const double b = inner(g1_, v);
  if (std::hypot(a, b) <= 1e-14 * v.norm()) throw GeometryError("whole pencil is orthogonal");
  return (g0_ * b - g1_ * a).normalized();
}

LieVec ContactElement::point_sphere() const {
  LieVec p = member_orthogonal_to(basis::e6());
  const double u0 = p[basis::kOrigin];
  if (std::abs(u0) > 1e-12 * p.norm()) p /= u0;
  return p;
}

ContactElement contact_from_point_normal(const Vec3& x, const Vec3& n) {
  if (std::abs(n.norm() - 1.0) > 1e-9) throw GeometryError("normal must have unit length");
  return ContactElement::from_spheres(lift_point(x), lift_plane(n, n.dot(x)));
}

LieVec curvature_sphere(const ContactElement& fi, const ContactElement& fj,
                        const Tolerances& tol) {
  const Subspace common = intersect(fi.plane(), fj.plane(), tol.rank);
  if (common.dim() >= 2) throw GeometryError("identical contact elements");
  if (common.dim() == 0) throw GeometryError("not in contact");
  return canonical_sign(common.vector(0));
}

LegendreReport is_legendre(const QuadComplex& c, std::span<const ContactElement> f,
                           const Tolerances& tol) {
  LegendreReport rep;
  if (static_cast<int>(f.size()) != c.vertex_count()) {
    rep.failures.push_back({-1, "contact element count does not match vertex count"});
    return rep;
  }
  for (int e = 0; e < static_cast<int>(c.edges().size()); ++e) {
    const auto& ed = c.edges()[e];
    try {
      curvature_sphere(f[ed.a], f[ed.b], tol);
    } catch (const GeometryError& err) {
      rep.failures.push_back({e, err.what()});
    }
  }
  return rep;
}

LegendreNet::LegendreNet(QuadComplex complex, std::vector<ContactElement> elements,
                         const Tolerances& tol)
    : complex_(std::move(complex)), elements_(std::move(elements)) {
  if (static_cast<int>(elements_.size()) != complex_.vertex_count())
    throw GeometryError("contact element count does not match vertex count");
  spheres_.reserve(complex_.edges().size());
  for (int e = 0; e < static_cast<int>(complex_.edges().size()); ++e) {
    const auto& ed = complex_.edges()[e];
    try {
      spheres_.push_back(curvature_sphere(elements_[ed.a], elements_[ed.b], tol));
    } catch (const GeometryError& err) {
      std::ostringstream msg;
      msg << "Legendre condition fails on edge " << e << " (" << ed.a << "," << ed.b
          << "): " << err.what();
      throw GeometryError(msg.str());
    }
  }
}

Vec3 LegendreNet::point(int v) const { return unlift_point(elements_[v].point_sphere()); }

LegendreNet net_from_edge_spheres(const QuadComplex& c, std::span<const LieVec> s,
                                  const Tolerances& tol) {
  if (s.size() != c.edges().size()) throw GeometryError("one sphere per edge required");
  for (const auto& v : s)
    if (!is_null(v, tol)) throw GeometryError("edge sphere is not a Lie sphere");
  std::vector<ContactElement> f;
  f.reserve(static_cast<std::size_t>(c.vertex_count()));
  for (int v = 0; v < c.vertex_count(); ++v) {
    std::vector<LieVec> star;
    for (int e : c.incident_edges(v)) star.push_back(s[e]);
    const Subspace span = Subspace::span(star, tol);
    if (span.dim() != 2 || max_gram_entry(span) > tol.contact)
      throw GeometryError("vertex-star does not span a contact element at vertex " +
                          std::to_string(v));
    f.push_back(ContactElement::from_spheres(span.vector(0), span.vector(1), tol));
  }
  return LegendreNet(c, std::move(f), tol);
}

std::string dupin_defect(const DupinCyclide& cy, const Tolerances& tol) {
  if (!signature(cy.plus, tol).is(2, 1)) return "plus part is not of signature (2,1)";
  if (!signature(cy.minus, tol).is(2, 1)) return "minus part is not of signature (2,1)";
  const Eigen::MatrixXd cross = cy.plus.basis().transpose() * gram() * cy.minus.basis();
  if (cross.cwiseAbs().maxCoeff() > tol.residual) return "parts are not orthogonal";
  return {};
}

double cyclide_distance(const DupinCyclide& a, const DupinCyclide& b) {
  return std::max(subspace_distance(a.plus, b.plus), subspace_distance(a.minus, b.minus));
}

FaceSpheres face_spheres_of(const LegendreNet& net, int face) {
  const auto fe = net.complex().face_edges(face);
  for (int e : fe)
    if (e < 0) throw GeometryError("face " + std::to_string(face) + " has a missing edge");
  return {net.sphere(fe[0]), net.sphere(fe[1]), net.sphere(fe[2]), net.sphere(fe[3])};
}

DupinCyclide FaceCyclideFamily::at(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  auto plus = u_.vectors();
  plus.push_back(c * w1_ + s * w2_);
  auto minus = v_.vectors();
  minus.push_back(-s * w1_ + c * w2_);
  return {Subspace::span(plus), Subspace::span(minus)};
}

std::pair<double, double> FaceCyclideFamily::parameter_of(const Subspace& target) const {
  auto off = [&](const LieVec& w) -> LieVec {
    return w - target.basis() * (target.basis().transpose() * w);
  };
  const LieVec a = off(w1_), b = off(w2_);
  Eigen::Matrix2d m;
  m << a.dot(a), a.dot(b), a.dot(b), b.dot(b);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  const Eigen::Vector2d y = es.eigenvectors().col(0);
  const double t = std::atan2(y[1], y[0]);
  return {t, std::sqrt(std::max(0.0, es.eigenvalues()[0]))};
}

FaceCyclideFamily face_cyclide_family(const LegendreNet& net, int face, const Tolerances& tol) {
  const FaceSpheres fs = face_spheres_of(net, face);
  const Subspace u = Subspace::span({fs.plus_jk, fs.plus_li}, tol);
  const Subspace v = Subspace::span({fs.minus_ij, fs.minus_kl}, tol);
  if (u.dim() != 2 || v.dim() != 2) throw GeometryError("degenerate face");
  const Subspace w = orthocomplement(sum(u, v, tol));
  if (w.dim() != 2 || !signature(w, tol).is(2, 0)) throw GeometryError("degenerate face");
  // canonical frame of W, independent of how W's basis came out
  LieVec w1 = LieVec::Zero();
  double best = -1.0;
  for (int i = 0; i < 6; ++i) {
    const LieVec p = project_onto(basis::e(i), w, tol);
    if (p.norm() > best + 1e-12) {
      best = p.norm();
      w1 = p;
    }
  }
  w1 = canonical_sign(w1 / std::sqrt(inner(w1, w1)));
  LieVec w2 = LieVec::Zero();
  best = -1.0;
  for (const auto& f : w.vectors()) {
    const LieVec r = f - inner(f, w1) * w1;
    if (r.norm() > best) {
      best = r.norm();
      w2 = r;
    }
  }
  w2 = canonical_sign(w2 / std::sqrt(inner(w2, w2)));
  return FaceCyclideFamily(u, v, w1, w2);
}

bool is_face_cyclide(const LegendreNet& net, int face, const DupinCyclide& cy,
                     const Tolerances& tol) {
  const FaceSpheres fs = face_spheres_of(net, face);
  return cy.plus.contains(fs.plus_jk, tol.residual) && cy.plus.contains(fs.plus_li, tol.residual) &&
         cy.minus.contains(fs.minus_ij, tol.residual) &&
         cy.minus.contains(fs.minus_kl, tol.residual);
}

}  // namespace liechannel
