#pragma once

#include <span>
#include <string>
#include <vector>

#include "liechannel/complex.hpp"
#include "liechannel/lie.hpp"

namespace liechannel {

/// A totally isotropic 2-plane of R^{4,2}: a pencil of spheres in oriented
/// contact. Stored with the point sphere as first generator whenever the
/// plane has one.
class ContactElement {
 public:
  ContactElement() = default;

  /// Throws unless the span of (a, b) is 2-dimensional and totally isotropic.
  static ContactElement from_spheres(const LieVec& a, const LieVec& b,
                                     const Tolerances& tol = default_tolerances());

  const Subspace& plane() const { return plane_; }
  const LieVec& generator(int i) const { return i == 0 ? g0_ : g1_; }

  /// The unique pencil member orthogonal to v (up to scale).
  LieVec member_orthogonal_to(const LieVec& v) const;
  /// Member orthogonal to e6, scaled so its e0 coefficient is 1 when finite.
  LieVec point_sphere() const;
  bool contains(const LieVec& v, double tol = default_tolerances().residual) const {
    return plane_.contains(v, tol);
  }

 private:
  Subspace plane_;
  LieVec g0_ = LieVec::Zero();
  LieVec g1_ = LieVec::Zero();
};

/// Pencil of spheres through x with unit normal n: <lift_point(x), lift_plane(n, n·x)>.
/// The member with e0 coefficient 1 and e6 coefficient r is the sphere of
/// center x + r·n.
ContactElement contact_from_point_normal(const Vec3& x, const Vec3& n);

/// Common sphere of two contact elements. Throws "identical contact elements"
/// or "not in contact".
LieVec curvature_sphere(const ContactElement& fi, const ContactElement& fj,
                        const Tolerances& tol = default_tolerances());

struct EdgeDiagnostic {
  int edge = -1;
  std::string message;
};

struct LegendreReport {
  std::vector<EdgeDiagnostic> failures;
  bool ok() const { return failures.empty(); }
};

LegendreReport is_legendre(const QuadComplex& c, std::span<const ContactElement> f,
                           const Tolerances& tol = default_tolerances());

/// A discrete Legendre map with its curvature spheres cached per edge.
/// Construction validates the Legendre condition.
class LegendreNet {
 public:
  LegendreNet() = default;
  LegendreNet(QuadComplex complex, std::vector<ContactElement> elements,
              const Tolerances& tol = default_tolerances());

  const QuadComplex& complex() const { return complex_; }
  const std::vector<ContactElement>& elements() const { return elements_; }
  const ContactElement& element(int v) const { return elements_[v]; }
  /// Curvature sphere of edge e (unit auxiliary norm).
  const LieVec& sphere(int e) const { return spheres_[e]; }
  const std::vector<LieVec>& spheres() const { return spheres_; }

  /// Euclidean vertex position; throws if the vertex has no finite point sphere.
  Vec3 point(int v) const;

 private:
  QuadComplex complex_;
  std::vector<ContactElement> elements_;
  std::vector<LieVec> spheres_;
};

LegendreNet net_from_edge_spheres(const QuadComplex& c, std::span<const LieVec> s,
                                  const Tolerances& tol = default_tolerances());

/// Orthogonal (2,1)-splitting of R^{4,2}; the light cones of the two parts are
/// the two curvature sphere families.
struct DupinCyclide {
  Subspace plus;
  Subspace minus;

  DupinCyclide swapped() const { return {minus, plus}; }
};

/// Residual of the DupinCyclide invariants (signatures and orthogonality);
/// returns an empty string when valid.
std::string dupin_defect(const DupinCyclide& cy, const Tolerances& tol = default_tolerances());
double cyclide_distance(const DupinCyclide& a, const DupinCyclide& b);

/// The four curvature spheres of face (i,j,k,l).
struct FaceSpheres {
  LieVec minus_ij, plus_jk, minus_kl, plus_li;
};
FaceSpheres face_spheres_of(const LegendreNet& net, int face);

/// Face-cyclides of one face: all (2,1)-splittings with the two '+' spheres in
/// the plus part and the two '-' spheres in the minus part. Parametrized by
/// t (period pi) through a rotation in the positive definite plane W
/// complementary to both sphere pairs.
class FaceCyclideFamily {
 public:
  FaceCyclideFamily(Subspace u, Subspace v, LieVec w1, LieVec w2)
      : u_(std::move(u)), v_(std::move(v)), w1_(w1), w2_(w2) {}

  DupinCyclide at(double t) const;
  /// Parameter whose plus part best contains `target.plus`, with its residual.
  std::pair<double, double> parameter_of(const Subspace& target_plus) const;

  const Subspace& plus_pair() const { return u_; }
  const Subspace& minus_pair() const { return v_; }
  const LieVec& w1() const { return w1_; }
  const LieVec& w2() const { return w2_; }

 private:
  Subspace u_, v_;
  LieVec w1_, w2_;
};

FaceCyclideFamily face_cyclide_family(const LegendreNet& net, int face,
                                      const Tolerances& tol = default_tolerances());

bool is_face_cyclide(const LegendreNet& net, int face, const DupinCyclide& cy,
                     const Tolerances& tol = default_tolerances());

}  // namespace liechannel
