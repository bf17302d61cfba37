#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "liechannel/tolerance.hpp"

namespace liechannel {

using Vec3 = Eigen::Vector3d;

/// Homogeneous coordinates in R^{4,2} with respect to the basis
/// (e1, e2, e3, e0, e_inf, e6).
using LieVec = Eigen::Matrix<double, 6, 1>;

namespace basis {
inline constexpr int kX1 = 0;
inline constexpr int kX2 = 1;
inline constexpr int kX3 = 2;
inline constexpr int kOrigin = 3;    // e0
inline constexpr int kInfinity = 4;  // e_inf
inline constexpr int kTime = 5;      // e6

LieVec e(int i);
inline LieVec e0() { return e(kOrigin); }
inline LieVec einf() { return e(kInfinity); }
inline LieVec e6() { return e(kTime); }
}  // namespace basis

/// Gram matrix of the (4,2) form. It is symmetric and orthogonal (G*G = I).
const Eigen::Matrix<double, 6, 6>& gram();

double inner(const LieVec& a, const LieVec& b);

/// The point sphere complex p = e6 and the Euclidean space-form vector q = e_inf.
struct SpaceForm {
  LieVec point_complex = basis::e6();
  LieVec space_form = basis::einf();
};

LieVec lift_sphere(const Vec3& center, double radius);
/// `normal` must have unit length; the plane is {x : normal·x = offset}.
LieVec lift_plane(const Vec3& normal, double offset);
LieVec lift_point(const Vec3& x);

/// Möbius sphere vector (unit spacelike, orthogonal to e6) of an oriented sphere.
/// Its Lie lift is `mobius + e6`.
LieVec mobius_sphere(const Vec3& center, double radius);
LieVec mobius_plane(const Vec3& normal, double offset);

struct PointSphere {
  Vec3 x;
};
struct Sphere {
  Vec3 center;
  double radius;
};
struct Plane {
  Vec3 normal;
  double offset;
};
struct PointAtInfinity {};

using SphereDescriptor = std::variant<PointSphere, Sphere, Plane, PointAtInfinity>;

/// Classifies a null vector as a Euclidean point, oriented sphere, oriented
/// plane, or the point at infinity. Throws GeometryError("not a Lie sphere")
/// for non-null input.
SphereDescriptor unlift(const LieVec& eta, const Tolerances& tol = default_tolerances());

/// Euclidean point of a point sphere. Throws if `eta` is not a finite point.
Vec3 unlift_point(const LieVec& eta, const Tolerances& tol = default_tolerances());

/// Interprets a Möbius sphere vector (orthogonal to e6) as a Euclidean sphere.
SphereDescriptor unlift_mobius(const LieVec& sigma, const Tolerances& tol = default_tolerances());

bool is_null(const LieVec& v, const Tolerances& tol = default_tolerances());
bool in_oriented_contact(const LieVec& a, const LieVec& b,
                         const Tolerances& tol = default_tolerances());

/// Sine of the angle between two homogeneous vectors in the auxiliary
/// Euclidean metric; zero iff they are projectively equal.
double projective_distance(const LieVec& a, const LieVec& b);
/// 1 - |cos| of the same angle; used for curvature-sphere constancy.
double projective_deviation(const LieVec& a, const LieVec& b);

/// Rescales so that (v, e6) = -1, i.e. the e6 coefficient is 1.
LieVec normalize_against(const LieVec& v, const LieVec& reference, double target = -1.0);

// ---------------------------------------------------------------------------

struct SignatureReport {
  int n_plus = 0;
  int n_minus = 0;
  int n_null = 0;
  std::vector<double> eigenvalues;

  bool is(int plus, int minus, int null = 0) const {
    return n_plus == plus && n_minus == minus && n_null == null;
  }
};

/// A linear subspace of R^{4,2}, stored with a Euclidean-orthonormal basis.
class Subspace {
 public:
  Subspace() = default;

  /// Span of the given vectors; rank is decided with the relative `tol.rank`.
  static Subspace span(std::span<const LieVec> vs, const Tolerances& tol = default_tolerances());
  static Subspace span(std::initializer_list<LieVec> vs,
                       const Tolerances& tol = default_tolerances());
  static Subspace whole();

  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::Matrix<double, 6, Eigen::Dynamic>& basis() const { return basis_; }
  LieVec vector(int i) const { return basis_.col(i); }
  std::vector<LieVec> vectors() const;

  /// Euclidean distance of v/|v| from the subspace.
  double residual(const LieVec& v) const;
  bool contains(const LieVec& v, double tol = default_tolerances().residual) const;
  bool contains(const Subspace& other, double tol = default_tolerances().residual) const;

  /// Restricted Gram matrix B^T G B in the stored basis.
  Eigen::MatrixXd restricted_gram() const;

 private:
  explicit Subspace(Eigen::Matrix<double, 6, Eigen::Dynamic> b) : basis_(std::move(b)) {}
  Eigen::Matrix<double, 6, Eigen::Dynamic> basis_;

  friend Subspace orthocomplement(const Subspace& s);
  friend Subspace intersect(const Subspace& a, const Subspace& b, double tol);
  friend Subspace sum(const Subspace& a, const Subspace& b, const Tolerances& tol);
};

Subspace orthocomplement(const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b,
                   double tol = default_tolerances().rank);
Subspace sum(const Subspace& a, const Subspace& b, const Tolerances& tol = default_tolerances());

SignatureReport signature(const Subspace& s, const Tolerances& tol = default_tolerances());

/// Gram-orthogonal projection. Throws "degenerate Gram form" if the form
/// restricted to `s` is degenerate.
LieVec project_onto(const LieVec& v, const Subspace& s,
                    const Tolerances& tol = default_tolerances());

/// Largest principal-angle sine between equal-dimensional subspaces
/// (1 if dimensions differ).
double subspace_distance(const Subspace& a, const Subspace& b);

/// Orthogonal basis adapted to the Gram form: spacelike vectors first (unit
/// square), then timelike (square -1), then null directions.
struct GramFrame {
  std::vector<LieVec> spacelike;
  std::vector<LieVec> timelike;
  std::vector<LieVec> null;
};
GramFrame gram_frame(const Subspace& s, const Tolerances& tol = default_tolerances());

/// Reflection in a non-null vector m: v - 2 (v,m)/(m,m) m.
LieVec reflect(const LieVec& v, const LieVec& m);

}  // namespace liechannel
