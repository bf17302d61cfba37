#pragma once

#include <array>
#include <string>
#include <vector>

#include "liechannel/channel.hpp"

namespace liechannel {

using Quad = std::array<LieVec, 4>;
using Bivector = Eigen::Matrix<double, 6, 6>;

/// (x ^ y)(v) = (x,v) y - (y,v) x as a matrix.
Bivector wedge(const LieVec& x, const LieVec& y);

/// A(a,b) = 1/4 (da_ik ^ db_jl + db_ik ^ da_jl), quads indexed (i,j,k,l).
Bivector mixed_area(const Quad& a, const Quad& b);

/// Euclidean space form lifts. f: (f,p) = 0, (f,q) = -1. n: (n,q) = 0, (n,p) = -1.
LieVec space_form_point(const ContactElement& f, const SpaceForm& sf = {});
LieVec space_form_normal(const ContactElement& f, const SpaceForm& sf = {});

struct FaceCurvature {
  double K = 0.0;
  double H = 0.0;
  double residual = 0.0;           // deviation from proportional mixed areas
  // (k_ij - k_il - k_jk + k_kl) H = k_ij k_kl - k_jk k_li, the sign that
  // follows from K, H and kappa as defined here
  double identity_residual = 0.0;
  // same with the right hand side negated
  double printed_identity_residual = 0.0;
};

/// K and H of one face from its lifted points and normals.
FaceCurvature gauss_mean(const Quad& f, const Quad& n);

struct EdgeCurvature {
  double kappa = 0.0;
  double residual = 0.0;  // dn + kappa df, relative
};

EdgeCurvature edge_curvature(const LieVec& fi, const LieVec& fj, const LieVec& ni,
                             const LieVec& nj);

struct CurvatureReport {
  std::vector<FaceCurvature> faces;
  std::vector<EdgeCurvature> edges;
  double max_face_residual = 0.0;
  double max_edge_residual = 0.0;
  double max_identity_residual = 0.0;
};

/// Face and edge curvatures of the space form projection of a net.
CurvatureReport principal_curvatures(const LegendreNet& net, const SpaceForm& sf = {});

enum class IsoStatus { pass, fail, not_applicable, spherical };
std::string to_string(IsoStatus s);

struct VertexTest {
  IsoStatus status = IsoStatus::not_applicable;
  double residual = 0.0;  // relative rank defect of the tested lift
};

/// 5-point sphere condition: vertex and its four diagonal neighbours cospherical,
/// the sphere not containing the edge neighbours. Boundary vertices are not
/// applicable; spherical 9-point stars are reported as such.
std::vector<VertexTest> is_isothermic_5point(std::span<const Vec3> points, const QuadComplex& c,
                                             const Tolerances& tol = default_tolerances());
/// Four diagonal neighbours concircular.
std::vector<VertexTest> diagonal_concircular(std::span<const Vec3> points, const QuadComplex& c,
                                             const Tolerances& tol = default_tolerances());

enum class VessiotType { revolution, cylinder, cone, none };
std::string to_string(VessiotType t);

struct VessiotClass {
  VessiotType type = VessiotType::none;
  Subspace witness;
  SignatureReport signature;
};

/// Classification by the span of the face-spheres.
VessiotClass vessiot_classify(const ChannelCertificate& cert,
                              const Tolerances& tol = default_tolerances());

struct RibbonCmc {
  std::vector<double> residuals;  // (k_i - k_k)(k_j - H) per adjacent face pair
  int coinciding = 0;             // largest set of equal '-' curvatures
  int rungs = 0;
  bool torus_type = false;        // only set when H is constant on the net
};

struct CmcAnalysis {
  std::vector<RibbonCmc> ribbons;
  double h_spread = 0.0;
  bool constant_h = false;
};

CmcAnalysis ribbon_cmc_analysis(const LegendreNet& net, const ChannelCertificate& cert,
                                const CurvatureReport& report,
                                const Tolerances& tol = default_tolerances());

}  // namespace liechannel
