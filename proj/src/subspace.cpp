#include <algorithm>
#include <cmath>

#include "liechannel/lie.hpp"

namespace liechannel {

namespace {

using Basis = Eigen::Matrix<double, 6, Eigen::Dynamic>;

// Orthonormal basis of the column space, columns pre-normalized so the rank
// cutoff is scale free.
Basis column_space(const Basis& m, double rel_tol) {
  Basis cols(6, 0);
  std::vector<int> keep;
  for (int i = 0; i < m.cols(); ++i)
    if (m.col(i).norm() > 0.0) keep.push_back(i);
  if (keep.empty()) return cols;
  Basis a(6, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) a.col(i) = m.col(keep[i]).normalized();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Subspace Subspace::span(std::span<const LieVec> vs, const Tolerances& tol) {
  Basis m(6, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(i) = vs[i];
  return Subspace(column_space(m, tol.rank));
}

Subspace Subspace::span(std::initializer_list<LieVec> vs, const Tolerances& tol) {
  return span(std::span<const LieVec>(vs.begin(), vs.size()), tol);
}

Subspace Subspace::whole() { return Subspace(Basis::Identity(6, 6)); }

std::vector<LieVec> Subspace::vectors() const {
  std::vector<LieVec> out;
  for (int i = 0; i < dim(); ++i) out.emplace_back(basis_.col(i));
  return out;
}

double Subspace::residual(const LieVec& v) const {
  const double n = v.norm();
  if (n == 0.0) return 0.0;
  const LieVec u = v / n;
  if (dim() == 0) return 1.0;
  return (u - basis_ * (basis_.transpose() * u)).norm();
}

bool Subspace::contains(const LieVec& v, double tol) const { return residual(v) <= tol; }

bool Subspace::contains(const Subspace& other, double tol) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(LieVec(other.basis_.col(i)), tol)) return false;
  return true;
}

Eigen::MatrixXd Subspace::restricted_gram() const {
  return basis_.transpose() * gram() * basis_;
}

Subspace orthocomplement(const Subspace& s) {
  if (s.dim() == 0) return Subspace::whole();
  // G is orthogonal, so the rows of B^T G are orthonormal and the kernel has
  // exact dimension 6 - k.
  const Eigen::MatrixXd rows = s.basis_.transpose() * gram();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const int k = s.dim();
  return Subspace(svd.matrixV().rightCols(6 - k));
}

Subspace intersect(const Subspace& a, const Subspace& b, double tol) {
  if (a.dim() == 0 || b.dim() == 0) return Subspace(Basis(6, 0));
  Eigen::MatrixXd m(6, a.dim() + b.dim());
  m << a.basis_, -b.basis_;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int n = static_cast<int>(m.cols());
  Basis found(6, 0);
  std::vector<LieVec> vs;
  for (int i = 0; i < n; ++i) {
    const double s = i < sv.size() ? sv[i] : 0.0;
    if (s <= tol) {
      const Eigen::VectorXd y = svd.matrixV().col(i);
      vs.emplace_back(a.basis_ * y.head(a.dim()));
    }
  }
  Basis cand(6, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) cand.col(i) = vs[i];
  return Subspace(column_space(cand, 1e-12));
}

Subspace sum(const Subspace& a, const Subspace& b, const Tolerances& tol) {
  Basis m(6, a.dim() + b.dim());
  m << a.basis_, b.basis_;
  return Subspace(column_space(m, tol.rank));
}

SignatureReport signature(const Subspace& s, const Tolerances& tol) {
  SignatureReport rep;
  if (s.dim() == 0) return rep;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.restricted_gram());
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()[i];
    rep.eigenvalues.push_back(l);
    if (std::abs(l) <= tol.sig)
      ++rep.n_null;
    else if (l > 0)
      ++rep.n_plus;
    else
      ++rep.n_minus;
  }
  return rep;
}

LieVec project_onto(const LieVec& v, const Subspace& s, const Tolerances& tol) {
  if (signature(s, tol).n_null > 0) throw GeometryError("degenerate Gram form");
  const Eigen::MatrixXd m = s.restricted_gram();
  const Eigen::VectorXd rhs = s.basis().transpose() * gram() * v;
  const Eigen::VectorXd a = m.fullPivLu().solve(rhs);
  return s.basis() * a;
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return 1.0;
  if (a.dim() == 0) return 0.0;
  const Eigen::MatrixXd r = a.basis() - b.basis() * (b.basis().transpose() * a.basis());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  return svd.singularValues()[0];
}

GramFrame gram_frame(const Subspace& s, const Tolerances& tol) {
  GramFrame f;
  if (s.dim() == 0) return f;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.restricted_gram());
  for (int i = es.eigenvalues().size() - 1; i >= 0; --i) {
    const double l = es.eigenvalues()[i];
    const LieVec v = s.basis() * es.eigenvectors().col(i);
    if (std::abs(l) <= tol.sig)
      f.null.push_back(v);
    else if (l > 0)
      f.spacelike.push_back(v / std::sqrt(l));
    else
      f.timelike.push_back(v / std::sqrt(-l));
  }
  return f;
}

}  // namespace liechannel
