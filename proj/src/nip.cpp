#include "nframes/nip.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

namespace nframes {

namespace {

/// sigma_min / sigma_max of a matrix, 0 when the matrix is all-zero or has
/// fewer rows than columns (rank-deficient by shape).
double singular_ratio(const Eigen::MatrixXcd& m) {
  if (m.rows() < m.cols()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

} // namespace

AmbientSpace::AmbientSpace(int dim_, int order_) : dim(dim_), order(order_) {
  if (order < 2) {
    throw InputError("n-inner product order must be at least 2, got " +
                     std::to_string(order));
  }
  if (dim < order) {
    throw InputError("ambient dimension " + std::to_string(dim) +
                     " is too small for order " + std::to_string(order) +
                     "; need dim >= order");
  }
}

AnchorTuple::AnchorTuple(AmbientSpace space, Eigen::MatrixXcd vectors)
    : space_(space), vectors_(std::move(vectors)) {
  if (vectors_.rows() != space_.dim) {
    throw InputError("anchor vectors have dimension " +
                     std::to_string(vectors_.rows()) +
                     ", ambient space has dimension " +
                     std::to_string(space_.dim));
  }
  if (vectors_.cols() != space_.order - 1) {
    throw InputError("expected " + std::to_string(space_.order - 1) +
                     " anchor vectors for order " +
                     std::to_string(space_.order) + ", got " +
                     std::to_string(vectors_.cols()));
  }
  independence_ratio_ = singular_ratio(vectors_);
}

bool AnchorTuple::same_as(const AnchorTuple& other) const {
  return space_.dim == other.space_.dim && space_.order == other.space_.order &&
         (vectors_ - other.vectors_).squaredNorm() == 0.0;
}

Cplx n_inner(const NVector& x, const NVector& y, const AnchorTuple& anchors) {
  const int d = anchors.space().dim;
  if (x.size() != d || y.size() != d) {
    throw InputError("n_inner arguments must have dimension " +
                     std::to_string(d));
  }
  const Eigen::MatrixXcd& a = anchors.vectors();
  const int m = anchors.count();

  // Bordered Gram matrix: top-left <x,y>, first row <x,a_j>, first column
  // <a_i,y>, lower-right block <a_i,a_j>. Its determinant is the n-inner
  // product over the standard Hermitian dot product.
  Eigen::MatrixXcd bordered(m + 1, m + 1);
  bordered(0, 0) = hdot(x, y);
  for (int j = 0; j < m; ++j) bordered(0, j + 1) = hdot(x, a.col(j));
  for (int i = 0; i < m; ++i) bordered(i + 1, 0) = hdot(a.col(i), y);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      bordered(i + 1, j + 1) = hdot(a.col(i), a.col(j));
  return bordered.determinant();
}

double n_norm(const NVector& x, const AnchorTuple& anchors) {
  const double sq = n_inner(x, x, anchors).real();
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

QuotientFrameSpace::QuotientFrameSpace(AnchorTuple anchors,
                                       Eigen::MatrixXcd comp_basis,
                                       double gram_factor)
    : anchors_(std::move(anchors)),
      comp_basis_(std::move(comp_basis)),
      gram_factor_(gram_factor) {}

QuotientFrameSpace build_quotient(const AnchorTuple& anchors) {
  if (!anchors.independent()) {
    throw DegenerateAnchorError(
        "anchor vectors are linearly dependent (singular-value ratio " +
            std::to_string(anchors.independence_ratio()) + " below " +
            std::to_string(kRankTol) + ")",
        anchors.independence_ratio());
  }
  const int d = anchors.space().dim;
  const int m = anchors.count();
  const int q = d - m;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(anchors.vectors(),
                                         Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double gram_factor = 1.0;
  for (int i = 0; i < sv.size(); ++i) gram_factor *= sv(i) * sv(i);
  const Eigen::MatrixXcd anchor_basis = svd.matrixU(); // d x m, orthonormal

  // Orthonormal basis of span(anchors)^perp by Gram-Schmidt over the
  // projected standard basis vectors, taken in index order so the result is
  // deterministic and, for axis-aligned anchors, consists of plain standard
  // basis vectors. Each candidate is orthogonalized twice for stability; a
  // looser first acceptance pass keeps well-separated directions, and the
  // near-machine fallback pass only triggers for adversarial anchor sets.
  Eigen::MatrixXcd basis(d, q);
  for (double accept_tol : {1e-8, 1e-13}) {
    int found = 0;
    for (int j = 0; j < d && found < q; ++j) {
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(d);
      w(j) = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        w -= anchor_basis * (anchor_basis.adjoint() * w);
        if (found > 0) {
          auto accepted = basis.leftCols(found);
          w -= accepted * (accepted.adjoint() * w);
        }
      }
      const double norm = w.norm();
      if (norm > accept_tol) basis.col(found++) = w / norm;
    }
    if (found == q) {
      return QuotientFrameSpace(anchors, std::move(basis), gram_factor);
    }
  }
  throw Error("failed to construct an orthonormal complement basis");
}

Eigen::MatrixXcd QuotientFrameSpace::to_coords(
    const Eigen::MatrixXcd& ambient_columns) const {
  if (ambient_columns.rows() != ambient_dim()) {
    throw InputError("expected ambient vectors of dimension " +
                     std::to_string(ambient_dim()) + ", got " +
                     std::to_string(ambient_columns.rows()));
  }
  return std::sqrt(gram_factor_) * (comp_basis_.adjoint() * ambient_columns);
}

Eigen::MatrixXcd QuotientFrameSpace::from_coords(
    const Eigen::MatrixXcd& coord_columns) const {
  if (coord_columns.rows() != quotient_dim()) {
    throw InputError("expected coordinate vectors of length " +
                     std::to_string(quotient_dim()) + ", got " +
                     std::to_string(coord_columns.rows()));
  }
  return (comp_basis_ * coord_columns) / std::sqrt(gram_factor_);
}

bool QuotientFrameSpace::same_as(const QuotientFrameSpace& other) const {
  return anchors_.same_as(other.anchors_) &&
         (comp_basis_ - other.comp_basis_).squaredNorm() == 0.0 &&
         gram_factor_ == other.gram_factor_;
}

Eigen::VectorXcd to_quotient_coords(const NVector& x,
                                    const QuotientFrameSpace& qs) {
  return qs.to_coords(x);
}

NVector from_quotient_coords(const Eigen::VectorXcd& coords,
                             const QuotientFrameSpace& qs) {
  return qs.from_coords(coords);
}

} // namespace nframes
