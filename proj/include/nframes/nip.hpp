#pragma once

#include <complex>

#include <Eigen/Dense>

#include "nframes/errors.hpp"

namespace nframes {

using Cplx = std::complex<double>;
using NVector = Eigen::VectorXcd;

/// Relative singular-value ratio below which a set of vectors counts as
/// linearly dependent.
inline constexpr double kRankTol = 1e-12;

/// Hermitian dot product, linear in x and conjugate-linear in y.
inline Cplx hdot(const NVector& x, const NVector& y) { return y.dot(x); }

/// A finite-dimensional complex coordinate space carrying an n-inner product.
struct AmbientSpace {
  int dim;   ///< complex dimension d
  int order; ///< n >= 2, the number of slots of the n-inner product

  AmbientSpace(int dim_, int order_);
};

/// The fixed vectors a_2, ..., a_n against which every anchored quantity
/// (n-inner product, frame bound, dual) is taken. The tuple must be linearly
/// independent wherever the derived Hilbert space is built; build_quotient
/// enforces that, so degenerate tuples remain constructible and reportable.
class AnchorTuple {
public:
  /// vectors: d x (n-1) matrix, column k holds a_{k+2}.
  AnchorTuple(AmbientSpace space, Eigen::MatrixXcd vectors);

  const AmbientSpace& space() const { return space_; }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }
  int count() const { return static_cast<int>(vectors_.cols()); }

  /// sigma_min / sigma_max of the anchor matrix; 0 for rank-deficient tuples.
  double independence_ratio() const { return independence_ratio_; }
  bool independent(double tol = kRankTol) const {
    return independence_ratio_ >= tol;
  }

  /// Same ambient space and bitwise-equal anchor vectors.
  bool same_as(const AnchorTuple& other) const;

private:
  AmbientSpace space_;
  Eigen::MatrixXcd vectors_;
  double independence_ratio_ = 0.0;
};

/// Concrete realization of the Hilbert space derived from the semi-inner
/// product <x, y | a_2, ..., a_n>: the orthogonal complement of the anchor
/// span, with the square root of the anchor Gram determinant folded into the
/// coordinates so that plain coordinate dot products reproduce the n-inner
/// product.
class QuotientFrameSpace {
public:
  const AnchorTuple& anchors() const { return anchors_; }

  /// d x q matrix with orthonormal columns spanning span(anchors)^perp,
  /// q = d - n + 1.
  const Eigen::MatrixXcd& comp_basis() const { return comp_basis_; }

  /// det Gram(a_2, ..., a_n) > 0.
  double gram_factor() const { return gram_factor_; }

  int quotient_dim() const { return static_cast<int>(comp_basis_.cols()); }
  int ambient_dim() const { return static_cast<int>(comp_basis_.rows()); }

  /// Batched coordinate maps; each column is one vector.
  Eigen::MatrixXcd to_coords(const Eigen::MatrixXcd& ambient_columns) const;
  Eigen::MatrixXcd from_coords(const Eigen::MatrixXcd& coord_columns) const;

  bool same_as(const QuotientFrameSpace& other) const;

private:
  friend QuotientFrameSpace build_quotient(const AnchorTuple& anchors);

  QuotientFrameSpace(AnchorTuple anchors, Eigen::MatrixXcd comp_basis,
                     double gram_factor);

  AnchorTuple anchors_;
  Eigen::MatrixXcd comp_basis_;
  double gram_factor_ = 0.0;
};

/// n-inner product <x, y | a_2, ..., a_n>: the determinant of the n x n
/// matrix bordered by x and y over the anchor Gram matrix, with the standard
/// Hermitian dot product underneath.
Cplx n_inner(const NVector& x, const NVector& y, const AnchorTuple& anchors);

/// Induced n-norm ||x, a_2, ..., a_n|| = sqrt(<x, x | a_2, ..., a_n>).
double n_norm(const NVector& x, const AnchorTuple& anchors);

/// Builds the derived Hilbert space for an anchor tuple.
/// Throws DegenerateAnchorError when the anchors are linearly dependent.
QuotientFrameSpace build_quotient(const AnchorTuple& anchors);

/// Isometric coordinates: c = sqrt(gram_factor) * comp_basis^* x, so that
/// <c_x, c_y> equals n_inner(x, y, anchors).
Eigen::VectorXcd to_quotient_coords(const NVector& x,
                                    const QuotientFrameSpace& qs);

/// The unique representative of a coordinate vector inside the orthogonal
/// complement; left inverse of to_quotient_coords.
NVector from_quotient_coords(const Eigen::VectorXcd& coords,
                             const QuotientFrameSpace& qs);

} // namespace nframes
