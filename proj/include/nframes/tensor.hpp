#pragma once

#include <Eigen/Dense>

#include "nframes/frames.hpp"
#include "nframes/multiplier.hpp"

namespace nframes {

/// Maximum deviation of the mixed analysis/synthesis operator from the
/// identity below which two families count as a dual pair.
inline constexpr double kDualTol = 1e-8;

/// Kronecker product of two dense operators (left factor indexes blocks).
OperatorOnHF kron_operator(const OperatorOnHF& q, const OperatorOnHF& t);

/// The tensor product of two derived Hilbert spaces, realized as the
/// Kronecker product of their quotient coordinate spaces. The naive ambient
/// construction (Gram determinants over C^{d1 d2} with tensored anchors)
/// would not factorize over simple tensors and is deliberately avoided.
struct TensorQuotientSpace {
  QuotientFrameSpace left;
  QuotientFrameSpace right;

  int dim() const { return left.quotient_dim() * right.quotient_dim(); }

  /// Coordinates of the simple tensor f (x) g: kron of factor coordinates.
  Eigen::VectorXcd simple_tensor_coords(const NVector& f,
                                        const NVector& g) const;
};

/// The family F1(x1) (x) F2(x2) over the product measure. Node (i, j) sits
/// at flat index i * M2 + j (row-major, matching Kronecker layout), with
/// coordinate column kron(coords of F1(x1_i), coords of F2(x2_j)).
class TensorFrameFamily {
public:
  TensorFrameFamily(FrameFamily left, FrameFamily right);

  const FrameFamily& left() const { return left_; }
  const FrameFamily& right() const { return right_; }
  const MeasureSpace& measure() const { return measure_; }

  /// (q1 q2) x (M1 M2) matrix of tensor coordinate columns.
  const Eigen::MatrixXcd& coords() const { return coords_; }

  TensorQuotientSpace tensor_quotient() const {
    return TensorQuotientSpace{left_.quotient(), right_.quotient()};
  }

private:
  FrameFamily left_;
  FrameFamily right_;
  MeasureSpace measure_;
  Eigen::MatrixXcd coords_;
};

/// Result of building a verified tensor dual pair.
struct TensorDualResult {
  TensorFrameFamily dual;  ///< G1 (x) G2
  double left_residual;    ///< duality residual of (F1, G1)
  double right_residual;   ///< duality residual of (F2, G2)
};

/// Certified (not necessarily optimal) frame bounds for a tensor of dual
/// Bessel pairs, derived purely from the factor Bessel bounds.
struct DualPairCertificate {
  FrameBounds primal; ///< for F1 (x) F2: [1/(B2 D2), B1 D1]
  FrameBounds dual;   ///< for G1 (x) G2: [1/(B1 D1), B2 D2]
};

/// Tensor n-inner product on simple tensors: the product of the factor
/// n-inner products.
Cplx tensor_n_inner(const NVector& f, const NVector& g, const NVector& fp,
                    const NVector& gp, const AnchorTuple& left_anchors,
                    const AnchorTuple& right_anchors);

/// Induced tensor n-norm on a simple tensor: product of factor n-norms.
double tensor_n_norm(const NVector& f, const NVector& g,
                     const AnchorTuple& left_anchors,
                     const AnchorTuple& right_anchors);

/// Builds the tensor family over the product measure; unconditional (the
/// result is a frame exactly when both factors are).
TensorFrameFamily tensor_frame(const FrameFamily& f1, const FrameFamily& f2);

/// Frame operator of the tensor family, assembled by direct summation over
/// the product nodes (independent of the Kronecker shortcut, which tests
/// compare it against).
OperatorOnHF tensor_frame_operator(const TensorFrameFamily& family);

/// Optimal bounds of the tensor family, computed spectrally from the
/// node-sum operator.
FrameBounds tensor_bounds(const TensorFrameFamily& family);

/// Analysis coefficients of a simple tensor against the tensor family.
CoefficientFunction tensor_analysis(const TensorFrameFamily& family,
                                    const NVector& f, const NVector& g);

/// Reconstruction in tensor coordinates: sum_k mu_k phi_k coords(G_k) for
/// phi = tensor analysis against `family`; reproduces the input coordinates
/// when (family, dual) is a dual pair.
Eigen::VectorXcd tensor_reconstruct_coords(const TensorFrameFamily& family,
                                           const TensorFrameFamily& dual,
                                           const Eigen::VectorXcd& coords);

/// Verifies that (f1, g1) and (f2, g2) are dual pairs, then forms g1 (x) g2.
/// Throws NotADualError (carrying the worst residual) otherwise.
TensorDualResult tensor_dual(const FrameFamily& g1, const FrameFamily& g2,
                             const FrameFamily& f1, const FrameFamily& f2,
                             double tol = kDualTol);

/// Certifies frame bounds for the tensors of a dual pair of Bessel families
/// from the factor Bessel bounds alone (no tensor spectrum needed). Throws
/// NotADualError when a duality precondition fails.
DualPairCertificate dual_pair_bessel_check(const FrameFamily& f1,
                                           const FrameFamily& g1,
                                           const FrameFamily& f2,
                                           const FrameFamily& g2,
                                           double tol = kDualTol);

/// Multiplier of the tensor pair with the separable symbol
/// m(i, j) = m1_i * m2_j, assembled by product-node summation (tests compare
/// it against kron of the factor multipliers).
OperatorOnHF tensor_multiplier(const MultiplierSymbol& m1,
                               const MultiplierSymbol& m2,
                               const FrameFamily& f1, const FrameFamily& g1,
                               const FrameFamily& f2, const FrameFamily& g2);

} // namespace nframes
