#include "nframes/tensor.hpp"

#include <string>
#include <utility>

namespace nframes {

namespace {

/// Kronecker product of arbitrary dense complex matrices.
Eigen::MatrixXcd kron_dense(const Eigen::MatrixXcd& a,
                            const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_dual(const FrameFamily& family, const FrameFamily& dual,
                  const char* which, double tol) {
  const double residual = duality_residual(family, dual);
  if (residual > tol) {
    throw NotADualError(std::string(which) +
                            " families are not a dual pair: residual " +
                            std::to_string(residual) + " exceeds " +
                            std::to_string(tol),
                        residual);
  }
}

} // namespace

OperatorOnHF kron_operator(const OperatorOnHF& q, const OperatorOnHF& t) {
  return kron_dense(q, t);
}

Eigen::VectorXcd TensorQuotientSpace::simple_tensor_coords(
    const NVector& f, const NVector& g) const {
  return kron_dense(left.to_coords(f), right.to_coords(g));
}

TensorFrameFamily::TensorFrameFamily(FrameFamily left, FrameFamily right)
    : left_(std::move(left)),
      right_(std::move(right)),
      measure_(product_measure(left_.measure(), right_.measure())) {
  // Column i * M2 + j = kron(left coords i, right coords j); assembling the
  // full matrix as kron keeps the layout identical to the node order.
  coords_ = kron_dense(left_.coords(), right_.coords());
}

Cplx tensor_n_inner(const NVector& f, const NVector& g, const NVector& fp,
                    const NVector& gp, const AnchorTuple& left_anchors,
                    const AnchorTuple& right_anchors) {
  return n_inner(f, fp, left_anchors) * n_inner(g, gp, right_anchors);
}

double tensor_n_norm(const NVector& f, const NVector& g,
                     const AnchorTuple& left_anchors,
                     const AnchorTuple& right_anchors) {
  return n_norm(f, left_anchors) * n_norm(g, right_anchors);
}

TensorFrameFamily tensor_frame(const FrameFamily& f1, const FrameFamily& f2) {
  return TensorFrameFamily(f1, f2);
}

OperatorOnHF tensor_frame_operator(const TensorFrameFamily& family) {
  const Eigen::MatrixXcd& coords = family.coords();
  const Eigen::VectorXd& weights = family.measure().weights();
  const int dim = static_cast<int>(coords.rows());
  OperatorOnHF s = OperatorOnHF::Zero(dim, dim);
  for (int k = 0; k < family.measure().node_count(); ++k) {
    s.noalias() += weights(k) * coords.col(k) * coords.col(k).adjoint();
  }
  return 0.5 * (s + s.adjoint());
}

FrameBounds tensor_bounds(const TensorFrameFamily& family) {
  const Eigen::VectorXd spectrum =
      operator_spectrum(tensor_frame_operator(family));
  FrameBounds bounds;
  bounds.upper = spectrum(spectrum.size() - 1) > 0.0
                     ? spectrum(spectrum.size() - 1)
                     : 0.0;
  bounds.lower = spectrum(0) > 0.0 ? spectrum(0) : 0.0;
  return bounds;
}

CoefficientFunction tensor_analysis(const TensorFrameFamily& family,
                                    const NVector& f, const NVector& g) {
  const Eigen::VectorXcd coords =
      family.tensor_quotient().simple_tensor_coords(f, g);
  Eigen::VectorXcd values = family.coords().adjoint() * coords;
  return CoefficientFunction(std::move(values), family.measure());
}

Eigen::VectorXcd tensor_reconstruct_coords(const TensorFrameFamily& family,
                                           const TensorFrameFamily& dual,
                                           const Eigen::VectorXcd& coords) {
  if (coords.size() != family.coords().rows()) {
    throw InputError("tensor coordinates have length " +
                     std::to_string(coords.size()) + ", expected " +
                     std::to_string(family.coords().rows()));
  }
  if (!family.measure().same_as(dual.measure()) ||
      dual.coords().rows() != family.coords().rows()) {
    throw InputError("tensor dual does not match the analysis family");
  }
  const Eigen::VectorXcd phi = family.coords().adjoint() * coords;
  const Eigen::VectorXcd weighted =
      phi.cwiseProduct(family.measure().weights().cast<Cplx>());
  return dual.coords() * weighted;
}

TensorDualResult tensor_dual(const FrameFamily& g1, const FrameFamily& g2,
                             const FrameFamily& f1, const FrameFamily& f2,
                             double tol) {
  const double left_residual = duality_residual(f1, g1);
  const double right_residual = duality_residual(f2, g2);
  const double worst = left_residual > right_residual ? left_residual
                                                      : right_residual;
  if (worst > tol) {
    throw NotADualError("factor families are not dual pairs: max residual " +
                            std::to_string(worst) + " exceeds " +
                            std::to_string(tol),
                        worst);
  }
  return TensorDualResult{TensorFrameFamily(g1, g2), left_residual,
                          right_residual};
}

DualPairCertificate dual_pair_bessel_check(const FrameFamily& f1,
                                           const FrameFamily& g1,
                                           const FrameFamily& f2,
                                           const FrameFamily& g2,
                                           double tol) {
  require_dual(f1, g1, "left", tol);
  require_dual(f2, g2, "right", tol);
  const double b1 = frame_bounds(f1).upper;
  const double b2 = frame_bounds(g1).upper;
  const double d1 = frame_bounds(f2).upper;
  const double d2 = frame_bounds(g2).upper;
  if (!(b1 > 0.0 && b2 > 0.0 && d1 > 0.0 && d2 > 0.0)) {
    throw InputError("dual-pair certificate needs nonzero Bessel bounds");
  }
  DualPairCertificate cert;
  cert.primal = FrameBounds{1.0 / (b2 * d2), b1 * d1};
  cert.dual = FrameBounds{1.0 / (b1 * d1), b2 * d2};
  return cert;
}

OperatorOnHF tensor_multiplier(const MultiplierSymbol& m1,
                               const MultiplierSymbol& m2,
                               const FrameFamily& f1, const FrameFamily& g1,
                               const FrameFamily& f2, const FrameFamily& g2) {
  if (!m1.space().same_as(f1.measure()) || !m2.space().same_as(f2.measure())) {
    throw InputError("tensor multiplier symbols must match the factor "
                     "measures");
  }
  if (!f1.compatible_with(g1) || !f2.compatible_with(g2)) {
    throw InputError("tensor multiplier families must share measure and "
                     "quotient factorwise");
  }
  const TensorFrameFamily analysis_family(f1, f2);
  const TensorFrameFamily synthesis_family(g1, g2);
  const int m_total = analysis_family.measure().node_count();
  const int n2 = f2.node_count();
  const Eigen::VectorXd& weights = analysis_family.measure().weights();

  // Product-node summation with the separable symbol m1_i * m2_j, taken in
  // flat node order; the Kronecker factorization is checked against this.
  const int dim = static_cast<int>(analysis_family.coords().rows());
  OperatorOnHF op = OperatorOnHF::Zero(dim, dim);
  for (int k = 0; k < m_total; ++k) {
    const Cplx symbol = m1.values()(k / n2) * m2.values()(k % n2);
    op.noalias() += weights(k) * symbol * synthesis_family.coords().col(k) *
                    analysis_family.coords().col(k).adjoint();
  }
  return op;
}

} // namespace nframes
