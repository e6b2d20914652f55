#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "nframes/frames.hpp"
#include "nframes/measure.hpp"
#include "nframes/nip.hpp"
#include "nframes/rng.hpp"

// Test-local fixtures and oracles. The projection oracle here is written
// against the normal equations with a fully pivoted LU — sharing no code
// with the library's bordered determinant or its SVD-based quotient
// construction, so agreement between the two is meaningful evidence.
namespace testhelp {

using nframes::AmbientSpace;
using nframes::AnchorTuple;
using nframes::Cplx;
using nframes::FrameFamily;
using nframes::MeasureSpace;
using nframes::NVector;
using nframes::QuotientFrameSpace;
using nframes::Rng;

inline Eigen::VectorXcd rand_vec(Rng& rng, int d) {
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_gaussian();
  return v;
}

inline Eigen::MatrixXcd rand_mat(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_gaussian();
  return m;
}

inline AnchorTuple rand_anchors(Rng& rng, int d, int n) {
  const AmbientSpace space(d, n);
  for (;;) {
    AnchorTuple anchors(space, rand_mat(rng, d, n - 1));
    if (anchors.independence_ratio() >= 1e-2) return anchors;
  }
}

/// Gram factor and projection-formula n-inner product, via normal equations.
inline Cplx oracle_n_inner(const Eigen::MatrixXcd& anchors, const NVector& x,
                           const NVector& y, double* gram_out = nullptr) {
  const Eigen::MatrixXcd gram = anchors.adjoint() * anchors;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
  const double g = lu.determinant().real();
  const NVector x_perp = x - anchors * lu.solve(anchors.adjoint() * x);
  const NVector y_perp = y - anchors * lu.solve(anchors.adjoint() * y);
  if (gram_out != nullptr) *gram_out = g;
  return g * nframes::hdot(x_perp, y_perp);
}

/// d = 3, order 2, anchor e3.
inline QuotientFrameSpace instance_k_space() {
  Eigen::MatrixXcd anchor = Eigen::MatrixXcd::Zero(3, 1);
  anchor(2, 0) = 1.0;
  return nframes::build_quotient(AnchorTuple(AmbientSpace(3, 2), anchor));
}

/// Samples {e1, e2, (e1+e2)/sqrt(2)} over the counting measure; frame
/// operator [[1.5, 0.5], [0.5, 1.5]], optimal bounds (1, 2).
inline FrameFamily instance_k_family() {
  Eigen::MatrixXcd samples = Eigen::MatrixXcd::Zero(3, 3);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  samples(0, 0) = 1.0;
  samples(1, 1) = 1.0;
  samples(0, 2) = inv_sqrt2;
  samples(1, 2) = inv_sqrt2;
  return FrameFamily(samples, MeasureSpace(Eigen::VectorXd::Ones(3)),
                     instance_k_space());
}

/// A random frame family over the given quotient and measure whose weighted
/// coordinate matrix keeps a healthy singular-value ratio.
inline FrameFamily rand_frame(Rng& rng, const QuotientFrameSpace& qs,
                              const MeasureSpace& mu,
                              double min_ratio = 1e-2) {
  const int q = qs.quotient_dim();
  for (;;) {
    Eigen::MatrixXcd coords = rand_mat(rng, q, mu.node_count());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        coords * mu.weights().array().sqrt().matrix().asDiagonal());
    if (svd.singularValues()(q - 1) >= min_ratio * svd.singularValues()(0)) {
      Eigen::MatrixXcd samples = qs.from_coords(coords);
      samples += qs.anchors().vectors() *
                 rand_mat(rng, qs.anchors().count(), mu.node_count());
      return FrameFamily(std::move(samples), mu, qs);
    }
  }
}

inline MeasureSpace rand_measure(Rng& rng, int count) {
  Eigen::VectorXd weights(count);
  for (int i = 0; i < count; ++i) weights(i) = rng.uniform(0.5, 2.0);
  return MeasureSpace(std::move(weights));
}

} // namespace testhelp
