#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nframes/errors.hpp"
#include "nframes/nip.hpp"

namespace nframes {

/// A discretized measure space: M nodes with strictly positive weights.
/// Every integral downstream becomes a weighted sum over these nodes, taken
/// in ascending node order so results are bit-reproducible.
class MeasureSpace {
public:
  /// Plain node set with the given weights.
  explicit MeasureSpace(Eigen::VectorXd weights);

  int node_count() const { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }

  /// For spaces built by product_measure: node k corresponds to the pair
  /// (left index, right index) stored here; empty otherwise.
  const std::optional<std::vector<std::pair<int, int>>>& product_labels()
      const {
    return product_labels_;
  }

  /// Identical node count and bitwise-equal weights.
  bool same_as(const MeasureSpace& other) const;

private:
  friend MeasureSpace product_measure(const MeasureSpace& m1,
                                      const MeasureSpace& m2);

  Eigen::VectorXd weights_;
  std::optional<std::vector<std::pair<int, int>>> product_labels_;
};

/// An element of the representation space over (Omega, mu): one complex
/// coefficient per node.
struct CoefficientFunction {
  Eigen::VectorXcd values;
  MeasureSpace space;

  CoefficientFunction(Eigen::VectorXcd values_, MeasureSpace space_);
};

/// Product measure: node set is the Cartesian product in row-major order
/// (left index outer, right index inner) and weights multiply, matching the
/// Kronecker-product layout used by the tensor module.
MeasureSpace product_measure(const MeasureSpace& m1, const MeasureSpace& m2);

/// Weighted inner product sum_i mu_i * phi_i * conj(psi_i).
Cplx l2_inner(const CoefficientFunction& phi, const CoefficientFunction& psi);

/// sqrt(l2_inner(phi, phi)).
double l2_norm(const CoefficientFunction& phi);

} // namespace nframes
