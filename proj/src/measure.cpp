#include "nframes/measure.hpp"

#include <cmath>
#include <string>

namespace nframes {

MeasureSpace::MeasureSpace(Eigen::VectorXd weights)
    : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw InputError("a measure space needs at least one node");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_(i) > 0.0)) {
      throw InputError("measure weights must be strictly positive; weight " +
                       std::to_string(i) + " is " +
                       std::to_string(weights_(i)));
    }
  }
}

bool MeasureSpace::same_as(const MeasureSpace& other) const {
  return weights_.size() == other.weights_.size() &&
         (weights_ - other.weights_).squaredNorm() == 0.0;
}

CoefficientFunction::CoefficientFunction(Eigen::VectorXcd values_,
                                         MeasureSpace space_)
    : values(std::move(values_)), space(std::move(space_)) {
  if (values.size() != space.node_count()) {
    throw InputError("coefficient function has " +
                     std::to_string(values.size()) +
                     " values for a measure space with " +
                     std::to_string(space.node_count()) + " nodes");
  }
}

MeasureSpace product_measure(const MeasureSpace& m1, const MeasureSpace& m2) {
  const int n1 = m1.node_count();
  const int n2 = m2.node_count();
  Eigen::VectorXd weights(static_cast<Eigen::Index>(n1) * n2);
  std::vector<std::pair<int, int>> labels;
  labels.reserve(static_cast<std::size_t>(n1) * n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      weights(static_cast<Eigen::Index>(i) * n2 + j) =
          m1.weights()(i) * m2.weights()(j);
      labels.emplace_back(i, j);
    }
  }
  MeasureSpace out(std::move(weights));
  out.product_labels_ = std::move(labels);
  return out;
}

Cplx l2_inner(const CoefficientFunction& phi, const CoefficientFunction& psi) {
  if (!phi.space.same_as(psi.space)) {
    throw InputError(
        "l2_inner arguments live on different measure spaces");
  }
  Cplx sum = 0.0;
  for (Eigen::Index i = 0; i < phi.values.size(); ++i) {
    sum += phi.space.weights()(i) * phi.values(i) * std::conj(psi.values(i));
  }
  return sum;
}

double l2_norm(const CoefficientFunction& phi) {
  const double sq = l2_inner(phi, phi).real();
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

} // namespace nframes
