#include "nframes/multiplier.hpp"

#include <cmath>
#include <string>

namespace nframes {

MultiplierSymbol::MultiplierSymbol(Eigen::VectorXcd values, MeasureSpace space)
    : values_(std::move(values)), space_(std::move(space)) {
  if (values_.size() != space_.node_count()) {
    throw InputError("multiplier symbol has " + std::to_string(values_.size()) +
                     " values for a measure space with " +
                     std::to_string(space_.node_count()) + " nodes");
  }
  sup_norm_ = values_.size() > 0 ? values_.cwiseAbs().maxCoeff() : 0.0;
}

OperatorOnHF multiplier_operator(const MultiplierSymbol& symbol,
                                 const FrameFamily& analysis_family,
                                 const FrameFamily& synthesis_family) {
  if (!analysis_family.compatible_with(synthesis_family)) {
    throw InputError(
        "multiplier families must share measure and quotient space");
  }
  if (!symbol.space().same_as(analysis_family.measure())) {
    throw InputError("multiplier symbol does not match the family measure");
  }
  const Eigen::VectorXcd scaled = symbol.values().cwiseProduct(
      analysis_family.measure().weights().cast<Cplx>());
  return synthesis_family.coords() * scaled.asDiagonal() *
         analysis_family.coords().adjoint();
}

double multiplier_norm_bound(const MultiplierSymbol& symbol, double b1,
                             double b2) {
  if (b1 < 0.0 || b2 < 0.0) {
    throw InputError("Bessel bounds must be nonnegative");
  }
  return symbol.sup_norm() * std::sqrt(b1 * b2);
}

} // namespace nframes
