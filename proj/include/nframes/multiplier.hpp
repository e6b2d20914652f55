#pragma once

#include <Eigen/Dense>

#include "nframes/frames.hpp"
#include "nframes/measure.hpp"

namespace nframes {

/// A pointwise symbol m : Omega -> C together with its sup norm.
class MultiplierSymbol {
public:
  MultiplierSymbol(Eigen::VectorXcd values, MeasureSpace space);

  const Eigen::VectorXcd& values() const { return values_; }
  const MeasureSpace& space() const { return space_; }
  double sup_norm() const { return sup_norm_; }

private:
  Eigen::VectorXcd values_;
  MeasureSpace space_;
  double sup_norm_ = 0.0;
};

/// The Bessel multiplier f -> sum_i mu_i m_i <f, F(w_i) | anchors> G(w_i)
/// as a q x q operator on quotient coordinates: C_G diag(mu .* m) C_F^*.
OperatorOnHF multiplier_operator(const MultiplierSymbol& symbol,
                                 const FrameFamily& analysis_family,
                                 const FrameFamily& synthesis_family);

/// The guaranteed bound sup|m| * sqrt(B1 * B2) on the multiplier's spectral
/// norm, for Bessel bounds B1 (analysis family) and B2 (synthesis family).
double multiplier_norm_bound(const MultiplierSymbol& symbol, double b1,
                             double b2);

} // namespace nframes
