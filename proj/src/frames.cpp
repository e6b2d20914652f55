#include "nframes/frames.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nframes {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hermitian_eigen(
    const OperatorOnHF& op) {
  OperatorOnHF sym = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("Hermitian eigendecomposition failed to converge");
  }
  return solver;
}

FrameBounds bounds_from_spectrum(const Eigen::VectorXd& eigenvalues) {
  FrameBounds bounds;
  bounds.upper = eigenvalues(eigenvalues.size() - 1);
  // The operator is positive semidefinite by construction; tiny negative
  // lower eigenvalues are rounding noise and get clamped.
  bounds.lower = eigenvalues(0) > 0.0 ? eigenvalues(0) : 0.0;
  if (bounds.upper < 0.0) bounds.upper = 0.0;
  return bounds;
}

OperatorOnHF assemble_frame_operator(const Eigen::MatrixXcd& coords,
                                     const Eigen::VectorXd& weights) {
  OperatorOnHF s = coords * weights.asDiagonal() * coords.adjoint();
  return 0.5 * (s + s.adjoint());
}

} // namespace

FrameFamily::FrameFamily(Eigen::MatrixXcd samples, MeasureSpace measure,
                         QuotientFrameSpace quotient)
    : samples_(std::move(samples)),
      measure_(std::move(measure)),
      quotient_(std::move(quotient)) {
  if (samples_.rows() != quotient_.ambient_dim()) {
    throw InputError("frame samples have dimension " +
                     std::to_string(samples_.rows()) +
                     ", ambient space has dimension " +
                     std::to_string(quotient_.ambient_dim()));
  }
  if (samples_.cols() != measure_.node_count()) {
    throw InputError("frame family has " + std::to_string(samples_.cols()) +
                     " samples for a measure space with " +
                     std::to_string(measure_.node_count()) + " nodes");
  }
  coords_ = quotient_.to_coords(samples_);
}

bool FrameFamily::compatible_with(const FrameFamily& other) const {
  return measure_.same_as(other.measure_) &&
         quotient_.same_as(other.quotient_);
}

CoefficientFunction analysis(const FrameFamily& family, const NVector& f) {
  // <f, F(w_i) | anchors> = <c_f, c_i> in quotient coordinates, node by node.
  const Eigen::VectorXcd cf = family.quotient().to_coords(f);
  Eigen::VectorXcd values = family.coords().adjoint() * cf;
  return CoefficientFunction(std::move(values), family.measure());
}

NVector synthesis(const FrameFamily& family, const CoefficientFunction& phi) {
  if (!phi.space.same_as(family.measure())) {
    throw InputError("coefficient function does not match the family's "
                     "measure space");
  }
  // Weighted superposition in the ambient space, summed in node order, then
  // projected onto the orthogonal complement to obtain the representative.
  const int d = family.quotient().ambient_dim();
  NVector sum = NVector::Zero(d);
  for (int i = 0; i < family.node_count(); ++i) {
    sum += family.measure().weights()(i) * phi.values(i) *
           family.samples().col(i);
  }
  const Eigen::MatrixXcd& basis = family.quotient().comp_basis();
  return basis * (basis.adjoint() * sum);
}

OperatorOnHF frame_operator(const FrameFamily& family) {
  return assemble_frame_operator(family.coords(),
                                 family.measure().weights());
}

FrameBounds frame_bounds(const FrameFamily& family) {
  return bounds_from_spectrum(operator_spectrum(frame_operator(family)));
}

FrameBounds bounds_from_coordinates(const Eigen::MatrixXcd& coords,
                                    const Eigen::VectorXd& weights) {
  if (coords.cols() != weights.size()) {
    throw InputError("coordinate family has " + std::to_string(coords.cols()) +
                     " columns for " + std::to_string(weights.size()) +
                     " weights");
  }
  return bounds_from_spectrum(
      operator_spectrum(assemble_frame_operator(coords, weights)));
}

FrameVerdict is_frame(const FrameFamily& family, double tol) {
  if (!(tol > 0.0)) {
    throw InputError("frame tolerance must be positive");
  }
  FrameVerdict verdict;
  verdict.bounds = frame_bounds(family);
  verdict.spectral_verdict = verdict.bounds.lower > tol * verdict.bounds.upper;

  // Independent route: the synthesis map hits all of the derived space iff
  // the weighted coordinate matrix C diag(sqrt(mu)) has full row rank, read
  // off its singular values at the square-root tolerance.
  Eigen::MatrixXcd weighted =
      family.coords() *
      family.measure().weights().array().sqrt().matrix().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(weighted);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin =
      sv.size() >= family.quotient().quotient_dim() ? sv(sv.size() - 1) : 0.0;
  verdict.surjective_verdict =
      weighted.rows() <= weighted.cols() && smax > 0.0 &&
      smin > std::sqrt(tol) * smax;

  verdict.frame = verdict.spectral_verdict;
  return verdict;
}

FrameFamily canonical_dual(const FrameFamily& family, double tol) {
  const FrameVerdict verdict = is_frame(family, tol);
  if (!verdict.frame) {
    throw SingularFrameError(
        "family is not a frame: lambda_min " +
            std::to_string(verdict.bounds.lower) + " vs lambda_max " +
            std::to_string(verdict.bounds.upper),
        verdict.bounds.lower, verdict.bounds.upper);
  }
  const auto solver = hermitian_eigen(frame_operator(family));
  const OperatorOnHF inverse =
      solver.eigenvectors() *
      solver.eigenvalues().cwiseInverse().asDiagonal() *
      solver.eigenvectors().adjoint();
  Eigen::MatrixXcd dual_samples =
      family.quotient().from_coords(inverse * family.coords());
  return FrameFamily(std::move(dual_samples), family.measure(),
                     family.quotient());
}

NVector reconstruct(const FrameFamily& family, const FrameFamily& dual,
                    const NVector& f) {
  if (!family.compatible_with(dual)) {
    throw InputError(
        "analysis and synthesis families must share measure and quotient");
  }
  return synthesis(dual, analysis(family, f));
}

FrameFamily transform(const FrameFamily& family, const OperatorOnHF& u) {
  const int q = family.quotient().quotient_dim();
  if (u.rows() != q || u.cols() != q) {
    throw InputError("operator must be " + std::to_string(q) + "x" +
                     std::to_string(q) + " on quotient coordinates");
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(sv.size() - 1) < kRankTol * sv(0)) {
    throw InputError("transform operator is singular (singular-value ratio "
                     "below rank tolerance)");
  }
  Eigen::MatrixXcd image_samples =
      family.quotient().from_coords(u * family.coords());
  return FrameFamily(std::move(image_samples), family.measure(),
                     family.quotient());
}

SynthesisMatrix synthesis_matrix(const FrameFamily& family) {
  return SynthesisMatrix{family.coords(), family.measure().weights()};
}

double synthesis_operator_norm(const FrameFamily& family) {
  Eigen::MatrixXcd weighted =
      family.coords() *
      family.measure().weights().array().sqrt().matrix().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(weighted);
  return svd.singularValues()(0);
}

Eigen::MatrixXcd synthesis_pseudo_inverse(const FrameFamily& family,
                                          double tol) {
  const FrameVerdict verdict = is_frame(family, tol);
  if (!verdict.frame) {
    throw SingularFrameError(
        "pseudo-inverse requested for a non-frame family",
        verdict.bounds.lower, verdict.bounds.upper);
  }
  // T = C diag(mu): q x M.
  Eigen::MatrixXcd t =
      family.coords() * family.measure().weights().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd inverted = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankTol * sv(0)) inverted(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inverted.asDiagonal() * svd.matrixU().adjoint();
}

double duality_residual(const FrameFamily& family, const FrameFamily& dual) {
  if (!family.compatible_with(dual)) {
    throw InputError(
        "duality residual requires families sharing measure and quotient");
  }
  const int q = family.quotient().quotient_dim();
  OperatorOnHF mixed = dual.coords() *
                       family.measure().weights().asDiagonal() *
                       family.coords().adjoint();
  return spectral_norm(mixed - OperatorOnHF::Identity(q, q));
}

double spectral_norm(const OperatorOnHF& op) {
  if (op.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op);
  return svd.singularValues()(0);
}

Eigen::VectorXd operator_spectrum(const OperatorOnHF& op) {
  return hermitian_eigen(op).eigenvalues();
}

} // namespace nframes
