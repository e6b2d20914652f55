#include "nframes/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <utility>

#include <Eigen/Dense>

#include "nframes/frames.hpp"
#include "nframes/measure.hpp"
#include "nframes/multiplier.hpp"
#include "nframes/nip.hpp"
#include "nframes/rng.hpp"
#include "nframes/tensor.hpp"

namespace nframes {

namespace {

constexpr double kTiny = 1e-300;

int env_thread_count() {
  const char* raw = std::getenv("NFRAMES_THREADS");
  if (raw == nullptr) return 1;
  char* end = nullptr;
  const long parsed = std::strtol(raw, &end, 10);
  if (end == raw || parsed < 1) return 1;
  return static_cast<int>(std::min<long>(parsed, 64));
}

/// Runs `count` independent trials and folds the per-check residual vectors
/// with max() in ascending trial order. Each trial draws from its own seed
/// stream, and the reduction order is fixed, so the outcome is identical for
/// every thread count.
std::vector<double> max_over_trials(
    int count, std::size_t check_count, uint64_t seed, uint64_t stream_base,
    const std::function<std::vector<double>(Rng&, int)>& trial) {
  std::vector<std::vector<double>> per_trial(count);
  std::vector<std::exception_ptr> failures(count);
  const int threads = std::min(env_thread_count(), count);

  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      try {
        Rng rng(mix_seed(seed, stream_base + static_cast<uint64_t>(i)));
        per_trial[i] = trial(rng, i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    run_range(0, count);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(count, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& worker : pool) worker.join();
  }

  for (int i = 0; i < count; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
  }

  std::vector<double> worst(check_count, 0.0);
  for (int i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < check_count; ++k) {
      worst[k] = std::max(worst[k], per_trial[i][k]);
    }
  }
  return worst;
}

SuiteCheck make_check(std::string id, double residual, double tolerance) {
  SuiteCheck check;
  check.id = std::move(id);
  check.residual = residual;
  check.tolerance = tolerance;
  check.pass = residual <= tolerance;
  return check;
}

// ---------------------------------------------------------------------------
// Random instance generators.
// ---------------------------------------------------------------------------

Eigen::VectorXcd random_vector(Rng& rng, int d) {
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_gaussian();
  return v;
}

Eigen::MatrixXcd random_matrix(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_gaussian();
  return m;
}

/// Anchors rejection-sampled to a healthy independence ratio, so that
/// Gram factors and projections stay well-conditioned in the suites.
AnchorTuple random_anchors(Rng& rng, int d, int n) {
  const AmbientSpace space(d, n);
  for (;;) {
    AnchorTuple anchors(space, random_matrix(rng, d, n - 1));
    if (anchors.independence_ratio() >= 1e-2) return anchors;
  }
}

QuotientFrameSpace random_quotient(Rng& rng, int d, int n) {
  return build_quotient(random_anchors(rng, d, n));
}

MeasureSpace random_measure(Rng& rng, int node_count) {
  Eigen::VectorXd weights(node_count);
  for (int i = 0; i < node_count; ++i) weights(i) = rng.uniform(0.5, 2.0);
  return MeasureSpace(std::move(weights));
}

/// Ambient samples for given quotient coordinates, plus a random component
/// inside the anchor span so the families genuinely exercise the projection
/// (frame samples are not required to live inside the complement).
Eigen::MatrixXcd samples_for_coords(Rng& rng, const QuotientFrameSpace& qs,
                                    const Eigen::MatrixXcd& coords) {
  Eigen::MatrixXcd samples = qs.from_coords(coords);
  samples += qs.anchors().vectors() *
             random_matrix(rng, qs.anchors().count(),
                           static_cast<int>(coords.cols()));
  return samples;
}

/// Random frame over the given measure, rejection-sampled so the weighted
/// coordinate matrix keeps sigma_min >= min_sigma_ratio * sigma_max.
FrameFamily random_frame(Rng& rng, const QuotientFrameSpace& qs,
                         const MeasureSpace& mu,
                         double min_sigma_ratio = 1e-2) {
  const int q = qs.quotient_dim();
  const int m = mu.node_count();
  for (;;) {
    Eigen::MatrixXcd coords = random_matrix(rng, q, m);
    Eigen::MatrixXcd weighted =
        coords * mu.weights().array().sqrt().matrix().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(weighted);
    const auto& sv = svd.singularValues();
    if (sv.size() >= q && sv(q - 1) >= min_sigma_ratio * sv(0)) {
      return FrameFamily(samples_for_coords(rng, qs, coords), mu, qs);
    }
  }
}

/// A family whose coordinate columns span only r directions, 1 <= r < q.
/// Rank zero is deliberately excluded: a family lying entirely inside the
/// anchor span has all-zero quotient coordinates in exact arithmetic, so the
/// coordinates actually computed for it are pure rounding noise, and the
/// scale-invariant spectral tests say nothing meaningful about noise.
/// Callers must provide q >= 2.
FrameFamily rank_deficient_family(Rng& rng, const QuotientFrameSpace& qs,
                                  const MeasureSpace& mu) {
  const int q = qs.quotient_dim();
  if (q < 2) throw Error("rank_deficient_family needs a quotient with q >= 2");
  const int m = mu.node_count();
  const int rank =
      1 + static_cast<int>(rng.below(static_cast<uint64_t>(q - 1)));
  const Eigen::MatrixXcd coords =
      random_matrix(rng, q, rank) * random_matrix(rng, rank, m);
  return FrameFamily(samples_for_coords(rng, qs, coords), mu, qs);
}

/// Modest problem sizes: order 2..4, a few spare ambient dimensions, and a
/// node count comfortably above the quotient dimension.
struct Dims {
  int d;
  int n;
  int m;
};

Dims random_dims(Rng& rng) {
  Dims dims;
  dims.n = 2 + static_cast<int>(rng.below(3));
  dims.d = dims.n + static_cast<int>(rng.below(5));
  const int q = dims.d - dims.n + 1;
  dims.m = q + 2 + static_cast<int>(rng.below(7));
  return dims;
}

/// The worked 3-dimensional example used across the suites: order 2, anchor
/// e3, counting measure on three nodes, samples {e1, e2, (e1+e2)/sqrt(2)}.
/// Its frame operator is [[1.5, 0.5], [0.5, 1.5]] with optimal bounds (1, 2).
FrameFamily canonical_example() {
  const AmbientSpace space(3, 2);
  Eigen::MatrixXcd anchor = Eigen::MatrixXcd::Zero(3, 1);
  anchor(2, 0) = 1.0;
  const QuotientFrameSpace qs = build_quotient(AnchorTuple(space, anchor));

  Eigen::MatrixXcd samples = Eigen::MatrixXcd::Zero(3, 3);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  samples(0, 0) = 1.0;
  samples(1, 1) = 1.0;
  samples(0, 2) = inv_sqrt2;
  samples(1, 2) = inv_sqrt2;
  return FrameFamily(samples, MeasureSpace(Eigen::VectorXd::Ones(3)), qs);
}

/// Independent projection-formula oracle: g * <P_perp x, P_perp y> computed
/// through the anchor normal equations and an LU determinant — no shared
/// code with either the bordered-determinant path or build_quotient's SVD.
Cplx projection_oracle(const Eigen::MatrixXcd& anchors, const NVector& x,
                       const NVector& y, double* gram_out = nullptr) {
  const Eigen::MatrixXcd gram = anchors.adjoint() * anchors;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(gram);
  const double g = lu.determinant().real();
  const NVector x_perp = x - anchors * lu.solve(anchors.adjoint() * x);
  const NVector y_perp = y - anchors * lu.solve(anchors.adjoint() * y);
  if (gram_out != nullptr) *gram_out = g;
  return g * hdot(x_perp, y_perp);
}

// ---------------------------------------------------------------------------
// Suites. Each returns worst-case residuals across its trials, compared
// against the pinned tolerances.
// ---------------------------------------------------------------------------

SuiteResult suite_inner_two_route(uint64_t seed, uint64_t stream_base) {
  const auto worst = max_over_trials(
      500, 1, seed, stream_base, [](Rng& rng, int) {
        const Dims dims = random_dims(rng);
        const AnchorTuple anchors = random_anchors(rng, dims.d, dims.n);
        const NVector x = random_vector(rng, dims.d);
        const NVector y = random_vector(rng, dims.d);

        const Cplx via_determinant = n_inner(x, y, anchors);
        double g = 0.0;
        const Cplx via_projection =
            projection_oracle(anchors.vectors(), x, y, &g);
        const double scale = g * x.norm() * y.norm() + kTiny;
        return std::vector<double>{
            std::abs(via_determinant - via_projection) / scale};
      });
  SuiteResult result;
  result.name = "inner-two-route";
  result.checks.push_back(
      make_check("gram-vs-projection", worst[0], 1e-10));
  return result;
}

SuiteResult suite_inner_axioms(uint64_t seed, uint64_t stream_base) {
  const auto worst = max_over_trials(
      500, 5, seed, stream_base, [](Rng& rng, int) {
        // Orders 3..4 so anchor permutations are non-trivial.
        const int n = 3 + static_cast<int>(rng.below(2));
        const int d = n + static_cast<int>(rng.below(4));
        const AnchorTuple anchors = random_anchors(rng, d, n);
        const Eigen::MatrixXcd& a = anchors.vectors();

        const NVector x = random_vector(rng, d);
        const NVector x2 = random_vector(rng, d);
        const NVector y = random_vector(rng, d);

        double g = 0.0;
        projection_oracle(a, x, y, &g);
        const double scale =
            g * (x.norm() + x2.norm()) * y.norm() + kTiny;

        const Cplx v_xy = n_inner(x, y, anchors);
        const Cplx v_yx = n_inner(y, x, anchors);
        const double conj_residual = std::abs(v_xy - std::conj(v_yx)) / scale;

        // Random permutation of the anchor columns (Fisher-Yates).
        Eigen::MatrixXcd shuffled = a;
        for (int i = static_cast<int>(shuffled.cols()) - 1; i > 0; --i) {
          const int j = static_cast<int>(rng.below(i + 1));
          shuffled.col(i).swap(shuffled.col(j));
        }
        const AnchorTuple permuted(anchors.space(), shuffled);
        const double perm_residual =
            std::abs(v_xy - n_inner(x, y, permuted)) / scale;

        const Cplx alpha = rng.complex_gaussian();
        const Cplx beta = rng.complex_gaussian();
        const Cplx combined = n_inner(alpha * x + beta * x2, y, anchors);
        const Cplx expanded = alpha * v_xy + beta * n_inner(x2, y, anchors);
        const double linear_residual =
            std::abs(combined - expanded) /
            ((1.0 + std::abs(alpha) + std::abs(beta)) * scale);

        const Cplx v_xx = n_inner(x, x, anchors);
        const double positive_scale = g * x.squaredNorm() + kTiny;
        const double positivity_residual =
            std::max(std::max(-v_xx.real(), 0.0), std::abs(v_xx.imag())) /
            positive_scale;

        // A vector inside the anchor span must be annihilated.
        const NVector z = a * random_vector(rng, anchors.count());
        const double z_scale = g * z.squaredNorm() + kTiny;
        const double dependent_residual =
            std::abs(n_inner(z, z, anchors)) / z_scale;

        return std::vector<double>{conj_residual, perm_residual,
                                   linear_residual, positivity_residual,
                                   dependent_residual};
      });
  SuiteResult result;
  result.name = "inner-axioms";
  result.checks.push_back(make_check("conjugate-symmetry", worst[0], 1e-10));
  result.checks.push_back(make_check("anchor-permutation", worst[1], 1e-10));
  result.checks.push_back(make_check("first-slot-linearity", worst[2], 1e-10));
  result.checks.push_back(make_check("positivity", worst[3], 1e-10));
  result.checks.push_back(make_check("dependent-annihilation", worst[4],
                                     1e-10));
  return result;
}

SuiteResult suite_frame_inequality(uint64_t seed, uint64_t stream_base) {
  const auto worst = max_over_trials(
      50, 2, seed, stream_base, [](Rng& rng, int) {
        const Dims dims = random_dims(rng);
        const QuotientFrameSpace qs = random_quotient(rng, dims.d, dims.n);
        const MeasureSpace mu = random_measure(rng, dims.m);
        const FrameFamily family = random_frame(rng, qs, mu);
        const FrameBounds bounds = frame_bounds(family);

        // Two-sided inequality on sampled vectors, against the
        // determinant-route norm (independent of the coordinate machinery).
        double inequality_residual = 0.0;
        for (int rep = 0; rep < 1000; ++rep) {
          NVector f = random_vector(rng, dims.d);
          const CoefficientFunction phi = analysis(family, f);
          const double energy = l2_inner(phi, phi).real();
          const double norm_sq = n_inner(f, f, family.quotient().anchors())
                                     .real();
          const double scale = bounds.upper * norm_sq + kTiny;
          const double low_violation =
              (bounds.lower * norm_sq - energy) / scale;
          const double high_violation =
              (energy - bounds.upper * norm_sq) / scale;
          inequality_residual = std::max(
              {inequality_residual, low_violation, high_violation});
        }

        // Every eigenvalue must sit inside [A, B] up to rounding.
        const Eigen::VectorXd spectrum =
            operator_spectrum(frame_operator(family));
        double sandwich_residual = 0.0;
        for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
          sandwich_residual = std::max(
              {sandwich_residual,
               (bounds.lower - spectrum(i)) / (bounds.upper + kTiny),
               (spectrum(i) - bounds.upper) / (bounds.upper + kTiny)});
        }
        return std::vector<double>{std::max(inequality_residual, 0.0),
                                   std::max(sandwich_residual, 0.0)};
      });

  const FrameBounds canonical = frame_bounds(canonical_example());
  const double canonical_residual = std::max(
      std::abs(canonical.lower - 1.0), std::abs(canonical.upper - 2.0));

  SuiteResult result;
  result.name = "frame-inequality";
  result.checks.push_back(make_check("two-sided-inequality", worst[0], 1e-9));
  result.checks.push_back(make_check("spectrum-sandwich", worst[1], 1e-10));
  result.checks.push_back(
      make_check("canonical-example-bounds", canonical_residual, 1e-9));
  return result;
}

SuiteResult suite_synthesis_norm_adjoint(uint64_t seed,
                                         uint64_t stream_base) {
  const auto worst = max_over_trials(
      200, 2, seed, stream_base, [](Rng& rng, int) {
        const Dims dims = random_dims(rng);
        const QuotientFrameSpace qs = random_quotient(rng, dims.d, dims.n);
        const MeasureSpace mu = random_measure(rng, dims.m);
        const FrameFamily family = random_frame(rng, qs, mu);

        // Norm route 1: largest singular value of the weighted coordinate
        // matrix. Norm route 2: sqrt of the largest frame-operator
        // eigenvalue. The first must not exceed the second.
        const double norm_svd = synthesis_operator_norm(family);
        const double norm_spectral = std::sqrt(frame_bounds(family).upper);
        const double norm_residual = std::max(0.0, norm_svd - norm_spectral);

        const CoefficientFunction phi(random_vector(rng, dims.m), mu);
        const NVector f = random_vector(rng, dims.d);
        const Cplx lhs = n_inner(synthesis(family, phi), f, qs.anchors());
        const Cplx rhs = l2_inner(phi, analysis(family, f));
        const double scale =
            norm_svd * l2_norm(phi) * n_norm(f, qs.anchors()) + kTiny;
        const double adjoint_residual = std::abs(lhs - rhs) / scale;

        return std::vector<double>{norm_residual, adjoint_residual};
      });
  SuiteResult result;
  result.name = "synthesis-norm-adjoint";
  result.checks.push_back(make_check("norm-vs-upper-bound", worst[0], 1e-9));
  result.checks.push_back(make_check("adjoint-identity", worst[1], 1e-10));
  return result;
}

SuiteResult suite_frame_surjectivity(uint64_t seed, uint64_t stream_base) {
  const auto worst = max_over_trials(
      200, 2, seed, stream_base, [](Rng& rng, int trial) {
        // Every fourth family is engineered to be rank-deficient; that
        // needs a quotient with at least two directions to leave one out.
        const bool deficient = trial % 4 == 3;
        Dims dims = random_dims(rng);
        if (deficient && dims.d - dims.n + 1 < 2) {
          ++dims.d;
          ++dims.m;
        }
        const QuotientFrameSpace qs = random_quotient(rng, dims.d, dims.n);
        const MeasureSpace mu = random_measure(rng, dims.m);
        const FrameFamily family =
            deficient ? rank_deficient_family(rng, qs, mu)
                      : random_frame(rng, qs, mu, 1e-3);

        const FrameVerdict verdict = is_frame(family);
        const double disagreement =
            verdict.spectral_verdict == verdict.surjective_verdict ? 0.0
                                                                   : 1.0;
        const double wrong_expectation =
            verdict.frame == !deficient ? 0.0 : 1.0;
        return std::vector<double>{disagreement, wrong_expectation};
      });
  SuiteResult result;
  result.name = "frame-surjectivity";
  result.checks.push_back(make_check("verdict-agreement", worst[0], 0.0));
  result.checks.push_back(make_check("engineered-verdicts", worst[1], 0.0));
  return result;
}

SuiteResult suite_transform_image(uint64_t seed, uint64_t stream_base) {
  const auto worst = max_over_trials(
      100, 2, seed, stream_base, [](Rng& rng, int) {
        const Dims dims = random_dims(rng);
        const QuotientFrameSpace qs = random_quotient(rng, dims.d, dims.n);
        const int q = qs.quotient_dim();
        const MeasureSpace mu = random_measure(rng, dims.m);
        const FrameFamily family = random_frame(rng, qs, mu);

        // Random invertible operator, rejection-sampled to a mild condition
        // number.
        OperatorOnHF u;
        double sigma_max = 0.0;
        double sigma_min = 0.0;
        for (;;) {
          u = random_matrix(rng, q, q);
          Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u);
          sigma_max = svd.singularValues()(0);
          sigma_min = svd.singularValues()(q - 1);
          if (sigma_min >= 1e-3 * sigma_max) break;
        }

        const FrameFamily image = transform(family, u);
        const OperatorOnHF s = frame_operator(family);
        const OperatorOnHF two_path = u * s * u.adjoint();
        const double conj_residual =
            (frame_operator(image) - two_path).cwiseAbs().maxCoeff() /
            (spectral_norm(two_path) + kTiny);

        const FrameBounds base = frame_bounds(family);
        const FrameBounds mapped = frame_bounds(image);
        const double lower_floor = base.lower * sigma_min * sigma_min;
        const double upper_ceiling = base.upper * sigma_max * sigma_max;
        const double containment_residual = std::max(
            (lower_floor - mapped.lower) / (upper_ceiling + kTiny),
            (mapped.upper - upper_ceiling) / (upper_ceiling + kTiny));

        return std::vector<double>{conj_residual,
                                   std::max(containment_residual, 0.0)};
      });
  SuiteResult result;
  result.name = "transform-image";
  result.checks.push_back(
      make_check("conjugation-two-path", worst[0], 1e-10));
  result.checks.push_back(make_check("bounds-containment", worst[1], 1e-9));
  return result;
}

SuiteResult suite_dual_reconstruction(uint64_t seed, uint64_t stream_base) {
  const auto worst = max_over_trials(
      20, 1, seed, stream_base, [](Rng& rng, int) {
        const Dims dims = random_dims(rng);
        const QuotientFrameSpace qs = random_quotient(rng, dims.d, dims.n);
        const MeasureSpace mu = random_measure(rng, dims.m);
        const FrameFamily family = random_frame(rng, qs, mu);
        const FrameFamily dual = canonical_dual(family);

        double residual = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
          const NVector f = random_vector(rng, dims.d);
          const NVector representative = qs.from_coords(qs.to_coords(f));
          const NVector rebuilt = reconstruct(family, dual, f);
          residual = std::max(residual,
                              (rebuilt - representative).norm() /
                                  (representative.norm() + kTiny));
        }
        return std::vector<double>{residual};
      });
  SuiteResult result;
  result.name = "dual-reconstruction";
  result.checks.push_back(
      make_check("reconstruction-residual", worst[0], 1e-8));
  return result;
}

SuiteResult suite_multiplier_bound(uint64_t seed, uint64_t stream_base) {
  const auto worst = max_over_trials(
      200, 2, seed, stream_base, [](Rng& rng, int) {
        const Dims dims = random_dims(rng);
        const QuotientFrameSpace qs = random_quotient(rng, dims.d, dims.n);
        const MeasureSpace mu = random_measure(rng, dims.m);
        const FrameFamily analysis_family = random_frame(rng, qs, mu);
        const FrameFamily synthesis_family = random_frame(rng, qs, mu);
        const MultiplierSymbol symbol(random_vector(rng, dims.m), mu);

        const OperatorOnHF op =
            multiplier_operator(symbol, analysis_family, synthesis_family);
        const double bound = multiplier_norm_bound(
            symbol, frame_bounds(analysis_family).upper,
            frame_bounds(synthesis_family).upper);
        const double scale = std::max(bound, 1.0);
        const double bound_residual =
            std::max(0.0, spectral_norm(op) - bound) / scale;

        // Constant symbol 1 with identical families must reproduce the
        // frame operator essentially exactly.
        const MultiplierSymbol ones(Eigen::VectorXcd::Ones(dims.m), mu);
        const OperatorOnHF recovered =
            multiplier_operator(ones, analysis_family, analysis_family);
        const OperatorOnHF s = frame_operator(analysis_family);
        const double recovery_residual =
            (recovered - s).cwiseAbs().maxCoeff() /
            std::max(1.0, spectral_norm(s));

        return std::vector<double>{bound_residual, recovery_residual};
      });
  SuiteResult result;
  result.name = "multiplier-bound";
  result.checks.push_back(make_check("norm-bound", worst[0], 1e-9));
  result.checks.push_back(
      make_check("frame-operator-recovery", worst[1], 1e-12));
  return result;
}

/// Shared helper for the tensor suites: two independent factor setups.
struct FactorPair {
  QuotientFrameSpace left_space;
  QuotientFrameSpace right_space;
  MeasureSpace left_measure;
  MeasureSpace right_measure;

  static FactorPair draw(Rng& rng) {
    const int n1 = 2 + static_cast<int>(rng.below(2));
    const int d1 = n1 + 1 + static_cast<int>(rng.below(3));
    const int n2 = 2 + static_cast<int>(rng.below(2));
    const int d2 = n2 + 1 + static_cast<int>(rng.below(3));
    QuotientFrameSpace qs1 = random_quotient(rng, d1, n1);
    QuotientFrameSpace qs2 = random_quotient(rng, d2, n2);
    const int m1 =
        qs1.quotient_dim() + 2 + static_cast<int>(rng.below(4));
    const int m2 =
        qs2.quotient_dim() + 2 + static_cast<int>(rng.below(4));
    MeasureSpace mu1 = random_measure(rng, m1);
    MeasureSpace mu2 = random_measure(rng, m2);
    return FactorPair{std::move(qs1), std::move(qs2), std::move(mu1),
                      std::move(mu2)};
  }
};

SuiteResult suite_tensor_bounds_product(uint64_t seed,
                                        uint64_t stream_base) {
  const auto worst = max_over_trials(
      50, 2, seed, stream_base, [](Rng& rng, int trial) {
        const FactorPair factors = FactorPair::draw(rng);
        const bool deficient = trial % 5 == 4;
        const FrameFamily f1 = random_frame(rng, factors.left_space,
                                            factors.left_measure, 1e-1);
        const FrameFamily f2 =
            deficient
                ? rank_deficient_family(rng, factors.right_space,
                                        factors.right_measure)
                : random_frame(rng, factors.right_space,
                               factors.right_measure, 1e-1);

        const FrameBounds b1 = frame_bounds(f1);
        const FrameBounds b2 = frame_bounds(f2);
        const FrameBounds product = tensor_bounds(tensor_frame(f1, f2));

        if (deficient) {
          // The tensor of a frame with a deficient family must be reported
          // as not a frame: optimal lower bound indistinguishable from 0.
          const double deficient_residual =
              product.lower / (kFrameTol * product.upper + kTiny);
          const double upper_residual =
              std::abs(product.upper - b1.upper * b2.upper) /
              (b1.upper * b2.upper + kTiny);
          return std::vector<double>{upper_residual, deficient_residual};
        }

        const double lower_residual =
            std::abs(product.lower - b1.lower * b2.lower) /
            (b1.lower * b2.lower + kTiny);
        const double upper_residual =
            std::abs(product.upper - b1.upper * b2.upper) /
            (b1.upper * b2.upper + kTiny);
        return std::vector<double>{
            std::max(lower_residual, upper_residual), 0.0};
      });
  SuiteResult result;
  result.name = "tensor-bounds-product";
  result.checks.push_back(make_check("bounds-product", worst[0], 1e-9));
  result.checks.push_back(
      make_check("deficient-factor-zero", worst[1], 1.0));
  return result;
}

SuiteResult suite_tensor_operator_two_path(uint64_t seed,
                                           uint64_t stream_base) {
  const auto worst = max_over_trials(
      50, 1, seed, stream_base, [](Rng& rng, int) {
        const FactorPair factors = FactorPair::draw(rng);
        const FrameFamily f1 =
            random_frame(rng, factors.left_space, factors.left_measure);
        const FrameFamily f2 =
            random_frame(rng, factors.right_space, factors.right_measure);

        const OperatorOnHF node_sum =
            tensor_frame_operator(tensor_frame(f1, f2));
        const OperatorOnHF kron =
            kron_operator(frame_operator(f1), frame_operator(f2));
        const double residual = (node_sum - kron).cwiseAbs().maxCoeff() /
                                (spectral_norm(kron) + kTiny);
        return std::vector<double>{residual};
      });
  SuiteResult result;
  result.name = "tensor-operator-two-path";
  result.checks.push_back(make_check("two-path-assembly", worst[0], 1e-10));
  return result;
}

SuiteResult suite_operator_kron_identities(uint64_t seed,
                                           uint64_t stream_base) {
  const auto worst = max_over_trials(
      100, 5, seed, stream_base, [](Rng& rng, int) {
        const int q1 = 1 + static_cast<int>(rng.below(4));
        const int q2 = 1 + static_cast<int>(rng.below(4));

        // Condition numbers are kept near 1e2 per factor; they multiply
        // under the Kronecker product, and the inverse-factorization check
        // needs cond(Q (x) T) * machine epsilon well under its tolerance.
        auto conditioned = [&rng](int size) {
          for (;;) {
            Eigen::MatrixXcd m = random_matrix(rng, size, size);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
            if (svd.singularValues()(size - 1) >=
                1e-2 * svd.singularValues()(0)) {
              return m;
            }
          }
        };
        const OperatorOnHF q = conditioned(q1);
        const OperatorOnHF t = conditioned(q2);
        const OperatorOnHF q2m = random_matrix(rng, q1, q1);
        const OperatorOnHF t2m = random_matrix(rng, q2, q2);

        const OperatorOnHF qt = kron_operator(q, t);
        const double scale = spectral_norm(q) * spectral_norm(t) + kTiny;

        const double norm_residual =
            std::abs(spectral_norm(qt) - spectral_norm(q) * spectral_norm(t)) /
            scale;
        const double adjoint_residual =
            (qt.adjoint() - kron_operator(q.adjoint(), t.adjoint()))
                .cwiseAbs()
                .maxCoeff() /
            scale;
        const double composition_residual =
            (qt * kron_operator(q2m, t2m) -
             kron_operator(q * q2m, t * t2m))
                .cwiseAbs()
                .maxCoeff() /
            (scale * (spectral_norm(q2m) * spectral_norm(t2m) + kTiny));
        const OperatorOnHF q_inv = q.fullPivLu().inverse();
        const OperatorOnHF t_inv = t.fullPivLu().inverse();
        const double inverse_residual =
            (qt.fullPivLu().inverse() - kron_operator(q_inv, t_inv))
                .cwiseAbs()
                .maxCoeff() /
            (spectral_norm(q_inv) * spectral_norm(t_inv) + kTiny);
        const Eigen::VectorXcd c1 = random_vector(rng, q1);
        const Eigen::VectorXcd c2 = random_vector(rng, q2);
        const Eigen::VectorXcd simple = kron_operator(c1, c2);
        const double action_residual =
            (qt * simple - kron_operator(q * c1, t * c2)).norm() /
            (scale * simple.norm() + kTiny);

        return std::vector<double>{norm_residual, adjoint_residual,
                                   composition_residual, inverse_residual,
                                   action_residual};
      });
  SuiteResult result;
  result.name = "operator-kron-identities";
  result.checks.push_back(
      make_check("norm-multiplicativity", worst[0], 1e-10));
  result.checks.push_back(make_check("adjoint-factorization", worst[1],
                                     1e-10));
  result.checks.push_back(make_check("composition", worst[2], 1e-10));
  result.checks.push_back(make_check("inverse-factorization", worst[3],
                                     1e-10));
  result.checks.push_back(make_check("simple-tensor-action", worst[4],
                                     1e-10));
  return result;
}

SuiteResult suite_tensor_duality(uint64_t seed, uint64_t stream_base) {
  const auto worst = max_over_trials(
      20, 2, seed, stream_base, [](Rng& rng, int) {
        const FactorPair factors = FactorPair::draw(rng);
        const FrameFamily f1 = random_frame(rng, factors.left_space,
                                            factors.left_measure, 1e-1);
        const FrameFamily f2 = random_frame(rng, factors.right_space,
                                            factors.right_measure, 1e-1);
        const FrameFamily g1 = canonical_dual(f1);
        const FrameFamily g2 = canonical_dual(f2);

        const TensorDualResult dual = tensor_dual(g1, g2, f1, f2);
        const TensorFrameFamily frame = tensor_frame(f1, f2);
        const TensorQuotientSpace tqs = frame.tensor_quotient();

        double reconstruction_residual = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
          const NVector f =
              random_vector(rng, factors.left_space.ambient_dim());
          const NVector g =
              random_vector(rng, factors.right_space.ambient_dim());
          const Eigen::VectorXcd coords = tqs.simple_tensor_coords(f, g);
          const Eigen::VectorXcd rebuilt =
              tensor_reconstruct_coords(frame, dual.dual, coords);
          reconstruction_residual =
              std::max(reconstruction_residual,
                       (rebuilt - coords).norm() / (coords.norm() + kTiny));
        }

        const DualPairCertificate cert =
            dual_pair_bessel_check(f1, g1, f2, g2);
        const FrameBounds optimal = tensor_bounds(frame);
        const double certificate_residual = std::max(
            (cert.primal.lower - optimal.lower) / (optimal.lower + kTiny),
            (optimal.upper - cert.primal.upper) /
                (cert.primal.upper + kTiny));

        return std::vector<double>{reconstruction_residual,
                                   std::max(certificate_residual, 0.0)};
      });
  SuiteResult result;
  result.name = "tensor-duality";
  result.checks.push_back(
      make_check("tensor-reconstruction", worst[0], 1e-8));
  result.checks.push_back(
      make_check("certified-lower-bound", worst[1], 1e-9));
  return result;
}

SuiteResult suite_tensor_multiplier_factorization(uint64_t seed,
                                                  uint64_t stream_base) {
  const auto worst = max_over_trials(
      50, 1, seed, stream_base, [](Rng& rng, int) {
        const FactorPair factors = FactorPair::draw(rng);
        const FrameFamily f1 =
            random_frame(rng, factors.left_space, factors.left_measure);
        const FrameFamily g1 =
            random_frame(rng, factors.left_space, factors.left_measure);
        const FrameFamily f2 =
            random_frame(rng, factors.right_space, factors.right_measure);
        const FrameFamily g2 =
            random_frame(rng, factors.right_space, factors.right_measure);
        const MultiplierSymbol m1(
            random_vector(rng, factors.left_measure.node_count()),
            factors.left_measure);
        const MultiplierSymbol m2(
            random_vector(rng, factors.right_measure.node_count()),
            factors.right_measure);

        const OperatorOnHF node_sum =
            tensor_multiplier(m1, m2, f1, g1, f2, g2);
        const OperatorOnHF kron =
            kron_operator(multiplier_operator(m1, f1, g1),
                          multiplier_operator(m2, f2, g2));
        const double residual = (node_sum - kron).cwiseAbs().maxCoeff() /
                                (spectral_norm(kron) + kTiny);
        return std::vector<double>{residual};
      });
  SuiteResult result;
  result.name = "tensor-multiplier-factorization";
  result.checks.push_back(
      make_check("factorization-two-path", worst[0], 1e-10));
  return result;
}

struct SuiteSpec {
  const char* name;
  const char* group;
  SuiteResult (*fn)(uint64_t seed, uint64_t stream_base);
};

constexpr SuiteSpec kSuites[] = {
    {"inner-two-route", "inner", suite_inner_two_route},
    {"inner-axioms", "inner", suite_inner_axioms},
    {"frame-inequality", "frames", suite_frame_inequality},
    {"synthesis-norm-adjoint", "frames", suite_synthesis_norm_adjoint},
    {"frame-surjectivity", "frames", suite_frame_surjectivity},
    {"transform-image", "frames", suite_transform_image},
    {"dual-reconstruction", "frames", suite_dual_reconstruction},
    {"multiplier-bound", "multiplier", suite_multiplier_bound},
    {"tensor-bounds-product", "tensor", suite_tensor_bounds_product},
    {"tensor-operator-two-path", "tensor", suite_tensor_operator_two_path},
    {"operator-kron-identities", "tensor", suite_operator_kron_identities},
    {"tensor-duality", "tensor", suite_tensor_duality},
    {"tensor-multiplier-factorization", "tensor",
     suite_tensor_multiplier_factorization},
};

} // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& spec : kSuites) names.emplace_back(spec.name);
  return names;
}

std::vector<SuiteResult> run_suites(const std::string& name, uint64_t seed) {
  std::vector<SuiteResult> results;
  uint64_t index = 0;
  for (const auto& spec : kSuites) {
    // Each suite owns a disjoint block of seed streams, so adding suites or
    // running a subset never shifts another suite's random draws.
    const uint64_t stream_base = index << 32;
    ++index;
    if (name == "all" || name == spec.name || name == spec.group) {
      results.push_back(spec.fn(seed, stream_base));
    }
  }
  if (results.empty()) {
    throw InputError("unknown suite '" + name +
                     "'; valid names are the individual suites, their "
                     "groups (inner, frames, multiplier, tensor), or 'all'");
  }
  return results;
}

} // namespace nframes
