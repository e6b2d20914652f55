#include "nframes/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "nframes/frames.hpp"
#include "nframes/measure.hpp"
#include "nframes/multiplier.hpp"
#include "nframes/nip.hpp"
#include "nframes/rng.hpp"
#include "nframes/tensor.hpp"
#include "nframes/version.hpp"

namespace nframes {

namespace {

using nlohmann::json;

constexpr double kTiny = 1e-300;

// Pinned report-check tolerances (mirroring the library-wide contract).
constexpr double kInequalitySlack = 1e-9;
constexpr double kSandwichTol = 1e-10;
constexpr double kTwoRouteTol = 1e-9;
constexpr double kReconstructionTol = 1e-8;
constexpr double kIdentityTol = 1e-10;
constexpr double kTwoPathTol = 1e-10;
constexpr double kExactRecoveryTol = 1e-12;

std::string hex_digest(uint64_t value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

json complex_json(const Cplx& z) { return json::array({z.real(), z.imag()}); }

json spectrum_json(const Eigen::VectorXd& values) {
  json out = json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(values(i));
  return out;
}

json check_json(const std::string& id, bool pass, double residual) {
  return json{{"id", id}, {"pass", pass}, {"residual", residual}};
}

Eigen::VectorXcd random_cvector(Rng& rng, int d) {
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_gaussian();
  return v;
}

/// A space/measure/family triple built from one config block.
struct BuiltSpace {
  QuotientFrameSpace quotient;
  MeasureSpace measure;
  FrameFamily family;
};

MeasureSpace build_measure(const MeasureSpec& spec) {
  if (spec.kind == MeasureSpec::Kind::kUniform) {
    return MeasureSpace(Eigen::VectorXd::Constant(spec.count, spec.weight));
  }
  return MeasureSpace(spec.weights);
}

QuotientFrameSpace build_space(const SpaceConfig& config) {
  const AmbientSpace space(config.dim, config.order);
  Eigen::MatrixXcd vectors;
  if (config.anchors.kind == AnchorSpec::Kind::kExplicit) {
    vectors = config.anchors.vectors;
  } else {
    // axis_tail preset: the last (order - 1) standard basis vectors.
    vectors = Eigen::MatrixXcd::Zero(config.dim, config.order - 1);
    for (int k = 0; k < config.order - 1; ++k) {
      vectors(config.dim - (config.order - 1) + k, k) = 1.0;
    }
  }
  return build_quotient(AnchorTuple(space, vectors));
}

Eigen::MatrixXcd build_samples(const SpaceConfig& config, int node_count,
                               uint64_t seed, uint64_t stream) {
  switch (config.family.kind) {
    case FamilySpec::Kind::kExplicit:
      return config.family.samples;
    case FamilySpec::Kind::kRandom: {
      Rng rng(mix_seed(seed, stream));
      Eigen::MatrixXcd samples(config.dim, node_count);
      for (int c = 0; c < node_count; ++c) {
        samples.col(c) = random_cvector(rng, config.dim);
      }
      return samples;
    }
    case FamilySpec::Kind::kFourier: {
      // F(w_k)_j = exp(2*pi*i * k * j / dim) over grid nodes w_k = k.
      Eigen::MatrixXcd samples(config.dim, node_count);
      const double tau = 2.0 * 3.14159265358979323846;
      for (int k = 0; k < node_count; ++k) {
        for (int j = 0; j < config.dim; ++j) {
          const double angle = tau * k * j / config.dim;
          samples(j, k) = Cplx(std::cos(angle), std::sin(angle));
        }
      }
      return samples;
    }
  }
  throw Error("unreachable family kind");
}

BuiltSpace build(const SpaceConfig& config, uint64_t seed, uint64_t stream) {
  QuotientFrameSpace quotient = build_space(config);
  MeasureSpace measure = build_measure(config.measure);
  Eigen::MatrixXcd samples =
      build_samples(config, measure.node_count(), seed, stream);
  FrameFamily family(std::move(samples), measure, quotient);
  return BuiltSpace{std::move(quotient), std::move(measure),
                    std::move(family)};
}

Eigen::VectorXcd resolve_symbol(const SymbolSpec& spec, int node_count) {
  if (spec.kind == SymbolSpec::Kind::kOnes) {
    return Eigen::VectorXcd::Ones(node_count);
  }
  if (spec.values.size() != node_count) {
    throw InputError("multiplier symbol has " +
                     std::to_string(spec.values.size()) + " values for " +
                     std::to_string(node_count) + " nodes");
  }
  return spec.values;
}

OperatorOnHF resolve_operator(const OperatorSpec& spec, int q) {
  switch (spec.kind) {
    case OperatorSpec::Kind::kIdentity:
      return OperatorOnHF::Identity(q, q);
    case OperatorSpec::Kind::kScale:
      return spec.factor * OperatorOnHF::Identity(q, q);
    case OperatorSpec::Kind::kExplicit:
      if (spec.entries.rows() != q) {
        throw InputError("transform operator is " +
                         std::to_string(spec.entries.rows()) + "x" +
                         std::to_string(spec.entries.cols()) +
                         " but quotient coordinates have dimension " +
                         std::to_string(q));
      }
      return spec.entries;
  }
  throw Error("unreachable operator kind");
}

// --------------------------------------------------------------------------
// Per-operation execution. Each returns {result, checks} JSON pieces.
// --------------------------------------------------------------------------

struct OpOutput {
  json result = json::object();
  json checks = json::array();
};

OpOutput run_bounds(const BuiltSpace& built, Rng& rng, double frame_tol) {
  OpOutput out;
  const FrameFamily& family = built.family;
  const FrameVerdict verdict = is_frame(family, frame_tol);
  const FrameBounds& bounds = verdict.bounds;
  const Eigen::VectorXd spectrum =
      operator_spectrum(frame_operator(family));
  const double synthesis_norm = synthesis_operator_norm(family);

  out.result["lower"] = bounds.lower;
  out.result["upper"] = bounds.upper;
  out.result["spectrum"] = spectrum_json(spectrum);
  out.result["synthesis_norm"] = synthesis_norm;
  out.result["is_frame"] = verdict.frame;

  // Sampled two-sided inequality against the determinant-route norm.
  double inequality_residual = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const NVector f = random_cvector(rng, built.quotient.ambient_dim());
    const CoefficientFunction phi = analysis(family, f);
    const double energy = l2_inner(phi, phi).real();
    const double norm_sq =
        n_inner(f, f, built.quotient.anchors()).real();
    const double scale = bounds.upper * norm_sq + kTiny;
    inequality_residual =
        std::max({inequality_residual,
                  (bounds.lower * norm_sq - energy) / scale,
                  (energy - bounds.upper * norm_sq) / scale});
  }
  inequality_residual = std::max(inequality_residual, 0.0);
  out.checks.push_back(check_json("frame-inequality-sampled",
                                  inequality_residual <= kInequalitySlack,
                                  inequality_residual));

  double sandwich_residual = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    sandwich_residual =
        std::max({sandwich_residual,
                  (bounds.lower - spectrum(i)) / (bounds.upper + kTiny),
                  (spectrum(i) - bounds.upper) / (bounds.upper + kTiny)});
  }
  sandwich_residual = std::max(sandwich_residual, 0.0);
  out.checks.push_back(check_json("spectrum-sandwich",
                                  sandwich_residual <= kSandwichTol,
                                  sandwich_residual));

  const double norm_gap =
      std::abs(synthesis_norm - std::sqrt(bounds.upper)) /
      std::max(1.0, std::sqrt(bounds.upper));
  out.checks.push_back(check_json("synthesis-norm-two-route",
                                  norm_gap <= kTwoRouteTol, norm_gap));
  return out;
}

OpOutput run_spectrum(const BuiltSpace& built) {
  OpOutput out;
  const OperatorOnHF s = frame_operator(built.family);
  out.result["spectrum"] = spectrum_json(operator_spectrum(s));
  const double asym = (s - s.adjoint()).cwiseAbs().maxCoeff() /
                      std::max(1.0, spectral_norm(s));
  out.checks.push_back(
      check_json("hermitian-assembly", asym <= kExactRecoveryTol, asym));
  return out;
}

json singular_frame_json(const SingularFrameError& e) {
  return json{{"kind", "singular-frame"},
              {"message", e.what()},
              {"lambda_min", e.lambda_min},
              {"lambda_max", e.lambda_max}};
}

OpOutput run_dual(const BuiltSpace& built, Rng& rng, double frame_tol) {
  OpOutput out;
  const FrameFamily& family = built.family;
  try {
    const FrameFamily dual = canonical_dual(family, frame_tol);
    const double identity_residual = duality_residual(family, dual);

    double reconstruction_residual = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const NVector f = random_cvector(rng, built.quotient.ambient_dim());
      const NVector representative =
          built.quotient.from_coords(built.quotient.to_coords(f));
      const NVector rebuilt = reconstruct(family, dual, f);
      reconstruction_residual =
          std::max(reconstruction_residual,
                   (rebuilt - representative).norm() /
                       (representative.norm() + kTiny));
    }

    out.result["duality_residual"] = identity_residual;
    out.result["reconstruction_residual"] = reconstruction_residual;
    out.checks.push_back(check_json("duality-identity",
                                    identity_residual <= kIdentityTol,
                                    identity_residual));
    out.checks.push_back(check_json("dual-reconstruction",
                                    reconstruction_residual <=
                                        kReconstructionTol,
                                    reconstruction_residual));
  } catch (const SingularFrameError& e) {
    out.result["error"] = singular_frame_json(e);
    out.checks.push_back(check_json("dual-constructible", false, 1.0));
  }
  return out;
}

OpOutput run_multiplier(const OperationConfig& op, const BuiltSpace& built,
                        double frame_tol) {
  OpOutput out;
  const FrameFamily& family = built.family;
  const Eigen::VectorXcd values =
      resolve_symbol(op.symbol, built.measure.node_count());
  const MultiplierSymbol symbol(values, built.measure);

  try {
    const FrameFamily synthesis_family =
        op.synthesis_is_dual ? canonical_dual(family, frame_tol) : family;
    const OperatorOnHF multiplier =
        multiplier_operator(symbol, family, synthesis_family);
    const double norm = spectral_norm(multiplier);
    const double bound =
        multiplier_norm_bound(symbol, frame_bounds(family).upper,
                              frame_bounds(synthesis_family).upper);
    out.result["norm"] = norm;
    out.result["bound"] = bound;
    out.result["sup_norm"] = symbol.sup_norm();

    const double bound_residual =
        std::max(0.0, norm - bound) / std::max(bound, 1.0);
    out.checks.push_back(check_json("multiplier-norm-bound",
                                    bound_residual <= kTwoRouteTol,
                                    bound_residual));

    const bool recovers_frame_operator =
        op.symbol.kind == SymbolSpec::Kind::kOnes && !op.synthesis_is_dual;
    if (recovers_frame_operator) {
      const OperatorOnHF s = frame_operator(family);
      const double recovery =
          (multiplier - s).cwiseAbs().maxCoeff() /
          std::max(1.0, spectral_norm(s));
      out.result["spectrum"] = spectrum_json(operator_spectrum(multiplier));
      out.checks.push_back(check_json("frame-operator-recovery",
                                      recovery <= kExactRecoveryTol,
                                      recovery));
    }
  } catch (const SingularFrameError& e) {
    out.result["error"] = singular_frame_json(e);
    out.checks.push_back(check_json("multiplier-constructible", false, 1.0));
  }
  return out;
}

OpOutput run_transform(const OperationConfig& op, const BuiltSpace& built) {
  OpOutput out;
  const FrameFamily& family = built.family;
  const OperatorOnHF u =
      resolve_operator(op.transform_operator, built.quotient.quotient_dim());

  const FrameFamily image = transform(family, u);
  const OperatorOnHF two_path = u * frame_operator(family) * u.adjoint();
  const double conjugation_residual =
      (frame_operator(image) - two_path).cwiseAbs().maxCoeff() /
      (spectral_norm(two_path) + kTiny);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u);
  const double sigma_max = svd.singularValues()(0);
  const double sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  const FrameBounds base = frame_bounds(family);
  const FrameBounds mapped = frame_bounds(image);
  const double lower_floor = base.lower * sigma_min * sigma_min;
  const double upper_ceiling = base.upper * sigma_max * sigma_max;
  const double containment_residual = std::max(
      {0.0, (lower_floor - mapped.lower) / (upper_ceiling + kTiny),
       (mapped.upper - upper_ceiling) / (upper_ceiling + kTiny)});

  out.result["lower"] = mapped.lower;
  out.result["upper"] = mapped.upper;
  out.result["spectrum"] = spectrum_json(operator_spectrum(
      frame_operator(image)));
  out.checks.push_back(check_json("conjugation-two-path",
                                  conjugation_residual <= kTwoPathTol,
                                  conjugation_residual));
  out.checks.push_back(check_json("bounds-containment",
                                  containment_residual <= kInequalitySlack,
                                  containment_residual));
  return out;
}

OpOutput run_tensor(const OperationConfig& op, const BuiltSpace& built,
                    uint64_t seed, uint64_t stream, Rng& rng,
                    double frame_tol) {
  OpOutput out;
  const BuiltSpace right = build(*op.right, seed, stream);
  const FrameFamily& f1 = built.family;
  const FrameFamily& f2 = right.family;

  const TensorFrameFamily tensor = tensor_frame(f1, f2);
  const FrameBounds b1 = frame_bounds(f1);
  const FrameBounds b2 = frame_bounds(f2);
  const FrameBounds product = tensor_bounds(tensor);

  out.result["lower"] = product.lower;
  out.result["upper"] = product.upper;
  out.result["left_bounds"] = json::array({b1.lower, b1.upper});
  out.result["right_bounds"] = json::array({b2.lower, b2.upper});
  out.result["dim"] = tensor.tensor_quotient().dim();

  // Two-path assembly: product-node summation vs Kronecker of factors.
  const OperatorOnHF node_sum = tensor_frame_operator(tensor);
  const OperatorOnHF kron =
      kron_operator(frame_operator(f1), frame_operator(f2));
  const double two_path_residual =
      (node_sum - kron).cwiseAbs().maxCoeff() /
      (spectral_norm(kron) + kTiny);
  out.checks.push_back(check_json("tensor-operator-two-path",
                                  two_path_residual <= kTwoPathTol,
                                  two_path_residual));

  // Optimal bounds multiply across factors.
  const double upper_gap = std::abs(product.upper - b1.upper * b2.upper) /
                           (b1.upper * b2.upper + kTiny);
  const double lower_gap =
      b1.lower * b2.lower > 0.0
          ? std::abs(product.lower - b1.lower * b2.lower) /
                (b1.lower * b2.lower)
          : product.lower / (kFrameTol * product.upper + kTiny);
  const double product_residual = std::max(upper_gap, lower_gap);
  out.checks.push_back(check_json("tensor-bounds-product",
                                  product_residual <= kInequalitySlack,
                                  product_residual));

  // Duality: canonical duals of both factors, tensored and verified.
  const bool both_frames =
      is_frame(f1, frame_tol).frame && is_frame(f2, frame_tol).frame;
  if (both_frames) {
    const FrameFamily g1 = canonical_dual(f1, frame_tol);
    const FrameFamily g2 = canonical_dual(f2, frame_tol);
    const TensorDualResult dual = tensor_dual(g1, g2, f1, f2);
    const TensorQuotientSpace tqs = tensor.tensor_quotient();

    double reconstruction_residual = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      const NVector f = random_cvector(rng, built.quotient.ambient_dim());
      const NVector g = random_cvector(rng, right.quotient.ambient_dim());
      const Eigen::VectorXcd coords = tqs.simple_tensor_coords(f, g);
      const Eigen::VectorXcd rebuilt =
          tensor_reconstruct_coords(tensor, dual.dual, coords);
      reconstruction_residual =
          std::max(reconstruction_residual,
                   (rebuilt - coords).norm() / (coords.norm() + kTiny));
    }
    out.result["tensor_duality_residuals"] =
        json::array({dual.left_residual, dual.right_residual});
    out.checks.push_back(check_json("tensor-dual-reconstruction",
                                    reconstruction_residual <=
                                        kReconstructionTol,
                                    reconstruction_residual));

    const DualPairCertificate cert = dual_pair_bessel_check(f1, g1, f2, g2);
    const double certificate_residual = std::max(
        {0.0,
         (cert.primal.lower - product.lower) / (product.lower + kTiny),
         (product.upper - cert.primal.upper) /
             (cert.primal.upper + kTiny)});
    out.result["certified_bounds"] =
        json::array({cert.primal.lower, cert.primal.upper});
    out.checks.push_back(check_json("tensor-duality-certificate",
                                    certificate_residual <= kInequalitySlack,
                                    certificate_residual));
  }

  // Separable-symbol multiplier factorization with random symbols.
  const MultiplierSymbol m1(random_cvector(rng, f1.node_count()),
                            f1.measure());
  const MultiplierSymbol m2(random_cvector(rng, f2.node_count()),
                            f2.measure());
  const OperatorOnHF flat = tensor_multiplier(m1, m2, f1, f1, f2, f2);
  const OperatorOnHF factored =
      kron_operator(multiplier_operator(m1, f1, f1),
                    multiplier_operator(m2, f2, f2));
  const double factorization_residual =
      (flat - factored).cwiseAbs().maxCoeff() /
      (spectral_norm(factored) + kTiny);
  out.checks.push_back(check_json("tensor-multiplier-factorization",
                                  factorization_residual <= kTwoPathTol,
                                  factorization_residual));
  return out;
}

} // namespace

RunOutcome run_experiment(const ExperimentConfig& config,
                          std::optional<uint64_t> seed_override) {
  const uint64_t seed =
      seed_override ? *seed_override : (config.has_seed ? config.seed : 0);

  json report;
  report["meta"] = json{{"config_hash", hex_digest(fnv1a64(
                                            config.canonical_text))},
                        {"seed", seed},
                        {"tool", "nframes"},
                        {"version", kVersion}};

  const BuiltSpace built = build(config.space, seed, /*stream=*/0);

  bool all_pass = true;
  json operations = json::array();
  uint64_t op_index = 0;
  for (const auto& op : config.operations) {
    ++op_index;
    // Every operation draws from its own seed stream, so reordering or
    // removing operations never changes another operation's sampling.
    Rng rng(mix_seed(seed, (op_index << 20) + 1));

    OpOutput output;
    if (op.op == "bounds") {
      output = run_bounds(built, rng, config.frame_tol);
    } else if (op.op == "spectrum") {
      output = run_spectrum(built);
    } else if (op.op == "dual") {
      output = run_dual(built, rng, config.frame_tol);
    } else if (op.op == "multiplier") {
      output = run_multiplier(op, built, config.frame_tol);
    } else if (op.op == "transform") {
      output = run_transform(op, built);
    } else if (op.op == "tensor") {
      output = run_tensor(op, built, seed, (op_index << 20) + 2, rng,
                          config.frame_tol);
    } else {
      throw InputError("unknown operation '" + op.op + "'");
    }

    for (const auto& check : output.checks) {
      if (!check.at("pass").get<bool>()) all_pass = false;
    }
    operations.push_back(
        json{{"name", op.op},
             {"inputs_digest", hex_digest(fnv1a64(op.inputs_text))},
             {"result", output.result},
             {"checks", output.checks}});
  }
  report["operations"] = operations;

  RunOutcome outcome;
  outcome.report_text = report.dump(2) + "\n";
  outcome.all_checks_passed = all_pass;
  return outcome;
}

std::string spectrum_csv(const ExperimentConfig& config,
                         std::optional<uint64_t> seed_override) {
  const uint64_t seed =
      seed_override ? *seed_override : (config.has_seed ? config.seed : 0);
  const BuiltSpace built = build(config.space, seed, /*stream=*/0);

  Eigen::VectorXd spectrum;
  bool found = false;
  uint64_t op_index = 0;
  for (const auto& op : config.operations) {
    ++op_index;
    if (op.op == "bounds" || op.op == "spectrum") {
      spectrum = operator_spectrum(frame_operator(built.family));
      found = true;
    } else if (op.op == "transform") {
      const OperatorOnHF u = resolve_operator(
          op.transform_operator, built.quotient.quotient_dim());
      spectrum = operator_spectrum(frame_operator(transform(built.family, u)));
      found = true;
    } else if (op.op == "tensor") {
      const BuiltSpace right = build(*op.right, seed, (op_index << 20) + 2);
      spectrum = operator_spectrum(
          tensor_frame_operator(tensor_frame(built.family, right.family)));
      found = true;
    }
    if (found) break;
  }
  if (!found) {
    throw InputError(
        "config requests no operator; add a bounds, spectrum, transform, "
        "or tensor operation");
  }

  std::string csv = "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    char row[64];
    std::snprintf(row, sizeof(row), "%lld,%.17g\n",
                  static_cast<long long>(i), spectrum(i));
    csv += row;
  }
  return csv;
}

} // namespace nframes
