#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "doctest.h"
#include "helpers.hpp"
#include "nframes/frames.hpp"
#include "nframes/rng.hpp"

using namespace nframes;
using testhelp::instance_k_family;
using testhelp::instance_k_space;
using testhelp::rand_vec;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

NVector vec3(Cplx a, Cplx b, Cplx c) {
  NVector v(3);
  v << a, b, c;
  return v;
}

Eigen::MatrixXcd expected_k_operator() {
  Eigen::MatrixXcd s(2, 2);
  s << 1.5, 0.5, 0.5, 1.5;
  return s;
}

FrameFamily orthonormal_pair() {
  Eigen::MatrixXcd samples = Eigen::MatrixXcd::Zero(3, 2);
  samples(0, 0) = 1.0;
  samples(1, 1) = 1.0;
  return FrameFamily(samples, MeasureSpace(Eigen::VectorXd::Ones(2)),
                     instance_k_space());
}

FrameFamily single_e1_family() {
  Eigen::MatrixXcd samples = Eigen::MatrixXcd::Zero(3, 1);
  samples(0, 0) = 1.0;
  return FrameFamily(samples, MeasureSpace(Eigen::VectorXd::Ones(1)),
                     instance_k_space());
}

} // namespace

TEST_CASE("frame family validates shapes") {
  const QuotientFrameSpace qs = instance_k_space();
  CHECK_THROWS_AS(FrameFamily(Eigen::MatrixXcd::Zero(3, 2),
                              MeasureSpace(Eigen::VectorXd::Ones(3)), qs),
                  InputError); // column count != node count
  CHECK_THROWS_AS(FrameFamily(Eigen::MatrixXcd::Zero(4, 3),
                              MeasureSpace(Eigen::VectorXd::Ones(3)), qs),
                  InputError); // wrong ambient dimension
}

TEST_CASE("analysis on the canonical three-sample family") {
  const FrameFamily fam = instance_k_family();
  SUBCASE("f = e1") {
    const CoefficientFunction phi = analysis(fam, vec3(1, 0, 0));
    Eigen::Vector3cd expected(1.0, 0.0, kInvSqrt2);
    CHECK((phi.values - expected).norm() <= 1e-12);
  }
  SUBCASE("the anchor is annihilated") {
    CHECK(analysis(fam, vec3(0, 0, 1)).values.norm() <= 1e-12);
  }
  SUBCASE("zero maps to zero") {
    CHECK(analysis(fam, vec3(0, 0, 0)).values.norm() == 0.0);
  }
  SUBCASE("dimension mismatch is an input error") {
    NVector bad(4);
    bad.setZero();
    CHECK_THROWS_AS(analysis(fam, bad), InputError);
  }
}

TEST_CASE("synthesis on the canonical family") {
  const FrameFamily fam = instance_k_family();
  const MeasureSpace& mu = fam.measure();
  SUBCASE("single unit column") {
    const NVector out =
        synthesis(fam, CoefficientFunction(Eigen::Vector3cd(1, 0, 0), mu));
    CHECK((out - vec3(1, 0, 0)).norm() <= 1e-12);
  }
  SUBCASE("zero coefficients") {
    CHECK(synthesis(fam, CoefficientFunction(Eigen::Vector3cd(0, 0, 0), mu))
              .norm()
          == 0.0);
  }
  SUBCASE("weighted column sum") {
    const NVector out =
        synthesis(fam, CoefficientFunction(Eigen::Vector3cd(1, 1, 0), mu));
    CHECK((out - vec3(1, 1, 0)).norm() <= 1e-12);
  }
  SUBCASE("measure mismatch is an input error") {
    const MeasureSpace other(Eigen::VectorXd::Ones(2));
    CHECK_THROWS_AS(
        synthesis(fam, CoefficientFunction(Eigen::Vector2cd(1, 0), other)),
        InputError);
  }
}

TEST_CASE("frame operator examples") {
  SUBCASE("canonical family") {
    const OperatorOnHF s = frame_operator(instance_k_family());
    CHECK((s - expected_k_operator()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("orthonormal pair gives the identity") {
    const OperatorOnHF s = frame_operator(orthonormal_pair());
    CHECK((s - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff()
          <= 1e-12);
  }
  SUBCASE("scaling the family by 2 scales the operator by 4") {
    const FrameFamily fam = instance_k_family();
    const FrameFamily scaled(2.0 * fam.samples(), fam.measure(),
                             fam.quotient());
    CHECK((frame_operator(scaled) - 4.0 * frame_operator(fam))
              .cwiseAbs()
              .maxCoeff()
          <= 1e-12);
  }
}

TEST_CASE("optimal bounds examples") {
  SUBCASE("canonical family has bounds (1, 2)") {
    const FrameBounds b = frame_bounds(instance_k_family());
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("orthonormal pair is tight with A = B = 1") {
    const FrameBounds b = frame_bounds(orthonormal_pair());
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("a single sample in a two-dimensional quotient is not a frame") {
    const FrameBounds b = frame_bounds(single_e1_family());
    CHECK(b.lower == 0.0);
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("is_frame computes two agreeing verdicts") {
  SUBCASE("canonical family is a frame") {
    const FrameVerdict v = is_frame(instance_k_family());
    CHECK(v.frame);
    CHECK(v.spectral_verdict);
    CHECK(v.surjective_verdict);
    CHECK(v.bounds.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.bounds.upper == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("rank-deficient family is not") {
    const FrameVerdict v = is_frame(single_e1_family());
    CHECK_FALSE(v.frame);
    CHECK_FALSE(v.spectral_verdict);
    CHECK_FALSE(v.surjective_verdict);
  }
  SUBCASE("empty measure is rejected at construction") {
    CHECK_THROWS_AS(MeasureSpace(Eigen::VectorXd()), InputError);
  }
}

TEST_CASE("canonical dual of the canonical family") {
  const FrameFamily fam = instance_k_family();
  const FrameFamily dual = canonical_dual(fam);

  // S^{-1} = (1/2) [[1.5, -0.5], [-0.5, 1.5]] applied columnwise.
  Eigen::MatrixXcd s_inv(2, 2);
  s_inv << 0.75, -0.25, -0.25, 0.75;
  CHECK((dual.coords() - s_inv * fam.coords()).cwiseAbs().maxCoeff() <= 1e-12);

  SUBCASE("reconstruction identity against random vectors") {
    Rng rng(0x6672616d2d726563ull);
    for (int trial = 0; trial < 100; ++trial) {
      const NVector f = rand_vec(rng, 3);
      // The reconstruction returns the complement representative of f.
      const NVector expected =
          fam.quotient().from_coords(fam.quotient().to_coords(f));
      const NVector got = reconstruct(fam, dual, f);
      CHECK((got - expected).norm() <= 1e-8 * (1.0 + expected.norm()));
    }
  }
  SUBCASE("duality residual is numerically zero") {
    CHECK(duality_residual(fam, dual) <= 1e-12);
  }
  SUBCASE("tight frame dual is F / A") {
    const FrameFamily tight = orthonormal_pair();
    const FrameFamily td = canonical_dual(tight);
    CHECK((td.coords() - tight.coords()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("non-frames are rejected with diagnostics") {
    CHECK_THROWS_AS(canonical_dual(single_e1_family()), SingularFrameError);
    try {
      canonical_dual(single_e1_family());
    } catch (const SingularFrameError& e) {
      CHECK(e.lambda_min <= 1e-12);
      CHECK(e.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("reconstruct examples") {
  const FrameFamily fam = instance_k_family();
  const FrameFamily dual = canonical_dual(fam);
  CHECK((reconstruct(fam, dual, vec3(1, 0, 0)) - vec3(1, 0, 0)).norm()
        <= 1e-10);
  // The anchor's coset collapses to zero.
  CHECK(reconstruct(fam, dual, vec3(0, 0, 1)).norm() <= 1e-10);
  // Parseval case: G = F reconstructs directly.
  const FrameFamily tight = orthonormal_pair();
  const NVector f = vec3(0.5, Cplx(0, -2), 7.0);
  const NVector rep = tight.quotient().from_coords(tight.quotient().to_coords(f));
  CHECK((reconstruct(tight, tight, f) - rep).norm() <= 1e-10 * rep.norm());
}

TEST_CASE("transform examples") {
  const FrameFamily fam = instance_k_family();
  SUBCASE("U = 2 I scales bounds by 4") {
    const FrameFamily image =
        transform(fam, 2.0 * Eigen::MatrixXcd::Identity(2, 2));
    const FrameBounds b = frame_bounds(image);
    CHECK(b.lower == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(8.0).epsilon(1e-12));
    CHECK((frame_operator(image) - 4.0 * expected_k_operator())
              .cwiseAbs()
              .maxCoeff()
          <= 1e-10);
  }
  SUBCASE("U = I leaves the family unchanged") {
    const FrameFamily image =
        transform(fam, Eigen::MatrixXcd::Identity(2, 2));
    CHECK((image.coords() - fam.coords()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("a swap is unitary: spectrum preserved") {
    Eigen::MatrixXcd swap(2, 2);
    swap << 0, 1, 1, 0;
    const FrameFamily image = transform(fam, swap);
    const FrameBounds b = frame_bounds(image);
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-12));
    const OperatorOnHF s = frame_operator(image);
    CHECK((s - swap * expected_k_operator() * swap.adjoint())
              .cwiseAbs()
              .maxCoeff()
          <= 1e-10);
  }
  SUBCASE("singular U is rejected") {
    CHECK_THROWS_AS(transform(fam, Eigen::MatrixXcd::Zero(2, 2)), InputError);
    CHECK_THROWS_AS(transform(fam, Eigen::MatrixXcd::Identity(3, 3)),
                    InputError); // wrong shape
  }
}

TEST_CASE("image theorem on random operators") {
  Rng rng(0x6672616d2d696d67ull);
  const FrameFamily fam = instance_k_family();
  const OperatorOnHF s = frame_operator(fam);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXcd u = testhelp::rand_mat(rng, 2, 2);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u);
    if (svd.singularValues()(1) < 1e-2 * svd.singularValues()(0)) continue;
    const FrameFamily image = transform(fam, u);
    const OperatorOnHF expected = u * s * u.adjoint();
    CHECK((frame_operator(image) - expected).cwiseAbs().maxCoeff()
          <= 1e-10 * spectral_norm(expected));

    // Bound containment: A ||U^{-1}||^{-2} <= A' and B' <= B ||U||^2.
    const FrameBounds base = frame_bounds(fam);
    const FrameBounds img = frame_bounds(image);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(1);
    CHECK(img.lower >= base.lower * smin * smin * (1.0 - 1e-9));
    CHECK(img.upper <= base.upper * smax * smax * (1.0 + 1e-9));
  }
}

TEST_CASE("synthesis pseudo-inverse") {
  SUBCASE("right inverse on the canonical family") {
    const FrameFamily fam = instance_k_family();
    const SynthesisMatrix t = synthesis_matrix(fam);
    const Eigen::MatrixXcd t_dagger = synthesis_pseudo_inverse(fam);
    const Eigen::MatrixXcd product =
        t.entries * t.weights.asDiagonal() * t_dagger;
    CHECK((product - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff()
          <= 1e-10);
  }
  SUBCASE("Parseval family: pseudo-inverse equals the adjoint") {
    const FrameFamily tight = orthonormal_pair();
    const Eigen::MatrixXcd t_dagger = synthesis_pseudo_inverse(tight);
    CHECK((t_dagger - tight.coords().adjoint()).cwiseAbs().maxCoeff()
          <= 1e-12);
  }
  SUBCASE("rank-deficient family is rejected") {
    CHECK_THROWS_AS(synthesis_pseudo_inverse(single_e1_family()),
                    SingularFrameError);
  }
}

TEST_CASE("frame inequality holds with the computed optimal bounds") {
  Rng rng(0x6672616d2d696e71ull);
  const FrameFamily fam = instance_k_family();
  const FrameBounds b = frame_bounds(fam);
  for (int trial = 0; trial < 200; ++trial) {
    const NVector f = rand_vec(rng, 3);
    const CoefficientFunction phi = analysis(fam, f);
    double energy = 0.0;
    for (int i = 0; i < phi.values.size(); ++i)
      energy += fam.measure().weights()(i) * std::norm(phi.values(i));
    const double nn = n_norm(f, fam.quotient().anchors());
    const double nn2 = nn * nn;
    CHECK(energy >= b.lower * nn2 - 1e-9 * std::max(1.0, energy));
    CHECK(energy <= b.upper * nn2 + 1e-9 * std::max(1.0, energy));
  }
}

TEST_CASE("adjoint consistency and synthesis norm bound") {
  Rng rng(0x6672616d2d616474ull);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 3 + static_cast<int>(rng.below(6));
    const int n = 2 + static_cast<int>(rng.below(2));
    const QuotientFrameSpace qs =
        build_quotient(testhelp::rand_anchors(rng, d, n));
    const int m = qs.quotient_dim() + static_cast<int>(rng.below(5));
    const MeasureSpace mu = testhelp::rand_measure(rng, m);
    const FrameFamily fam = testhelp::rand_frame(rng, qs, mu);

    const NVector f = rand_vec(rng, d);
    const CoefficientFunction phi(rand_vec(rng, m), mu);

    // <T phi, f>_F (n-inner product) equals <phi, T^* f>_{L2}.
    const NVector t_phi = synthesis(fam, phi);
    const Cplx lhs = n_inner(t_phi, f, qs.anchors());
    const Cplx rhs = l2_inner(phi, analysis(fam, f));
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);

    // ||T|| <= sqrt(B) and the Bessel criterion.
    const FrameBounds b = frame_bounds(fam);
    const double t_norm = synthesis_operator_norm(fam);
    CHECK(t_norm <= std::sqrt(b.upper) + 1e-9 * std::max(1.0, t_norm));

    double energy = 0.0;
    const CoefficientFunction af = analysis(fam, f);
    for (int i = 0; i < m; ++i)
      energy += mu.weights()(i) * std::norm(af.values(i));
    const double nn = n_norm(f, qs.anchors());
    CHECK(energy
          <= t_norm * t_norm * nn * nn + 1e-9 * std::max(1.0, energy));
  }
}

TEST_CASE("non-canonical duals still reconstruct") {
  // G = S^{-1}C + V (I - diag(mu) C^* S^{-1} C) is a dual for any V.
  Rng rng(0x6672616d2d6e6364ull);
  const FrameFamily fam = instance_k_family();
  const Eigen::MatrixXcd c = fam.coords();
  const Eigen::VectorXd mu = fam.measure().weights();
  const OperatorOnHF s = frame_operator(fam);
  const Eigen::MatrixXcd s_inv_c = s.ldlt().solve(c);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXcd v = testhelp::rand_mat(rng, 2, 3);
    const Eigen::MatrixXcd g_coords =
        s_inv_c
        + v
              * (Eigen::MatrixXcd::Identity(3, 3)
                 - mu.cast<Cplx>().asDiagonal() * c.adjoint() * s_inv_c);
    const FrameFamily dual(fam.quotient().from_coords(g_coords),
                           fam.measure(), fam.quotient());
    CHECK(duality_residual(fam, dual) <= 1e-10 * (1.0 + g_coords.norm()));

    const NVector f = rand_vec(rng, 3);
    const NVector rep = fam.quotient().from_coords(fam.quotient().to_coords(f));
    CHECK((reconstruct(fam, dual, f) - rep).norm()
          <= 1e-8 * (1.0 + rep.norm()) * (1.0 + v.norm()));
  }
}

TEST_CASE("counting-measure reduction matches the discrete sum") {
  // With unit weights the continuous inequality is literally the finite sum.
  const FrameFamily fam = instance_k_family();
  const NVector f = vec3(2, Cplx(-1, 1), 3);
  const CoefficientFunction phi = analysis(fam, f);
  Cplx discrete = 0.0;
  for (int i = 0; i < 3; ++i)
    discrete += n_inner(f, fam.samples().col(i), fam.quotient().anchors())
                * std::conj(n_inner(f, fam.samples().col(i),
                                    fam.quotient().anchors()));
  double energy = 0.0;
  for (int i = 0; i < 3; ++i) energy += std::norm(phi.values(i));
  CHECK(std::abs(discrete.real() - energy) <= 1e-10 * std::max(1.0, energy));
}

TEST_CASE("operator_spectrum returns ascending eigenvalues") {
  const Eigen::VectorXd spec = operator_spectrum(expected_k_operator());
  REQUIRE(spec.size() == 2);
  CHECK(spec(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec(1) == doctest::Approx(2.0).epsilon(1e-12));
}
