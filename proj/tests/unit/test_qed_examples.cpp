#include "divreg/errors.hpp"
#include "divreg/fitter.hpp"
#include "divreg/qed_examples.hpp"

#include "support/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace divreg;
using divreg::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
const Complex I(0.0, 1.0);

} // namespace

TEST(StandardIntegrals, LogAsymptoteAndExactCompanion) {
  const FourVector zero{};
  EXPECT_LE(std::abs(standard_integral_log(zero, 1.0, 100.0) -
                     I * kPi2 * (std::log(1e4) - 1.0)),
            1e-12);
  EXPECT_NEAR((std::log(1e4) - 1.0), 8.21034, 1e-5);
  EXPECT_LE(std::abs(standard_integral_log_exact(1.0, 10.0) -
                     I * kPi2 * (std::log(101.0) + 1.0 / 101.0 - 1.0)),
            1e-13);
  EXPECT_THROW(standard_integral_log(FourVector{1, 0, 0, 0}, 1.0, 10.0), DomainError);
}

TEST(StandardIntegrals, QuadratureMatchesAsymptote) {
  Ball4Options opt;
  const auto r = ball4_integrate(
      [](const FourVector &k) {
        const double d = k.norm_sq() + 1.0;
        return Complex(1.0 / (d * d));
      },
      100.0, opt);
  const Complex q = I * r.value.real();
  const Complex a = standard_integral_log(FourVector{}, 1.0, 100.0);
  EXPECT_LE(std::abs(q - a), 5e-3 * std::abs(a));
}

TEST(StandardIntegrals, VectorVanishesAtZeroMomentum) {
  for (int nu = 1; nu <= 4; ++nu)
    EXPECT_EQ(standard_integral_vector(FourVector{}, 2.0, 50.0, nu), Complex(0.0));
  EXPECT_LE(std::abs(standard_integral_difference(FourVector{1, 0, 0, 0}, 1) +
                     kPi2 / 2.0),
            1e-15);
  EXPECT_EQ(standard_integral_difference(FourVector{1, 0, 0, 0}, 2), Complex(0.0));
}

TEST(StandardIntegrals, DifferenceFollowsFromAsymptotes) {
  // i (p_nu I_log - I_vec_nu) is L independent.
  const FourVector p{0.2, -0.1, 0.3, 0.4};
  const double l = 2.0;
  for (double L : {1e2, 1e4}) {
    for (int nu = 1; nu <= 4; ++nu) {
      const Complex combo = I * (p.component(nu) * standard_integral_log(p, l, L) -
                                 standard_integral_vector(p, l, L, nu));
      EXPECT_LE(std::abs(combo - standard_integral_difference(p, nu)), 1e-12);
    }
  }
}

TEST(StandardIntegrals, VectorLadderLogCoefficient) {
  // Euclidean int k_nu / ((k - p)^2 + Delta)^2 grows as 2 pi^2 p_nu ln L.
  const FourVector p{0.0, 0.0, 0.0, 0.7};
  const double delta = 1.0;
  Ball4Options opt;
  opt.axis = p;
  std::vector<double> radii = geometric_grid(10.0, 1000.0, 9);
  SampledIntegral s;
  for (double L : radii) {
    const auto r = ball4_integrate(
        [&](const FourVector &k) {
          const double d = (k - p).norm_sq() + delta;
          return Complex(k.p4 / (d * d));
        },
        L, opt);
    s.rungs.push_back({L, r.value, r.error, r.converged});
  }
  const std::vector<BasisFunction> basis{basis::log(), basis::constant(),
                                         basis::inverse(2)};
  const auto f = fit(s, basis);
  const Complex coef = I * f.coefficient(basis::log());
  EXPECT_LE(std::abs(coef - 2.0 * I * kPi2 * p.p4), 1e-2 * 2.0 * kPi2 * p.p4);
}

TEST(StandardIntegrals, ShiftedLadderFit) {
  const FourVector p{0.5, 0.2, 0.0, 0.1};
  const double delta = 1.3;
  const auto radii = geometric_grid(10.0, 1000.0, 9);
  const auto s = shifted_denominator_ladder(p, delta, radii);
  const std::vector<BasisFunction> basis{basis::log(), basis::constant(),
                                         basis::inverse(2)};
  const auto f = fit(s, basis);
  EXPECT_NEAR(f.coefficient(basis::log()).real(), 2.0 * kPi2, 1e-2 * 2.0 * kPi2);
  const double c = -kPi2 * (1.0 + std::log(delta));
  EXPECT_NEAR(f.coefficient(basis::constant()).real(), c, 3e-2 * std::abs(c));
}

TEST(TwoLnB, ClosedFormMatchesQuadratureOnGrid) {
  for (double m : {0.5, 1.0, 2.0})
    for (double p2 : {0.5, 1.0, 2.0})
      EXPECT_NEAR(two_ln_b(p2, m), two_ln_b_quadrature(p2, m), 1e-10)
          << "m=" << m << " p2=" << p2;
  EXPECT_NEAR(two_ln_b(1.0, 1.0), 2.0 * std::log(2.0) - 2.0, 1e-15);
  EXPECT_THROW(two_ln_b(0.0, 1.0), DomainError);
}

TEST(PhotonSigma, SmallRatioAndMonotone) {
  EXPECT_NEAR(photon_sigma(0.01), 0.01 / 30.0, 2e-2 * 0.01 / 30.0);
  EXPECT_EQ(photon_sigma(0.0), 0.0);
  double prev = 0.0;
  for (double r = 0.1; r < 100.0; r *= 2.0) {
    const double s = photon_sigma(r);
    EXPECT_GT(s, prev);
    prev = s;
  }
  EXPECT_THROW(photon_sigma(-1.0), DomainError);
}

TEST(FeynmanCombine, Identity) {
  EXPECT_NEAR(feynman_combine(1.0, 1.0).quadrature, 1.0, 1e-13);
  EXPECT_NEAR(feynman_combine(2.0, 3.0).quadrature, 1.0 / 6.0, 1e-13);
  Rng rng(61);
  for (int n = 0; n < 50; ++n) {
    const auto c = feynman_combine(rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0));
    EXPECT_LE(c.relative_deviation, 1e-9);
  }
  EXPECT_THROW(feynman_combine(0.0, 1.0), DomainError);
}

TEST(ElectronSelfEnergy, ReportContents) {
  ElectronOptions opt;
  opt.quadrature_cross_check = false;
  const FourVector p{0.0, 0.0, 0.0, 1.0};
  const double m = 1.0, e = 1.0;
  const auto r = electron_self_energy(p, m, e, opt);
  EXPECT_EQ(r.id, "5.1");
  EXPECT_TRUE(r.admissible());
  ASSERT_TRUE(r.factor.has_value());
  const double phi = 1.0 / (8.0 * kPi2);
  EXPECT_NEAR(phi, 0.0126651, 1e-7);
  const auto &h = r.factor->exponent().at(basis::log());
  EXPECT_LE((h - phi * ComplexMatrix::identity(4)).max_abs(), 1e-15);
  // ln A = (1 + 2 ln B) / 2 with 2 ln B = 2 ln 2 - 2 at m = p^2 = 1.
  EXPECT_NEAR(std::log(r.factor->reference_scale()), (2.0 * std::log(2.0) - 1.0) / 2.0,
              1e-14);
  EXPECT_TRUE(r.cross_checks_passed());
  EXPECT_TRUE(r.regular.rows() == 4);
  // regular = e^2 / (4 pi)^2 (m i + 2 p4 gamma_4) here.
  const auto expect = (1.0 / (16.0 * kPi2)) *
                      (I * ComplexMatrix::identity(4) + 2.0 * dirac::gamma(4));
  EXPECT_LE((r.regular - expect).max_abs(), 1e-15);
}

TEST(ElectronSelfEnergy, FactorAbsorbsConstantLogs) {
  // U^{-1} e^2 a(L) keeps only the momentum-dependent constant term.
  ElectronOptions opt;
  opt.quadrature_cross_check = false;
  const FourVector p{0.3, 0.0, 0.2, 0.9};
  const double m = 1.2, e = 0.5;
  const auto r = electron_self_energy(p, m, e, opt);
  for (double L : {1e2, 1e4}) {
    const auto total = (e * e) * r.expansion.evaluate(L);
    const auto phase = r.factor->phase(L);
    const auto rest = total - I * phase;
    const auto expect = (-(e * e) * kPi2 / 2.0 / std::pow(2.0 * kPi, 4)) *
                        dirac::gamma_contraction(dirac::slash(p));
    EXPECT_LE((rest - expect).max_abs(), 1e-14);
  }
}

TEST(ElectronSelfEnergy, QuadratureCrossCheck) {
  const auto r = electron_self_energy(FourVector{0.4, 0.0, 0.0, 0.8}, 1.0, 1.0);
  ASSERT_EQ(r.cross_checks.size(), 4u);
  for (const auto &c : r.cross_checks)
    EXPECT_TRUE(c.passed) << c.name << " deviation " << c.deviation;
}

TEST(ElectronSelfEnergy, Errors) {
  EXPECT_THROW(electron_self_energy(FourVector{}, 1.0, 1.0), DomainError);
  EXPECT_THROW(electron_self_energy(FourVector{1, 0, 0, 0}, 0.0, 1.0), DomainError);
}

TEST(PhotonSelfEnergy, ReportContents) {
  const double p2 = 0.5, m = 1.0, e = 1.0;
  const auto r = photon_self_energy(p2, m, e);
  EXPECT_TRUE(r.admissible());
  ASSERT_TRUE(r.factor.has_value());
  const double phi = -8.0 * kPi2 * e * e * p2 / (std::pow(2.0 * kPi, 4) * 3.0);
  EXPECT_NEAR(r.factor->exponent().at(basis::log())(0, 0).real(), phi, 1e-16);
  EXPECT_EQ(r.factor->reference_scale(), m);
  for (double L : {1e2, 1e3, 1e4})
    EXPECT_NEAR(std::abs(evaluate_factor(*r.factor, L)(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(r.regular(0, 0).real(), -phi * photon_sigma(p2 / (m * m)), 1e-16);
}

TEST(PhotonSelfEnergy, ZeroMomentumDegenerates) {
  const auto r = photon_self_energy(0.0, 1.0, 1.0);
  EXPECT_TRUE(r.expansion.empty());
  ASSERT_TRUE(r.factor.has_value());
  EXPECT_TRUE(r.factor->is_identity());
  EXPECT_EQ(r.regular(0, 0), Complex(0.0));
}

TEST(PhotonSelfEnergy, SmallRatioCrossCheck) {
  const auto r = photon_self_energy(0.01, 1.0, 1.0);
  ASSERT_EQ(r.cross_checks.size(), 2u);
  EXPECT_TRUE(r.cross_checks_passed());
  EXPECT_THROW(photon_self_energy(1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(photon_self_energy(-1.0, 1.0, 1.0), DomainError);
}

TEST(PhotonSelfEnergy, NoQuadraticSignature) {
  // A ladder sampled from the reported expansion shows no L^2 term.
  const auto r = photon_self_energy(2.0, 1.0, 1.0);
  SampledIntegral s;
  for (double L : geometric_grid(10.0, 1e4, 12))
    s.rungs.push_back({L, r.expansion.evaluate_scalar(L), 0.0, true});
  const auto sig = detect_signature(s);
  EXPECT_FALSE(sig.contains(basis::power(2)));
  EXPECT_TRUE(sig.contains(basis::log()));
}

TEST(VertexPart, AdmissibilityDichotomy) {
  for (int mu = 1; mu <= 4; ++mu) {
    const auto r = vertex_part(1.0, 1.0, 0.01, 1e3, mu);
    EXPECT_EQ(r.admissible(), mu != 4) << "mu=" << mu;
    EXPECT_EQ(r.factor.has_value(), mu != 4);
    EXPECT_EQ(r.infrared_factor.has_value(), mu != 4);
    if (mu == 4) {
      EXPECT_FALSE(r.admissibility.violations.empty());
      ASSERT_EQ(r.notes.size(), 1u);
      EXPECT_NE(r.notes[0].find("gamma_4"), std::string::npos);
    } else {
      for (double L : {1e2, 1e3, 1e4}) {
        EXPECT_TRUE(evaluate_factor(*r.factor, L).is_unitary(1e-12));
        EXPECT_TRUE(evaluate_factor(*r.infrared_factor, L).is_unitary(1e-12));
      }
    }
  }
}

TEST(VertexPart, FactorMatchesClosedExponential) {
  // exp(-gamma_mu e^2 / (2pi)^2 [-1/4 ln(L^2/m^2) + ln(m/lambda)])
  const double m = 1.5, e = 0.7, lambda = 0.02, L = 800.0;
  const int mu = 2;
  const auto r = vertex_part(m, e, lambda, L, mu);
  const auto u = evaluate_factor(*r.factor, L) *
                 evaluate_factor(*r.infrared_factor, m / lambda);
  const double s = -e * e / (4.0 * kPi2) *
                   (-0.25 * std::log(L * L / (m * m)) + std::log(m / lambda));
  // gamma_mu^2 = -1, so exp(s gamma) = cos(s) + gamma sin(s).
  const auto oracle = std::cos(s) * ComplexMatrix::identity(4) +
                      std::sin(s) * dirac::gamma(mu);
  EXPECT_LE((u - oracle).max_abs(), 1e-14);
}

TEST(VertexPart, InfraredTermVanishesAtPhotonMassM) {
  const auto r = vertex_part(1.0, 1.0, 1.0, 100.0, 1);
  const auto ir = r.infrared_expansion->evaluate(1.0 / 1.0);
  EXPECT_EQ(ir.max_abs(), 0.0);
  EXPECT_TRUE(evaluate_factor(*r.infrared_factor, 1.0).is_unitary(0.0));
  EXPECT_LE((evaluate_factor(*r.infrared_factor, 1.0) - ComplexMatrix::identity(4)).max_abs(),
            1e-15);
}

TEST(VertexPart, Errors) {
  EXPECT_THROW(vertex_part(1.0, 1.0, 0.0, 10.0, 1), DomainError);
  EXPECT_THROW(vertex_part(1.0, 1.0, 2.0, 10.0, 1), DomainError);
  EXPECT_THROW(vertex_part(1.0, 1.0, 0.5, 0.5, 1), DomainError);
  EXPECT_THROW(vertex_part(1.0, 1.0, 0.5, 10.0, 5), DomainError);
}
