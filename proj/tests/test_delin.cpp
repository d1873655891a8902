#include <plg/plg.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace plg;

namespace {

const double r2 = std::sqrt(2.0);

rvec<double> v3(double a, double b, double c)
{
  rvec<double> v(3);
  v << a, b, c;
  return v;
}

double gapr(const rmat<double>& A, const rmat<double>& B) { return (A - B).cwiseAbs().maxCoeff(); }

const basis_data<double>& su2()
{
  static const auto B = basis_su_n<double>(2);
  return B;
}

}  // namespace

TEST(Gamma, SeriesAndSign)
{
  EXPECT_NEAR(gamma_coeff(1.0, 1e-8), -1 / r2, 1e-7);
  for (double xi : {0.1, 1.0, 5.0})
    for (double s : {0.05, 1.0, 2.0}) EXPECT_LT(gamma_coeff(xi, s), 0);
  EXPECT_NEAR(gamma_coeff(1.0, 0.5), (std::exp(-0.5 * r2) - 1) / 1.0, 1e-15);
}

TEST(Polar, Examples)
{
  const auto& B = su2();
  const auto p1 = polar_decompose_kstar(B, v3(2.0, 0, 0));
  EXPECT_LT((p1.h - cmat<double>::Identity(2, 2)).norm(), 1e-15);
  EXPECT_EQ(p1.lambda_chamber, 2.0);
  const auto p2 = polar_decompose_kstar(B, v3(-2.0, 0, 0));
  EXPECT_NEAR(p2.lambda_chamber, 2.0, 1e-15);
  EXPECT_LT((Ad_star(B, p2.h, v3(2.0, 0, 0)) - v3(-2.0, 0, 0)).norm(), 1e-13);
  sampler S(1);
  for (int i = 0; i < 20; ++i) {
    const rvec<double> xi = S.xi(3);
    const auto p = polar_decompose_kstar(B, xi);
    EXPECT_LT((Ad_star(B, p.h, v3(p.lambda_chamber, 0, 0)) - xi).norm(), 1e-11);
  }
  EXPECT_THROW(polar_decompose_kstar(B, rvec<double>(rvec<double>::Zero(3))), std::invalid_argument);
  EXPECT_THROW(polar_decompose_kstar(basis_su_n<double>(3), rvec<double>(rvec<double>::Ones(8))), unsupported);
}

TEST(PiDelinIdentity, Entries)
{
  const auto& B = su2();
  const auto P = pi_delin_identity(B, 1.0, 1.0);
  EXPECT_NEAR(P.m(4, 5), -1 / r2, 1e-15);
  EXPECT_EQ(P.m(0, 4), 0);
  EXPECT_EQ(P.m(1, 4), 1);
  EXPECT_NEAR(P.m(1, 2), -1 / gamma_coeff(1.0, 1.0) - r2, 1e-14);
  EXPECT_LT((P.m + P.m.transpose()).cwiseAbs().maxCoeff(), 0 + 1e-300);
  EXPECT_THROW(pi_delin_identity(B, -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(pi_delin_identity(B, 1.0, 0.0), std::invalid_argument);
}

TEST(PiDelinIdentity, XyEntryVanishesLinearly)
{
  const auto t = limit_sweep([&](double s) { return pi_delin_identity(su2(), 1.0, s).m(1, 2); }, default_grid());
  EXPECT_NEAR(t.slope, 1.0, 0.1);
  EXPECT_LT(std::abs(t.values.back()), 2e-4);
}

TEST(PiDelinAt, ReducesToIdentityFormula)
{
  const auto& B = su2();
  const cotangent_point<double> pt{cmat<double>::Identity(2, 2), v3(1.3, 0, 0)};
  EXPECT_LT(gapr(pi_delin_at(B, pt, 0.6).m, pi_delin_identity(B, 1.3, 0.6).m), 1e-14);
}

TEST(PiDelinAt, InverseOfDelin)
{
  const auto& B = su2();
  sampler S(2);
  for (int i = 0; i < 20; ++i) {
    const auto pt = S.point(2);
    const double s = S.s();
    EXPECT_LT((delin_at(B, pt, s).m * pi_delin_at(B, pt, s).m + rmat<double>::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(PiDelinAt, ConvergesToCanonicalInverse)
{
  const auto& B = su2();
  sampler S(3);
  const auto pt = S.point(2);
  const rmat<double> target = -omega_can_at(B, pt).m.inverse();
  EXPECT_LT(gapr(pi_delin_at(B, pt, 1e-5).m, target), 1e-3);
}

TEST(OmegaS, TorusEntriesVanish)
{
  const auto O = omega_s_at(su2(), v3(1.2, 0, 0), 0.7);
  EXPECT_LT(std::abs(O.m(0, 1)), 1e-9);
  EXPECT_LT(std::abs(O.m(2, 0)), 1e-9);
  EXPECT_EQ(O.frame[0], "t*");
}

TEST(OmegaS, FiniteDifferenceMatchesExact)
{
  const auto& B = su2();
  sampler S(4);
  for (int i = 0; i < 10; ++i) {
    const rvec<double> lam = S.xi(3);
    const double s = S.s();
    EXPECT_LT(gapr(omega_s_at(B, lam, s).m, omega_s_exact(B, lam, s)), 1e-7);
  }
}

TEST(OmegaS, VanishesLinearly)
{
  const rvec<double> lam = v3(1, 0.5, -0.3);
  const auto t = limit_sweep([&](double s) { return omega_s_exact(su2(), lam, s).cwiseAbs().maxCoeff(); }, default_grid());
  EXPECT_NEAR(t.slope, 1.0, 0.1);
}

TEST(OmegaS, IsTheFiberBlockOfDelin)
{
  const auto& B = su2();
  const rvec<double> lam = v3(-0.4, 1.1, 0.7);
  EXPECT_LT(gapr(delin_identity(B, lam, 0.9).m.block(3, 3, 3, 3), omega_s_at(B, lam, 0.9).m), 1e-7);
}

TEST(DelinIdentity, TorusStructure)
{
  const auto& B = su2();
  for (double xi : {0.5, 1.0, 3.0})
    for (double s : {0.1, 0.8}) {
      const double g = gamma_coeff(xi, s);
      const rmat<double> W = delin_identity(B, v3(xi, 0, 0), s).m;
      EXPECT_NEAR(W(1, 2), -g, 1e-12);
      EXPECT_NEAR(W(0, 3), 1, 1e-12);
      EXPECT_NEAR(W(1, 4), -r2 * g / xi, 1e-10);
      EXPECT_NEAR(W(2, 5), -r2 * g / xi, 1e-10);
      EXPECT_NEAR(W(0, 4), 0, 1e-12);
      EXPECT_NEAR(W(1, 5), 0, 1e-12);
      EXPECT_NEAR(W(2, 3), 0, 1e-12);
      EXPECT_LT(std::abs(W(0, 1)) + std::abs(W(0, 2)), 1e-14);
    }
}

TEST(DelinIdentity, ClosedABlockAgreesWithRightTranslatedBivector)
{
  const auto& B = su2();
  const rvec<double> lam = v3(0.7, 0.4, -0.9);
  const double s = 0.6;
  const rmat<double> A = delin_identity(B, lam, s).m.block(0, 0, 3, 3);
  EXPECT_LT(gapr(A, pi_an_right(B, e_s(B, lam, s), s).m), 1e-11);
}

TEST(DelinIdentity, TtEntryTendsToOne)
{
  const rvec<double> lam = v3(1, 0.5, -0.3);
  EXPECT_NEAR(delin_identity(su2(), lam, 1e-4).m(0, 3), 1, 1e-7);
}

TEST(DelinIdentity, Errors)
{
  EXPECT_THROW(delin_identity(su2(), rvec<double>(rvec<double>::Zero(3)), 1.0), std::invalid_argument);
  EXPECT_THROW(delin_identity(su2(), v3(1, 0, 0), 0.0), std::invalid_argument);
  const auto B3 = basis_su_n<double>(3);
  EXPECT_THROW(delin_identity(B3, rvec<double>(rvec<double>::Ones(8)), 1.0), unsupported);
}

TEST(DelinAt, ReducesAtIdentity)
{
  const auto& B = su2();
  const rvec<double> lam = v3(0.3, -0.8, 1.4);
  EXPECT_LT(gapr(delin_at(B, {cmat<double>::Identity(2, 2), lam}, 0.9).m, delin_identity(B, lam, 0.9).m), 1e-15);
}

TEST(DelinAt, SymplecticAtRandomPoints)
{
  const auto& B = su2();
  sampler S(5);
  for (int i = 0; i < 10; ++i) {
    const auto pt = S.point(2);
    const rmat<double> W = delin_at(B, pt, S.s()).m;
    EXPECT_LT((W + W.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GT(std::abs(W.determinant()), 1e-10);
  }
}

TEST(DelinAt, TendsToCanonicalForm)
{
  const auto& B = su2();
  sampler S(6);
  const auto pt = S.point(2);
  const auto t = limit_sweep([&](double s) { return gapr(delin_at(B, pt, s).m, omega_can_at(B, pt).m); }, default_grid());
  EXPECT_GE(t.slope, 0.9);
}

TEST(DelinAt, MomentMapResiduals)
{
  const auto& B = su2();
  sampler S(7);
  const cotangent_point<double> pt0{cmat<double>::Identity(2, 2), v3(1.1, 0, 0)};
  EXPECT_LT(moment_residual_pl(B, pt0, v3(1, 0, 0), 0.7), 1e-6);
  EXPECT_EQ(moment_residual_pl(B, pt0, rvec<double>(rvec<double>::Zero(3)), 0.7), 0);
  for (int i = 0; i < 5; ++i) {
    const auto pt = S.point(2);
    const double s = S.s();
    const rvec<double> X = S.direction(3);
    EXPECT_LT(moment_residual_pl(B, pt, X, s), 1e-6);
    EXPECT_LT(moment_residual_classical(B, pt, X, classical_case::mu_r_on_delin, s), 1e-6);
  }
}

TEST(DelinAt, ClosedAndJacobi)
{
  const auto& B = su2();
  sampler S(8);
  const auto pt = S.point(2);
  const double s = 0.7;
  auto W = chart_two_form(B, pt, [&](const cotangent_point<double>& q) { return delin_at(B, q, s).m; });
  EXPECT_LT(fd_exterior_derivative(W, rvec<double>(rvec<double>::Zero(6))), 1e-5);
  auto P = chart_bivector(B, pt, [&](const cotangent_point<double>& q) { return pi_delin_at(B, q, s).m; });
  EXPECT_LT(jacobi_residual(P, rvec<double>(rvec<double>::Zero(6))), 1e-5);
}

TEST(Beta, ClosedRelations)
{
  const auto& B = su2();
  for (double xi : {0.3, 1.3, 4.0})
    for (double s : {0.1, 0.8, 1.9}) {
      const auto b = beta_coeffs(B, xi, s);
      EXPECT_NEAR(b.fd(0, 0), 1, 1e-7);
      EXPECT_NEAR(b.fd(1, 0), 0, 1e-7);
      EXPECT_NEAR(b.fd(2, 0), 0, 1e-7);
      EXPECT_NEAR(b.fd(1, 1), -r2 * gamma_coeff(xi, s) / xi, 1e-7);
      EXPECT_NEAR(b.closed(2, 2), 1 + gamma_coeff(xi, s) * pi_delin_identity(B, xi, s).m(1, 2), 1e-15);
    }
  EXPECT_THROW(beta_coeffs(B, 1.0, 1.0, 1e-5, 1e-30), internal_error);
  EXPECT_THROW(beta_coeffs(B, 0.0, 1.0), std::invalid_argument);
}

TEST(RadialDerivative, Examples)
{
  for (double xi : {0.5, 2.0}) {
    const rvec<double> v = theta_des_radial(v3(xi, 0, 0), 0.9);
    EXPECT_NEAR(v(0), xi, 1e-13);
    EXPECT_NEAR(v(1), 0, 1e-15);
  }
  const rvec<double> lam = v3(0.4, -1.2, 0.8);
  EXPECT_LT((theta_des_radial(lam, 1e-6) - lam).norm(), 1e-5);
  EXPECT_THROW(theta_des_radial(rvec<double>(rvec<double>::Zero(3)), 1.0), std::invalid_argument);
}

TEST(RadialDerivative, FiniteDifferences)
{
  const auto& B = su2();
  sampler S(9);
  for (int i = 0; i < 10; ++i) {
    const rvec<double> lam = S.xi(3);
    const double s = S.s(), h = 1e-6;
    const cmat<double> p = e_s(B, lam, s);
    const cmat<double> d = (e_s(B, rvec<double>((1 + h) * lam), s) - e_s(B, rvec<double>((1 - h) * lam), s)) / (2 * h);
    EXPECT_LT((an_coords(B, cmat<double>(p.inverse() * d), s) - theta_des_radial(lam, s)).norm(), 1e-7);
  }
}

TEST(CoefficientResidual, SeparatesRightFromWrong)
{
  const auto& B = su2();
  const rvec<double> lam = v3(0.9, 0.2, -0.6);
  const double s = 0.8;
  const rmat<double> good = pi_delin_at(B, {cmat<double>::Identity(2, 2), lam}, s).m.block(0, 0, 3, 3);
  EXPECT_LT(coefficient_residual(B, lam, s, good), 1e-9);
  EXPECT_GT(coefficient_residual(B, lam, s, rmat<double>(rmat<double>::Zero(3, 3))), 1e-2);
}

TEST(DelinRelation, DifferenceIsPullbackOfOmegaS)
{
  EXPECT_TRUE(suite_delin_relation(10, 5).pass);
  EXPECT_TRUE(suite_right_invariance(10, 5).pass);
}
