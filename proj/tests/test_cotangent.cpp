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

cotangent_point<double> at_identity(const rvec<double>& xi) { return {cmat<double>::Identity(2, 2), xi}; }

}  // namespace

TEST(OmegaCan, ZeroFiber)
{
  const auto B = basis_su_n<double>(2);
  const auto W = omega_can_at(B, at_identity(rvec<double>::Zero(3)));
  rmat<double> want = rmat<double>::Zero(6, 6);
  want.block(0, 3, 3, 3) = rmat<double>::Identity(3, 3);
  want.block(3, 0, 3, 3) = -rmat<double>::Identity(3, 3);
  EXPECT_EQ((W.m - want).cwiseAbs().maxCoeff(), 0);
  ASSERT_EQ(W.frame.size(), 6u);
  EXPECT_EQ(W.frame[0], "t");
  EXPECT_EQ(W.frame[4], "x*");
}

TEST(OmegaCan, TorusBracketBlock)
{
  const auto B = basis_su_n<double>(2);
  const double x0 = 1.7;
  const rmat<double> C = omega_can_at(B, at_identity(v3(x0, 0, 0))).m.block(0, 0, 3, 3);
  EXPECT_NEAR(C(1, 2), x0 / r2, 1e-14);
  EXPECT_NEAR(C(0, 1), 0, 1e-15);
  EXPECT_NEAR(C(0, 2), 0, 1e-15);
  EXPECT_LT((C + C.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(OmegaCan, NondegenerateAndClosed)
{
  const auto B = basis_su_n<double>(2);
  sampler S(3);
  for (int i = 0; i < 5; ++i) {
    const auto pt = S.point(2);
    EXPECT_GT(std::abs(omega_can_at(B, pt).m.determinant()), 1e-10);
    auto W = chart_two_form(B, pt, [&](const cotangent_point<double>& q) { return omega_can_at(B, q).m; });
    EXPECT_LT(fd_exterior_derivative(W, rvec<double>(rvec<double>::Zero(6))), 1e-5);
  }
}

TEST(MomentMaps, AtIdentity)
{
  const auto B = basis_su_n<double>(2);
  const rvec<double> xi = v3(0.4, -1, 2);
  EXPECT_LT((mu_l(B, at_identity(xi)) - xi).norm(), 1e-15);
  EXPECT_LT((mu_r(B, at_identity(xi)) + xi).norm(), 0 + 1e-300);
  EXPECT_LT((psi_l(B, at_identity(xi), 0.5) - e_s(B, xi, 0.5)).norm(), 1e-15);
}

TEST(MomentMaps, LeftMapIsEquivariant)
{
  const auto B = basis_su_n<double>(3);
  sampler S(4);
  const auto pt = S.point(3);
  const cmat<double> k1 = S.k(3), k2 = S.k(3);
  EXPECT_LT((mu_l(B, act(B, k1, k2, pt)) - Ad_star(B, k1, mu_l(B, pt))).norm(), 1e-12);
  EXPECT_LT((mu_r(B, act(B, k1, k2, pt)) - Ad_star(B, k2, mu_r(B, pt))).norm(), 1e-12);
}

TEST(Generators, AtIdentity)
{
  const auto B = basis_su_n<double>(2);
  const rvec<double> lam = v3(1, 0.5, -0.3), X = v3(0.2, 0.7, -1.1), zero = rvec<double>::Zero(3);
  const auto L = inf_vf(B, X, zero, at_identity(lam));
  EXPECT_LT((L.k_dir - X).norm(), 1e-15);
  EXPECT_LT(L.v_dir.norm(), 1e-15);
  const auto R = inf_vf(B, zero, X, at_identity(lam));
  EXPECT_LT((R.k_dir + X).norm(), 1e-15);
  EXPECT_LT((R.v_dir - ad_star(B, X, lam)).norm(), 1e-15);
  EXPECT_EQ(inf_vf(B, zero, zero, at_identity(lam)).stacked().norm(), 0);
}

TEST(Generators, MatchActionDerivative)
{
  const auto B = basis_su_n<double>(2);
  sampler S(5);
  const auto pt = S.point(2);
  const rvec<double> X = S.direction(3), Y = S.direction(3);
  const double h = 1e-5;
  auto flow = [&](double e) {
    const auto q = act(B, exp_antiherm(cmat<double>(e * from_coords(B, X))), exp_antiherm(cmat<double>(e * from_coords(B, Y))), pt);
    rvec<double> v(6);
    v << to_coords(B, cmat<double>(pt.k.inverse() * q.k)), q.xi;
    return v;
  };
  const rvec<double> fd = (flow(h) - flow(-h)) / (2 * h);
  EXPECT_LT((fd - inf_vf(B, X, Y, pt).stacked()).norm(), 1e-8);
}

TEST(Generators, LeftToRightFrame)
{
  const auto B = basis_su_n<double>(2);
  sampler S(6);
  const cmat<double> k = S.k(2);
  const rvec<double> X = S.direction(3);
  // X^L_k = k X = (k X k^-1) k
  const cmat<double> lhs = k * from_coords(B, X);
  const cmat<double> rhs = from_coords(B, left_to_right(B, k, X)) * k;
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(DMuL, Examples)
{
  const auto B = basis_su_n<double>(2);
  const rvec<double> lam = v3(1, 0.5, -0.3), eta = v3(0.1, 0.2, 0.3), X = v3(-0.4, 0.9, 0.2), zero = rvec<double>::Zero(3);
  EXPECT_LT((d_mu_l(B, at_identity(lam), zero, eta) - eta).norm(), 1e-15);
  EXPECT_LT((d_mu_l(B, at_identity(lam), X, zero) - ad_star(B, X, lam)).norm(), 1e-15);
}

TEST(DMuL, FiniteDifferences)
{
  const auto B = basis_su_n<double>(2);
  sampler S(7);
  const auto pt = S.point(2);
  const rvec<double> X = S.direction(3), eta = S.direction(3);
  const double h = 1e-5;
  auto f = [&](double e) {
    return mu_l(B, cotangent_point<double>{exp_antiherm(cmat<double>(e * from_coords(B, X))) * pt.k, pt.xi + e * eta});
  };
  EXPECT_LT(((f(h) - f(-h)) / (2 * h) - d_mu_l(B, pt, X, eta)).norm(), 1e-6);
}

TEST(MomentResiduals, ClassicalOnCanonicalForm)
{
  const auto B = basis_su_n<double>(2);
  sampler S(8);
  for (int i = 0; i < 5; ++i) {
    const auto pt = S.point(2);
    const rvec<double> X = S.direction(3);
    EXPECT_LT(moment_residual_classical(B, pt, X, classical_case::mu_l_on_omega_can), 1e-6);
    EXPECT_LT(moment_residual_classical(B, pt, X, classical_case::mu_r_on_omega_can), 1e-6);
    EXPECT_EQ(moment_residual_classical(B, pt, rvec<double>(rvec<double>::Zero(3)), classical_case::mu_l_on_omega_can), 0);
  }
}
