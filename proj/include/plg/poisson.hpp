#ifndef PLG_POISSON_HPP
#define PLG_POISSON_HPP

// Bivectors are handled only through their pairing matrices in a declared
// frame: M(i,j) = pi(alpha_i, alpha_j), with (u^v)(a,b) = a(u)b(v) - a(v)b(u).

#include "grp.hpp"

#include <random>

namespace plg {

template <class R>
struct framed {
  rmat<R> m;
  std::vector<std::string> frame;
};

template <class R>
std::vector<std::string> frame_k(const basis_data<R>& B)
{
  std::vector<std::string> f;
  for (int a = 0; a < B.dim(); ++a) f.push_back(B.name(a));
  return f;
}

template <class R>
std::vector<std::string> frame_kstar(const basis_data<R>& B)
{
  std::vector<std::string> f;
  for (int a = 0; a < B.dim(); ++a) f.push_back(B.name(a) + "*");
  return f;
}

template <class R>
std::vector<std::string> frame_cotangent(const basis_data<R>& B)
{
  auto f = frame_k(B);
  for (auto& x : frame_kstar(B)) f.push_back(x);
  return f;
}

// r = (1/2) sum_b b ^ b* on g = k + an, in the real basis (b_1..b_d, b*_1..b*_d).
template <class R>
struct double_r {
  std::vector<cmat<R>> g_basis;
  rmat<R> coeff;
};

template <class R>
double_r<R> r_matrix_double(const basis_data<R>& B, R s)
{
  const int d = B.dim();
  double_r<R> r;
  r.g_basis = B.elements;
  for (auto& x : dual_basis_an(B, s)) r.g_basis.push_back(x);
  r.coeff = rmat<R>::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    r.coeff(i, d + i) = R(0.5);
    r.coeff(d + i, i) = R(-0.5);
  }
  return r;
}

// Coordinates of Z in (b, b*): the k part pairs with b*, the an part with b.
template <class R>
rvec<R> g_coords(const basis_data<R>& B, const std::vector<cmat<R>>& duals, const cmat<R>& Z, R s)
{
  const int d = B.dim();
  rvec<R> c(2 * d);
  for (int i = 0; i < d; ++i) {
    c(i) = pairing_s(Z, duals[i], s);
    c(d + i) = pairing_s(Z, B.elements[i], s);
  }
  return c;
}

// (L_{p^-1})_* (pi_AN)_p = (1/2) sum Pr_an(Ad_{p^-1} b) ^ Ad_{p^-1} b*, with
// each X in B acting as the covector <., X>_s.
template <class R>
framed<R> pi_an(const basis_data<R>& B, const cmat<R>& p, R s)
{
  const int d = B.dim();
  const auto duals = dual_basis_an(B, s);
  const cmat<R> pinv = p.inverse();
  rmat<R> U(d, d), V(d, d);  // U(a,c) = <Pr(Ad b_c), X_a>, V(a,c) = <Ad b*_c, X_a>
  for (int c = 0; c < d; ++c) {
    const cmat<R> u = proj_an(cmat<R>(pinv * B.elements[c] * p));
    const cmat<R> v = pinv * duals[c] * p;
    for (int a = 0; a < d; ++a) {
      U(a, c) = pairing_s(u, B.elements[a], s);
      V(a, c) = pairing_s(v, B.elements[a], s);
    }
  }
  rmat<R> M = (U * V.transpose() - V * U.transpose()) / 2;
  return {M, frame_k(B)};
}

template <class R>
framed<R> pi_an_su2_closed(const su2_an<R>& p, R s)
{
  const R a = p.a, u = p.u, v = p.v;
  rmat<R> M = rmat<R>::Zero(3, 3);
  M(1, 0) = u / (a * s);
  M(2, 0) = v / (a * s);
  M(1, 2) = (u * u + v * v - a * a + 1 / (a * a)) / (2 * s * a * a);
  M(0, 1) = -M(1, 0);
  M(0, 2) = -M(2, 0);
  M(2, 1) = -M(1, 2);
  return {M, {"t", "x", "y"}};
}

// The right-translated bivector (R_{p^-1})_* (pi_AN)_p, which equals
// -pi_an(p^-1) by multiplicativity.
template <class R>
framed<R> pi_an_right(const basis_data<R>& B, const cmat<R>& p, R s)
{
  auto f = pi_an(B, cmat<R>(p.inverse()), s);
  f.m = -f.m;
  return f;
}

// pi_K = (r^L - r^R)|_K in the left frame: r - Ad_{k^-1} r, computed on the
// double and checked to be tangent to K.
template <class R>
framed<R> pi_k(const basis_data<R>& B, const cmat<R>& k, R s)
{
  const int d = B.dim();
  const auto r = r_matrix_double(B, s);
  const std::vector<cmat<R>> duals(r.g_basis.begin() + d, r.g_basis.end());
  const cmat<R> kinv = k.inverse();
  rmat<R> A(2 * d, 2 * d);
  for (int J = 0; J < 2 * d; ++J) A.col(J) = g_coords(B, duals, cmat<R>(kinv * r.g_basis[J] * k), s);
  const rmat<R> D = r.coeff - A * r.coeff * A.transpose();
  const R off = std::max(D.block(0, d, 2 * d, d).cwiseAbs().maxCoeff(), D.block(d, 0, d, 2 * d).cwiseAbs().maxCoeff());
  if (off > R(1e-10) * (1 + s)) throw internal_error("pi_k is not tangent to K");
  return {rmat<R>(D.block(0, 0, d, d)), frame_k(B)};
}

// r_{K,s} as a skew matrix on B: s x^y for su(2), s sum x_ij ^ y_ij otherwise
// (validated against pi_k before it is returned).
template <class R>
rmat<R> r_matrix_k(const basis_data<R>& B, R s)
{
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  const int d = B.dim();
  rmat<R> r = rmat<R>::Zero(d, d);
  for (int a = 0; a + 1 < d; ++a)
    if (B.labels[a].sym == 'x') {
      r(a, a + 1) = s;
      r(a + 1, a) = -s;
    }
  if (B.n == 2) return r;

  std::mt19937_64 rng(20240917);
  for (int trial = 0; trial < 20; ++trial) {
    const cmat<R> k = random_su<R>(B.n, rng);
    const rmat<R> A = Ad_matrix(B, cmat<R>(k.inverse()));
    const rmat<R> cand = r - A * r * A.transpose();
    if ((pi_k(B, k, s).m - cand).cwiseAbs().maxCoeff() > R(1e-9))
      throw unsupported("r_matrix_k candidate fails validation against pi_k");
  }
  return r;
}

}  // namespace plg

#endif
