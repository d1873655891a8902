#ifndef PLG_DELIN_HPP
#define PLG_DELIN_HPP

// The delinearized structure D(omega_can) on T*SU(2) and its Poisson bivector.
//
// Convention: the AN x K dressing b -> pr_AN(k b) pairs consistently only with
// the right-invariant Maurer-Cartan form Theta^R(db) = db b^-1, so that is the
// form used in every moment-map pairing here. With it, D(omega)(X_M, .) =
// Psi_L^* <Theta^R, X>_s holds exactly, and all SU(2) formulas keep their
// familiar shape with gamma = (e^{-s sqrt2 xi} - 1)/(2s).

#include "cotangent.hpp"

namespace plg {

template <class R>
void require_su2(const basis_data<R>& B)
{
  if (B.n != 2) throw unsupported("only implemented for SU(2)");
}

template <class R>
R gamma_coeff(R xi, R s)
{
  return std::expm1(-s * sqrt2<R>() * xi) / (2 * s);
}

template <class R>
struct delin_scalars {
  R xi, eta1, eta2, s, Delta;
  R a, u, v;
  R gamma, epsilon, delta_small;
};

template <class R>
delin_scalars<R> scalars(const rvec<R>& lambda, R s)
{
  delin_scalars<R> c;
  c.xi = lambda(0);
  c.eta1 = lambda(1);
  c.eta2 = lambda(2);
  c.s = s;
  c.Delta = lambda.norm();
  const auto p = es_su2_closed(c.xi, c.eta1, c.eta2, s);
  c.a = p.a;
  c.u = p.u;
  c.v = p.v;
  c.gamma = gamma_coeff(c.Delta, s);
  const R x = s * c.Delta / sqrt2<R>();
  c.epsilon = std::sinh(x) * c.Delta + std::cosh(x) * c.xi;
  c.delta_small = c.u * c.u + c.v * c.v - c.a * c.a + 1 / (c.a * c.a);
  return c;
}

template <class R>
struct polar_kstar {
  cmat<R> h;
  R lambda_chamber;
};

// xi = Ad*_h (|xi| t*), h the geodesic rotation taking t to xi/|xi|.
template <class R>
polar_kstar<R> polar_decompose_kstar(const basis_data<R>& B, const rvec<R>& xi)
{
  require_su2(B);
  const R D = xi.norm();
  if (!(D > 0)) throw std::invalid_argument("xi must be nonzero");
  const Eigen::Matrix<R, 3, 1> t(1, 0, 0);
  const Eigen::Matrix<R, 3, 1> u = Eigen::Matrix<R, 3, 1>(xi(0), xi(1), xi(2)) / D;
  Eigen::Matrix<R, 3, 1> ax = t.cross(u);
  const R sn = ax.norm();
  const R ang = std::atan2(sn, t.dot(u));
  rvec<R> axis(3);
  if (sn < R(1e-14)) {
    if (t.dot(u) > 0) return {cmat<R>::Identity(2, 2), D};
    axis << 0, 1, 0;
  } else {
    ax /= sn;
    axis << ax(0), ax(1), ax(2);
  }
  const cmat<R> Z = (ang * sqrt2<R>()) * from_coords(B, axis);
  return {exp_antiherm(Z), D};
}

// Poisson bivector at (e, xi t*), xi > 0; frame t,x,y,t*,x*,y*.
template <class R>
framed<R> pi_delin_identity(const basis_data<R>& B, R xi, R s)
{
  require_su2(B);
  if (!(xi > 0)) throw std::invalid_argument("xi must be positive");
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  rmat<R> P = rmat<R>::Zero(6, 6);
  P(1, 2) = -1 / gamma_coeff(xi, s) - sqrt2<R>() / xi;
  P(2, 1) = -P(1, 2);
  P.block(0, 3, 3, 3) = rmat<R>::Identity(3, 3);
  P.block(3, 0, 3, 3) = -rmat<R>::Identity(3, 3);
  P(4, 5) = -xi / sqrt2<R>();
  P(5, 4) = -P(4, 5);
  return {P, frame_cotangent(B)};
}

// Poisson bivector at (k, xi) in the left frame. K x K block: the torus
// coefficients rotated by Ad_h, plus the r-matrix tail, which enters as
// -(Ad_{kh} r - r)^R_k under the Theta^R convention.
template <class R>
framed<R> pi_delin_at(const basis_data<R>& B, const cotangent_point<R>& pt, R s)
{
  require_su2(B);
  const auto pol = polar_decompose_kstar(B, pt.xi);
  const rmat<R> P0 = pi_delin_identity(B, pol.lambda_chamber, s).m;
  const rmat<R> Rh = Ad_matrix(B, pol.h);
  const rmat<R> Rk = Ad_matrix(B, cmat<R>(pt.k.inverse()));
  const rmat<R> r = r_matrix_k(B, s);
  rmat<R> P = rmat<R>::Zero(6, 6);
  P.block(0, 0, 3, 3) = Rh * P0.block(0, 0, 3, 3) * Rh.transpose() - (Rh * r * Rh.transpose() - Rk * r * Rk.transpose());
  P.block(0, 3, 3, 3) = rmat<R>::Identity(3, 3);
  P.block(3, 0, 3, 3) = -rmat<R>::Identity(3, 3);
  P.block(3, 3, 3, 3) = -bracket_block(B, pt.xi);
  return {P, frame_cotangent(B)};
}

// an coordinates of Theta^R(d e_s(lambda) zeta), exact.
template <class R>
rvec<R> theta_r_de(const basis_data<R>& B, const rvec<R>& lambda, const rvec<R>& zeta, R s)
{
  const cmat<R> b = e_s(B, lambda, s);
  return an_coords(B, cmat<R>(d_e_s(B, lambda, zeta, s) * b.inverse()), s);
}

// X_i with e_i = (lambda_i/|lambda|^2) lambda + ad*_{X_i} lambda.
template <class R>
std::vector<rvec<R>> projection_generators(const rvec<R>& lambda)
{
  const R xi = lambda(0), e1 = lambda(1), e2 = lambda(2);
  const R c = sqrt2<R>() / lambda.squaredNorm();
  std::vector<rvec<R>> X(3, rvec<R>(3));
  X[0] << 0, c * e2, -c * e1;
  X[1] << -c * e2, 0, c * xi;
  X[2] << c * e1, -c * xi, 0;
  return X;
}

// Omega^s on basis vectors from the pairings F(X, zeta) = Omega^s(ad*_X lam, zeta);
// the parallel-parallel pairing is zero by skew-symmetry.
template <class R, class F>
rmat<R> assemble_omega_s(const rvec<R>& lambda, F pairing)
{
  const auto X = projection_generators(lambda);
  const rvec<R> lh = lambda / lambda.norm();
  rmat<R> C(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      C(i, j) = pairing(X[i], rvec<R>(rvec<R>::Unit(3, j))) - lh(i) * pairing(X[j], lh);
  return (C - C.transpose()) / 2;
}

template <class R>
rmat<R> omega_s_exact(const basis_data<R>& B, const rvec<R>& lambda, R s)
{
  auto F = [&](const rvec<R>& X, const rvec<R>& zeta) { return X.dot(theta_r_de(B, lambda, zeta, s)) - zeta.dot(X); };
  return assemble_omega_s(lambda, F);
}

// Omega^s at lambda with E_s^* <Theta^R, X>_s taken by central differences.
template <class R>
framed<R> omega_s_at(const basis_data<R>& B, const rvec<R>& lambda, R s, R h = R(1e-5))
{
  require_su2(B);
  if (!(lambda.norm() > 0)) throw std::invalid_argument("lambda must be nonzero");
  const cmat<R> binv = e_s(B, lambda, s).inverse();
  auto F = [&](const rvec<R>& X, const rvec<R>& zeta) {
    const cmat<R> d = (e_s(B, rvec<R>(lambda + h * zeta), s) - e_s(B, rvec<R>(lambda - h * zeta), s)) / (2 * h);
    return X.dot(an_coords(B, cmat<R>(d * binv), s)) - zeta.dot(X);
  };
  return {assemble_omega_s(lambda, F), frame_kstar(B)};
}

// D(omega_can) at (e, lambda), blocks [[A, B], [-B^T, C]].
template <class R>
framed<R> delin_identity(const basis_data<R>& B, const rvec<R>& lambda, R s)
{
  require_su2(B);
  if (!(lambda.norm() > 0)) throw std::invalid_argument("lambda must be nonzero");
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  const auto p = es_su2_closed(lambda(0), lambda(1), lambda(2), s);
  const R a = p.a, u = p.u, v = p.v;
  rmat<R> W = rmat<R>::Zero(6, 6);
  W(1, 0) = a * u / s;
  W(2, 0) = a * v / s;
  W(1, 2) = -a * a * (u * u + v * v + a * a - 1 / (a * a)) / (2 * s);
  W(0, 1) = -W(1, 0);
  W(0, 2) = -W(2, 0);
  W(2, 1) = -W(1, 2);
  for (int j = 0; j < 3; ++j) W.block(0, 3 + j, 3, 1) = theta_r_de(B, lambda, rvec<R>(rvec<R>::Unit(3, j)), s);
  W.block(3, 0, 3, 3) = -W.block(0, 3, 3, 3).transpose();
  W.block(3, 3, 3, 3) = omega_s_exact(B, lambda, s);
  return {W, frame_cotangent(B)};
}

// Right-invariance: D(omega) at (k, nu) is the pullback of its value at
// (e, Ad*_k nu) by blockdiag(Ad_k, Ad_k).
template <class R>
framed<R> delin_at(const basis_data<R>& B, const cotangent_point<R>& pt, R s)
{
  require_su2(B);
  const rmat<R> A = Ad_matrix(B, pt.k);
  rmat<R> J = rmat<R>::Zero(6, 6);
  J.block(0, 0, 3, 3) = A;
  J.block(3, 3, 3, 3) = A;
  const rmat<R> We = delin_identity(B, rvec<R>(A * pt.xi), s).m;
  return {J.transpose() * We * J, frame_cotangent(B)};
}

template <class R>
struct beta_result {
  rmat<R> fd;
  rmat<R> closed;
  R max_diff;
};

// beta_{a,b} = <Theta^R dE_s(b*), a>_s at lambda = xi t*.
template <class R>
beta_result<R> beta_coeffs(const basis_data<R>& B, R xi, R s, R h = R(1e-5), R tol = R(1e-7))
{
  require_su2(B);
  if (!(xi > 0)) throw std::invalid_argument("xi must be positive");
  rvec<R> lam = rvec<R>::Zero(3);
  lam(0) = xi;
  const cmat<R> binv = e_s(B, lam, s).inverse();
  rmat<R> fd(3, 3);
  for (int b = 0; b < 3; ++b) {
    const rvec<R> e = rvec<R>::Unit(3, b);
    const cmat<R> d = (e_s(B, rvec<R>(lam + h * e), s) - e_s(B, rvec<R>(lam - h * e), s)) / (2 * h);
    fd.col(b) = an_coords(B, cmat<R>(d * binv), s);
  }
  const R pxy = pi_delin_identity(B, xi, s).m(1, 2);
  rmat<R> closed = rmat<R>::Zero(3, 3);
  closed(0, 0) = 1;
  closed(1, 1) = closed(2, 2) = 1 + gamma_coeff(xi, s) * pxy;
  const R diff = (fd - closed).cwiseAbs().maxCoeff();
  if (!(diff < tol)) throw internal_error("beta coefficients disagree with the closed relations");
  return {fd, closed, diff};
}

// Theta^L d(E_s)_lambda(lambda) = a^2 (eps t* + eta1 x* + eta2 y*).
template <class R>
rvec<R> theta_des_radial(const rvec<R>& lambda, R s)
{
  if (!(lambda.norm() > 0)) throw std::invalid_argument("lambda must be nonzero");
  const auto c = scalars(lambda, s);
  rvec<R> v(3);
  v << c.epsilon, c.eta1, c.eta2;
  return c.a * c.a * v;
}

// Residual of a candidate K x K coefficient block at (e, lambda): the
// bivector built from it must invert D(omega) there.
template <class R>
R coefficient_residual(const basis_data<R>& B, const rvec<R>& lambda, R s, const rmat<R>& pi_kk)
{
  require_su2(B);
  rmat<R> P = rmat<R>::Zero(6, 6);
  P.block(0, 0, 3, 3) = pi_kk;
  P.block(0, 3, 3, 3) = rmat<R>::Identity(3, 3);
  P.block(3, 0, 3, 3) = -rmat<R>::Identity(3, 3);
  P.block(3, 3, 3, 3) = -bracket_block(B, lambda);
  return (delin_identity(B, lambda, s).m * P + rmat<R>::Identity(6, 6)).cwiseAbs().maxCoeff();
}

}  // namespace plg

#endif
