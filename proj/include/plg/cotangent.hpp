#ifndef PLG_COTANGENT_HPP
#define PLG_COTANGENT_HPP

// T*K = K x k* in the left trivialization. Tangent vectors are written in the
// frame (left-invariant K directions a^L, then vertical directions).

#include "poisson.hpp"

namespace plg {

template <class R>
struct cotangent_point {
  cmat<R> k;
  rvec<R> xi;
};

template <class R>
struct tangent {
  rvec<R> k_dir;
  rvec<R> v_dir;

  rvec<R> stacked() const
  {
    rvec<R> v(k_dir.size() + v_dir.size());
    v << k_dir, v_dir;
    return v;
  }
};

// C0(a,b) = <xi, [a,b]>.
template <class R>
rmat<R> bracket_block(const basis_data<R>& B, const rvec<R>& xi)
{
  const int d = B.dim();
  rmat<R> C(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      R acc = 0;
      for (int e = 0; e < d; ++e) acc += xi(e) * B.structure(a, b, e);
      C(a, b) = acc;
    }
  return C;
}

// omega((X,eta),(Y,zeta)) = <xi,[X,Y]> - <eta,Y> + <zeta,X>.
template <class R>
framed<R> omega_can_at(const basis_data<R>& B, const cotangent_point<R>& pt)
{
  const int d = B.dim();
  rmat<R> W = rmat<R>::Zero(2 * d, 2 * d);
  W.block(0, 0, d, d) = bracket_block(B, pt.xi);
  W.block(0, d, d, d) = rmat<R>::Identity(d, d);
  W.block(d, 0, d, d) = -rmat<R>::Identity(d, d);
  return {W, frame_cotangent(B)};
}

template <class R>
rvec<R> mu_l(const basis_data<R>& B, const cotangent_point<R>& pt)
{
  return Ad_star(B, pt.k, pt.xi);
}

template <class R>
rvec<R> mu_r(const basis_data<R>&, const cotangent_point<R>& pt)
{
  return -pt.xi;
}

template <class R>
cmat<R> psi_l(const basis_data<R>& B, const cotangent_point<R>& pt, R s)
{
  return e_s(B, mu_l(B, pt), s);
}

// L_{k1} R_{k2} (k, xi) = (k1 k k2^-1, Ad*_{k2} xi).
template <class R>
cotangent_point<R> act(const basis_data<R>& B, const cmat<R>& k1, const cmat<R>& k2, const cotangent_point<R>& pt)
{
  return {k1 * pt.k * k2.inverse(), Ad_star(B, k2, pt.xi)};
}

// Generator of (exp tX, exp tY): X^R_k - Y^L_k, vertical ad*_Y xi.
template <class R>
tangent<R> inf_vf(const basis_data<R>& B, const rvec<R>& X, const rvec<R>& Y, const cotangent_point<R>& pt)
{
  const rmat<R> Ainv = Ad_matrix(B, cmat<R>(pt.k.inverse()));
  return {Ainv * X - Y, ad_star(B, Y, pt.xi)};
}

// Left-frame K component to right-frame: X^L_k = (Ad_k X)^R_k.
template <class R>
rvec<R> left_to_right(const basis_data<R>& B, const cmat<R>& k, const rvec<R>& X)
{
  return Ad_matrix(B, k) * X;
}

// d mu_L at (k, lam) on the tangent (X^R_k, eta).
template <class R>
rvec<R> d_mu_l(const basis_data<R>& B, const cotangent_point<R>& pt, const rvec<R>& X_right, const rvec<R>& eta)
{
  return ad_star(B, X_right, mu_l(B, pt)) + Ad_star(B, pt.k, eta);
}

}  // namespace plg

#endif
