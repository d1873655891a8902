#ifndef PLG_GRP_HPP
#define PLG_GRP_HPP

#include "liealg.hpp"

#include <Eigen/Eigenvalues>

#include <random>
#include <utility>

namespace plg {

template <class R>
struct su2_an {
  R a = 1;
  R u = 0;
  R v = 0;
};

template <class R>
struct kan_factors {
  cmat<R> k;
  cmat<R> b;
};

template <class R>
struct ank_factors {
  cmat<R> b;
  cmat<R> k;
};

template <class R>
cmat<R> tau(const cmat<R>& g)
{
  return g.adjoint();
}

template <class R>
cmat<R> flip(const cmat<R>& M)
{
  return M.colwise().reverse().rowwise().reverse();
}

template <class R>
void check_det_one(const cmat<R>& g)
{
  if (g.rows() != g.cols()) throw std::invalid_argument("matrix must be square");
  const cplx<R> det = g.determinant();
  if (!(std::abs(det - cplx<R>(1)) < R(1e-9))) throw std::invalid_argument("det must be 1");
}

// QR with the phases of diag(R) moved into Q, so the triangular factor has
// positive diagonal; the factorization is then unique.
template <class R>
std::pair<cmat<R>, cmat<R>> qr_positive(const cmat<R>& g)
{
  const int n = g.rows();
  Eigen::HouseholderQR<cmat<R>> qr(g);
  cmat<R> Q = qr.householderQ();
  cmat<R> T = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const R m = std::abs(T(i, i));
    if (!(m > 0)) throw std::invalid_argument("matrix is singular");
    const cplx<R> ph = T(i, i) / m;
    Q.col(i) *= ph;
    T.row(i) *= std::conj(ph);
    T(i, i) = m;
  }
  return {Q, T};
}

template <class R>
kan_factors<R> iwasawa_KAN(const cmat<R>& g)
{
  check_det_one(g);
  auto [Q, T] = qr_positive(g);
  return {Q, T};
}

// g = b k  <=>  J g^dag J = (J k^dag J)(J b^dag J), a QR factorization.
template <class R>
ank_factors<R> iwasawa_ANK(const cmat<R>& g)
{
  check_det_one(g);
  auto [Q, T] = qr_positive(cmat<R>(flip(cmat<R>(g.adjoint()))));
  return {flip(T).adjoint(), flip(Q).adjoint()};
}

template <class R>
cmat<R> dress_left(const cmat<R>& k, const cmat<R>& b)
{
  return iwasawa_ANK(cmat<R>(k * b)).b;
}

template <class R>
cmat<R> dress_right(const cmat<R>& k, const cmat<R>& b)
{
  return iwasawa_ANK(cmat<R>(k * b)).k;
}

template <class R>
cmat<R> f_map(const cmat<R>& b)
{
  return b * b.adjoint();
}

// Reverse Cholesky: the upper triangular, positive diagonal b with b b^dag = p.
template <class R>
cmat<R> f_inv(const cmat<R>& p)
{
  if (p.rows() != p.cols()) throw std::invalid_argument("matrix must be square");
  if ((p - p.adjoint()).norm() > R(1e-10) * (R(1) + p.norm()))
    throw std::invalid_argument("matrix is not Hermitian");
  Eigen::LLT<cmat<R>> llt(flip(p));
  if (llt.info() != Eigen::Success) throw std::invalid_argument("matrix is not positive definite");
  cmat<R> L = llt.matrixL();
  cmat<R> b = flip(L);
  for (int i = 0; i < b.rows(); ++i) {
    b(i, i) = b(i, i).real();
    for (int j = 0; j < i; ++j) b(i, j) = 0;
  }
  return b;
}

template <class R, class F>
cmat<R> herm_fun(const cmat<R>& H, F f)
{
  Eigen::SelfAdjointEigenSolver<cmat<R>> es(H);
  const auto& V = es.eigenvectors();
  rvec<R> mu = es.eigenvalues();
  for (int i = 0; i < mu.size(); ++i) mu(i) = f(mu(i));
  return V * mu.template cast<cplx<R>>().asDiagonal() * V.adjoint();
}

// exp of an anti-Hermitian matrix through the spectrum of the Hermitian -iZ.
template <class R>
cmat<R> exp_antiherm(const cmat<R>& Z)
{
  Eigen::SelfAdjointEigenSolver<cmat<R>> es(cmat<R>(cplx<R>(0, -1) * Z));
  const auto& V = es.eigenvectors();
  const rvec<R>& mu = es.eigenvalues();
  cmat<R> D = cmat<R>::Zero(mu.size(), mu.size());
  for (int i = 0; i < mu.size(); ++i) D(i, i) = std::polar(R(1), mu(i));
  return V * D * V.adjoint();
}

template <class R>
cmat<R> e_s(const basis_data<R>& B, const rvec<R>& lambda, R s)
{
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  const cmat<R> H = cplx<R>(0, 2 * s) * phi(B, lambda);
  return f_inv(herm_fun(H, [](R x) { return std::exp(x); }));
}

template <class R>
rvec<R> e_s_inv(const basis_data<R>& B, const cmat<R>& b, R s)
{
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  const cmat<R> L = herm_fun(f_map(b), [](R x) { return std::log(x); });
  return phi_inv(B, cmat<R>(cplx<R>(0, -1 / (2 * s)) * L));
}

// sinh(x)/x, with the series below |x| < 1e-4.
template <class R>
R sinhc(R x)
{
  if (std::abs(x) < R(1e-4)) return 1 + x * x / 6;
  return std::sinh(x) / x;
}

template <class R>
su2_an<R> es_su2_closed(R xi, R eta1, R eta2, R s)
{
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  const R D = std::sqrt(xi * xi + eta1 * eta1 + eta2 * eta2);
  const R x = s * D / sqrt2<R>();
  const R sh = s / sqrt2<R>() * sinhc(x);  // sinh(x)/D
  const R a = 1 / std::sqrt(std::cosh(x) + xi * sh);
  return {a, -a * eta2 * sh, a * eta1 * sh};
}

template <class R>
cmat<R> an_matrix(const su2_an<R>& p)
{
  cmat<R> b(2, 2);
  b << p.a, cplx<R>(p.u, p.v), 0, 1 / p.a;
  return b;
}

template <class R>
su2_an<R> su2_an_of(const cmat<R>& b)
{
  return {b(0, 0).real(), b(0, 1).real(), b(0, 1).imag()};
}

// Exact derivative of e_s at lambda in direction zeta: divided differences of
// exp on the spectrum of 2s i phi(lambda), then the derivative of the
// reverse Cholesky factor (b^-1 db is upper triangular with real diagonal).
template <class R>
cmat<R> d_e_s(const basis_data<R>& B, const rvec<R>& lambda, const rvec<R>& zeta, R s)
{
  const int n = B.n;
  const cplx<R> is(0, 2 * s);
  Eigen::SelfAdjointEigenSolver<cmat<R>> es(cmat<R>(is * phi(B, lambda)));
  const cmat<R>& V = es.eigenvectors();
  const rvec<R>& mu = es.eigenvalues();
  cmat<R> T = V.adjoint() * (is * phi(B, zeta)) * V;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const R d = mu(k) - mu(l);
      const R q = std::abs(d) < R(1e-8) ? 1 + d / 2 + d * d / 6 : std::expm1(d) / d;
      T(k, l) *= std::exp(mu(l)) * q;
    }
  const cmat<R> dP = V * T * V.adjoint();
  const cmat<R> P = herm_fun(cmat<R>(is * phi(B, lambda)), [](R x) { return std::exp(x); });
  const cmat<R> b = f_inv(P);
  const cmat<R> bi = b.inverse();
  cmat<R> X = bi * dP * bi.adjoint();
  for (int i = 0; i < n; ++i) {
    X(i, i) = X(i, i).real() / 2;
    for (int j = 0; j < i; ++j) X(i, j) = 0;
  }
  return b * X;
}

// Random inputs. Haar unitary via QR of a complex Ginibre matrix, det fixed to 1.
template <class R, class G>
cmat<R> random_su(int n, G& rng)
{
  std::normal_distribution<double> nd;
  cmat<R> Z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Z(i, j) = cplx<R>(R(nd(rng)), R(nd(rng)));
  auto [Q, T] = qr_positive(Z);
  const cplx<R> det = Q.determinant();
  Q.col(0) /= det;
  return Q;
}

template <class R, class G>
cmat<R> random_an(int n, G& rng, R scale = R(0.7))
{
  std::normal_distribution<double> nd;
  cmat<R> b = cmat<R>::Zero(n, n);
  R logsum = 0;
  for (int i = 0; i < n; ++i) {
    const R l = scale * R(nd(rng));
    b(i, i) = std::exp(l);
    logsum += l;
    for (int j = i + 1; j < n; ++j) b(i, j) = cplx<R>(R(nd(rng)), R(nd(rng))) * scale;
  }
  const R fix = std::exp(-logsum / n);
  for (int i = 0; i < n; ++i) b(i, i) *= fix;
  return b;
}

template <class R, class G>
cmat<R> random_sl(int n, G& rng)
{
  std::normal_distribution<double> nd;
  cmat<R> Z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Z(i, j) = cplx<R>(R(nd(rng)), R(nd(rng)));
  const cplx<R> det = Z.determinant();
  const cplx<R> r = std::pow(det, cplx<R>(R(1) / n));
  Z /= r;
  return Z;
}

template <class R, class G>
rvec<R> random_kstar(int d, G& rng, R rmin = R(0.1), R rmax = R(5))
{
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud{double(rmin), double(rmax)};
  rvec<R> v(d);
  for (int i = 0; i < d; ++i) v(i) = R(nd(rng));
  return v * (R(ud(rng)) / v.norm());
}

}  // namespace plg

#endif
