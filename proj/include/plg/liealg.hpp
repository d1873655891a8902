#ifndef PLG_LIEALG_HPP
#define PLG_LIEALG_HPP

// su(n), sl(n,C) and an realized as traceless complex matrices, with the
// orthonormal basis of su(n), the pairing <.,.>_s and its dual basis in an.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace plg {

template <class R> using cplx = std::complex<R>;
template <class R> using cmat = Eigen::Matrix<cplx<R>, Eigen::Dynamic, Eigen::Dynamic>;
template <class R> using rmat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
template <class R> using rvec = Eigen::Matrix<R, Eigen::Dynamic, 1>;

struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class kind { general, compact, an };

// 't' carries the torus index in i (j = -1); 'x', 'y' carry the 0-based pair i < j.
struct label {
  char sym;
  int i;
  int j;

  std::string str() const
  {
    if (sym == 't') return "t" + std::to_string(i + 1);
    return std::string(1, sym) + std::to_string(i + 1) + std::to_string(j + 1);
  }
};

template <class R>
struct basis_data {
  int n = 0;
  std::vector<cmat<R>> elements;
  std::vector<label> labels;
  std::vector<R> c;  // [e_a, e_b] = sum_e c[(a*d + b)*d + e] e_e

  int dim() const { return n * n - 1; }
  R structure(int a, int b, int e) const { return c[(a * dim() + b) * dim() + e]; }

  // Short names (t, x, y) for su(2); indexed names otherwise.
  std::string name(int a) const
  {
    if (n == 2) return std::string(1, labels[a].sym);
    return labels[a].str();
  }
};

template <class R>
R sqrt2()
{
  return std::sqrt(R(2));
}

template <class R>
void check_same_size(const cmat<R>& X, const cmat<R>& Y)
{
  if (X.rows() != Y.rows() || X.cols() != Y.cols() || X.rows() != X.cols())
    throw std::invalid_argument("dimension mismatch");
}

template <class R>
cplx<R> killing(const cmat<R>& X, const cmat<R>& Y)
{
  check_same_size(X, Y);
  return R(2 * X.rows()) * (X * Y).trace();
}

// (X,Y) = -kappa(X,Y); real and positive definite on su(n).
template <class R>
R inner(const cmat<R>& X, const cmat<R>& Y)
{
  return -killing(X, Y).real();
}

template <class R>
R pairing_s(const cmat<R>& Z, const cmat<R>& W, R s)
{
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  return -killing(Z, W).imag() / s;
}

template <class R>
cmat<R> bracket(const cmat<R>& X, const cmat<R>& Y)
{
  check_same_size(X, Y);
  return X * Y - Y * X;
}

template <class R>
bool is_traceless(const cmat<R>& Z, R tol = R(1e-12))
{
  return std::abs(Z.trace()) < tol;
}

template <class R>
bool is_compact(const cmat<R>& Z, R tol = R(1e-12))
{
  return is_traceless(Z, tol) && (Z + Z.adjoint()).norm() < tol;
}

template <class R>
bool is_an(const cmat<R>& Z, R tol = R(1e-12))
{
  if (!is_traceless(Z, tol)) return false;
  for (int i = 0; i < Z.rows(); ++i) {
    if (std::abs(Z(i, i).imag()) > tol) return false;
    for (int j = 0; j < i; ++j)
      if (std::abs(Z(i, j)) > tol) return false;
  }
  return true;
}

// Coordinates of Z in the orthonormal basis; exact for Z in su(n).
// Also serves as phi^-1, since phi maps b* to b coordinate-wise.
template <class R>
rvec<R> to_coords(const basis_data<R>& B, const cmat<R>& Z)
{
  rvec<R> c(B.dim());
  for (int a = 0; a < B.dim(); ++a) c(a) = inner(Z, B.elements[a]);
  return c;
}

template <class R>
cmat<R> from_coords(const basis_data<R>& B, const rvec<R>& c)
{
  if (c.size() != B.dim()) throw std::invalid_argument("dimension mismatch");
  cmat<R> Z = cmat<R>::Zero(B.n, B.n);
  for (int a = 0; a < B.dim(); ++a) Z += c(a) * B.elements[a];
  return Z;
}

template <class R>
cmat<R> phi(const basis_data<R>& B, const rvec<R>& lambda)
{
  return from_coords(B, lambda);
}

template <class R>
rvec<R> phi_inv(const basis_data<R>& B, const cmat<R>& X)
{
  return to_coords(B, X);
}

template <class R = double>
basis_data<R> basis_su_n(int n)
{
  if (n < 2) throw std::invalid_argument("basis_su_n needs n >= 2");
  using C = cplx<R>;
  const C I(0, 1);
  basis_data<R> B;
  B.n = n;
  auto ip = [](const cmat<R>& X, const cmat<R>& Y) { return inner(X, Y); };

  // Gram-Schmidt on i(E_ii - E_{i+1,i+1}).
  for (int i = 0; i + 1 < n; ++i) {
    cmat<R> M = cmat<R>::Zero(n, n);
    M(i, i) = I;
    M(i + 1, i + 1) = -I;
    for (const auto& T : B.elements) M -= ip(M, T) * T;
    M /= std::sqrt(ip(M, M));
    B.elements.push_back(M);
    B.labels.push_back({'t', i, -1});
  }
  const R w = R(1) / (R(2) * std::sqrt(R(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cmat<R> X = cmat<R>::Zero(n, n), Y = cmat<R>::Zero(n, n);
      X(i, j) = w;
      X(j, i) = -w;
      Y(i, j) = I * w;
      Y(j, i) = I * w;
      B.elements.push_back(X);
      B.labels.push_back({'x', i, j});
      B.elements.push_back(Y);
      B.labels.push_back({'y', i, j});
    }

  const int d = B.dim();
  B.c.assign(std::size_t(d) * d * d, R(0));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      rvec<R> v = to_coords(B, bracket(B.elements[a], B.elements[b]));
      for (int e = 0; e < d; ++e) B.c[(a * d + b) * d + e] = v(e);
    }
  return B;
}

// Matrix of ad_X on coordinates.
template <class R>
rmat<R> ad_matrix(const basis_data<R>& B, const rvec<R>& X)
{
  const int d = B.dim();
  rmat<R> M = rmat<R>::Zero(d, d);
  for (int b = 0; b < d; ++b)
    for (int e = 0; e < d; ++e) {
      R acc = 0;
      for (int a = 0; a < d; ++a) acc += X(a) * B.structure(a, b, e);
      M(e, b) = acc;
    }
  return M;
}

// Matrix of Ad_k on coordinates; orthogonal for k in SU(n).
template <class R>
rmat<R> Ad_matrix(const basis_data<R>& B, const cmat<R>& k)
{
  const int d = B.dim();
  rmat<R> M(d, d);
  const cmat<R> kinv = k.inverse();
  for (int b = 0; b < d; ++b) M.col(b) = to_coords(B, cmat<R>(k * B.elements[b] * kinv));
  return M;
}

// <ad*_X lam, Y> = -<lam, [X,Y]>; phi intertwines ad* with ad.
template <class R>
rvec<R> ad_star(const basis_data<R>& B, const rvec<R>& X, const rvec<R>& lambda)
{
  return to_coords(B, bracket(from_coords(B, X), from_coords(B, lambda)));
}

template <class R>
rvec<R> Ad_star(const basis_data<R>& B, const cmat<R>& k, const rvec<R>& lambda)
{
  return to_coords(B, cmat<R>(k * from_coords(B, lambda) * k.inverse()));
}

template <class R>
cmat<R> proj_an(const cmat<R>& Z)
{
  const int n = Z.rows();
  cmat<R> P = cmat<R>::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    P(i, i) = Z(i, i).real();
    for (int j = i + 1; j < n; ++j) P(i, j) = Z(i, j) + std::conj(Z(j, i));
  }
  return P;
}

template <class R>
cmat<R> proj_k(const cmat<R>& Z)
{
  return Z - proj_an(Z);
}

// The an chart: diag(E_ii - E_{i+1,i+1}), then E_ij, iE_ij for i < j.
template <class R>
std::vector<cmat<R>> an_chart(int n)
{
  std::vector<cmat<R>> out;
  for (int i = 0; i + 1 < n; ++i) {
    cmat<R> H = cmat<R>::Zero(n, n);
    H(i, i) = 1;
    H(i + 1, i + 1) = -1;
    out.push_back(H);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cmat<R> E = cmat<R>::Zero(n, n), F = cmat<R>::Zero(n, n);
      E(i, j) = 1;
      F(i, j) = cplx<R>(0, 1);
      out.push_back(E);
      out.push_back(F);
    }
  return out;
}

template <class R>
std::vector<cmat<R>> dual_basis_an(const basis_data<R>& B, R s)
{
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  const int d = B.dim();
  const auto chart = an_chart<R>(B.n);
  rmat<R> G(d, d);
  for (int i = 0; i < d; ++i)
    for (int m = 0; m < d; ++m) G(i, m) = pairing_s(B.elements[i], chart[m], s);
  Eigen::FullPivLU<rmat<R>> lu(G);
  if (!lu.isInvertible()) throw internal_error("pairing system is singular");
  const rmat<R> Cf = lu.inverse();
  std::vector<cmat<R>> out;
  for (int j = 0; j < d; ++j) {
    cmat<R> Z = cmat<R>::Zero(B.n, B.n);
    for (int m = 0; m < d; ++m) Z += Cf(m, j) * chart[m];
    out.push_back(Z);
  }
  return out;
}

// Coordinates of an element of an in the dual basis: c_i = <Z, b_i>_s.
template <class R>
rvec<R> an_coords(const basis_data<R>& B, const cmat<R>& Z, R s)
{
  rvec<R> c(B.dim());
  for (int a = 0; a < B.dim(); ++a) c(a) = pairing_s(Z, B.elements[a], s);
  return c;
}

template <class R>
cmat<R> from_an_coords(const std::vector<cmat<R>>& duals, const rvec<R>& c)
{
  cmat<R> Z = cmat<R>::Zero(duals[0].rows(), duals[0].cols());
  for (int a = 0; a < c.size(); ++a) Z += c(a) * duals[a];
  return Z;
}

}  // namespace plg

#endif
