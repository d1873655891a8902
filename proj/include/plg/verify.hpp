#ifndef PLG_VERIFY_HPP
#define PLG_VERIFY_HPP

// Finite-difference harness. Around (k0, xi0) the chart is
// (u, w) -> (k0 exp(sum u_a a), xi0 + w); frame fields are moved into the
// chart with T = blockdiag(dexp(u), I), where k^-1 dk = dexp(u) du.

#include "delin.hpp"

#include <iomanip>
#include <random>
#include <sstream>

namespace plg {

struct residual_report {
  std::string name;
  double max_residual = 0;
  int num_samples = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
  std::vector<std::pair<std::string, double>> samples;
};

struct sweep_table {
  std::vector<double> s_values;
  std::vector<double> values;
  double slope = 0;
};

struct fd_options {
  double h = 1e-5;
  bool richardson = false;
};

// Central difference of a vector/matrix valued function of one real variable.
template <class R, class F>
auto central(F f, R h, bool richardson = false)
{
  auto d = [&](R hh) {
    auto p = f(hh);
    auto m = f(-hh);
    return decltype(p)((p - m) / (2 * hh));
  };
  auto d1 = d(h);
  if (!richardson) return d1;
  auto d2 = d(h / 2);
  return decltype(d1)((4 * d2 - d1) / 3);
}

template <class R>
cotangent_point<R> chart_point(const basis_data<R>& B, const cotangent_point<R>& p0, const rvec<R>& y)
{
  const int d = B.dim();
  const cmat<R> U = from_coords(B, rvec<R>(y.head(d)));
  return {p0.k * exp_antiherm(U), p0.xi + y.tail(d)};
}

// dexp(u) = sum_k (-1)^k/(k+1)! ad_U^k.
template <class R>
rmat<R> dexp_left(const basis_data<R>& B, const rvec<R>& u)
{
  const rmat<R> ad = ad_matrix(B, u);
  const int d = B.dim();
  rmat<R> term = rmat<R>::Identity(d, d), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = (-ad * term) / R(k + 1);
    sum += term;
    if (term.norm() < R(1e-30)) break;
  }
  return sum;
}

template <class R>
rmat<R> chart_jacobian(const basis_data<R>& B, const rvec<R>& y)
{
  const int d = B.dim();
  rmat<R> T = rmat<R>::Identity(2 * d, 2 * d);
  T.block(0, 0, d, d) = dexp_left(B, rvec<R>(y.head(d)));
  return T;
}

// Curve through pt along frame direction c.
template <class R>
cotangent_point<R> frame_curve(const basis_data<R>& B, const cotangent_point<R>& pt, int c, R eps)
{
  const int d = B.dim();
  if (c < d) return {pt.k * exp_antiherm(cmat<R>(eps * B.elements[c])), pt.xi};
  return {pt.k, pt.xi + eps * rvec<R>(rvec<R>::Unit(d, c - d))};
}

// Frame Jacobian of a map T*K -> T*K at pt, by central differences.
template <class R, class Map>
rmat<R> fd_frame_jacobian(const basis_data<R>& B, Map map, const cotangent_point<R>& pt, const fd_options& o = {})
{
  const int d = B.dim();
  const auto img = map(pt);
  const cmat<R> kinv = img.k.inverse();
  rmat<R> J(2 * d, 2 * d);
  for (int c = 0; c < 2 * d; ++c) {
    auto f = [&](R e) {
      const auto q = map(frame_curve(B, pt, c, e));
      rvec<R> v(2 * d);
      v << to_coords(B, cmat<R>(kinv * q.k)), q.xi;
      return v;
    };
    J.col(c) = central<R>(f, R(o.h), o.richardson);
  }
  return J;
}

// Generic pullback: J^T Omega(F(x)) J with J the central-difference Jacobian of F.
template <class R, class Form, class Map>
rmat<R> fd_pullback_two_form(Form form, Map F, const rvec<R>& x, const fd_options& o = {})
{
  const rvec<R> y = F(x);
  rmat<R> J(y.size(), x.size());
  for (int c = 0; c < x.size(); ++c) {
    auto f = [&](R e) { return rvec<R>(F(rvec<R>(x + e * rvec<R>::Unit(x.size(), c)))); };
    J.col(c) = central<R>(f, R(o.h), o.richardson);
  }
  return J.transpose() * form(y) * J;
}

// d omega(e_i,e_j,e_k) = d_i w_jk + d_j w_ki + d_k w_ij for a field of
// coordinate matrices y -> W(y); returns max |d omega| over i<j<k.
template <class R, class Field>
R fd_exterior_derivative(Field W, const rvec<R>& y0, const fd_options& o = {})
{
  const int m = y0.size();
  std::vector<rmat<R>> dW(m);
  for (int i = 0; i < m; ++i) {
    auto f = [&](R e) { return rmat<R>(W(rvec<R>(y0 + e * rvec<R>::Unit(m, i)))); };
    dW[i] = central<R>(f, R(o.h), o.richardson);
  }
  R worst = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        worst = std::max(worst, std::abs(dW[i](j, k) + dW[j](k, i) + dW[k](i, j)));
  return worst;
}

// Jacobi residual for the coordinate functions of a Poisson field given as
// y -> P(y) (P_ij = {y_i, y_j}); max over all triples.
template <class R, class Field>
R jacobi_residual(Field P, const rvec<R>& y0, const fd_options& o = {})
{
  const int m = y0.size();
  const rmat<R> P0 = P(y0);
  std::vector<rmat<R>> dP(m);
  for (int l = 0; l < m; ++l) {
    auto f = [&](R e) { return rmat<R>(P(rvec<R>(y0 + e * rvec<R>::Unit(m, l)))); };
    dP[l] = central<R>(f, R(o.h), o.richardson);
  }
  auto bb = [&](int i, int j, int k) {
    R acc = 0;
    for (int l = 0; l < m; ++l) acc += P0(i, l) * dP[l](j, k);
    return acc;
  };
  R worst = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) worst = std::max(worst, std::abs(bb(i, j, k) + bb(j, k, i) + bb(k, i, j)));
  return worst;
}

// A frame 2-form field as a chart field around p0.
template <class R, class FrameForm>
auto chart_two_form(const basis_data<R>& B, const cotangent_point<R>& p0, FrameForm W)
{
  return [&B, p0, W](const rvec<R>& y) {
    const rmat<R> T = chart_jacobian(B, y);
    return rmat<R>(T.transpose() * W(chart_point(B, p0, y)) * T);
  };
}

template <class R, class FrameBivector>
auto chart_bivector(const basis_data<R>& B, const cotangent_point<R>& p0, FrameBivector P)
{
  return [&B, p0, P](const rvec<R>& y) {
    const rmat<R> Ti = chart_jacobian(B, y).inverse();
    return rmat<R>(Ti * P(chart_point(B, p0, y)) * Ti.transpose());
  };
}

// Brackets of the coordinates (a, u, v) on AN for SU(2), from pi_an.
template <class R>
rmat<R> pi_an_coordinate_brackets(const basis_data<R>& B, const rvec<R>& auv, R s)
{
  const cmat<R> p = an_matrix(su2_an<R>{auv(0), auv(1), auv(2)});
  const auto duals = dual_basis_an(B, s);
  rmat<R> D(3, 3);
  for (int i = 0; i < 3; ++i) {
    const cmat<R> q = p * duals[i];
    D(0, i) = q(0, 0).real();
    D(1, i) = q(0, 1).real();
    D(2, i) = q(0, 1).imag();
  }
  return D * pi_an(B, p, s).m * D.transpose();
}

// D(omega)(X_M, .) - Psi_L^* <Theta^R, X>_s on the frame at pt.
template <class R>
R moment_residual_pl(const basis_data<R>& B, const cotangent_point<R>& pt, const rvec<R>& X, R s, const fd_options& o = {})
{
  const int d = B.dim();
  const rmat<R> W = delin_at(B, pt, s).m;
  const rvec<R> XM = inf_vf(B, X, rvec<R>(rvec<R>::Zero(d)), pt).stacked();
  const rvec<R> lhs = W.transpose() * XM;
  const cmat<R> binv = psi_l(B, pt, s).inverse();
  R worst = 0;
  for (int c = 0; c < 2 * d; ++c) {
    auto f = [&](R e) { return cmat<R>(psi_l(B, frame_curve(B, pt, c, e), s)); };
    const cmat<R> db = central<R>(f, R(o.h), o.richardson);
    const R rhs = X.dot(an_coords(B, cmat<R>(db * binv), s));
    worst = std::max(worst, std::abs(lhs(c) - rhs));
  }
  return worst;
}

enum class classical_case { mu_l_on_omega_can, mu_r_on_omega_can, mu_r_on_delin };

template <class R>
R moment_residual_classical(const basis_data<R>& B, const cotangent_point<R>& pt, const rvec<R>& X, classical_case which, R s = R(1),
                            const fd_options& o = {})
{
  const int d = B.dim();
  const rvec<R> zero = rvec<R>::Zero(d);
  const bool left = which == classical_case::mu_l_on_omega_can;
  const rmat<R> W = which == classical_case::mu_r_on_delin ? delin_at(B, pt, s).m : omega_can_at(B, pt).m;
  const rvec<R> XM = (left ? inf_vf(B, X, zero, pt) : inf_vf(B, zero, X, pt)).stacked();
  const rvec<R> lhs = W.transpose() * XM;
  R worst = 0;
  for (int c = 0; c < 2 * d; ++c) {
    auto f = [&](R e) {
      const auto q = frame_curve(B, pt, c, e);
      rvec<R> v(1);
      v(0) = X.dot(left ? mu_l(B, q) : mu_r(B, q));
      return v;
    };
    worst = std::max(worst, std::abs(lhs(c) - central<R>(f, R(o.h), o.richardson)(0)));
  }
  return worst;
}

// Dressing orbits on AN: <Theta^R(Y_AN(p)), X>_s for the AN x K dressing equals the
// right-translated bivector; <Theta^L(Y_AN(p)), X>_s for the K x AN dressing
// pr_AN(p k^-1) equals pi_an(p). Returns the larger of the two mismatches.
template <class R>
R dressing_orbit_residual(const basis_data<R>& B, const cmat<R>& p, R s, const fd_options& o = {})
{
  const int d = B.dim();
  const cmat<R> pinv = p.inverse();
  const rmat<R> PR = pi_an_right(B, p, s).m, PL = pi_an(B, p, s).m;
  R worst = 0;
  for (int j = 0; j < d; ++j) {
    auto right = [&](R e) { return cmat<R>(dress_left(exp_antiherm(cmat<R>(e * B.elements[j])), p)); };
    auto left = [&](R e) {
      const cmat<R> g = p * exp_antiherm(cmat<R>(-e * B.elements[j]));
      return cmat<R>(iwasawa_KAN(g).b);
    };
    const rvec<R> zr = an_coords(B, cmat<R>(central<R>(right, R(o.h), o.richardson) * pinv), s);
    const rvec<R> zl = an_coords(B, cmat<R>(pinv * central<R>(left, R(o.h), o.richardson)), s);
    for (int i = 0; i < d; ++i) worst = std::max({worst, std::abs(zr(i) - PR(i, j)), std::abs(zl(i) - PL(i, j))});
  }
  return worst;
}

// Least-squares slope of log|v| against log s.
inline double fit_slope(const std::vector<double>& s, const std::vector<double>& v)
{
  const int m = int(s.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = std::log(s[i]), y = std::log(std::abs(v[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

template <class Selector>
sweep_table limit_sweep(Selector sel, const std::vector<double>& grid)
{
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0)) throw std::invalid_argument("grid must be positive");
    if (i && !(grid[i] < grid[i - 1])) throw std::invalid_argument("grid must be decreasing");
  }
  sweep_table t;
  t.s_values = grid;
  for (double s : grid) t.values.push_back(sel(s));
  t.slope = fit_slope(t.s_values, t.values);
  return t;
}

inline std::vector<double> default_grid() { return {1e-1, 1e-2, 1e-3, 1e-4}; }

// Sampling of (k, xi, s): Haar k, |xi| in [0.1, 5], s in [0.05, 2].
struct sampler {
  std::mt19937_64 rng;
  explicit sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double s() { return uniform(0.05, 2); }
  rvec<double> xi(int d) { return random_kstar<double>(d, rng); }
  cmat<double> k(int n) { return random_su<double>(n, rng); }
  cotangent_point<double> point(int n) { return {k(n), xi(n * n - 1)}; }
  rvec<double> direction(int d)
  {
    std::normal_distribution<double> nd;
    rvec<double> v(d);
    for (int i = 0; i < d; ++i) v(i) = nd(rng);
    return v;
  }
};

inline residual_report make_report(std::string name, double worst, int n, double tol, std::string note = {})
{
  residual_report r;
  r.name = std::move(name);
  r.max_residual = worst;
  r.num_samples = n;
  r.tolerance = tol;
  r.pass = worst < tol;
  r.note = std::move(note);
  return r;
}

inline std::string sci(double v)
{
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

inline std::string fix(double v)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

inline double matrix_gap(const cmat<double>& A, const cmat<double>& B) { return (A - B).cwiseAbs().maxCoeff(); }

// ---- suites ----

inline residual_report suite_es_closed(std::uint64_t seed, int samples = 500)
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const rvec<double> lam = S.xi(3);
    const double s = S.s();
    const auto c = es_su2_closed(lam(0), lam(1), lam(2), s);
    worst = std::max(worst, matrix_gap(e_s(B, lam, s), an_matrix(c)));
  }
  return make_report("es_closed_vs_generic", worst, samples, 1e-10);
}

inline residual_report suite_pi_an_closed(std::uint64_t seed, int samples = 500)
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const cmat<double> p = random_an<double>(2, S.rng);
    const double s = S.s();
    worst = std::max(worst, (pi_an(B, p, s).m - pi_an_su2_closed(su2_an_of(p), s).m).cwiseAbs().maxCoeff());
  }
  return make_report("pi_an_closed_vs_generic", worst, samples, 1e-11);
}

inline residual_report suite_inverse(std::uint64_t seed, int samples = 100)
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const auto pt = S.point(2);
    const double s = S.s();
    const rmat<double> M = delin_at(B, pt, s).m * pi_delin_at(B, pt, s).m + rmat<double>::Identity(6, 6);
    worst = std::max(worst, M.cwiseAbs().maxCoeff());
  }
  // Block identity p P + q = 1 at lambda = xi t*.
  double block = 0;
  for (int i = 0; i < samples; ++i) {
    const double xi = S.uniform(0.1, 5), s = S.s(), g = gamma_coeff(xi, s);
    const double p = -g, P = -1 / g - std::sqrt(2.0) / xi, q = -std::sqrt(2.0) * g / xi;
    block = std::max(block, std::abs(p * P + q - 1));
  }
  return make_report("delin_times_pi_delin_plus_identity", std::max(worst, block), samples, 1e-8);
}

// Evaluated in long double with Richardson: near |xi| = 5, s = 2 the entries
// of E_s reach e^7, and the double round-off in db b^-1 alone exceeds the
// tolerance.
inline residual_report suite_pl_moment(std::uint64_t seed, int samples = 50, fd_options o = {})
{
  using L = long double;
  o.richardson = true;
  sampler S(seed);
  const auto B = basis_su_n<L>(2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const auto pt = S.point(2);
    const double s = S.s();
    const rvec<double> X = S.direction(3);
    const cotangent_point<L> q{pt.k.cast<cplx<L>>(), pt.xi.cast<L>()};
    worst = std::max(worst, double(moment_residual_pl<L>(B, q, X.cast<L>(), L(s), o)));
  }
  return make_report("pl_moment_map_psi_l", worst, samples, 1e-6);
}

inline residual_report suite_classical(std::uint64_t seed, classical_case which, int samples = 50, const fd_options& o = {})
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const auto pt = S.point(2);
    const double s = S.s();
    const rvec<double> X = S.direction(3);
    worst = std::max(worst, moment_residual_classical(B, pt, X, which, s, o));
  }
  const char* names[] = {"mu_l_on_omega_can", "mu_r_on_omega_can", "mu_r_on_delin"};
  return make_report(names[int(which)], worst, samples, 1e-6);
}

inline residual_report suite_equivariance(std::uint64_t seed, int samples = 200)
{
  sampler S(seed);
  double worst = 0;
  for (int n : {2, 3}) {
    const auto B = basis_su_n<double>(n);
    for (int i = 0; i < samples / 2; ++i) {
      const cmat<double> k = S.k(n);
      const rvec<double> lam = S.xi(B.dim());
      const double s = S.s();
      worst = std::max(worst, matrix_gap(e_s(B, Ad_star(B, k, lam), s), dress_left(k, e_s(B, lam, s))));
    }
  }
  return make_report("es_equivariance", worst, samples, 1e-9);
}

struct limit_result {
  sweep_table pi_xy;
  sweep_table b_tt;
  residual_report report;
};

// pi_xy(e, t*) -> 0 and B(t,t*) -> 1 as s -> 0. B(t,t*) is identically 1 on
// the torus, so it is swept at a generic lambda.
inline limit_result suite_limits(const std::vector<double>& grid = default_grid())
{
  const auto B = basis_su_n<double>(2);
  limit_result r;
  r.pi_xy = limit_sweep([&](double s) { return pi_delin_identity(B, 1.0, s).m(1, 2); }, grid);
  rvec<double> lam(3);
  lam << 1.0, 0.5, -0.3;
  r.b_tt = limit_sweep([&](double s) { return delin_identity(B, lam, s).m(0, 3) - 1; }, grid);
  auto outside = [](double v) { return std::max({0.0, 0.9 - v, v - 1.5}); };
  // max_residual is how far the worse slope lies outside the window.
  r.report = make_report("s_to_zero_rates", std::max(outside(r.pi_xy.slope), outside(r.b_tt.slope)), int(grid.size()), 1e-12,
                         "slope pi_xy " + fix(r.pi_xy.slope) + ", slope B(t,t*)-1 " + fix(r.b_tt.slope));
  return r;
}

inline residual_report suite_closedness(std::uint64_t seed, int samples = 20, const fd_options& o = {})
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  double dw = 0, jac_an = 0, jac_delin = 0;
  for (int i = 0; i < samples; ++i) {
    const auto pt = S.point(2);
    const double s = S.s();
    const rvec<double> y0 = rvec<double>::Zero(6);
    auto W = chart_two_form(B, pt, [&](const cotangent_point<double>& q) { return delin_at(B, q, s).m; });
    dw = std::max(dw, fd_exterior_derivative(W, y0, o));
    auto P = chart_bivector(B, pt, [&](const cotangent_point<double>& q) { return pi_delin_at(B, q, s).m; });
    jac_delin = std::max(jac_delin, jacobi_residual(P, y0, o));
    const auto c = su2_an_of(random_an<double>(2, S.rng));
    rvec<double> auv(3);
    auv << c.a, c.u, c.v;
    jac_an = std::max(jac_an, jacobi_residual([&](const rvec<double>& y) { return pi_an_coordinate_brackets(B, y, s); }, auv, o));
  }
  return make_report("closedness_and_jacobi", std::max({dw, jac_an, jac_delin}), samples, 1e-5,
                     "d D(omega) " + sci(dw) + ", Jacobi pi_AN " + sci(jac_an) + ", Jacobi pi " +
                         sci(jac_delin));
}

inline residual_report suite_iwasawa(std::uint64_t seed, int samples = 500)
{
  sampler S(seed);
  double recompose = 0, constraint = 0;
  for (int n : {2, 3, 4}) {
    for (int i = 0; i < samples / 3 + (n == 2 ? samples % 3 : 0); ++i) {
      const cmat<double> g = random_sl<double>(n, S.rng);
      const auto kb = iwasawa_KAN(g);
      const auto bk = iwasawa_ANK(g);
      recompose = std::max({recompose, matrix_gap(kb.k * kb.b, g), matrix_gap(bk.b * bk.k, g)});
      const cmat<double> I = cmat<double>::Identity(n, n);
      double c = std::max(matrix_gap(kb.k.adjoint() * kb.k, I), matrix_gap(bk.k.adjoint() * bk.k, I));
      c = std::max({c, std::abs(kb.k.determinant() - 1.0), std::abs(bk.k.determinant() - 1.0)});
      for (const cmat<double>* b : {&kb.b, &bk.b}) {
        c = std::max(c, std::abs((*b).determinant() - 1.0));
        for (int r = 0; r < n; ++r) {
          c = std::max(c, std::abs((*b)(r, r).imag()));
          if (!((*b)(r, r).real() > 0)) c = std::max(c, 1.0);
          for (int q = 0; q < r; ++q) c = std::max(c, std::abs((*b)(r, q)));
        }
      }
      constraint = std::max(constraint, c);
    }
  }
  auto r = make_report("iwasawa_round_trip", recompose, samples, 1e-11,
                       "constraint violation " + sci(constraint));
  r.pass = recompose < 1e-11 && constraint < 1e-12;
  r.samples.push_back({"constraint", constraint});
  return r;
}

inline residual_report suite_beta(std::uint64_t seed, int samples = 50, const fd_options& o = {})
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double xi = S.uniform(0.1, 5), s = S.s();
    worst = std::max(worst, beta_coeffs(B, xi, s, o.h, 1e300).max_diff);
  }
  return make_report("beta_system", worst, samples, 1e-7);
}

// Extra checks beyond the acceptance list.
inline residual_report suite_right_invariance(std::uint64_t seed, int samples = 20, const fd_options& o = {})
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const auto pt = S.point(2);
    const double s = S.s();
    const cmat<double> h = S.k(2);
    auto Rh = [&](const cotangent_point<double>& q) { return act(B, cmat<double>(cmat<double>::Identity(2, 2)), h, q); };
    const rmat<double> J = fd_frame_jacobian(B, Rh, pt, o);
    const rmat<double> pulled = J.transpose() * delin_at(B, Rh(pt), s).m * J;
    worst = std::max(worst, (pulled - delin_at(B, pt, s).m).cwiseAbs().maxCoeff());
  }
  return make_report("delin_right_invariance", worst, samples, 1e-6);
}

// Omega^s by differences of E_s in long double, for the same reason as above.
inline residual_report suite_delin_relation(std::uint64_t seed, int samples = 20, const fd_options& o = {})
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  const auto BL = basis_su_n<long double>(2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const auto pt = S.point(2);
    const double s = S.s();
    rmat<double> Jm(3, 6);
    for (int c = 0; c < 6; ++c)
      Jm.col(c) = central<double>([&](double e) { return rvec<double>(mu_l(B, frame_curve(B, pt, c, e))); }, o.h, o.richardson);
    const rvec<long double> lam = mu_l(B, pt).cast<long double>();
    const rmat<double> Os = omega_s_at(BL, lam, (long double)s, (long double)o.h).m.cast<double>();
    const rmat<double> pulled = Jm.transpose() * Os * Jm;
    worst = std::max(worst, (delin_at(B, pt, s).m - omega_can_at(B, pt).m - pulled).cwiseAbs().maxCoeff());
  }
  return make_report("delin_minus_omega_can_is_pullback", worst, samples, 1e-6);
}

inline residual_report suite_omega_can(std::uint64_t seed, int samples = 20, const fd_options& o = {})
{
  sampler S(seed);
  const auto B = basis_su_n<double>(2);
  double closed = 0, inv = 0;
  for (int i = 0; i < samples; ++i) {
    const auto pt = S.point(2);
    auto W = chart_two_form(B, pt, [&](const cotangent_point<double>& q) { return omega_can_at(B, q).m; });
    closed = std::max(closed, fd_exterior_derivative(W, rvec<double>(rvec<double>::Zero(6)), o));
    const cmat<double> k1 = S.k(2), k2 = S.k(2);
    auto L = [&](const cotangent_point<double>& q) { return act(B, k1, k2, q); };
    const rmat<double> J = fd_frame_jacobian(B, L, pt, o);
    inv = std::max(inv, (J.transpose() * omega_can_at(B, L(pt)).m * J - omega_can_at(B, pt).m).cwiseAbs().maxCoeff());
  }
  auto r = make_report("omega_can_closed_and_invariant", std::max(closed, inv), samples, 1e-6,
                       "d omega " + sci(closed) + ", invariance " + sci(inv));
  return r;
}

// Central differences alone sit close to the tolerance for n = 3, so this
// suite always extrapolates.
inline residual_report suite_dressing_orbit(std::uint64_t seed, int samples = 50, fd_options o = {})
{
  o.richardson = true;
  sampler S(seed);
  double worst = 0;
  for (int n : {2, 3}) {
    const auto B = basis_su_n<double>(n);
    for (int i = 0; i < samples / 2; ++i) worst = std::max(worst, dressing_orbit_residual(B, random_an<double>(n, S.rng), S.s(), o));
  }
  return make_report("dressing_orbit_identity", worst, samples, 1e-6);
}

inline residual_report suite_pi_k(std::uint64_t seed, int samples = 20)
{
  sampler S(seed);
  double worst = 0;
  for (int n : {2, 3}) {
    const auto B = basis_su_n<double>(n);
    for (int i = 0; i < samples / 2; ++i) {
      const cmat<double> k1 = S.k(n), k2 = S.k(n);
      const double s = S.s();
      const rmat<double> A2 = Ad_matrix(B, cmat<double>(k2.inverse()));
      const rmat<double> lhs = pi_k(B, cmat<double>(k1 * k2), s).m;
      const rmat<double> rhs = A2 * pi_k(B, k1, s).m * A2.transpose() + pi_k(B, k2, s).m;
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      worst = std::max(worst, (pi_k(B, k1, s).m - s * pi_k(B, k1, 1.0).m).cwiseAbs().maxCoeff());
      const rmat<double> r = r_matrix_k(B, s), A1 = Ad_matrix(B, cmat<double>(k1.inverse()));
      worst = std::max(worst, (pi_k(B, k1, s).m - (r - A1 * r * A1.transpose())).cwiseAbs().maxCoeff());
    }
  }
  return make_report("pi_k_multiplicative_and_r_matrix", worst, samples, 1e-9);
}

inline std::vector<std::string> suite_names()
{
  return {"es_closed", "pi_an_closed", "inverse", "pl_moment", "mu_r_delin", "equivariance", "limits", "closedness",
          "iwasawa", "beta", "mu_l_omega_can", "mu_r_omega_can", "right_invariance", "delin_relation", "omega_can",
          "dressing_orbit", "pi_k"};
}

inline residual_report run_suite(const std::string& name, std::uint64_t seed, const fd_options& o = {})
{
  if (name == "es_closed") return suite_es_closed(seed);
  if (name == "pi_an_closed") return suite_pi_an_closed(seed);
  if (name == "inverse") return suite_inverse(seed);
  if (name == "pl_moment") return suite_pl_moment(seed, 50, o);
  if (name == "mu_r_delin") return suite_classical(seed, classical_case::mu_r_on_delin, 50, o);
  if (name == "equivariance") return suite_equivariance(seed);
  if (name == "limits") return suite_limits().report;
  if (name == "closedness") return suite_closedness(seed, 20, o);
  if (name == "iwasawa") return suite_iwasawa(seed);
  if (name == "beta") return suite_beta(seed, 50, o);
  if (name == "mu_l_omega_can") return suite_classical(seed, classical_case::mu_l_on_omega_can, 50, o);
  if (name == "mu_r_omega_can") return suite_classical(seed, classical_case::mu_r_on_omega_can, 50, o);
  if (name == "right_invariance") return suite_right_invariance(seed, 20, o);
  if (name == "delin_relation") return suite_delin_relation(seed, 20, o);
  if (name == "omega_can") return suite_omega_can(seed, 20, o);
  if (name == "dressing_orbit") return suite_dressing_orbit(seed, 50, o);
  if (name == "pi_k") return suite_pi_k(seed);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace plg

#endif
