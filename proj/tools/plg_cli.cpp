// Command-line front end. Every command writes one JSON document (or a CSV
// table for sweeps); exit 0 on success, 1 on bad input, 2 when a residual
// suite or internal self-check fails.

#include <plg/plg.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace plg;

namespace {

constexpr const char* schema = "plg/1";
constexpr const char* version = "1.0.0";

struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct options {
  int n = 2;
  double s = 1.0;
  std::string lambda;
  std::string point;
  std::string matrix;
  std::string suite = "all";
  std::uint64_t seed = 7;
  double fd_step = 1e-5;
  double tol = 0;
  std::string grid;
  std::string format = "json";
  std::string out;
};

std::vector<double> parse_list(const std::string& text, const char* what)
{
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw validation_error(std::string("cannot parse ") + what + ": '" + item + "'");
    }
  }
  return v;
}

rvec<double> parse_vector(const std::string& text, int d, const char* what)
{
  const auto v = parse_list(text, what);
  if (int(v.size()) != d)
    throw validation_error(std::string(what) + " needs " + std::to_string(d) + " entries, got " + std::to_string(v.size()));
  return Eigen::Map<const rvec<double>>(v.data(), d);
}

json matrix_json(const cmat<double>& M)
{
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real() + 0.0, M(i, j).imag() + 0.0});  // no -0
    rows.push_back(row);
  }
  return rows;
}

json real_json(const rmat<double>& M)
{
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const rvec<double>& v)
{
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json framed_json(const framed<double>& f)
{
  return {{"frame", f.frame}, {"matrix", real_json(f.m)}};
}

cmat<double> matrix_from_json(const json& j)
{
  if (!j.is_array() || j.empty()) throw validation_error("matrix must be a nonempty array of rows");
  const int n = int(j.size());
  cmat<double> M(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || int(j[r].size()) != n) throw validation_error("matrix must be square");
    for (int c = 0; c < n; ++c) {
      const json& e = j[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw validation_error("matrix entries must be [re, im] pairs");
      M(r, c) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return M;
}

void check_an_element(const cmat<double>& b)
{
  for (int i = 0; i < b.rows(); ++i) {
    if (!(b(i, i).real() > 0) || std::abs(b(i, i).imag()) > 1e-12) throw validation_error("b needs a positive real diagonal");
    for (int j = 0; j < i; ++j)
      if (std::abs(b(i, j)) > 1e-12) throw validation_error("b must be upper triangular");
  }
  if (std::abs(b.determinant() - std::complex<double>(1)) > 1e-9) throw validation_error("b must have det 1");
}

json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error(path + ": " + e.what());
  }
}

// --point file: {"k": matrix, "xi": [..], "b": matrix}, every key optional.
struct point_input {
  std::optional<cmat<double>> k;
  std::optional<rvec<double>> xi;
  std::optional<cmat<double>> b;
};

point_input read_point(const std::string& path, int n)
{
  point_input p;
  if (path.empty()) return p;
  const json j = read_json_file(path);
  if (!j.is_object()) throw validation_error("point file must hold an object");
  if (j.contains("k")) {
    p.k = matrix_from_json(j["k"]);
    if (p.k->rows() != n) throw validation_error("k has the wrong size");
    if ((*p.k * p.k->adjoint() - cmat<double>::Identity(n, n)).norm() > 1e-9) throw validation_error("k is not unitary");
    check_det_one(*p.k);
  }
  if (j.contains("xi")) {
    const auto v = j["xi"].get<std::vector<double>>();
    if (int(v.size()) != n * n - 1) throw validation_error("xi has the wrong length");
    p.xi = Eigen::Map<const rvec<double>>(v.data(), n * n - 1);
  }
  if (j.contains("b")) {
    p.b = matrix_from_json(j["b"]);
    if (p.b->rows() != n) throw validation_error("b has the wrong size");
    check_an_element(*p.b);
  }
  return p;
}

json header(const std::string& command, const options& o)
{
  json h;
  h["schema"] = schema;
  h["version"] = version;
  h["command"] = command;
  h["conventions"] = {{"maurer_cartan", "right"},
                      {"omega_can", "[[C0, I], [-I, 0]] in the frame (left K directions, vertical)"},
                      {"lambda_order", "t*, x*, y* (torus duals first, then x_ij*, y_ij*)"}};
  h["n"] = o.n;
  return h;
}

void check_common(const options& o)
{
  if (o.n < 2) throw validation_error("--n must be at least 2");
  if (!(o.s > 0)) throw validation_error("--s must be positive");
  if (o.format != "json" && o.format != "csv") throw validation_error("--format must be json or csv");
}

json cmd_decompose(const options& o)
{
  cmat<double> g;
  if (o.matrix.empty() || o.matrix == "identity")
    g = cmat<double>::Identity(o.n, o.n);
  else {
    const json j = read_json_file(o.matrix);
    g = matrix_from_json(j.is_object() && j.contains("matrix") ? j["matrix"] : j);
  }
  try {
    check_det_one(g);
  } catch (const std::invalid_argument& e) {
    throw validation_error(e.what());
  }
  const auto kan = iwasawa_KAN(g);
  const auto ank = iwasawa_ANK(g);
  json r = header("decompose", options{.n = int(g.rows())});
  r["kan"] = {{"k", matrix_json(kan.k)}, {"b", matrix_json(kan.b)}};
  r["ank"] = {{"b", matrix_json(ank.b)}, {"k", matrix_json(ank.k)}};
  r["recomposition_error"] = std::max(matrix_gap(cmat<double>(kan.k * kan.b), g), matrix_gap(cmat<double>(ank.b * ank.k), g));
  return r;
}

json cmd_es(const options& o)
{
  const auto B = basis_su_n<double>(o.n);
  const rvec<double> lam = parse_vector(o.lambda, B.dim(), "--lambda");
  const cmat<double> b = e_s(B, lam, o.s);
  json r = header("es", o);
  r["s"] = o.s;
  r["lambda"] = vector_json(lam);
  r["b"] = matrix_json(b);
  if (o.n == 2) {
    const auto c = es_su2_closed(lam(0), lam(1), lam(2), o.s);
    r["closed"] = {{"a", c.a}, {"u", c.u}, {"v", c.v}};
    r["closed_gap"] = matrix_gap(an_matrix(c), b);
  }
  r["inverse_gap"] = (e_s_inv(B, b, o.s) - lam).cwiseAbs().maxCoeff();
  return r;
}

json cmd_bivector(const options& o)
{
  const auto B = basis_su_n<double>(o.n);
  const auto pt = read_point(o.point, o.n);
  json r = header("bivector", o);
  r["s"] = o.s;
  cmat<double> p;
  if (pt.b) {
    p = *pt.b;
  } else if (!o.lambda.empty()) {
    p = e_s(B, parse_vector(o.lambda, B.dim(), "--lambda"), o.s);
  } else {
    p = cmat<double>::Identity(o.n, o.n);
  }
  r["p"] = matrix_json(p);
  r["pi_an_left"] = framed_json(pi_an(B, p, o.s));
  r["pi_an_right"] = framed_json(pi_an_right(B, p, o.s));
  if (o.n == 2) r["pi_an_closed"] = framed_json(pi_an_su2_closed(su2_an_of(p), o.s));
  if (pt.k) {
    r["k"] = matrix_json(*pt.k);
    r["pi_k"] = framed_json(pi_k(B, *pt.k, o.s));
  }
  return r;
}

json cmd_delin(const options& o)
{
  const auto B = basis_su_n<double>(o.n);
  require_su2(B);
  const auto pt_in = read_point(o.point, o.n);
  cotangent_point<double> pt{cmat<double>::Identity(2, 2), rvec<double>()};
  if (pt_in.k) pt.k = *pt_in.k;
  if (pt_in.xi)
    pt.xi = *pt_in.xi;
  else if (!o.lambda.empty())
    pt.xi = parse_vector(o.lambda, 3, "--lambda");
  else
    throw validation_error("delin needs --lambda or a point file with xi");
  if (!(pt.xi.norm() > 0)) throw validation_error("xi must be nonzero");
  const auto W = delin_at(B, pt, o.s);
  const auto P = pi_delin_at(B, pt, o.s);
  json r = header("delin", o);
  r["s"] = o.s;
  r["k"] = matrix_json(pt.k);
  r["xi"] = vector_json(pt.xi);
  r["delin"] = framed_json(W);
  r["pi_delin"] = framed_json(P);
  r["omega_can"] = framed_json(omega_can_at(B, pt));
  r["inverse_residual"] = (W.m * P.m + rmat<double>::Identity(6, 6)).cwiseAbs().maxCoeff();
  return r;
}

json report_json(const residual_report& rep)
{
  json j;
  j["name"] = rep.name;
  j["max_residual"] = rep.max_residual;
  j["num_samples"] = rep.num_samples;
  j["tolerance"] = rep.tolerance;
  j["pass"] = rep.pass;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

// "all" runs the residual suites; the s -> 0 rates live in `sweep` and in
// `verify --suite limits`.
int cmd_verify(const options& o, json& r)
{
  std::vector<std::string> names;
  if (o.suite == "all") {
    for (auto& s : suite_names())
      if (s != "limits") names.push_back(s);
  } else {
    const auto all = suite_names();
    std::stringstream ss(o.suite);
    std::string item;
    while (std::getline(ss, item, ','))
      if (std::find(all.begin(), all.end(), item) == all.end())
        throw validation_error("unknown suite: " + item);
      else
        names.push_back(item);
  }
  if (!(o.fd_step > 0)) throw validation_error("--fd-step must be positive");
  if (o.tol < 0) throw validation_error("--tol must be nonnegative");
  fd_options fo;
  fo.h = o.fd_step;
  r = header("verify", o);
  r["seed"] = o.seed;
  r["fd_step"] = o.fd_step;
  json reps = json::array();
  bool ok = true;
  for (auto& name : names) {
    auto rep = run_suite(name, o.seed, fo);
    if (o.tol > 0 && name != "limits") {
      rep.tolerance = o.tol;
      rep.pass = rep.max_residual < o.tol;
    }
    ok = ok && rep.pass;
    reps.push_back(report_json(rep));
  }
  r["reports"] = reps;
  r["all_pass"] = ok;
  return ok ? 0 : 2;
}

sweep_table run_sweep(const options& o, const std::vector<double>& grid, json& meta)
{
  const auto B = basis_su_n<double>(2);
  if (o.suite == "pi_xy") {
    const double xi = o.lambda.empty() ? 1.0 : parse_vector(o.lambda, 1, "--lambda")(0);
    if (!(xi > 0)) throw validation_error("xi must be positive");
    meta["quantity"] = "pi(x,y) at (e, xi t*)";
    meta["xi"] = xi;
    return limit_sweep([&](double s) { return pi_delin_identity(B, xi, s).m(1, 2); }, grid);
  }
  rvec<double> lam(3);
  lam << 1.0, 0.5, -0.3;
  if (!o.lambda.empty()) lam = parse_vector(o.lambda, 3, "--lambda");
  if (!(lam.norm() > 0)) throw validation_error("lambda must be nonzero");
  meta["lambda"] = vector_json(lam);
  if (o.suite == "b_tt") {
    meta["quantity"] = "D(omega)(t, t*) - 1 at (e, lambda)";
    return limit_sweep([&](double s) { return delin_identity(B, lam, s).m(0, 3) - 1; }, grid);
  }
  if (o.suite == "delin_gap") {
    meta["quantity"] = "max |D(omega) - omega_can| at (e, lambda)";
    const cotangent_point<double> pt{cmat<double>::Identity(2, 2), lam};
    return limit_sweep([&](double s) { return (delin_at(B, pt, s).m - omega_can_at(B, pt).m).cwiseAbs().maxCoeff(); }, grid);
  }
  if (o.suite == "es_linear") {
    meta["quantity"] = "max |E_s(lambda) - I - Pr_an(s i phi(lambda))|";
    return limit_sweep(
        [&](double s) {
          const cmat<double> lin = cmat<double>::Identity(2, 2) + proj_an(cmat<double>(std::complex<double>(0, s) * phi(B, lam)));
          return matrix_gap(e_s(B, lam, s), lin);
        },
        grid);
  }
  throw validation_error("unknown sweep: " + o.suite + " (pi_xy, b_tt, delin_gap, es_linear)");
}

std::string shortest(double v)
{
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string sweep_csv(const sweep_table& t)
{
  std::string out = "s,value,fitted_slope\n";
  for (std::size_t i = 0; i < t.s_values.size(); ++i)
    out += shortest(t.s_values[i]) + ',' + shortest(t.values[i]) + ',' + shortest(t.slope) + '\n';
  return out;
}

void emit(const options& o, const std::string& text)
{
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw validation_error("cannot write " + o.out);
  f << text;
}

std::string error_record(const std::string& kind, const std::string& message)
{
  json e;
  e["schema"] = schema;
  e["version"] = version;
  e["error"] = {{"kind", kind}, {"message", message}};
  return e.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv)
{
  options o;
  CLI::App app{"Poisson-Lie delinearization toolkit for SU(n)"};
  app.require_subcommand(1, 1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--n", o.n, "rank n of SU(n)");
    c->add_option("--s", o.s, "deformation parameter s > 0");
    c->add_option("--format", o.format, "json or csv");
    c->add_option("--out", o.out, "output path (default stdout)");
  };
  auto* dec = app.add_subcommand("decompose", "Iwasawa factors of an SL(n,C) matrix");
  dec->add_option("--matrix", o.matrix, "JSON file with a row-major matrix of [re, im] pairs, or 'identity'");
  auto* es = app.add_subcommand("es", "E_s(lambda) in AN");
  es->add_option("--lambda", o.lambda, "comma separated coordinates of lambda")->required();
  auto* biv = app.add_subcommand("bivector", "pi_AN at p (and pi_K at k)");
  biv->add_option("--lambda", o.lambda, "take p = E_s(lambda)");
  biv->add_option("--point", o.point, "JSON file with optional keys k, xi, b");
  auto* del = app.add_subcommand("delin", "D(omega_can) and its Poisson bivector on T*SU(2)");
  del->add_option("--lambda", o.lambda, "fiber coordinate xi at k = e");
  del->add_option("--point", o.point, "JSON file with keys k and xi");
  auto* ver = app.add_subcommand("verify", "run residual suites");
  ver->add_option("--suite", o.suite, "suite name, comma list, or all");
  ver->add_option("--seed", o.seed, "random seed");
  ver->add_option("--fd-step", o.fd_step, "finite difference step");
  ver->add_option("--tol", o.tol, "override the suite tolerance");
  auto* swp = app.add_subcommand("sweep", "s -> 0 sweep with fitted log-log slope");
  swp->add_option("--suite", o.suite, "pi_xy, b_tt, delin_gap or es_linear")->required();
  swp->add_option("--lambda", o.lambda, "xi for pi_xy, lambda otherwise");
  swp->add_option("--grid", o.grid, "comma separated decreasing s values");
  for (auto* c : {dec, es, biv, del, ver, swp}) add_common(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_record("validation", e.what());
    return 1;
  }

  try {
    check_common(o);
    if (o.format == "csv" && !*swp) throw validation_error("csv output is only available for sweep");
    json r;
    int code = 0;
    if (*dec)
      r = cmd_decompose(o);
    else if (*es)
      r = cmd_es(o);
    else if (*biv)
      r = cmd_bivector(o);
    else if (*del)
      r = cmd_delin(o);
    else if (*ver)
      code = cmd_verify(o, r);
    else {
      const auto grid = o.grid.empty() ? default_grid() : parse_list(o.grid, "--grid");
      if (grid.size() < 2) throw validation_error("--grid needs at least two values");
      json meta;
      const auto t = run_sweep(o, grid, meta);
      if (o.format == "csv") {
        emit(o, sweep_csv(t));
        return 0;
      }
      r = header("sweep", o);
      r["sweep"] = o.suite;
      r.update(meta);
      r["s_values"] = t.s_values;
      r["values"] = t.values;
      r["fitted_slope"] = t.slope;
    }
    emit(o, r.dump(2) + "\n");
    return code;
  } catch (const validation_error& e) {
    std::cout << error_record("validation", e.what());
    return 1;
  } catch (const unsupported& e) {
    std::cout << error_record("unsupported", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cout << error_record("validation", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cout << error_record("internal", e.what());
    return 2;
  }
}
