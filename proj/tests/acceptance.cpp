// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <cliffop/cliffop.hpp>

using namespace cliffop;
using Rational = boost::multiprecision::cpp_rational;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = o.pass && secs < limit_s;
  if (!pass) ++failures;
  std::printf("criterion %d: %s %s [%.2f s, limit %.0f s]\n", id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
              limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

VectorXd pt(cd z) { return (VectorXd(2) << z.real(), z.imag()).finished(); }

Density holo(const BoundaryGrid& g, int m) {
  return Density::sample(g, 1, [m](const VectorXd& x) { return VectorXcd::Constant(1, std::pow(cd(x(0), x(1)), m)); });
}

VectorXd gauss(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> nd;
  VectorXd x(d);
  for (int m = 0; m < d; ++m) x(m) = nd(rng);
  return x;
}

Outcome clifford_identities() {
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) worst = std::max(worst, check_identities(build_dirac(n)).max_residual);
  const auto op = build_dirac(2);
  MatrixXcd a1(2, 2), a2(2, 2), b1(2, 2), b2(2, 2);
  a1 << 0, 0, 0, 1;
  a2 << 0, 0, 1, 0;
  b1 << 1, 0, 0, 0;
  b2 << 0, -1, 0, 0;
  const bool verbatim = op.alpha(0) == a1 && op.alpha(1) == a2 && op.beta(0) == b1 && op.beta(1) == b2;
  return {worst == 0.0 && verbatim, fmt("max residual n=1..5 %.1e", worst) + (verbatim ? ", n=2 matrices verbatim" : ", n=2 matrices differ")};
}

Outcome symbol_factorization() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const auto op = build_dirac(n);
    for (int t = 0; t < 100; ++t) {
      const VectorXd xi = gauss(rng, 2 * n);
      const MatrixXcd s = principal_symbol(op, xi);
      MatrixXcd d = s.adjoint() * s;
      d.diagonal().array() -= 0.25 * xi.squaredNorm();
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-12, fmt("max |s*s - |xi|^2 E/4| = %.1e", worst)};
}

Outcome cauchy_reproduction() {
  const auto op = build_dirac(1);
  const auto g = make_circle_grid(256);
  const auto P = szego_projection(assemble_cauchy(op, g));
  const int M = 64;
  const double szego = spectral_norm((P.matrix - exact_szego_circle(256, M).matrix) * band_projector(256, M));
  const auto u2 = holo(g, 2);
  double interior = 0.0;
  for (int t = 0; t < 10; ++t) {
    const cd z = std::polar(0.08 + 0.08 * t, 1.3 * t);
    interior = std::max(interior, std::abs(interior_eval(op, g, u2, pt(z))(0) - z * z));
  }
  double exterior = 0.0;
  for (int m = 0; m <= 5; ++m)
    for (cd w : {cd(1.5, 0.5), cd(-2.0, -1.0), cd(0.0, 3.0)})
      exterior = std::max(exterior, exterior_vanishing(op, g, holo(g, m), pt(w)));
  const bool ok = szego <= 1e-8 && interior <= 1e-10 && exterior <= 1e-10;
  return {ok, fmt("szego %.1e", szego) + fmt(", interior z^2 %.1e", interior) + fmt(", exterior z^0..z^5 %.1e", exterior)};
}

struct HopfRow {
  int m;
  double full, resolved;
};

std::vector<HopfRow> hopf_rows;

Outcome projection_identity() {
  const auto g = make_circle_grid(256);
  const double circle = projection_defect(assemble_cauchy(build_dirac(1), g));
  const auto op = build_dirac(2);
  for (int m : {16, 24}) {
    const auto s = make_s3_grid(m, m, m);
    const HopfCauchy hc(op, s);
    const double resolved = resolved_projection_defect(s, 2, 3, [&](const VectorXcd& u) { return hc.apply(u); });
    hopf_rows.push_back({m, hc.projection_defect(), resolved});
  }
  const bool decreasing = hopf_rows[1].full < hopf_rows[0].full;
  return {circle <= 1e-8 && decreasing,
          fmt("circle N=256 %.1e", circle) + fmt("; S^3 full-space 16^3 %.4g", hopf_rows[0].full) +
              fmt(" -> 24^3 %.4g", hopf_rows[1].full) + (decreasing ? " (decreasing)" : " (not decreasing)")};
}

Outcome green_formula() {
  const auto op = build_dirac(1);
  const auto g = make_circle_grid(256);
  const auto u = Density::sample(g, 1, [](const VectorXd& x) { return VectorXcd::Constant(1, cd(x(0), -x(1))); });
  double worst = 0.0;
  for (cd z : {cd(0.3, 0.1), cd(-0.5, 0.4), cd(0.1, -0.7), cd(0.0, 0.0)}) {
    const auto vol = make_disc_grid(16, 64, 1.0, pt(z));
    const VectorXcd au = VectorXcd::Ones(vol.size());
    worst = std::max(worst, std::abs(interior_eval(op, g, u, pt(z), &vol, &au)(0) - std::conj(z)));
  }
  return {worst <= 1e-6, fmt("u = conj z, max error %.1e", worst)};
}

Outcome symbol_formula() {
  const auto op1 = build_dirac(1), op2 = build_dirac(2);
  const cd kappa = calibrate_kappa(op1);
  double idem = 0.0;
  for (const auto& s : circle_cosphere(make_circle_grid(256))) {
    const MatrixXcd P = projection_symbol(op1, s, kappa);
    idem = std::max(idem, (P * P - P).norm());
  }
  for (const auto& s : random_cosphere(make_s3_grid(8, 8, 8), 2, 99)) {
    const MatrixXcd P = projection_symbol(op2, s, kappa);
    idem = std::max(idem, (P * P - P).norm());
  }
  double err[2];
  const std::pair<int, double> runs[2] = {{512, 20.0}, {1024, 40.0}};
  for (int r = 0; r < 2; ++r) {
    const auto g = make_circle_grid(runs[r].first);
    const CauchyData data(op1, g);
    err[r] = 0.0;
    for (Eigen::Index i : {Eigen::Index(0), g.size() / 3})
      for (double dir : {1.0, -1.0}) {
        const VectorXd xi = dir * g.tangents[0].col(i);
        const cd expected = cauchy_symbol(op1, {g.nodes.col(i), xi}, kappa)(0, 0);
        err[r] = std::max(err[r], std::abs(numeric_symbol_extraction(data, i, xi, runs[r].second, VectorXcd::Ones(1))(0) - expected));
      }
  }
  double pv = 0.0;
  for (double a : {0.1, 1.0, 10.0}) pv = std::max(pv, pv_integral_check(a));
  const bool ok = std::abs(kappa - cd(0, 2)) < 1e-12 && idem <= 1e-12 && err[0] <= 0.1 && err[1] < err[0] && pv <= 1e-10;
  return {ok, fmt("kappa = %.0fi", kappa.imag()) + fmt(", idempotency %.1e", idem) + fmt(", probe w=20 %.1e", err[0]) +
                  fmt(", w=40 %.1e", err[1]) + fmt(", pv %.1e", pv)};
}

Outcome index_routes() {
  const auto g = make_circle_grid(256);
  const auto P = szego_projection(assemble_cauchy(build_dirac(1), g));
  bool ok = true;
  std::string detail = "k:winding/T/E";
  for (int k = -3; k <= 3; ++k) {
    VectorXcd m(256);
    for (int j = 0; j < 256; ++j) m(j) = std::polar(1.0, k * 2.0 * kPi * j / 256);
    const int w = winding_index(m).index;
    const auto T = toeplitz_op(P, Multiplier::scalar(g, 1, [k](double t) { return std::polar(1.0, k * t); }));
    const auto kt = numeric_kernel_count(T, &P);
    const auto ke = numeric_kernel_count(extension_op(T, P), nullptr);
    ok = ok && w == -k && kt.index == -k && ke.index == kt.index && !kt.inconclusive && !ke.inconclusive;
    detail += " " + std::to_string(k) + ":" + std::to_string(w) + "/" + std::to_string(kt.index) + "/" + std::to_string(ke.index);
  }
  return {ok, detail};
}

Outcome ellipticity() {
  const auto op = build_dirac(1);
  const cd kappa = calibrate_kappa(op);
  const auto samples = circle_cosphere(make_circle_grid(256));
  auto field = [](std::function<cd(double)> m) -> SymbolField {
    return [m](const VectorXd& z, const VectorXd&) { return MatrixXcd::Constant(1, 1, m(std::atan2(z(1), z(0)))); };
  };
  const auto cosine = ellipticity_scan(op, field([](double t) { return cd(std::cos(t)); }), samples, kappa);
  const double witness = std::abs(std::cos(std::atan2(cosine.witness.z(1), cosine.witness.z(0))));
  bool ok = !cosine.elliptic && witness < 0.05;
  double worst = 1e300;
  std::vector<std::function<cd(double)>> good = {[](double) { return cd(1.0); },
                                                 [](double t) { return cd(2.0 + std::cos(t), std::sin(t)); },
                                                 [](double t) { return cd(1.5, std::sin(2 * t)); }};
  for (int k = -3; k <= 3; ++k) good.push_back([k](double t) { return std::polar(1.0, k * t); });
  for (const auto& m : good) {
    const auto rep = ellipticity_scan(op, field(m), samples, kappa);
    ok = ok && rep.elliptic;
    worst = std::min(worst, rep.min_sv);
  }
  return {ok, fmt("cos: min sv %.1e", cosine.min_sv) + fmt(" at |cos theta| = %.1e", witness) +
                  fmt("; nonvanishing symbols: min sv %.2f", worst)};
}

Outcome semicommutator_check() {
  const auto g = make_circle_grid(256);
  const auto P = szego_projection(assemble_cauchy(build_dirac(1), g));
  const auto e1 = Multiplier::scalar(g, 1, [](double t) { return std::polar(1.0, t); });
  const auto em = Multiplier::scalar(g, 1, [](double t) { return std::polar(1.0, -t); });
  const auto sc = semicommutator(P, e1, em);
  int above = 0;
  for (Eigen::Index i = 0; i < sc.singular_values.size(); ++i) above += sc.singular_values(i) > 1e-6;
  const auto a = Multiplier::scalar(g, 1, [](double t) { return cd(std::exp(std::cos(t))); });
  const auto b = Multiplier::scalar(g, 1, [](double t) { return cd(1.0 / (2.0 + std::sin(t)), 0.0); });
  const double smooth = semicommutator(P, a, b).identity_residual;
  const double id = std::max(sc.identity_residual, smooth);
  return {id <= 1e-9 && above == 1,
          fmt("identity residual %.1e", id) + ", singular values above 1e-6: " + std::to_string(above)};
}

Outcome octonions() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  auto rq = [&] { return Quaternion<Rational>{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                                              Rational(num(rng), den(rng)), Rational(num(rng), den(rng))}; };
  Rational alt = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto D = DicksonMatrix<Rational>::from_pair({rq(), rq()});
    const auto P = DicksonMatrix<Rational>::from_pair({rq(), rq()});
    const auto r = alternativity_check(D, P);
    alt += r.left + r.right;
  }
  std::normal_distribution<double> nd;
  double comp = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Octonion<double> x{{nd(rng), nd(rng), nd(rng), nd(rng)}, {nd(rng), nd(rng), nd(rng), nd(rng)}};
    const Octonion<double> y{{nd(rng), nd(rng), nd(rng), nd(rng)}, {nd(rng), nd(rng), nd(rng), nd(rng)}};
    const double rhs = std::sqrt(x.norm2() * y.norm2());
    comp = std::max(comp, std::abs(std::sqrt(octonion_mult(x, y).norm2()) - rhs) / rhs);
  }
  using Oi = Octonion<Rational>;
  const Oi e1{{0, 1, 0, 0}, {}}, e2{{0, 0, 1, 0}, {}}, e4{{}, {1, 0, 0, 0}};
  const bool nonassoc = !(octonion_mult(octonion_mult(e1, e2), e4) == octonion_mult(e1, octonion_mult(e2, e4)));

  const RealLinearMap zero{MatrixXd::Zero(4, 4)};
  auto comm = [](const RealLinearMap& M, const VectorXd& xi) {
    const MatrixXd S = octonion_dirac_symbol(xi).R;
    return (M.R * S - S * M.R).norm();
  };
  double forward = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto M = commutant_multiplier(x_form_right(cd(nd(rng), nd(rng)), cd(nd(rng), nd(rng))), zero);
    for (int s = 0; s < 5; ++s) forward = std::max(forward, comm(M, gauss(rng, 8)));
  }
  double converse = 1e300;
  for (int t = 0; t < 20; ++t) {
    const auto M = commutant_multiplier(RealLinearMap{MatrixXd::Random(4, 4)}, RealLinearMap{MatrixXd::Random(4, 4)});
    double w = 0.0;
    for (int s = 0; s < 20; ++s) w = std::max(w, comm(M, gauss(rng, 8)));
    converse = std::min(converse, w);
  }
  double c = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const VectorXd xi = gauss(rng, 8);
    Eigen::JacobiSVD<MatrixXd> svd(octonion_dirac_symbol(xi).R);
    c = std::min(c, svd.singularValues()(7) / xi.norm());
  }
  const bool ok = alt == 0 && comp <= 1e-12 && nonassoc && forward <= 1e-12 && converse > 0.1 && c > 1e-8;
  return {ok, std::string("alternativity ") + (alt == 0 ? "exactly 0" : "nonzero") + fmt(", composition %.1e", comp) +
                  (nonassoc ? ", nonassociative" : ", associative?") + fmt(", commutant forward %.1e", forward) +
                  fmt(", converse min %.2f", converse) + fmt(", symbol min sv/|xi| %.3f", c)};
}

}  // namespace

int main() {
  run(1, 1, clifford_identities);
  run(2, 1, symbol_factorization);
  run(3, 10, cauchy_reproduction);
  run(4, 120, projection_identity);
  if (hopf_rows.size() == 2) {
    const bool dec = hopf_rows[1].resolved < hopf_rows[0].resolved;
    std::printf("supplement 4: %s S^3 defect on polynomial traces of degree <= 3: 16^3 %.3g -> 24^3 %.3g\n",
                dec ? "decreasing" : "not decreasing", hopf_rows[0].resolved, hopf_rows[1].resolved);
  }
  run(5, 10, green_formula);
  run(6, 60, symbol_formula);
  run(7, 120, index_routes);
  run(8, 10, ellipticity);
  run(9, 60, semicommutator_check);
  run(10, 30, octonions);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}
