#pragma once

// Verification suites and convergence ladders behind the command line tool.

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <cliffop/cliffop.hpp>
#include <cliffop/io.hpp>

namespace cliffop::cli {

struct RunConfig {
  std::string suite;
  int n = 1;
  int nodes = 256;
  std::array<int, 3> hopf{16, 16, 16};
  std::string symbol = "exp(i*k*theta)";
  int k = 1;
  std::optional<double> tol;  // overrides the tolerance of the suite's primary check
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string rule = "linear";
  std::vector<int> ladder;
  double floor = 1e-12;

  json to_json() const {
    json j = {{"suite", suite}, {"n", n},         {"nodes", nodes}, {"hopf", hopf}, {"symbol", symbol},
              {"k", k},         {"seed", seed},   {"out", out},     {"rule", rule}, {"floor", floor}};
    j["tol"] = tol ? json(*tol) : json(nullptr);
    if (!ladder.empty()) j["ladder"] = ladder;
    return j;
  }
};

struct Check {
  std::string name;
  double metric;
  double tol;
  bool pass;
};

struct Report {
  std::vector<Check> checks;
  std::optional<cd> kappa;

  /// Passes when metric <= tol.
  void at_most(std::string name, double metric, double tol) {
    checks.push_back({std::move(name), metric, tol, metric <= tol});
  }
  /// Passes when metric > tol.
  void above(std::string name, double metric, double tol) {
    checks.push_back({std::move(name), metric, tol, metric > tol});
  }
  /// Boolean check recorded as metric 1 (true) or 0 (false) against tolerance 0.
  void holds(std::string name, bool ok) { checks.push_back({std::move(name), ok ? 1.0 : 0.0, 0.0, ok}); }

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

inline Subtraction parse_rule(const std::string& r) {
  if (r == "linear") return Subtraction::Linear;
  if (r == "constant") return Subtraction::Constant;
  throw InvalidArgument("unknown subtraction rule '" + r + "' (linear, constant)");
}

inline VectorXd random_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> nd;
  VectorXd x(d);
  for (int m = 0; m < d; ++m) x(m) = nd(rng);
  return x;
}

namespace detail {

inline VectorXd pt2(cd z) { return (VectorXd(2) << z.real(), z.imag()).finished(); }

inline Density power_trace(const BoundaryGrid& g, int m) {
  return Density::sample(g, 1, [m](const VectorXd& x) { return VectorXcd::Constant(1, std::pow(cd(x(0), x(1)), m)); });
}

inline Density z1_trace(const BoundaryGrid& g) {
  return Density::sample(g, 2, [](const VectorXd& x) { return (VectorXcd(2) << cd(x(0), x(2)), 0.0).finished(); });
}

inline BoundaryGrid sphere_grid(const RunConfig& c) { return make_s3_grid(c.hopf[0], c.hopf[1], c.hopf[2]); }

}  // namespace detail

inline Report suite_clifford(const RunConfig& c) {
  Report r;
  const auto op = build_dirac(c.n);
  r.at_most("identity_residual", check_identities(op).max_residual, c.tol.value_or(0.0));
  std::mt19937_64 rng(c.seed);
  double fact = 0.0, adj = 0.0;
  for (int t = 0; t < 100; ++t) {
    const VectorXd xi = random_vector(rng, 2 * c.n);
    const MatrixXcd s = principal_symbol(op, xi);
    MatrixXcd d = s.adjoint() * s;
    d.diagonal().array() -= 0.25 * xi.squaredNorm();
    fact = std::max(fact, d.cwiseAbs().maxCoeff() / std::max(1.0, xi.squaredNorm()));
    adj = std::max(adj, (adjoint_symbol(op, xi) + s.adjoint()).cwiseAbs().maxCoeff());
  }
  r.at_most("symbol_factorization", fact, 1e-12);
  r.at_most("adjoint_symbol_relation", adj, 1e-14);
  return r;
}

inline Report suite_green(const RunConfig& c) {
  Report r;
  const auto op = build_dirac(c.n);
  const double tol = c.tol.value_or(1e-10);
  if (c.n == 1) {
    const auto g = make_circle_grid(c.nodes);
    const auto u2 = detail::power_trace(g, 2);
    double interior = 0.0;
    for (int t = 0; t < 10; ++t) {
      const cd z = std::polar(0.08 + 0.08 * t, 1.3 * t);
      interior = std::max(interior, std::abs(interior_eval(op, g, u2, detail::pt2(z))(0) - z * z));
    }
    r.at_most("interior_z2", interior, tol);
    double exterior = 0.0;
    for (int m = 0; m <= 5; ++m)
      exterior = std::max(exterior, exterior_vanishing(op, g, detail::power_trace(g, m), detail::pt2(cd(1.5, 0.5))));
    r.at_most("exterior_zm", exterior, 1e-10);
    const auto ub = Density::sample(g, 1, [](const VectorXd& x) { return VectorXcd::Constant(1, cd(x(0), -x(1))); });
    double green = 0.0;
    for (cd z : {cd(0.3, 0.1), cd(-0.5, 0.4), cd(0.1, -0.7)}) {
      const auto vol = make_disc_grid(16, 64, 1.0, detail::pt2(z));
      const VectorXcd au = VectorXcd::Ones(vol.size());
      green = std::max(green, std::abs(interior_eval(op, g, ub, detail::pt2(z), &vol, &au)(0) - std::conj(z)));
    }
    r.at_most("green_volume_zbar", green, 1e-6);
    r.above("exterior_conj_trace", exterior_vanishing(op, g, detail::power_trace(g, -1), detail::pt2(cd(2.0, 0.0))), 0.1);
  } else if (c.n == 2) {
    const auto g = detail::sphere_grid(c);
    const auto u = detail::z1_trace(g);
    double interior = 0.0;
    for (const VectorXd& z : {(VectorXd(4) << 0.1, 0.05, -0.05, 0.1).finished(), VectorXd(VectorXd::Zero(4))}) {
      const VectorXcd expected = (VectorXcd(2) << cd(z(0), z(2)), 0.0).finished();
      interior = std::max(interior, (interior_eval(op, g, u, z) - expected).norm());
    }
    r.at_most("interior_z1", interior, tol);
    r.at_most("exterior_z1", exterior_vanishing(op, g, u, (VectorXd(4) << 2.5, 0.3, 0.0, 0.2).finished()), 1e-6);
  } else {
    throw InvalidArgument("green suite supports n = 1 (circle) and n = 2 (Hopf sphere)");
  }
  return r;
}

inline Report suite_cauchy(const RunConfig& c) {
  Report r;
  const auto op = build_dirac(c.n);
  const Subtraction rule = parse_rule(c.rule);
  if (c.n == 1) {
    const auto g = make_circle_grid(c.nodes);
    const auto C = assemble_cauchy(op, g, rule);
    r.at_most("projection_defect", projection_defect(C), c.tol.value_or(1e-8));
    const int M = c.nodes / 4;
    const auto P = szego_projection(C);
    r.at_most("szego_oracle_band", spectral_norm((P.matrix - exact_szego_circle(c.nodes, M).matrix) * band_projector(c.nodes, M)), 1e-8);
    r.at_most("constant_density", (C * VectorXcd::Ones(c.nodes) - 0.5 * VectorXcd::Ones(c.nodes)).cwiseAbs().maxCoeff(), 1e-14);
  } else if (c.n == 2) {
    const auto g = detail::sphere_grid(c);
    const HopfCauchy hc(op, g, rule);
    r.at_most("projection_defect", hc.projection_defect(), c.tol.value_or(1e-8));
    r.at_most("resolved_projection_defect",
              resolved_projection_defect(g, 2, 3, [&](const VectorXcd& u) { return hc.apply(u); }), 0.05);
    const VectorXcd one = VectorXcd::Ones(hc.dim());
    r.at_most("constant_density", (hc.apply(one) - 0.5 * one).cwiseAbs().maxCoeff(), 1e-12);
  } else {
    throw InvalidArgument("cauchy suite supports n = 1 (circle) and n = 2 (Hopf sphere)");
  }
  return r;
}

inline Report suite_symbol(const RunConfig& c) {
  Report r;
  const auto op1 = build_dirac(1);
  const cd kappa = calibrate_kappa(op1);
  r.kappa = kappa;
  r.at_most("kappa_squared_calibration", std::abs(kappa * kappa + 4.0), 1e-12);
  const auto op = build_dirac(c.n);
  double idem = 0.0;
  std::vector<CosphereSample> samples;
  if (c.n == 1) samples = circle_cosphere(make_circle_grid(c.nodes));
  else if (c.n == 2) samples = random_cosphere(detail::sphere_grid(c), 1, c.seed, 7);
  else throw InvalidArgument("symbol suite supports n = 1 and n = 2");
  for (const auto& s : samples) {
    const MatrixXcd P = projection_symbol(op, s, kappa);
    idem = std::max(idem, (P * P - P).norm());
  }
  r.at_most("projection_symbol_idempotency", idem, c.tol.value_or(1e-12));
  if (c.n == 1) {
    double prev = 0.0;
    for (auto [N, omega] : std::vector<std::pair<int, double>>{{512, 20.0}, {1024, 40.0}}) {
      const auto g = make_circle_grid(N);
      const CauchyData data(op1, g);
      double err = 0.0;
      for (double dir : {1.0, -1.0}) {
        const VectorXd xi = dir * g.tangents[0].col(0);
        const cd expected = cauchy_symbol(op1, {g.nodes.col(0), xi}, kappa)(0, 0);
        err = std::max(err, std::abs(numeric_symbol_extraction(data, 0, xi, omega, VectorXcd::Ones(1))(0) - expected));
      }
      if (omega == 20.0) {
        r.at_most("probe_omega_20", err, 0.1);
        prev = err;
      } else {
        r.at_most("probe_omega_40", err, prev);
      }
    }
  }
  double pv = 0.0;
  for (double a : {0.1, 1.0, 10.0}) pv = std::max(pv, pv_integral_check(a));
  r.at_most("pv_integral", pv, 1e-10);
  return r;
}

/// Named scalar symbol families on the unit circle.
inline std::function<cd(double)> symbol_family(const std::string& name, int k) {
  if (name == "exp(i*k*theta)") return [k](double t) { return std::polar(1.0, k * t); };
  if (name == "2+exp(i*k*theta)") return [k](double t) { return 2.0 + std::polar(1.0, k * t); };
  if (name == "0.5+exp(i*k*theta)") return [k](double t) { return 0.5 + std::polar(1.0, k * t); };
  if (name == "cos(theta)") return [](double t) { return cd(std::cos(t)); };
  throw InvalidArgument("unknown symbol '" + name +
                        "' (exp(i*k*theta), 2+exp(i*k*theta), 0.5+exp(i*k*theta), cos(theta))");
}

inline Report suite_toeplitz_index(const RunConfig& c) {
  if (c.n != 1) throw InvalidArgument("toeplitz-index suite supports n = 1 only");
  Report r;
  const auto op = build_dirac(1);
  const cd kappa = calibrate_kappa(op);
  r.kappa = kappa;
  const auto m = symbol_family(c.symbol, c.k);
  const auto g = make_circle_grid(c.nodes);
  const SymbolField field = [&m](const VectorXd& z, const VectorXd&) {
    return MatrixXcd::Constant(1, 1, m(std::atan2(z(1), z(0))));
  };
  const auto ell = ellipticity_scan(op, field, circle_cosphere(g), kappa);
  r.above("ellipticity_min_sv", ell.min_sv, 1e-8);
  if (!ell.elliptic) return r;
  VectorXcd samples(c.nodes);
  for (int j = 0; j < c.nodes; ++j) samples(j) = m(2.0 * kPi * j / c.nodes);
  const int predicted = winding_index(samples).index;
  const auto P = szego_projection(assemble_cauchy(op, g));
  const auto T = toeplitz_op(P, Multiplier::scalar(g, 1, m, c.symbol));
  const auto kt = numeric_kernel_count(T, &P);
  const auto ke = numeric_kernel_count(extension_op(T, P), nullptr);
  r.holds("toeplitz_count_conclusive", !kt.inconclusive);
  r.holds("extension_count_conclusive", !ke.inconclusive);
  r.at_most("toeplitz_index_vs_winding", std::abs(kt.index - predicted), 0.0);
  r.at_most("extension_index_vs_toeplitz", std::abs(ke.index - kt.index), 0.0);
  r.checks.push_back({"winding_index", double(predicted), 0.0, true});
  return r;
}

inline Report suite_octonion(const RunConfig& c) {
  using Rational = boost::multiprecision::cpp_rational;
  Report r;
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  auto rq = [&] {
    return Quaternion<Rational>{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                                Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
  };
  bool alt = true;
  for (int t = 0; t < 1000; ++t) {
    const auto res = alternativity_check(DicksonMatrix<Rational>::from_pair({rq(), rq()}),
                                         DicksonMatrix<Rational>::from_pair({rq(), rq()}));
    alt = alt && res.left == 0 && res.right == 0;
  }
  r.holds("alternativity_exact", alt);
  std::normal_distribution<double> nd;
  auto ro = [&] { return Octonion<double>{{nd(rng), nd(rng), nd(rng), nd(rng)}, {nd(rng), nd(rng), nd(rng), nd(rng)}}; };
  double comp = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto x = ro(), y = ro();
    const double rhs = std::sqrt(x.norm2() * y.norm2());
    comp = std::max(comp, std::abs(std::sqrt(octonion_mult(x, y).norm2()) - rhs) / rhs);
  }
  r.at_most("composition_law", comp, c.tol.value_or(1e-12));
  using Oi = Octonion<Rational>;
  const Oi e1{{0, 1, 0, 0}, {}}, e2{{0, 0, 1, 0}, {}}, e4{{}, {1, 0, 0, 0}};
  r.holds("nonassociativity_witness",
          !(octonion_mult(octonion_mult(e1, e2), e4) == octonion_mult(e1, octonion_mult(e2, e4))));
  const RealLinearMap zero{MatrixXd::Zero(4, 4)};
  auto comm = [](const RealLinearMap& M, const VectorXd& xi) {
    const MatrixXd S = octonion_dirac_symbol(xi).R;
    return (M.R * S - S * M.R).norm();
  };
  double forward = 0.0, left = 0.0, converse = 1e300;
  for (int t = 0; t < 20; ++t) {
    const cd w1(nd(rng), nd(rng)), w2(nd(rng), nd(rng));
    const auto M = commutant_multiplier(x_form_right(w1, w2), zero);
    const auto L = commutant_multiplier(x_form_left(w1, w2), zero);
    const auto X = commutant_multiplier(RealLinearMap{MatrixXd::Random(4, 4)}, RealLinearMap{MatrixXd::Random(4, 4)});
    double w = 0.0;
    for (int s = 0; s < 20; ++s) {
      const VectorXd xi = random_vector(rng, 8);
      forward = std::max(forward, comm(M, xi));
      left = std::max(left, comm(L, xi));
      w = std::max(w, comm(X, xi));
    }
    converse = std::min(converse, w);
  }
  r.at_most("commutant_forward_right_form", forward, 1e-12);
  r.above("commutant_converse_random", converse, 0.1);
  r.checks.push_back({"left_form_commutator", left, 0.0, true});
  double cmin = 1e300, dirac = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const VectorXd xi = random_vector(rng, 8);
    const MatrixXd S = octonion_dirac_symbol(xi).R;
    Eigen::JacobiSVD<MatrixXd> svd(S);
    cmin = std::min(cmin, svd.singularValues()(7) / xi.norm());
    dirac = std::max(dirac, (S.transpose() * S - 0.25 * xi.squaredNorm() * MatrixXd::Identity(8, 8)).norm() / xi.squaredNorm());
  }
  r.above("symbol_min_sv_over_norm", cmin, 1e-8);
  r.checks.push_back({"symbol_dirac_identity_defect", dirac, 0.0, true});
  const auto inv = x_invertibility(kI, 0.0);
  r.checks.push_back({"x_det_real_at_w1_i", inv.real_det, 0.0, true});
  r.checks.push_back({"x_det_formula_at_w1_i", inv.formula_det.real(), 0.0, true});
  return r;
}

inline Report run_suite(const RunConfig& c) {
  if (c.suite == "clifford") return suite_clifford(c);
  if (c.suite == "green") return suite_green(c);
  if (c.suite == "cauchy") return suite_cauchy(c);
  if (c.suite == "symbol") return suite_symbol(c);
  if (c.suite == "toeplitz-index") return suite_toeplitz_index(c);
  if (c.suite == "octonion") return suite_octonion(c);
  throw InvalidArgument("unknown suite '" + c.suite + "'");
}

struct Table {
  std::vector<std::string> columns;         // first column is the grid size
  std::vector<std::vector<double>> rows;
  std::vector<std::string> asserted;        // columns required to decrease
};

/**
 * Refinement ladders. cauchy: projection defect (and the constant-density check) per size.
 * green: interior reproduction error per size.
 */
inline Table convergence(const RunConfig& c) {
  if (c.ladder.size() < 3) throw InvalidArgument("convergence: ladder needs at least three sizes");
  Table t;
  const Subtraction rule = parse_rule(c.rule);
  if (c.suite == "cauchy" && c.n == 1) {
    t.columns = {"N", "projection_defect", "constant_density"};
    t.asserted = {"projection_defect"};
    for (int N : c.ladder) {
      const auto g = make_circle_grid(N);
      const auto C = assemble_cauchy(build_dirac(1), g, rule);
      t.rows.push_back({double(N), projection_defect(C),
                        (C * VectorXcd::Ones(N) - 0.5 * VectorXcd::Ones(N)).cwiseAbs().maxCoeff()});
    }
  } else if (c.suite == "cauchy" && c.n == 2) {
    t.columns = {"m", "projection_defect", "resolved_projection_defect", "constant_density"};
    t.asserted = {"projection_defect", "resolved_projection_defect"};
    for (int m : c.ladder) {
      const auto g = make_s3_grid(m, m, m);
      const HopfCauchy hc(build_dirac(2), g, rule);
      const VectorXcd one = VectorXcd::Ones(hc.dim());
      t.rows.push_back({double(m), hc.projection_defect(),
                        resolved_projection_defect(g, 2, 3, [&](const VectorXcd& u) { return hc.apply(u); }),
                        (hc.apply(one) - 0.5 * one).cwiseAbs().maxCoeff()});
    }
  } else if (c.suite == "green" && c.n == 2) {
    t.columns = {"m", "exterior_z1"};
    t.asserted = {"exterior_z1"};
    for (int m : c.ladder) {
      const auto g = make_s3_grid(m, m, m);
      t.rows.push_back({double(m), exterior_vanishing(build_dirac(2), g, detail::z1_trace(g),
                                                      (VectorXd(4) << 2.5, 0.3, 0.0, 0.2).finished())});
    }
  } else {
    throw InvalidArgument("convergence: supported ladders are cauchy (n = 1, 2) and green (n = 2)");
  }
  return t;
}

/// Each step decreases strictly, or both values are already below the round-off floor.
inline bool decreasing(const Table& t, std::size_t col, double floor) {
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    const double a = t.rows[i - 1][col], b = t.rows[i][col];
    if (!(b < a || (a <= floor && b <= floor))) return false;
  }
  return true;
}

}  // namespace cliffop::cli
