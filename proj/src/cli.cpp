#include "qsym/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsym/acceptance.hpp"
#include "qsym/braidb.hpp"
#include "qsym/cohoch.hpp"
#include "qsym/errors.hpp"
#include "qsym/kzmono.hpp"
#include "qsym/satake.hpp"
#include "qsym/sln.hpp"
#include "qsym/uqsl.hpp"

namespace qsym {

using json = nlohmann::ordered_json;

double round15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

cd parse_complex(const std::string& text) {
  static const std::regex re(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$)");
  static const std::regex pure(R"(^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij]\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pure)) {
    double im = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -im : im};
  }
  if (!text.empty() && std::regex_match(text, m, re) && (m[1].matched || m[2].matched)) {
    double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double im = 0;
    if (m[2].matched) {
      im = m[3].matched ? std::stod(m[3].str()) : 1.0;
      if (m[2].str() == "-") im = -im;
    }
    return {re_part, im};
  }
  throw ParameterError("cannot parse complex number '" + text + "'");
}

namespace {

struct RunConfig {
  int N = 2, p = 1;
  double h = 0.05;
  std::string s = "0", mu = "0", s_p, c_p;
  double phi = 0.5;
  bool complex_family = false;
  double tol = 1e-12;
  double check_tol = -1;  // per-command default when negative
  int max_order = 200;
  std::string format = "json";
  unsigned seed = 0;
  std::string route = "commutant";
  int strands = 2;
  std::string side = "both";
  std::string words;
  std::string g = "sl2", hsub = "zero";
  int max_degree = 3, max_weight = 4;
  bool invariant = false;
  bool serial = false;
};

json num(double x) { return round15(x); }
json cnum(cd z) { return json{{"re", round15(z.real())}, {"im", round15(z.imag())}}; }

json mat(const Mat& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      r.push_back(round15(m(i, j).real()));
      c.push_back(round15(m(i, j).imag()));
    }
    re.push_back(r);
    im.push_back(c);
  }
  return json{{"re", re}, {"im", im}};
}

std::string rat(const Rat& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json weight(const Weight& w) {
  json a = json::array();
  for (const auto& x : w) a.push_back(rat(x));
  return a;
}

// "L1 - L3" style label for weights of the form L_i - L_j.
std::string root_label(const Weight& w) {
  int plus = -1, minus = -1, other = 0;
  for (size_t k = 0; k < w.size(); ++k) {
    if (w[k] == Rat(1))
      plus = static_cast<int>(k);
    else if (w[k] == Rat(-1))
      minus = static_cast<int>(k);
    else if (w[k] != Rat(0))
      ++other;
  }
  if (plus < 0 || minus < 0 || other) {
    std::string s;
    for (const auto& x : w) s += (s.empty() ? "(" : ", ") + rat(x);
    return s + ")";
  }
  return "L" + std::to_string(plus + 1) + " - L" + std::to_string(minus + 1);
}

std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", round15(x));
  return buf;
}

struct Report {
  json results = json::object();
  json residuals = json::object();
  std::string status = "ok";
  std::optional<std::string> csv;  // tabular form when available
};

double worst_of(const json& residuals) {
  double w = 0;
  for (const auto& [k, v] : residuals.items())
    if (v.is_number()) w = std::max(w, std::abs(v.get<double>()));
  return w;
}

void judge(Report& r, double bound) {
  r.results["check_bound"] = num(bound);
  if (worst_of(r.residuals) > bound) r.status = "fail";
}

double bound_or(const RunConfig& c, double fallback) { return c.check_tol >= 0 ? c.check_tol : fallback; }

KZOptions kz_options(const RunConfig& c) { return {c.tol, c.max_order}; }

CoidealParams coideal_from(const RunConfig& c) {
  const double q = std::exp(c.h);
  if (!c.s_p.empty() && !c.c_p.empty()) throw ParameterError("give at most one of --s-p and --c-p");
  if (!c.s_p.empty()) return s_type_params(c.N, q, parse_complex(c.s_p), c.complex_family);
  if (!c.c_p.empty()) return c_type_params(c.N, c.p, q, parse_complex(c.c_p), c.complex_family);
  return standard_params(c.N, c.p, q);
}

json params_json(const CoidealParams& t) {
  json c = json::array(), s = json::array();
  for (int i = 1; i < t.n; ++i) {
    c.push_back(cnum(t.c[i]));
    s.push_back(cnum(t.s[i]));
  }
  return json{{"tag", tag_name(t.tag)}, {"q", num(t.q)}, {"c", c}, {"s", s}, {"complex_family", t.complex_family}};
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> default_words(int strands) {
  std::vector<std::string> w{"", "r", "r^2", "r^-1"};
  if (strands >= 2)
    for (const char* x : {"s1", "r s1", "r s1 r s1", "r^-1 s1^2 r"}) w.push_back(x);
  if (strands >= 3)
    for (const char* x : {"s2", "r s1 s2", "r s1 s2 r s1 s2^-1"}) w.push_back(x);
  return w;
}

// ---- subcommands ----

Report cmd_satake(const RunConfig& c) {
  Report r;
  auto sd = build_aiii(c.N, c.p);
  auto checks = check_satake(sd);
  json tau = json::array();
  for (int t : sd.tau) tau.push_back(t);
  json rsr = json::array(), erb = json::array();
  for (const auto& v : restricted_simple_roots(sd)) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat(x));
    rsr.push_back(a);
  }
  for (const auto& v : expected_restricted_basis(sd)) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat(x));
    erb.push_back(a);
  }
  auto nc = normalization_constants(sd);
  r.results["X"] = sd.X;
  r.results["tau"] = tau;
  r.results["tag"] = tag_name(sd.tag);
  r.results["distinguished"] = sd.distinguished;
  r.results["z_nu"] = weight(sd.z_nu);
  r.results["restricted_simple_roots"] = rsr;
  r.results["expected_restricted_basis"] = erb;
  r.results["a_sigma"] = num(nc.a_sigma);
  if (nc.has_z_formula) r.results["z_formula_matches"] = nc.z_formula_matches;
  r.results["checks"] = json{{"theta_involution", checks.theta_involution},
                             {"theta_fixes_X", checks.theta_fixes_X},
                             {"theta_is_minus_wX_tau", checks.theta_is_minus_wX_tau},
                             {"cascade_strongly_orthogonal", checks.cascade_strongly_orthogonal},
                             {"cascade_equal_length", checks.cascade_equal_length},
                             {"cascade_noncompact", checks.cascade_noncompact},
                             {"zero_restriction_is_X_span", checks.zero_restriction_is_X_span},
                             {"restricted_basis_ok", checks.restricted_basis_ok},
                             {"distinguished_matches_cascade", checks.distinguished_matches_cascade}};
  r.residuals["failed_checks"] = static_cast<int>(!checks.theta_involution) + !checks.theta_fixes_X +
                                 !checks.theta_is_minus_wX_tau + !checks.cascade_strongly_orthogonal +
                                 !checks.cascade_equal_length + !checks.cascade_noncompact +
                                 !checks.zero_restriction_is_X_span + !checks.restricted_basis_ok +
                                 !checks.distinguished_matches_cascade;
  judge(r, 0);
  return r;
}

Report cmd_cascade(const RunConfig& c) {
  Report r;
  auto sd = build_aiii(c.N, c.p);
  auto cas = cascade(sd);
  auto part = partition_roots(sd);
  json rows = json::array();
  std::string csv = "index,root,coordinates\n";
  for (size_t i = 0; i < cas.size(); ++i) {
    rows.push_back(json{{"index", i + 1}, {"root", root_label(cas[i])}, {"coordinates", weight(cas[i])}});
    std::string coords;
    for (const auto& x : cas[i]) coords += (coords.empty() ? "" : " ") + rat(x);
    csv += std::to_string(i + 1) + "," + root_label(cas[i]) + "," + coords + "\n";
  }
  long pairs_bad = 0;
  for (size_t i = 0; i < cas.size(); ++i)
    for (size_t j = i + 1; j < cas.size(); ++j) pairs_bad += !strongly_orthogonal(sd.root_system, cas[i], cas[j]);
  r.results["cascade"] = rows;
  r.results["rank"] = cas.size();
  r.results["partition"] = json{{"P0", part.P0.size()}, {"C0", part.C0.size()}, {"total", part.total()}};
  r.results["positive_roots"] = sd.root_system.positive_roots.size();
  r.residuals["non_strongly_orthogonal_pairs"] = pairs_bad;
  r.residuals["partition_count_mismatch"] =
      static_cast<long>(sd.root_system.positive_roots.size()) - static_cast<long>(part.total());
  judge(r, 0);
  r.csv = csv;
  return r;
}

Report cmd_cayley(const RunConfig& c) {
  Report r;
  auto pr = realize(c.N, c.p);
  Mat kb = kphi_basis(pr, c.phi);
  r.results["phi"] = num(c.phi);
  r.results["dim_k_phi"] = kb.cols();
  r.residuals["cayley_lemma"] = num(cayley_lemma_residual(pr, c.phi));
  r.residuals["r_rotation"] = num(r_rotation_residual(pr, c.phi));
  r.residuals["coisotropy"] = num(coisotropy_residual(pr, c.phi));
  for (const auto& [k, v] : fix_theta_residuals(pr, c.phi)) r.residuals["generator " + k] = num(v);
  // seeded spot check: a random element of k_φ has cobracket in k_φ ⊗ g + g ⊗ k_φ
  std::mt19937 gen(c.seed);
  std::normal_distribution<double> nd;
  Vec coef(kb.cols());
  for (int i = 0; i < kb.cols(); ++i) coef(i) = cd(nd(gen), nd(gen));
  Vec x = kb * coef;
  x /= x.norm();
  r.residuals["cobracket_random_element"] = num(cobracket_offspace_residual(pr, c.phi, unvec_rowmajor(x, c.N, c.N)));
  judge(r, bound_or(c, 1e-12));
  return r;
}

Report cmd_pairing(const RunConfig& c) {
  Report r;
  auto pr = realize(c.N, c.p);
  const double dim_m = 2.0 * c.p * (c.N - c.p);
  cd mp = omega_pairing(pr, pr.t_mplus), mm = omega_pairing(pr, pr.t_mminus), k = omega_pairing(pr, pr.t_k);
  r.results["dim_m"] = static_cast<int>(dim_m);
  r.results["t_m_plus"] = cnum(mp);
  r.results["t_m_minus"] = cnum(mm);
  r.results["t_k"] = cnum(k);
  r.results["t_u"] = cnum(omega_pairing(pr, pr.t_u));
  r.residuals["t_m_plus"] = num(std::abs(mp - kI * dim_m / 2.0));
  r.residuals["t_m_minus"] = num(std::abs(mm + kI * dim_m / 2.0));
  r.residuals["t_k"] = num(std::abs(k));
  judge(r, bound_or(c, 1e-12));
  return r;
}

Report cmd_kz_psi(const RunConfig& c) {
  Report r;
  auto pr = realize(c.N, c.p);
  auto v = fundamental_rep(c.N);
  const cd s = parse_complex(c.s), mu = parse_complex(c.mu);
  auto res = psi_kz(pr, {v, v, v}, s, mu, c.h, kz_options(c));
  r.results["psi"] = mat(res.psi);
  r.results["order_used"] = res.order_used;
  r.results["tail_estimate"] = num(res.tail_estimate);
  if (mu == 0.0 && std::abs(s.imag()) < 1.0) {
    Mat o = first_order_oracle(pr, {v, v, v}, s);
    r.results["first_order_deviation"] = num(fro((res.psi - eye(res.psi.rows())) / c.h - o));
  }
  for (const auto& [k, val] : identity_residuals(pr, v, s, mu, c.h, kz_options(c))) r.residuals[k] = num(val);
  judge(r, bound_or(c, 1e-8));
  return r;
}

Report cmd_kmatrix(const RunConfig& c) {
  Report r;
  if (c.route == "quasik") {
    if (!c.s_p.empty() || !c.c_p.empty()) throw ParameterError("the quasi-K route is built for t = 0 only");
    auto qk = quasi_k_in_rep(c.N, c.p, std::exp(c.h));
    r.results["route"] = "quasik";
    r.results["K"] = mat(qk.K);
    r.results["quasi_k"] = mat(qk.X);
    r.results["scalar_vs_commutant"] = cnum(qk.scalar_vs_commutant);
    r.residuals["recursion"] = num(qk.recursion_residual);
    r.residuals["comparison"] = num(qk.comparison_residual);
    r.residuals["scalar_modulus"] = num(std::abs(std::abs(qk.scalar_vs_commutant) - 1.0));
    judge(r, bound_or(c, 1e-9));
    return r;
  }
  if (c.route != "commutant") throw ParameterError("--route must be commutant or quasik");
  auto t = coideal_from(c);
  auto kr = solve_kmatrix(t);
  json ev = json::array(), y = json::array();
  for (cd e : kr.eigenvalues) ev.push_back(cnum(e));
  for (cd e : kr.mudrov.y) y.push_back(cnum(e));
  r.results["route"] = "commutant";
  r.results["params"] = params_json(t);
  r.results["K"] = mat(kr.K);
  r.results["mudrov"] = json{{"lambda", cnum(kr.mudrov.lambda)}, {"mu", cnum(kr.mudrov.mu)},
                             {"r_block", kr.mudrov.r_block}, {"y", y}};
  r.results["eigenvalues"] = ev;
  r.results["s"] = num(kr.inferred_s);
  r.results["s_plus_mu"] = cnum(kr.inferred_s_plus_mu);
  r.results["closed_form_s_plus_mu"] = cnum(kr.fit.closed_form_s_plus_mu);
  r.results["central_g"] = cnum(kr.fit.g);
  r.results["ambiguous_sign"] = kr.fit.ambiguous;
  r.residuals["commutant"] = num(kr.commutant_residual);
  r.residuals["reflection"] = num(kr.reflection_residual);
  r.residuals["closed_form"] = num(kr.closed_form_residual);
  r.residuals["lambda"] = num(kr.lambda_residual);
  r.residuals["mudrov_constraint"] = num(kr.mudrov.constraint_residual);
  r.residuals["s_plus_mu_closed_form"] = num(kr.fit.closed_form_residual);
  r.residuals["eigenvalue_modulus"] = num(kr.fit.modulus_residual);
  judge(r, bound_or(c, 1e-9));
  return r;
}

json traces_json(const std::vector<std::string>& words, const BraidRep& rep, std::string& csv, const char* side) {
  json out = json::array();
  for (const auto& w : words) {
    cd tr = evaluate_word(rep, parse_word(w)).trace();
    out.push_back(json{{"word", w}, {"trace", cnum(tr)}});
    csv += "\"" + w + "\"," + side + "," + csv_num(tr.real()) + "," + csv_num(tr.imag()) + "\n";
  }
  return out;
}

Report cmd_braid_rep(const RunConfig& c) {
  Report r;
  if (c.side != "q" && c.side != "kz" && c.side != "both") throw ParameterError("--side must be q, kz or both");
  auto t = coideal_from(c);
  auto kr = solve_kmatrix(t);
  auto words = c.words.empty() ? default_words(c.strands) : split_words(c.words);
  std::string csv = "word,side,trace_re,trace_im\n";
  r.results["params"] = params_json(t);
  r.results["strands"] = c.strands;
  if (c.side != "kz") {
    auto rep = build_rep(qside_data(kr), c.strands);
    r.results["dim"] = rep.dim;
    r.results["grouping"] = rep.grouping;
    r.results["q_traces"] = traces_json(words, rep, csv, "q");
    for (const auto& [k, v] : relation_residuals(rep)) r.residuals["q " + k] = num(v);
  }
  if (c.side != "q") {
    auto rep = build_rep(kzside_data(c.N, c.p, c.h, kr.fit.s_plus_mu, kr.fit.g, kz_options(c)), c.strands);
    r.results["dim"] = rep.dim;
    r.results["grouping"] = rep.grouping;
    r.results["kz_s_plus_mu"] = cnum(kr.fit.s_plus_mu);
    r.results["kz_central_g"] = cnum(kr.fit.g);
    r.results["kz_traces"] = traces_json(words, rep, csv, "kz");
    for (const auto& [k, v] : relation_residuals(rep)) r.residuals["kz " + k] = num(v);
  }
  judge(r, bound_or(c, 1e-8));
  r.csv = csv;
  return r;
}

Report cmd_kohno_drinfeld(const RunConfig& c) {
  Report r;
  auto t = coideal_from(c);
  auto words = c.words.empty() ? default_words(c.strands) : split_words(c.words);
  auto kd = kohno_drinfeld_compare(t, words, c.strands, kz_options(c));
  json rows = json::array();
  std::string csv = "word,q_re,q_im,kz_re,kz_im,delta\n";
  for (const auto& w : kd.traces) {
    rows.push_back(json{{"word", w.word}, {"q_side", cnum(w.q_side)}, {"kz_side", cnum(w.kz_side)},
                        {"delta", num(w.delta)}});
    csv += "\"" + w.word + "\"," + csv_num(w.q_side.real()) + "," + csv_num(w.q_side.imag()) + "," +
           csv_num(w.kz_side.real()) + "," + csv_num(w.kz_side.imag()) + "," + csv_num(w.delta) + "\n";
  }
  r.results["params"] = params_json(t);
  r.results["strands"] = c.strands;
  r.results["s_plus_mu"] = cnum(kd.fit.s_plus_mu);
  r.results["central_g"] = cnum(kd.fit.g);
  r.results["r_scalar"] = num(kd.r_scalar);
  r.results["traces"] = rows;
  r.residuals["max_trace_delta"] = num(kd.max_delta);
  r.residuals["ribbon_determinant"] = num(kd.det_residual);
  double wq = 0, wk = 0;
  for (const auto& [k, v] : kd.qside_relations) wq = std::max(wq, v);
  for (const auto& [k, v] : kd.kzside_relations) wk = std::max(wk, v);
  r.residuals["q_relations"] = num(wq);
  r.residuals["kz_relations"] = num(wk);
  judge(r, bound_or(c, 1e-6));
  r.csv = csv;
  return r;
}

Report cmd_cohomology(const RunConfig& c) {
  Report r;
  int n = 0;
  if (c.g == "sl2")
    n = 2;
  else if (c.g == "sl3")
    n = 3;
  else
    throw ParameterError("--g must be sl2 or sl3");
  std::string preset = c.hsub;
  if (preset == "so2" || preset == "so3") {
    if (preset.back() - '0' != n) throw DomainError(preset + " is not a subalgebra of " + c.g);
    preset = "so";
  }
  auto cc = build_complex(sl_algebra(n), subalgebra_preset(n, preset), c.max_degree, c.max_weight);
  auto tab = cohomology_dims(cc, c.invariant);
  json dims = json::array(), cochains = json::array(), wedge = json::array();
  std::string csv = "degree,weight,cochains,rank_out,dim_H\n";
  long mismatch = 0;
  for (int d = 0; d <= c.max_degree; ++d) {
    dims.push_back(tab.dims[d]);
    cochains.push_back(tab.cochains[d]);
    const long want = c.invariant ? invariant_wedge_dim(cc, d) : wedge_dim(cc, d);
    wedge.push_back(want);
    for (int w = 0; w <= c.max_weight; ++w) {
      csv += std::to_string(d) + "," + std::to_string(w) + "," + std::to_string(tab.cochains[d][w]) + "," +
             std::to_string(tab.rank_out[d][w]) + "," + std::to_string(tab.dims[d][w]) + "\n";
      if (w <= c.max_weight && tab.dims[d][w] != (w == d ? want : 0)) ++mismatch;
    }
  }
  long euler = 0;
  for (int w = 0; w <= c.max_weight; ++w) euler += std::abs(tab.euler_defect(w));
  r.results["g"] = c.g;
  r.results["h"] = c.hsub;
  r.results["g_dim"] = cc.g_dim;
  r.results["h_dim"] = cc.h_dim;
  r.results["invariant"] = c.invariant;
  r.results["dims"] = dims;
  r.results["cochain_dims"] = cochains;
  r.results["expected_wedge_dims"] = wedge;
  r.residuals["d_squared_nonzero_entries"] = d_squared_defect(cc);
  r.residuals["euler_defect"] = euler;
  r.residuals["wedge_mismatch"] = mismatch;
  judge(r, 0);
  r.csv = csv;
  return r;
}

Report cmd_verify_all(const RunConfig& c, std::ostream& err) {
  Report r;
  auto res = run_acceptance(!c.serial);
  json rows = json::array();
  std::string csv = "id,name,passed,measured,bound\n";
  int failed = 0;
  for (const auto& x : res) {
    err << format_criterion(x) << "\n";
    rows.push_back(json{{"id", x.id}, {"name", x.name}, {"passed", x.passed}, {"measured", num(x.measured)},
                        {"bound", num(x.threshold)}, {"detail", x.detail}});
    csv += std::to_string(x.id) + ",\"" + x.name + "\"," + (x.passed ? "true" : "false") + "," +
           csv_num(x.measured) + "," + csv_num(x.threshold) + "\n";
    failed += !x.passed;
  }
  r.results["criteria"] = rows;
  r.residuals["failed_criteria"] = failed;
  if (failed) r.status = "fail";
  r.csv = csv;
  return r;
}

json echo(const std::string& cmd, const RunConfig& c) {
  json e{{"tol", num(c.tol)}, {"format", c.format}, {"seed", c.seed}};
  auto core = [&] {
    e["N"] = c.N;
    e["p"] = c.p;
  };
  auto coideal = [&] {
    core();
    e["h"] = num(c.h);
    if (!c.s_p.empty()) e["s_p"] = c.s_p;
    if (!c.c_p.empty()) e["c_p"] = c.c_p;
    e["complex_family"] = c.complex_family;
  };
  if (cmd == "satake" || cmd == "cascade" || cmd == "pairing") core();
  if (cmd == "cayley-check") {
    core();
    e["phi"] = num(c.phi);
  }
  if (cmd == "kz-psi") {
    core();
    e["h"] = num(c.h);
    e["s"] = c.s;
    e["mu"] = c.mu;
    e["max_order"] = c.max_order;
  }
  if (cmd == "kmatrix") {
    coideal();
    e["route"] = c.route;
  }
  if (cmd == "braid-rep" || cmd == "kohno-drinfeld") {
    coideal();
    e["strands"] = c.strands;
    e["max_order"] = c.max_order;
    e["words"] = c.words.empty() ? default_words(c.strands) : split_words(c.words);
    if (cmd == "braid-rep") e["side"] = c.side;
  }
  if (cmd == "cohomology") {
    e["g"] = c.g;
    e["h"] = c.hsub;
    e["max_degree"] = c.max_degree;
    e["max_weight"] = c.max_weight;
    e["invariant"] = c.invariant;
  }
  if (cmd == "verify-all") e["serial"] = c.serial;
  if (c.check_tol >= 0) e["check_tol"] = num(c.check_tol);
  return e;
}

const char* kFooter =
    "Exit status:\n"
    "  0   success (status ok)\n"
    "  1   a residual exceeded its check bound, or an acceptance criterion failed\n"
    "  2   usage or parse error\n"
    "  3   unexpected internal error\n"
    "  10  invalid-dimension    11  parameter      12  shape\n"
    "  13  structural           14  domain         15  resonance\n"
    "  16  truncation           17  comparison     18  solver\n"
    "  19  inconsistency        20  unsupported\n"
    "Environment:\n"
    "  QSYM_TOL  default for --tol (series and solver tolerance)\n"
    "Complex values are written a, bi, a+bi or a-bi.";

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv("QSYM_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) {
      err << "QSYM_TOL must be a positive number, got '" << env << "'\n";
      return kExitUsage;
    }
    c.tol = v;
  }

  CLI::App app{"Numerical and exact checks for quantum symmetric pairs of type AIII"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "series and solver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--check-tol", c.check_tol, "bound on residuals for status ok (command default when omitted)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", c.seed, "seed for randomized spot checks");
  };
  auto np = [&](CLI::App* sub) {
    sub->add_option("--n", c.N, "N of sl_N")->check(CLI::Range(2, 12));
    sub->add_option("--p", c.p, "p of the pair s(u(p) + u(N-p))")->check(CLI::Range(1, 6));
  };
  auto hopt = [&](CLI::App* sub) {
    sub->add_option("--h", c.h, "deformation parameter, q = e^h")->check(CLI::Range(-5.0, 5.0));
  };
  auto coideal = [&](CLI::App* sub) {
    np(sub);
    hopt(sub);
    sub->add_option("--s-p", c.s_p, "S-type parameter s_p (N = 2p)");
    sub->add_option("--c-p", c.c_p, "C-type parameter c_p (2p < N)");
    sub->add_flag("--complex-family", c.complex_family, "allow non-real parameters");
  };
  auto strands = [&](CLI::App* sub) {
    sub->add_option("--strands", c.strands, "number n of W strands in Γ_n")->check(CLI::Range(1, 3));
    sub->add_option("--words", c.words, "';'-separated words in r, s<i> with optional ^k");
    sub->add_option("--max-order", c.max_order, "series order cap")->check(CLI::Range(1, 5000));
  };

  auto* satake = app.add_subcommand("satake", "Satake data, restricted roots and structural checks");
  np(satake);
  common(satake);
  auto* casc = app.add_subcommand("cascade", "strongly orthogonal cascade of noncompact roots");
  np(casc);
  common(casc);
  auto* cay = app.add_subcommand("cayley-check", "Cayley rotation, coisotropy and generator residuals");
  np(cay);
  cay->add_option("--phi", c.phi, "Cayley angle")->check(CLI::Range(-10.0, 10.0));
  common(cay);
  auto* pair = app.add_subcommand("pairing", "Ω-pairing against t^{m±}, t^k and t^u");
  np(pair);
  common(pair);
  auto* psi = app.add_subcommand("kz-psi", "cyclotomic KZ associator on V⊗V⊗V and its identities");
  np(psi);
  hopt(psi);
  psi->add_option("--s", c.s, "parameter s");
  psi->add_option("--mu", c.mu, "parameter μ");
  psi->add_option("--max-order", c.max_order, "series order cap")->check(CLI::Range(1, 5000));
  common(psi);
  auto* km = app.add_subcommand("kmatrix", "K-matrix by the commutant or the quasi-K route");
  coideal(km);
  km->add_option("--route", c.route, "solution route")->check(CLI::IsMember({"commutant", "quasik"}));
  common(km);
  auto* br = app.add_subcommand("braid-rep", "type-B braid representation on V⊗W^{⊗n}");
  coideal(br);
  strands(br);
  br->add_option("--side", c.side, "q, kz or both")->check(CLI::IsMember({"q", "kz", "both"}));
  common(br);
  auto* kd = app.add_subcommand("kohno-drinfeld", "trace comparison between the q-side and the KZ side");
  coideal(kd);
  strands(kd);
  common(kd);
  auto* coh = app.add_subcommand("cohomology", "co-Hochschild cohomology dimensions, exact");
  coh->add_option("--g", c.g, "sl2 or sl3")->check(CLI::IsMember({"sl2", "sl3"}));
  coh->add_option("--h", c.hsub, "subalgebra")->check(CLI::IsMember({"zero", "cartan", "so", "so2", "so3"}));
  coh->add_option("--max-degree", c.max_degree, "top degree")->check(CLI::Range(1, 8));
  coh->add_option("--max-weight", c.max_weight, "top weight")->check(CLI::Range(1, 8));
  coh->add_flag("--invariant", c.invariant, "restrict to the h-invariant subcomplex");
  common(coh);
  auto* va = app.add_subcommand("verify-all", "run the acceptance criteria");
  va->add_flag("--serial", c.serial, "run criteria one after another");
  common(va);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    if (rc != 0) err << "\n" << app.help() << "\n";
    return rc == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  json doc;
  doc["command"] = cmd;
  doc["config_echo"] = echo(cmd, c);
  int rc = kExitOk;
  Report rep;
  try {
    if (cmd == "satake")
      rep = cmd_satake(c);
    else if (cmd == "cascade")
      rep = cmd_cascade(c);
    else if (cmd == "cayley-check")
      rep = cmd_cayley(c);
    else if (cmd == "pairing")
      rep = cmd_pairing(c);
    else if (cmd == "kz-psi")
      rep = cmd_kz_psi(c);
    else if (cmd == "kmatrix")
      rep = cmd_kmatrix(c);
    else if (cmd == "braid-rep")
      rep = cmd_braid_rep(c);
    else if (cmd == "kohno-drinfeld")
      rep = cmd_kohno_drinfeld(c);
    else if (cmd == "cohomology")
      rep = cmd_cohomology(c);
    else
      rep = cmd_verify_all(c, err);
    if (c.format == "csv" && !rep.csv) throw ParameterError("csv output is only available for tabular commands");
    if (rep.status != "ok") rc = kExitCheckFailed;
  } catch (const Error& e) {
    err << "error [" << error_kind_name(e.kind()) << "] in " << cmd << ": " << e.what() << "\n";
    doc["results"] = nullptr;
    doc["residuals"] = json::object();
    doc["status"] = "error";
    doc["error"] = json{{"kind", error_kind_name(e.kind())}, {"code", e.code()}, {"message", e.what()}};
    out << doc.dump(2) << "\n";
    return e.code();
  } catch (const std::exception& e) {
    err << "internal error in " << cmd << ": " << e.what() << "\n";
    return kExitInternal;
  }
  if (c.format == "csv") {
    out << *rep.csv;
  } else {
    doc["results"] = rep.results;
    doc["residuals"] = rep.residuals;
    doc["status"] = rep.status;
    out << doc.dump(2) << "\n";
  }
  return rc;
}

}  // namespace qsym
