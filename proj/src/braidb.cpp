#include "qsym/braidb.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qsym/errors.hpp"
#include "qsym/sln.hpp"

namespace qsym {

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void require_invertible(const Mat& m, const std::string& name) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 1e-13 * s(0)) throw StructuralError(name + " is not invertible");
}

}  // namespace

BraidRep build_rep(const BraidData& d, int n) {
  if (n < 1) throw ParameterError("Γ_n needs n >= 1");
  if (n > 3) throw UnsupportedError("braid representations are built for n <= 3");
  const int dv = d.dim_v, dw = d.dim_w;
  if (d.E.rows() != dv * dw || d.E.cols() != dv * dw) throw ShapeError("ribbon braid must act on V ⊗ W");
  if (d.R_hat.rows() != dw * dw || d.R_hat.cols() != dw * dw) throw ShapeError("braiding must act on W ⊗ W");
  BraidRep rep;
  rep.n = n;
  rep.dim = dv * ipow(dw, n);
  rep.grouping = "(V⊗W)";
  for (int k = 1; k < n; ++k) rep.grouping = "(" + rep.grouping + "⊗W)";
  rep.rho1 = kron(d.E, eye(ipow(dw, n - 1)));
  require_invertible(rep.rho1, "ρ_1");
  for (int i = 1; i < n; ++i) {
    const int head = dv * ipow(dw, i - 1);
    Mat s = kron(eye(head), d.R_hat);
    if (d.psi) {
      Mat ps = d.psi(i);
      if (ps.rows() != head * dw * dw || ps.cols() != ps.rows())
        throw ShapeError("Ψ for σ_" + std::to_string(i) + " has the wrong grouping");
      s = ps.inverse() * s * ps;
    }
    Mat full = kron(s, eye(ipow(dw, n - 1 - i)));
    require_invertible(full, "σ_" + std::to_string(i));
    rep.sigma.push_back(full);
  }
  return rep;
}

BraidRep conjugate(const BraidRep& rep, const Mat& t) {
  BraidRep out = rep;
  Mat ti = t.inverse();
  out.rho1 = t * rep.rho1 * ti;
  for (auto& s : out.sigma) s = t * s * ti;
  return out;
}

std::map<std::string, double> relation_residuals(const BraidRep& rep) {
  std::map<std::string, double> out;
  const auto& s = rep.sigma;
  const int m = static_cast<int>(s.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::string key = std::to_string(i + 1) + "_" + std::to_string(j + 1);
      if (j - i > 1)
        out["commute_" + key] = fro(s[i] * s[j] - s[j] * s[i]);
      else
        out["braid_" + key] = fro(s[i] * s[j] * s[i] - s[j] * s[i] * s[j]);
    }
  for (int i = 1; i < m; ++i) out["rho_sigma_" + std::to_string(i + 1)] = fro(rep.rho1 * s[i] - s[i] * rep.rho1);
  if (m > 0) {
    const Mat& r = rep.rho1;
    out["type_b"] = fro(r * s[0] * r * s[0] - s[0] * r * s[0] * r);
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int gen = 0, power = 1;
    std::string base = tok, exp;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      exp = tok.substr(caret + 1);
      try {
        size_t used = 0;
        power = std::stoi(exp, &used);
        if (used != exp.size()) throw std::invalid_argument(exp);
      } catch (const std::exception&) {
        throw ParameterError("bad exponent in word token '" + tok + "'");
      }
      if (power == 0) throw ParameterError("zero exponent in word token '" + tok + "'");
    }
    if (base == "r" || base == "r1") {
      gen = 0;
    } else if (base.size() >= 2 && base[0] == 's' &&
               std::all_of(base.begin() + 1, base.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
      gen = std::stoi(base.substr(1));
      if (gen < 1) throw ParameterError("σ index must be >= 1 in '" + tok + "'");
    } else {
      throw ParameterError("unknown word token '" + tok + "'");
    }
    w.emplace_back(gen, power);
  }
  return w;
}

Mat evaluate_word(const BraidRep& rep, const Word& w) {
  Mat out = eye(rep.dim);
  for (auto [gen, power] : w) {
    if (gen > static_cast<int>(rep.sigma.size()))
      throw ParameterError("word uses σ_" + std::to_string(gen) + " but n = " + std::to_string(rep.n));
    const Mat& g = gen == 0 ? rep.rho1 : rep.sigma[gen - 1];
    Mat step = power > 0 ? g : Mat(g.inverse());
    for (int k = 0; k < std::abs(power); ++k) out = out * step;
  }
  return out;
}

BraidData qside_data(const KMatrixResult& kr) {
  const int n = kr.params.n;
  const double q = kr.params.q;
  const double c = r_matrix_scalar(n, q);
  Mat r = c * r_matrix(n, q);
  Mat sw = flip(n);
  BraidData d;
  d.dim_v = n;
  d.dim_w = n;
  d.E = (sw * r * sw) * kron(eye(n), kr.K) * r;
  d.R_hat = sw * r;
  return d;
}

BraidData kzside_data(int n, int p, double h, cd s_plus_mu, cd g, const KZOptions& opt) {
  PairRealization pr = realize(n, p);
  Representation f = fundamental_rep(n);
  BraidData d;
  d.dim_v = n;
  d.dim_w = n;
  d.E = ribbon_kz(pr, {f, f}, s_plus_mu, 0.0, h, g, RibbonVariant::Plain);
  d.R_hat = flip(n) * r_kz(pr, {f, f}, h);
  d.psi = [pr, f, h, s_plus_mu, opt](int i) {
    Representation head = f;
    for (int k = 1; k < i; ++k) head = tensor_rep(head, f);
    return psi_kz(pr, {head, f, f}, s_plus_mu, 0.0, h, opt).psi;
  };
  return d;
}

KohnoDrinfeldResult kohno_drinfeld_compare(const CoidealParams& t, const std::vector<std::string>& words, int n,
                                           const KZOptions& opt) {
  const double h = std::log(t.q);
  KMatrixResult kr = solve_kmatrix(t);
  KohnoDrinfeldResult res;
  res.fit = kr.fit;
  res.r_scalar = r_matrix_scalar(t.n, t.q);
  BraidData qd = qside_data(kr);
  BraidData kd = kzside_data(t.n, t.p, h, kr.fit.s_plus_mu, kr.fit.g, opt);
  BraidRep qrep = build_rep(qd, n);
  BraidRep krep = build_rep(kd, n);
  res.qside_relations = relation_residuals(qrep);
  res.kzside_relations = relation_residuals(krep);
  res.det_residual = std::abs(qd.E.determinant() - kd.E.determinant());
  for (const auto& text : words) {
    Word w = parse_word(text);
    WordTrace wt;
    wt.word = text;
    wt.q_side = evaluate_word(qrep, w).trace();
    wt.kz_side = evaluate_word(krep, w).trace();
    wt.delta = std::abs(wt.q_side - wt.kz_side);
    res.max_delta = std::max(res.max_delta, wt.delta);
    res.traces.push_back(wt);
  }
  return res;
}

}  // namespace qsym
