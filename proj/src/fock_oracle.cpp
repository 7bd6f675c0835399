#include "semiclass/fock_oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace semiclass {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string factor_signature_n1(const TensorFactor& f) {
  std::ostringstream os;
  os << static_cast<int>(f.kind) << ":" << f.obs << ":" << f.slots.size() << ":";
  for (auto& d : f.derivs) os << (d.bar ? "b" : "u");
  return os.str();
}

CMatrix fock_matrix(const OperatorExpression& e, int N,
                    const std::map<std::string, double>& symVals) {
  int deg = 0;
  for (auto& [k, t] : e.terms()) deg = std::max(deg, static_cast<int>(t.word.size()));
  if (N < deg)
    throw std::invalid_argument("fock_matrix: truncation below expression degree");

  // Basis of the truncated span.
  std::vector<std::pair<int, int>> basis;
  for (int a = 0; a <= N; ++a)
    for (int b = 0; a + b <= N; ++b) basis.emplace_back(a, b);
  const int nb = static_cast<int>(basis.size());
  const int ext = N + deg + 1;
  auto at = [&](int a, int b) { return a * (ext + 1) + b; };

  std::vector<double> logNorm(static_cast<size_t>(ext + 1) * (ext + 1), 0.0);
  for (int a = 0; a <= ext; ++a)
    for (int b = 0; b <= ext; ++b) {
      double ln = a * std::log(4.0 * kPi) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  b * std::log(kPi);
      logNorm[at(a, b)] = 0.5 * ln;  // log of the norm itself
    }

  CMatrix M(nb, std::vector<Cplx>(nb, Cplx(0.0, 0.0)));
  std::vector<Cplx> w(static_cast<size_t>(ext + 1) * (ext + 1));
  std::vector<Cplx> w2(w.size());

  for (int j = 0; j < nb; ++j) {
    std::fill(w.begin(), w.end(), Cplx(0.0, 0.0));
    auto [aj, bj] = basis[j];
    // Accumulate e * e_j over all terms.
    for (auto& [key, t] : e.terms()) {
      Cplx coeff = t.coeff.coeff.eval(kPi, 1.0);
      for (auto& f : t.coeff.factors) {
        auto it = symVals.find(factor_signature_n1(f));
        if (it == symVals.end())
          throw std::invalid_argument("fock_matrix: no value for symbol " +
                                      factor_signature_n1(f));
        coeff *= it->second;
      }
      std::fill(w2.begin(), w2.end(), Cplx(0.0, 0.0));
      w2[at(aj, bj)] = coeff;
      for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
        std::vector<Cplx> nxt(w2.size(), Cplx(0.0, 0.0));
        for (int a = 0; a <= ext; ++a)
          for (int b = 0; a + b <= ext; ++b) {
            Cplx v = w2[at(a, b)];
            if (v == Cplx(0.0, 0.0)) continue;
            switch (it->kind) {
              case LetterKind::B:
                nxt[at(a + 1, b)] += v;
                break;
              case LetterKind::BPlus:
                if (a > 0) nxt[at(a - 1, b)] += 4.0 * kPi * static_cast<double>(a) * v;
                break;
              case LetterKind::Z:
                nxt[at(a, b + 1)] += v;
                if (a > 0) nxt[at(a - 1, b)] += 2.0 * static_cast<double>(a) * v;
                break;
              case LetterKind::Zbar:
                nxt[at(a + 1, b)] += v / (2.0 * kPi);
                if (b > 0) nxt[at(a, b - 1)] += static_cast<double>(b) / kPi * v;
                break;
            }
          }
        w2 = std::move(nxt);
      }
      for (size_t i = 0; i < w.size(); ++i) w[i] += w2[i];
    }
    for (int i = 0; i < nb; ++i) {
      auto [ai, bi] = basis[i];
      Cplx v = w[at(ai, bi)];
      if (v != Cplx(0.0, 0.0))
        M[i][j] = v * std::exp(logNorm[at(ai, bi)] - logNorm[at(aj, bj)]);
    }
  }
  return M;
}

double matrix_rel_diff(const CMatrix& a, const CMatrix& b) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) {
      num += std::norm(a[i][j] - b[i][j]);
      den += std::norm(a[i][j]) + std::norm(b[i][j]);
    }
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

}  // namespace semiclass
