#include "semiclass/observables.hpp"

#include <stdexcept>

namespace semiclass {

namespace {

// All splittings of alpha into two ordered-irrelevant halves (subset sums of
// the Leibniz rule).
void splittings(const std::vector<Index>& alpha,
                const std::function<void(const std::vector<Index>&, const std::vector<Index>&)>&
                    emit) {
  size_t n = alpha.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    std::vector<Index> a, b;
    for (size_t i = 0; i < n; ++i)
      ((mask >> i) & 1 ? a : b).push_back(alpha[i]);
    emit(a, b);
  }
}

}  // namespace

Observable Observable::base(const std::string& name) {
  int obs = register_observable(name);
  return Observable([obs](const std::vector<Index>& alpha) {
    TensorMonomial m(Scalar(1), {TensorFactor::fderiv(obs, alpha)});
    return TensorPolynomial(std::move(m));
  });
}

Observable Observable::product(const Observable& f, const Observable& g) {
  JetFn fj = f.jet_, gj = g.jet_;
  return Observable([fj, gj](const std::vector<Index>& alpha) {
    TensorPolynomial out;
    splittings(alpha, [&](const std::vector<Index>& a, const std::vector<Index>& b) {
      out += contract_mul(fj(a), gj(b));
    });
    return out;
  });
}

Observable Observable::grad_pairing(const Observable& f, const Observable& g) {
  JetFn fj = f.jet_, gj = g.jet_;
  return Observable([fj, gj](const std::vector<Index>& alpha) {
    if (alpha.size() > 2)
      throw std::invalid_argument("grad_pairing: jets supported through second order");
    // Pick the contraction hook well above the caller's ids.
    int v = 1 << 24;
    for (auto& ix : alpha) v = std::max(v, ix.id + 1);
    TensorPolynomial out;
    // Leibniz part of f_{;v} g_{;vbar} times the flat pairing value 2.
    splittings(alpha, [&](const std::vector<Index>& a, const std::vector<Index>& b) {
      std::vector<Index> fa = a;
      fa.push_back(Index(v, false));
      std::vector<Index> gb = b;
      gb.push_back(Index(v, true));
      out += contract_mul(fj(fa), gj(gb)).scaled(Scalar(2));
    });
    // Metric correction for mixed second derivatives: the pairing matrix
    // expands as 2 delta_{ab} + (4/3) R_{b m k a} z_k zbar_m + O(3), so
    // d_u d_vbar picks up (4/3) R_{b v u a} f_{;a} g_{;b}.
    if (alpha.size() == 2 && alpha[0].bar != alpha[1].bar) {
      Index u = alpha[0].bar ? alpha[1] : alpha[0];
      Index vb = alpha[0].bar ? alpha[0] : alpha[1];
      int aId = v + 1, bId = v + 2;
      TensorMonomial corr(Scalar::rational(4, 3));
      corr.factors.push_back(TensorFactor::curvR(Index(bId, false), Index(vb.id, true),
                                                 Index(u.id, false), Index(aId, true)));
      out += contract_mul(
          TensorPolynomial(std::move(corr)),
          contract_mul(fj({Index(aId, false)}), gj({Index(bId, true)})));
    }
    return out;
  });
}

Observable Observable::scaled(const Scalar& s) const {
  JetFn j = jet_;
  Scalar sc = s;
  return Observable([j, sc](const std::vector<Index>& alpha) { return j(alpha).scaled(sc); });
}

}  // namespace semiclass
