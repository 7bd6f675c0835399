#include <mutex>
#include <random>

#include "semiclass/checks.hpp"
#include "semiclass/dictionary.hpp"
#include "semiclass/engine.hpp"
#include "semiclass/fock_oracle.hpp"

namespace semiclass {

namespace {

Engine& shared_engine() {
  static Engine e;
  return e;
}

RelationSet& shared_rels() {
  static RelationSet r = RelationSet::standard();
  return r;
}

std::once_flag g_engine_once;
void ensure_engine() {
  std::call_once(g_engine_once, [] {
    shared_engine();
    shared_rels();
  });
}

CheckResult exact(const TensorPolynomial& a, const TensorPolynomial& b) {
  TensorPolynomial d = a - b;
  CheckResult r;
  r.pass = d.is_zero();
  if (!r.pass) r.residue = d.render();
  return r;
}

CheckResult modrel(const TensorPolynomial& a, const TensorPolynomial& b) {
  auto m = equal_mod_relations(a, b, shared_rels());
  CheckResult r;
  r.pass = m.equal;
  if (!m.equal) r.residue = m.residue.render();
  return r;
}

Observable obs_f() { return Observable::base("f"); }
Observable obs_g() { return Observable::base("g"); }
Observable obs_h() { return Observable::base("h"); }
dict::Obs tag_f() { return dict::Obs("f"); }
dict::Obs tag_g() { return dict::Obs("g"); }

// Star product coefficient applied to composite arguments.
TensorPolynomial star_side(Engine& E, bool left, const Observable& f, const Observable& g,
                           const Observable& h, int order) {
  auto C0 = [&](const TensorPolynomial& a, const Observable& b) {
    return contract_mul(a, b.value());
  };
  if (order == 1) {
    if (left)
      return C0(E.C1(f, g), h) + E.C1(Observable::product(f, g), h);
    return contract_mul(f.value(), E.C1(g, h)) + E.C1(f, Observable::product(g, h));
  }
  if (left) {
    TensorPolynomial out = C0(E.C2(f, g), h);
    out += E.C1(E.C1_observable(f, g), h);
    out += E.C2(Observable::product(f, g), h);
    return out;
  }
  TensorPolynomial out = contract_mul(f.value(), E.C2(g, h));
  out += E.C1(f, E.C1_observable(g, h));
  out += E.C2(f, Observable::product(g, h));
  return out;
}

std::vector<CheckDef> build_symbolic() {
  std::vector<CheckDef> cs;
  auto add = [&](std::string id, std::string anchor,
                 std::function<CheckResult(const RunSettings&)> fn) {
    cs.push_back({std::move(id), std::move(anchor), "symbolic", std::move(fn)});
  };

  add("sym.O2-normal-form", "bk3.3/bk3.4", [](const RunSettings&) {
    ensure_engine();
    CheckResult r;
    OperatorExpression d =
        normal_order(op_adjoint(shared_engine().ops().O2)) - shared_engine().ops().O2;
    r.pass = d.is_zero();
    if (!r.pass) r.residue = d.render();
    return r;
  });
  add("sym.PO2P", "bk3.0a", [](const RunSettings&) {
    ensure_engine();
    CheckResult r;
    r.pass = shared_engine().PO2P_vanishes();
    if (!r.pass) r.residue = "P O2 P != 0";
    return r;
  });
  add("sym.F2-b1", "bk2.6", [](const RunSettings&) {
    ensure_engine();
    return exact(eval_origin(shared_engine().F(2)), dict::b1());
  });
  add("sym.PJ2P", "n55", [](const RunSettings&) {
    ensure_engine();
    TensorPolynomial v =
        eval_origin(compose(KernelPolynomial::P(), shared_engine().F(2))).drop_curvE();
    return modrel(v, dict::sc_symbol().scaled(Scalar::pi_pow(-1, Rational(1, 16))));
  });
  add("sym.lemma-squared-trace", "bk3.0b", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    TensorPolynomial lhs = eval_origin(compose(E.L1O2P(), E.PO2L1()));
    TensorPolynomial s =
        dict::b1().scaled(Scalar::pi_pow(1));  // R_{mmkk} + RE_{kk}
    TensorPolynomial rhs = (s * s).scaled(Scalar::pi_pow(-2, Rational(1, 4)));
    return modrel(lhs, rhs);
  });
  add("sym.lemma-double-resolvent", "bk3.0c", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    TensorPolynomial lhs = eval_origin(compose(E.PO2L1(), E.L1O2P()));
    auto U = [](int i) { return Index(i, false); };
    auto B = [](int i) { return Index(i, true); };
    TensorPolynomial rhs;
    rhs.add(TensorMonomial(Scalar::pi_pow(-2, Rational(1, 36)),
                           {TensorFactor::curvR(U(0), B(1), U(2), B(3)),
                            TensorFactor::curvR(U(1), B(0), U(3), B(2))}));
    rhs.add(TensorMonomial(Scalar::pi_pow(-2, Rational(4, 9)),
                           {TensorFactor::curvR(U(0), B(1), U(1), B(2)),
                            TensorFactor::curvR(U(2), B(3), U(3), B(0))}));
    rhs.add(TensorMonomial(Scalar::pi_pow(-2, Rational(1, 3)),
                           {TensorFactor::curvR(U(0), B(1), U(1), B(2)),
                            TensorFactor::curvE(U(2), B(0))}));
    rhs.add(TensorMonomial(Scalar::pi_pow(-2, Rational(1, 3)),
                           {TensorFactor::curvE(U(0), B(1)),
                            TensorFactor::curvR(U(1), B(2), U(2), B(0))}));
    rhs.add(TensorMonomial(Scalar::pi_pow(-2, Rational(1, 4)),
                           {TensorFactor::curvE(U(0), B(1)), TensorFactor::curvE(U(1), B(0))}));
    return modrel(lhs, rhs);
  });
  add("sym.lemma-O2-square", "bk3.12", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    TensorPolynomial lhs = eval_origin(inv_L_perp(apply_to_P(E.ops().O2, E.L1O2P())))
                               .scaled(Scalar::pi_pow(2));
    auto U = [](int i) { return Index(i, false); };
    auto B = [](int i) { return Index(i, true); };
    auto R4 = [&](int a, int b, int c, int d) {
      return TensorFactor::curvR(U(a), B(b), U(c), B(d));
    };
    TensorPolynomial rhs;
    rhs.add(TensorMonomial(Scalar::rational(-25, 216), {R4(0, 1, 2, 3), R4(1, 0, 3, 2)}));
    rhs.add(TensorMonomial(Scalar::rational(-47, 54), {R4(0, 0, 1, 2), R4(3, 3, 2, 1)}));
    rhs.add(TensorMonomial(Scalar::rational(1, 8), {R4(0, 0, 1, 1), R4(2, 2, 3, 3)}));
    rhs.add(TensorMonomial(Scalar::rational(1, 4),
                           {TensorFactor::curvE(U(0), B(0)), R4(1, 1, 2, 2)}));
    rhs.add(TensorMonomial(Scalar::rational(-7, 6),
                           {TensorFactor::curvE(U(0), B(1)), R4(2, 2, 1, 0)}));
    rhs.add(TensorMonomial(Scalar::rational(1, 8),
                           {TensorFactor::curvE(U(0), B(0)), TensorFactor::curvE(U(1), B(1))}));
    rhs.add(TensorMonomial(Scalar::rational(-3, 8),
                           {TensorFactor::curvE(U(0), B(1)), TensorFactor::curvE(U(1), B(0))}));
    return modrel(lhs, rhs);
  });
  add("sym.lemma-O4", "lm3.31", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    TensorPolynomial lhs =
        eval_origin(inv_L_perp(apply_to_P(E.ops().O4, KernelPolynomial::P())))
            .scaled(Scalar(-1) * Scalar::pi_pow(2));
    auto U = [](int i) { return Index(i, false); };
    auto B = [](int i) { return Index(i, true); };
    auto R4 = [&](int a, int b, int c, int d) {
      return TensorFactor::curvR(U(a), B(b), U(c), B(d));
    };
    TensorPolynomial rhs = dict::lap_sc_symbol().scaled(Scalar::rational(-1, 96));
    rhs.add(TensorMonomial(Scalar::rational(23, 108), {R4(0, 1, 2, 3), R4(1, 0, 3, 2)}));
    rhs.add(TensorMonomial(Scalar::rational(41, 54), {R4(0, 0, 1, 2), R4(3, 3, 2, 1)}));
    rhs.add(TensorMonomial(Scalar(1), {R4(0, 0, 1, 2), TensorFactor::curvE(U(2), B(1))}));
    rhs.add(TensorMonomial(Scalar::rational(-1, 8),
                           {TensorFactor::curvE(U(0), B(0), {U(1), B(1)})}));
    rhs.add(TensorMonomial(Scalar::rational(3, 8),
                           {TensorFactor::curvE(U(0), B(1), {U(1), B(0)})}));
    rhs.add(TensorMonomial(Scalar::rational(1, 4),
                           {TensorFactor::curvE(U(0), B(1)), TensorFactor::curvE(U(1), B(0))}));
    return modrel(lhs, rhs);
  });
  add("sym.F4-b2", "bk2.8", [](const RunSettings&) {
    ensure_engine();
    return modrel(eval_origin(shared_engine().F(4)), dict::b2(false));
  });
  add("sym.F4-b2-replaced", "footnote-1", [](const RunSettings&) {
    ensure_engine();
    return modrel(eval_origin(shared_engine().F(4)), dict::b2(true));
  });
  add("sym.b2E-variants", "footnote-1", [](const RunSettings&) {
    ensure_engine();
    return modrel(dict::b2E(false), dict::b2E(true));
  });
  add("sym.J4-consistency", "bk4.10", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    KernelPolynomial sum = compose(E.F(0), E.F(4)) + compose(E.F(2), E.F(2)) +
                           compose(E.F(4), E.F(0));
    CheckResult r;
    r.pass = sum == E.F(4);
    if (!r.pass) r.residue = (sum - E.F(4)).render();
    return r;
  });
  add("sym.self-adjoint", "toet2.7", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    CheckResult r;
    TensorPolynomial b1v = eval_origin(E.F(2));
    TensorPolynomial b2v = eval_origin(E.F(4));
    r.pass = (b1v.conj() == b1v) && (b2v.conj() == b2v);
    if (!r.pass) r.residue = "origin values not hermitian";
    return r;
  });
  add("sym.b1f", "bk4.3", [](const RunSettings&) {
    ensure_engine();
    return modrel(shared_engine().b_rf(1, obs_f()), dict::b1f(tag_f()));
  });
  add("sym.K3f", "bk4.18", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    Observable f = obs_f();
    KernelPolynomial t1 = E.taylor_kernel(f, 1);
    TensorPolynomial lhs =
        eval_origin(compose(E.F(3), pointwise_mul(t1, E.F(0)))) +
        eval_origin(compose(E.F(0), pointwise_mul(t1, E.F(3))));
    return modrel(lhs.scaled(Scalar::pi_pow(2)), dict::K3f(tag_f()));
  });
  add("sym.b2f", "bk4.4", [](const RunSettings&) {
    ensure_engine();
    return modrel(shared_engine().b_rf(2, obs_f()), dict::b2f(tag_f()));
  });
  add("sym.b0fg", "toe4.30", [](const RunSettings&) {
    ensure_engine();
    return exact(shared_engine().b_rfg(0, obs_f(), obs_g()),
                 contract_mul(dict::value(tag_f()), dict::value(tag_g())));
  });
  add("sym.b1fg", "toe4.31", [](const RunSettings&) {
    ensure_engine();
    return modrel(shared_engine().b_rfg(1, obs_f(), obs_g()), dict::b1fg(tag_f(), tag_g()));
  });
  add("sym.b2fg", "toe4.32", [](const RunSettings&) {
    ensure_engine();
    return modrel(shared_engine().b_rfg(2, obs_f(), obs_g()), dict::b2fg(tag_f(), tag_g()));
  });
  add("sym.C1", "toe4.3", [](const RunSettings&) {
    ensure_engine();
    return exact(shared_engine().C1(obs_f(), obs_g()), dict::C1_target(tag_f(), tag_g()));
  });
  add("sym.C2", "toe4.3a", [](const RunSettings&) {
    ensure_engine();
    return modrel(shared_engine().C2(obs_f(), obs_g()), dict::C2_target(tag_f(), tag_g()));
  });
  add("sym.poisson", "toe4.5", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    TensorPolynomial anti = E.C1(obs_f(), obs_g()) - E.C1(obs_g(), obs_f());
    return exact(anti, dict::lookup("{f,g}", tag_f(), tag_g()).scaled(Scalar::i()));
  });
  add("sym.star-assoc-h1", "toe4.4c", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    return modrel(star_side(E, true, obs_f(), obs_g(), obs_h(), 1),
                  star_side(E, false, obs_f(), obs_g(), obs_h(), 1));
  });
  add("sym.star-assoc-h2", "toe4.4c", [](const RunSettings&) {
    ensure_engine();
    auto& E = shared_engine();
    return modrel(star_side(E, true, obs_f(), obs_g(), obs_h(), 2),
                  star_side(E, false, obs_f(), obs_g(), obs_h(), 2));
  });
  add("sym.oracle-compose", "toe1.6", [](const RunSettings& s) {
    std::mt19937_64 rng(s.seed);
    auto C = [](int v) { return Index(v, false, true); };
    for (int t = 0; t < 200; ++t) {
      int n = 1 + static_cast<int>(rng() % 2);
      auto rand_kernel = [&]() {
        KernelPolynomial k;
        int terms = 1 + static_cast<int>(rng() % 3);
        for (int tt = 0; tt < terms; ++tt) {
          int deg = static_cast<int>(rng() % 5);
          std::vector<VarLetter> vars;
          for (int d = 0; d < deg; ++d)
            vars.push_back({static_cast<VarKind>(rng() % 4),
                            C(1 + static_cast<int>(rng() % n))});
          long num = static_cast<long>(rng() % 9) - 4;
          if (num == 0) num = 1;
          k += KernelPolynomial(KernelTerm(
              TensorMonomial(Scalar::rational(num, 1 + static_cast<long>(rng() % 4))),
              std::move(vars)));
        }
        return k;
      };
      auto K1 = rand_kernel(), K2 = rand_kernel();
      if (!(compose(K1, K2) == compose_fock_route(K1, K2))) {
        CheckResult r;
        r.pass = false;
        r.residue = "route disagreement at trial " + std::to_string(t);
        return r;
      }
    }
    return CheckResult{true, ""};
  });
  add("sym.oracle-normal-order", "bk2.66", [](const RunSettings& s) {
    std::mt19937_64 rng(s.seed ^ 0x9e3779b97f4a7c15ull);
    auto C1i = Index(1, false, true);
    for (int t = 0; t < 100; ++t) {
      OperatorExpression e;
      int terms = 1 + static_cast<int>(rng() % 3);
      for (int tt = 0; tt < terms; ++tt) {
        int len = static_cast<int>(rng() % 5);
        std::vector<Letter> w;
        for (int i = 0; i < len; ++i) w.push_back({static_cast<LetterKind>(rng() % 4), C1i});
        long num = static_cast<long>(rng() % 9) - 4;
        if (num == 0) num = 2;
        e += OperatorExpression(
            OpTerm(TensorMonomial(Scalar::rational(num, 1 + static_cast<long>(rng() % 3))),
                   std::move(w)));
      }
      auto M1 = fock_matrix(e, 12, {});
      auto M2 = fock_matrix(normal_order(e), 12, {});
      double d = matrix_rel_diff(M1, M2);
      if (d > 1e-10 * s.tolScale) {
        CheckResult r;
        r.pass = false;
        r.residue = "matrix deviation " + std::to_string(d) + " at trial " + std::to_string(t);
        return r;
      }
    }
    return CheckResult{true, ""};
  });
  return cs;
}

}  // namespace

const std::vector<CheckDef>& symbolic_checks() {
  static std::vector<CheckDef> cs = build_symbolic();
  return cs;
}

std::vector<CheckDef> all_checks() {
  std::vector<CheckDef> out = symbolic_checks();
  for (auto& c : numeric_checks()) out.push_back(c);
  return out;
}

}  // namespace semiclass
