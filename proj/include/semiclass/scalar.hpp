#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace semiclass {

using Rational = boost::multiprecision::cpp_rational;

// Gaussian rational a + b*i with exact components.
struct GaussRat {
  Rational re{0};
  Rational im{0};

  GaussRat() = default;
  GaussRat(long n) : re(n) {}
  GaussRat(Rational r) : re(std::move(r)) {}
  GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRat conj() const { return GaussRat(re, -im); }

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
  GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
  GaussRat operator*(const GaussRat& o) const {
    return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }

  GaussRat inv() const {
    Rational n = re * re + im * im;
    if (n == 0) throw std::domain_error("GaussRat: division by zero");
    return GaussRat(re / n, -im / n);
  }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  std::string str() const {
    std::ostringstream os;
    if (im == 0) {
      os << re;
    } else if (re == 0) {
      os << im << "*I";
    } else {
      os << "(" << re << (im > 0 ? "+" : "") << im << "*I)";
    }
    return os.str();
  }
};

// Exact scalar: sum of GaussRat * pi^k * n^m, with formal symbols pi and n.
// n only ever enters through traces delta_ii over symbolic dummies.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) {
    if (v != 0) terms_[{0, 0}] = GaussRat(v);
  }
  Scalar(const Rational& v) {
    if (v != 0) terms_[{0, 0}] = GaussRat(v);
  }
  Scalar(const GaussRat& v) {
    if (!v.is_zero()) terms_[{0, 0}] = v;
  }

  static Scalar rational(long num, long den) { return Scalar(Rational(num, den)); }
  static Scalar pi_pow(int k, const Rational& coeff = Rational(1)) {
    Scalar s;
    if (coeff != 0) s.terms_[{k, 0}] = GaussRat(coeff);
    return s;
  }
  static Scalar i() { return Scalar(GaussRat::i()); }
  static Scalar dim_n() {
    Scalar s;
    s.terms_[{0, 1}] = GaussRat(1);
    return s;
  }
  static Scalar graded(int piExp, int nExp, const GaussRat& v) {
    Scalar s;
    if (!v.is_zero()) s.terms_[{piExp, nExp}] = v;
    return s;
  }

  // (pi exponent, n exponent, coefficient) triples.
  std::vector<std::tuple<int, int, GaussRat>> parts() const {
    std::vector<std::tuple<int, int, GaussRat>> out;
    for (auto& [k, v] : terms_) out.emplace_back(k.first, k.second, v);
    return out;
  }

  // The single rational value of a pi- and n-free scalar.
  GaussRat pure() const {
    if (terms_.empty()) return GaussRat();
    if (terms_.size() != 1 || terms_.begin()->first != std::pair<int, int>{0, 0})
      throw std::domain_error("Scalar::pure: not a plain rational: " + str());
    return terms_.begin()->second;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_real() const {
    for (auto& [k, v] : terms_)
      if (!v.is_real()) return false;
    return true;
  }
  bool depends_on_n() const {
    for (auto& [k, v] : terms_)
      if (k.second != 0) return true;
    return false;
  }

  Scalar operator-() const {
    Scalar r;
    for (auto& [k, v] : terms_) r.terms_[k] = -v;
    return r;
  }
  Scalar operator+(const Scalar& o) const {
    Scalar r = *this;
    for (auto& [k, v] : o.terms_) {
      auto it = r.terms_.find(k);
      if (it == r.terms_.end()) {
        r.terms_[k] = v;
      } else {
        it->second += v;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
    return r;
  }
  Scalar operator-(const Scalar& o) const { return *this + (-o); }
  Scalar operator*(const Scalar& o) const {
    Scalar r;
    for (auto& [ka, va] : terms_)
      for (auto& [kb, vb] : o.terms_) {
        std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
        auto it = r.terms_.find(k);
        if (it == r.terms_.end()) {
          GaussRat p = va * vb;
          if (!p.is_zero()) r.terms_[k] = p;
        } else {
          it->second += va * vb;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    return r;
  }
  Scalar& operator+=(const Scalar& o) {
    *this = *this + o;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
  }
  bool operator==(const Scalar& o) const { return terms_ == o.terms_; }

  Scalar conj() const {
    Scalar r;
    for (auto& [k, v] : terms_) r.terms_[k] = v.conj();
    return r;
  }

  // Multiplicative inverse for monomial scalars (single term, e.g. 4*pi).
  Scalar inv() const {
    if (terms_.size() != 1) throw std::domain_error("Scalar::inv: not a monomial scalar");
    auto& [k, v] = *terms_.begin();
    Scalar r;
    r.terms_[{-k.first, -k.second}] = v.inv();
    if (k.second != 0) throw std::domain_error("Scalar::inv: cannot invert in n");
    return r;
  }

  std::complex<double> eval(double pi_val, double n_val) const {
    std::complex<double> acc{0.0, 0.0};
    for (auto& [k, v] : terms_)
      acc += v.to_complex() * std::pow(pi_val, k.first) * std::pow(n_val, k.second);
    return acc;
  }

  // Substitute the formal dimension symbol n by an integer.
  Scalar subst_n(long n_val) const {
    Scalar r;
    for (auto& [k, v] : terms_) {
      Rational scale = 1;
      for (int m = 0; m < k.second; ++m) scale *= n_val;
      Scalar piece;
      GaussRat g = v * GaussRat(scale);
      if (!g.is_zero()) piece.terms_[{k.first, 0}] = g;
      r += piece;
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << v.str();
      if (k.first != 0) os << "*pi^" << k.first;
      if (k.second != 0) os << "*n^" << k.second;
    }
    return os.str();
  }

  // Canonical encoding used in term-key comparisons.
  std::string key() const { return str(); }

 private:
  // (pi exponent, n exponent) -> coefficient
  std::map<std::pair<int, int>, GaussRat> terms_;
};

inline Scalar operator*(const Rational& a, const Scalar& b) { return Scalar(a) * b; }

}  // namespace semiclass
