#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "semiclass/fock_oracle.hpp"

using namespace semiclass;

namespace {
constexpr double kPi = 3.14159265358979323846;

Index C1() { return Index(1, false, true); }

OperatorExpression word(std::vector<Letter> w, Scalar c = Scalar(1)) {
  return OperatorExpression(OpTerm(TensorMonomial(std::move(c)), std::move(w)));
}

OperatorExpression random_expression(std::mt19937_64& rng, int maxLen) {
  OperatorExpression e;
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    int len = static_cast<int>(rng() % (maxLen + 1));
    std::vector<Letter> w;
    for (int i = 0; i < len; ++i)
      w.push_back({static_cast<LetterKind>(rng() % 4), C1()});
    long num = static_cast<long>(rng() % 9) - 4;
    if (num == 0) num = 2;
    e += word(std::move(w), Scalar::rational(num, 1 + static_cast<long>(rng() % 3)));
  }
  return e;
}
}  // namespace

TEST_CASE("matrix of L is diagonal with entries 4 pi a") {
  auto M = fock_matrix(model_L(), 8, {});
  // Basis enumeration in fock_matrix: (a, b) lexicographic with a outer.
  std::vector<std::pair<int, int>> basis;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b) basis.emplace_back(a, b);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j) {
        CHECK(std::abs(M[i][j] - Cplx(4.0 * kPi * basis[i].first, 0.0)) < 1e-9);
      } else {
        CHECK(std::abs(M[i][j]) < 1e-9);
      }
    }
}

TEST_CASE("matrix of [b, b+] is -4 pi identity") {
  OperatorExpression comm = word({{LetterKind::B, C1()}, {LetterKind::BPlus, C1()}}) -
                            word({{LetterKind::BPlus, C1()}, {LetterKind::B, C1()}});
  auto M = fock_matrix(comm, 6, {});
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < M.size(); ++j) {
      double expect = (i == j) ? -4.0 * kPi : 0.0;
      CHECK(std::abs(M[i][j] - Cplx(expect, 0.0)) < 1e-9);
    }
}

TEST_CASE("truncation below the expression degree is rejected") {
  OperatorExpression e = word({{LetterKind::B, C1()},
                               {LetterKind::B, C1()},
                               {LetterKind::Z, C1()},
                               {LetterKind::Z, C1()}});
  CHECK_THROWS(fock_matrix(e, 3, {}));
}

TEST_CASE("normal_order preserves the truncated matrix on 100 random expressions") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    auto e = random_expression(rng, 4);
    auto M1 = fock_matrix(e, 12, {});
    auto M2 = fock_matrix(normal_order(e), 12, {});
    CHECK(matrix_rel_diff(M1, M2) <= 1e-10);
  }
}

TEST_CASE("normal_order preserves the matrix with contracted symbolic indices") {
  // Sum over i of b+_i b_i, at n = 1.
  Index j(0, false);
  OperatorExpression e = word({{LetterKind::BPlus, j}, {LetterKind::B, j}});
  auto M1 = fock_matrix(e, 10, {});
  auto M2 = fock_matrix(normal_order(e), 10, {});
  CHECK(matrix_rel_diff(M1, M2) <= 1e-12);
}

TEST_CASE("displayed commutation identity via the oracle") {
  // zbar b+ = b+ zbar - 2 as an operator identity at a fixed index.
  OperatorExpression lhs = word({{LetterKind::Zbar, C1()}, {LetterKind::BPlus, C1()}});
  OperatorExpression rhs = word({{LetterKind::BPlus, C1()}, {LetterKind::Zbar, C1()}}) +
                           word({}, Scalar(-2));
  CHECK(matrix_rel_diff(fock_matrix(lhs, 10, {}), fock_matrix(rhs, 10, {})) <= 1e-12);
}
