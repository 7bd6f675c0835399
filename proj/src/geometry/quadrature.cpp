#include "semiclass/geometry/quadrature.hpp"

#include <cmath>

namespace semiclass::geo {

Quad1D gauss_legendre(int n, double a, double b) {
  Quad1D q;
  q.x.resize(n);
  q.w.resize(n);
  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    q.x[i] = xm - xl * z;
    q.x[n - 1 - i] = xm + xl * z;
    q.w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    q.w[n - 1 - i] = q.w[i];
  }
  return q;
}

Quad1D uniform_periodic(int n) {
  Quad1D q;
  q.x.resize(n);
  q.w.assign(n, 1.0 / n);
  for (int i = 0; i < n; ++i) q.x[i] = static_cast<double>(i) / n;
  return q;
}

double tree_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    std::vector<double> next((v.size() + 1) / 2);
    for (size_t i = 0; i + 1 < v.size(); i += 2) next[i / 2] = v[i] + v[i + 1];
    if (v.size() % 2) next.back() = v.back();
    v = std::move(next);
  }
  return v[0];
}

}  // namespace semiclass::geo
