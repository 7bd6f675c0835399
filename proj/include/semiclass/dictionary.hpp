#pragma once

#include <string>

#include "semiclass/tensor.hpp"

namespace semiclass::dict {

// Index forms at the base point of the invariant expressions used by the
// verification targets, under the conventions: |dz|^2 = 2,
// <a_{lm} dz_l ^ dzb_m, b_{kq} dz_k ^ dzb_q> = -4 a_{lm} b_{ml},
// Delta f = -4 f_{;q qbar}, sqrt(-1) RE_Lambda = 2 RE_{kk},
// omega = (i/2) dz_q ^ dzb_q. Observables are identified by their registered
// tag; derivative symbols are plain partials in normal coordinates.

struct Obs {
  int id;
  explicit Obs(const std::string& name) : id(register_observable(name)) {}
};

TensorPolynomial fderiv(Obs f, std::vector<Index> alpha);  // f_{;alpha}
TensorPolynomial value(Obs f);                             // f(x0)

TensorPolynomial laplacian(Obs f);        // -4 f_{;q qbar}
TensorPolynomial laplacian_sq(Obs f);     // (Delta^E)^2 f, abelian twist
TensorPolynomial sc_symbol();             // the sc symbol
TensorPolynomial lap_sc_symbol();         // the Delta(sc) symbol

TensorPolynomial b1();                    // (1/pi)(R_{kkmm} + RE_{mm})
TensorPolynomial b2C();                   // second coefficient, metric part
TensorPolynomial b2E(bool replaced);      // twist part; `replaced` takes the
                                          // (1/2) RE_{kk;mm} form
TensorPolynomial b2(bool replaced = false);

TensorPolynomial b1f(Obs f);              // first Toeplitz coefficient
TensorPolynomial b2f(Obs f);              // second Toeplitz coefficient (scalar f)
TensorPolynomial b1fg(Obs f, Obs g);      // first composition coefficient
TensorPolynomial b2fg(Obs f, Obs g);      // second composition coefficient

TensorPolynomial C1_target(Obs f, Obs g);  // -(1/pi) f_{;u} g_{;ubar}
TensorPolynomial C2_target(Obs f, Obs g);
TensorPolynomial poisson(Obs f, Obs g);    // bracket of 2 pi omega, the sign
                                           // fixed by C1(f,g)-C1(g,f) = i {f,g}

TensorPolynomial K3f(Obs f);               // third-order cross term

// Named lookup used by reports; throws std::invalid_argument on an
// uncatalogued invariant.
TensorPolynomial lookup(const std::string& name, Obs f, Obs g);

}  // namespace semiclass::dict
