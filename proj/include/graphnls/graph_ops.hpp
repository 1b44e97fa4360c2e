#pragma once
#include "graphnls/field.hpp"

namespace graphnls {

// Composite-trapezoid L2(Gamma) pairing, conjugate-linear in the first slot.
cplx l2_inner(const GraphField& f, const GraphField& g);
double l2_inner(const RealField& f, const RealField& g);

// trapezoid pairing of the discrete derivatives <Df, Dg>, D the second-order
// central difference (one-sided at the vertex and at x = L, per edge)
cplx d_inner(const GraphField& f, const GraphField& g);
double d_inner(const RealField& f, const RealField& g);

// l2_inner(f, g) + d_inner(f, g)
cplx h1_inner(const GraphField& f, const GraphField& g);
double h1_inner(const RealField& f, const RealField& g);

double l2_norm(const GraphField& f);
double l2_norm(const RealField& f);
double h1_norm(const GraphField& f);
double h1_norm(const RealField& f);

// trapezoid of |f|^q over Gamma
double lp_integral(const GraphField& f, double q);
double lp_integral(const RealField& f, double q);

// -Delta with the ghost-point vertex stencil (continuity + zero flux sum)
// and Dirichlet at x = L.
GraphField apply_hamiltonian(const GraphField& f);
RealField apply_hamiltonian(const RealField& f);

// <-Delta f, f> evaluated as the forward-difference (Dirichlet) energy; equals
// l2_inner(apply_hamiltonian(f), f) exactly and is nonnegative by construction.
double dirichlet_energy(const GraphField& f);
double dirichlet_energy(const RealField& f);

// Diagnostic: discrete sum of outgoing derivatives at the vertex. H1 fields
// need not satisfy the Kirchhoff flux condition; nothing is rejected.
cplx kirchhoff_flux_sum(const GraphField& f);
double kirchhoff_flux_sum(const RealField& f);

// inf_theta || e^{-i theta} psi - phi ||_{H1}, via the closed-form minimizer
// theta* = arg h1_inner(phi, psi). Throws DomainError if phi == 0.
double distance_to_orbit(const GraphField& psi, const GraphField& phi);
double distance_to_orbit(const GraphField& psi, const RealField& phi);

} // namespace graphnls
