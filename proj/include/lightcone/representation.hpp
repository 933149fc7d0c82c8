#pragma once

#include "lightcone/cocycle.hpp"
#include "lightcone/quadrature.hpp"
#include "lightcone/section.hpp"

namespace lightcone {

/// (U(L)f)(p) = D(L, L^{-1}p) f(L^{-1}p), with D = D0 for the invariant
/// measure and the sqrt(|p|/|Lp|)-rescaled cocycle for the plain measure.
/// Composition is lazy; derivatives are not propagated.
Section apply_lorentz(const LorentzMatrix& L, const Section& f,
                      MeasureKind measure = MeasureKind::Invariant);

/// (U(a)f)(p) = e^{i(a.p - a0 |p|)} f(p).
Section apply_translation(const FourVector& a, const Section& f);

Section parity(const Section& f);
Section time_reversal(const Section& f);

/// (Lambda f)(p) = i pi x f(p). Propagates analytic derivatives when present.
Section helicity_apply(const Section& f);

enum class GeneratorName { P0, P, L, K, M, N, S, SmallK };

/// Self-adjoint Poincare generators acting on sections:
///   P^i multiplication by p_i, P^0 by |p|
///   L^i = (-i p x d/dp)^i           K^i = i|p| d/dp_i (+ i pi_i/2, plain)
///   s^i = -i m^i (spin matrices)    k = pi x s
///   M = L + s                       N = K + k
/// component is 1..3 (ignored for P0). Requires an analytic jacobian on f
/// unless allow_fd is set, in which case Richardson finite differences are
/// used. The result carries an analytic jacobian when f has jacobian and
/// hessian, so generator applications can be nested once.
Section generator_apply(GeneratorName name, int component, const Section& f,
                        MeasureKind measure = MeasureKind::Invariant,
                        bool allow_fd = false);

/// The same generator computed as a central finite difference of its
/// one-parameter unitary flow at t = 0 (translations for P, rotations for
/// M, boosts for N; L, K, S, SmallK are reduced to these pointwise).
Section generator_fd(GeneratorName name, int component, const Section& f,
                     double step = 1e-4,
                     MeasureKind measure = MeasureKind::Invariant);

/// Pauli-Lubanski components W^0 = P.M, W = P^0 M - P x N as sections.
std::array<Section, 4> pauli_lubanski(const Section& f,
                                      MeasureKind measure = MeasureKind::Invariant,
                                      bool allow_fd = false);

/// Boost eigenmode e^(lambda)_alpha = exp(i lambda xi(p)) e_alpha(p) with
/// xi = log sqrt((|p|-p3)/(|p|+p3)); satisfies N^3 f = lambda f for the
/// invariant measure. alpha in 1..3. Singular on the +z ray.
Section boost_eigenmode(int alpha, double lambda);

}  // namespace lightcone
