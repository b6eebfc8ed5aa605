#pragma once
/**
 * @file cocycles.hpp
 * @brief Built-in cocycles with analytic derivative fields.
 *
 * Every built-in is a trigonometric polynomial in x (or a branch of one) so
 * that the quadrature sizing rule applies. Monomials are written
 * x^k = exp(2 pi i <k, phases>).
 */

#include <vector>

#include "liedeg/dynamics.hpp"

namespace liedeg {

/// exp(2 pi i <k, x.phases>)
cplx monomial(const std::vector<int>& k, const BasePoint& x);
/// 2 pi <k, alpha>, the angular speed of x^k along the flow
double monomial_rate(const std::vector<int>& k, const TranslationFlow& flow);

Cocycle constant_cocycle(const GroupElement& g, int base_dim);

/// Torus-valued phi(x)_i = x^{K_i}; rows of K are the exponent vectors.
Cocycle torus_monomial(const std::vector<std::vector<int>>& k, const TranslationFlow& flow);

/// diag(x^k, conj x^k)
Cocycle su2_diagonal(const std::vector<int>& k, const TranslationFlow& flow);

/// zeta(x) = ((1 + x^p)/2, e^{i theta}(1 - x^p)/2), a unit-norm SU(2) transfer
/// function of trigonometric degree |p|.
TransferFunction su2_trig_transfer(const std::vector<int>& p, double theta,
                                   const TranslationFlow& flow);

struct ManufacturedSu2 {
  Cocycle phi;
  Cocycle delta;
  TransferFunction zeta;
};

/// phi = zeta^{-1} delta (zeta o F_1) with delta = diag(x^k, conj x^k).
ManufacturedSu2 su2_manufactured(const std::vector<int>& k, const std::vector<int>& p,
                                 double theta, const TranslationFlow& flow);

/// Rotation about the x3-axis by angle0 + 2 pi <k, phases>.
Cocycle so3_x3_rotation(const std::vector<int>& k, double angle0, const TranslationFlow& flow);

/// x^s times an SU(2) cocycle, as a U(2) cocycle.
Cocycle u2_product(const std::vector<int>& s, const Cocycle& su2_part, const TranslationFlow& flow);

/// Image of (x3-rotation by angle0 + 2 pi <r, x>, x^n) under SO(3) x T -> U(2),
/// on the branch e^{i pi <n, x>} diag(e^{i a/2}, e^{-i a/2}), a the rotation angle.
/// Phases live in [0, 1), so this branch jumps where <n, x> or <r, x> wraps
/// with odd parity.
Cocycle u2_so3_torus(const std::vector<int>& r, double angle0, const std::vector<int>& n,
                     const TranslationFlow& flow);

/// Homomorphisms h : G' -> G used by the invariance checks.
enum class HomKind { Identity, TorusPower, So3TorusToU2 };

struct Homomorphism {
  HomKind kind = HomKind::Identity;
  int power = 1;
};

/// h o delta. For So3TorusToU2 the factors are (SO(3) cocycle, TORUS(1) cocycle)
/// and the principal branch of h is used pointwise; degrees only see Ad and are
/// insensitive to the branch.
Cocycle apply_homomorphism(const Homomorphism& h, const std::vector<Cocycle>& factors);

/// (dh)_e applied to the factor algebra vectors.
AlgebraElement hom_differential(const Homomorphism& h, const std::vector<AlgebraElement>& z);

}  // namespace liedeg
