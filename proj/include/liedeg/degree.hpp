#pragma once
/**
 * @file degree.hpp
 * @brief Degree estimation, invariance checks, SU(2) straightening and
 *        ergodicity obstructions.
 */

#include <string>
#include <vector>

#include "liedeg/cocycles.hpp"
#include "liedeg/dynamics.hpp"
#include "liedeg/representation.hpp"

namespace liedeg {

inline constexpr long kDefaultDegreeN = 10000;
/// CONSTANT is granted when the cross-point spread is at most this multiple of
/// the worst N-vs-N/2 diagnostic.
inline constexpr double kConstantSpreadFactor = 10.0;

struct PointwiseDegree {
  AlgebraElement value;  // Cesaro average over n < N
  AlgebraElement half;   // same over n < N/2
  double diagnostic = 0.0;
};

/// (1/N) sum_{n<N} Ad_{phi^(n)(x)} M_phi(F_n x)
PointwiseDegree degree_pointwise(const Cocycle& c, const TranslationFlow& flow, const BasePoint& x,
                                 long n);

struct DegreeField {
  std::vector<BasePoint> points;
  std::vector<AlgebraElement> values;
  std::vector<double> diagnostics;
  long n_used = 0;
  double spread = 0.0;          // max pairwise distance of values
  double max_diagnostic = 0.0;
  bool constant = false;
};

DegreeField degree_field(const Cocycle& c, const TranslationFlow& flow,
                         const std::vector<BasePoint>& points, long n);

/// Quadrature of M_phi over the base.
AlgebraElement degree_constant_diagonal(const Cocycle& c, const QuadratureSpec& quad);
/// P_Ad of the quadrature of M_phi.
AlgebraElement degree_constant_ergodic(const Cocycle& c, const QuadratureSpec& quad);

/// Eigenvalues of i (d pi)(z), ascending.
std::vector<double> degree_eigenvalues(const Representation& rep, const AlgebraElement& z);

/// Minimum over the given degree values of the smallest eigenvalue of
/// (i (d pi)(value))^2. On a sampled field this is the grid minimum.
double a_phi_pi(const Representation& rep, const std::vector<AlgebraElement>& values);
double a_phi_pi(const Representation& rep, const AlgebraElement& constant);

struct InvarianceReport {
  double max_deviation = 0.0;  // pointwise algebra distance
  double max_norm_gap = 0.0;   // | |lhs| - |rhs| |
  double max_diagnostic = 0.0;
  std::size_t points = 0;
};

/// Compares the degree of delta with Ad_zeta of the degree of
/// phi = zeta^{-1} delta (zeta o F_1).
InvarianceReport invariance_check_cohomology(const Cocycle& phi, const Cocycle& delta,
                                             const TransferFunction& zeta,
                                             const TranslationFlow& flow, long n,
                                             const std::vector<BasePoint>& points);

/// Compares the degree of h o delta with (dh) applied to the factor degrees.
InvarianceReport invariance_check_homomorphism(const Homomorphism& h,
                                               const std::vector<Cocycle>& factors,
                                               const TranslationFlow& flow, long n,
                                               const std::vector<BasePoint>& points);

struct RhoReport {
  double rho = 0.0;
  double max_deviation = 0.0;
};

RhoReport rho_phi(const DegreeField& field);

inline constexpr double kZetaBranchTol = 1e-9;
inline constexpr double kZetaNormTol = 1e-6;

/// Transfer value with Ad_zeta(D) = diag(i rho, -i rho), using the three-branch
/// formula (generic, a = -rho, a = rho).
GroupElement su2_transfer_zeta(const AlgebraElement& d, double rho);

struct StraightenReport {
  std::vector<BasePoint> points;
  std::vector<GroupElement> delta;  // straightened values at the points
  double rho = 0.0;
  double max_offdiag = 0.0;
  /// Unwrapped winding of the (0,0) entry of delta along the first base
  /// coordinate; only filled for a one-dimensional equispaced grid.
  double winding = 0.0;
  bool winding_available = false;
  long n_used = 0;
  std::string note;
};

inline constexpr double kStraightenRhoMin = 1e-3;

StraightenReport su2_straighten(const Cocycle& phi, const TranslationFlow& flow, long n,
                                const std::vector<BasePoint>& grid,
                                double rho_min = kStraightenRhoMin);

enum class Obstruction { NotUniquelyErgodicA, NotUniquelyErgodicB, NoObstruction };

struct ErgodicityVerdict {
  Obstruction obstruction = Obstruction::NoObstruction;
  bool not_ergodic = false;  // upgrade when the base flow is uniquely ergodic
  std::string justification;
  std::string verdict() const;
  std::string upgrade() const;
};

ErgodicityVerdict ergodicity_verdict(const GroupTag& tag, const AlgebraElement& integral_m,
                                     bool degree_nonzero, bool flow_uniquely_ergodic = false);

}  // namespace liedeg
