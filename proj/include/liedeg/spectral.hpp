#pragma once
/**
 * @file spectral.hpp
 * @brief Koopman correlations on a Peter-Weyl block, commutator averages,
 *        kernel splits, Wiener averages and mixing / AC verdicts.
 *
 * A FiberVector is psi(x, g) = sum_k phi_k(x) pi_{jk}(g) in the orthonormal
 * convention. Correlations are computed pointwise on an equispaced grid:
 *   c_N = d^{-1} sum_{k,l} int conj(phi1_l(x)) phi2_k(F_N x) pi_{lk}(phi^(N)(x)) dx.
 */

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liedeg/dynamics.hpp"
#include "liedeg/representation.hpp"

namespace liedeg {

using CoefFn = std::function<cplx(const BasePoint&)>;

struct FiberVector {
  Representation rep;
  int j = 0;
  std::vector<CoefFn> coeffs;
  /// per base dimension, bound on the trigonometric degree of every coefficient
  std::vector<int> degree_bound;

  /// coefficient f in slot k, zero elsewhere
  static FiberVector single(const Representation& rep, int j, int k, CoefFn f,
                            std::vector<int> bound);
};

/// Trigonometric degree multiplier of g -> pi(g) relative to the entries of g.
int rep_frequency_factor(const Representation& rep);

cplx inner_product(const FiberVector& a, const FiberVector& b, const QuadratureSpec& quad);

/// Grid that integrates every c_n with |n| <= n_max exactly.
QuadratureSpec sized_quadrature(const FiberVector& a, const FiberVector& b, const Cocycle& c,
                                long n_max);

struct CorrelationValue {
  cplx value;
  double err_estimate = 0.0;
  std::size_t nodes = 0;
};

/// c_N; the grid is sized for |N| unless given. Error estimate by grid doubling.
CorrelationValue koopman_apply_corr(const FiberVector& a, const FiberVector& b, const Cocycle& c,
                                    const TranslationFlow& flow, long n,
                                    std::optional<QuadratureSpec> quad = std::nullopt);

inline constexpr double kCorrelationFlag = 1e-6;

struct CorrelationSeries {
  std::vector<cplx> values;  // index N = 0..N_max
  std::vector<double> err_estimate;
  std::vector<bool> flagged;
  QuadratureSpec quad;
  std::size_t flagged_count() const;
};

/// c_0 .. c_{n_max} on one grid sized for n_max, plus the doubled grid for the
/// error column.
CorrelationSeries correlation_series(const FiberVector& a, const FiberVector& b, const Cocycle& c,
                                     const TranslationFlow& flow, long n_max,
                                     std::optional<QuadratureSpec> quad = std::nullopt);

/// (i/N) sum_{n<N} pi(phi^(n)(x)) (d pi)(M_phi(F_n x)) pi(phi^(n)(x))^*
Eigen::MatrixXcd d_n_average(const Representation& rep, const Cocycle& c,
                             const TranslationFlow& flow, const BasePoint& x, long n);

struct KernelSplit {
  Eigen::MatrixXcd q;  // Q D Q^{-1} diagonal
  std::vector<double> eigenvalues;
  std::vector<int> kernel;
  std::vector<int> complement;
};

inline constexpr double kKernelRelTol = 1e-9;

KernelSplit kernel_split(const Eigen::MatrixXcd& d);

/// phi'_l(x) = sum_k pi_{lk}(t(x)) phi_k(x). With phi = zeta^{-1} delta (zeta o F_1)
/// the intertwining transfer is t = zeta^{-1}.
FiberVector conjugate_vector(const FiberVector& psi, const TransferFunction& t);

/// Pointwise inverse of a transfer function (same frequency bound).
TransferFunction inverse_transfer(const TransferFunction& t);

/// A_N = (1/N) sum_{n=1}^N |c_n|^2 at index N; index 0 holds 0.
std::vector<double> wiener_average(const CorrelationSeries& s);
std::vector<double> wiener_average(const std::vector<cplx>& c);

using MatrixField = std::function<Eigen::MatrixXcd(const BasePoint&)>;

struct DiniReport {
  std::vector<double> t;
  std::vector<double> samples;  // sup over the grid of |f o F_t - f|
  double integral = 0.0;        // log-trapezoid plus linear tail below min t
  bool plateau = false;         // samples fail to decay towards small t
  bool heuristic = true;
};

DiniReport dini_modulus(const MatrixField& f, const TranslationFlow& flow,
                        const std::vector<double>& t_grid, const std::vector<BasePoint>& grid);

/// t_k = 2^{-k}, k = 0..levels-1, ascending.
std::vector<double> dyadic_t_grid(int levels);

/// L_Y(pi o phi) = (d pi)(M_phi) pi(phi)
MatrixField lie_derivative_field(const Representation& rep, const Cocycle& c);

struct Hypothesis {
  std::string name;
  std::string status;  // PASS, FAIL, HEURISTIC-PASS, HEURISTIC-FAIL
  double value = 0.0;
};

struct SpectralVerdict {
  std::string rep_label;
  int j = 0;
  std::vector<int> kernel_indices;
  std::vector<Hypothesis> hypotheses;
  std::string verdict;
  std::vector<std::string> notes;
  std::vector<double> wiener;
  double tail_max = 0.0;  // max |c_N| over N in [N_max/2, N_max]
  double c0 = 0.0;
};

/// Finite-difference estimate of sup |L_Y(pi o phi)| against sup |(d pi)(M_phi)|.
struct RegularityCheck {
  double fd_sup = 0.0;
  double analytic_sup = 0.0;
  bool bounded = true;
};

RegularityCheck regularity_check(const Representation& rep, const Cocycle& c,
                                 const TranslationFlow& flow, const std::vector<BasePoint>& grid,
                                 double h = 1e-5);

struct MixingInputs {
  Eigen::MatrixXcd d;  // limit commutator D for this block (constant degree)
  std::vector<FiberVector> probes;
  long n_max = 50;
  std::vector<BasePoint> check_grid;  // for hypothesis checks
};

SpectralVerdict mixing_verdict(const Representation& rep, int j, const Cocycle& c,
                               const TranslationFlow& flow, const MixingInputs& in,
                               std::vector<CorrelationSeries>* series_out = nullptr);

struct AcInputs {
  Eigen::MatrixXcd d;
  double uniform_diagnostic = 0.0;  // grid max of the N-vs-N/2 degree diagnostic
  double uniform_tol = 1e-2;
  DiniReport dini;
  bool torus_irrational_base = false;
  std::vector<BasePoint> check_grid;
};

SpectralVerdict ac_verdict(const Representation& rep, int j, const Cocycle& c,
                           const TranslationFlow& flow, const AcInputs& in);

/// CSV with header N,re,im,abs,err_estimate
std::string series_csv(const CorrelationSeries& s);

}  // namespace liedeg
