#pragma once
/**
 * @file representation.hpp
 * @brief Irreducible unitary representations of the lab groups.
 *
 * Internally everything is in an orthonormal basis. For SU(2) and U(2) the
 * classical monomial basis p_j = w1^j w2^(l-j) has |p_j|^2 = j!(l-j)!, and
 * matrices in that basis are exposed as Convention::Paper.
 */

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "liedeg/group.hpp"

namespace liedeg {

enum class Convention { Orthonormal, Paper };

struct Representation {
  GroupTag tag;
  std::vector<int> q;  // torus character exponents
  int l = 0;
  int m = 0;  // U(2) determinant twist
  Convention convention = Convention::Orthonormal;

  static Representation torus(const std::vector<int>& q);
  static Representation su2(int l);
  static Representation so3(int l);
  static Representation u2(int l, int m);

  int dim() const;
  std::string label() const;
  Representation in(Convention c) const {
    Representation r = *this;
    r.convention = c;
    return r;
  }
};

inline constexpr int kMaxSu2Weight = 12;

struct RepMatrix {
  Eigen::MatrixXcd m;
  Convention convention = Convention::Orthonormal;
};

RepMatrix rep_eval(const Representation& rep, const GroupElement& g);

/// Differential at the identity. Exact: diagonal closed forms, extended to
/// all Z by conjugating Z onto the diagonal subalgebra.
RepMatrix rep_differential(const Representation& rep, const AlgebraElement& z);

/// Central-difference reference (4th order, one Richardson step).
RepMatrix rep_differential_fd(const Representation& rep, const AlgebraElement& z,
                              double h = 1e-3);

/// Matrix element in the monomial (paper) basis.
cplx paper_element(const Representation& rep, int j, int k, const GroupElement& g);

/// |p_j| for the monomial basis (1 for tori and SO(3)).
double basis_norm(const Representation& rep, int j);

/// Orthonormal -> paper rescaling: S M S with S = diag(|p_j|).
Eigen::MatrixXcd to_paper(const Representation& rep, const Eigen::MatrixXcd& ortho);

struct EulerQuadrature {
  int nodes_per_axis = 64;
};

struct MonteCarloSpec {
  std::size_t samples = 100000;
  RngHandle rng{};
};

struct OrthogonalityReport {
  double max_deviation = 0.0;
  double error_estimate = 0.0;
  std::size_t nodes = 0;
  std::string method;
};

OrthogonalityReport peter_weyl_check(const Representation& rep, const EulerQuadrature& quad);
OrthogonalityReport peter_weyl_check(const Representation& rep, const MonteCarloSpec& mc);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace liedeg
