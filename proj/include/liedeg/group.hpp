#pragma once
/**
 * @file group.hpp
 * @brief The four compact groups of the lab: tori, SU(2), SO(3), U(2).
 *
 * Elements and Lie-algebra vectors are small value types tagged with their
 * group. SU(2) is stored as the first row (z1, z2) of
 * [[z1, z2], [-conj z2, conj z1]].
 */

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace liedeg {

using cplx = std::complex<double>;
inline constexpr int kMaxTorusDim = 8;
inline constexpr double kRenormThreshold = 1e-13;

enum class GroupKind { Torus, SU2, SO3, U2 };

struct GroupTag {
  GroupKind kind = GroupKind::SU2;
  int torus_dim = 0;

  static GroupTag torus(int d);
  static GroupTag su2() { return {GroupKind::SU2, 0}; }
  static GroupTag so3() { return {GroupKind::SO3, 0}; }
  static GroupTag u2() { return {GroupKind::U2, 0}; }

  /// TORUS(d), SU2, SO3, U2
  std::string name() const;
  /// side length of the matrix realization (torus: d' as a diagonal)
  int matrix_dim() const;
  friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

void require_same(const GroupTag& a, const GroupTag& b, const char* where);

class GroupElement {
 public:
  GroupElement() = default;
  static GroupElement identity(const GroupTag& tag);
  static GroupElement torus(const std::vector<cplx>& values);
  /// e^{2 pi i t_k}
  static GroupElement torus_from_turns(const std::vector<double>& turns);
  static GroupElement su2(cplx z1, cplx z2);
  static GroupElement so3(const Eigen::Matrix3d& r);
  static GroupElement u2(const Eigen::Matrix2cd& u);

  const GroupTag& tag() const { return tag_; }
  cplx torus_value(int i) const { return t_[static_cast<std::size_t>(i)]; }
  cplx z1() const { return a_; }
  cplx z2() const { return b_; }
  Eigen::Matrix2cd su2_matrix() const;
  const Eigen::Matrix3d& so3_matrix() const { return r_; }
  const Eigen::Matrix2cd& u2_matrix() const { return u_; }
  /// Dense matrix realization (torus elements as diagonal matrices).
  Eigen::MatrixXcd matrix() const;
  /// Deviation from the group constraints (unit modulus, orthogonality...).
  double invariant_defect() const;

 private:
  friend GroupElement group_mul(const GroupElement&, const GroupElement&);
  friend GroupElement group_inv(const GroupElement&);
  GroupTag tag_{};
  std::array<cplx, kMaxTorusDim> t_{};
  cplx a_{1.0, 0.0};
  cplx b_{0.0, 0.0};
  Eigen::Matrix3d r_ = Eigen::Matrix3d::Identity();
  Eigen::Matrix2cd u_ = Eigen::Matrix2cd::Identity();
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  static AlgebraElement zero(const GroupTag& tag);
  /// torus vector i*theta; stores the real parts theta
  static AlgebraElement torus(const std::vector<double>& theta);
  static AlgebraElement su2(const Eigen::Matrix2cd& m);
  /// diag(i s, -i s)
  static AlgebraElement su2_diag(double s);
  static AlgebraElement so3(const Eigen::Matrix3d& m);
  static AlgebraElement u2(const Eigen::Matrix2cd& m);
  /// Projects an arbitrary matrix onto the algebra (skew part, traceless for SU2).
  static AlgebraElement project(const GroupTag& tag, const Eigen::MatrixXcd& m);

  const GroupTag& tag() const { return tag_; }
  double torus_theta(int i) const { return t_[static_cast<std::size_t>(i)]; }
  const Eigen::Matrix2cd& m2() const { return m2_; }
  const Eigen::Matrix3d& m3() const { return m3_; }
  Eigen::MatrixXcd matrix() const;
  double norm() const;
  double invariant_defect() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(double s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }
  friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }

 private:
  GroupTag tag_{};
  std::array<double, kMaxTorusDim> t_{};
  Eigen::Matrix2cd m2_ = Eigen::Matrix2cd::Zero();
  Eigen::Matrix3d m3_ = Eigen::Matrix3d::Zero();
};

struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

class Rng {
 public:
  explicit Rng(RngHandle h);
  double uniform();
  double normal();
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
  std::normal_distribution<double> norm_{0.0, 1.0};
};

GroupElement group_mul(const GroupElement& g, const GroupElement& h);
GroupElement group_inv(const GroupElement& g);
AlgebraElement ad(const GroupElement& g, const AlgebraElement& z);
double algebra_inner(const AlgebraElement& a, const AlgebraElement& b);
GroupElement exp_alg(const AlgebraElement& z, double t = 1.0);
GroupElement haar_sample(const GroupTag& tag, Rng& rng);
AlgebraElement p_ad(const GroupTag& tag, const AlgebraElement& z);
AlgebraElement p_ad_monte_carlo(const GroupTag& tag, const AlgebraElement& z, std::size_t samples,
                                Rng& rng);

/// Frobenius distance of matrix realizations.
double element_distance(const GroupElement& g, const GroupElement& h);

// SU(2) -> SO(3) double cover and its inverse up to sign.
Eigen::Matrix3d su2_cover(const GroupElement& g);
/// Canonical lift (first nonzero quaternion component positive).
GroupElement so3_lift(const Eigen::Matrix3d& r);
/// Lie algebra isomorphism su(2) -> so(3) induced by the cover, and back.
AlgebraElement su2_to_so3(const AlgebraElement& x);
AlgebraElement so3_to_su2(const AlgebraElement& z);

/// Rotation {alpha, beta, gamma} = Rz(alpha) Ry(beta) Rz(gamma) with
/// Rz(a) = [[cos a, sin a, 0], [-sin a, cos a, 0], [0, 0, 1]] and
/// Ry(b) = [[cos b, 0, -sin b], [0, 1, 0], [sin b, 0, cos b]].
Eigen::Matrix3d euler_matrix(double alpha, double beta, double gamma);
std::array<double, 3> euler_angles(const Eigen::Matrix3d& r);
/// Generator of the x3-rotations: exp(a * G) = {a, 0, 0}.
AlgebraElement so3_x3_generator();

/// h(R, w) = branch * z * g with g lifting R and z^2 = w (principal root).
GroupElement iso_so3_torus_to_u2(const GroupElement& r, cplx w, int branch);

/// Chooses branches along a discrete path so that consecutive images of the
/// SO(3) x T -> U(2) map stay close.
class BranchTracker {
 public:
  GroupElement next(const GroupElement& r, cplx w);
  int last_branch() const { return last_branch_; }
  int sign_changes() const { return sign_changes_; }
  /// largest step between consecutive tracked images (Frobenius)
  double max_step() const { return max_step_; }

 private:
  std::optional<Eigen::Matrix2cd> prev_;
  int last_branch_ = 1;
  int sign_changes_ = 0;
  double max_step_ = 0.0;
};

struct BranchLoopReport {
  bool single_valued = true;
  double closure_gap = 0.0;
  double max_step = 0.0;
  int samples = 0;
};

/// Tracks h(R(s), w(s)) for s in [0,1] on a uniform grid and reports whether
/// the tracked branch closes up at s = 1.
BranchLoopReport branch_loop_check(const std::function<GroupElement(double)>& r_of_s,
                                   const std::function<cplx(double)>& w_of_s, int samples);

}  // namespace liedeg
