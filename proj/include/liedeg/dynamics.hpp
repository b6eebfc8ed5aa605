#pragma once
/**
 * @file dynamics.hpp
 * @brief Translation flows on T^d, cocycles, iterates and skew products.
 */

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "liedeg/group.hpp"

namespace liedeg {

/// x_k = exp(2 pi i phases_k), phases kept in [0, 1)
struct BasePoint {
  std::vector<double> phases;
  int dim() const { return static_cast<int>(phases.size()); }
};

struct TranslationFlow {
  std::vector<double> alpha;
  int dim() const { return static_cast<int>(alpha.size()); }
  /// golden mean for d = 1; (golden mean, sqrt 2 - 1) for d = 2
  static TranslationFlow default_for(int d);
};

/// Cocycle phi together with its derivative field M = (L_Y phi) phi^{-1}.
/// Callables must be pure and reentrant.
struct Cocycle {
  GroupTag tag;
  std::function<GroupElement(const BasePoint&)> value;
  std::function<AlgebraElement(const BasePoint&)> m_field;
  std::string smoothness_note;
  /// per base dimension: trigonometric degree bound of the entries of phi
  std::vector<int> frequency_bound;
  std::string name;
};

/// A transfer function zeta carries the same data as a cocycle.
using TransferFunction = Cocycle;

struct QuadratureSpec {
  std::vector<int> nodes;  // per dimension
  static QuadratureSpec uniform(int d, int m) { return {std::vector<int>(static_cast<std::size_t>(d), m)}; }
  std::size_t total() const;
  QuadratureSpec doubled() const;
};

/// Equispaced tensor grid, each node carrying weight 1/total.
std::vector<BasePoint> quadrature_points(const QuadratureSpec& q);

/// Smallest node count that integrates degree B + |N| F trig polynomials
/// exactly, with margin: 2 (B + |N| F) + 1.
int sized_nodes(int b, long n, int f);

BasePoint flow_advance(const TranslationFlow& flow, const BasePoint& x, double t);
GroupElement cocycle_iterate(const Cocycle& c, const TranslationFlow& flow, const BasePoint& x,
                             long n);

struct MFieldReport {
  double max_deviation = 0.0;
  std::size_t worst_index = 0;
  double h = 0.0;
};
MFieldReport validate_m_field(const Cocycle& c, const TranslationFlow& flow,
                              const std::vector<BasePoint>& points, double h);

using AlgebraField = std::function<AlgebraElement(const BasePoint&)>;

AlgebraElement w_apply(const Cocycle& c, const TranslationFlow& flow, const AlgebraField& f,
                       long n, const BasePoint& x);
std::pair<BasePoint, GroupElement> skew_step(const Cocycle& c, const TranslationFlow& flow,
                                             const BasePoint& x, const GroupElement& g, long n);

/// phi = zeta^{-1} delta (zeta o F_1) with
/// M_phi = -Ad_{zeta^{-1}} (M_zeta - M_delta - Ad_delta (M_zeta o F_1)).
Cocycle cohomologous_build(const Cocycle& delta, const TransferFunction& zeta,
                           const TranslationFlow& flow);

std::vector<BasePoint> random_points(int d, std::size_t count, RngHandle h);

/// Walks x, F_1 x, F_2 x, ... keeping phi^{(n)}(x).
class Orbit {
 public:
  Orbit(const Cocycle& c, const TranslationFlow& flow, const BasePoint& x);
  long n() const { return n_; }
  const BasePoint& point() const { return x_; }
  /// phi^{(n)}(x)
  const GroupElement& product() const { return prod_; }
  void step();

 private:
  const Cocycle* c_;
  const TranslationFlow* flow_;
  BasePoint x_;
  GroupElement prod_;
  long n_ = 0;
};

/// Lock-step orbits of many base points. Phases are advanced with the batched
/// phase kernel; SU(2) products use the batched quaternion kernel, other
/// groups fall back to group_mul per node.
class OrbitBatch {
 public:
  OrbitBatch(const Cocycle& c, const TranslationFlow& flow, const std::vector<BasePoint>& starts);
  std::size_t size() const { return count_; }
  long n() const { return n_; }
  BasePoint point(std::size_t i) const;
  GroupElement product(std::size_t i) const;
  void step();

 private:
  const Cocycle* c_;
  const TranslationFlow* flow_;
  std::size_t count_ = 0;
  long n_ = 0;
  std::vector<std::vector<double>> phases_;  // [dim][node]
  bool su2_ = false;
  std::vector<double> a1r_, a1i_, a2r_, a2i_;
  std::vector<double> b1r_, b1i_, b2r_, b2i_;
  std::vector<GroupElement> prods_;
};

}  // namespace liedeg
