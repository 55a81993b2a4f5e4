#pragma once

// Transition-probability triples, their angle parameterization, and the
// statistical invariant that decides whether a quantum model exists.
//
// Three two-valued observables A, B, C with symmetric transition matrices
//
//   P(A|B) = [p, 1-p; 1-p, p],  P(B|C) = [q, 1-q; 1-q, q],
//   P(C|A) = [r, 1-r; 1-r, r]
//
// admit a quantum model iff K = 4pqr - (p+q+r-1)^2 >= 0. K = 0 is the real
// (coplanar) case, K > 0 the strictly complex one. Writing p = cos^2(alpha/2)
// etc. gives the equivalent angle forms implemented below.

#include <array>
#include <string_view>

namespace qinvar {

inline constexpr double kBoundaryMargin = 1e-9;
inline constexpr double kDefaultEpsK = 1e-9;

class ProbTriple {
 public:
  /// Throws BoundaryViolation naming the offending probability unless every
  /// value lies strictly inside (margin, 1 - margin).
  static ProbTriple make(double p, double q, double r, double margin = kBoundaryMargin);

  double p() const { return p_; }
  double q() const { return q_; }
  double r() const { return r_; }

 private:
  ProbTriple(double p, double q, double r) : p_(p), q_(q), r_(r) {}
  double p_, q_, r_;
};

using RealMat2 = std::array<std::array<double, 2>, 2>;

/// Reduces full transition matrices P(A|B), P(B|C), P(C|A) to (p, q, r).
/// Each matrix must be symmetric and doubly stochastic within tol.
ProbTriple reduce_transition_matrices(const RealMat2& ab, const RealMat2& bc, const RealMat2& ca,
                                      double tol = 1e-9);

class AngleTriple {
 public:
  /// Throws InvalidArgument unless 0 < alpha, beta, gamma < pi.
  static AngleTriple make(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

 private:
  AngleTriple(double a, double b, double c) : alpha_(a), beta_(b), gamma_(c) {}
  double alpha_, beta_, gamma_;
};

enum class ModelKind { NoQuantumModel, RealQuantum, StrictlyComplexQuantum };

std::string_view to_string(ModelKind kind);
/// Inverse of to_string; throws InvalidArgument on unknown names.
ModelKind model_kind_from_string(std::string_view name);

struct ModelClass {
  ModelKind kind;
  double K;
};

/// alpha = 2 acos(sqrt p), and likewise for beta, gamma.
AngleTriple probs_to_angles(const ProbTriple& t);

/// p = cos^2(alpha/2), and likewise.
ProbTriple angles_to_probs(const AngleTriple& a);

/// K = 4pqr - (p+q+r-1)^2.
double invariant_K(const ProbTriple& t);

/// 1 - cos^2 a - cos^2 b - cos^2 c + 2 cos a cos b cos c; equals 4K.
double invariant_cos(const AngleTriple& a);

/// (p+q+r-1) / (2 sqrt(pqr)); a model exists iff it lies in [-1, 1].
double normalized_form(const ProbTriple& t);

/// Same quotient written with half-angle cosines.
double halfangle_form(const AngleTriple& a);

struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Admissible range of r given p and q:
/// [(sqrt(pq) - sqrt((1-p)(1-q)))^2, (sqrt(pq) + sqrt((1-p)(1-q)))^2].
Interval r_interval(double p, double q);

/// Distances of sqrt(r) from the two real-model branches
/// sqrt(pq) + sqrt((1-p)(1-q)) and |sqrt(pq) - sqrt((1-p)(1-q))|.
struct RealBranchDistance {
  double upper;
  double lower;
  double nearest() const { return upper < lower ? upper : lower; }
};
RealBranchDistance real_branch_distance(const ProbTriple& t);

ModelClass classify(const ProbTriple& t, double eps_k = kDefaultEpsK);

}  // namespace qinvar
