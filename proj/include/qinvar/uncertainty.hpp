#pragma once

// Expectation values, the Schrodinger uncertainty budget, and the checks that
// tie the uncertainty relation to the transition-probability invariant.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qinvar/bloch.hpp"
#include "qinvar/model.hpp"

namespace qinvar {

inline constexpr double kDefaultEpsC = 1e-8;

/// <psi|Z|psi>.
double mean(const Herm2& z, const Spinor& psi);

/// <Z^2> - <Z>^2, evaluated as |(Z - <Z>) psi|^2.
double variance(const Herm2& z, const Spinor& psi);

/// (1/2)<{X,Y}> - <X><Y>.
double covariance_term(const Herm2& x, const Herm2& y, const Spinor& psi);

/// (1/2i)<[X,Y]>. Throws NotHermitian if <[X,Y]> has a real part.
double commutator_term(const Herm2& x, const Herm2& y, const Spinor& psi);

/// Both sides of Var(X)Var(Y) >= cov^2 + comm^2.
struct UncertaintyBudget {
  double var_x = 0.0;
  double var_y = 0.0;
  double cov_term = 0.0;
  double comm_term = 0.0;
  double gap = 0.0;  // var_x var_y - cov^2 - comm^2

  /// Slack of the weaker bound that drops the covariance term.
  double robertson_gap() const { return var_x * var_y - comm_term * comm_term; }
};
UncertaintyBudget budget(const Herm2& x, const Herm2& y, const Spinor& psi);

/// Residuals between full operators X, Y and their spin rescalings u.sigma in
/// one state, for the mean, variance, covariance and commutator identities.
/// Each residual is divided by the natural magnitude of its side:
/// max(1,|z1|,|z2|) for means, its square for variances, and the product of
/// both observables' scales for the mixed terms.
struct RescalingResiduals {
  double mean = 0.0;
  double variance = 0.0;
  double covariance = 0.0;
  double commutator = 0.0;
  double max() const;
};
RescalingResiduals rescaling_check(const Observable& ox, const BlochVec& ux, const Observable& oy,
                                   const BlochVec& uy, const Spinor& psi);

/// Cyclic relabelings (X, Y | Z) = (A, B | C), (B, C | A), (C, A | B).
inline constexpr std::array<std::array<int, 3>, 3> kCyclicPermutations{
    {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};

std::string permutation_label(const QuantumModel& m, int perm);

/// One evaluation of dX dY >= |cov| in an eigenstate of the third observable.
/// All fields are divided by |x1-x2||y1-y2|/4 so they refer to the spin pair.
struct CorrelationEntry {
  int perm = 0;
  int k = 1;  // 1: eigenvalue z1, 2: eigenvalue z2
  double delta_product = 0.0;
  double correlation = 0.0;
  double slack = 0.0;         // delta_product - |correlation|
  double squared_slack = 0.0; // Var Var - cov^2, which should equal 4K
};

struct CorrelationReport {
  std::array<CorrelationEntry, 6> entries{};
  double four_k = 0.0;
  double min_slack = 0.0;
  double max_four_k_residual = 0.0;  // |squared_slack - 4K|
  bool all_hold = false;
  bool all_saturated = false;
};
/// Checks the correlation inequality for every cyclic permutation and both
/// eigenstates of the third observable. `tol` bounds both rounding slack and
/// the saturation band.
CorrelationReport correlation_check(const QuantumModel& m, double tol = 1e-10);

struct CommutatorEvidence {
  // |<[X,Y]>| / scale in psi_k(Z), ordered (perm, k).
  std::array<double, 6> averages{};
  ModelKind evidence = ModelKind::RealQuantum;
};
/// Strictly complex evidence iff every average exceeds eps_c, real evidence
/// iff none does. Throws MixedEvidence otherwise.
CommutatorEvidence commutator_evidence(const QuantumModel& m, double eps_c = kDefaultEpsC);

struct StateViolation {
  std::size_t index = 0;
  int nonzero_pairs = 0;
  // w lies on the line of one of the model vectors, i.e. in two pairwise
  // planes at once.
  bool plane_coincidence = false;
};

struct NoncommutingReport {
  std::array<double, 3> commutator_norms{};  // ||[X,Y]||_F / scale per pair
  bool all_noncommuting = false;
  std::size_t states_checked = 0;
  std::vector<StateViolation> violations;
  std::size_t coincidences = 0;
  /// Noncommuting pairs and no violation outside a plane coincidence.
  bool passed() const;
};
/// Throws PreconditionError when the model vectors are coplanar.
NoncommutingReport noncommuting_check(const QuantumModel& m, std::span<const Spinor> states,
                                    double eps_c = kDefaultEpsC);

}  // namespace qinvar
