#pragma once

// Constructive synthesis of a quantum model for three two-valued observables.
//
// The rotation gauge is fixed by a canonical placement: u_A on the north
// pole, u_B in the x-z plane with positive x, u_C on the y >= 0 side.

#include <array>
#include <optional>
#include <string>

#include "qinvar/bloch.hpp"
#include "qinvar/invariants.hpp"

namespace qinvar {

/// A two-valued observable. x1 is attached to the +1 spin eigenvector, x2 to
/// the -1 one.
class Observable {
 public:
  /// Throws DegenerateValues if |x1 - x2| <= 1e-12 * max(|x1|, |x2|, 1).
  static Observable make(std::string name, double x1, double x2);

  /// The spin observable with values (1, -1).
  static Observable spin(std::string name) { return make(std::move(name), 1.0, -1.0); }

  const std::string& name() const { return name_; }
  double x1() const { return x1_; }
  double x2() const { return x2_; }
  double half_sum() const { return 0.5 * (x1_ + x2_); }
  double half_diff() const { return 0.5 * (x1_ - x2_); }

 private:
  Observable(std::string name, double x1, double x2) : name_(std::move(name)), x1_(x1), x2_(x2) {}
  std::string name_;
  double x1_, x2_;
};

struct Eigenbasis {
  Spinor first;   // eigenvalue x1
  Spinor second;  // eigenvalue x2
};

using VectorTriple = std::array<BlochVec, 3>;
using ObservableTriple = std::array<Observable, 3>;

/// Index order is always A, B, C.
struct QuantumModel {
  ProbTriple probs;
  VectorTriple vectors;
  ObservableTriple observables;
  std::array<Herm2, 3> operators;
  std::array<Eigenbasis, 3> eigenbases;
};

/// Observables named A, B, C with values (1, -1).
ObservableTriple spin_observables();

/// Canonical unit vectors with u_A.u_B = cos alpha, u_B.u_C = cos beta and
/// u_C.u_A = cos gamma. Inside the real-model band (|invariant_cos| <= 4 eps_k,
/// i.e. |K| <= eps_k) u_C is placed exactly in the x-z plane. Throws
/// InfeasibleGram below the band.
VectorTriple gram_to_vectors(const AngleTriple& a, double eps_k = kDefaultEpsK);

/// ((x1+x2)/2) 1 + ((x1-x2)/2) u.sigma
Herm2 build_operator(const Observable& obs, const BlochVec& u);

/// (2/(x1-x2)) X - ((x1+x2)/(x1-x2)) 1, which is u.sigma when X was built
/// from u.
Mat2 spin_rescaling(const Observable& obs, const Mat2& op);

/// Builds operators and eigenbases for given vectors and values.
QuantumModel assemble_model(const ProbTriple& probs, const VectorTriple& vectors,
                            const ObservableTriple& observables);

/// probs -> angles -> vectors -> operators and eigenbases.
QuantumModel synthesize(const ProbTriple& t, const ObservableTriple& values,
                        double eps_k = kDefaultEpsK);

/// Worst residuals of the structural model invariants, each relative to the
/// observable's value scale max(1, |x1|, |x2|) where values enter.
struct ModelResiduals {
  double eigen_equation = 0.0;
  double orthonormality = 0.0;
  double spin_rescaling = 0.0;
};
ModelResiduals model_residuals(const QuantumModel& m);

/// Squared overlaps |<psi_i(u_X)|psi_j(u_Y)>|^2 for (A,B), (B,C), (C,A).
struct TransitionReport {
  std::array<RealMat2, 3> overlaps{};
  double max_deviation = 0.0;
  // | |<x|y>|^2 - |<y|x>|^2 | over all pairs.
  double symmetry_residual = 0.0;
  // Row and column sums of every overlap matrix versus 1.
  double stochastic_residual = 0.0;
  bool passed = false;
};
TransitionReport verify_transitions(const QuantumModel& m, const ProbTriple& t, double tol);

/// Rotates a coplanar model into the x-z plane so every matrix and
/// eigenvector is real. Returns nullopt when |(u_A x u_B).u_C| > eps_k.
std::optional<QuantumModel> real_embedding(const QuantumModel& m, double eps_k = kDefaultEpsK);

/// Signed volume (u_A x u_B) . u_C of the model's vectors.
double model_volume(const QuantumModel& m);

}  // namespace qinvar
