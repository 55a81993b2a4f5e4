#include "qinvar/invariants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qinvar/errors.hpp"

namespace qinvar {

namespace {

void check_probability(const char* name, double x, double margin) {
  if (!(x > margin && x < 1.0 - margin)) {
    throw BoundaryViolation(std::string("probability ") + name + " = " + std::to_string(x) +
                            " must lie strictly between 0 and 1 (margin " +
                            std::to_string(margin) + ")");
  }
}

double reduce_one(const char* name, const RealMat2& m, double tol) {
  const bool stochastic = std::abs(m[0][0] + m[0][1] - 1.0) <= tol &&
                          std::abs(m[1][0] + m[1][1] - 1.0) <= tol &&
                          std::abs(m[0][0] + m[1][0] - 1.0) <= tol &&
                          std::abs(m[0][1] + m[1][1] - 1.0) <= tol;
  if (!stochastic) {
    throw InvalidArgument(std::string("transition matrix ") + name + " is not doubly stochastic");
  }
  if (std::abs(m[0][1] - m[1][0]) > tol || std::abs(m[0][0] - m[1][1]) > tol) {
    throw InvalidArgument(std::string("transition matrix ") + name + " is not symmetric");
  }
  return 0.5 * (m[0][0] + m[1][1]);
}

}  // namespace

ProbTriple ProbTriple::make(double p, double q, double r, double margin) {
  check_probability("p", p, margin);
  check_probability("q", q, margin);
  check_probability("r", r, margin);
  return ProbTriple{p, q, r};
}

ProbTriple reduce_transition_matrices(const RealMat2& ab, const RealMat2& bc, const RealMat2& ca,
                                      double tol) {
  return ProbTriple::make(reduce_one("P(A|B)", ab, tol), reduce_one("P(B|C)", bc, tol),
                          reduce_one("P(C|A)", ca, tol));
}

AngleTriple AngleTriple::make(double alpha, double beta, double gamma) {
  for (const double a : {alpha, beta, gamma}) {
    if (!(a > 0.0 && a < std::numbers::pi)) {
      throw InvalidArgument("angle " + std::to_string(a) + " must lie strictly between 0 and pi");
    }
  }
  return AngleTriple{alpha, beta, gamma};
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::NoQuantumModel:
      return "NoQuantumModel";
    case ModelKind::RealQuantum:
      return "RealQuantum";
    case ModelKind::StrictlyComplexQuantum:
      return "StrictlyComplexQuantum";
  }
  return "?";
}

ModelKind model_kind_from_string(std::string_view name) {
  for (const ModelKind k :
       {ModelKind::NoQuantumModel, ModelKind::RealQuantum, ModelKind::StrictlyComplexQuantum}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidArgument("unknown model class '" + std::string(name) + "'");
}

AngleTriple probs_to_angles(const ProbTriple& t) {
  return AngleTriple::make(2.0 * std::acos(std::sqrt(t.p())), 2.0 * std::acos(std::sqrt(t.q())),
                           2.0 * std::acos(std::sqrt(t.r())));
}

ProbTriple angles_to_probs(const AngleTriple& a) {
  auto half_cos2 = [](double x) {
    const double c = std::cos(0.5 * x);
    return c * c;
  };
  return ProbTriple::make(half_cos2(a.alpha()), half_cos2(a.beta()), half_cos2(a.gamma()));
}

double invariant_K(const ProbTriple& t) {
  const double s = t.p() + t.q() + t.r() - 1.0;
  return 4.0 * t.p() * t.q() * t.r() - s * s;
}

double invariant_cos(const AngleTriple& a) {
  const double ca = std::cos(a.alpha());
  const double cb = std::cos(a.beta());
  const double cc = std::cos(a.gamma());
  return 1.0 - ca * ca - cb * cb - cc * cc + 2.0 * ca * cb * cc;
}

double normalized_form(const ProbTriple& t) {
  return (t.p() + t.q() + t.r() - 1.0) / (2.0 * std::sqrt(t.p() * t.q() * t.r()));
}

double halfangle_form(const AngleTriple& a) {
  const double ca = std::cos(0.5 * a.alpha());
  const double cb = std::cos(0.5 * a.beta());
  const double cc = std::cos(0.5 * a.gamma());
  return (ca * ca + cb * cb + cc * cc - 1.0) / (2.0 * ca * cb * cc);
}

Interval r_interval(double p, double q) {
  const double same = std::sqrt(p * q);
  const double flip = std::sqrt((1.0 - p) * (1.0 - q));
  const double lo = same - flip;
  const double hi = same + flip;
  return {lo * lo, hi * hi};
}

RealBranchDistance real_branch_distance(const ProbTriple& t) {
  const double same = std::sqrt(t.p() * t.q());
  const double flip = std::sqrt((1.0 - t.p()) * (1.0 - t.q()));
  const double root_r = std::sqrt(t.r());
  return {std::abs(root_r - (same + flip)), std::abs(root_r - std::abs(same - flip))};
}

ModelClass classify(const ProbTriple& t, double eps_k) {
  const double k = invariant_K(t);
  if (k < -eps_k) return {ModelKind::NoQuantumModel, k};
  if (k > eps_k) return {ModelKind::StrictlyComplexQuantum, k};
  return {ModelKind::RealQuantum, k};
}

}  // namespace qinvar
