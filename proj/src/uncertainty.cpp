#include "qinvar/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "qinvar/errors.hpp"

namespace qinvar {

namespace {

constexpr double kRealnessTol = 1e-13;
constexpr double kCoincidenceTol = 1e-6;

double op_scale(const Herm2& z) { return std::max(1.0, max_abs(z.mat())); }

double value_scale(const Observable& o) {
  return std::max({1.0, std::abs(o.x1()), std::abs(o.x2())});
}

double pair_scale(const QuantumModel& m, int x, int y) {
  return std::abs(m.observables[x].half_diff() * m.observables[y].half_diff());
}

const Spinor& eigenstate(const QuantumModel& m, int obs, int k) {
  return k == 1 ? m.eigenbases[obs].first : m.eigenbases[obs].second;
}

// (Z - <Z>) psi
C2Vec centered(const Herm2& z, const Spinor& psi) {
  const C2Vec& v = psi.amplitudes();
  return z.mat() * v - Complex(mean(z, psi)) * v;
}

}  // namespace

double mean(const Herm2& z, const Spinor& psi) {
  const C2Vec& v = psi.amplitudes();
  const Complex e = inner(v, z.mat() * v);
  if (std::abs(e.imag()) > kRealnessTol * op_scale(z)) {
    throw NotHermitian("expectation value has an imaginary part");
  }
  return e.real();
}

double variance(const Herm2& z, const Spinor& psi) { return norm2(centered(z, psi)); }

double covariance_term(const Herm2& x, const Herm2& y, const Spinor& psi) {
  return inner(centered(x, psi), centered(y, psi)).real();
}

double commutator_term(const Herm2& x, const Herm2& y, const Spinor& psi) {
  const C2Vec& v = psi.amplitudes();
  const C2Vec xv = x.mat() * v;
  const C2Vec yv = y.mat() * v;
  // <[X,Y]> = <Xpsi|Ypsi> - <Ypsi|Xpsi> is purely imaginary.
  const Complex c = inner(xv, yv) - inner(yv, xv);
  if (std::abs(c.real()) > kRealnessTol * op_scale(x) * op_scale(y)) {
    throw NotHermitian("commutator average has a real part");
  }
  return 0.5 * c.imag();
}

UncertaintyBudget budget(const Herm2& x, const Herm2& y, const Spinor& psi) {
  UncertaintyBudget b;
  b.var_x = variance(x, psi);
  b.var_y = variance(y, psi);
  b.cov_term = covariance_term(x, y, psi);
  b.comm_term = commutator_term(x, y, psi);
  b.gap = b.var_x * b.var_y - b.cov_term * b.cov_term - b.comm_term * b.comm_term;
  return b;
}

double RescalingResiduals::max() const {
  return std::max({mean, variance, covariance, commutator});
}

RescalingResiduals rescaling_check(const Observable& ox, const BlochVec& ux, const Observable& oy,
                                   const BlochVec& uy, const Spinor& psi) {
  const Herm2 x = build_operator(ox, ux);
  const Herm2 y = build_operator(oy, uy);
  const Herm2 sx = spin_op(ux);
  const Herm2 sy = spin_op(uy);
  const double scale_x = value_scale(ox);
  const double scale_y = value_scale(oy);
  const double mixed = ox.half_diff() * oy.half_diff();

  RescalingResiduals r;
  r.mean = std::max(
      std::abs(mean(x, psi) - (ox.half_sum() + ox.half_diff() * mean(sx, psi))) / scale_x,
      std::abs(mean(y, psi) - (oy.half_sum() + oy.half_diff() * mean(sy, psi))) / scale_y);
  r.variance = std::max(
      std::abs(variance(x, psi) - ox.half_diff() * ox.half_diff() * variance(sx, psi)) /
          (scale_x * scale_x),
      std::abs(variance(y, psi) - oy.half_diff() * oy.half_diff() * variance(sy, psi)) /
          (scale_y * scale_y));
  r.covariance =
      std::abs(covariance_term(x, y, psi) - mixed * covariance_term(sx, sy, psi)) /
      (scale_x * scale_y);
  r.commutator =
      std::abs(commutator_term(x, y, psi) - mixed * commutator_term(sx, sy, psi)) /
      (scale_x * scale_y);
  return r;
}

std::string permutation_label(const QuantumModel& m, int perm) {
  const auto& p = kCyclicPermutations[perm];
  return m.observables[p[0]].name() + "," + m.observables[p[1]].name() + "|" +
         m.observables[p[2]].name();
}

CorrelationReport correlation_check(const QuantumModel& m, double tol) {
  CorrelationReport rep;
  rep.four_k = 4.0 * invariant_K(m.probs);
  rep.min_slack = INFINITY;
  rep.all_hold = true;
  rep.all_saturated = true;
  int idx = 0;
  for (int perm = 0; perm < 3; ++perm) {
    const auto& [x, y, z] = kCyclicPermutations[perm];
    const double scale = pair_scale(m, x, y);
    for (int k = 1; k <= 2; ++k) {
      const Spinor& psi = eigenstate(m, z, k);
      const double vx = variance(m.operators[x], psi);
      const double vy = variance(m.operators[y], psi);
      const double cov = covariance_term(m.operators[x], m.operators[y], psi);

      CorrelationEntry& e = rep.entries[idx++];
      e.perm = perm;
      e.k = k;
      e.delta_product = std::sqrt(vx * vy) / scale;
      e.correlation = cov / scale;
      e.slack = e.delta_product - std::abs(e.correlation);
      e.squared_slack = (vx * vy - cov * cov) / (scale * scale);

      rep.min_slack = std::min(rep.min_slack, e.slack);
      rep.max_four_k_residual =
          std::max(rep.max_four_k_residual, std::abs(e.squared_slack - rep.four_k));
      rep.all_hold = rep.all_hold && e.slack >= -tol;
      rep.all_saturated = rep.all_saturated && std::abs(e.slack) <= tol;
    }
  }
  return rep;
}

CommutatorEvidence commutator_evidence(const QuantumModel& m, double eps_c) {
  CommutatorEvidence ev;
  int nonzero = 0;
  int idx = 0;
  for (int perm = 0; perm < 3; ++perm) {
    const auto& [x, y, z] = kCyclicPermutations[perm];
    const double scale = pair_scale(m, x, y);
    for (int k = 1; k <= 2; ++k) {
      const double c = commutator_term(m.operators[x], m.operators[y], eigenstate(m, z, k));
      ev.averages[idx] = 2.0 * std::abs(c) / scale;
      if (ev.averages[idx] > eps_c) ++nonzero;
      ++idx;
    }
  }
  if (nonzero == 6) {
    ev.evidence = ModelKind::StrictlyComplexQuantum;
  } else if (nonzero == 0) {
    ev.evidence = ModelKind::RealQuantum;
  } else {
    throw MixedEvidence(std::to_string(nonzero) +
                        " of 6 commutator averages are nonzero; expected all or none");
  }
  return ev;
}

bool NoncommutingReport::passed() const {
  return all_noncommuting && std::all_of(violations.begin(), violations.end(),
                                         [](const StateViolation& v) { return v.plane_coincidence; });
}

NoncommutingReport noncommuting_check(const QuantumModel& m, std::span<const Spinor> states,
                                    double eps_c) {
  if (std::abs(model_volume(m)) <= eps_c) {
    throw PreconditionError("model vectors are coplanar; the model is not strictly complex");
  }
  NoncommutingReport rep;
  rep.all_noncommuting = true;
  for (int perm = 0; perm < 3; ++perm) {
    const auto& [x, y, z] = kCyclicPermutations[perm];
    rep.commutator_norms[perm] =
        frobenius(commutator(m.operators[x].mat(), m.operators[y].mat())) / pair_scale(m, x, y);
    rep.all_noncommuting = rep.all_noncommuting && rep.commutator_norms[perm] > eps_c;
  }

  rep.states_checked = states.size();
  for (std::size_t i = 0; i < states.size(); ++i) {
    int count = 0;
    for (int perm = 0; perm < 3; ++perm) {
      const auto& [x, y, z] = kCyclicPermutations[perm];
      const double c = commutator_term(m.operators[x], m.operators[y], states[i]);
      if (2.0 * std::abs(c) / pair_scale(m, x, y) > eps_c) ++count;
    }
    if (count >= 2) continue;

    const Vec3 w = state_to_bloch(states[i]).vec();
    bool on_line = false;
    for (const BlochVec& u : m.vectors) {
      on_line = on_line || length(cross3(w, u.vec())) <= kCoincidenceTol;
    }
    rep.violations.push_back({i, count, on_line});
    if (on_line) ++rep.coincidences;
  }
  return rep;
}

}  // namespace qinvar
