#include "qinvar/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qinvar/bloch.hpp"
#include "qinvar/model.hpp"
#include "qinvar/sampling.hpp"
#include "qinvar/uncertainty.hpp"

namespace qinvar {

namespace {

struct Battery {
  const char* name;
  double tolerance;
  std::function<double(Rng&)> sample;  // residual of one random case
  std::size_t samples;
};

C2Vec gaussian_c2(Rng& rng) {
  std::normal_distribution<double> n;
  return {{n(rng), n(rng)}, {n(rng), n(rng)}};
}

Vec3 gaussian_vec3(Rng& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng)};
}

Mat2 gaussian_mat2(Rng& rng) {
  std::normal_distribution<double> n;
  return {{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}};
}

double bool_residual(bool ok) { return ok ? 0.0 : 1.0; }

Observable random_observable(Rng& rng, const char* name) {
  std::uniform_real_distribution<double> v(-1e3, 1e3);
  for (;;) {
    const double a = v(rng), b = v(rng);
    if (std::abs(a - b) >= 1.0) return Observable::make(name, a, b);
  }
}

ObservableTriple random_observables(Rng& rng) {
  return {random_observable(rng, "A"), random_observable(rng, "B"), random_observable(rng, "C")};
}

AngleTriple random_angles(Rng& rng) {
  std::uniform_real_distribution<double> u(1e-3, std::numbers::pi - 1e-3);
  return AngleTriple::make(u(rng), u(rng), u(rng));
}

// Independent re-derivation of the sign law, variance, commutator and
// anticommutator averages for spin operators in psi_k(w).
double eigenstate_formula_residual(Rng& rng) {
  const BlochVec u = haar_bloch(rng), v = haar_bloch(rng), w = haar_bloch(rng);
  const Herm2 su = spin_op(u), sv = spin_op(v);
  const double uw = dot3(u.vec(), w.vec());
  const double uv = dot3(u.vec(), v.vec());
  const double vol = triple3(u.vec(), v.vec(), w.vec());
  double worst = 0.0;
  for (int k = 1; k <= 2; ++k) {
    const Spinor psi = k == 1 ? eigenstate_plus(w) : eigenstate_minus(w);
    const double sign = k == 1 ? 1.0 : -1.0;
    const double anti = 0.5 * inner(psi.amplitudes(), anticommutator(su.mat(), sv.mat()) *
                                                          psi.amplitudes()).real();
    worst = std::max({worst, std::abs(mean(su, psi) - sign * uw),
                      std::abs(variance(su, psi) - (1.0 - uw * uw)),
                      std::abs(commutator_term(su, sv, psi) - sign * vol),
                      std::abs(anti - uv)});
  }
  return worst;
}

std::vector<Battery> batteries(const SelftestOptions& o) {
  const std::size_t n = std::max<std::size_t>(o.count, 1);
  const std::size_t n_small = std::max<std::size_t>(n / 10, 1);
  const double eps_k = o.eps_k;
  std::vector<Battery> b;

  // linalg2
  b.push_back({"cauchy_schwarz", 1e-14,
               [](Rng& rng) {
                 const C2Vec a = gaussian_c2(rng), c = gaussian_c2(rng);
                 const double bound = norm2(a) * norm2(c);
                 return std::max(0.0, std::norm(inner(a, c)) - bound) / bound;
               },
               n});
  b.push_back({"triple_product_alternating", 1e-14,
               [](Rng& rng) {
                 const Vec3 u = gaussian_vec3(rng), v = gaussian_vec3(rng), w = gaussian_vec3(rng);
                 const double t = triple3(u, v, w);
                 return std::max({std::abs(t + triple3(v, u, w)), std::abs(t + triple3(u, w, v)),
                                  std::abs(t + triple3(w, v, u))});
               },
               n});
  b.push_back({"adjoint_involution", 1e-15,
               [](Rng& rng) {
                 const Mat2 m = gaussian_mat2(rng);
                 return max_abs_diff(adjoint(adjoint(m)), m);
               },
               n});

  // bloch
  b.push_back({"bloch_round_trip", 1e-10,
               [](Rng& rng) {
                 const BlochVec w = haar_bloch(rng);
                 return max_abs_diff(state_to_bloch(eigenstate_plus(w)).vec(), w.vec());
               },
               n});
  b.push_back({"spin_square_identity", 1e-12,
               [](Rng& rng) {
                 const Mat2 s = spin_op(haar_bloch(rng)).mat();
                 return max_abs_diff(s * s, identity2());
               },
               n});
  b.push_back({"spin_commutator_identity", 1e-12,
               [](Rng& rng) {
                 const BlochVec u = haar_bloch(rng), v = haar_bloch(rng);
                 const Mat2 lhs = Complex(0.0, -0.5) * commutator(spin_op(u).mat(), spin_op(v).mat());
                 return max_abs_diff(lhs, sigma_dot(cross3(u.vec(), v.vec())));
               },
               n});
  b.push_back({"spin_anticommutator_identity", 1e-12,
               [](Rng& rng) {
                 const BlochVec u = haar_bloch(rng), v = haar_bloch(rng);
                 const Mat2 lhs = anticommutator(spin_op(u).mat(), spin_op(v).mat());
                 return max_abs_diff(lhs, Complex(2.0 * dot3(u.vec(), v.vec())) * identity2());
               },
               n});
  b.push_back({"eigenstate_equations", 1e-10,
               [](Rng& rng) {
                 const BlochVec w = haar_bloch(rng);
                 const Mat2 s = spin_op(w).mat();
                 const C2Vec plus = eigenstate_plus(w).amplitudes();
                 const C2Vec minus = eigenstate_minus(w).amplitudes();
                 return std::max({max_abs_diff(s * plus, plus),
                                  max_abs_diff(s * minus, Complex(-1.0) * minus),
                                  std::abs(inner(plus, minus))});
               },
               n});
  b.push_back({"antipodal_representative", 1e-12,
               [](Rng& rng) {
                 const BlochVec w = haar_bloch(rng);
                 return bool_residual(equal_up_to_phase(eigenstate_minus(-w).amplitudes(),
                                                        eigenstate_plus(w).amplitudes(), 1e-12));
               },
               n});

  // invariants
  b.push_back({"cos_form_equals_4K", 1e-12,
               [](Rng& rng) {
                 const ProbTriple t = random_triple(rng);
                 return std::abs(invariant_cos(probs_to_angles(t)) - 4.0 * invariant_K(t));
               },
               n});
  b.push_back({"equivalent_forms_agree", 0.0,
               [](Rng& rng) {
                 const ProbTriple t = random_triple(rng);
                 const double k = invariant_K(t);
                 if (std::abs(k) <= 1e-6) return 0.0;
                 const bool by_k = k >= 0.0;
                 const bool by_norm = std::abs(normalized_form(t)) <= 1.0;
                 const bool by_half = std::abs(halfangle_form(probs_to_angles(t))) <= 1.0;
                 const bool by_interval = r_interval(t.p(), t.q()).contains(t.r());
                 return bool_residual(by_k == by_norm && by_k == by_half && by_k == by_interval);
               },
               n});
  b.push_back({"halfangle_matches_normalized", 1e-12,
               [](Rng& rng) {
                 const AngleTriple a = random_angles(rng);
                 const double h = halfangle_form(a);
                 return std::abs(h - normalized_form(angles_to_probs(a))) / std::max(1.0, std::abs(h));
               },
               n});
  b.push_back({"normalized_form_on_boundary", 1e-10,
               [](Rng& rng) {
                 const ProbTriple t = angles_to_probs(random_coplanar_angles(rng));
                 return std::abs(std::abs(normalized_form(t)) - 1.0);
               },
               n});
  b.push_back({"real_branch_on_boundary", 1e-9,
               [](Rng& rng) {
                 return real_branch_distance(angles_to_probs(random_coplanar_angles(rng))).nearest();
               },
               n});
  b.push_back({"angle_round_trip", 1e-12,
               [](Rng& rng) {
                 const AngleTriple a = random_angles(rng);
                 const AngleTriple back = probs_to_angles(angles_to_probs(a));
                 return std::max({std::abs(back.alpha() - a.alpha()), std::abs(back.beta() - a.beta()),
                                  std::abs(back.gamma() - a.gamma())});
               },
               n});

  // model
  b.push_back({"synthesis_round_trip", 1e-10,
               [eps_k](Rng& rng) {
                 const ProbTriple t = random_feasible_triple(rng);
                 const QuantumModel m = synthesize(t, random_observables(rng), eps_k);
                 return verify_transitions(m, t, 1e-10).max_deviation;
               },
               n});
  b.push_back({"gram_fidelity", 1e-10,
               [eps_k](Rng& rng) {
                 const AngleTriple a = probs_to_angles(random_feasible_triple(rng));
                 const VectorTriple v = gram_to_vectors(a, eps_k);
                 return std::max({std::abs(dot3(v[0].vec(), v[1].vec()) - std::cos(a.alpha())),
                                  std::abs(dot3(v[1].vec(), v[2].vec()) - std::cos(a.beta())),
                                  std::abs(dot3(v[2].vec(), v[0].vec()) - std::cos(a.gamma()))});
               },
               n});
  b.push_back({"volume_law", 1e-10,
               [eps_k](Rng& rng) {
                 const AngleTriple a = probs_to_angles(random_feasible_triple(rng));
                 const VectorTriple v = gram_to_vectors(a, eps_k);
                 const double vol = triple3(v[0].vec(), v[1].vec(), v[2].vec());
                 return std::abs(vol * vol - invariant_cos(a));
               },
               n});
  auto model_residual = [eps_k](double ModelResiduals::*field) {
    return [eps_k, field](Rng& rng) {
      const ProbTriple t = random_feasible_triple(rng);
      return model_residuals(synthesize(t, random_observables(rng), eps_k)).*field;
    };
  };
  b.push_back({"model_eigen_equations", 1e-10, model_residual(&ModelResiduals::eigen_equation), n});
  b.push_back({"model_orthonormal_bases", 1e-12, model_residual(&ModelResiduals::orthonormality), n});
  b.push_back({"model_spin_rescaling", 1e-10, model_residual(&ModelResiduals::spin_rescaling), n});
  b.push_back({"value_rescaling_invariance", 0.0,
               [eps_k](Rng& rng) {
                 const ProbTriple t = random_feasible_triple(rng);
                 const ObservableTriple base = random_observables(rng);
                 std::uniform_real_distribution<double> s(0.1, 10.0), c(-100.0, 100.0);
                 const double scale = (rng() & 1u) ? s(rng) : -s(rng);
                 const double shift = c(rng);
                 ObservableTriple moved = base;
                 for (auto& obs : moved) {
                   obs = Observable::make(obs.name(), scale * obs.x1() + shift, scale * obs.x2() + shift);
                 }
                 const TransitionReport r1 = verify_transitions(synthesize(t, base, eps_k), t, 1e-10);
                 const TransitionReport r2 = verify_transitions(synthesize(t, moved, eps_k), t, 1e-10);
                 return bool_residual(r1.passed == r2.passed && r1.max_deviation == r2.max_deviation &&
                                      r1.overlaps == r2.overlaps);
               },
               n_small});
  b.push_back({"unitary_freedom", 1e-12,
               [eps_k](Rng& rng) {
                 const ProbTriple t = random_feasible_triple(rng);
                 const QuantumModel m = synthesize(t, spin_observables(), eps_k);
                 const Mat2 u = haar_unitary(rng);
                 QuantumModel rotated = m;
                 for (auto& eb : rotated.eigenbases) {
                   eb = {Spinor::make(u * eb.first.amplitudes()), Spinor::make(u * eb.second.amplitudes())};
                 }
                 const TransitionReport a = verify_transitions(m, t, 1.0);
                 const TransitionReport c = verify_transitions(rotated, t, 1.0);
                 double worst = 0.0;
                 for (int p = 0; p < 3; ++p)
                   for (int i = 0; i < 2; ++i)
                     for (int j = 0; j < 2; ++j)
                       worst = std::max(worst, std::abs(a.overlaps[p][i][j] - c.overlaps[p][i][j]));
                 return worst;
               },
               n_small});
  auto coplanar_model = [eps_k](Rng& rng) {
    return synthesize(angles_to_probs(random_coplanar_angles(rng)), spin_observables(), eps_k);
  };
  b.push_back({"coplanar_invariant_vanishes", 1e-10,
               [](Rng& rng) {
                 return std::max(0.0, invariant_K(angles_to_probs(random_coplanar_angles(rng))));
               },
               n_small});
  b.push_back({"coplanar_third_vector_in_plane", 1e-8,
               [coplanar_model](Rng& rng) { return std::abs(coplanar_model(rng).vectors[2].y()); },
               n_small});
  b.push_back({"coplanar_commutator_averages_vanish", 1e-8,
               [coplanar_model](Rng& rng) {
                 const auto ev = commutator_evidence(coplanar_model(rng));
                 return *std::max_element(ev.averages.begin(), ev.averages.end());
               },
               n_small});
  b.push_back({"coplanar_correlation_saturated", 1e-10,
               [coplanar_model](Rng& rng) {
                 const auto th = correlation_check(coplanar_model(rng));
                 double worst = 0.0;
                 for (const auto& e : th.entries) worst = std::max(worst, std::abs(e.slack));
                 return worst;
               },
               n_small});
  b.push_back({"coplanar_real_embedding", 1e-10,
               [coplanar_model, eps_k](Rng& rng) {
                 const auto real = real_embedding(coplanar_model(rng), eps_k);
                 if (!real) return 1.0;
                 double imag = 0.0;
                 for (int i = 0; i < 3; ++i) {
                   const Eigenbasis& eb = real->eigenbases[i];
                   imag = std::max({imag, max_imag(real->operators[i].mat()), std::abs(eb.first.c0().imag()),
                                    std::abs(eb.first.c1().imag()), std::abs(eb.second.c0().imag()),
                                    std::abs(eb.second.c1().imag())});
                 }
                 return imag;
               },
               n_small});

  // uncertainty
  b.push_back({"saturated_uncertainty", 1e-10,
               [](Rng& rng) {
                 const Herm2 x = random_hermitian(rng), y = random_hermitian(rng);
                 const UncertaintyBudget u = budget(x, y, haar_spinor(rng));
                 return std::abs(u.gap) / (1.0 + u.var_x * u.var_y);
               },
               n});
  b.push_back({"volume_form_of_gap", 1e-12,
               [](Rng& rng) {
                 const Vec3 u = haar_bloch(rng).vec(), v = haar_bloch(rng).vec(), w = haar_bloch(rng).vec();
                 const double uw = dot3(u, w), vw = dot3(v, w), uv = dot3(u, v);
                 const double lhs = 1.0 - uw * uw - vw * vw - uv * uv + 2.0 * uv * uw * vw;
                 const double vol = triple3(u, v, w);
                 return std::abs(lhs - vol * vol);
               },
               n});
  b.push_back({"spin_expectations_in_eigenstates", 1e-12, eigenstate_formula_residual, n});
  b.push_back({"anticommutator_state_independence", 1e-12,
               [](Rng& rng) {
                 const BlochVec u = haar_bloch(rng), v = haar_bloch(rng);
                 const Herm2 su = spin_op(u), sv = spin_op(v);
                 const double uv = dot3(u.vec(), v.vec());
                 double worst = 0.0;
                 for (int s = 0; s < 100; ++s) {
                   const Spinor psi = haar_spinor(rng);
                   const double anti = covariance_term(su, sv, psi) + mean(su, psi) * mean(sv, psi);
                   worst = std::max(worst, std::abs(anti - uv));
                 }
                 return worst;
               },
               std::max<std::size_t>(n / 100, 1)});
  b.push_back({"value_rescaling_identities", 1e-10,
               [](Rng& rng) {
                 return rescaling_check(random_observable(rng, "X"), haar_bloch(rng),
                                        random_observable(rng, "Y"), haar_bloch(rng), haar_spinor(rng))
                     .max();
               },
               n});
  b.push_back({"correlation_inequality_chain", 1e-10,
               [eps_k](Rng& rng) {
                 const ProbTriple t = random_feasible_triple(rng);
                 const CorrelationReport r = correlation_check(synthesize(t, random_observables(rng), eps_k));
                 const bool sign_ok = (r.min_slack > 0.0) == (r.four_k > 0.0);
                 return std::max(r.max_four_k_residual, bool_residual(r.all_hold && sign_ok));
               },
               n_small});
  b.push_back({"commutator_evidence_matches_class", 0.0,
               [eps_k](Rng& rng) {
                 const ProbTriple t = random_feasible_triple(rng);
                 const ModelKind kind = classify(t, eps_k).kind;
                 return bool_residual(commutator_evidence(synthesize(t, spin_observables(), eps_k)).evidence ==
                                      kind);
               },
               n_small});
  b.push_back({"noncommuting_pairs_in_complex_models", 0.0,
               [eps_k](Rng& rng) {
                 const ProbTriple t = random_feasible_triple(rng);
                 const QuantumModel m = synthesize(t, random_observables(rng), eps_k);
                 std::vector<Spinor> states;
                 for (int s = 0; s < 100; ++s) states.push_back(haar_spinor(rng));
                 return bool_residual(noncommuting_check(m, states).passed());
               },
               std::max<std::size_t>(n / 100, 1)});
  return b;
}

}  // namespace

std::vector<IdentityResult> run_selftest(const SelftestOptions& opts) {
  std::vector<IdentityResult> out;
  std::uint64_t stream = 0;
  for (const Battery& bat : batteries(opts)) {
    Rng rng = make_stream(opts.seed, stream++);
    double worst = 0.0;
    for (std::size_t i = 0; i < bat.samples; ++i) {
      const double r = bat.sample(rng);
      // NaN counts as a breach.
      worst = std::isnan(r) ? INFINITY : std::max(worst, r);
    }
    out.push_back({bat.name, worst, bat.tolerance, bat.samples});
  }
  return out;
}

}  // namespace qinvar
