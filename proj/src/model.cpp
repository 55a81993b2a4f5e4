#include "qinvar/model.hpp"

#include <cmath>

#include "qinvar/errors.hpp"

namespace qinvar {

namespace {

// Radicands for the y-component of u_C below this are rounding noise around
// an exactly coplanar configuration.
constexpr double kCoplanarSnap = 1e-12;

double value_scale(const Observable& o) {
  return std::max({1.0, std::abs(o.x1()), std::abs(o.x2())});
}

// Rodrigues rotation taking unit vector `from` onto unit vector `to`.
class Rotation {
 public:
  Rotation(const Vec3& from, const Vec3& to) {
    const Vec3 axis = cross3(from, to);
    sin_ = length(axis);
    cos_ = dot3(from, to);
    if (sin_ > 0.0) axis_ = (1.0 / sin_) * axis;
  }

  Vec3 apply(const Vec3& v) const {
    if (sin_ == 0.0) return v;
    return cos_ * v + sin_ * cross3(axis_, v) + (dot3(axis_, v) * (1.0 - cos_)) * axis_;
  }

 private:
  Vec3 axis_{};
  double sin_ = 0.0;
  double cos_ = 1.0;
};

}  // namespace

Observable Observable::make(std::string name, double x1, double x2) {
  if (!std::isfinite(x1) || !std::isfinite(x2)) {
    throw InvalidArgument("observable " + name + " has non-finite values");
  }
  if (std::abs(x1 - x2) <= 1e-12 * std::max({std::abs(x1), std::abs(x2), 1.0})) {
    throw DegenerateValues("observable " + name + " needs two distinct values");
  }
  return Observable{std::move(name), x1, x2};
}

ObservableTriple spin_observables() {
  return {Observable::spin("A"), Observable::spin("B"), Observable::spin("C")};
}

VectorTriple gram_to_vectors(const AngleTriple& a, double eps_k) {
  // invariant_cos = 4K, so the real-model band |K| <= eps_k becomes
  // |invariant_cos| <= 4 eps_k here.
  const double volume2 = invariant_cos(a);
  if (volume2 < -4.0 * eps_k) {
    throw InfeasibleGram("no unit vectors realize these angles (invariant " +
                         std::to_string(volume2) + " < 0)");
  }
  const double ca = std::cos(a.alpha());
  const double sa = std::sin(a.alpha());
  const double cb = std::cos(a.beta());
  const double cc = std::cos(a.gamma());

  const double x = (cb - ca * cc) / sa;
  const double radicand = 1.0 - x * x - cc * cc;
  const bool coplanar = volume2 <= 4.0 * eps_k || radicand <= kCoplanarSnap;
  const double y = coplanar ? 0.0 : std::sqrt(radicand);

  return {BlochVec::make({0.0, 0.0, 1.0}), BlochVec::normalized({sa, 0.0, ca}),
          BlochVec::normalized({x, y, cc})};
}

Herm2 build_operator(const Observable& obs, const BlochVec& u) {
  const Mat2 s = spin_op(u).mat();
  return Herm2::make(Complex(obs.half_sum()) * identity2() + Complex(obs.half_diff()) * s);
}

Mat2 spin_rescaling(const Observable& obs, const Mat2& op) {
  const double d = obs.x1() - obs.x2();
  return Complex(2.0 / d) * op - Complex((obs.x1() + obs.x2()) / d) * identity2();
}

QuantumModel assemble_model(const ProbTriple& probs, const VectorTriple& vectors,
                            const ObservableTriple& observables) {
  auto op = [&](int i) { return build_operator(observables[i], vectors[i]); };
  auto basis = [&](int i) {
    return Eigenbasis{eigenstate_plus(vectors[i]), eigenstate_minus(vectors[i])};
  };
  return QuantumModel{probs,
                      vectors,
                      observables,
                      {op(0), op(1), op(2)},
                      {basis(0), basis(1), basis(2)}};
}

QuantumModel synthesize(const ProbTriple& t, const ObservableTriple& values, double eps_k) {
  const ModelClass cls = classify(t, eps_k);
  if (cls.kind == ModelKind::NoQuantumModel) {
    throw InfeasibleGram("transition probabilities admit no quantum model (K = " +
                         std::to_string(cls.K) + ")");
  }
  return assemble_model(t, gram_to_vectors(probs_to_angles(t), eps_k), values);
}

ModelResiduals model_residuals(const QuantumModel& m) {
  ModelResiduals res;
  for (int i = 0; i < 3; ++i) {
    const Observable& obs = m.observables[i];
    const Mat2& op = m.operators[i].mat();
    const C2Vec& e1 = m.eigenbases[i].first.amplitudes();
    const C2Vec& e2 = m.eigenbases[i].second.amplitudes();
    const double s = value_scale(obs);

    res.eigen_equation = std::max(
        {res.eigen_equation, max_abs_diff(op * e1, Complex(obs.x1()) * e1) / s,
         max_abs_diff(op * e2, Complex(obs.x2()) * e2) / s});
    res.orthonormality =
        std::max({res.orthonormality, std::abs(norm2(e1) - 1.0), std::abs(norm2(e2) - 1.0),
                  std::abs(inner(e1, e2))});
    res.spin_rescaling = std::max(
        res.spin_rescaling, max_abs_diff(spin_rescaling(obs, op), spin_op(m.vectors[i]).mat()));
  }
  return res;
}

TransitionReport verify_transitions(const QuantumModel& m, const ProbTriple& t, double tol) {
  TransitionReport rep;
  const std::array<double, 3> expected{t.p(), t.q(), t.r()};
  for (int pair = 0; pair < 3; ++pair) {
    const Eigenbasis& lhs = m.eigenbases[pair];
    const Eigenbasis& rhs = m.eigenbases[(pair + 1) % 3];
    const std::array<const Spinor*, 2> a{&lhs.first, &lhs.second};
    const std::array<const Spinor*, 2> b{&rhs.first, &rhs.second};
    RealMat2& ov = rep.overlaps[pair];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        ov[i][j] = std::norm(inner(a[i]->amplitudes(), b[j]->amplitudes()));
        const double reverse = std::norm(inner(b[j]->amplitudes(), a[i]->amplitudes()));
        rep.symmetry_residual = std::max(rep.symmetry_residual, std::abs(ov[i][j] - reverse));
        const double want = i == j ? expected[pair] : 1.0 - expected[pair];
        rep.max_deviation = std::max(rep.max_deviation, std::abs(ov[i][j] - want));
      }
    }
    for (int k = 0; k < 2; ++k) {
      rep.stochastic_residual = std::max({rep.stochastic_residual,
                                          std::abs(ov[k][0] + ov[k][1] - 1.0),
                                          std::abs(ov[0][k] + ov[1][k] - 1.0)});
    }
  }
  rep.passed = rep.max_deviation <= tol;
  return rep;
}

double model_volume(const QuantumModel& m) {
  return triple3(m.vectors[0].vec(), m.vectors[1].vec(), m.vectors[2].vec());
}

std::optional<QuantumModel> real_embedding(const QuantumModel& m, double eps_k) {
  if (std::abs(model_volume(m)) > eps_k) return std::nullopt;

  const Vec3 normal = BlochVec::normalized(cross3(m.vectors[0].vec(), m.vectors[1].vec())).vec();
  // Either orientation of the y axis works; pick the nearer one.
  const Vec3 target = normal.y >= 0.0 ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, -1.0, 0.0};
  const Rotation rot(normal, target);

  auto flatten = [&](const BlochVec& u) {
    Vec3 v = rot.apply(u.vec());
    v.y = 0.0;
    return BlochVec::normalized(v);
  };
  const VectorTriple planar{flatten(m.vectors[0]), flatten(m.vectors[1]), flatten(m.vectors[2])};
  return assemble_model(m.probs, planar, m.observables);
}

}  // namespace qinvar
