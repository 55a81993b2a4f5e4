#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qinvar/errors.hpp"
#include "qinvar/model.hpp"
#include "qinvar/sampling.hpp"

using namespace qinvar;

namespace {

constexpr double kPi = std::numbers::pi;
const double kC8 = std::cos(kPi / 8) * std::cos(kPi / 8);

double vec_diff(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

Vec3 rotate_about_y(const Vec3& v, double t) {
  return {std::cos(t) * v.x + std::sin(t) * v.z, v.y, -std::sin(t) * v.x + std::cos(t) * v.z};
}

Vec3 rotate_about_x(const Vec3& v, double t) {
  return {v.x, std::cos(t) * v.y - std::sin(t) * v.z, std::sin(t) * v.y + std::cos(t) * v.z};
}

Mat2 conj_by(const Mat2& u, const Mat2& m) { return u * m * adjoint(u); }

C2Vec apply(const Mat2& u, const C2Vec& v) { return u * v; }

}  // namespace

TEST_CASE("Observable values") {
  CHECK_THROWS_AS(Observable::make("A", 1.0, 1.0), DegenerateValues);
  CHECK_THROWS_AS(Observable::make("A", 1e6, 1e6 * (1 + 1e-13)), DegenerateValues);
  CHECK_NOTHROW(Observable::make("A", 0.0, 1e-6));
  CHECK_THROWS_AS(Observable::make("A", std::nan(""), 1.0), InvalidArgument);
  const Observable o = Observable::make("X", 3.0, 1.0);
  CHECK(o.half_sum() == 2.0);
  CHECK(o.half_diff() == 1.0);
}

TEST_CASE("gram_to_vectors: orthogonal triple") {
  const VectorTriple v = gram_to_vectors(AngleTriple::make(kPi / 2, kPi / 2, kPi / 2));
  CHECK(vec_diff(v[0].vec(), {0, 0, 1}) <= 1e-15);
  CHECK(vec_diff(v[1].vec(), {1, 0, 0}) <= 1e-15);
  CHECK(vec_diff(v[2].vec(), {0, 1, 0}) <= 1e-15);
}

TEST_CASE("gram_to_vectors: coplanar triple") {
  const VectorTriple v = gram_to_vectors(AngleTriple::make(kPi / 4, kPi / 4, kPi / 2));
  CHECK(std::abs(v[2].y()) <= 1e-10);
  CHECK(std::abs(dot3(v[0].vec(), v[1].vec()) - std::cos(kPi / 4)) <= 1e-15);
  CHECK(std::abs(dot3(v[1].vec(), v[2].vec()) - std::cos(kPi / 4)) <= 1e-15);
  CHECK(std::abs(dot3(v[2].vec(), v[0].vec())) <= 1e-15);
}

TEST_CASE("gram_to_vectors: infeasible angles") {
  const AngleTriple a = probs_to_angles(ProbTriple::make(0.9, 0.9, 0.1));
  CHECK(std::abs(invariant_cos(a) + 1.944) <= 1e-12);
  CHECK_THROWS_AS(gram_to_vectors(a), InfeasibleGram);
}

TEST_CASE("build_operator") {
  const Herm2 s3 = build_operator(Observable::spin("A"), BlochVec::make({0, 0, 1}));
  CHECK(max_abs_diff(s3.mat(), pauli(3).mat()) == 0.0);

  const Herm2 x = build_operator(Observable::make("B", 3.0, 1.0), BlochVec::make({1, 0, 0}));
  CHECK(max_abs_diff(x.mat(), Mat2{2.0, 1.0, 1.0, 2.0}) == 0.0);

  // Eigenvalue x1 belongs to the +1 spin direction.
  const Spinor plus = eigenstate_plus(BlochVec::make({1, 0, 0}));
  CHECK(max_abs_diff(x.mat() * plus.amplitudes(), Complex(3.0) * plus.amplitudes()) <= 1e-15);
}

TEST_CASE("synthesize: orthogonal model") {
  const QuantumModel m = synthesize(ProbTriple::make(0.5, 0.5, 0.5), spin_observables());
  CHECK(max_abs_diff(m.operators[0].mat(), pauli(3).mat()) <= 1e-15);
  CHECK(max_abs_diff(m.operators[1].mat(), pauli(1).mat()) <= 1e-15);
  CHECK(max_abs_diff(m.operators[2].mat(), pauli(2).mat()) <= 1e-15);

  const TransitionReport rep = verify_transitions(m, ProbTriple::make(0.5, 0.5, 0.5), 1e-12);
  CHECK(rep.passed);
  CHECK(rep.max_deviation <= 1e-12);
  for (const RealMat2& ov : rep.overlaps) {
    for (const auto& row : ov) {
      for (double x : row) CHECK(std::abs(x - 0.5) <= 1e-15);
    }
  }

  const ModelResiduals res = model_residuals(m);
  CHECK(res.eigen_equation <= 1e-15);
  CHECK(res.orthonormality <= 1e-15);
  CHECK(res.spin_rescaling <= 1e-15);
}

TEST_CASE("synthesize: saturated and infeasible inputs") {
  const QuantumModel m = synthesize(ProbTriple::make(kC8, kC8, 0.5), spin_observables());
  CHECK(std::abs(model_volume(m)) <= 1e-8);
  CHECK(verify_transitions(m, m.probs, 1e-12).passed);

  CHECK_THROWS_AS(synthesize(ProbTriple::make(0.9, 0.9, 0.1), spin_observables()),
                  InfeasibleGram);
}

TEST_CASE("verify_transitions detects a tilted vector") {
  const ProbTriple t = ProbTriple::make(0.5, 0.5, 0.5);
  const QuantumModel m = synthesize(t, spin_observables());
  const VectorTriple tilted{m.vectors[0], BlochVec::make(rotate_about_y(m.vectors[1].vec(), 1e-3)),
                            m.vectors[2]};
  const QuantumModel bad = assemble_model(t, tilted, m.observables);
  const TransitionReport rep = verify_transitions(bad, t, 1e-6);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_deviation > 1e-4);
  CHECK(rep.max_deviation < 1e-2);
  CHECK(rep.symmetry_residual <= 1e-15);
  CHECK(rep.stochastic_residual <= 1e-15);
}

TEST_CASE("real_embedding") {
  SUBCASE("canonical coplanar model is already real") {
    const QuantumModel m = assemble_model(
        ProbTriple::make(kC8, kC8, 0.5), gram_to_vectors(AngleTriple::make(kPi / 4, kPi / 4, kPi / 2)),
        spin_observables());
    const auto e = real_embedding(m);
    REQUIRE(e.has_value());
    for (int i = 0; i < 3; ++i) {
      CHECK(vec_diff(e->vectors[i].vec(), m.vectors[i].vec()) <= 1e-12);
      CHECK(max_imag(e->operators[i].mat()) == 0.0);
      CHECK(max_imag(e->eigenbases[i].first.amplitudes()) == 0.0);
      CHECK(max_imag(e->eigenbases[i].second.amplitudes()) == 0.0);
    }
  }

  SUBCASE("orthogonal model is not representable") {
    const QuantumModel m = synthesize(ProbTriple::make(0.5, 0.5, 0.5), spin_observables());
    CHECK_FALSE(real_embedding(m).has_value());
  }

  SUBCASE("tilted coplanar model is rotated flat") {
    const ProbTriple t = ProbTriple::make(kC8, kC8, 0.5);
    const QuantumModel flat = synthesize(t, spin_observables());
    VectorTriple v = flat.vectors;
    for (BlochVec& u : v) u = BlochVec::make(rotate_about_y(rotate_about_x(u.vec(), 0.7), -1.1));
    const QuantumModel m = assemble_model(t, v, spin_observables());
    REQUIRE(max_imag(m.operators[1].mat()) > 0.1);

    const auto e = real_embedding(m);
    REQUIRE(e.has_value());
    for (int i = 0; i < 3; ++i) CHECK(max_imag(e->operators[i].mat()) <= 1e-15);
    CHECK(verify_transitions(*e, t, 1e-12).passed);
  }
}

TEST_CASE("property: synthesis round trip") {
  Rng rng = make_stream(11, 0);
  for (int i = 0; i < 10000; ++i) {
    const ProbTriple t = random_feasible_triple(rng);
    const QuantumModel m = synthesize(t, spin_observables());
    const AngleTriple a = probs_to_angles(t);

    const TransitionReport rep = verify_transitions(m, t, 1e-10);
    REQUIRE(rep.passed);

    const double gram = std::max({std::abs(dot3(m.vectors[0].vec(), m.vectors[1].vec()) - std::cos(a.alpha())),
                                  std::abs(dot3(m.vectors[1].vec(), m.vectors[2].vec()) - std::cos(a.beta())),
                                  std::abs(dot3(m.vectors[2].vec(), m.vectors[0].vec()) - std::cos(a.gamma()))});
    REQUIRE(gram <= 1e-10);
    const double vol = model_volume(m);
    REQUIRE(std::abs(vol * vol - invariant_cos(a)) <= 1e-10);
    REQUIRE(m.vectors[2].y() >= 0.0);
  }
}

TEST_CASE("property: observable values do not change transitions") {
  Rng rng = make_stream(11, 1);
  std::uniform_real_distribution<double> scale(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const ProbTriple t = random_feasible_triple(rng);
    const QuantumModel base = synthesize(t, spin_observables());
    ObservableTriple values = spin_observables();
    for (int k = 0; k < 3; ++k) {
      double s = scale(rng);
      if (std::abs(s) < 0.1) s = 1.0;
      const double c = scale(rng);
      values[k] = Observable::make(values[k].name(), s + c, -s + c);
    }
    const QuantumModel m = synthesize(t, values);
    const TransitionReport a = verify_transitions(base, t, 1e-10);
    const TransitionReport b = verify_transitions(m, t, 1e-10);
    REQUIRE(a.passed == b.passed);
    REQUIRE(a.max_deviation == b.max_deviation);
    REQUIRE(model_residuals(m).eigen_equation <= 1e-12);
  }
}

TEST_CASE("property: a common unitary leaves overlaps unchanged") {
  Rng rng = make_stream(11, 2);
  for (int i = 0; i < 1000; ++i) {
    const ProbTriple t = random_feasible_triple(rng);
    const QuantumModel m = synthesize(t, spin_observables());
    const Mat2 u = haar_unitary(rng);
    const TransitionReport before = verify_transitions(m, t, 1e-10);
    for (int pair = 0; pair < 3; ++pair) {
      const Eigenbasis& x = m.eigenbases[pair];
      const Eigenbasis& y = m.eigenbases[(pair + 1) % 3];
      const C2Vec xs[2] = {apply(u, x.first.amplitudes()), apply(u, x.second.amplitudes())};
      const C2Vec ys[2] = {apply(u, y.first.amplitudes()), apply(u, y.second.amplitudes())};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          REQUIRE(std::abs(std::norm(inner(xs[a], ys[b])) - before.overlaps[pair][a][b]) <= 1e-12);
        }
      }
      // The rotated operator still has the rotated eigenvector.
      const Mat2 op = conj_by(u, m.operators[pair].mat());
      REQUIRE(max_abs_diff(op * xs[0], xs[0]) <= 1e-12);
    }
  }
}
