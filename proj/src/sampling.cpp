#include "qinvar/sampling.hpp"

#include <numbers>

namespace qinvar {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

BlochVec haar_bloch(Rng& rng) {
  std::normal_distribution<double> n;
  for (;;) {
    const Vec3 v{n(rng), n(rng), n(rng)};
    if (length(v) > 1e-8) return BlochVec::normalized(v);
  }
}

Spinor haar_spinor(Rng& rng) {
  std::normal_distribution<double> n;
  for (;;) {
    const C2Vec v{{n(rng), n(rng)}, {n(rng), n(rng)}};
    if (norm2(v) > 1e-16) return Spinor::make(v);
  }
}

Herm2 random_hermitian(Rng& rng) {
  std::normal_distribution<double> n;
  const Mat2 g{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}};
  return Herm2::make(Complex(0.5) * (g + adjoint(g)));
}

Mat2 haar_unitary(Rng& rng) {
  // e^{i phi} [a, -conj(b); b, conj(a)] with (a, b) a uniform unit spinor.
  const Spinor s = haar_spinor(rng);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  const Complex phase = std::polar(1.0, u(rng));
  const Complex a = s.c0();
  const Complex b = s.c1();
  return phase * Mat2{a, -std::conj(b), b, std::conj(a)};
}

ProbTriple random_triple(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double p = u(rng), q = u(rng), r = u(rng);
    const double lo = kBoundaryMargin, hi = 1.0 - kBoundaryMargin;
    if (p > lo && p < hi && q > lo && q < hi && r > lo && r < hi) return ProbTriple::make(p, q, r);
  }
}

ProbTriple random_feasible_triple(Rng& rng, double min_k) {
  for (;;) {
    const ProbTriple t = random_triple(rng);
    if (invariant_K(t) > min_k) return t;
  }
}

AngleTriple random_coplanar_angles(Rng& rng, double margin) {
  std::uniform_real_distribution<double> u(margin, std::numbers::pi - 2.0 * margin);
  for (;;) {
    const double a = u(rng), b = u(rng);
    if (a + b <= std::numbers::pi - margin) return AngleTriple::make(a, b, a + b);
  }
}

}  // namespace qinvar
