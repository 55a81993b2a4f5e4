#pragma once

// Random generators for property batteries. Every stream is derived from a
// single 64-bit seed so runs are reproducible.

#include <cstdint>
#include <random>

#include "qinvar/bloch.hpp"
#include "qinvar/invariants.hpp"

namespace qinvar {

using Rng = std::mt19937_64;

/// Independent generator for task `stream` under `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Uniform point on S^2 (three normal deviates, normalized).
BlochVec haar_bloch(Rng& rng);

/// Uniform pure state (two complex normal amplitudes, normalized).
Spinor haar_spinor(Rng& rng);

/// Hermitian matrix with standard normal entries, symmetrized.
Herm2 random_hermitian(Rng& rng);

/// Haar-distributed 2x2 unitary.
Mat2 haar_unitary(Rng& rng);

/// Uniform on the open unit cube (inside the boundary margin).
ProbTriple random_triple(Rng& rng);

/// Uniform on the cube conditioned on K > min_k.
ProbTriple random_feasible_triple(Rng& rng, double min_k = 1e-6);

/// Angles with gamma = alpha + beta, each at least `margin` from 0 and with
/// alpha + beta at most pi - margin. These are exactly the coplanar
/// configurations with u_B between u_A and u_C.
AngleTriple random_coplanar_angles(Rng& rng, double margin = 1e-3);

}  // namespace qinvar
