#pragma once

// Tabulation of the invariant over an interior grid of the probability cube.

#include <ostream>
#include <vector>

#include "qinvar/invariants.hpp"

namespace qinvar {

struct SweepRow {
  double p, q, r;
  double K;
  ModelKind kind;
  double normalized_form;
};

/// Grid coordinate i/(n+1) for i = 1..n.
double grid_point(int i, int n);

/// n^3 rows ordered p outer, q middle, r inner, all ascending. Rows are
/// computed on up to `threads` workers (0: hardware concurrency) but the order
/// never depends on scheduling. Throws InvalidArgument if n < 2.
std::vector<SweepRow> sweep(int n, double eps_k = kDefaultEpsK, unsigned threads = 0);

/// Header `p,q,r,K,class,normalized_form`, LF line endings.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace qinvar
