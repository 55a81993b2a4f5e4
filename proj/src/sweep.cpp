#include "qinvar/sweep.hpp"

#include <algorithm>
#include <thread>

#include "qinvar/errors.hpp"
#include "qinvar/json_text.hpp"

namespace qinvar {

double grid_point(int i, int n) { return static_cast<double>(i) / static_cast<double>(n + 1); }

std::vector<SweepRow> sweep(int n, double eps_k, unsigned threads) {
  if (n < 2) throw InvalidArgument("sweep resolution must be at least 2");
  const std::size_t per_slab = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<SweepRow> rows(per_slab * static_cast<std::size_t>(n));

  // One slab per p value; each worker fills disjoint slabs in place.
  auto fill_slab = [&](int i) {
    std::size_t idx = static_cast<std::size_t>(i - 1) * per_slab;
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        const ProbTriple t = ProbTriple::make(grid_point(i, n), grid_point(j, n), grid_point(k, n));
        const ModelClass cls = classify(t, eps_k);
        rows[idx++] = {t.p(), t.q(), t.r(), cls.K, cls.kind, normalized_form(t)};
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  if (threads <= 1) {
    for (int i = 1; i <= n; ++i) fill_slab(i);
    return rows;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = 1 + static_cast<int>(w); i <= n; i += static_cast<int>(threads)) fill_slab(i);
    });
  }
  pool.clear();
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "p,q,r,K,class,normalized_form\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.p) << ',' << format_double(row.q) << ',' << format_double(row.r)
        << ',' << format_double(row.K) << ',' << to_string(row.kind) << ','
        << format_double(row.normalized_form) << '\n';
  }
}

}  // namespace qinvar
