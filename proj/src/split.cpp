#include "echelon/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "echelon/errors.hpp"
#include "echelon/rng.hpp"

namespace echelon::model {

Split group_shuffle_split(const std::vector<std::string>& groups,
                          const SplitFractions& fractions, std::uint64_t seed) {
  if (groups.empty()) throw ValidationError("split: no instances");
  const double f[3] = {fractions.train, fractions.val, fractions.test};
  for (double v : f)
    if (v < 0.0) throw ValidationError("split: negative fraction");
  if (std::fabs(f[0] + f[1] + f[2] - 1.0) > 1e-9)
    throw ValidationError("split: fractions must sum to 1");

  std::map<std::string, long> group_sizes;
  for (const auto& g : groups) ++group_sizes[g];
  if (group_sizes.size() < 3)
    throw ValidationError("split: need at least 3 distinct groups, have " +
                          std::to_string(group_sizes.size()));

  // Deterministic base order (sorted), then a seeded shuffle on top.
  std::vector<std::string> order;
  order.reserve(group_sizes.size());
  for (const auto& [g, n] : group_sizes) order.push_back(g);
  Rng rng(seed);
  rng.shuffle(order);

  const double total = static_cast<double>(groups.size());
  double assigned[3] = {0.0, 0.0, 0.0};
  std::map<std::string, Part> part_of_group;
  for (const auto& g : order) {
    // Largest deficit against the fractional target wins the next group.
    int best = 0;
    double best_deficit = f[0] * total - assigned[0];
    for (int p = 1; p < 3; ++p) {
      const double deficit = f[p] * total - assigned[p];
      if (deficit > best_deficit) {
        best = p;
        best_deficit = deficit;
      }
    }
    part_of_group[g] = static_cast<Part>(best);
    assigned[best] += static_cast<double>(group_sizes[g]);
  }

  Split s;
  s.part_of.reserve(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Part p = part_of_group[groups[i]];
    s.part_of.push_back(p);
    switch (p) {
      case Part::Train: s.train.push_back(i); break;
      case Part::Val: s.val.push_back(i); break;
      case Part::Test: s.test.push_back(i); break;
    }
  }
  return s;
}

}  // namespace echelon::model
