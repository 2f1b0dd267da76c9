#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace echelon::model {

// Grouped three-way split: every instance of a group lands in the same part,
// so no speaker leaks across train/validation/test.
struct SplitFractions {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

enum class Part { Train = 0, Val = 1, Test = 2 };

struct Split {
  std::vector<std::size_t> train, val, test;  // instance indices, ascending
  std::vector<Part> part_of;                  // per instance
};

// groups[i] names instance i's group. Groups are shuffled with the seeded
// generator, then assigned greedily to whichever part is furthest below its
// instance-count target (ties resolved train, val, test). Fewer than three
// distinct groups is an error, as are fractions that are negative or do not
// sum to 1.
Split group_shuffle_split(const std::vector<std::string>& groups,
                          const SplitFractions& fractions, std::uint64_t seed);

}  // namespace echelon::model
