#pragma once

#include <vector>

#include "trivconj/blockperm.hpp"
#include "trivconj/cycletype.hpp"
#include "trivconj/setspec.hpp"

namespace trivconj {

struct FamilyReport {
  std::vector<SetSpec> members;
  std::vector<std::vector<TrivVerdict>> verdicts;  // k x k

  std::size_t non_conjugate_pairs() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < verdicts.size(); ++i)
      for (std::size_t j = i + 1; j < verdicts.size(); ++j)
        if (verdicts[i][j].kind == TrivVerdict::Kind::NonConjugate) ++n;
    return n;
  }
};

/// Block permutations over k pairwise disjoint size sets, compared pairwise.
inline FamilyReport family_report(int k) {
  if (k < 2) throw InvalidArgument("family report needs k >= 2");
  FamilyReport r;
  r.members = disjoint_family(k);
  std::vector<CycleTypeSpec> types;
  for (const auto& x : r.members) types.push_back(cycle_type_of(BlockPermutation::from_set(x)));
  r.verdicts.assign(k, std::vector<TrivVerdict>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) r.verdicts[i][j] = triv_criterion(types[i], types[j]);
  return r;
}

}  // namespace trivconj
