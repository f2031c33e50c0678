#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sinr/affectance.hpp"
#include "sinr/links.hpp"

namespace sinr {

struct OracleBudget {
  int max_links = 14;
  std::uint64_t max_subsets = 1ull << 22;

  void validate() const {
    if (max_links < 0 || max_links > 22)
      throw validation_error("OracleBudget: max_links must be in [0, 22]");
  }
};

enum class Feasibility { fixed_power, power_control };

/// Indicator over all 2^n subsets of L (bitmask-indexed; bit i = L[i]).
struct FeasibilityTable {
  std::vector<int> links;      // instance link indices, bit order
  std::vector<char> feasible;  // size 1 << links.size()

  int n() const { return static_cast<int>(links.size()); }

  std::vector<int> subset(std::uint32_t mask) const {
    std::vector<int> out;
    for (int i = 0; i < n(); ++i)
      if (mask & (1u << i)) out.push_back(links[i]);
    return out;
  }
};

inline FeasibilityTable feasible_subsets(const Instance& inst,
                                         const std::vector<int>& L,
                                         Feasibility feas,
                                         const PowerAssignment& P,
                                         const OracleBudget& budget = {}) {
  budget.validate();
  const int n = static_cast<int>(L.size());
  if (n > budget.max_links)
    throw oracle_scale_error("feasible_subsets: " + std::to_string(n) +
                             " links exceed the oracle budget");
  const std::uint64_t total = 1ull << n;
  if (total > budget.max_subsets)
    throw oracle_scale_error("feasible_subsets: subset count exceeds budget");
  FeasibilityTable table;
  table.links = L;
  table.feasible.assign(total, 0);
  table.feasible[0] = 1;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const auto S = table.subset(static_cast<std::uint32_t>(mask));
    bool ok;
    if (feas == Feasibility::power_control)
      ok = pc_feasible(inst, S);
    else
      ok = is_sinr_feasible(inst, S, P);
    table.feasible[mask] = ok ? 1 : 0;
  }
  return table;
}

/// Maximum cardinality feasible subset; ties broken by smallest bitmask.
inline std::vector<int> opt_capacity(const Instance& inst,
                                     const std::vector<int>& L,
                                     Feasibility feas,
                                     const PowerAssignment& P,
                                     const OracleBudget& budget = {}) {
  if (L.empty()) return {};
  const auto table = feasible_subsets(inst, L, feas, P, budget);
  std::uint64_t best = 0;
  int best_card = 0;
  for (std::uint64_t mask = 0; mask < table.feasible.size(); ++mask) {
    if (!table.feasible[mask]) continue;
    const int c = __builtin_popcountll(mask);
    if (c > best_card) {
      best_card = c;
      best = mask;
    }
  }
  return table.subset(static_cast<std::uint32_t>(best));
}

/// Maximum weight feasible subset; ties broken by smallest bitmask.
inline std::vector<int> opt_weighted_capacity(const Instance& inst,
                                              const std::vector<int>& L,
                                              Feasibility feas,
                                              const PowerAssignment& P,
                                              const OracleBudget& budget = {}) {
  if (L.empty()) return {};
  const auto table = feasible_subsets(inst, L, feas, P, budget);
  std::uint64_t best = 0;
  double best_w = -1;
  for (std::uint64_t mask = 0; mask < table.feasible.size(); ++mask) {
    if (!table.feasible[mask]) continue;
    double w = 0;
    for (int i = 0; i < table.n(); ++i)
      if (mask & (1ull << i)) w += inst.links[L[i]].weight;
    if (w > best_w) {
      best_w = w;
      best = mask;
    }
  }
  return table.subset(static_cast<std::uint32_t>(best));
}

struct OptSchedule {
  int slot_count = 0;
  std::vector<std::vector<int>> slots;  // witness partition, instance indices
};

/// Minimum number of feasible slots covering L, by subset DP over masks.
inline OptSchedule opt_schedule(const Instance& inst, const std::vector<int>& L,
                                Feasibility feas, const PowerAssignment& P,
                                const OracleBudget& budget = {}) {
  OptSchedule result;
  if (L.empty()) return result;
  const auto table = feasible_subsets(inst, L, feas, P, budget);
  const std::uint64_t total = table.feasible.size();
  const int kInf = 1 << 29;
  std::vector<int> best(total, kInf);
  std::vector<std::uint32_t> pick(total, 0);
  best[0] = 0;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    // Every slot containing the lowest set bit is tried once.
    const std::uint64_t low = mask & (~mask + 1);
    for (std::uint64_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;
      if (!table.feasible[sub]) continue;
      const int cand = best[mask ^ sub] + 1;
      if (cand < best[mask]) {
        best[mask] = cand;
        pick[mask] = static_cast<std::uint32_t>(sub);
      }
    }
  }
  result.slot_count = best[total - 1];
  std::uint64_t mask = total - 1;
  while (mask) {
    result.slots.push_back(table.subset(pick[mask]));
    mask ^= pick[mask];
  }
  return result;
}

}  // namespace sinr
