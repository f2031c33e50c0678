#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sinr/affectance.hpp"
#include "sinr/linkgraph.hpp"
#include "sinr/links.hpp"

namespace sinr {

/// Ordered partition of a linkset into SINR-feasible slots.
struct Schedule {
  std::string algorithm;
  std::vector<std::vector<int>> slots;  // instance link indices
  PowerAssignment power;
  Mode mode = Mode::unidirectional;
  double p_certified = 1.0;
};

struct CapacityResult {
  std::string algorithm;
  std::vector<int> chosen;  // instance link indices
  PowerAssignment power;
  double total_weight = 0;
};

inline void verify_schedule(const Instance& inst, const Schedule& sched) {
  for (const auto& slot : sched.slots)
    if (!is_p_signal(inst, slot, sched.power, sched.p_certified))
      throw internal_error("verify_schedule: slot fails its certified p");
}

inline double total_weight(const Instance& inst, const std::vector<int>& S) {
  double w = 0;
  for (int v : S) w += inst.links[v].weight;
  return w;
}

/// Default certification level for the equilength scheduler: head-room of
/// 2^(alpha/2) over beta so slots stay feasible under mean power despite the
/// < 2x length variance within a band.
inline double default_equilength_p(const Instance& inst) {
  return std::exp2(inst.fading.alpha / 2.0) * inst.beta;
}

/// Forward pass over the inductive order; keep a node iff it has no kept
/// neighbor. Returns graph-node indices; the result is independent in G.
inline std::vector<int> greedy_pi_subset(const std::vector<int>& order,
                                         const LinkGraph& G) {
  std::vector<char> kept(G.n(), 0);
  std::vector<int> out;
  for (int v : order) {
    bool ok = true;
    for (int u = 0; u < G.n(); ++u)
      if (kept[u] && G.adjacent(v, u)) {
        ok = false;
        break;
      }
    if (ok) {
      kept[v] = 1;
      out.push_back(v);
    }
  }
  return out;
}

/// First-fit coloring processing nodes exactly in the given order.
inline std::vector<std::vector<int>> firstfit_color_in_order(
    const LinkGraph& G, const std::vector<int>& order) {
  std::vector<std::vector<int>> classes;
  for (int v : order) {
    int c = 0;
    for (;; ++c) {
      if (c == static_cast<int>(classes.size())) {
        classes.emplace_back();
        break;
      }
      bool clash = false;
      for (int u : classes[c])
        if (G.adjacent(v, u)) {
          clash = true;
          break;
        }
      if (!clash) break;
    }
    classes[c].push_back(v);
  }
  return classes;
}

/// First-fit over the reverse of the inductive order; each class is
/// independent in G. Returns classes of graph-node indices.
inline std::vector<std::vector<int>> firstfit_partition(
    const std::vector<int>& order, const LinkGraph& G) {
  std::vector<int> rev(order.rbegin(), order.rend());
  return firstfit_color_in_order(G, rev);
}

/// Local-ratio stack pass for weighted maximum pi-subset. order is the
/// inductive order; weights and pi_test are over graph-node indices /
/// graph-node index sets. Returns the selected nodes.
inline std::vector<int> stack_weighted_pi_subset(
    const std::vector<int>& order, const LinkGraph& G,
    const std::vector<double>& weights,
    const std::function<bool(const std::vector<int>&)>& pi_test) {
  const int m = G.n();
  if (static_cast<int>(weights.size()) != m)
    throw validation_error("stack_weighted_pi_subset: weights size mismatch");
  for (double w : weights)
    if (w < 0) throw validation_error("stack_weighted_pi_subset: negative weight");
  std::vector<int> pos(m);
  for (int i = 0; i < m; ++i) pos[order[i]] = i;
  std::vector<double> what(weights);
  std::vector<int> stack;
  for (int i = 0; i < m; ++i) {  // push phase
    const int v = order[i];
    if (what[v] > 0) {
      stack.push_back(v);
      for (int u = 0; u < m; ++u)
        if (G.adjacent(v, u) && pos[u] > i) what[u] -= what[v];
    }
  }
  std::vector<int> A;
  double a_weight = 0, stack_weight = 0;
  for (int v : stack) stack_weight += std::max(what[v], 0.0);
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {  // pop phase
    std::vector<int> cand(A);
    cand.push_back(*it);
    bool ok;
    try {
      ok = pi_test(cand);
    } catch (const error&) {
      ok = false;
    }
    if (!ok && A.empty())
      throw validation_error(
          "stack_weighted_pi_subset: property fails on a singleton");
    if (ok) {
      A = std::move(cand);
      a_weight += weights[*it];
    }
  }
  // Internal guarantee of the local-ratio argument.
  if (a_weight + 1e-9 * std::max(1.0, stack_weight) < stack_weight)
    throw internal_error("stack_weighted_pi_subset: stack weight inequality");
  return A;
}

namespace detail {

inline void require_nearly_equilength(const Instance& inst,
                                      const std::vector<int>& L,
                                      const char* who) {
  if (L.empty()) return;
  double lo = log2_length(inst, L[0]), hi = lo;
  for (int v : L) {
    const double l = log2_length(inst, v);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  if (hi - lo >= 1.0)
    throw validation_error(std::string(who) +
                           ": linkset is not nearly-equilength");
}

inline std::vector<int> to_instance_ids(const LinkGraph& G,
                                        const std::vector<int>& nodes) {
  std::vector<int> out;
  out.reserve(nodes.size());
  for (int v : nodes) out.push_back(G.links[v]);
  return out;
}

inline std::vector<int> identity_order(int n) {
  std::vector<int> o(n);
  for (int i = 0; i < n; ++i) o[i] = i;
  return o;
}

/// Non-decreasing length, ties by link id.
inline std::vector<int> length_order(const Instance& inst, const LinkGraph& G) {
  std::vector<int> o = identity_order(G.n());
  std::stable_sort(o.begin(), o.end(), [&](int a, int b) {
    const double la = log2_length(inst, G.links[a]);
    const double lb = log2_length(inst, G.links[b]);
    if (la != lb) return la < lb;
    return inst.links[G.links[a]].id < inst.links[G.links[b]].id;
  });
  return o;
}

}  // namespace detail

/// First-fit coloring of U_{z1(p)} in input order; a minimal coloring, so at
/// most D+1 slots, each a p-signal set under uniform power.
inline Schedule schedule_equilength_udg(const Instance& inst,
                                        const std::vector<int>& L, double p) {
  detail::require_nearly_equilength(inst, L, "schedule_equilength_udg");
  Schedule sched;
  sched.algorithm = "udg";
  sched.power = PowerAssignment::uniform();
  sched.mode = inst.mode;
  sched.p_certified = p;
  if (L.empty()) return sched;
  const LinkGraph U = build_Uz(inst, L, z1(p, inst.fading));
  const auto classes =
      firstfit_color_in_order(U, detail::identity_order(U.n()));
  for (const auto& c : classes) sched.slots.push_back(detail::to_instance_ids(U, c));
  verify_schedule(inst, sched);
  return sched;
}

inline Schedule schedule_equilength_udg(const Instance& inst,
                                        const std::vector<int>& L) {
  return schedule_equilength_udg(inst, L, default_equilength_p(inst));
}

/// Maximal independent set of U_{z1(beta)} in input order.
inline CapacityResult capacity_equilength(const Instance& inst,
                                          const std::vector<int>& L) {
  detail::require_nearly_equilength(inst, L, "capacity_equilength");
  CapacityResult res;
  res.algorithm = "udg";
  res.power = PowerAssignment::uniform();
  if (L.empty()) return res;
  const LinkGraph U = build_Uz(inst, L, z1(inst.beta, inst.fading));
  res.chosen = detail::to_instance_ids(
      U, greedy_pi_subset(detail::identity_order(U.n()), U));
  res.total_weight = total_weight(inst, res.chosen);
  if (!is_sinr_feasible(inst, res.chosen, res.power))
    throw internal_error("capacity_equilength: infeasible result");
  return res;
}

/// Iterative greedy independent set: pick every vertex whose (weight, -id)
/// strictly beats all neighbors, delete closed neighborhoods, repeat.
inline CapacityResult weighted_capacity_equilength(const Instance& inst,
                                                   const std::vector<int>& L) {
  detail::require_nearly_equilength(inst, L, "weighted_capacity_equilength");
  CapacityResult res;
  res.algorithm = "udg-weighted";
  res.power = PowerAssignment::uniform();
  if (L.empty()) return res;
  const LinkGraph U = build_Uz(inst, L, z1(inst.beta, inst.fading));
  std::vector<char> alive(U.n(), 1);
  auto rank = [&](int v) {
    return std::make_pair(inst.links[U.links[v]].weight, -inst.links[U.links[v]].id);
  };
  std::vector<int> picked;
  for (;;) {
    std::vector<int> winners;
    for (int v = 0; v < U.n(); ++v) {
      if (!alive[v]) continue;
      bool best = true;
      for (int u = 0; u < U.n(); ++u)
        if (alive[u] && U.adjacent(v, u) && !(rank(v) > rank(u))) {
          best = false;
          break;
        }
      if (best) winners.push_back(v);
    }
    if (winners.empty()) break;
    for (int v : winners) {
      picked.push_back(v);
      alive[v] = 0;
      for (int u = 0; u < U.n(); ++u)
        if (U.adjacent(v, u)) alive[u] = 0;
    }
  }
  res.chosen = detail::to_instance_ids(U, picked);
  res.total_weight = total_weight(inst, res.chosen);
  if (!is_sinr_feasible(inst, res.chosen, res.power))
    throw internal_error("weighted_capacity_equilength: infeasible result");
  return res;
}

/// Partition into ceil-lg length groups and schedule each group separately.
inline Schedule schedule_lengthgroups_uniform(const Instance& inst,
                                              const std::vector<int>& L) {
  Schedule sched;
  sched.algorithm = "groups";
  sched.power = PowerAssignment::uniform();
  sched.mode = inst.mode;
  sched.p_certified = default_equilength_p(inst);
  for (const auto& [key, group] : length_groups(inst, L)) {
    Schedule part = schedule_equilength_udg(inst, group, sched.p_certified);
    for (auto& slot : part.slots) sched.slots.push_back(std::move(slot));
  }
  return sched;
}

/// Online first-fit: each arriving link joins the first slot of its length
/// group whose senders all lie at distance >= z1(p) * 2^(band-1).
inline Schedule online_schedule(const Instance& inst,
                                const std::vector<int>& stream, double p) {
  Schedule sched;
  sched.algorithm = "online";
  sched.power = PowerAssignment::uniform();
  sched.mode = inst.mode;
  sched.p_certified = p;
  const double lgz = std::log2(z1(p, inst.fading));
  std::map<long, std::vector<std::vector<int>>> groups;
  for (int v : stream) {
    const long key = ceil_log2_length(inst, v);
    auto& slots = groups[key];
    const double thr = lgz + static_cast<double>(key - 1);  // lg(z1 * d_group)
    bool placed = false;
    for (auto& slot : slots) {
      bool far = true;
      for (int u : slot)
        if (detail::log2_sender_dist(inst, u, v) < thr) {
          far = false;
          break;
        }
      if (far) {
        slot.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) slots.push_back({v});
  }
  for (const auto& [key, slots] : groups)
    for (const auto& slot : slots) sched.slots.push_back(slot);
  verify_schedule(inst, sched);
  return sched;
}

inline Schedule online_schedule(const Instance& inst,
                                const std::vector<int>& stream) {
  return online_schedule(inst, stream, default_equilength_p(inst));
}

/// Randomized capacity: pick a uniformly random nonempty length group,
/// run the equilength capacity algorithm on it. Deterministic given seed.
inline CapacityResult capacity_random_group(const Instance& inst,
                                            const std::vector<int>& L,
                                            std::uint64_t seed) {
  if (L.empty()) {
    CapacityResult res;
    res.algorithm = "random-group";
    res.power = PowerAssignment::uniform();
    return res;
  }
  const auto groups = length_groups(inst, L);
  std::vector<const std::vector<int>*> flat;
  for (const auto& [key, g] : groups) flat.push_back(&g);
  std::mt19937_64 rng(seed);
  const auto& pick = *flat[rng() % flat.size()];
  CapacityResult res = capacity_equilength(inst, pick);
  res.algorithm = "random-group";
  return res;
}

/// Well-separated classes, conflict graph H per class, first-fit over the
/// reverse non-decreasing-length order, slots concatenated across classes.
inline Schedule schedule_meanpower(const Instance& inst,
                                   const std::vector<int>& L) {
  Schedule sched;
  sched.algorithm = "mean";
  sched.power = PowerAssignment::mean(inst.fading.alpha);
  sched.mode = inst.mode;
  sched.p_certified = inst.beta;
  const ClassPartition part = well_separated_classes(inst, L);
  for (const auto& cls : part.classes) {
    if (cls.empty()) continue;
    const LinkGraph H = build_H(inst, cls, part);
    const auto order = detail::length_order(inst, H);
    for (const auto& c : firstfit_partition(order, H))
      sched.slots.push_back(detail::to_instance_ids(H, c));
  }
  verify_schedule(inst, sched);
  return sched;
}

/// Greedy independent set in H per class; the best class's result wins.
inline CapacityResult capacity_meanpower(const Instance& inst,
                                         const std::vector<int>& L) {
  CapacityResult res;
  res.algorithm = "mean";
  res.power = PowerAssignment::mean(inst.fading.alpha);
  const ClassPartition part = well_separated_classes(inst, L);
  for (const auto& cls : part.classes) {
    if (cls.empty()) continue;
    const LinkGraph H = build_H(inst, cls, part);
    const auto chosen = detail::to_instance_ids(
        H, greedy_pi_subset(detail::length_order(inst, H), H));
    if (chosen.size() > res.chosen.size()) res.chosen = chosen;
  }
  res.total_weight = total_weight(inst, res.chosen);
  if (!res.chosen.empty() && !is_sinr_feasible(inst, res.chosen, res.power))
    throw internal_error("capacity_meanpower: infeasible result");
  return res;
}

/// Stack algorithm per class with SINR feasibility under mean power as the
/// property; the heaviest class result wins.
inline CapacityResult weighted_capacity_meanpower(const Instance& inst,
                                                  const std::vector<int>& L) {
  CapacityResult res;
  res.algorithm = "mean-weighted";
  res.power = PowerAssignment::mean(inst.fading.alpha);
  const ClassPartition part = well_separated_classes(inst, L);
  for (const auto& cls : part.classes) {
    if (cls.empty()) continue;
    const LinkGraph H = build_H(inst, cls, part);
    std::vector<double> w(H.n());
    for (int i = 0; i < H.n(); ++i) w[i] = inst.links[H.links[i]].weight;
    auto pi = [&](const std::vector<int>& nodes) {
      return is_sinr_feasible(inst, detail::to_instance_ids(H, nodes),
                              res.power);
    };
    const auto chosen = detail::to_instance_ids(
        H, stack_weighted_pi_subset(detail::length_order(inst, H), H, w, pi));
    const double cw = total_weight(inst, chosen);
    if (cw > res.total_weight) {
      res.chosen = chosen;
      res.total_weight = cw;
    }
  }
  if (!res.chosen.empty() && !is_sinr_feasible(inst, res.chosen, res.power))
    throw internal_error("weighted_capacity_meanpower: infeasible result");
  return res;
}

/// Refine each slot by first-fit into subslots certified at p_target.
inline Schedule strengthen_schedule(const Instance& inst, const Schedule& in,
                                    double p_target,
                                    std::vector<double>* blowup = nullptr) {
  if (!(p_target >= in.p_certified))
    throw validation_error("strengthen_schedule: p_target below certified p");
  Schedule out;
  out.algorithm = in.algorithm + "+strengthen";
  out.power = in.power;
  out.mode = in.mode;
  out.p_certified = p_target;
  if (blowup) blowup->clear();
  for (const auto& slot : in.slots) {
    std::vector<std::vector<int>> subslots;
    for (int v : slot) {
      bool placed = false;
      for (auto& sub : subslots) {
        sub.push_back(v);
        if (is_p_signal(inst, sub, in.power, p_target)) {
          placed = true;
          break;
        }
        sub.pop_back();
      }
      if (!placed) {
        if (!is_p_signal(inst, {v}, in.power, p_target))
          throw internal_error("strengthen_schedule: singleton fails target");
        subslots.push_back({v});
      }
    }
    if (blowup)
      blowup->push_back(slot.empty() ? 1.0
                                     : static_cast<double>(subslots.size()));
    for (auto& sub : subslots) out.slots.push_back(std::move(sub));
  }
  verify_schedule(inst, out);
  return out;
}

}  // namespace sinr
