#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sinr/affectance.hpp"
#include "sinr/links.hpp"

namespace sinr {

/// Symmetric irreflexive conflict graph over a subset of instance links.
/// Node i corresponds to instance link index links[i].
struct LinkGraph {
  std::string label;
  std::vector<int> links;  // node -> instance link index
  std::vector<int> ids;    // node -> link id (for export)
  std::vector<std::vector<char>> adj;

  int n() const { return static_cast<int>(links.size()); }

  void init(std::string lab, const Instance& inst, std::vector<int> idx) {
    label = std::move(lab);
    links = std::move(idx);
    ids.clear();
    for (int v : links) ids.push_back(inst.links[v].id);
    adj.assign(links.size(), std::vector<char>(links.size(), 0));
  }

  bool adjacent(int u, int v) const { return adj[u][v] != 0; }

  void add_edge(int u, int v) {
    if (u == v) return;
    adj[u][v] = adj[v][u] = 1;
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n(); ++u)
      if (adj[v][u]) out.push_back(u);
    return out;
  }

  /// Edge list as "u v" lines over link ids, sorted.
  std::string edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n(); ++u)
      for (int v = u + 1; v < n(); ++v)
        if (adj[u][v])
          edges.emplace_back(std::min(ids[u], ids[v]), std::max(ids[u], ids[v]));
    std::sort(edges.begin(), edges.end());
    std::ostringstream os;
    for (auto& [a, b] : edges) os << a << " " << b << "\n";
    return os.str();
  }
};

/// d_vw * d_wv >= q^2 * l_v * l_w, distances per instance mode.
inline bool is_q_independent(const Instance& inst, int v, int w, double q) {
  if (!(q > 0)) throw domain_error("is_q_independent: requires q > 0");
  const double dvw = log2_directed_distance(inst, v, w);
  const double dwv = log2_directed_distance(inst, w, v);
  if (!std::isfinite(dvw) || !std::isfinite(dwv)) return false;  // colocated
  const double lhs = dvw + dwv;
  const double rhs =
      2 * std::log2(q) + log2_length(inst, v) + log2_length(inst, w);
  return lhs >= rhs;
}

/// G_q: adjacency iff a pair is not q-independent.
inline LinkGraph build_Gq(const Instance& inst, const std::vector<int>& L,
                          double q) {
  if (L.empty()) throw validation_error("build_Gq: empty linkset");
  LinkGraph g;
  g.init("Gq(" + std::to_string(q) + ")", inst, L);
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (!is_q_independent(inst, L[i], L[j], q)) g.add_edge(i, j);
  return g;
}

namespace detail {

inline double log2_sender_dist(const Instance& inst, int v, int w) {
  const Link& lv = inst.links[v];
  const Link& lw = inst.links[w];
  if (inst.precision == Precision::log2)
    return log2_point_dist_exact(lv.s_exact, lw.s_exact);
  return log2_point_dist(inst, lv.s, lw.s);
}

inline double min_log2_length(const Instance& inst, const std::vector<int>& L) {
  double d = std::numeric_limits<double>::infinity();
  for (int v : L) d = std::min(d, log2_length(inst, v));
  return d;
}

}  // namespace detail

/// U_z: senders adjacent iff their distance is strictly less than
/// z * (minimum link length in L).
inline LinkGraph build_Uz(const Instance& inst, const std::vector<int>& L,
                          double z) {
  if (L.empty()) throw validation_error("build_Uz: empty linkset");
  if (!(z > 0)) throw domain_error("build_Uz: requires z > 0");
  LinkGraph g;
  g.init("Uz(" + std::to_string(z) + ")", inst, L);
  const double thr = std::log2(z) + detail::min_log2_length(inst, L);
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (detail::log2_sender_dist(inst, L[i], L[j]) < thr) g.add_edge(i, j);
  return g;
}

/// Length groups keyed by ceil(lg l); the group count is the length
/// diversity g(L).
inline std::map<long, std::vector<int>> length_groups(const Instance& inst,
                                                      const std::vector<int>& L) {
  std::map<long, std::vector<int>> groups;
  for (int v : L) groups[ceil_log2_length(inst, v)].push_back(v);
  return groups;
}

inline int length_diversity(const Instance& inst, const std::vector<int>& L) {
  return static_cast<int>(length_groups(inst, L).size());
}

/// Partition into well-separated classes: tau = 2 beta n, Lambda = 2 tau^(2/alpha),
/// M = ceil(lg 2 Lambda); class i collects links with ceil(lg l) = i (mod M).
struct ClassPartition {
  int M = 0;
  std::vector<std::vector<int>> classes;  // M entries, possibly empty
  double tau = 0;
  double lambda_sep = 0;
};

inline ClassPartition well_separated_classes(const Instance& inst,
                                             const std::vector<int>& L) {
  ClassPartition part;
  part.tau = 2.0 * inst.beta * inst.n();
  part.lambda_sep = 2.0 * std::pow(part.tau, 2.0 / inst.fading.alpha);
  part.M = static_cast<int>(std::ceil(std::log2(2.0 * part.lambda_sep)));
  part.M = std::max(part.M, 1);
  part.classes.assign(part.M, {});
  for (int v : L) {
    const long key = ceil_log2_length(inst, v);
    const long i = ((key % part.M) + part.M) % part.M;
    part.classes[static_cast<size_t>(i)].push_back(v);
  }
  return part;
}

/// max(a_v(w), a_w(v)) >= t under mean power, distances per mode.
inline bool t_close(const Instance& inst, int v, int w, double t) {
  if (!(t > 0)) throw domain_error("t_close: requires t > 0");
  const PowerAssignment M = PowerAssignment::mean(inst.fading.alpha);
  const LogScalar thr = LogScalar::from_double(t);
  const double dvw = log2_directed_distance(inst, v, w);
  const double dwv = log2_directed_distance(inst, w, v);
  if (!std::isfinite(dvw) || !std::isfinite(dwv)) return true;  // colocated
  return le(thr, affectance_pair_log(inst, v, w, M)) ||
         le(thr, affectance_pair_log(inst, w, v, M));
}

/// Conflict graph H on one well-separated class: (a) nearly-equilength links
/// (same ceil-lg band) whose senders are within z * d_band of each other,
/// where d_band is the minimum length inside that band and
/// z = z1(2^(1+alpha/2) beta); (b) length-separated links that are
/// 1/tau-close under mean power.
inline LinkGraph build_H(const Instance& inst, const std::vector<int>& S,
                         const ClassPartition& part) {
  LinkGraph g;
  g.init("H", inst, S);
  if (S.empty()) return g;
  const double alpha = inst.fading.alpha;
  const double z = z1(std::exp2(1.0 + alpha / 2.0) * inst.beta, inst.fading);
  std::map<long, double> band_min;  // band key -> min lg length in band
  for (int v : S) {
    const long key = ceil_log2_length(inst, v);
    const double l = log2_length(inst, v);
    auto it = band_min.find(key);
    if (it == band_min.end() || l < it->second) band_min[key] = l;
  }
  for (int i = 0; i < g.n(); ++i) {
    const long ki = ceil_log2_length(inst, S[i]);
    for (int j = i + 1; j < g.n(); ++j) {
      const long kj = ceil_log2_length(inst, S[j]);
      if (ki == kj) {
        const double thr = std::log2(z) + band_min[ki];
        if (detail::log2_sender_dist(inst, S[i], S[j]) <= thr) g.add_edge(i, j);
      } else {
        if (t_close(inst, S[i], S[j], 1.0 / part.tau)) g.add_edge(i, j);
      }
    }
  }
  return g;
}

/// Brute-force measurement of k such that the given order is k-pi-inductive:
/// the max over positions i of the largest feasible subset of
/// N[v_i] restricted to the suffix. feasible takes instance link indices.
inline int measured_inductiveness(
    const Instance& inst, const LinkGraph& G, const std::vector<int>& order,
    const std::function<bool(const std::vector<int>&)>& feasible,
    int max_neighborhood = 22) {
  const int m = G.n();
  if (static_cast<int>(order.size()) != m)
    throw validation_error("measured_inductiveness: order size mismatch");
  std::vector<int> pos(m);
  for (int i = 0; i < m; ++i) pos[order[i]] = i;
  int k = 0;
  for (int i = 0; i < m; ++i) {
    const int v = order[i];
    std::vector<int> nb;  // graph-node indices of N[v] in the suffix
    nb.push_back(v);
    for (int u = 0; u < m; ++u)
      if (G.adjacent(v, u) && pos[u] > i) nb.push_back(u);
    const int s = static_cast<int>(nb.size());
    if (s > max_neighborhood)
      throw oracle_scale_error("measured_inductiveness: neighborhood of size " +
                               std::to_string(s) + " exceeds oracle scale");
    int best = 0;
    for (unsigned mask = 1; mask < (1u << s); ++mask) {
      const int pc = __builtin_popcount(mask);
      if (pc <= best) continue;
      std::vector<int> sub;
      for (int b = 0; b < s; ++b)
        if (mask & (1u << b)) sub.push_back(G.links[nb[b]]);
      if (feasible(sub)) best = pc;
    }
    k = std::max(k, best);
  }
  return std::max(k, 1);
}

}  // namespace sinr
