#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sinr/gen.hpp"
#include "sinr/linkgraph.hpp"
#include "testutil.hpp"

using namespace sinr;
using testutil::add_link;
using testutil::add_link1;
using testutil::all_links;

TEST_CASE("is_q_independent: product condition") {
  // Collinear unit links: d_vw = 4, d_wv = 2, product 8 vs q^2.
  Instance inst = testutil::line_instance(2.0, 1.0);
  add_link1(inst, 0, 1);
  add_link1(inst, 3, 4);
  CHECK(is_q_independent(inst, 0, 1, 2.0));
  CHECK_FALSE(is_q_independent(inst, 0, 1, 3.0));
  CHECK(is_q_independent(inst, 0, 1, 0.001));  // q -> 0 limit
  CHECK_THROWS_AS(is_q_independent(inst, 0, 1, 0.0), domain_error);

  // Identical links: both directed distances equal the length, so the
  // independence product is exactly l^2 and q = 1 is the threshold.
  Instance co = testutil::line_instance(2.0, 1.0);
  add_link1(co, 0, 1);
  add_link1(co, 0, 1);
  CHECK(is_q_independent(co, 0, 1, 1.0));
  CHECK_FALSE(is_q_independent(co, 0, 1, 1.0 + 1e-9));
  CHECK_FALSE(is_q_independent(co, 0, 1, 10.0));
}

TEST_CASE("build_Uz: strict threshold and colocated senders") {
  Instance inst = testutil::plane_instance(3.0, 1.0);
  add_link(inst, 0, 0, 1, 0);
  add_link(inst, 5, 0, 6, 0);  // sender distance exactly 5

  SECTION("distance exactly z * d_min is NOT an edge") {
    const LinkGraph u = build_Uz(inst, all_links(inst), 5.0);
    CHECK_FALSE(u.adjacent(0, 1));
    const LinkGraph u2 = build_Uz(inst, all_links(inst), 5.0 + 1e-9);
    CHECK(u2.adjacent(0, 1));
  }

  SECTION("three colocated senders form a triangle for any z") {
    Instance co = testutil::plane_instance(3.0, 1.0);
    add_link(co, 0, 0, 1, 0);
    add_link(co, 0, 0, 0, 1);
    add_link(co, 0, 0, -1, 0);
    const LinkGraph u = build_Uz(co, all_links(co), 1e-6);
    CHECK(u.adjacent(0, 1));
    CHECK(u.adjacent(0, 2));
    CHECK(u.adjacent(1, 2));
    CHECK(u.edge_list() == "0 1\n0 2\n1 2\n");
  }

  SECTION("empty linkset rejected") {
    CHECK_THROWS_AS(build_Uz(inst, {}, 1.0), validation_error);
    CHECK_THROWS_AS(build_Gq(inst, {}, 2.0), validation_error);
  }
}

TEST_CASE("length_groups and length diversity") {
  Instance inst = testutil::plane_instance(3.0, 1.0);
  for (double l : {1.0, 1.5, 3.0, 17.0}) add_link(inst, 0, 0, l, 0);
  const auto groups = length_groups(inst, all_links(inst));
  CHECK(length_diversity(inst, all_links(inst)) == 4);
  CHECK(groups.count(0) == 1);
  CHECK(groups.count(1) == 1);
  CHECK(groups.count(2) == 1);
  CHECK(groups.count(5) == 1);

  Instance eq = testutil::plane_instance(3.0, 1.0);
  for (int i = 0; i < 5; ++i) add_link(eq, i * 10.0, 0, i * 10.0 + 3, 0);
  CHECK(length_diversity(eq, all_links(eq)) == 1);

  Instance pw = testutil::plane_instance(3.0, 1.0);
  for (int k = 0; k < 10; ++k) add_link(pw, 0, 0, std::exp2(k), 0);
  CHECK(length_diversity(pw, all_links(pw)) == 10);
}

TEST_CASE("well_separated_classes: constants and partitioning") {
  SECTION("alpha=2, beta=9, n=4: tau=72, Lambda=144, M=9") {
    Instance inst = testutil::line_instance(2.0, 9.0);
    for (int i = 0; i < 4; ++i) add_link1(inst, 100.0 * i, 100.0 * i + 1);
    const ClassPartition part = well_separated_classes(inst, all_links(inst));
    CHECK(part.tau == Catch::Approx(72.0));
    CHECK(part.lambda_sep == Catch::Approx(144.0));
    CHECK(part.M == 9);
    int total = 0;
    for (const auto& c : part.classes) total += static_cast<int>(c.size());
    CHECK(total == 4);
  }

  SECTION("single link and one band collapse to one nonempty class") {
    Instance inst = testutil::plane_instance(3.0, 2.0);
    add_link(inst, 0, 0, 1, 0);
    auto part = well_separated_classes(inst, all_links(inst));
    int nonempty = 0;
    for (const auto& c : part.classes) nonempty += !c.empty();
    CHECK(nonempty == 1);

    for (int i = 1; i < 6; ++i) add_link(inst, 10.0 * i, 0, 10.0 * i + 1.5, 0);
    part = well_separated_classes(inst, all_links(inst));
    nonempty = 0;
    for (const auto& c : part.classes) nonempty += !c.empty();
    CHECK(nonempty == 2);  // bands ceil(lg 1)=0 and ceil(lg 1.5)=1

    // Within every class any two lengths differ by factor < 2 or > Lambda.
    for (const auto& c : part.classes)
      for (size_t a = 0; a < c.size(); ++a)
        for (size_t b = a + 1; b < c.size(); ++b) {
          const double ratio = std::exp2(std::fabs(
              log2_length(inst, c[a]) - log2_length(inst, c[b])));
          CHECK((ratio < 2.0 || ratio > part.lambda_sep));
        }
  }
}

TEST_CASE("t_close under mean power") {
  // Unit links with both cross distances 2 at alpha 2: mean affectance 0.25.
  Instance inst = testutil::line_instance(2.0, 1.0);
  add_link1(inst, 0, 1);
  add_link1(inst, 3, 2);
  CHECK(t_close(inst, 0, 1, 0.2));
  CHECK_FALSE(t_close(inst, 0, 1, 0.3));

  // Identical pair: mutual affectance is exactly 1.
  Instance co = testutil::line_instance(2.0, 1.0);
  add_link1(co, 0, 1);
  add_link1(co, 0, 1);
  CHECK(t_close(co, 0, 1, 1.0));
  CHECK_FALSE(t_close(co, 0, 1, 1.0 + 1e-9));

  // Numerically infinitely separated pair.
  Instance far = testutil::line_instance(2.0, 1.0);
  add_link1(far, 0, 1);
  add_link1(far, 1e10, 1e10 + 1);
  CHECK_FALSE(t_close(far, 0, 1, 1.0 / 4.0));
}

TEST_CASE("build_H: rule triggers") {
  SECTION("same band, far senders, weak coupling: no edge") {
    Instance inst = testutil::line_instance(2.0, 1.0);
    add_link1(inst, 0, 1);
    add_link1(inst, 40, 41);
    const ClassPartition part = well_separated_classes(inst, all_links(inst));
    const double z = z1(std::exp2(2.0) * inst.beta, inst.fading);
    REQUIRE(z < 40.0);  // senders beyond the rule (a) radius
    const LinkGraph h = build_H(inst, all_links(inst), part);
    CHECK_FALSE(h.adjacent(0, 1));
  }

  SECTION("length-separated 1/tau-close pair: edge by rule (b)") {
    // n=2, beta=1: tau=4, Lambda=8, M=4; lengths 1 and 16 share class 0.
    Instance inst = testutil::line_instance(2.0, 1.0);
    add_link1(inst, 0, 1);    // band 0
    add_link1(inst, -6, 10);  // length 16, band 4 == 0 (mod 4)
    const ClassPartition part = well_separated_classes(inst, all_links(inst));
    REQUIRE(part.M == 4);
    // a_v(u) = (sqrt(16)/7)^2 = 0.3265 >= 1/tau = 0.25.
    REQUIRE(t_close(inst, 0, 1, 1.0 / part.tau));
    const LinkGraph h = build_H(inst, all_links(inst), part);
    CHECK(h.adjacent(0, 1));
  }

  SECTION("independent sets in H are SINR-feasible under mean power") {
    std::mt19937_64 seeds(31337);
    for (int trial = 0; trial < 25; ++trial) {
      Instance inst = gen_random(20, 200, 1, 60, seeds(), {3.0, {2, 0.907}},
                                 2.0, trial % 2 ? Mode::bidirectional
                                                : Mode::unidirectional);
      const ClassPartition part = well_separated_classes(inst, all_links(inst));
      for (const auto& cls : part.classes) {
        if (cls.empty()) continue;
        const LinkGraph h = build_H(inst, cls, part);
        // Greedy independent sets from a few shuffled orders.
        for (int rep = 0; rep < 3; ++rep) {
          std::vector<int> order(h.n());
          for (int i = 0; i < h.n(); ++i) order[i] = i;
          std::shuffle(order.begin(), order.end(), seeds);
          std::vector<int> indep;
          for (int v : order) {
            bool ok = true;
            for (int u : indep)
              if (h.adjacent(v, u)) ok = false;
            if (ok) indep.push_back(v);
          }
          std::vector<int> S;
          for (int v : indep) S.push_back(h.links[v]);
          CHECK(is_sinr_feasible(inst, S,
                                 PowerAssignment::mean(inst.fading.alpha)));
        }
      }
    }
  }
}

TEST_CASE("graph sandwich U_{q-1} within G_q within U_{2(q+1)}") {
  std::mt19937_64 seeds(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + static_cast<int>(seeds() % 21);
    Instance inst =
        gen_random(n, 40, 1, 1.99, seeds(), {3.0, {2, 0.907}}, 1.0);
    const auto L = all_links(inst);
    for (double q : {2.0, 3.0, 4.0}) {
      const LinkGraph lo = build_Uz(inst, L, q - 1.0);
      const LinkGraph mid = build_Gq(inst, L, q);
      const LinkGraph hi = build_Uz(inst, L, 2.0 * (q + 1.0));
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          if (lo.adjacent(a, b)) CHECK(mid.adjacent(a, b));
          if (mid.adjacent(a, b)) CHECK(hi.adjacent(a, b));
        }
    }
  }
}

TEST_CASE("measured_inductiveness") {
  Instance inst = testutil::line_instance(2.0, 2.0);
  for (int i = 0; i < 5; ++i) add_link1(inst, 20.0 * i, 20.0 * i + 1);

  SECTION("edgeless graph: k = 1") {
    LinkGraph g;
    g.init("empty", inst, all_links(inst));
    const auto order = std::vector<int>{0, 1, 2, 3, 4};
    const int k = measured_inductiveness(
        inst, g, order, [](const std::vector<int>&) { return true; });
    CHECK(k == 1);
  }

  SECTION("clique with singleton-only feasibility: k = 1") {
    LinkGraph g;
    g.init("clique", inst, all_links(inst));
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) g.add_edge(a, b);
    const auto order = std::vector<int>{0, 1, 2, 3, 4};
    const int k = measured_inductiveness(
        inst, g, order,
        [](const std::vector<int>& S) { return S.size() <= 1; });
    CHECK(k == 1);
  }

  SECTION("agrees with an independent recursive recomputation") {
    std::mt19937_64 seeds(88);
    for (int trial = 0; trial < 10; ++trial) {
      Instance rnd =
          gen_random(8, 25, 1, 4, seeds(), {3.0, {2, 0.907}}, 2.0);
      const LinkGraph g = build_Gq(rnd, all_links(rnd), 2.0);
      std::vector<int> order(8);
      for (int i = 0; i < 8; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), seeds);
      auto feas = [&](const std::vector<int>& S) {
        return is_sinr_feasible(rnd, S, PowerAssignment::uniform());
      };
      const int k = measured_inductiveness(rnd, g, order, feas);

      // Second implementation: recursive max feasible subset per suffix
      // neighborhood.
      std::vector<int> pos(8);
      for (int i = 0; i < 8; ++i) pos[order[i]] = i;
      int k2 = 0;
      for (int i = 0; i < 8; ++i) {
        std::vector<int> cand{order[i]};
        for (int u = 0; u < 8; ++u)
          if (g.adjacent(order[i], u) && pos[u] > i) cand.push_back(u);
        std::function<int(size_t, std::vector<int>&)> rec =
            [&](size_t idx, std::vector<int>& cur) -> int {
          if (idx == cand.size())
            return feas(cur) ? static_cast<int>(cur.size()) : -1;
          int best = rec(idx + 1, cur);
          cur.push_back(g.links[cand[idx]]);
          best = std::max(best, rec(idx + 1, cur));
          cur.pop_back();
          return best;
        };
        std::vector<int> cur;
        k2 = std::max(k2, rec(0, cur));
      }
      CHECK(k == std::max(k2, 1));
    }
  }

  SECTION("oversized neighborhood raises oracle_scale_error") {
    Instance big = testutil::line_instance(2.0, 1.0);
    for (int i = 0; i < 10; ++i) add_link1(big, 0.0, 1.0 + i * 1e-3);
    LinkGraph g;
    g.init("clique", big, all_links(big));
    for (int a = 0; a < 10; ++a)
      for (int b = a + 1; b < 10; ++b) g.add_edge(a, b);
    std::vector<int> order(10);
    for (int i = 0; i < 10; ++i) order[i] = i;
    CHECK_THROWS_AS(
        measured_inductiveness(big, g, order,
                               [](const std::vector<int>&) { return true; },
                               4),
        oracle_scale_error);
  }
}

TEST_CASE("length-separation bound: lg lg Delta + 2") {
  std::mt19937_64 seeds(9090);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = testutil::plane_instance(3.0, 2.0);
    std::uniform_real_distribution<double> u(0, 600);
    for (int i = 0; i < 14; ++i) {
      const double len = std::exp2(static_cast<double>(seeds() % 11)) *
                         (1.0 + 0.3 * (seeds() % 3));
      const double x = u(seeds), y = u(seeds);
      add_link(inst, x, y, x + len, y);
    }
    inst.validate();
    const double tau = 2.0 * inst.beta * inst.n();
    const double lg_lambda =
        1.0 + (2.0 / inst.fading.alpha) * std::log2(tau);
    // Each affectance direction contributes at most lg lg Delta + 2 links;
    // the outer lg is floored to stay defined for tiny spreads.
    const double bound =
        2.0 * (std::log2(std::max(log2_delta_ratio(inst), 2.0)) + 2.0);
    for (int v = 0; v < inst.n(); ++v) {
      std::vector<int> cand;
      for (int w = 0; w < inst.n(); ++w) {
        if (w == v) continue;
        // Length-separated: longer than v by more than a Lambda factor.
        if (log2_length(inst, w) - log2_length(inst, v) <= lg_lambda) continue;
        if (!t_close(inst, v, w, 1.0 / tau)) continue;
        cand.push_back(w);
      }
      if (cand.empty()) continue;
      // Largest pairwise 3-independent subset of the candidates.
      std::vector<std::vector<char>> adj(cand.size(),
                                         std::vector<char>(cand.size(), 0));
      for (size_t a = 0; a < cand.size(); ++a)
        for (size_t b = a + 1; b < cand.size(); ++b)
          if (!is_q_independent(inst, cand[a], cand[b], 3.0))
            adj[a][b] = adj[b][a] = 1;
      const int q = testutil::max_independent_set(
          adj, (1ul << cand.size()) - 1);
      CHECK(q <= bound);
    }
  }
}

TEST_CASE("bidirectional: at most one long 1/tau-close link per "
          "2-independent set") {
  std::mt19937_64 seeds(771);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = testutil::plane_instance(3.0, 2.0);
    inst.mode = Mode::bidirectional;
    std::uniform_real_distribution<double> u(0, 400);
    for (int i = 0; i < 12; ++i) {
      const double len = std::exp2(static_cast<double>(seeds() % 9)) * 1.1;
      const double x = u(seeds), y = u(seeds);
      add_link(inst, x, y, x + len, y);
    }
    inst.validate();
    const double tau = 2.0 * inst.beta * inst.n();
    const double lg_thresh = (2.0 / inst.fading.alpha) * std::log2(tau);
    for (int v = 0; v < inst.n(); ++v) {
      std::vector<int> cand;
      for (int w = 0; w < inst.n(); ++w) {
        if (w == v) continue;
        if (log2_length(inst, w) - log2_length(inst, v) <= lg_thresh)
          continue;  // not longer by factor > tau^{2/alpha}
        if (!t_close(inst, v, w, 1.0 / tau)) continue;
        cand.push_back(w);
      }
      // No two such links can be mutually 2-independent.
      for (size_t a = 0; a < cand.size(); ++a)
        for (size_t b = a + 1; b < cand.size(); ++b)
          CHECK_FALSE(is_q_independent(inst, cand[a], cand[b], 2.0));
    }
  }
}
