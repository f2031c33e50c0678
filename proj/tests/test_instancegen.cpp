#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sinr/gen.hpp"
#include "sinr/io.hpp"
#include "testutil.hpp"

using namespace sinr;
using testutil::all_links;

TEST_CASE("gen_random: determinism and parameter validation") {
  const FadingParams f{3.0, {2, 0.907}};
  CHECK(gen_random(0, 10, 1, 2, 7, f, 1.0).n() == 0);

  const Instance a = gen_random(12, 50, 1, 5, 1234, f, 2.0);
  const Instance b = gen_random(12, 50, 1, 5, 1234, f, 2.0);
  CHECK(serialize_instance(a) == serialize_instance(b));
  const Instance c = gen_random(12, 50, 1, 5, 1235, f, 2.0);
  CHECK(serialize_instance(a) != serialize_instance(c));

  const Instance eq = gen_random(10, 50, 3, 3, 7, f, 1.0);
  for (int v = 0; v < eq.n(); ++v)
    CHECK(length(eq, v) == Catch::Approx(3.0).epsilon(1e-9));

  CHECK_THROWS_AS(gen_random(5, 10, 0, 2, 7, f, 1.0), validation_error);
  CHECK_THROWS_AS(gen_random(5, 10, 3, 2, 7, f, 1.0), validation_error);
  CHECK_THROWS_AS(gen_random(5, 10, 1, 20, 7, f, 1.0), validation_error);
  CHECK_THROWS_AS(gen_random(5, 10, 1, 2, 7, f, 1.0, Mode::unidirectional,
                             3.0, 2.0),
                  validation_error);
}

TEST_CASE("gen_grid: lattice layout and the hand-summed affectance") {
  const FadingParams f4{4.0, {2, 0.907}};
  const Instance one = gen_grid(1, 10, f4, 1.0);
  REQUIRE(one.n() == 1);
  CHECK(length(one, 0) == Catch::Approx(1.0));

  const Instance g = gen_grid(3, 7, f4, 1.0);
  REQUIRE(g.n() == 9);
  for (const auto& l : g.links) {
    CHECK(std::fmod(l.s[0], 7.0) == 0.0);
    CHECK(std::fmod(l.s[1], 7.0) == 0.0);
    CHECK(l.r[0] == l.s[0]);
    CHECK(l.r[1] == l.s[1] + 1.0);
  }

  // m=2, q=10, alpha=4: worst link sees interferers at distances 9,
  // sqrt(101) and sqrt(181) under uniform power.
  const Instance g2 = gen_grid(2, 10, f4, 1.0);
  double mx = 0;
  for (int v = 0; v < g2.n(); ++v)
    mx = std::max(mx, affectance_set(g2, all_links(g2), v,
                                     PowerAssignment::uniform()));
  const double expect = std::pow(9.0, -4.0) + std::pow(101.0, -2.0) +
                        std::pow(181.0, -2.0);
  CHECK(mx == Catch::Approx(expect).epsilon(1e-12));

  CHECK_THROWS_AS(gen_grid(0, 10, f4, 1.0), validation_error);
  CHECK_THROWS_AS(gen_grid(2, 10, {3.0, {1, 1.0}}, 1.0), validation_error);
}

TEST_CASE("gen_lowerbound: hand values at n=2, t=4, c1=0") {
  const Instance inst = gen_lowerbound(2, 4, 0, 2.0, LowerBoundVariant::forward);
  REQUIRE(inst.precision == Precision::floating);
  REQUIRE(inst.n() == 2);
  CHECK(inst.fading.metric.dim == 1);
  CHECK(inst.beta == 1.0);
  CHECK(length(inst, 0) == 16.0);
  CHECK(length(inst, 1) == 65536.0);
  CHECK(inst.links[0].r[0] == 2.0);
  CHECK(inst.links[0].s[0] == -14.0);
  CHECK(inst.links[1].r[0] == 18.0);
  CHECK(inst.links[1].s[0] == -65518.0);

  // Mean-power affectance of link 1 on link 2: (sqrt(16*65536)/32)^2 = 1024.
  CHECK(affectance_pair(inst, 0, 1, PowerAssignment::mean(2.0)) ==
        Catch::Approx(1024.0));

  CHECK_THROWS_AS(gen_lowerbound(2, 3, 0, 2.0, LowerBoundVariant::forward),
                  validation_error);
  CHECK_THROWS_AS(gen_lowerbound(0, 4, 0, 2.0, LowerBoundVariant::forward),
                  validation_error);
}

TEST_CASE("gen_lowerbound: log2 precision chain properties") {
  // n=5 exceeds double range (t^5 = 1024 bits), must switch to log2.
  const Instance inst =
      gen_lowerbound(5, 4, 0, 3.0, LowerBoundVariant::forward);
  REQUIRE(inst.precision == Precision::log2);
  const PowerAssignment M = PowerAssignment::mean(3.0);

  // Every shorter link affects every longer one with affectance >= 1.
  for (int j = 0; j < 5; ++j)
    for (int i = j + 1; i < 5; ++i) {
      const LogScalar a = affectance_pair_log(inst, j, i, M);
      CHECK(le(LogScalar::from_double(1.0), a));
    }

  // Under Psi the total affectance per link stays below 3/(t-1) = 1.
  const PowerAssignment Psi = PowerAssignment::psi(3.0);
  for (int v = 0; v < 5; ++v)
    CHECK(affectance_set(inst, all_links(inst), v, Psi) <= 1.0);
  CHECK(is_sinr_feasible(inst, all_links(inst), Psi));

  // Reversed variant is feasible under P(l) = lg l.
  const Instance rev =
      gen_lowerbound(5, 4, 0, 3.0, LowerBoundVariant::reversed);
  CHECK(is_sinr_feasible(rev, all_links(rev), PowerAssignment::loglen()));

  // Combined variant: both copies, cross-copy coupling negligible.
  const Instance comb =
      gen_lowerbound(3, 4, 0, 3.0, LowerBoundVariant::combined);
  REQUIRE(comb.n() == 6);
  for (int v = 0; v < 3; ++v)
    for (int w = 3; w < 6; ++w)
      for (const auto& P : {PowerAssignment::mean(3.0),
                            PowerAssignment::uniform()}) {
        CHECK(affectance_pair(comb, v, w, P) < 1e-6);
        CHECK(affectance_pair(comb, w, v, P) < 1e-6);
      }
}

TEST_CASE("serialize/parse: round trips") {
  SECTION("float instance") {
    const Instance a =
        gen_random(9, 40, 1, 6, 77, {3.0, {2, 0.907}}, 2.5,
                   Mode::bidirectional, 0.5, 2.0);
    const Instance b = parse_instance(serialize_instance(a));
    CHECK(serialize_instance(b) == serialize_instance(a));
    CHECK(b.mode == Mode::bidirectional);
    CHECK(b.beta == 2.5);
  }

  SECTION("log2 instance with a 310-digit coordinate") {
    std::string digits = "1";
    digits.append(309, '7');
    const std::string doc = std::string("{\n") +
        "  \"alpha\": 2.0, \"beta\": 1.0, \"noise\": 0.0,\n"
        "  \"mode\": \"uni\", \"metric\": {\"dim\": 1, \"C\": 1.0},\n"
        "  \"precision\": \"log2\",\n"
        "  \"links\": [{\"id\": 0, \"s\": [\"" + digits +
        "\"], \"r\": [\"0\"], \"weight\": 1.0}]\n}\n";
    const Instance inst = parse_instance(doc);
    REQUIRE(inst.precision == Precision::log2);
    CHECK(inst.links[0].s_exact == BigInt(digits));
    const Instance again = parse_instance(serialize_instance(inst));
    CHECK(again.links[0].s_exact == inst.links[0].s_exact);
    CHECK(serialize_instance(again) == serialize_instance(inst));
  }

  SECTION("lowerbound instances survive the round trip exactly") {
    const Instance a =
        gen_lowerbound(6, 4, 0, 3.0, LowerBoundVariant::combined);
    const Instance b = parse_instance(serialize_instance(a));
    for (int v = 0; v < a.n(); ++v) {
      CHECK(b.links[v].s_exact == a.links[v].s_exact);
      CHECK(b.links[v].r_exact == a.links[v].r_exact);
    }
  }
}

TEST_CASE("parse_instance: rejection diagnostics") {
  const std::string minimal =
      "{\"alpha\": 3.0, \"beta\": 1.0, \"metric\": {\"dim\": 2, \"C\": 0.907},"
      " \"links\": [{\"id\": 0, \"s\": [0, 0], \"r\": [1, 0]}]}";
  CHECK(parse_instance(minimal).n() == 1);

  SECTION("alpha <= dim carries the fading message") {
    const std::string bad =
        "{\"alpha\": 2.0, \"beta\": 1.0, \"metric\": {\"dim\": 2, \"C\": 0.907},"
        " \"links\": [{\"id\": 0, \"s\": [0, 0], \"r\": [1, 0]}]}";
    CHECK_THROWS_WITH(parse_instance(bad),
                      Catch::Matchers::ContainsSubstring("path loss"));
  }

  SECTION("unknown fields rejected with a path") {
    const std::string bad =
        "{\"alpha\": 3.0, \"beta\": 1.0, \"metric\": {\"dim\": 2, \"C\": 0.907},"
        " \"bogus\": 1, \"links\": []}";
    CHECK_THROWS_WITH(parse_instance(bad),
                      Catch::Matchers::ContainsSubstring("bogus"));
  }

  SECTION("malformed link coordinates name the offending entry") {
    const std::string bad =
        "{\"alpha\": 3.0, \"beta\": 1.0, \"metric\": {\"dim\": 2, \"C\": 0.907},"
        " \"links\": [{\"id\": 0, \"s\": [0, 0], \"r\": [1, 0]},"
        "             {\"id\": 1, \"s\": [0, \"x\"], \"r\": [1, 5]}]}";
    CHECK_THROWS_WITH(parse_instance(bad),
                      Catch::Matchers::ContainsSubstring("links[1]"));
  }

  SECTION("duplicate ids rejected") {
    const std::string bad =
        "{\"alpha\": 3.0, \"beta\": 1.0, \"metric\": {\"dim\": 2, \"C\": 0.907},"
        " \"links\": [{\"id\": 0, \"s\": [0, 0], \"r\": [1, 0]},"
        "             {\"id\": 0, \"s\": [9, 9], \"r\": [8, 9]}]}";
    CHECK_THROWS_AS(parse_instance(bad), parse_error);
  }

  SECTION("invalid JSON") {
    CHECK_THROWS_AS(parse_instance("{"), parse_error);
  }
}

TEST_CASE("schedule serialization round trip") {
  const Instance inst =
      gen_random(10, 60, 1, 1.9, 13, {3.0, {2, 0.907}}, 2.0);
  const Schedule sched = schedule_equilength_udg(inst, all_links(inst));
  const Schedule back = parse_schedule(serialize_schedule(inst, sched), inst);
  CHECK(back.slots == sched.slots);
  CHECK(back.p_certified == sched.p_certified);
  CHECK(back.power.gamma == sched.power.gamma);
  verify_schedule(inst, back);
}

TEST_CASE("digest: stable content hash") {
  const Instance a = gen_random(5, 20, 1, 2, 3, {3.0, {2, 0.907}}, 1.0);
  CHECK(instance_digest(a) == instance_digest(a));
  CHECK(instance_digest(a).size() == 16);
  const Instance b = gen_random(5, 20, 1, 2, 4, {3.0, {2, 0.907}}, 1.0);
  CHECK(instance_digest(a) != instance_digest(b));
}
