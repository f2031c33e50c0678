// Command-line front door for SINR link scheduling: instance generation,
// feasibility checking, schedulers, brute-force oracles and comparisons.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sinr/sinr.hpp"

namespace {

using namespace sinr;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write file: " + path);
  out << text;
}

PowerAssignment parse_power(const std::string& spec, double alpha) {
  if (spec == "uniform") return PowerAssignment::uniform();
  if (spec == "linear") return PowerAssignment::linear(alpha);
  if (spec == "mean") return PowerAssignment::mean(alpha);
  if (spec.rfind("custom:", 0) == 0) {
    PowerAssignment P;
    char comma1 = 0, comma2 = 0;
    std::istringstream ss(spec.substr(7));
    ss >> P.gamma >> comma1 >> P.delta;
    if (!ss || comma1 != ',') throw parse_error("bad --power spec: " + spec);
    if (ss >> comma2 >> P.scale) {
      if (comma2 != ',') throw parse_error("bad --power spec: " + spec);
    } else {
      P.scale = 1.0;
    }
    return P;
  }
  throw parse_error("unknown --power value: " + spec);
}

OracleBudget budget_from_env() {
  OracleBudget b;
  if (const char* env = std::getenv("SINRSCHED_ORACLE_MAX"))
    b.max_links = std::atoi(env);
  b.validate();
  return b;
}

std::vector<int> all_links(const Instance& inst) {
  std::vector<int> L(inst.n());
  for (int i = 0; i < inst.n(); ++i) L[i] = i;
  return L;
}

struct ReportSink {
  std::string format = "jsonl";

  void emit(const json& j) const {
    if (format == "text") {
      for (auto it = j.begin(); it != j.end(); ++it)
        std::cout << it.key() << "=" << it.value().dump() << "  ";
      std::cout << "\n";
    } else {
      std::cout << j.dump() << "\n";
    }
  }
};

json base_report(const Instance& inst, const std::string& algo) {
  json j;
  j["instance"] = instance_digest(inst);
  j["algorithm"] = algo;
  return j;
}

Schedule run_schedule_algo(const Instance& inst, const std::string& algo,
                           double p) {
  const auto L = all_links(inst);
  if (algo == "udg") return schedule_equilength_udg(inst, L, p);
  if (algo == "groups") return schedule_lengthgroups_uniform(inst, L);
  if (algo == "online") return online_schedule(inst, L, p);
  if (algo == "mean") return schedule_meanpower(inst, L);
  throw parse_error("unknown --algo value: " + algo);
}

int warn_small_beta(const Instance& inst) {
  const double thr = std::pow(3.0, inst.fading.alpha);
  if (inst.beta < thr)
    std::cerr << "warning: beta = " << inst.beta << " < 3^alpha = " << thr
              << "; proven approximation ratios assume beta >= 3^alpha\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SINR wireless link scheduling with oblivious power control"};
  app.require_subcommand(1);
  ReportSink sink;
  app.add_option("--format", sink.format, "Report format: jsonl|text")
      ->check(CLI::IsMember({"jsonl", "text"}));

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string gen_kind = "random", gen_mode = "uni", gen_variant = "forward";
  std::string gen_output;
  int gen_n = 10, gen_dim = 2, gen_m = 3;
  long gen_t = 4, gen_c1 = 0;
  double gen_alpha = 3.0, gen_beta = 1.0, gen_packing = kPlanePackingConstant;
  double gen_side = 100, gen_lmin = 1, gen_lmax = 2, gen_q = 10;
  double gen_wmin = 1, gen_wmax = 1;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "random|equilength|grid|lowerbound")
      ->check(CLI::IsMember({"random", "equilength", "grid", "lowerbound"}));
  gen->add_option("--n", gen_n, "Number of links");
  gen->add_option("--alpha", gen_alpha, "Path loss exponent");
  gen->add_option("--beta", gen_beta, "SINR threshold");
  gen->add_option("--dim", gen_dim, "Metric dimension");
  gen->add_option("--packing", gen_packing, "Packing constant C");
  gen->add_option("--mode", gen_mode, "uni|bi")
      ->check(CLI::IsMember({"uni", "bi"}));
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--side", gen_side, "Deployment square side");
  gen->add_option("--len-min", gen_lmin, "Minimum link length");
  gen->add_option("--len-max", gen_lmax, "Maximum link length");
  gen->add_option("--wmin", gen_wmin, "Minimum link weight");
  gen->add_option("--wmax", gen_wmax, "Maximum link weight");
  gen->add_option("--m", gen_m, "Grid side (grid kind)");
  gen->add_option("--q", gen_q, "Grid separation (grid kind)");
  gen->add_option("--t", gen_t, "Growth parameter (lowerbound kind)");
  gen->add_option("--c1", gen_c1, "Offset parameter (lowerbound kind)");
  gen->add_option("--variant", gen_variant, "forward|reversed|combined")
      ->check(CLI::IsMember({"forward", "reversed", "combined"}));
  gen->add_option("--output", gen_output, "Instance file (stdout if empty)");

  // ---- check ----
  auto* check = app.add_subcommand("check", "Verify a schedule or subset");
  std::string chk_input, chk_schedule, chk_subset, chk_power = "uniform";
  double chk_p = 0;
  check->add_option("--input", chk_input, "Instance file")->required();
  check->add_option("--schedule", chk_schedule, "Schedule file");
  check->add_option("--subset", chk_subset, "Comma-separated link ids");
  check->add_option("--power", chk_power, "uniform|linear|mean|custom:g,d[,s]");
  check->add_option("--p", chk_p, "Signal level (default: instance beta)");

  // ---- schedule ----
  auto* sch = app.add_subcommand("schedule", "Run a scheduling algorithm");
  std::string sch_input, sch_output, sch_algo = "mean";
  double sch_p = 0;
  sch->add_option("--input", sch_input, "Instance file")->required();
  sch->add_option("--algo", sch_algo, "udg|groups|online|mean")
      ->check(CLI::IsMember({"udg", "groups", "online", "mean"}));
  sch->add_option("--p", sch_p, "Certification level for uniform-power algos");
  sch->add_option("--output", sch_output, "Schedule file");

  // ---- capacity ----
  auto* cap = app.add_subcommand("capacity", "Run a capacity algorithm");
  std::string cap_input, cap_output, cap_algo = "mean";
  bool cap_weighted = false;
  std::uint64_t cap_seed = 0;
  cap->add_option("--input", cap_input, "Instance file")->required();
  cap->add_option("--algo", cap_algo, "udg|random|mean")
      ->check(CLI::IsMember({"udg", "random", "mean"}));
  cap->add_flag("--weighted", cap_weighted, "Maximize weight, not cardinality");
  cap->add_option("--seed", cap_seed, "Seed (random algo)");
  cap->add_option("--output", cap_output, "Result file");

  // ---- oracle ----
  auto* orc = app.add_subcommand("oracle", "Brute-force exact optimum");
  std::string orc_input, orc_problem = "schedule", orc_feas = "pc",
              orc_power = "uniform";
  orc->add_option("--input", orc_input, "Instance file")->required();
  orc->add_option("--problem", orc_problem, "schedule|capacity|wcapacity")
      ->check(CLI::IsMember({"schedule", "capacity", "wcapacity"}));
  orc->add_option("--feas", orc_feas, "fixed|pc")
      ->check(CLI::IsMember({"fixed", "pc"}));
  orc->add_option("--power", orc_power, "Power assignment for --feas fixed");

  // ---- compare ----
  auto* cmp = app.add_subcommand("compare", "Algorithm vs oracle ratio");
  std::string cmp_input, cmp_algo = "mean", cmp_problem = "schedule";
  std::uint64_t cmp_seed = 0;
  cmp->add_option("--input", cmp_input, "Instance file")->required();
  cmp->add_option("--algo", cmp_algo, "udg|groups|online|mean|random")
      ->check(CLI::IsMember({"udg", "groups", "online", "mean", "random"}));
  cmp->add_option("--problem", cmp_problem, "schedule|capacity")
      ->check(CLI::IsMember({"schedule", "capacity"}));
  cmp->add_option("--seed", cmp_seed, "Seed (random algo)");

  // ---- bound ----
  auto* bnd = app.add_subcommand("bound", "Print the instance's constants");
  std::string bnd_input;
  double bnd_p = 0;
  bnd->add_option("--input", bnd_input, "Instance file")->required();
  bnd->add_option("--p", bnd_p, "Signal level (default: instance beta)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    auto wall_ms = [&t0] {
      return std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - t0)
          .count();
    };

    if (gen->parsed()) {
      Instance inst;
      FadingParams fading{gen_alpha, {gen_dim, gen_packing}};
      const Mode mode =
          gen_mode == "bi" ? Mode::bidirectional : Mode::unidirectional;
      if (gen_kind == "random") {
        inst = gen_random(gen_n, gen_side, gen_lmin, gen_lmax, gen_seed,
                          fading, gen_beta, mode, gen_wmin, gen_wmax);
      } else if (gen_kind == "equilength") {
        inst = gen_random(gen_n, gen_side, gen_lmin, gen_lmin, gen_seed,
                          fading, gen_beta, mode, gen_wmin, gen_wmax);
      } else if (gen_kind == "grid") {
        inst = gen_grid(gen_m, gen_q, fading, gen_beta);
      } else {
        LowerBoundVariant variant = LowerBoundVariant::forward;
        if (gen_variant == "reversed") variant = LowerBoundVariant::reversed;
        if (gen_variant == "combined") variant = LowerBoundVariant::combined;
        inst = gen_lowerbound(gen_n, gen_t, gen_c1, gen_alpha, variant);
        inst.mode = mode;
      }
      const std::string text = serialize_instance(inst);
      if (gen_output.empty())
        std::cout << text;
      else
        write_file(gen_output, text);
      return 0;
    }

    if (check->parsed()) {
      const Instance inst = parse_instance(read_file(chk_input));
      warn_small_beta(inst);
      if (!chk_schedule.empty()) {
        const Schedule sched = parse_schedule(read_file(chk_schedule), inst);
        Instance checked = inst;
        checked.mode = sched.mode;
        std::vector<int> seen;
        for (const auto& slot : sched.slots)
          for (int v : slot) seen.push_back(v);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
          throw validation_error("check: link appears in two slots");
        for (size_t i = 0; i < sched.slots.size(); ++i) {
          if (!is_p_signal(checked, sched.slots[i], sched.power,
                           sched.p_certified)) {
            std::cerr << "slot " << i << " fails p = " << sched.p_certified
                      << "\n";
            return 1;
          }
        }
        json rep = base_report(inst, "check");
        rep["slots"] = sched.slots.size();
        rep["p_certified"] = sched.p_certified;
        rep["result"] = "feasible";
        sink.emit(rep);
        return 0;
      }
      if (chk_subset.empty())
        throw parse_error("check: need --schedule or --subset");
      std::vector<int> S;
      std::istringstream ss(chk_subset);
      std::string tok;
      while (std::getline(ss, tok, ',')) S.push_back(inst.index_of(std::stoi(tok)));
      const PowerAssignment P = parse_power(chk_power, inst.fading.alpha);
      validate_power(P, inst);
      const bool ok = chk_p > 0 ? is_p_signal(inst, S, P, chk_p)
                                : is_sinr_feasible(inst, S, P);
      json rep = base_report(inst, "check");
      rep["subset_size"] = S.size();
      rep["result"] = ok ? "feasible" : "infeasible";
      sink.emit(rep);
      return ok ? 0 : 1;
    }

    if (sch->parsed()) {
      const Instance inst = parse_instance(read_file(sch_input));
      warn_small_beta(inst);
      const double p = sch_p > 0 ? sch_p : default_equilength_p(inst);
      const Schedule sched = run_schedule_algo(inst, sch_algo, p);
      // Re-verify before anything is emitted.
      verify_schedule(inst, sched);
      json rep = base_report(inst, sch_algo);
      rep["params"] = {{"power", power_to_json(sched.power)},
                       {"mode", to_string(sched.mode)}};
      rep["slots"] = sched.slots.size();
      rep["p_certified"] = sched.p_certified;
      const json sj = schedule_to_json(inst, sched);
      rep["slot_max_affectance"] =
          sj.at("diagnostics").at("slot_max_affectance");
      rep["wall_ms"] = wall_ms();
      if (!sch_output.empty()) write_file(sch_output, sj.dump(2) + "\n");
      sink.emit(rep);
      return 0;
    }

    if (cap->parsed()) {
      const Instance inst = parse_instance(read_file(cap_input));
      warn_small_beta(inst);
      const auto L = all_links(inst);
      CapacityResult res;
      if (cap_algo == "udg")
        res = cap_weighted ? weighted_capacity_equilength(inst, L)
                           : capacity_equilength(inst, L);
      else if (cap_algo == "random")
        res = capacity_random_group(inst, L, cap_seed);
      else
        res = cap_weighted ? weighted_capacity_meanpower(inst, L)
                           : capacity_meanpower(inst, L);
      if (!res.chosen.empty() && !is_sinr_feasible(inst, res.chosen, res.power))
        throw internal_error("capacity result failed re-verification");
      json rep = base_report(inst, res.algorithm);
      rep["params"] = {{"power", power_to_json(res.power)},
                       {"mode", to_string(inst.mode)}};
      rep["seed"] = cap_seed;
      rep["capacity"] = res.chosen.size();
      rep["weight"] = res.total_weight;
      rep["wall_ms"] = wall_ms();
      if (!cap_output.empty())
        write_file(cap_output, capacity_to_json(inst, res).dump(2) + "\n");
      sink.emit(rep);
      return 0;
    }

    if (orc->parsed()) {
      const Instance inst = parse_instance(read_file(orc_input));
      const auto L = all_links(inst);
      const Feasibility feas = orc_feas == "pc" ? Feasibility::power_control
                                                : Feasibility::fixed_power;
      const PowerAssignment P = parse_power(orc_power, inst.fading.alpha);
      const OracleBudget budget = budget_from_env();
      json rep = base_report(inst, "oracle-" + orc_problem);
      rep["feas"] = orc_feas;
      if (orc_problem == "schedule") {
        rep["slots"] = opt_schedule(inst, L, feas, P, budget).slot_count;
      } else if (orc_problem == "capacity") {
        rep["capacity"] = opt_capacity(inst, L, feas, P, budget).size();
      } else {
        const auto best = opt_weighted_capacity(inst, L, feas, P, budget);
        rep["capacity"] = best.size();
        rep["weight"] = total_weight(inst, best);
      }
      rep["wall_ms"] = wall_ms();
      sink.emit(rep);
      return 0;
    }

    if (cmp->parsed()) {
      const Instance inst = parse_instance(read_file(cmp_input));
      warn_small_beta(inst);
      const auto L = all_links(inst);
      const OracleBudget budget = budget_from_env();
      const PowerAssignment uni = PowerAssignment::uniform();
      json rep = base_report(inst, cmp_algo);
      rep["seed"] = cmp_seed;
      if (cmp_problem == "schedule") {
        const Schedule sched =
            run_schedule_algo(inst, cmp_algo, default_equilength_p(inst));
        const int opt =
            opt_schedule(inst, L, Feasibility::power_control, uni, budget)
                .slot_count;
        rep["slots"] = sched.slots.size();
        rep["oracle"] = opt;
        rep["ratio"] = opt > 0 ? double(sched.slots.size()) / opt : 1.0;
      } else {
        CapacityResult res;
        if (cmp_algo == "udg")
          res = capacity_equilength(inst, L);
        else if (cmp_algo == "random")
          res = capacity_random_group(inst, L, cmp_seed);
        else
          res = capacity_meanpower(inst, L);
        const auto opt =
            opt_capacity(inst, L, Feasibility::power_control, uni, budget);
        rep["capacity"] = res.chosen.size();
        rep["oracle"] = opt.size();
        rep["ratio"] = res.chosen.empty()
                           ? 0.0
                           : double(opt.size()) / res.chosen.size();
      }
      rep["wall_ms"] = wall_ms();
      sink.emit(rep);
      return 0;
    }

    if (bnd->parsed()) {
      const Instance inst = parse_instance(read_file(bnd_input));
      const double p = bnd_p > 0 ? bnd_p : inst.beta;
      const auto L = all_links(inst);
      const ClassPartition part = well_separated_classes(inst, L);
      json rep = base_report(inst, "bound");
      rep["alpha"] = inst.fading.alpha;
      rep["beta"] = inst.beta;
      rep["p"] = p;
      rep["c_prime"] = c_prime(inst.fading);
      rep["z1"] = z1(p, inst.fading);
      rep["z2"] = z2(p, inst.fading.alpha);
      rep["tau"] = part.tau;
      rep["lambda"] = part.lambda_sep;
      rep["M"] = part.M;
      if (p > 1 && inst.beta > 1)
        rep["equilength_ratio_bound"] =
            equilength_ratio_bound(p, inst.beta, inst.fading);
      sink.emit(rep);
      return 0;
    }
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
