#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "balpack/json_io.hpp"
#include "balpack/mip.hpp"

namespace {

constexpr const char* kVersion = "balpack 1.0.0";

// exit codes
constexpr int kFeasible = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;
constexpr int kGuardExceeded = 3;

using balpack::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw balpack::Error(balpack::Errc::invalid_input, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw balpack::Error(balpack::Errc::invalid_input, std::string("bad JSON: ") + e.what());
  }
  return j;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out.good()) throw balpack::Error(balpack::Errc::invalid_input, "cannot write " + path);
  out << text;
}

void emit(const std::string& path, const json& j) { write_output(path, j.dump(2) + "\n"); }

std::vector<std::int64_t> sizes_from_json(const json& j) {
  if (!j.is_object() || !j.contains("sizes"))
    throw balpack::Error(balpack::Errc::invalid_input, "input needs a \"sizes\" array");
  std::vector<std::int64_t> sizes;
  for (const auto& v : j.at("sizes")) {
    if (!v.is_number_integer())
      throw balpack::Error(balpack::Errc::invalid_input, "sizes must be integers");
    sizes.push_back(v.get<std::int64_t>());
  }
  return sizes;
}

// SplitMix64, kept identical to the test suite's generator so seeds mean the
// same thing everywhere.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

int run(int argc, char** argv) {
  CLI::App app{"balanced fractional bin packing toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string in_path, out_path, sol_path, model, kind;
  int bins = 0, split = 0, stages = 2;
  bool symmetry = false;

  auto* solve_bmbp_cmd = app.add_subcommand("solve-bmbp", "two-stage balanced plan");
  solve_bmbp_cmd->add_option("-i,--input", in_path, "instance JSON")->required();
  solve_bmbp_cmd->add_option("-o,--output", out_path, "plan JSON (default stdout)");

  auto* solve_exact_cmd = app.add_subcommand("solve-exact", "exact split-pattern decision");
  solve_exact_cmd->add_option("-i,--input", in_path, "instance JSON")->required();
  solve_exact_cmd->add_option("-o,--output", out_path, "witness JSON (default stdout)");
  solve_exact_cmd->add_option("--bins", bins, "bin count (overrides the instance)");
  solve_exact_cmd->add_option("--split", split, "split bound (overrides the instance)");

  auto* verify_cmd = app.add_subcommand("verify", "check a solution against its model");
  verify_cmd->add_option("--model", model, "bmbp or kbfbp")->required();
  verify_cmd->add_option("-i,--input", in_path, "instance JSON")->required();
  verify_cmd->add_option("-s,--solution", sol_path, "plan or witness JSON")->required();
  verify_cmd->add_option("-o,--output", out_path, "report JSON (default stdout)");
  verify_cmd->add_option("--split", split, "split bound for kbfbp");
  verify_cmd->add_option("--stages", stages, "stage count for bmbp");

  auto* reduce_cmd = app.add_subcommand("reduce", "build a hardness-reduction instance");
  reduce_cmd->add_option("--kind", kind, "partition or subset-third")->required();
  reduce_cmd->add_option("-i,--input", in_path, "JSON with a \"sizes\" array")->required();
  reduce_cmd->add_option("-o,--output", out_path, "reduced instance JSON (default stdout)");

  auto* extract_cmd = app.add_subcommand("extract", "turn a witness into a certificate");
  extract_cmd->add_option("-i,--input", in_path, "reduced instance JSON")->required();
  extract_cmd->add_option("-s,--solution", sol_path, "witness JSON")->required();
  extract_cmd->add_option("-o,--output", out_path, "certificate JSON (default stdout)");

  auto* export_cmd = app.add_subcommand("export-mip", "write an LP-format model");
  export_cmd->add_option("--kind", kind, "classic_bp, bfbp, kbfbp or bmbp")->required();
  export_cmd->add_option("-i,--input", in_path, "instance JSON")->required();
  export_cmd->add_option("-o,--output", out_path, "model file (default stdout)");
  export_cmd->add_option("--bins", bins, "bin count (overrides the instance)");
  export_cmd->add_option("--split", split, "split bound");
  export_cmd->add_option("--stages", stages, "stage count");
  export_cmd->add_flag("--symmetry-breaking", symmetry, "add y_j >= y_j+1 rows");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
  oracle_cmd->add_option("--kind", kind, "partition, subset-third or binpacking")->required();
  oracle_cmd->add_option("-i,--input", in_path, "JSON input")->required();
  oracle_cmd->add_option("--bins", bins, "bin count for binpacking");
  oracle_cmd->add_option("-o,--output", out_path, "result JSON (default stdout)");

  std::int64_t bench_n = 1000, bench_seed = 1, bench_base = 100, bench_cap = 50;
  auto* bench_cmd = app.add_subcommand("bench", "time the two-stage solver on random input");
  bench_cmd->add_option("--n", bench_n, "object count");
  bench_cmd->add_option("--seed", bench_seed, "RNG seed");
  bench_cmd->add_option("--base", bench_base, "smallest possible size");
  bench_cmd->add_option("--cap", bench_cap, "integer capacity headroom above base");

  CLI11_PARSE(app, argc, argv);

  if (solve_bmbp_cmd->parsed()) {
    balpack::Instance inst = balpack::instance_from_json(read_json(in_path));
    balpack::TwoStagePlan plan = balpack::solve_bmbp(inst);
    emit(out_path, balpack::plan_to_json(plan));
    return kFeasible;
  }

  if (solve_exact_cmd->parsed()) {
    balpack::Instance inst = balpack::instance_from_json(read_json(in_path));
    int m = bins > 0 ? bins : inst.bins.value_or(0);
    int k = split > 0 ? split : inst.split_bound.value_or(0);
    if (m < 1 || k < 1)
      throw balpack::Error(balpack::Errc::invalid_input, "needs --bins and --split (or instance fields)");
    auto w = balpack::solve_kbfbp_decision(inst, m, k);
    if (!w) {
      std::cerr << "no witness\n";
      return kInfeasible;
    }
    emit(out_path, balpack::witness_to_json(*w));
    return kFeasible;
  }

  if (verify_cmd->parsed()) {
    balpack::Instance inst = balpack::instance_from_json(read_json(in_path));
    json sol = read_json(sol_path);
    balpack::VerificationReport rep;
    if (model == "kbfbp") {
      int k = split > 0 ? split : inst.split_bound.value_or(0);
      if (k < 1) throw balpack::Error(balpack::Errc::invalid_input, "kbfbp needs --split");
      rep = balpack::check_kbfbp(inst, balpack::witness_from_json(sol), k);
    } else if (model == "bmbp") {
      balpack::TwoStagePlan plan = balpack::plan_from_json(sol);
      rep = balpack::check_bmbp(inst, plan.assignments, plan.bins, stages);
    } else {
      throw balpack::Error(balpack::Errc::invalid_input, "--model must be bmbp or kbfbp");
    }
    emit(out_path, balpack::report_to_json(rep));
    return rep.ok ? kFeasible : kInfeasible;
  }

  if (reduce_cmd->parsed()) {
    auto sizes = sizes_from_json(read_json(in_path));
    balpack::ReducedInstance red;
    if (kind == "partition")
      red = balpack::partition_to_2bfbp(sizes);
    else if (kind == "subset-third")
      red = balpack::subsetsum_to_3bfbp(sizes);
    else
      throw balpack::Error(balpack::Errc::invalid_input, "--kind must be partition or subset-third");
    emit(out_path, balpack::reduced_to_json(red));
    return kFeasible;
  }

  if (extract_cmd->parsed()) {
    balpack::ReducedInstance red = balpack::reduced_from_json(read_json(in_path));
    balpack::KbfbpWitness w = balpack::witness_from_json(read_json(sol_path));
    json cert;
    if (red.kind == balpack::ReductionKind::partition) {
      auto [a1, a2] = balpack::extract_partition(w, red);
      cert["a1"] = a1;
      cert["a2"] = a2;
    } else {
      cert["subset"] = balpack::extract_subset_third(w, red);
    }
    emit(out_path, cert);
    return kFeasible;
  }

  if (export_cmd->parsed()) {
    balpack::Instance inst = balpack::instance_from_json(read_json(in_path));
    balpack::ModelKind mk;
    if (kind == "classic_bp")
      mk = balpack::ModelKind::classic_bp;
    else if (kind == "bfbp")
      mk = balpack::ModelKind::bfbp;
    else if (kind == "kbfbp")
      mk = balpack::ModelKind::kbfbp;
    else if (kind == "bmbp")
      mk = balpack::ModelKind::bmbp;
    else
      throw balpack::Error(balpack::Errc::invalid_input, "unknown model kind '" + kind + "'");
    balpack::MipOptions opts;
    if (bins > 0) opts.bins = bins;
    if (split > 0) opts.split_bound = split;
    if (export_cmd->count("--stages") > 0) opts.stages = stages;
    opts.symmetry_breaking = symmetry;
    write_output(out_path, balpack::export_model(inst, mk, opts));
    return kFeasible;
  }

  if (oracle_cmd->parsed()) {
    json j = read_json(in_path);
    json out;
    int exit_code = kFeasible;
    if (kind == "partition") {
      auto p = balpack::brute_force_partition(sizes_from_json(j));
      out["feasible"] = p.has_value();
      if (p) {
        out["a1"] = p->first;
        out["a2"] = p->second;
      } else {
        exit_code = kInfeasible;
      }
    } else if (kind == "subset-third") {
      auto s = balpack::brute_force_subset_third(sizes_from_json(j));
      out["feasible"] = s.has_value();
      if (s)
        out["subset"] = *s;
      else
        exit_code = kInfeasible;
    } else if (kind == "binpacking") {
      balpack::Instance inst = balpack::instance_from_json(j);
      int m = bins > 0 ? bins : inst.bins.value_or(0);
      if (m < 1) throw balpack::Error(balpack::Errc::invalid_input, "binpacking needs --bins");
      bool feasible = balpack::brute_force_binpacking(inst, m);
      out["feasible"] = feasible;
      if (!feasible) exit_code = kInfeasible;
    } else {
      throw balpack::Error(balpack::Errc::invalid_input,
                           "--kind must be partition, subset-third or binpacking");
    }
    emit(out_path, out);
    return exit_code;
  }

  if (bench_cmd->parsed()) {
    if (bench_n < 1 || bench_base < 1 || bench_cap < 0)
      throw balpack::Error(balpack::Errc::invalid_input, "bench parameters must be positive");
    // sizes in [base, base+cap] keep the size spread within the capacity
    SplitMix64 rng{static_cast<std::uint64_t>(bench_seed)};
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(bench_n));
    for (auto& s : sizes) s = rng.range(bench_base, bench_base + bench_cap);
    balpack::Instance inst = balpack::validate_instance(sizes, balpack::Rational(bench_base + bench_cap));

    auto t0 = std::chrono::steady_clock::now();
    balpack::TwoStagePlan plan = balpack::solve_bmbp(inst);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    json out;
    out["n"] = bench_n;
    out["seed"] = bench_seed;
    out["bins"] = plan.bins;
    out["tilde_c"] = balpack::rational_to_json(plan.tilde_c);
    out["assignments"] = plan.assignments.size();
    emit("", out);
    std::cerr << "solve-bmbp: " << ms << " ms\n";
    return kFeasible;
  }

  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const balpack::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == balpack::Errc::instance_too_large ? kGuardExceeded : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
