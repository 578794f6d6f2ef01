// Command-line front end: config-driven generate / learn / evaluate /
// truthcheck pipelines with machine-readable reports.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hugeobj/generators.hpp"
#include "hugeobj/harness.hpp"

namespace fs = std::filesystem;
using namespace hugeobj;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed_override = -1;
  std::int64_t samples_override = -1;
  std::int64_t truth_override = -1;
  double epsilon_override = -1.0;
  double gamma_override = -1.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "experiment config (JSON)")->required();
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--seed", o.seed_override, "master seed override");
  cmd->add_option("--samples", o.samples_override, "evaluation sample budget override");
  cmd->add_option("--truth-samples", o.truth_override, "truthfulness sample override");
  cmd->add_option("--epsilon", o.epsilon_override, "learner epsilon override");
  cmd->add_option("--gamma", o.gamma_override, "learner gamma override");
}

ExperimentConfig load_config(const CommonOpts& o) {
  ExperimentConfig c = ExperimentConfig::from_json_file(o.config_path);
  if (o.seed_override >= 0) c.master_seed = static_cast<std::uint64_t>(o.seed_override);
  if (o.samples_override >= 0)
    c.evaluation.samples = static_cast<std::uint64_t>(o.samples_override);
  if (o.truth_override >= 0)
    c.evaluation.truth_samples = static_cast<std::uint64_t>(o.truth_override);
  if (o.epsilon_override > 0) c.learner.epsilon = o.epsilon_override;
  if (o.gamma_override > 0) c.learner.gamma = o.gamma_override;
  if (!o.out_dir.empty()) c.out_dir = o.out_dir;
  return c;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void write_report(const ExperimentConfig& c, const RunReport& report) {
  if (c.out_dir.empty()) {
    std::cout << report.canonical_json() << '\n';
    return;
  }
  fs::path dir(c.out_dir);
  write_file(dir / "report.json", report.canonical_json());
  write_file(dir / "gaps.csv", report.gaps_csv());
  std::cout << "report written to " << (dir / "report.json").string() << '\n';
}

// Ground-truth materialization: edge-list files carry one "u v" pair per
// line with zero-padded 8-digit decimal vertex ids.
int cmd_gen(const ExperimentConfig& c) {
  Rng master(c.master_seed);
  Rng gen_rng = master.split();
  const TargetConfig& t = c.target;
  fs::path dir(c.out_dir.empty() ? "." : c.out_dir);
  fs::create_directories(dir);

  auto write_edges = [&](const EdgeList& edges) {
    std::ostringstream out;
    char buf[32];
    for (const auto& [u, v] : edges.edges) {
      std::snprintf(buf, sizeof(buf), "%08llu %08llu\n",
                    static_cast<unsigned long long>(u),
                    static_cast<unsigned long long>(v));
      out << buf;
    }
    write_file(dir / (c.name + ".edges"), out.str());
    std::cout << edges.edges.size() << " ordered edges -> "
              << (dir / (c.name + ".edges")).string() << '\n';
  };
  auto write_support = [&](const std::vector<std::uint8_t>& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table[i]) out << i << '\n';
    write_file(dir / (c.name + ".support"), out.str());
    std::cout << "support file -> " << (dir / (c.name + ".support")).string() << '\n';
  };

  if (t.generator == "random-support-k") {
    std::uint64_t n = t.cardinality ? t.cardinality : (1ULL << t.n_bits);
    GeneratedFunction f = gen_random_support_k(n, t.k, gen_rng);
    write_support(*f.table);
  } else if (t.generator == "planted-union") {
    std::uint64_t n = t.cardinality ? t.cardinality : (1ULL << t.n_bits);
    std::vector<SetSpec> sets;
    for (std::size_t i = 0; i < t.intervals.size(); ++i)
      sets.push_back(SetSpec::interval("I" + std::to_string(i), t.intervals[i].first,
                                       t.intervals[i].second));
    GeneratedFunction f = gen_planted_union(DomainSpec::indexed(n), sets);
    write_support(*f.table);
  } else if (t.generator == "block-model") {
    write_edges(*gen_block_model(t.part_sizes, t.probs, gen_rng).edges);
  } else if (t.generator == "d-regular") {
    std::uint64_t n = t.cardinality ? t.cardinality : (1ULL << t.n_bits);
    write_edges(*gen_d_regular(n, static_cast<int>(t.d), gen_rng).edges);
  } else if (t.generator == "block-regular") {
    write_edges(*gen_block_regular(t.part_sizes, static_cast<int>(t.d), gen_rng).edges);
  } else if (t.generator == "sparse-uniform") {
    write_edges(*gen_sparse_uniform(t.cardinality, t.avg_degree, gen_rng).edges);
  } else if (t.generator == "planted-dense-subgraph") {
    write_edges(
        *gen_planted_dense_subgraph(t.cardinality, t.avg_degree, t.clique, gen_rng).edges);
  } else {
    std::cerr << "gen: unsupported generator " << t.generator << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generative models of huge objects: experiment runner"};
  app.require_subcommand(1);

  CommonOpts gen_o, learn_o, eval_o, truth_o, run_o;
  std::string verify_report, verify_config;

  CLI::App* c_gen = app.add_subcommand("gen", "generate a ground-truth object");
  add_common(c_gen, gen_o);
  CLI::App* c_learn = app.add_subcommand("learn", "run the learner only");
  add_common(c_learn, learn_o);
  CLI::App* c_eval = app.add_subcommand("eval", "learn and evaluate gap report");
  add_common(c_eval, eval_o);
  CLI::App* c_truth = app.add_subcommand("truthcheck", "learn and audit truthfulness");
  add_common(c_truth, truth_o);
  CLI::App* c_run = app.add_subcommand("run", "full pipeline plus verification");
  add_common(c_run, run_o);
  CLI::App* c_verify = app.add_subcommand("verify", "check a written report");
  c_verify->add_option("--report", verify_report, "report.json path")->required();
  c_verify->add_option("--config", verify_config, "config with thresholds")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_gen->parsed()) return cmd_gen(load_config(gen_o));
    if (c_learn->parsed()) {
      ExperimentConfig c = load_config(learn_o);
      c.evaluation.samples = 0;
      c.evaluation.truth_samples = 0;
      RunReport r = run(c);
      write_report(c, r);
      std::cout << "updates=" << r.trace.updates << " audit_calls=" << r.trace.audit_calls
                << " learn_seconds=" << r.learn_seconds << '\n';
      return 0;
    }
    if (c_eval->parsed()) {
      ExperimentConfig c = load_config(eval_o);
      c.evaluation.truth_samples = 0;
      RunReport r = run(c);
      write_report(c, r);
      std::cout << "max_gap=" << r.gaps.max_gap << '\n';
      return 0;
    }
    if (c_truth->parsed()) {
      ExperimentConfig c = load_config(truth_o);
      c.evaluation.samples = 0;
      RunReport r = run(c);
      write_report(c, r);
      bool ok = true;
      for (const auto& t : r.truth) {
        std::cout << t.property << ": " << t.violations << "/" << t.samples_checked
                  << " violations\n";
        ok = ok && t.ok();
      }
      return ok ? 0 : 1;
    }
    if (c_run->parsed()) {
      ExperimentConfig c = load_config(run_o);
      RunReport r = run(c);
      write_report(c, r);
      VerifyResult v = verify(r, c.thresholds);
      for (const auto& f : v.failures) std::cout << "FAIL: " << f << '\n';
      std::cout << (v.pass ? "PASS" : "FAIL") << " max_gap=" << r.gaps.max_gap
                << " updates=" << r.trace.updates << '\n';
      return v.pass ? 0 : 1;
    }
    if (c_verify->parsed()) {
      std::ifstream in(verify_report);
      if (!in) throw std::runtime_error("cannot open " + verify_report);
      std::stringstream ss;
      ss << in.rdbuf();
      RunReport r = RunReport::from_canonical_json(ss.str());
      ExperimentConfig c = ExperimentConfig::from_json_file(verify_config);
      VerifyResult v = verify(r, c.thresholds);
      for (const auto& f : v.failures) std::cout << "FAIL: " << f << '\n';
      std::cout << (v.pass ? "PASS" : "FAIL") << '\n';
      return v.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
