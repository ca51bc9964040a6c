#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ermrer/analysis.hpp"
#include "ermrer/experiment.hpp"
#include "ermrer/hog.hpp"
#include "ermrer/idx.hpp"
#include "ermrer/pca.hpp"
#include "ermrer/quadrature.hpp"
#include "ermrer/serialization.hpp"
#include "ermrer/type1.hpp"
#include "ermrer/type2.hpp"
#include "ermrer/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIngestion = 4;

int cmd_solve(const std::string& fixture_path, double lambda,
              const std::string& type) {
  ermrer::Fixture fx;
  try {
    fx = ermrer::load_fixture(fixture_path);
  } catch (const ermrer::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return kExitInput;
  }

  nlohmann::json out;
  try {
    std::vector<double> rn;
    if (type == "I") {
      auto sol = ermrer::solve_type1(fx.measure, fx.risks, lambda);
      out["lambda"] = sol.lambda;
      out["log_partition"] = sol.log_partition;
      rn = sol.rn_derivative;
    } else {
      auto sol = ermrer::solve_type2(fx.measure, fx.risks, lambda);
      out["lambda"] = sol.lambda;
      out["beta"] = sol.beta;
      rn = sol.rn_derivative;
    }
    out["rn_derivative"] = rn;
    out["expected_risk"] = ermrer::expected_risk(rn, fx.measure, fx.risks);
    out["kl_p_q"] = ermrer::kl(rn, fx.measure, ermrer::KlDirection::P_to_Q);
    out["kl_q_p"] = ermrer::kl(rn, fx.measure, ermrer::KlDirection::Q_to_P);
  } catch (const ermrer::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitSolver;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, int instances,
               const std::vector<std::size_t>& sizes, double perturb_beta) {
  ermrer::VerifyOptions opt;
  opt.seed = seed;
  opt.instances = instances;
  if (!sizes.empty()) opt.sizes = sizes;
  opt.perturb_beta = perturb_beta;

  auto results = ermrer::run_verify(opt);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s %s %.6g %.6g\n", r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.max_err, r.tolerance);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitPropertyFailure;
}

int cmd_transform(const std::string& fixture_path, double lambda,
                  const std::string& kind) {
  ermrer::Fixture fx;
  try {
    fx = ermrer::load_fixture(fixture_path);
  } catch (const ermrer::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    auto t = ermrer::transform_risk(
        fx.measure, fx.risks, lambda,
        kind == "V" ? ermrer::TransformKind::V : ermrer::TransformKind::W);
    nlohmann::json out;
    out["lambda"] = t.lambda;
    out["kind"] = kind;
    out["values"] = t.values;
    std::cout << out.dump(2) << "\n";
  } catch (const ermrer::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_oracle() {
  auto r1 = ermrer::oracle_example1();
  auto r2 = ermrer::oracle_example2();
  auto r3 = ermrer::oracle_example3();
  nlohmann::json out;
  out["ex1"] = {{"boundary_integral", r1.divergence_integral},
                {"kbar_at_half", r1.kbar_at_half}};
  out["ex2"] = {{"divergent", r2.divergent}};
  out["ex3"] = {{"max_beta_error", r3.max_beta_error}};
  std::cout << out.dump(2) << "\n";
  bool ok = std::abs(r1.divergence_integral - 2.0) <= 1e-4 &&
            std::abs(r1.kbar_at_half) <= 1e-6 && r2.divergent &&
            r3.max_beta_error <= 1e-10;
  return ok ? kExitOk : kExitPropertyFailure;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path,
                   const std::string& images, const std::string& labels,
                   const std::vector<int>& keep, std::uint64_t seed) {
  ermrer::ExperimentConfig cfg;
  cfg.lambda_grid = ermrer::default_lambda_grid();
  cfg.rng_seed = seed;
  try {
    if (!config_path.empty()) cfg = ermrer::load_experiment_config(config_path);
  } catch (const ermrer::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return kExitInput;
  }

  ermrer::Dataset pool_train, pool_test;
  try {
    if (!images.empty()) {
      if (keep.size() != 2) {
        std::cerr << "InvalidConfig: --keep needs exactly two labels\n";
        return kExitInput;
      }
      auto records =
          ermrer::ingest_idx(images, labels, {keep[0], keep[1]});
      if (records.size() < 4) {
        std::cerr << "EmptyDataset: too few records after filtering\n";
        return kExitIngestion;
      }
      std::vector<std::vector<double>> feats;
      std::vector<int> labs;
      for (const auto& [im, lab] : records) {
        feats.push_back(ermrer::hog(im).features);
        labs.push_back(lab);
      }
      auto proj = ermrer::pca_fit(feats);
      ermrer::Dataset all;
      for (std::size_t i = 0; i < feats.size(); ++i) {
        auto x = ermrer::pca_project(proj, feats[i]);
        all.patterns.push_back({x[0], x[1]});
        all.labels.push_back(labs[i]);
      }
      // Deterministic front/back split of the ingested records.
      std::size_t cut = all.size() * 4 / 5;
      for (std::size_t i = 0; i < all.size(); ++i) {
        auto& dst = i < cut ? pool_train : pool_test;
        dst.patterns.push_back(all.patterns[i]);
        dst.labels.push_back(all.labels[i]);
      }
    } else {
      pool_train = ermrer::generate_synthetic(4 * cfg.train_size,
                                              cfg.rng_seed ^ 0x9e3779b9ull);
      pool_test = ermrer::generate_synthetic(4 * cfg.test_size,
                                             cfg.rng_seed ^ 0x7f4a7c15ull);
    }
  } catch (const ermrer::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitIngestion;
  }

  ermrer::SweepSummary summary;
  std::vector<ermrer::SweepRow> rows;
  try {
    rows = ermrer::run_sweep(cfg, pool_train, pool_test, &summary);
  } catch (const ermrer::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitSolver;
  }
  std::string csv = ermrer::sweep_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path);
    out << csv;
  }
  std::cerr << "summary: mean gap type I " << summary.mean_gap_type1
            << ", type II " << summary.mean_gap_type2 << "; type II gap lower at "
            << summary.lambdas_type2_lower_gap.size() << "/"
            << cfg.lambda_grid.size() << " lambda values\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative-entropy-regularized ERM solver and experiment tool"};
  app.require_subcommand(1);

  double lambda = 1.0;
  std::string type = "II";
  std::string kind = "V";
  std::string fixture_path, config_path, out_path, images, labels;
  std::vector<int> keep;
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 0;
  int instances = 20;
  double perturb_beta = 0.0;

  auto* solve = app.add_subcommand("solve", "Solve one fixture");
  solve->add_option("fixture", fixture_path)->required();
  solve->add_option("--lambda", lambda)->required();
  solve->add_option("--type", type)->check(CLI::IsMember({"I", "II"}));

  auto* verify = app.add_subcommand("verify", "Run the property suite");
  verify->add_option("--seed", seed);
  verify->add_option("--instances", instances);
  verify->add_option("--sizes", sizes)->delimiter(',');
  verify->add_option("--perturb-beta", perturb_beta);

  auto* transform = app.add_subcommand("transform", "Emit a transformed risk");
  transform->add_option("fixture", fixture_path)->required();
  transform->add_option("--lambda", lambda)->required();
  transform->add_option("--kind", kind)->check(CLI::IsMember({"V", "W"}));

  app.add_subcommand("oracle", "Run the continuous-example oracles");

  auto* experiment = app.add_subcommand("experiment", "Run the lambda sweep");
  experiment->add_option("--config", config_path);
  experiment->add_option("--out", out_path);
  experiment->add_option("--images", images);
  experiment->add_option("--labels", labels);
  experiment->add_option("--keep", keep)->delimiter(',');
  experiment->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  if (solve->parsed()) return cmd_solve(fixture_path, lambda, type);
  if (verify->parsed()) return cmd_verify(seed, instances, sizes, perturb_beta);
  if (transform->parsed()) return cmd_transform(fixture_path, lambda, kind);
  if (app.get_subcommand("oracle")->parsed()) return cmd_oracle();
  if (experiment->parsed())
    return cmd_experiment(config_path, out_path, images, labels, keep, seed);
  return kExitInput;
}
