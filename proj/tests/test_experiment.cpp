#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "ermrer/experiment.hpp"
#include "ermrer/idx.hpp"

using namespace ermrer;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.grid_half_width = 50.0;
  cfg.grid_points_per_axis = 21;
  cfg.lambda_grid = {1e-3, 1e-2, 1e-1, 1.0, 10.0};
  cfg.train_size = 200;
  cfg.test_size = 50;
  cfg.repetitions = 2;
  cfg.rng_seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("build_model_grid") {
  ExperimentConfig cfg;
  cfg.grid_points_per_axis = 3;
  cfg.grid_half_width = 1.0;
  cfg.lambda_grid = {1.0};
  auto grid = build_model_grid(cfg);
  REQUIRE(grid.size() == 9);
  REQUIRE(grid.labels.has_value());
  double total = 0.0;
  for (double w : grid.weights) {
    CHECK(w == doctest::Approx(1.0 / 9.0));
    total += w;
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
  for (const auto& c : *grid.labels) {
    CHECK((c[0] == -1.0 || c[0] == 0.0 || c[0] == 1.0));
    CHECK((c[1] == -1.0 || c[1] == 0.0 || c[1] == 1.0));
  }

  ExperimentConfig big;
  big.lambda_grid = {1.0};
  auto g2 = build_model_grid(big);
  CHECK(g2.size() == 40401);

  ExperimentConfig bad;
  bad.lambda_grid = {1.0};
  bad.grid_points_per_axis = 10;  // even
  CHECK_THROWS_AS(build_model_grid(bad), InvalidConfig);
}

TEST_CASE("empirical_risk_profile conventions") {
  ExperimentConfig cfg;
  cfg.grid_points_per_axis = 3;
  cfg.grid_half_width = 1.0;
  cfg.lambda_grid = {1.0};
  auto grid = build_model_grid(cfg);

  Dataset d;
  d.patterns = {{1.0, 0.0}, {-1.0, 0.0}, {2.0, 0.5}};
  d.labels = {1, 0, 1};
  auto l = empirical_risk_profile(grid, d);
  REQUIRE(l.values.size() == 9);

  // theta = (1, 0) separates the data perfectly.
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const auto& th = (*grid.labels)[m];
    if (th[0] == 1.0 && th[1] == 0.0) CHECK(l.values[m] == 0.0);
    // theta = (0, 0): everything ties, predicted label is the first (0),
    // so the errors are exactly the label-1 points.
    if (th[0] == 0.0 && th[1] == 0.0)
      CHECK(l.values[m] == doctest::Approx(2.0 / 3.0));
  }

  // Label flip sends L to 1 - L pointwise.
  Dataset flipped = d;
  for (auto& y : flipped.labels) y = 1 - y;
  auto lf = empirical_risk_profile(grid, flipped);
  for (std::size_t m = 0; m < grid.size(); ++m)
    CHECK(lf.values[m] == doctest::Approx(1.0 - l.values[m]));

  Dataset empty;
  CHECK_THROWS_AS(empirical_risk_profile(grid, empty), EmptyDataset);
}

TEST_CASE("run_sweep shape, ordering and identities") {
  auto cfg = small_config();
  auto train = generate_synthetic(1000, 11);
  auto test = generate_synthetic(300, 13);
  SweepSummary summary;
  auto rows = run_sweep(cfg, train, test, &summary);

  REQUIRE(rows.size() == 2 * 5 * 2);  // reps x lambdas x types

  // Ordering: repetition-major, lambda ascending, I before II.
  std::size_t idx = 0;
  for (int rep = 0; rep < cfg.repetitions; ++rep)
    for (double lambda : cfg.lambda_grid)
      for (bool two : {false, true}) {
        CHECK(rows[idx].repetition == rep);
        CHECK(rows[idx].lambda == lambda);
        CHECK(rows[idx].type_two == two);
        ++idx;
      }

  auto grid = build_model_grid(cfg);
  for (const auto& r : rows) {
    CHECK(r.train_risk >= 0.0);
    CHECK(r.train_risk <= 1.0);
    CHECK(r.test_risk >= 0.0);
    CHECK(r.test_risk <= 1.0);
    CHECK(std::isfinite(r.gap));
    CHECK(r.gap == r.test_risk - r.train_risk);
  }

  // Type-II train risk nondecreasing in lambda within a repetition.
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    double prev = -1.0;
    for (const auto& r : rows)
      if (r.repetition == rep && r.type_two) {
        CHECK(r.train_risk >= prev - 1e-12);
        prev = r.train_risk;
      }
  }
}

TEST_CASE("run_sweep is deterministic per seed") {
  auto cfg = small_config();
  auto train = generate_synthetic(1000, 11);
  auto test = generate_synthetic(300, 13);
  auto a = sweep_csv(run_sweep(cfg, train, test));
  auto b = sweep_csv(run_sweep(cfg, train, test));
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) ==
        "repetition,lambda,type,train_risk,test_risk,gap");
}

TEST_CASE("idx round trip") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "ermrer_idx_test";
  fs::create_directories(dir);
  auto img_path = (dir / "images.idx").string();
  auto lab_path = (dir / "labels.idx").string();

  std::vector<std::pair<ImageMatrix, int>> records(2);
  for (int i = 0; i < kImageSide; ++i)
    for (int j = 0; j < kImageSide; ++j) {
      records[0].first.pixels[i][j] = ((i + j) % 256) / 255.0 > 1.0
                                          ? 1.0
                                          : ((i + j) % 256) / 255.0;
      records[1].first.pixels[i][j] = (i * j % 256) / 255.0;
    }
  records[0].second = 6;
  records[1].second = 7;
  write_idx(img_path, lab_path, records);

  auto loaded = ingest_idx(img_path, lab_path, {6, 7});
  REQUIRE(loaded.size() == 2);
  for (int k = 0; k < 2; ++k) {
    CHECK(loaded[k].second == records[k].second);
    for (int i = 0; i < kImageSide; ++i)
      for (int j = 0; j < kImageSide; ++j)
        CHECK(loaded[k].first.pixels[i][j] == records[k].first.pixels[i][j]);
  }

  // Filtering by labels not present returns an empty list without error.
  auto none = ingest_idx(img_path, lab_path, {1, 2});
  CHECK(none.empty());

  // Corrupt the magic number.
  {
    std::FILE* f = std::fopen(img_path.c_str(), "r+b");
    unsigned char bad[4] = {0xde, 0xad, 0xbe, 0xef};
    std::fwrite(bad, 1, 4, f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(ingest_idx(img_path, lab_path, {6, 7}), BadMagic);
  fs::remove_all(dir);
}
