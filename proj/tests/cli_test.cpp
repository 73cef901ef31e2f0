#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "table.hpp"

using entprobe::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// Minimal CSV reader: comma separated, quoted cells may hold commas.
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
      const char c = line[k];
      if (quoted) {
        if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
          cell += '"';
          ++k;
        } else if (c == '"') {
          quoted = false;
        } else {
          cell += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::map<std::string, std::string> row_map(const std::vector<std::vector<std::string>>& csv,
                                           std::size_t row) {
  std::map<std::string, std::string> m;
  for (std::size_t k = 0; k < csv[0].size(); ++k) m[csv[0][k]] = csv[row][k];
  return m;
}

}  // namespace

TEST(format, shortest_round_trip) {
  for (double v : {0.1, 1.0 / 3.0, std::numbers::pi, 1e-300, -2.5e17, 0.14644660940672627}) {
    const std::string s = entprobe::cli::format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(entprobe::cli::format_double(0.5), "0.5");
}

TEST(cli, pauli_demo_gram_is_identity) {
  const auto r = invoke({"pauli-demo"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_csv(r.out);
  ASSERT_EQ(csv.size(), 17u);
  EXPECT_EQ(csv[0], (std::vector<std::string>{"g", "h", "gram_re", "gram_im", "p_error"}));
  for (std::size_t k = 1; k < csv.size(); ++k) {
    auto row = row_map(csv, k);
    const bool diag = row["g"] == row["h"];
    EXPECT_NEAR(std::stod(row["gram_re"]), diag ? 1.0 : 0.0, 1e-12);
    EXPECT_NEAR(std::stod(row["gram_im"]), 0.0, 1e-12);
    if (!diag) EXPECT_NEAR(std::stod(row["p_error"]), 0.0, 1e-12);
  }
}

TEST(cli, ncopies_sixth_turn_needs_three) {
  const auto r = invoke({"ncopies", "--u1", "diag:0,1.0471975511965976", "--u2", "pauli:i",
                         "--n-max", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_csv(r.out);
  ASSERT_EQ(csv.size(), 4u);
  EXPECT_EQ(row_map(csv, 2)["perfect"], "false");
  EXPECT_EQ(row_map(csv, 3)["perfect"], "true");
  EXPECT_EQ(row_map(csv, 3)["n"], "3");
  EXPECT_NEAR(std::stod(row_map(csv, 3)["p_error"]), 0.0, 1e-12);
}

TEST(cli, cv_estimate_vacuum_baseline) {
  const auto r = invoke({"cv-estimate", "--x", "0", "--nbar", "0", "--trials", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_csv(r.out);
  ASSERT_EQ(csv.size(), 3u);
  for (std::size_t k = 1; k < 3; ++k) {
    auto row = row_map(csv, k);
    EXPECT_EQ(std::stod(row["analytic"]), 1.0);
    EXPECT_LE(std::abs(std::stod(row["z_score"])), 4.0);
  }
}

TEST(cli, json_round_trip_and_metadata) {
  const std::vector<std::string> args{"--format", "json", "cv-estimate", "--x", "0.4",
                                      "--nbar",   "0.2",  "--trials",    "5000", "--seed", "99"};
  const auto r = invoke(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["metadata"]["seed"], 99);
  EXPECT_EQ(doc["metadata"]["command"], "cv-estimate");
  EXPECT_EQ(doc["metadata"]["flags"]["--x"], "0.4");
  ASSERT_EQ(doc["rows"].size(), 2u);

  // Same seed in CSV: identical numbers after parsing both.
  std::vector<std::string> csv_args(args.begin() + 2, args.end());
  const auto csv = read_csv(invoke(csv_args).out);
  for (std::size_t k = 0; k < 2; ++k) {
    auto row = row_map(csv, k + 1);
    for (const char* col : {"empirical", "analytic", "standard_error", "z_score"}) {
      EXPECT_EQ(std::stod(row[col]), doc["rows"][k][col].get<double>()) << col;
    }
  }
  // Reproducible end to end.
  EXPECT_EQ(invoke(args).out, r.out);
}

TEST(cli, csv_values_survive_reprinting) {
  const auto r = invoke({"threshold-scan", "--x-grid", "0:0.95:7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_csv(r.out);
  ASSERT_EQ(csv.size(), 8u);
  for (std::size_t k = 1; k < csv.size(); ++k) {
    for (const auto& cell : csv[k]) {
      EXPECT_EQ(entprobe::cli::format_double(std::stod(cell)), cell);
    }
    auto row = row_map(csv, k);
    EXPECT_NEAR(std::stod(row["ppt_nbar_per_mode"]), std::stod(row["ppt_nbar_closed_form"]),
                1e-10);
  }
}

TEST(cli, discriminate_and_file_input) {
  const auto path = std::filesystem::temp_directory_path() / "entprobe_cli_test_u.json";
  {
    std::ofstream f(path);
    f << "[[[0,0],[1,0]],[[1,0],[0,0]]]";
  }
  const auto r = invoke({"discriminate", "--u1", "file:" + path.string(), "--u2", "pauli:z"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  auto row = row_map(read_csv(r.out), 1);
  EXPECT_NEAR(std::stod(row["r"]), 0.0, 1e-12);
  EXPECT_NEAR(std::stod(row["p_error"]), 0.0, 1e-12);

  const auto q = invoke({"discriminate", "--u1", "diag:0,1.5707963267948966", "--u2", "pauli:i"});
  ASSERT_EQ(q.code, 0) << q.err;
  auto qrow = row_map(read_csv(q.out), 1);
  EXPECT_NEAR(std::stod(qrow["r"]), std::cos(std::numbers::pi / 4), 1e-12);
  EXPECT_NEAR(std::stod(qrow["p_error"]), 0.14644660940672627, 1e-12);
}

TEST(cli, covariant_and_wh_group) {
  const auto r = invoke({"covariant", "--d", "3", "--schmidt-spec", "max"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto row = row_map(read_csv(r.out), 1);
  EXPECT_NEAR(std::stod(row["chi"]), 2 * std::log2(3.0), 1e-10);
  EXPECT_EQ(row["span_dimension"], "9");
  EXPECT_NEAR(std::stod(row["likelihood"]), 3.0, 1e-12);

  const auto w = invoke({"wh-group", "--d", "4"});
  ASSERT_EQ(w.code, 0) << w.err;
  const auto csv = read_csv(w.out);
  ASSERT_EQ(csv.size(), 17u);
  for (std::size_t k = 1; k < csv.size(); ++k) {
    EXPECT_LT(std::stod(row_map(csv, k)["max_gram_deviation"]), 1e-10);
  }
}

TEST(cli, stability_defaults_to_matched_budget) {
  const auto r = invoke({"stability", "--s", "2", "--phi-grid", "0,0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_csv(r.out);
  ASSERT_EQ(csv.size(), 3u);
  auto a = row_map(csv, 1), b = row_map(csv, 2);
  EXPECT_NEAR(std::stod(a["squeezed_photons"]), std::stod(a["entangled_photons"]), 1e-10);
  EXPECT_NEAR(std::stod(b["squeezed_variance"]) / std::stod(a["squeezed_variance"]),
              8.443688790843755, 1e-10);
}

TEST(cli, usage_errors_exit_two_with_one_line) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"nope"},
           {"wh-group", "--d", "3", "--bogus"},
           {"wh-group", "--d", "1"},
           {"cv-estimate", "--x", "1", "--nbar", "0"},
           {"cv-estimate", "--x", "0.5", "--nbar", "-1"},
           {"discriminate", "--u1", "diag:0,1", "--u2", "pauli:q"},
           {"discriminate", "--u1", "file:/nonexistent.json", "--u2", "pauli:x"},
           {"discriminate", "--u1", "pauli:x", "--u2", "wh:3,1,0"},
           {"ncopies", "--u1", "pauli:x", "--u2", "pauli:z", "--n-max", "0"},
           {"--format", "xml", "pauli-demo"},
           {"threshold-scan", "--x-grid", "0:1.2:3"},
       }) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    EXPECT_TRUE(r.out.empty());
    ASSERT_FALSE(r.err.empty());
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
  }
}

TEST(cli, output_file) {
  const auto path = std::filesystem::temp_directory_path() / "entprobe_cli_test_out.csv";
  const auto r = invoke({"--output", path.string(), "pauli-demo"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "g,h,gram_re,gram_im,p_error");
  std::filesystem::remove(path);
}
