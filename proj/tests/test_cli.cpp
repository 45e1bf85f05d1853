#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

// Black box tests for the adchain binary: exit codes, CSV schema, flag
// precedence and byte-level determinism. Every case shells out to the real
// executable, so this exercises exactly what a user runs.

namespace {

namespace fs = std::filesystem;

const fs::path kScratch = "cli_scratch";

std::string cli() { return ADCHAIN_CLI; }

int run_cli(const std::string& args) {
  fs::create_directories(kScratch);
  const std::string cmd = cli() + " " + args + " > " + (kScratch / "stdout.txt").string() +
                          " 2> " + (kScratch / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

// Same, but with the scratch directory as working directory (for default
// output names).
int run_cli_in_scratch(const std::string& args) {
  fs::create_directories(kScratch);
  const std::string cmd = "cd " + kScratch.string() + " && " + cli() + " " + args +
                          " > stdout.txt 2> stderr.txt";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot read ", p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(kScratch);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

struct Csv {
  std::vector<std::string> comments;
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.comments.push_back(line);
      continue;
    }
    if (csv.header.empty()) {
      csv.header = line;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    csv.rows.push_back(std::move(fields));
  }
  return csv;
}

double num(const std::string& s) { return std::stod(s); }

const std::string kConfigPrefix = "# config: ";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("ad writes a schema-correct csv, deterministically and atomically") {
  const fs::path cfg = kScratch / "ad.json";
  write_file(cfg, R"({"n_spins": 3, "beta_init": 0.5, "omega0_init": 20,
                      "omega0_final": 0.1, "grid_points": 25,
                      "pairs": [[1, 2], [1, 3]]})");
  const fs::path out1 = kScratch / "ad1.csv";
  REQUIRE(run_cli("ad --config " + cfg.string() + " --out " + out1.string()) == 0);
  const std::string text = slurp(out1);
  REQUIRE(run_cli("ad --config " + cfg.string() + " --out " + out1.string()) == 0);
  CHECK(text == slurp(out1));
  CHECK(!fs::exists(out1.string() + ".tmp"));
  CHECK(text.back() == '\n');

  const Csv csv = parse_csv(text);
  CHECK(csv.header == "omega0,beta,entropy,heat_capacity_per_spin,polarization,C_1_2,C_1_3");
  REQUIRE(csv.comments.size() >= 3);
  CHECK(csv.comments[0] == "# adchain ad");
  REQUIRE(csv.comments[1].rfind(kConfigPrefix, 0) == 0);
  REQUIRE(csv.comments[2].rfind("# s_init: ", 0) == 0);
  const double s_init = num(csv.comments[2].substr(10));

  REQUIRE(csv.rows.size() == 25);
  CHECK(num(csv.rows.front()[0]) == doctest::Approx(20.0));
  CHECK(num(csv.rows.back()[0]) == doctest::Approx(0.1));
  CHECK(num(csv.rows.front()[1]) == doctest::Approx(0.5));
  double prev_omega0 = 21.0, prev_beta = -1.0;
  for (const auto& row : csv.rows) {
    REQUIRE(row.size() == 7);
    CHECK(num(row[0]) < prev_omega0);
    prev_omega0 = num(row[0]);
    CHECK(num(row[1]) > prev_beta);  // beta grows as the field comes down
    prev_beta = num(row[1]);
    CHECK(std::abs(num(row[2]) - s_init) < 1e-9);  // the run is an isentrope
    CHECK(num(row[3]) >= 0.0);
    CHECK(std::abs(num(row[4])) <= 1.0);
    for (int c = 5; c < 7; ++c) {
      CHECK(num(row[c]) >= 0.0);
      CHECK(num(row[c]) <= 1.0);
    }
  }

  // The config echo round-trips: feeding it back reproduces the file
  // byte for byte (output_path included, so no --out this time).
  const fs::path cfg2 = kScratch / "ad_echo.json";
  write_file(cfg2, csv.comments[1].substr(kConfigPrefix.size()));
  REQUIRE(run_cli("ad --config " + cfg2.string()) == 0);
  CHECK(slurp(out1) == text);
}

TEST_CASE("beta_init zero stays at infinite temperature all the way down") {
  const fs::path cfg = kScratch / "hot.json";
  write_file(cfg, R"({"n_spins": 2, "beta_init": 0, "omega0_init": 5,
                      "omega0_final": 0.5, "grid_points": 6})");
  const fs::path out = kScratch / "hot.csv";
  REQUIRE(run_cli("ad --config " + cfg.string() + " --out " + out.string()) == 0);
  const Csv csv = parse_csv(slurp(out));
  REQUIRE(csv.rows.size() == 6);
  for (const auto& row : csv.rows) {
    CHECK(row[1] == "0");  // beta, exactly and without a negative zero
    CHECK(num(row[2]) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(row[3] == "0");  // heat capacity vanishes at infinite temperature
    CHECK(std::abs(num(row[4])) < 1e-14);  // polarization, up to eigenbasis rounding
    CHECK(row[5] == "0");  // maximally mixed states are separable
  }
}

TEST_CASE("config and numeric failures map to distinct exit codes") {
  const fs::path bad_key = kScratch / "bad_key.json";
  write_file(bad_key, R"({"n_spin": 2})");
  CHECK(run_cli("ad --config " + bad_key.string()) == 2);

  const fs::path bad_json = kScratch / "bad_json.json";
  write_file(bad_json, "{");
  CHECK(run_cli("ad --config " + bad_json.string()) == 2);

  CHECK(run_cli("ad --config " + (kScratch / "missing.json").string()) == 2);

  const fs::path out = kScratch / "unused.csv";
  CHECK(run_cli("ad --pairs 2:1 --out " + out.string()) == 2);   // m < n required
  CHECK(run_cli("ad --pairs 1:x --out " + out.string()) == 2);   // not a number
  CHECK(run_cli("ad --pairs 1:5 --out " + out.string()) == 2);   // beyond the chain
  CHECK(run_cli("ad --frobnicate") == 2);                        // unknown flag
  CHECK(run_cli("") == 2);                                       // missing subcommand
  CHECK(run_cli("--help") == 0);

  // A start state so cold that its entropy underflows to zero asks for an
  // unreachable beta; that is a numeric failure, and the failed run must not
  // leave an output file behind.
  const fs::path frozen = kScratch / "frozen.json";
  write_file(frozen, R"({"n_spins": 2, "beta_init": 1000, "omega0_init": 40,
                         "omega0_final": 1, "grid_points": 5})");
  const fs::path fout = kScratch / "frozen.csv";
  fs::remove(fout);  // leftovers from an earlier run must not mask the checks
  fs::remove(fout.string() + ".tmp");
  CHECK(run_cli("ad --config " + frozen.string() + " --out " + fout.string()) == 3);
  CHECK(!fs::exists(fout));
  CHECK(!fs::exists(fout.string() + ".tmp"));
}

TEST_CASE("boundary classifies probes and leaves empty fields where no boundary exists") {
  // theta = 0 kills the entangling terms' advantage: the flip-flop coherence
  // never beats the uu/dd population mean, so beta* does not exist anywhere.
  const fs::path cfg0 = kScratch / "b0.json";
  write_file(cfg0, R"({"n_spins": 2, "theta": 0, "omega0_init": 2,
                       "omega0_final": 0.5, "grid_points": 4, "beta_max": 30})");
  const fs::path out0 = kScratch / "b0.csv";
  REQUIRE(run_cli("boundary --config " + cfg0.string() + " --out " + out0.string()) == 0);
  const Csv csv0 = parse_csv(slurp(out0));
  CHECK(csv0.header == "omega0,beta_star");
  REQUIRE(csv0.rows.size() == 4);
  for (const auto& row : csv0.rows) {
    REQUIRE(row.size() == 2);
    CHECK(row[1].empty());
  }

  // In the transverse geometry the boundary exists and falls with the field;
  // the three probes bracket it from both sides.
  const fs::path cfg = kScratch / "b1.json";
  write_file(cfg, R"({"n_spins": 2, "omega0_init": 3, "omega0_final": 0.5,
                      "grid_points": 6, "beta_max": 30,
                      "probes": [{"name": "A", "omega0": 2.4, "beta": 1.06},
                                 {"name": "B", "omega0": 3, "beta": 0.7},
                                 {"name": "C", "omega0": 2.7, "beta": 0.443}]})");
  const fs::path out = kScratch / "b1.csv";
  REQUIRE(run_cli("boundary --config " + cfg.string() + " --out " + out.string()) == 0);
  const Csv csv = parse_csv(slurp(out));

  int classified = 0;
  for (const std::string& c : csv.comments) {
    if (c.rfind("# probe A:", 0) == 0) {
      CHECK(c == "# probe A: omega0=2.4 beta=1.06 -> entangled");
      ++classified;
    } else if (c.rfind("# probe B:", 0) == 0) {
      CHECK(c == "# probe B: omega0=3 beta=0.7 -> separable");
      ++classified;
    } else if (c.rfind("# probe C:", 0) == 0) {
      CHECK(c == "# probe C: omega0=2.7 beta=0.443 -> separable");
      ++classified;
    }
  }
  CHECK(classified == 3);

  REQUIRE(csv.rows.size() == 6);
  double prev = 0.0;
  for (const auto& row : csv.rows) {
    REQUIRE(!row[1].empty());
    const double beta_star = num(row[1]);
    CHECK(beta_star > prev);  // grid descends in omega0, beta* rises
    prev = beta_star;
  }
  CHECK(num(csv.rows.front()[0]) == doctest::Approx(3.0));
  CHECK(num(csv.rows.front()[1]) == doctest::Approx(0.824342).epsilon(1e-3));
  CHECK(num(csv.rows.back()[0]) == doctest::Approx(0.5));
  CHECK(num(csv.rows.back()[1]) == doctest::Approx(2.750049).epsilon(1e-3));
}

TEST_CASE("a single-length sweep reproduces the ad rows modulo the n_spins column") {
  const fs::path cfg = kScratch / "sw.json";
  write_file(cfg, R"({"n_spins": 3, "beta_init": 1, "omega0_init": 10,
                      "omega0_final": 0.2, "grid_points": 15,
                      "pairs": [[1, 3]], "n_list": [3]})");
  const fs::path ad_out = kScratch / "sw_ad.csv";
  const fs::path sw_out = kScratch / "sw_sweep.csv";
  REQUIRE(run_cli("ad --config " + cfg.string() + " --out " + ad_out.string()) == 0);
  REQUIRE(run_cli("sweep --config " + cfg.string() + " --out " + sw_out.string()) == 0);

  const Csv ad = parse_csv(slurp(ad_out));
  const Csv sw = parse_csv(slurp(sw_out));
  CHECK(sw.header == "n_spins," + ad.header);
  REQUIRE(sw.rows.size() == ad.rows.size());
  for (std::size_t i = 0; i < ad.rows.size(); ++i) {
    REQUIRE(sw.rows[i].size() == ad.rows[i].size() + 1);
    CHECK(sw.rows[i][0] == "3");
    for (std::size_t j = 0; j < ad.rows[i].size(); ++j)
      CHECK(sw.rows[i][j + 1] == ad.rows[i][j]);  // byte-identical fields
  }
}

TEST_CASE("hamiltonian dump pins the two spin dipolar matrix and local field") {
  const fs::path out = kScratch / "h.json";
  REQUIRE(run_cli("hamiltonian --json --out " + out.string()) == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));

  CHECK(j.at("n_spins") == 2);
  CHECK(j.at("omega0").get<double>() == doctest::Approx(40.0));
  CHECK(j.at("h_loc").get<double>() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));

  const double d[4][4] = {{0.25, 0, 0, -0.75},
                          {0, -0.25, -0.25, 0},
                          {0, -0.25, -0.25, 0},
                          {-0.75, 0, 0, 0.25}};
  const auto& hdd = j.at("h_dd");
  const auto& hz = j.at("h_z");
  const double zdiag[4] = {40.0, 0.0, 0.0, -40.0};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      CHECK(hdd.at(r).at(c).at(0).get<double>() == doctest::Approx(d[r][c]).epsilon(1e-12));
      CHECK(hdd.at(r).at(c).at(1).get<double>() == doctest::Approx(0.0));
      CHECK(hz.at(r).at(c).at(0).get<double>() ==
            doctest::Approx(r == c ? zdiag[r] : 0.0).epsilon(1e-12));
    }

  const auto evs = j.at("eigenvalues").get<std::vector<double>>();
  REQUIRE(evs.size() == 4);
  const double wing = std::sqrt(40.0 * 40.0 + 0.5625);
  CHECK(evs[0] == doctest::Approx(0.25 - wing).epsilon(1e-12));
  CHECK(evs[1] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::abs(evs[2]) < 1e-12);
  CHECK(evs[3] == doctest::Approx(0.25 + wing).epsilon(1e-12));

  // Text mode goes to stdout, and larger chains omit the matrices.
  REQUIRE(run_cli("hamiltonian") == 0);
  const std::string text = slurp(kScratch / "stdout.txt");
  CHECK(text.find("h_loc: 0.866025403784") != std::string::npos);
  CHECK(text.find("H_dd:") != std::string::npos);

  const fs::path big = kScratch / "big.json";
  write_file(big, R"({"n_spins": 6})");
  REQUIRE(run_cli("hamiltonian --config " + big.string()) == 0);
  CHECK(slurp(kScratch / "stdout.txt").find("H_z, H_dd: omitted (n_spins > 4)") !=
        std::string::npos);
}

TEST_CASE("the trajectory truncates with a comment when the entropy floor is hit") {
  // A linear grid down to zero field ends on a doubly degenerate ground
  // state, whose ln 2 entropy floor exceeds this start entropy.
  const fs::path cfg = kScratch / "trunc.json";
  write_file(cfg, R"({"n_spins": 2, "beta_init": 3, "omega0_init": 1,
                      "omega0_final": 0, "grid_points": 21,
                      "grid_spacing": "linear"})");
  const fs::path out = kScratch / "trunc.csv";
  REQUIRE(run_cli("ad --config " + cfg.string() + " --out " + out.string()) == 0);
  const Csv csv = parse_csv(slurp(out));
  CHECK(csv.rows.size() == 20);  // the omega0 = 0 point is dropped
  REQUIRE(!csv.comments.empty());
  CHECK(csv.comments.back() == "# truncated: entropy floor reached at omega0=0");
}

TEST_CASE("command line flags override the config file") {
  const fs::path cfg = kScratch / "ovr.json";
  write_file(cfg, R"({"n_spins": 2, "beta_init": 1, "omega0_init": 8,
                      "omega0_final": 2, "grid_points": 11,
                      "grid_spacing": "log"})");
  const fs::path out = kScratch / "ovr.csv";
  REQUIRE(run_cli("ad --config " + cfg.string() + " --grid 5 --linear --pairs 1:2 --out " +
                  out.string() + " --plot-script") == 0);
  const Csv csv = parse_csv(slurp(out));

  REQUIRE(csv.comments.size() >= 2);
  const nlohmann::json echo =
      nlohmann::json::parse(csv.comments[1].substr(kConfigPrefix.size()));
  CHECK(echo.at("grid_points") == 5);
  CHECK(echo.at("grid_spacing") == "linear");
  CHECK(echo.at("output_path") == out.string());

  REQUIRE(csv.rows.size() == 5);
  CHECK(csv.rows[2][0] == "5");  // linear midpoint of [8, 2]

  const std::string script = slurp(kScratch / "ovr.gp");
  CHECK(script.find("set datafile separator comma") != std::string::npos);
  CHECK(script.find("'" + out.string() + "'") != std::string::npos);
  CHECK(script.find("set logscale x") == std::string::npos);  // linear override
}

TEST_CASE("the output path defaults to the subcommand name") {
  REQUIRE(run_cli_in_scratch("ad --grid 4 --pairs 1:2") == 0);
  CHECK(fs::exists(kScratch / "ad.csv"));
  const Csv csv = parse_csv(slurp(kScratch / "ad.csv"));
  CHECK(csv.rows.size() == 4);
}

TEST_SUITE_END();
