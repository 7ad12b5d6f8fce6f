#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "dqed/cli.hpp"
#include "dqed/config.hpp"
#include "dqed/error.hpp"
#include "support.hpp"

using namespace dqed;
using namespace dqed::testing;

namespace {

struct TempConfig {
  std::filesystem::path path;

  explicit TempConfig(const std::string& text) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("dqed_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".cfg");
    std::ofstream(path) << text;
  }
  ~TempConfig() { std::filesystem::remove(path); }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dqed");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> data_rows(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("number parsing") {
  CHECK(parse_number("1.5") == 1.5);
  CHECK(parse_number(" 4pi ") == doctest::Approx(4.0 * M_PI));
  CHECK(parse_number("pi/2") == doctest::Approx(M_PI / 2.0));
  CHECK(parse_number("-pi") == doctest::Approx(-M_PI));
  CHECK(parse_number("9/11") == doctest::Approx(9.0 / 11.0));
  CHECK(parse_number("1e-3") == 1e-3);
  CHECK(throws_kind([] { parse_number("banana"); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { parse_number("1/0"); }, ErrorKind::InvalidArgument));
}

TEST_CASE("linspace") {
  const std::vector<double> v = linspace(0.0, 1.0, 5);
  CHECK(v == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
  CHECK(linspace(2.0, 3.0, 0).empty());
}

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(R"(
# comment
[system]
omega = 1
omega_a = 1.1
omega_b = 1.1
g_a = 0.001
g_b = 0.001

[scenario]
type = werner
gamma = 9/11
bell = psi-

[field]
kind = thermal
kT = 1

[grid]
tau_max = 2pi   # trailing comment
tau_steps = 10

[validate]
intensities = 0, 3
)");
  CHECK(cfg.system.is_identical());
  CHECK(cfg.system.delta_a() == doctest::Approx(0.1));
  const auto& w = std::get<WernerScenario>(cfg.scenario);
  CHECK(w.gamma == doctest::Approx(9.0 / 11.0));
  CHECK(w.x == BellState::PsiMinus);
  CHECK(cfg.field == FieldType::Thermal);
  CHECK(cfg.intensity == doctest::Approx(1.0 / std::expm1(1.0)));
  CHECK(cfg.grid.tau_max == doctest::Approx(2.0 * M_PI));
  CHECK(cfg.grid.tau_steps == 10);
  CHECK(cfg.validate.intensities == std::vector<double>{0.0, 3.0});
  CHECK(cfg.output.precision == 9);
}

TEST_CASE("config errors carry line numbers") {
  const auto message = [](const std::string& text) -> std::string {
    try {
      parse_config(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
      return e.what();
    }
    return "";
  };
  CHECK(message("[system]\nomega = 1\nspeed = 2\n").find("line 3") != std::string::npos);
  CHECK(message("[system]\nomega = 1\nomega = 2\n").find("duplicate") != std::string::npos);
  CHECK(message("[nope]\n").find("unknown section") != std::string::npos);
  CHECK(message("omega = 1\n").find("outside") != std::string::npos);
  CHECK(message("[system]\ng_a = banana\n").find("line 2") != std::string::npos);
  CHECK(message("[grid]\ntau_steps = 0\n").find("empty tau grid") != std::string::npos);
  CHECK(message("[system]\nomega_a = 1\n").find("line") != std::string::npos);
  CHECK(message("[scenario]\ntype = werner\ngamma = 2\n").find("gamma") != std::string::npos);
  CHECK(message("[field]\nkind = fock\nkT = 1\n").find("thermal") != std::string::npos);
  CHECK(throws_kind([] { load_config("/nonexistent/dqed.cfg"); }, ErrorKind::Config));
}

TEST_CASE("format_number") {
  CHECK(cli::format_number(0.5, 9) == "0.5");
  CHECK(cli::format_number(1.0 / 3.0, 4) == "0.3333");
  CHECK(cli::format_number(1e-20, 3) == "1e-20");
  CHECK(cli::default_route(SystemParams::identical(1, 0.1, 0.001)) == EvolutionRoute::ClosedForm);
  CHECK(cli::default_route(SystemParams(1, 1.1, 1.2, 0.001, 0.001)) == EvolutionRoute::EffectiveNumeric);
}

TEST_CASE("evolve writes the theta-pair vacuum curve") {
  const TempConfig cfg("[grid]\ntau_max = 4pi\ntau_steps = 81\n");
  const Outcome r = invoke({"evolve", "--config", cfg.path.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(has_line(r.out, "# command=evolve"));
  CHECK(has_line(r.out, "# scenario=pure"));
  CHECK(has_line(r.out, "# field=fock"));
  CHECK(has_line(r.out, "# g_over_delta=0.01"));
  CHECK(has_line(r.out, "# route=closed"));
  CHECK(has_line(r.out, "# intensity=0"));
  CHECK(has_line(r.out, "tau,time,concurrence"));
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 81);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 3);
    CHECK(row[1] == doctest::Approx(row[0] * 0.1 / (2.0 * 1e-6)).epsilon(1e-8));
    // Nine significant digits on both columns.
    CHECK(std::abs(row[2] - std::abs(std::sin(row[0] / 2.0))) < 1e-7);
  }
}

TEST_CASE("evolve routes agree for a Fock field") {
  const TempConfig cfg("[field]\nintensity = 1\n[grid]\ntau_max = pi\ntau_steps = 9\n");
  const auto closed = data_rows(invoke({"evolve", "--config", cfg.path.string()}).out);
  const auto effective = data_rows(invoke({"evolve", "--config", cfg.path.string(), "--route", "effective"}).out);
  const Outcome exact = invoke({"evolve", "--config", cfg.path.string(), "--route", "exact"});
  CHECK(has_line(exact.out, "# route=exact"));
  const auto exact_rows = data_rows(exact.out);
  REQUIRE(closed.size() == 9);
  for (std::size_t k = 0; k < closed.size(); ++k) {
    CHECK(std::abs(closed[k][2] - effective[k][2]) < 1e-8);
    CHECK(std::abs(closed[k][2] - exact_rows[k][2]) < 1e-2);
  }
}

TEST_CASE("heatmap layout and metadata") {
  const TempConfig cfg(
      "[scenario]\ntype = werner\n[field]\nkind = coherent\n"
      "[grid]\ntau_steps = 7\nintensity_max = 4\nintensity_steps = 3\n[output]\nprecision = 6\n");
  const Outcome r = invoke({"heatmap", "--config", cfg.path.string(), "--threads", "2"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(has_line(r.out, "# command=heatmap"));
  CHECK(has_line(r.out, "# scenario=werner"));
  CHECK(has_line(r.out, "# bell=phi+"));
  CHECK(has_line(r.out, "# field=coherent"));
  CHECK(has_line(r.out, "# vmax=0.727273"));
  CHECK(has_line(r.out, "tau,mean_n,concurrence"));
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0][1] == 0.0);
  CHECK(rows[7][1] == 2.0);
  CHECK(rows[20][1] == 4.0);
  CHECK(rows[8][0] == doctest::Approx(4.0 * M_PI / 6.0).epsilon(1e-5));
  for (std::size_t k = 0; k < 7; ++k) CHECK(rows[k][2] == doctest::Approx(8.0 / 11.0).epsilon(1e-5));
}

TEST_CASE("output file option") {
  const TempConfig cfg("[grid]\ntau_steps = 3\n");
  const std::filesystem::path out = cfg.path.string() + ".csv";
  const Outcome r = invoke({"evolve", "--config", cfg.path.string(), "--output", out.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(data_rows(text.str()).size() == 3);
  std::filesystem::remove(out);
}

TEST_CASE("beats command") {
  const auto beats_for = [](double intensity) {
    const TempConfig cfg("[scenario]\ntype = werner\ngamma = 0.9\n[field]\nkind = coherent\nintensity = " +
                         std::to_string(intensity) + "\n[grid]\ntau_max = 4pi\n");
    const Outcome r = invoke({"beats", "--config", cfg.path.string()});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.err.find("3 beat(s)") != std::string::npos);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "beat_center_tau,fwhm_tau");
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line) && !line.empty()) {
      const auto comma = line.find(',');
      rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    std::getline(in, line);
    CHECK(line == "valley_start_tau,valley_end_tau");
    return rows;
  };
  const auto low = beats_for(10.0);
  const auto high = beats_for(40.0);
  REQUIRE(low.size() == 3);
  REQUIRE(high.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(low[k].first == doctest::Approx((k + 1.0) * M_PI).epsilon(1e-6));
    CHECK(low[k].second / high[k].second == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("beats reports NoBeats for a constant series") {
  const TempConfig cfg("[scenario]\ntype = werner\n[field]\nintensity = 3\n");
  const Outcome r = invoke({"beats", "--config", cfg.path.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.find("NoBeats") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitConfig);
  CHECK(invoke({"frobnicate"}).code == cli::kExitConfig);
  CHECK(invoke({"evolve", "--help"}).code == cli::kExitOk);
  CHECK(invoke({"evolve", "--config", "/nonexistent/dqed.cfg"}).code == cli::kExitConfig);
  CHECK(invoke({"evolve", "--route", "sideways"}).code == cli::kExitConfig);

  const TempConfig corrupt("[system]\ng_a = banana\n");
  const Outcome bad = invoke({"evolve", "--config", corrupt.path.string()});
  CHECK(bad.code == cli::kExitConfig);
  CHECK(bad.err.find("line 2") != std::string::npos);

  const TempConfig fractional("[field]\nintensity = 2.5\n");
  CHECK(invoke({"evolve", "--config", fractional.path.string()}).code == cli::kExitComputation);

  const TempConfig distinct("[system]\nomega_b = 1.2\n");
  CHECK(invoke({"evolve", "--config", distinct.path.string(), "--route", "closed"}).code ==
        cli::kExitComputation);

  const TempConfig strong("[system]\ng_a = 0.05\ng_b = 0.05\n[grid]\ntau_steps = 2\n");
  const Outcome warned = invoke({"evolve", "--config", strong.path.string()});
  CHECK(warned.code == cli::kExitOk);
  CHECK(warned.err.find("warning") != std::string::npos);
}
