#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include <beamgram/cli/commands.hpp>
#include <beamgram/cli/config.hpp>
#include <beamgram/cli/output.hpp>
#include <beamgram/cli/verify.hpp>
#include <beamgram/errors.hpp>

namespace cli = beamgram::cli;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> row(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() /
             ("beamgram_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
              ::testing::UnitTest::GetInstance()->current_test_info()->name());
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Parsers, Axis) {
  const auto a = cli::parse_axis("0:3:121");
  EXPECT_EQ(a.lo, 0.0);
  EXPECT_EQ(a.hi, 3.0);
  EXPECT_EQ(a.n, 121);
  EXPECT_DOUBLE_EQ(a.at(40), 1.0);
  EXPECT_EQ(a.at(120), 3.0);
  const auto single = cli::parse_axis("0.5");
  EXPECT_EQ(single.n, 1);
  EXPECT_EQ(single.at(0), 0.5);
  EXPECT_THROW(cli::parse_axis("0:1"), beamgram::InvalidArgument);
  EXPECT_THROW(cli::parse_axis("0:1:0"), beamgram::InvalidArgument);
  EXPECT_THROW(cli::parse_axis("x"), beamgram::InvalidArgument);
}

TEST(Parsers, Grid) {
  const auto g = cli::parse_grid("rho=0:3:4,z=-1:1:3");
  EXPECT_EQ(g.rho.n, 4);
  EXPECT_EQ(g.z.lo, -1.0);
  EXPECT_EQ(g.theta.n, 1);
  EXPECT_EQ(g.theta.lo, 0.0);
  EXPECT_EQ(g.size(), 12u);
  EXPECT_THROW(cli::parse_grid("phi=0"), beamgram::InvalidArgument);
  EXPECT_THROW(cli::parse_grid("rho"), beamgram::InvalidArgument);
}

TEST(Parsers, LRange) {
  EXPECT_EQ(cli::parse_l_range("-2..2"), (std::vector<int>{-2, -1, 0, 1, 2}));
  EXPECT_EQ(cli::parse_l_range("3"), (std::vector<int>{3}));
  EXPECT_THROW(cli::parse_l_range("3..1"), beamgram::InvalidArgument);
  EXPECT_THROW(cli::parse_l_range("a..b"), beamgram::InvalidArgument);
}

TEST(Parsers, ModeDirectionTolerance) {
  EXPECT_EQ(cli::parse_mode("1,-2"), (std::pair{1, -2}));
  EXPECT_THROW(cli::parse_mode("1"), beamgram::InvalidArgument);
  EXPECT_EQ(cli::parse_direction("+"), 1);
  EXPECT_EQ(cli::parse_direction("-1"), -1);
  EXPECT_THROW(cli::parse_direction("0"), beamgram::InvalidArgument);
  cli::ToleranceOverrides tol;
  cli::add_tolerance_override(tol, "1e-20");
  cli::add_tolerance_override(tol, "quadrature.gauss_exp=1e-3");
  EXPECT_EQ(tol.global, 1e-20);
  EXPECT_EQ(tol.per_check.at("quadrature.gauss_exp"), 1e-3);
  EXPECT_THROW(cli::add_tolerance_override(tol, "gauss_exp=abc"), beamgram::InvalidArgument);
}

TEST(Config, ApplyJsonAndValidate) {
  cli::RunConfig cfg;
  cfg.command = cli::Command::gram;
  cli::apply_json(cfg, json::parse(R"({"command":"gram","f":0.7,"m_max":3,"l":"-1..1","w0":2.0})"));
  EXPECT_EQ(cfg.command, cli::Command::gram);
  EXPECT_EQ(cfg.beam.f, 0.7);
  EXPECT_EQ(cfg.beam.m_max, 3);
  EXPECT_EQ(cfg.beam.l_set, (std::vector<int>{-1, 0, 1}));
  EXPECT_NO_THROW(cfg.validate());
  cli::apply_json(cfg, json::parse(R"({"quadrature":{"edge_order":48}})"));
  EXPECT_EQ(cfg.quadrature.edge_order, 48);
  EXPECT_THROW(cli::apply_json(cfg, json::parse(R"({"command":"verify"})")), beamgram::InvalidArgument);
}

TEST(Config, RejectsUnknownAndIllTypedKeys) {
  cli::RunConfig cfg;
  EXPECT_THROW(cli::apply_json(cfg, json::parse(R"({"fnumber":0.5})")), beamgram::InvalidArgument);
  EXPECT_THROW(cli::apply_json(cfg, json::parse(R"({"f":"half"})")), beamgram::InvalidArgument);
  EXPECT_THROW(cli::apply_json(cfg, json::parse(R"({"quadrature":{"bogus":1}})")), beamgram::InvalidArgument);
  cfg.beam.f = -1.0;
  EXPECT_THROW(cfg.validate(), beamgram::InvalidArgument);
}

TEST(Config, EchoIsDeterministic) {
  cli::RunConfig cfg;
  cfg.beam.f = 0.3;
  EXPECT_EQ(cli::to_json(cfg).dump(), cli::to_json(cfg).dump());
  const auto meta = cli::meta_block(cfg);
  EXPECT_EQ(meta["tool"], cli::kToolName);
  EXPECT_EQ(meta["version"], cli::kToolVersion);
  EXPECT_TRUE(meta.contains("config"));
}

TEST(Output, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, std::numbers::pi, -2.5e-300, 1e300}) {
    EXPECT_EQ(std::stod(cli::format_double(v)), v);
  }
}

TEST(Output, WriteFileFailsCleanly) {
  EXPECT_THROW(cli::write_file("/nonexistent-dir/x/y.json", "{}"), beamgram::InvalidArgument);
}

TEST(GramCommand, Document) {
  cli::RunConfig cfg;
  cfg.command = cli::Command::gram;
  cfg.beam.f = 1.0;
  cfg.beam.m_max = 1;
  cfg.beam.l_set = {0, 1};
  const auto doc = cli::gram_document(cfg);
  EXPECT_EQ(doc["f"], 1.0);
  EXPECT_EQ(doc["m_max"], 1);
  ASSERT_EQ(doc["blocks"].size(), 2u);
  const auto& block1 = doc["blocks"][1];
  EXPECT_NEAR(block1[0][1]["re"].get<double>(), -std::exp(-1.0) / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(doc["delta_f"][0][0][0]["re"].get<double>(), std::exp(-1.0), 1e-12);
  EXPECT_GT(doc["projector_defect"]["idempotence"].get<double>(), 0.0);
  EXPECT_EQ(doc["projector_defect"]["idempotence"], doc["projector_defect"]["vacuum"]);
}

TEST(FieldCommand, ClosedCsvOrderAndValues) {
  cli::RunConfig cfg;
  cfg.command = cli::Command::field;
  cfg.grid = cli::parse_grid("rho=0:1:3,theta=0:1:2,z=-1:1:2");
  const auto out = cli::field_output(cfg);
  const auto lines = lines_of(out.csv);
  ASSERT_EQ(lines.size(), 1u + 12u);
  EXPECT_EQ(lines[0], "rho,theta,z,re,im,abs,phase");
  // z slowest, theta fastest.
  EXPECT_EQ(row(lines[1])[2], -1.0);
  EXPECT_EQ(row(lines[2])[1], 1.0);
  EXPECT_EQ(row(lines[3])[0], 0.5);
  EXPECT_EQ(row(lines[7])[2], 1.0);
  const auto origin = row(lines[1]);
  EXPECT_NEAR(origin[5], 1.0 / std::sqrt(std::numbers::pi * 2.0), 1e-15);
  EXPECT_EQ(out.sidecar["points"], 12);
  EXPECT_EQ(out.sidecar["max_abs_deviation_from_closed"], 0.0);
}

TEST(FieldCommand, FresnelAgreesWithClosed) {
  cli::RunConfig cfg;
  cfg.command = cli::Command::field;
  cfg.kind = beamgram::fields::FieldKind::fresnel;
  cfg.mode_m = 1;
  cfg.mode_l = 2;
  cfg.grid = cli::parse_grid("rho=0:3:7,theta=0.4,z=-1:1:3");
  EXPECT_LE(cli::field_output(cfg).sidecar["max_abs_deviation_from_closed"].get<double>(), 1e-8);
}

TEST(FieldCommand, VortexAxisIsZero) {
  cli::RunConfig cfg;
  cfg.command = cli::Command::field;
  cfg.mode_l = 1;
  cfg.grid = cli::parse_grid("rho=0,z=0.5");
  const auto lines = lines_of(cli::field_output(cfg).csv);
  EXPECT_EQ(row(lines[1])[5], 0.0);
}

TEST(FieldCommand, ExactKindRecordsRefinement) {
  cli::RunConfig cfg;
  cfg.command = cli::Command::field;
  cfg.kind = beamgram::fields::FieldKind::exact;
  cfg.beam.f = 0.2;
  cfg.grid = cli::parse_grid("rho=0:1:3,z=0.3");
  const auto out = cli::field_output(cfg);
  EXPECT_EQ(out.sidecar["refinement_tolerance"], 1e-9);
  EXPECT_LT(out.sidecar["max_abs_deviation_from_closed"].get<double>(), 0.05);
}

TEST(SpectrumCommand, Csv) {
  cli::RunConfig cfg;
  cfg.command = cli::Command::spectrum;
  cfg.kappa = cli::parse_axis("0:2:3");
  const auto lines = lines_of(cli::spectrum_csv(cfg));
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "kappa,phi,re,im,abs");
  EXPECT_NEAR(row(lines[1])[4], 2.0 * std::sqrt(std::numbers::pi), 1e-14);
}

TEST(RunGuarded, ExitCodes) {
  const auto dir = temp_dir();
  std::ostringstream log;
  std::ostringstream err;
  cli::RunConfig cfg;
  cfg.command = cli::Command::gram;
  cfg.beam.f = -1.0;
  cfg.out = (dir / "bad.json").string();
  EXPECT_EQ(cli::run_guarded(cfg, log, err), cli::kExitConfig);
  EXPECT_FALSE(std::filesystem::exists(cfg.out));

  cfg.beam.f = 0.5;
  EXPECT_EQ(cli::run_guarded(cfg, log, err), cli::kExitOk);
  EXPECT_TRUE(std::filesystem::exists(cfg.out));

  cfg.command = cli::Command::verify;
  cfg.suite = "quadrature";
  cfg.report = (dir / "report.json").string();
  EXPECT_EQ(cli::run_guarded(cfg, log, err), cli::kExitOk);
  cli::add_tolerance_override(cfg.tol, "1e-20");
  EXPECT_EQ(cli::run_guarded(cfg, log, err), cli::kExitVerifyFailed);
  cfg.suite = "nonsense";
  EXPECT_EQ(cli::run_guarded(cfg, log, err), cli::kExitConfig);
  std::filesystem::remove_all(dir);
}

TEST(Verify, SuiteFilterAndOverrides) {
  const auto report = cli::run_verify("specfun");
  ASSERT_FALSE(report.checks.empty());
  for (const auto& c : report.checks) EXPECT_EQ(c.suite, "specfun");
  EXPECT_TRUE(report.all_passed());

  cli::ToleranceOverrides tol;
  cli::add_tolerance_override(tol, "specfun.bessel_series=1e-30");
  const auto tight = cli::run_verify("specfun", tol);
  EXPECT_FALSE(tight.all_passed());
  for (const auto& c : tight.checks) EXPECT_EQ(c.passed, c.name != "specfun.bessel_series") << c.name;

  cli::ToleranceOverrides unknown;
  cli::add_tolerance_override(unknown, "no_such_check=1");
  EXPECT_THROW(cli::run_verify("specfun", unknown), beamgram::InvalidArgument);
  EXPECT_THROW(cli::run_verify("nope"), beamgram::InvalidArgument);
}

TEST(Verify, ReportIsByteIdentical) {
  cli::RunConfig cfg;
  cfg.suite = "modes";
  const auto a = cli::to_json(cli::run_verify("modes"), cfg).dump(2);
  const auto b = cli::to_json(cli::run_verify("modes"), cfg).dump(2);
  EXPECT_EQ(a, b);
  const auto doc = json::parse(a);
  EXPECT_TRUE(doc.contains("meta"));
  EXPECT_TRUE(doc.contains("summary"));
  EXPECT_EQ(doc["checks"].size(), cli::run_verify("modes").checks.size());
}

TEST(Verify, SuiteNames) {
  EXPECT_EQ(cli::suite_names(),
            (std::vector<std::string>{"quadrature", "specfun", "modes", "gram", "states", "fields"}));
}
