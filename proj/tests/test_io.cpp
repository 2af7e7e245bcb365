#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qspec/cli.hpp"
#include "qspec/random.hpp"

using namespace qspec;

namespace {

std::string sample(const std::string& name) { return std::string(QSPEC_SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("qspec_io_" + name);
  std::ofstream(path) << body;
  return path.string();
}

RunConfig config(std::string sub, std::vector<std::string> inputs = {}) {
  RunConfig cfg;
  cfg.subcommand = std::move(sub);
  cfg.inputs = std::move(inputs);
  return cfg;
}

}  // namespace

TEST(Parse, SingleEntryMatrix) {
  const QMatrix a = parse_matrix(R"({"n":1,"entries":[[[0,1,0,0]]]})");
  ASSERT_EQ(a.rows(), 1u);
  EXPECT_EQ(a(0, 0), Quaternion::i());
  EXPECT_EQ(parse_matrix_file(sample("i.json")), a);
}

TEST(Parse, Rejections) {
  EXPECT_THROW(parse_matrix(R"({"n":2,"entries":[[[0,0,0,0],[1,0,0,0]],[[0,0,0,0]]]})"), DimensionError);
  EXPECT_THROW(parse_matrix(R"({"n":2,"entries":[[[0,0,0,0],[1,0,0,0]]]})"), DimensionError);
  EXPECT_THROW(parse_matrix(R"({"n":0,"entries":[]})"), DimensionError);
  EXPECT_THROW(parse_matrix(R"({"n":1,"entries":[[[0,1,0]]]})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n":1,"entries":[[[0,"1",0,0]]]})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n":1.5,"entries":[[[0,1,0,0]]]})"), ParseError);
  EXPECT_THROW(parse_matrix(R"({"n":1,"entries":[[[0,1,0,0]]])"), ParseError);
  EXPECT_THROW(parse_matrix("[1,2]"), ParseError);
  EXPECT_THROW(parse_matrix_file(sample("does-not-exist.json")), ParseError);
}

TEST(Parse, RoundTripIsExact) {
  Rng rng(111);
  for (int t = 0; t < 50; ++t) {
    const QMatrix a = rng.matrix(1 + t % 4) * std::pow(10.0, (t % 7) - 3);
    EXPECT_EQ(parse_matrix(emit_matrix(a)), a);
  }
  // emit(parse(f)) agrees with f up to number formatting
  const std::string text = read_file(sample("mixed3.json"));
  EXPECT_EQ(Json::parse(emit_matrix(parse_matrix(text))), Json::parse(text));
}

TEST(Parse, Quaternions) {
  EXPECT_EQ(parse_quaternion("0,1,0,0"), Quaternion::i());
  EXPECT_EQ(parse_quaternion("0.5,-0.5,1e-3,2"), Quaternion(0.5, -0.5, 1e-3, 2));
  EXPECT_EQ(parse_quaternion(" 1, 2, 3, 4"), Quaternion(1, 2, 3, 4));
  for (const char* bad : {"1,2,3", "1,2,3,4,5", "1,2,x,4", "1,2,3,", "", "1,2,3,4x", "nan,0,0,0", "inf,0,0,0"})
    EXPECT_THROW(parse_quaternion(bad), ParseError) << bad;
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}

TEST(Report, SpectrumShapes) {
  const auto rep = s_spectrum(parse_matrix_file(sample("i.json")));
  const Json j = spectrum_json(rep);
  ASSERT_EQ(j["spheres"].size(), 1u);
  EXPECT_EQ(j["spheres"][0]["re"].get<double>(), 0.0);
  EXPECT_NEAR(j["spheres"][0]["im"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["spheres"][0]["mult"].get<int>(), 1);
  EXPECT_EQ(j["spheres"][0]["class"].get<std::string>(), "point");
  const std::string csv = spectrum_csv(rep);
  EXPECT_EQ(csv.substr(0, 11), "re,im,mult\n");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Run, SpectrumExample) {
  const auto out = run(config("spectrum", {sample("i.json")}));
  EXPECT_EQ(out.exit_code, 0);
  const Json j = Json::parse(out.output);
  ASSERT_EQ(j["spheres"].size(), 1u);
  EXPECT_NEAR(j["spheres"][0]["im"].get<double>(), 1.0, 1e-12);
  auto grid = config("spectrum", {sample("mixed3.json")});
  grid.grid = 0.05;
  const auto g = run(grid);
  EXPECT_EQ(g.exit_code, 0) << g.output;
  EXPECT_EQ(Json::parse(g.output)["grid_check"]["off_sphere"].get<int>(), 0);
}

TEST(Run, CommutatorExample) {
  auto cfg = config("commutator");
  cfg.left = sample("i.json");
  cfg.right = sample("j.json");
  const auto out = run(cfg);
  EXPECT_EQ(out.exit_code, 0);
  const Json j = Json::parse(out.output);
  EXPECT_TRUE(j["difference"]["inclusion"].get<bool>());
  EXPECT_FALSE(j["difference"]["equality"].get<bool>());
  EXPECT_FALSE(j["sum"]["commuting"].get<bool>());
  const auto same = run(config("commutator", {sample("diag_ii.json"), sample("diag_ii.json")}));
  EXPECT_EQ(same.exit_code, 0);
  EXPECT_TRUE(Json::parse(same.output)["sum"]["inclusion"].get<bool>());
}

TEST(Run, BerberianExample) {
  auto cfg = config("berberian");
  cfg.q = "0,1,0,0";
  cfg.terms = 10000;
  const auto out = run(cfg);
  EXPECT_EQ(out.exit_code, 0);
  const Json j = Json::parse(out.output);
  EXPECT_EQ(j["verdict"].get<std::string>(), "pass");
  const Json& last = j["decay_table"].back();
  EXPECT_EQ(last[0].get<std::size_t>(), 10000u);
  EXPECT_LE(last[1].get<double>(), 0.03);
  cfg.format = "csv";
  const auto csv = run(cfg);
  EXPECT_EQ(csv.output.substr(0, 7), "n,norm\n");
}

TEST(Run, ResolventReportsKernel) {
  auto cfg = config("resolvent", {sample("i.json")});
  cfg.q = "0,0,0,1";
  const Json j = Json::parse(run(cfg).output);
  EXPECT_TRUE(j["member"].get<bool>());
  EXPECT_EQ(j["kernel"].size(), 1u);
  cfg.q = "1,0,0,0";
  const Json off = Json::parse(run(cfg).output);
  EXPECT_FALSE(off["member"].get<bool>());
  EXPECT_NEAR(off["margin"].get<double>(), 2.0, 1e-12);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run(config("spectrum", {temp_file("bad.json", "{\"n\":1,")})).exit_code, exit_parse);
  EXPECT_EQ(run(config("spectrum", {temp_file("ragged.json", R"({"n":2,"entries":[[[0,0,0,0]],[]]})")})).exit_code,
            exit_parse);
  EXPECT_EQ(run(config("spectrum", {sample("missing.json")})).exit_code, exit_parse);
  auto cap = config("spectrum", {sample("mixed3.json")});
  cap.eig_cap = 1;
  EXPECT_EQ(run(cap).exit_code, exit_no_convergence);
  auto far = config("berberian");
  far.q = "3,0,0,0";
  EXPECT_EQ(run(far).exit_code, exit_property);
  auto badq = config("resolvent", {sample("i.json")});
  badq.q = "1,2,3";
  EXPECT_EQ(run(badq).exit_code, exit_parse);
  EXPECT_EQ(run(config("frobnicate")).exit_code, exit_usage);
  auto tol = config("spectrum", {sample("i.json")});
  tol.tol = 0.0;
  EXPECT_EQ(run(tol).exit_code, exit_usage);
  auto op = config("berberian");
  op.q = "0,1,0,0";
  op.op = "bilateral-shift";
  EXPECT_EQ(run(op).exit_code, exit_usage);
  const auto err = run(config("spectrum", {sample("missing.json")}));
  EXPECT_TRUE(err.error);
  EXPECT_TRUE(Json::parse(err.output).contains("error"));
}

TEST(Run, ReportsAreDeterministic) {
  auto check = config("check");
  check.suite = "glim";
  check.seed = 7;
  EXPECT_EQ(run(check).output, run(check).output);
  const auto a = run(config("spectrum", {sample("mixed3.json")}));
  EXPECT_EQ(a.output, run(config("spectrum", {sample("mixed3.json")})).output);
}
