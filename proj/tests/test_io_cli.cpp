// Copyright 2026 The trapwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "oracles.hpp"
#include "trapwalk/cli.hpp"
#include "trapwalk/io.hpp"

namespace trapwalk {
namespace {

namespace fs = std::filesystem;
using io::json;

class TempDir : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("trapwalk_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST(IoJson, ComplexPairs) {
    EXPECT_EQ(io::complex_to_json(Complex(1.5, -2.0)), json::parse("[1.5, -2.0]"));
    EXPECT_EQ(io::complex_from_json(json::parse("[0.25, 3]")), Complex(0.25, 3.0));
    EXPECT_THROW(io::complex_from_json(json::parse("\"1+2i\"")), Error);
    EXPECT_THROW(io::complex_from_json(json::parse("[1]")), Error);
}

TEST(IoJson, CoinRoundTripIsExact) {
    TypeIIaParams p;
    p.delta1 = 0.3;
    p.delta2 = 0.8;
    p.delta3 = 1.1;
    p.eta = 2.0;
    p.phi_e = 0.7;
    const Matrix4 c = coin_type_IIa(p);
    const json j = json::parse(io::coin_to_json(c, FamilyParams(p)).dump());
    EXPECT_EQ(io::coin_from_json(j), c);
    EXPECT_EQ(j.at("family"), "TypeIIa");
    const FamilyParams back = io::params_from_json("TypeIIa", j.at("params"));
    EXPECT_EQ(make_coin(back), c);
}

TEST(IoJson, CoinValidation) {
    EXPECT_THROW(io::coin_from_json(json::parse("{}")), Error);
    EXPECT_THROW(io::coin_from_json(json::parse(R"({"matrix": [[[1,0]]]})")), Error);
    json j = io::coin_to_json(Matrix4::Identity());
    j["basis"] = {"R", "U", "D", "L"};
    EXPECT_THROW(io::coin_from_json(j), Error);
}

TEST(IoJson, ClassificationFields) {
    const json j = io::classification_to_json(classify_coin(oracle::grover()));
    EXPECT_EQ(j.at("family"), "TypeIIa");
    EXPECT_EQ(j.at("escaping_dim"), 1);
    EXPECT_EQ(j.at("rankA"), 3);
    EXPECT_EQ(j.at("eigenphases").size(), 2u);
    EXPECT_FALSE(j.contains("variant"));
}

TEST(IoJson, ErrorShape) {
    const json j = io::error_to_json(Error(ErrorKind::NotTrapping, "nope"));
    EXPECT_EQ(j.at("error").at("kind"), "not-trapping");
    EXPECT_EQ(j.at("error").at("message"), "nope");
}

TEST(IoCsv, DistributionFloorAndRoundTrip) {
    Distribution d;
    d.time = 1;
    d.radius = 1;
    d.P = {0, 0, 0, 0.1, 0.6, 0.3, 0, 1e-7, 0};
    const std::string csv = io::distribution_csv(d, 1e-5);
    EXPECT_EQ(csv, "x,y,P\n-1,0,0.1\n0,0,0.6\n1,0,0.3\n");
}

TEST(IoCsv, AreaSweepHeader) {
    const std::string csv = io::area_sweep_csv(area_sweep(3));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "delta1,delta2,S");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
    EXPECT_NE(csv.find("nan"), std::string::npos);
}

TEST_F(TempDir, AtomicWriteCreatesDirectoriesAndLeavesNoTemp) {
    const std::string target = path("nested/out.txt");
    io::write_file_atomic(target, "hello\n");
    EXPECT_EQ(io::read_file(target), "hello\n");
    io::write_file_atomic(target, "again\n");
    EXPECT_EQ(io::read_file(target), "again\n");
    EXPECT_FALSE(fs::exists(target + ".tmp"));
    EXPECT_THROW(io::read_file(path("missing.json")), Error);
}

std::string dispatch_to_string(const cli::RunConfig &cfg) {
    std::ostringstream out;
    cli::dispatch(cfg, out);
    return out.str();
}

TEST(Cli, CoinSubcommandBuildsGrover) {
    cli::RunConfig cfg;
    cfg.subcommand = "coin";
    cfg.family = "IIa";
    cfg.delta1 = cfg.delta2 = cfg.delta3 = kPi / 4;
    cfg.eta = kPi;
    const Matrix4 c = io::coin_from_json(json::parse(dispatch_to_string(cfg)));
    EXPECT_LT(max_abs(c - oracle::grover()), 1e-15);
}

TEST(Cli, DegreesConvertEveryAngle) {
    cli::RunConfig cfg;
    cfg.family = "IIa";
    cfg.degrees = true;
    cfg.delta1 = 30;
    cfg.delta2 = 45;
    cfg.delta3 = 45;
    cfg.eta = 90;
    cfg.phi_g = 180;
    const auto p = std::get<TypeIIaParams>(cli::family_params(cfg));
    EXPECT_NEAR(p.delta1, kPi / 6, 1e-15);
    EXPECT_NEAR(p.eta, kPi / 2, 1e-15);
    EXPECT_NEAR(p.phi_g, kPi, 1e-15);
    cfg.eta.reset();
    EXPECT_EQ(std::get<TypeIIaParams>(cli::family_params(cfg)).eta, kPi);
}

TEST(Cli, UnknownFamilyIsInvalidInput) {
    cli::RunConfig cfg;
    cfg.family = "III";
    try {
        cli::family_params(cfg);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    }
}

TEST_F(TempDir, ClassifyRoundTripThroughFiles) {
    TypeIParams p;
    p.delta1 = 0.4;
    p.delta2 = 1.2;
    p.phi_d = 0.3;
    p.phi_h = 2.0;
    const Matrix4 c = coin_type_I(p);
    io::write_file_atomic(path("coin.json"), io::coin_to_json(c).dump());

    cli::RunConfig cfg;
    cfg.subcommand = "classify";
    cfg.coin_path = path("coin.json");
    const json r = json::parse(dispatch_to_string(cfg));
    EXPECT_EQ(r.at("family"), "TypeI");
    EXPECT_EQ(r.at("rankA"), 4);
    const Matrix4 back = make_coin(io::params_from_json("TypeI", r.at("params")));
    EXPECT_TRUE(equal_up_to_phase(back, c, 1e-9));
}

TEST_F(TempDir, SimulateWritesSnapshotsAndTrajectory) {
    cli::RunConfig cfg;
    cfg.subcommand = "simulate";
    cfg.family = "I";
    cfg.delta1 = 1.0;
    cfg.delta2 = 0.2;
    cfg.steps = 8;
    cfg.snapshots = {4, 8};
    cfg.init = "0.5,0,0,0.5,0,0.5,0.5,0";
    cfg.out_dir = dir_.string();
    dispatch_to_string(cfg);
    EXPECT_TRUE(fs::exists(path("dist_t4.csv")));
    EXPECT_TRUE(fs::exists(path("dist_t8.csv")));
    const std::string traj = io::read_file(path("trajectory.csv"));
    EXPECT_EQ(std::count(traj.begin(), traj.end(), '\n'), 10);
}

TEST_F(TempDir, FigurePresetsWriteArtifacts) {
    for (const char *name : {"fig2", "fig4", "fig6"}) {
        cli::RunConfig cfg;
        cfg.subcommand = "figure";
        cfg.figure = name;
        cfg.out_dir = path(name);
        const json summary = json::parse(dispatch_to_string(cfg));
        EXPECT_EQ(summary.at("figure"), name);
        for (const char *f : {"coin.json", "region.json", "dist_t50.csv", "trajectory.csv", "summary.json"}) {
            EXPECT_TRUE(fs::exists(path(std::string(name) + "/" + f))) << name << "/" << f;
        }
    }
    const json region = json::parse(io::read_file(path("fig2/region.json")));
    EXPECT_NEAR(region.at("a1").get<double>(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(region.at("b2").get<double>(), std::sqrt(3.0) / 2, 1e-12);
}

TEST(Cli, SpectrumFromCoinFileNeedsRecognizedFamily) {
    cli::RunConfig cfg;
    cfg.subcommand = "spectrum";
    cfg.family = "I";
    cfg.delta1 = 0.4;
    cfg.delta2 = 0.9;
    cfg.grid = 4;
    const std::string csv = dispatch_to_string(cfg);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "kx,ky,omega,vx,vy,detH");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
}

TEST(Cli, RunReportsParseErrorsWithNonzeroStatus) {
    const char *argv[] = {"trapwalk", "coin", "--delta1", "abc"};
    testing::internal::CaptureStderr();
    testing::internal::CaptureStdout();
    EXPECT_NE(cli::run(4, argv), 0);
    testing::internal::GetCapturedStdout();
    testing::internal::GetCapturedStderr();
}

TEST(Cli, RunReportsModuleErrorsAsJson) {
    const char *argv[] = {"trapwalk", "coin", "--family", "I", "--delta1", "0.5", "--delta2", "0.5"};
    testing::internal::CaptureStderr();
    EXPECT_EQ(cli::run(8, argv), 2);
    const json err = json::parse(testing::internal::GetCapturedStderr());
    EXPECT_EQ(err.at("error").at("kind"), "parameter-domain");
}

}  // namespace
}  // namespace trapwalk
