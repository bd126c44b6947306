#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "filippov/cli/app.hpp"
#include "filippov/cli/commands.hpp"
#include "filippov/cli/spec_io.hpp"
#include "filippov/tangency.hpp"

using namespace filippov;
using namespace filippov::cli;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSphereSpec =
    R"({"manifold": "sphere", "A": [[-1, 0, 0], [1, -1, 0], [0, 0, -1]], "b21": 0, "b31": 0, "b32": 0})";
constexpr const char* kTorusSpec = R"({"manifold": "torus", "A": [[0, 0, -1], [0, 0, 0], [1, 0, 0]], "b21": 2})";

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("filippov_cli_") + info->name() + "_" +
                                            std::to_string(std::random_device{}()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    static std::string read(const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static Result run_cli(std::vector<std::string> args) {
        args.insert(args.begin(), "filippov");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        Result r;
        r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    fs::path dir_;
};

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

Vec3 vec_of(const nlohmann::json& j) { return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()}; }

}  // namespace

TEST(SpecIo, ParsesAndRoundTrips) {
    const SystemSpec spec = parse_spec_text(kSphereSpec);
    EXPECT_EQ(spec.kind, ManifoldKind::Sphere);
    EXPECT_EQ(spec.a(1, 0), 1.0);
    const SystemSpec again = parse_spec_text(to_json(spec).dump());
    EXPECT_EQ(spec_digest(spec), spec_digest(again));
    EXPECT_EQ(spec_digest(spec).size(), 16u);
}

TEST(SpecIo, RejectsBadInput) {
    EXPECT_THROW(parse_spec_text("{"), SpecError);
    EXPECT_THROW(parse_spec_text(R"({"manifold": "cube", "A": [[1,0,0],[0,1,0],[0,0,1]]})"), SpecError);
    EXPECT_THROW(parse_spec_text(R"({"manifold": "sphere", "A": [[1,0,0],[0,1,0]]})"), SpecError);
    EXPECT_THROW(parse_spec_text(R"({"manifold": "sphere", "A": [[1,0,0],[0,1,0],[0,0,1]], "c": 1})"), SpecError);
    EXPECT_THROW(parse_spec_text(R"({"manifold": "torus", "A": [[1,0,0],[0,1,0],[0,0,1]], "b31": 1})"), SpecError);
    EXPECT_THROW(parse_point("1,2"), SpecError);
    EXPECT_EQ(parse_point("1,-2,0.5"), (Vec3{1, -2, 0.5}));
}

TEST(SpecIo, ExplicitCompanionIsChecked) {
    SystemSpec spec = parse_spec_text(
        R"({"manifold": "sphere", "A": [[1,0,0],[0,1,0],[0,0,1]], "B": [[-1,0,0],[0,-1,0],[0,0,-1]]})");
    EXPECT_NO_THROW(build_pair(spec));
    spec = parse_spec_text(
        R"({"manifold": "sphere", "A": [[1,0,0],[0,1,0],[0,0,1]], "B": [[-1,0.5,0],[0,-1,0],[0,0,-1]]})");
    try {
        build_pair(spec);
        FAIL();
    } catch (const PatternError& e) {
        ASSERT_EQ(e.mismatches().size(), 1u);
        EXPECT_EQ(e.mismatches()[0].row, 1);
        EXPECT_EQ(e.mismatches()[0].col, 2);
    }
}

TEST_F(CliTest, BuildPrintsCompanion) {
    const auto spec = write("s.json", R"({"manifold": "sphere", "A": [[1,0,0],[0,1,0],[0,0,1]]})");
    const Result r = run_cli({"build", "--spec", spec.string()});
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("[-1, 0, 0]"), std::string::npos);
    EXPECT_NE(r.out.find("[0, 0, -1]"), std::string::npos);
    EXPECT_NE(r.out.find("status: ok"), std::string::npos);

    const Result j = run_cli({"build", "--spec", spec.string(), "--out", (dir_ / "b.json").string()});
    EXPECT_EQ(j.code, kOk);
    const auto doc = nlohmann::json::parse(read(dir_ / "b.json"));
    EXPECT_EQ(doc["schema"], "build/1");
    EXPECT_LE(doc["residual"].get<double>(), 1e-12);
}

TEST_F(CliTest, BuildRejectsPatternViolation) {
    const auto spec = write(
        "s.json", R"({"manifold": "sphere", "A": [[1,0,0],[0,1,0],[0,0,1]], "B": [[-1,0,0],[0,-1,0],[0,0,-2]]})");
    const Result r = run_cli({"build", "--spec", spec.string()});
    EXPECT_EQ(r.code, kCheckFailed);
    EXPECT_NE(r.err.find("b33"), std::string::npos);
}

TEST_F(CliTest, UsageAndParseErrors) {
    EXPECT_EQ(run_cli({}).code, kUsage);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kUsage);
    EXPECT_EQ(run_cli({"build"}).code, kUsage);
    EXPECT_EQ(run_cli({"build", "--spec", (dir_ / "missing.json").string()}).code, kUsage);
    const auto bad = write("bad.json", "{ not json");
    EXPECT_EQ(run_cli({"classify", "--spec", bad.string()}).code, kUsage);
    const auto spec = write("s.json", kSphereSpec);
    EXPECT_EQ(run_cli({"simulate", "--spec", spec.string(), "--x0", "1,2"}).code, kUsage);
    EXPECT_EQ(run_cli({"verify", "--spec", spec.string(), "--theorem", "B"}).code, kUsage);
    EXPECT_EQ(run_cli({"emit-figure", "--spec", spec.string(), "--figure", "2", "--out", dir_.string()}).code,
              kUsage);
    EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

TEST_F(CliTest, ClassifyNegativeDefinite) {
    const auto spec = write("s.json", kSphereSpec);
    const Result r = run_cli({"classify", "--spec", spec.string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["schema"], "classify/1");
    EXPECT_EQ(doc["configuration"], "Empty");
    EXPECT_EQ(doc["curve_count"], 0);
    EXPECT_EQ(doc["regions"]["uniform_label"], "Sliding");
    EXPECT_EQ(doc["regions"]["counts"]["Sliding"], static_cast<int>(kLabelGridRows * kLabelGridCols));
}

TEST_F(CliTest, ClassifyZeroFormIsDegenerate) {
    const auto spec = write("s.json", R"({"manifold": "sphere", "A": [[0,-1,0],[1,0,0],[0,0,0]]})");
    const Result r = run_cli({"classify", "--spec", spec.string(), "--out", (dir_ / "c.json").string()});
    EXPECT_EQ(r.code, kDegenerate);
    const auto doc = nlohmann::json::parse(read(dir_ / "c.json"));
    EXPECT_EQ(doc["schema"], "error/1");
    EXPECT_EQ(doc["error"], "zero_form");
}

TEST_F(CliTest, ClassifyTorus) {
    const auto spec = write("t.json", kTorusSpec);
    const Result r = run_cli({"classify", "--spec", spec.string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["configuration"], "FourCircles");
    EXPECT_EQ(doc["curves"].size(), 4u);
    EXPECT_EQ(doc["crossings"].size(), 4u);
}

TEST_F(CliTest, SimulateWritesCsv) {
    const auto spec = write("s.json", R"({"manifold": "sphere", "A": [[-1,0,0],[0,-1,0],[0,0,-1]], "b21": 1})");
    const fs::path csv = dir_ / "t.csv";
    const Result r = run_cli({"simulate", "--spec", spec.string(), "--x0", "2,0,0", "--tmax", "5", "--out",
                              csv.string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_NE(r.out.find("termination: TimeLimit"), std::string::npos);
    const auto lines = lines_of(read(csv));
    ASSERT_GT(lines.size(), 3u);
    EXPECT_EQ(lines[0].rfind("# trajectory-csv/1 spec=", 0), 0u);
    EXPECT_NE(lines[0].find("seed=1 columns=t,x1,x2,x3,kind,segment"), std::string::npos);
    bool free_seen = false, sliding_seen = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), ','), 5) << lines[i];
        free_seen |= lines[i].find(",FreeAbove,") != std::string::npos;
        sliding_seen |= lines[i].find(",Sliding,") != std::string::npos;
    }
    EXPECT_TRUE(free_seen);
    EXPECT_TRUE(sliding_seen);
}

TEST_F(CliTest, SimulateTorusClosedOrbit) {
    const auto spec = write("t.json", kTorusSpec);
    const Result r = run_cli({"simulate", "--spec", spec.string(), "--x0", "2,0,1", "--tmax", "6.283185307179586"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_NE(r.err.find("closure: closed"), std::string::npos) << r.err;
    EXPECT_EQ(lines_of(r.out)[0].rfind("# trajectory-csv/1", 0), 0u);
}

TEST_F(CliTest, SimulateEquilibriumSingleRow) {
    const auto spec = write("s.json", kSphereSpec);
    const Result r = run_cli({"simulate", "--spec", spec.string(), "--x0", "0,0,1"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(lines_of(r.out).size(), 2u);
    EXPECT_NE(r.err.find("degenerate"), std::string::npos);
}

TEST_F(CliTest, SimulateStrictEscalatesAdvisories) {
    // x' = (x3, 0, 0) grazes the sphere from (-2, 0, 1 + 1e-7); B is the companion.
    const auto spec = write("s.json", R"({"manifold": "sphere", "A": [[0,0,1],[0,0,0],[0,0,0]], "b21": 1})");
    const std::vector<std::string> args{"simulate", "--spec", spec.string(), "--x0", "-2,0,1.0000001", "--tmax",
                                        "4", "--out", (dir_ / "t.csv").string()};
    const Result lax = run_cli(args);
    EXPECT_EQ(lax.code, kOk);
    EXPECT_NE(lax.out.find("advisory:"), std::string::npos);
    auto strict = args;
    strict.push_back("--strict");
    EXPECT_EQ(run_cli(strict).code, kAdvisory);
}

TEST_F(CliTest, VerifyExitCodes) {
    const auto sphere = write("s.json", kSphereSpec);
    const Result a = run_cli({"verify", "--spec", sphere.string(), "--theorem", "A", "--trials", "100", "--seed",
                              "7", "--out", (dir_ / "a.json").string()});
    EXPECT_EQ(a.code, kOk) << a.err;
    EXPECT_NE(a.out.find("status: PASS"), std::string::npos);
    const auto doc = nlohmann::json::parse(read(dir_ / "a.json"));
    EXPECT_EQ(doc["schema"], "verify/1");
    EXPECT_EQ(doc["seed"], 7);
    EXPECT_EQ(doc["trials_passed"], 100);

    const auto torus = write("t.json", kTorusSpec);
    EXPECT_EQ(run_cli({"verify", "--spec", torus.string(), "--theorem", "B", "--trials", "100"}).code, kOk);

    const auto trivial = write("z.json", R"({"manifold": "sphere", "A": [[-1,0,0],[0,-1,0],[0,0,-1]]})");
    EXPECT_EQ(run_cli({"verify", "--spec", trivial.string(), "--theorem", "A"}).code, kDegenerate);

    const auto nonskew = write("n.json", R"({"manifold": "torus", "A": [[1,0,-1],[0,0,0],[1,0,0]], "b21": 2})");
    const Result b = run_cli({"verify", "--spec", nonskew.string(), "--theorem", "B"});
    EXPECT_EQ(b.code, kDegenerate);
    EXPECT_NE(b.err.find("x1^4"), std::string::npos);

    // An impossible tolerance makes the trials fail.
    const Result tight = run_cli({"verify", "--spec", sphere.string(), "--theorem", "A", "--trials", "5", "--tol",
                                  "1e-300"});
    EXPECT_EQ(tight.code, kCheckFailed);
    EXPECT_NE(tight.out.find("status: FAIL"), std::string::npos);
}

TEST_F(CliTest, EmitFigureSphereCurvesReload) {
    const auto spec = write("s.json", R"({"manifold": "sphere", "A": [[0.5,0,0],[0,-0.5,0.3],[0,0.1,0.2]], "b21": 1})");
    const Result r = run_cli({"emit-figure", "--spec", spec.string(), "--figure", "1", "--out", (dir_ / "fig").string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto doc = nlohmann::json::parse(read(dir_ / "fig" / "curves.json"));
    EXPECT_EQ(doc["schema"], "curves/1");
    const Mat3 a{{0.5, 0, 0}, {0, -0.5, 0.3}, {0, 0.1, 0.2}};
    const SymForm3 q = quadratic_form_Q(a);
    std::size_t checked = 0;
    for (const auto& c : doc["curves"]) {
        const CircleCurve circle{vec_of(c["center"]), vec_of(c["normal"]), c["radius"].get<double>(), ""};
        for (const Vec3& p : circle.sample(128)) {
            EXPECT_LE(std::abs(sigma(ManifoldKind::Sphere, p)), 1e-9);
            EXPECT_LE(std::abs(q.evaluate(p)), 1e-9);
            ++checked;
        }
    }
    for (const auto& loop : doc["loops"])
        for (const auto& pj : loop["points"]) {
            const Vec3 p = vec_of(pj);
            EXPECT_LE(std::abs(sigma(ManifoldKind::Sphere, p)), 1e-9);
            EXPECT_LE(std::abs(q.evaluate(p)), 1e-9);
            ++checked;
        }
    EXPECT_GT(checked, 0u);
    EXPECT_EQ(doc["curve_count"].get<std::size_t>(), doc["curves"].size() + doc["loops"].size());

    const auto surface = lines_of(read(dir_ / "fig" / "surface.csv"));
    EXPECT_EQ(surface[0].rfind("# surface-csv/1", 0), 0u);
    const auto traj = lines_of(read(dir_ / "fig" / "trajectories.csv"));
    EXPECT_EQ(traj[0].rfind("# trajectory-csv/1", 0), 0u);
    EXPECT_GT(traj.size(), 10u);
}

TEST_F(CliTest, EmitFigureEmptySphere) {
    const auto spec = write("s.json", kSphereSpec);
    ASSERT_EQ(run_cli({"emit-figure", "--spec", spec.string(), "--out", (dir_ / "fig").string()}).code, kOk);
    const auto doc = nlohmann::json::parse(read(dir_ / "fig" / "curves.json"));
    EXPECT_EQ(doc["curve_count"], 0);
    EXPECT_TRUE(doc["curves"].empty());
    EXPECT_TRUE(doc["loops"].empty());
}

TEST_F(CliTest, EmitFigureTorus) {
    const auto spec = write("t.json", kTorusSpec);
    const Result r = run_cli({"emit-figure", "--spec", spec.string(), "--figure", "2", "--out", (dir_ / "fig").string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto doc = nlohmann::json::parse(read(dir_ / "fig" / "curves.json"));
    ASSERT_EQ(doc["curves"].size(), 4u);
    const Mat3 a{{0, 0, -1}, {0, 0, 0}, {1, 0, 0}};
    for (const auto& c : doc["curves"]) {
        const CircleCurve circle{vec_of(c["center"]), vec_of(c["normal"]), c["radius"].get<double>(), ""};
        for (const Vec3& p : circle.sample(128)) {
            EXPECT_LE(std::abs(sigma(ManifoldKind::Torus, p)), 1e-9);
            EXPECT_LE(std::abs(lie_derivative(a, ManifoldKind::Torus, p, 1)), 1e-9);
        }
    }
}

TEST_F(CliTest, OutputIsDeterministic) {
    const auto spec = write("s.json", R"({"manifold": "sphere", "A": [[0.3,-1.2,0.5],[0.7,-0.1,1.9],[-1.4,0.2,0.8]], "b21": 0.5})");
    for (int k = 0; k < 2; ++k) {
        ASSERT_EQ(run_cli({"verify", "--spec", spec.string(), "--trials", "20", "--seed", "3", "--out",
                           (dir_ / ("v" + std::to_string(k) + ".json")).string()})
                      .code,
                  kOk);
    }
    EXPECT_EQ(read(dir_ / "v0.json"), read(dir_ / "v1.json"));
}
