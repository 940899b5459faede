#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "linesource/errors.hpp"
#include "linesource/experiment.hpp"

using namespace linesource;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("linesource_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::string kNetworkFile = std::string(LINESOURCE_DATA_DIR) + "/synthetic_network.csv";

} // namespace

TEST(Preset, NamesRoundTrip)
{
    for (Preset p : {Preset::exp1_standard_2d, Preset::exp2_removal_3d, Preset::network_removal_3d, Preset::custom}) {
        EXPECT_EQ(parse_preset(preset_name(p)), p);
    }
    EXPECT_THROW((void)parse_preset("exp3"), ValidationError);
}

TEST(ExperimentConfig, Defaults)
{
    const auto e1 = ExperimentConfig::defaults(Preset::exp1_standard_2d);
    EXPECT_EQ(e1.levels, (std::vector<int>{16, 32, 64, 128}));
    EXPECT_EQ(e1.alphas, (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(e1.kappa, 1.0);
    EXPECT_EQ(ExperimentConfig::defaults(Preset::exp2_removal_3d).levels, (std::vector<int>{4, 8, 16}));
    EXPECT_EQ(ExperimentConfig::defaults(Preset::network_removal_3d).levels, (std::vector<int>{2, 4, 8, 16}));
}

TEST(ExperimentConfig, Validation)
{
    auto cfg = ExperimentConfig::defaults(Preset::exp1_standard_2d);
    EXPECT_NO_THROW(cfg.validate());
    cfg.levels = {};
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg.levels = {8, 8};
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg.levels = {8, 4};
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg.levels = {4, 8};
    cfg.kappa = 0.0;
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg.kappa = 1.0;
    cfg.alphas = {3.0};
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg.alphas = {};
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg.alphas = {0.5};
    cfg.output_dir = "/nonexistent/output";
    EXPECT_THROW(cfg.validate(), IoError);

    auto custom = ExperimentConfig::defaults(Preset::custom);
    EXPECT_THROW(custom.validate(), ValidationError);
    custom.network_file = kNetworkFile;
    EXPECT_NO_THROW(custom.validate());
}

TEST(RunExperiment, PointSourceTablesAndFiles)
{
    const auto dir = fresh_dir("exp1");
    auto cfg = ExperimentConfig::defaults(Preset::exp1_standard_2d);
    cfg.levels = {4, 8, 16};
    cfg.alphas = {0.0, 1.0};
    cfg.output_dir = dir;
    const auto result = run_experiment(cfg);
    ASSERT_EQ(result.tables.size(), 2u);
    for (const auto& t : result.tables) {
        EXPECT_EQ(t.rows.size(), 3u);
        EXPECT_NO_THROW(t.validate());
    }
    EXPECT_EQ(*result.tables[1].alpha, 1.0);
    EXPECT_FALSE(result.preflight.has_value());
    ASSERT_EQ(result.levels.size(), 3u);
    for (const auto& lvl : result.levels) {
        EXPECT_LE(lvl.relative_residual, 1e-10);
        EXPECT_LE(lvl.conservation_defect, 1e-9);
    }
    for (const char* name : {"exp1_standard_2d_alpha_0.csv", "exp1_standard_2d_alpha_1.csv", "exp1_standard_2d_n4.vtk",
                             "exp1_standard_2d_n16.vtk", "exp1_standard_2d_levels.csv"}) {
        EXPECT_TRUE(fs::exists(dir / name)) << name;
    }
    EXPECT_EQ(slurp(dir / "exp1_standard_2d_alpha_1.csv"), to_csv(result.tables[1]));
}

TEST(RunExperiment, OutputsAreByteIdenticalAcrossRuns)
{
    for (Preset preset : {Preset::exp1_standard_2d, Preset::exp2_removal_3d}) {
        auto cfg = ExperimentConfig::defaults(preset);
        cfg.levels = {2, 4};
        const auto a = fresh_dir("det_a");
        const auto b = fresh_dir("det_b");
        cfg.output_dir = a;
        const auto ra = run_experiment(cfg);
        cfg.output_dir = b;
        const auto rb = run_experiment(cfg);
        ASSERT_EQ(ra.files.size(), rb.files.size());
        for (std::size_t i = 0; i < ra.files.size(); ++i) {
            EXPECT_EQ(ra.files[i].filename(), rb.files[i].filename());
            EXPECT_EQ(slurp(ra.files[i]), slurp(rb.files[i])) << ra.files[i];
        }
    }
}

TEST(RunExperiment, RemovalPresetsReportDiagnostics)
{
    const auto dir = fresh_dir("removal");
    auto cfg = ExperimentConfig::defaults(Preset::exp2_removal_3d);
    cfg.levels = {2, 4};
    cfg.output_dir = dir;
    const auto result = run_experiment(cfg);
    ASSERT_TRUE(result.preflight.has_value());
    EXPECT_LE(result.preflight->max_defect, kPreflightTolerance);
    ASSERT_EQ(result.tables.size(), 1u);
    EXPECT_FALSE(result.tables[0].alpha.has_value());
    for (const auto& lvl : result.levels) {
        EXPECT_LE(lvl.conservation_defect, 1e-9);
        ASSERT_TRUE(lvl.error_divergence.has_value());
        ASSERT_TRUE(lvl.error_total_u.has_value());
        EXPECT_GT(*lvl.error_total_u, 0.0);
    }
    for (const char* name : {"exp2_removal_3d.csv", "exp2_removal_3d_div.csv", "exp2_removal_3d_total.csv",
                             "exp2_removal_3d_n4.vtk", "exp2_removal_3d_n4_total.vtk", "exp2_removal_3d_levels.csv"}) {
        EXPECT_TRUE(fs::exists(dir / name)) << name;
    }
}

TEST(RunExperiment, NetworkFileAndCustomPreset)
{
    auto net = ExperimentConfig::defaults(Preset::network_removal_3d);
    net.levels = {2};
    net.network_file = kNetworkFile;
    auto bundled = run_experiment(net);
    net.network_file.reset();
    auto generated = run_experiment(net);
    EXPECT_EQ(bundled.tables[0].rows[0].error_u, generated.tables[0].rows[0].error_u);

    auto custom = ExperimentConfig::defaults(Preset::custom);
    custom.levels = {2, 4};
    custom.network_file = kNetworkFile;
    const auto result = run_experiment(custom);
    EXPECT_TRUE(result.tables.empty());
    EXPECT_FALSE(result.preflight.has_value());
    ASSERT_EQ(result.levels.size(), 2u);
    EXPECT_FALSE(result.levels[0].error_total_u.has_value());
    EXPECT_LE(result.levels[1].conservation_defect, 1e-9);
}

TEST(RunExperiment, ErrorsCarryContext)
{
    const auto dir = fresh_dir("bad_network");
    const auto path = dir / "bad.csv";
    std::ofstream(path) << "0,0,0,1,1,1,1,0\n0,0,0,1,1\n";
    auto custom = ExperimentConfig::defaults(Preset::custom);
    custom.network_file = path;
    try {
        (void)run_experiment(custom);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(std::string(e.what()).rfind("custom: ", 0), 0u) << e.what();
    }

    auto cfg = ExperimentConfig::defaults(Preset::exp2_removal_3d);
    cfg.levels = {2};
    cfg.solver.method = SolverMethod::minres;
    cfg.solver.max_iterations = 1;
    try {
        (void)run_experiment(cfg);
        FAIL();
    } catch (const SolverError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("exp2_removal_3d, level n=2: ", 0), 0u) << e.what();
    }
}

TEST(LevelsCsv, Layout)
{
    LevelReport r;
    r.n = 4;
    r.h = 0.25;
    r.cells = 32;
    r.flux_dofs = 56;
    r.method = SolverMethod::direct;
    r.relative_residual = 1.5e-16;
    r.conservation_defect = 0.0;
    EXPECT_EQ(levels_to_csv({r}), "n,h,cells,flux_dofs,solver,relative_residual,conservation_defect\n"
                                  "4,0.25,32,56,direct,1.5e-16,0\n");
}
