#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "../src/cli/commands.hpp"
#include "cgvs/filters.hpp"
#include "cgvs/image_io.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace cgvs;
using namespace cgvs::cli;

namespace {

// Fresh scratch directory per test case, removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("cgvs_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string read_file(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gray PNG round trip stays within the quantization bound") {
    TempDir tmp;
    std::mt19937 rng(701);
    Raster x = test::random_raster(23, 17, rng);
    const std::string p = tmp / "map.png";
    write_gray_png(p, x);
    Raster back = read_gray_png(p);
    REQUIRE(back.width() == 23);
    REQUIRE(back.height() == 17);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(back[i] - x[i]) <= 1.0 / 510.0 + 1e-12);
}

TEST_CASE("color PNG round trip") {
    TempDir tmp;
    std::mt19937 rng(703);
    ColorImage img(9, 7);
    img.r = test::random_raster(9, 7, rng);
    img.g = test::random_raster(9, 7, rng);
    img.b = test::random_raster(9, 7, rng);
    const std::string p = tmp / "img.png";
    write_color_png(p, img);
    ColorImage back = read_color_png(p);
    for (std::size_t i = 0; i < img.r.size(); ++i) {
        CHECK(std::abs(back.r[i] - img.r[i]) <= 1.0 / 510.0 + 1e-12);
        CHECK(std::abs(back.g[i] - img.g[i]) <= 1.0 / 510.0 + 1e-12);
        CHECK(std::abs(back.b[i] - img.b[i]) <= 1.0 / 510.0 + 1e-12);
    }
}

TEST_CASE("reading a missing PNG throws") {
    CHECK_THROWS(read_color_png("/nonexistent/nowhere.png"));
    CHECK_THROWS(read_gray_png("/nonexistent/nowhere.png"));
}

TEST_CASE("fixation CSV parsing") {
    TempDir tmp;
    const std::string p = tmp / "fix.csv";
    {
        std::ofstream out(p);
        out << "# header comment\n3,4\n 10 , 2 \n\n7,0\n";
    }
    FixationSet fix = read_fixations_csv(p);
    REQUIRE(fix.points.size() == 3);
    CHECK(fix.points[0].x == 3);
    CHECK(fix.points[0].y == 4);
    CHECK(fix.points[1].x == 10);
    CHECK(fix.points[2].y == 0);

    {
        std::ofstream out(p);
        out << "3;4\n";
    }
    CHECK_THROWS(read_fixations_csv(p));
}

TEST_CASE("config file parsing with overrides") {
    TempDir tmp;
    const std::string p = tmp / "run.cfg";
    {
        std::ofstream out(p);
        out << "# comment line\nsigma_edge = 1.5\niterations = 3\n"
            << "ridge_quantile = 0.7  # trailing comment\n";
    }
    RunConfig cfg = load_config_file(p);
    CHECK(cfg.sigma_edge == doctest::Approx(1.5));
    CHECK(cfg.iterations == 3);
    CHECK(cfg.ridge_quantile == doctest::Approx(0.7));
    CHECK(cfg.d_r_factor == doctest::Approx(1.0 / 3.0));  // untouched default

    FlagOverrides flags;
    flags.iterations = 0;
    RunConfig merged = resolve_config(p, flags);
    CHECK(merged.iterations == 0);  // flag beats file
    CHECK(merged.sigma_edge == doctest::Approx(1.5));

    {
        std::ofstream out(p);
        out << "no_such_key = 1\n";
    }
    CHECK_THROWS(load_config_file(p));
    {
        std::ofstream out(p);
        out << "sigma_edge = -2\n";
    }
    CHECK_THROWS(load_config_file(p));
}

TEST_CASE("cmd_detect writes a map of matching dimensions") {
    TempDir tmp;
    ColorImage img = test::square_scene(64, 48, 20, 12, 20, 0.2, 0.8);
    const std::string in = tmp / "scene.png";
    const std::string out = tmp / "out.png";
    write_color_png(in, img);

    RunConfig cfg;
    cfg.iterations = 1;
    CHECK(cmd_detect(in, cfg, out) == kExitOk);
    Raster map = read_gray_png(out);
    CHECK(map.width() == 64);
    CHECK(map.height() == 48);
}

TEST_CASE("cmd_detect fails cleanly on unreadable input or output") {
    TempDir tmp;
    RunConfig cfg;
    CHECK(cmd_detect(tmp / "missing.png", cfg, tmp / "out.png") == kExitInputError);

    ColorImage img = test::gray_image(Raster(24, 24, 0.5));
    const std::string in = tmp / "scene.png";
    write_color_png(in, img);
    CHECK(cmd_detect(in, cfg, "/nonexistent_dir/out.png") == kExitInputError);
}

TEST_CASE("cmd_transform reports resampling and fallback") {
    TempDir tmp;
    ColorImage img = test::square_scene(48, 48, 14, 14, 20, 0.2, 0.8);
    const std::string in = tmp / "scene.png";
    write_color_png(in, img);

    // Map at a different size: resampled, still succeeds.
    Raster small(24, 24, 0.0);
    small.at(13, 13) = 1.0;
    small = gaussian_smooth(small, 3.0);
    const std::string map = tmp / "map.png";
    write_gray_png(map, normalize01(small));

    RunConfig cfg;
    cfg.iterations = 1;
    CHECK(cmd_transform(in, map, cfg, tmp / "out.png") == kExitOk);
    Raster out = read_gray_png(tmp / "out.png");
    CHECK(out.width() == 48);
}

TEST_CASE("cmd_search emits per-step artifacts") {
    TempDir tmp;
    const int n = 96;
    Raster lum(n, n, 0.05);
    for (int y = 10; y < 46; ++y)
        for (int x = 10; x < 46; ++x) lum.at(x, y) = 0.9;
    for (int y = 52; y < 88; ++y)
        for (int x = 52; x < 88; ++x) lum.at(x, y) = 0.55;
    const std::string in = tmp / "scene.png";
    write_color_png(in, test::gray_image(lum));

    RunConfig cfg;
    const std::string outdir = tmp / "steps";
    CHECK(cmd_search(in, cfg, 2, outdir) == kExitOk);
    CHECK(fs::exists(fs::path(outdir) / "attended.csv"));
    CHECK(fs::exists(fs::path(outdir) / "weights.csv"));

    int masks = 0;
    for (const auto& e : fs::directory_iterator(outdir))
        if (e.path().filename().string().find("_mask.png") != std::string::npos) ++masks;
    CHECK(masks >= 1);
    CHECK(masks <= 2);

    std::istringstream attended(read_file((fs::path(outdir) / "attended.csv").string()));
    std::string line;
    int rows = 0;
    while (std::getline(attended, line))
        if (!line.empty()) ++rows;
    CHECK(rows == masks + 1);  // header + one row per step
}

TEST_CASE("cmd_search on a blank scene writes empty CSVs and exits 0") {
    TempDir tmp;
    const std::string in = tmp / "blank.png";
    write_color_png(in, test::gray_image(Raster(48, 48, 0.5)));
    RunConfig cfg;
    const std::string outdir = tmp / "steps";
    CHECK(cmd_search(in, cfg, 3, outdir) == kExitOk);
    std::istringstream attended(read_file((fs::path(outdir) / "attended.csv").string()));
    std::string line;
    int rows = 0;
    while (std::getline(attended, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 1);  // header only
}

TEST_CASE("cmd_eval scores perfect predictions perfectly") {
    TempDir tmp;
    fs::create_directories(fs::path(tmp / "pred"));

    std::ostringstream index;
    for (int i = 0; i < 3; ++i) {
        const std::string stem = "img" + std::to_string(i);
        Mask gt = test::square_mask(32, 32, 4 + 3 * i, 6, 10);
        Raster gt_raster(32, 32);
        for (std::size_t j = 0; j < gt.size(); ++j) gt_raster[j] = gt[j] ? 1.0 : 0.0;

        write_color_png(tmp / (stem + "_rgb.png"), test::gray_image(gt_raster));
        write_gray_png(tmp / (stem + "_gt.png"), gt_raster);
        // Prediction keyed by the image stem.
        write_gray_png((fs::path(tmp / "pred") / (stem + "_rgb.png")).string(), gt_raster);
        index << (tmp / (stem + "_rgb.png")) << "," << (tmp / (stem + "_gt.png")) << "\n";
    }
    const std::string index_path = tmp / "index.csv";
    {
        std::ofstream out(index_path);
        out << index.str();
    }

    const std::string report = tmp / "report.csv";
    CHECK(cmd_eval(tmp / "pred", index_path, Task::object, report) == kExitOk);
    const std::string text = read_file(report);
    CHECK(text.find("MEAN,1,1,0,") != std::string::npos);
    CHECK(fs::exists(tmp / "report_pr_curve.csv"));
}

TEST_CASE("cmd_eval flags missing predictions and keeps going") {
    TempDir tmp;
    fs::create_directories(fs::path(tmp / "pred"));

    Mask gt = test::square_mask(24, 24, 5, 5, 8);
    Raster gtr(24, 24);
    for (std::size_t j = 0; j < gt.size(); ++j) gtr[j] = gt[j] ? 1.0 : 0.0;
    write_color_png(tmp / "a.png", test::gray_image(gtr));
    write_gray_png(tmp / "a_gt.png", gtr);
    write_color_png(tmp / "b.png", test::gray_image(gtr));
    write_gray_png(tmp / "b_gt.png", gtr);
    write_gray_png((fs::path(tmp / "pred") / "a.png").string(), gtr);
    // no prediction for b

    const std::string index_path = tmp / "index.csv";
    {
        std::ofstream out(index_path);
        out << (tmp / "a.png") << "," << (tmp / "a_gt.png") << "\n"
            << (tmp / "b.png") << "," << (tmp / "b_gt.png") << "\n";
    }
    const std::string report = tmp / "report.csv";
    CHECK(cmd_eval(tmp / "pred", index_path, Task::object, report) == kExitPartialFailure);
    const std::string text = read_file(report);
    CHECK(text.find("missing prediction") != std::string::npos);
}

TEST_CASE("cmd_eval is order independent") {
    TempDir tmp;
    fs::create_directories(fs::path(tmp / "pred"));
    std::mt19937 rng(705);

    std::vector<std::string> lines;
    for (int i = 0; i < 4; ++i) {
        const std::string stem = "s" + std::to_string(i);
        Mask gt = test::square_mask(24, 24, 2 + 2 * i, 3, 7);
        Raster gtr(24, 24);
        for (std::size_t j = 0; j < gt.size(); ++j) gtr[j] = gt[j] ? 1.0 : 0.0;
        Raster pred = test::random_raster(24, 24, rng);

        write_color_png(tmp / (stem + ".png"), test::gray_image(gtr));
        write_gray_png(tmp / (stem + "_gt.png"), gtr);
        write_gray_png((fs::path(tmp / "pred") / (stem + ".png")).string(), pred);
        lines.push_back((tmp / (stem + ".png")) + "," + (tmp / (stem + "_gt.png")));
    }

    const std::string fwd = tmp / "fwd.csv", rev = tmp / "rev.csv";
    {
        std::ofstream out(fwd);
        for (const auto& l : lines) out << l << "\n";
    }
    {
        std::ofstream out(rev);
        for (auto it = lines.rbegin(); it != lines.rend(); ++it) out << *it << "\n";
    }
    CHECK(cmd_eval(tmp / "pred", fwd, Task::object, tmp / "r1.csv") == kExitOk);
    CHECK(cmd_eval(tmp / "pred", rev, Task::object, tmp / "r2.csv") == kExitOk);
    CHECK(read_file(tmp / "r1.csv") == read_file(tmp / "r2.csv"));
}

TEST_CASE("cmd_eval rejects an empty index") {
    TempDir tmp;
    const std::string index_path = tmp / "empty.csv";
    {
        std::ofstream out(index_path);
        out << "# nothing here\n";
    }
    CHECK(cmd_eval(tmp / "pred", index_path, Task::object, tmp / "r.csv") ==
          kExitInputError);
}

TEST_CASE("cmd_eval fixation task computes AUC") {
    TempDir tmp;
    fs::create_directories(fs::path(tmp / "pred"));

    Raster sal(16, 16, 0.0);
    sal.at(4, 4) = 1.0;
    sal.at(10, 12) = 1.0;
    write_color_png(tmp / "f.png", test::gray_image(sal));
    write_gray_png((fs::path(tmp / "pred") / "f.png").string(), sal);
    {
        std::ofstream out(tmp / "f_fix.csv");
        out << "4,4\n10,12\n";
    }
    const std::string index_path = tmp / "index.csv";
    {
        std::ofstream out(index_path);
        out << (tmp / "f.png") << "," << (tmp / "f_fix.csv") << "\n";
    }
    CHECK(cmd_eval(tmp / "pred", index_path, Task::fixation, tmp / "r.csv") == kExitOk);
    const std::string text = read_file(tmp / "r.csv");
    CHECK(text.find("MEAN,1,") != std::string::npos);
}

TEST_CASE("malformed fixation files produce a per-entry error row") {
    TempDir tmp;
    fs::create_directories(fs::path(tmp / "pred"));
    Raster sal(16, 16, 0.5);
    write_color_png(tmp / "f.png", test::gray_image(sal));
    write_gray_png((fs::path(tmp / "pred") / "f.png").string(), sal);
    {
        std::ofstream out(tmp / "f_fix.csv");
        out << "not a point\n";
    }
    const std::string index_path = tmp / "index.csv";
    {
        std::ofstream out(index_path);
        out << (tmp / "f.png") << "," << (tmp / "f_fix.csv") << "\n";
    }
    CHECK(cmd_eval(tmp / "pred", index_path, Task::fixation, tmp / "r.csv") ==
          kExitPartialFailure);
    CHECK(read_file(tmp / "r.csv").find("malformed") != std::string::npos);
}
