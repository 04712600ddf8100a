#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "cgvs/bayes.hpp"
#include "cgvs/edge.hpp"
#include "cgvs/image_io.hpp"
#include "cgvs/metrics.hpp"
#include "cgvs/transform.hpp"

namespace fs = std::filesystem;

namespace cgvs::cli {

namespace {

std::string stem_of(const std::string& path) {
    return fs::path(path).stem().string();
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

std::string weights_record(const WeightVector& w) {
    std::ostringstream ss;
    for (int c = 0; c < kNumChannels; ++c)
        ss << (c ? " " : "") << "w_" << kChannelNames[c] << "=" << fmt(w[c]);
    return ss.str();
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

RunConfig resolve_config(const std::string& config_file, const FlagOverrides& flags) {
    RunConfig cfg;
    if (!config_file.empty()) cfg = load_config_file(config_file);

    if (flags.sigma_edge) cfg.sigma_edge = *flags.sigma_edge;
    if (flags.ridge_quantile) cfg.ridge_quantile = *flags.ridge_quantile;
    if (flags.d_r_factor) cfg.d_r_factor = *flags.d_r_factor;
    if (flags.sigma_c_factor) cfg.sigma_c_factor = *flags.sigma_c_factor;
    if (flags.residual_stop) cfg.residual_stop = *flags.residual_stop;
    if (flags.iterations) cfg.iterations = *flags.iterations;
    if (flags.working_resolution_cap) cfg.working_resolution_cap = *flags.working_resolution_cap;
    if (flags.histogram_bins) cfg.histogram_bins = *flags.histogram_bins;
    if (flags.inhibit_radius) cfg.inhibit_radius = *flags.inhibit_radius;

    cfg.validate();
    return cfg;
}

DatasetIndex load_index(const std::string& path, Task task) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open index file " + path);

    DatasetIndex index;
    index.task = task;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r\n");
        line = line.substr(b, e - b + 1);

        DatasetEntry entry;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            entry.image_path = line;
        } else {
            entry.image_path = line.substr(0, comma);
            entry.annotation_path = line.substr(comma + 1);
        }
        if (entry.image_path.empty())
            throw std::runtime_error("index: empty image path at " + path + ":" +
                                     std::to_string(lineno));
        index.entries.push_back(std::move(entry));
    }
    return index;
}

int cmd_detect(const std::string& image_path, const RunConfig& cfg,
               const std::string& output_path) {
    try {
        const ColorImage img = read_color_png(image_path);
        const PosteriorMap post = cgvs_detect(img, cfg.iterations, cfg);
        write_gray_png(output_path, post.p_sx);
        std::cout << "detect image=" << image_path << " width=" << img.width()
                  << " height=" << img.height() << " iters=" << post.iteration
                  << " t_max=" << fmt(post.partition.t_max) << " "
                  << weights_record(post.weights) << " out=" << output_path << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "detect: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_transform(const std::string& image_path, const std::string& map_path,
                  const RunConfig& cfg, const std::string& output_path) {
    try {
        const ColorImage img = read_color_png(image_path);
        const Raster sal = read_gray_png(map_path);
        GaussianPrior fitted;
        bool resampled = false;
        const PosteriorMap post =
            transform_saliency(img, sal, cfg.iterations, cfg, &fitted, &resampled);
        write_gray_png(output_path, post.p_sx);
        std::cout << "transform image=" << image_path << " map=" << map_path
                  << " mean_x=" << fmt(fitted.mean_x) << " mean_y=" << fmt(fitted.mean_y)
                  << " cov_xx=" << fmt(fitted.cov_xx) << " cov_xy=" << fmt(fitted.cov_xy)
                  << " cov_yy=" << fmt(fitted.cov_yy)
                  << " fallback_center=" << (fitted.mean_fallback ? 1 : 0)
                  << " fallback_cov=" << (fitted.cov_fallback ? 1 : 0)
                  << " resampled=" << (resampled ? 1 : 0) << " "
                  << weights_record(post.weights) << " out=" << output_path << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "transform: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_search(const std::string& image_path, const RunConfig& cfg, int k_max,
               const std::string& output_dir) {
    try {
        const ColorImage img = read_color_png(image_path);
        fs::create_directories(output_dir);

        // The first-pass posterior plays the initial saliency map. A scene
        // with no dominant edges carries no structure evidence at all, so the
        // search starts from an empty map and stops immediately.
        Raster init(img.width(), img.height(), 0.0);
        const EdgeMap edges =
            extract_ridges(detect_edges(img, cfg.sigma_edge), cfg.ridge_quantile);
        if (count(edges.ridges) > 0) init = cgvs_detect(img, 0, cfg).p_sx;
        const SearchTrace trace = multi_object_search(img, init, k_max, cfg);

        std::ofstream attended(fs::path(output_dir) / "attended.csv");
        std::ofstream weights(fs::path(output_dir) / "weights.csv");
        if (!attended || !weights)
            throw std::runtime_error("cannot write CSVs in " + output_dir);
        attended << "step,x,y\n";
        weights << "step,w_lum,w_rg,w_by,w_ed\n";

        for (std::size_t k = 0; k < trace.steps.size(); ++k) {
            const SearchStep& step = trace.steps[k];
            Raster m(step.object.width(), step.object.height());
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = step.object[i] ? 1.0 : 0.0;
            std::ostringstream name;
            name << "step_" << (k < 9 ? "0" : "") << (k + 1) << "_mask.png";
            write_gray_png((fs::path(output_dir) / name.str()).string(), m);

            attended << (k + 1) << "," << step.x << "," << step.y << "\n";
            weights << (k + 1);
            for (int c = 0; c < kNumChannels; ++c)
                weights << "," << fmt(step.weights[c]);
            weights << "\n";
        }
        std::cout << "search image=" << image_path << " steps=" << trace.steps.size()
                  << " out=" << output_dir << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "search: " << e.what() << "\n";
        return kExitInputError;
    }
}

namespace {

struct EvalRow {
    std::string stem;
    bool ok = false;
    std::string status;
    double auc = 0.0;
    double max_f = 0.0, weighted_f = 0.0, mae_v = 0.0, coverage = 0.0;
    CurveReport pr;  // object task only
};

EvalRow eval_entry(const DatasetEntry& entry, Task task, const std::string& pred_dir) {
    EvalRow row;
    row.stem = stem_of(entry.image_path);
    try {
        if (!fs::exists(entry.image_path))
            throw std::runtime_error("missing image");
        const fs::path pred_path = fs::path(pred_dir) / (row.stem + ".png");
        if (!fs::exists(pred_path))
            throw std::runtime_error("missing prediction");
        const Raster pred = read_gray_png(pred_path.string());

        if (task == Task::fixation) {
            const FixationSet fix = read_fixations_csv(entry.annotation_path);
            row.auc = roc_auc(pred, fix).summary;
        } else {
            const Mask gt = read_mask_png(entry.annotation_path);
            row.pr = pr_fscore(pred, gt);
            row.max_f = row.pr.summary;
            row.weighted_f = weighted_fscore(pred, gt);
            row.mae_v = mae(pred, gt);
            row.coverage = static_cast<double>(count(gt)) / static_cast<double>(gt.size());
        }
        row.ok = true;
        row.status = "ok";
    } catch (const std::exception& e) {
        row.status = sanitize(e.what());
    }
    return row;
}

}  // namespace

int cmd_eval(const std::string& pred_dir, const std::string& index_path,
             Task task, const std::string& report_path) {
    try {
        const DatasetIndex index = load_index(index_path, task);
        if (index.entries.empty()) {
            std::cerr << "eval: no entries in " << index_path << "\n";
            return kExitInputError;
        }

        std::vector<EvalRow> rows(index.entries.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(index.entries.size()); ++i)
            rows[i] = eval_entry(index.entries[i], task, pred_dir);

        std::sort(rows.begin(), rows.end(),
                  [](const EvalRow& a, const EvalRow& b) { return a.stem < b.stem; });

        std::ofstream out(report_path);
        if (!out)
            throw std::runtime_error("cannot write report " + report_path);
        out.precision(9);

        std::size_t n_ok = 0;
        if (task == Task::fixation) {
            out << "image,auc,status\n";
            double sum_auc = 0.0;
            for (const EvalRow& r : rows) {
                out << r.stem << ",";
                if (r.ok) {
                    out << r.auc;
                    sum_auc += r.auc;
                    ++n_ok;
                }
                out << "," << r.status << "\n";
            }
            out << "MEAN," << (n_ok ? sum_auc / n_ok : 0.0) << ",\n";
        } else {
            out << "image,max_f,weighted_f,mae,coverage,status\n";
            double sf = 0.0, sw = 0.0, sm = 0.0, sc = 0.0;
            for (const EvalRow& r : rows) {
                out << r.stem << ",";
                if (r.ok) {
                    out << r.max_f << "," << r.weighted_f << "," << r.mae_v << ","
                        << r.coverage;
                    sf += r.max_f;
                    sw += r.weighted_f;
                    sm += r.mae_v;
                    sc += r.coverage;
                    ++n_ok;
                } else {
                    out << ",,,";
                }
                out << "," << r.status << "\n";
            }
            const double inv = n_ok ? 1.0 / static_cast<double>(n_ok) : 0.0;
            out << "MEAN," << sf * inv << "," << sw * inv << "," << sm * inv << ","
                << sc * inv << ",\n";
            std::cout << "eval coverage_mean=" << fmt(sc * inv) << " images=" << n_ok
                      << "\n";

            // Mean P-R curve across evaluated images.
            const fs::path curve_path =
                fs::path(report_path).parent_path() /
                (fs::path(report_path).stem().string() + "_pr_curve.csv");
            std::ofstream curve(curve_path);
            curve.precision(9);
            curve << "threshold,recall,precision\n";
            if (n_ok > 0) {
                const std::size_t levels = 256;
                for (std::size_t j = 0; j < levels; ++j) {
                    double t = 0.0, rec = 0.0, prec = 0.0;
                    for (const EvalRow& r : rows) {
                        if (!r.ok) continue;
                        t = r.pr.samples[j].threshold;
                        rec += r.pr.samples[j].x;
                        prec += r.pr.samples[j].y;
                    }
                    curve << t << "," << rec * inv << "," << prec * inv << "\n";
                }
            }
        }

        const bool partial = n_ok != rows.size();
        if (partial)
            std::cerr << "eval: " << (rows.size() - n_ok) << " of " << rows.size()
                      << " entries failed\n";
        return partial ? kExitPartialFailure : kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "eval: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_sweep(const std::string& index_path, const RunConfig& cfg,
              const std::string& output_csv) {
    try {
        const DatasetIndex index = load_index(index_path, Task::object);
        if (index.entries.empty()) {
            std::cerr << "sweep: no entries in " << index_path << "\n";
            return kExitInputError;
        }

        // One parameter varies, the other stays at its default 1/3.
        const double factors[] = {1.0 / 2.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 5.0, 1.0 / 6.0};
        std::vector<std::pair<double, double>> grid;
        for (double f : factors) grid.emplace_back(f, 1.0 / 3.0);
        for (double f : factors) grid.emplace_back(1.0 / 3.0, f);

        std::ofstream out(output_csv);
        if (!out)
            throw std::runtime_error("cannot write " + output_csv);
        out.precision(9);
        out << "d_r_factor,sigma_c_factor,mean_iou,mean_mae\n";

        bool any_failed = false;
        for (auto [fd, fsg] : grid) {
            RunConfig c = cfg;
            c.d_r_factor = fd;
            c.sigma_c_factor = fsg;

            const std::size_t n = index.entries.size();
            std::vector<double> ious(n, -1.0), maes(n, 0.0);
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
                try {
                    const ColorImage img = read_color_png(index.entries[i].image_path);
                    const Mask gt = read_mask_png(index.entries[i].annotation_path);
                    const PosteriorMap post = cgvs_detect(img, c.iterations, c);
                    ious[i] = mask_iou(threshold_mask(post.p_sx, 0.5), gt);
                    maes[i] = mae(post.p_sx, gt);
                } catch (const std::exception&) {
                    // Leave the slot marked failed; reported once below.
                }
            }

            double si = 0.0, sm = 0.0;
            std::size_t ok = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (ious[i] >= 0.0) {
                    si += ious[i];
                    sm += maes[i];
                    ++ok;
                }
            if (ok != n) any_failed = true;
            const double inv = ok ? 1.0 / static_cast<double>(ok) : 0.0;
            out << fd << "," << fsg << "," << si * inv << "," << sm * inv << "\n";
        }

        std::cout << "sweep images=" << index.entries.size()
                  << " configs=" << grid.size() << " out=" << output_csv << "\n";
        return any_failed ? kExitPartialFailure : kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "sweep: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace cgvs::cli
