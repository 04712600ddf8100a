#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "../src/cli/commands.hpp"

using namespace cgvs;
using namespace cgvs::cli;

namespace {

struct CommonArgs {
    std::string config_file;
    FlagOverrides flags;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_file, "flat key=value config file");
    cmd->add_option("--sigma-edge", args.flags.sigma_edge, "channel smoothing scale (px)");
    cmd->add_option("--ridge-quantile", args.flags.ridge_quantile,
                    "dominant-edge quantile in (0,1)");
    cmd->add_option("--dr-factor", args.flags.d_r_factor,
                    "voting disk radius as a fraction of min(W,H)");
    cmd->add_option("--sigmac-factor", args.flags.sigma_c_factor,
                    "center-bias std as a fraction of min(W,H)");
    cmd->add_option("--iters", args.flags.iterations, "refinement iterations");
    cmd->add_option("--res-cap", args.flags.working_resolution_cap,
                    "working resolution cap (px)");
    cmd->add_option("--bins", args.flags.histogram_bins, "likelihood histogram bins");
    cmd->add_option("--inhibit-radius", args.flags.inhibit_radius,
                    "inhibition dilation radius (px)");
    cmd->add_option("--residual-stop", args.flags.residual_stop,
                    "search stops below this residual peak");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Context-guided visual search: salient structure detection"};
    app.require_subcommand(1);

    // detect
    std::string detect_image, detect_out;
    CommonArgs detect_args;
    CLI::App* detect = app.add_subcommand("detect", "saliency-structure map for one image");
    detect->add_option("image", detect_image, "input RGB PNG")->required();
    detect->add_option("-o,--output", detect_out, "output grayscale PNG")->required();
    add_common(detect, detect_args);

    // transform
    std::string tr_image, tr_map, tr_out;
    CommonArgs tr_args;
    CLI::App* transform =
        app.add_subcommand("transform", "turn an external saliency map into structures");
    transform->add_option("image", tr_image, "input RGB PNG")->required();
    transform->add_option("saliency", tr_map, "external saliency map PNG")->required();
    transform->add_option("-o,--output", tr_out, "output grayscale PNG")->required();
    add_common(transform, tr_args);

    // search
    std::string search_image, search_out;
    int k_max = 5;
    CommonArgs search_args;
    CLI::App* search = app.add_subcommand("search", "sequential multi-object search");
    search->add_option("image", search_image, "input RGB PNG")->required();
    search->add_option("-o,--output", search_out, "output directory")->required();
    search->add_option("-k,--k-max", k_max, "maximum number of attended objects");
    add_common(search, search_args);

    // eval
    std::string eval_pred, eval_index, eval_task = "object", eval_report;
    CLI::App* eval = app.add_subcommand("eval", "score predictions against a dataset");
    eval->add_option("--pred", eval_pred, "directory of prediction PNGs")->required();
    eval->add_option("--index", eval_index, "dataset index CSV")->required();
    eval->add_option("--task", eval_task, "fixation or object")
        ->check(CLI::IsMember({"fixation", "object"}));
    eval->add_option("-o,--output", eval_report, "report CSV path")->required();

    // sweep
    std::string sweep_index, sweep_out;
    CommonArgs sweep_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "disk-radius / center-bias robustness sweep");
    sweep->add_option("--index", sweep_index, "dataset index CSV (object masks)")
        ->required();
    sweep->add_option("-o,--output", sweep_out, "sweep CSV path")->required();
    add_common(sweep, sweep_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed())
            return cmd_detect(detect_image,
                              resolve_config(detect_args.config_file, detect_args.flags),
                              detect_out);
        if (transform->parsed())
            return cmd_transform(tr_image, tr_map,
                                 resolve_config(tr_args.config_file, tr_args.flags),
                                 tr_out);
        if (search->parsed())
            return cmd_search(search_image,
                              resolve_config(search_args.config_file, search_args.flags),
                              k_max, search_out);
        if (eval->parsed())
            return cmd_eval(eval_pred, eval_index,
                            eval_task == "fixation" ? Task::fixation : Task::object,
                            eval_report);
        if (sweep->parsed())
            return cmd_sweep(sweep_index,
                             resolve_config(sweep_args.config_file, sweep_args.flags),
                             sweep_out);
    } catch (const std::exception& e) {
        std::cerr << "cgvs: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
