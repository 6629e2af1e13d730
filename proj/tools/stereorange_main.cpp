// stereorange_main.cpp - command-line front end. Every number printed or
// written here is the return value of a library call; this file only
// parses flags, validates them, and serializes results.
//
// Exit codes: 0 success, 1 argument/parse errors, 2 computation errors.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stereorange/stereorange.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;

// Argument constraint violation detected after parsing.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void check_common(double fov_deg, int hres) {
    if (!(fov_deg > 0.0) || !(fov_deg < 90.0))
        throw UsageError("fov must be in (0, 90) degrees");
    if (hres < 2)
        throw UsageError("horizontal resolution must be at least 2");
}

struct DesignArgs {
    double range = 0.0;
    double fov_deg = 0.0;
    int hres = 0;
    double sensitivity = 0.05;
};

int run_design(const DesignArgs& args) {
    check_common(args.fov_deg, args.hres);
    if (!(args.range > 0.0))
        throw UsageError("range must be positive");
    if (!(args.sensitivity > 0.0) || !(args.sensitivity < 1.0))
        throw UsageError("sensitivity must be in (0, 1)");
    const int dx = stereorange::min_reliable_disparity(args.sensitivity);
    const double baseline = stereorange::design_baseline(
        args.range, stereorange::deg_to_rad(args.fov_deg), args.hres, dx);
    std::cout << "min_disparity_px " << dx << '\n'
              << "baseline_m " << stereorange::format_number(baseline) << '\n';
    return 0;
}

struct RangeArgs {
    double baseline = 0.0;
    double fov_deg = 0.0;
    int hres = 0;
    int disparity = 0;
};

int run_range(const RangeArgs& args) {
    check_common(args.fov_deg, args.hres);
    if (!(args.baseline > 0.0))
        throw UsageError("baseline must be positive");
    if (args.disparity < 1)
        throw UsageError("disparity must be >= 1");
    const stereorange::RangeEstimate est = stereorange::range_from_disparity(
        args.baseline, args.hres, stereorange::deg_to_rad(args.fov_deg),
        stereorange::Disparity{args.disparity});
    std::cout << "range_m " << stereorange::format_number(est.range_m) << '\n'
              << "eps_quantization "
              << stereorange::format_number(est.eps_quantization) << '\n';
    return 0;
}

struct Fig1Args {
    double baseline = 0.0;
    double fov_deg = 0.0;
    int hres = 0;
    int dx_min = 1;
    int dx_max = 200;
    std::string out;
};

int run_fig1(const Fig1Args& args) {
    check_common(args.fov_deg, args.hres);
    if (!(args.baseline > 0.0))
        throw UsageError("baseline must be positive");
    if (args.dx_min < 1 || args.dx_max < args.dx_min)
        throw UsageError("disparity sweep requires 1 <= dx-min <= dx-max");
    const auto samples = stereorange::fig1_curve(
        args.baseline, args.hres, stereorange::deg_to_rad(args.fov_deg),
        args.dx_min, args.dx_max);
    stereorange::write_csv_file(args.out, [&](std::ostream& os) {
        stereorange::write_fig1_csv(os, samples);
    });
    return 0;
}

struct Fig2Args {
    std::vector<double> baselines{0.60, 1.00, 1.14};
    double range = 500.0;
    double fov_deg = 0.0;
    int hres = 0;
    double delta_min_deg = 0.0;
    double delta_max_deg = 1.0;
    double delta_step_deg = 0.01;
    std::string out;
};

int run_fig2(const Fig2Args& args) {
    check_common(args.fov_deg, args.hres);
    if (args.baselines.empty())
        throw UsageError("at least one baseline is required");
    for (double b : args.baselines)
        if (!(b > 0.0))
            throw UsageError("baselines must be positive");
    if (!(args.range > 0.0))
        throw UsageError("range must be positive");
    if (!(args.delta_min_deg >= 0.0) || !(args.delta_max_deg >= args.delta_min_deg))
        throw UsageError("misalignment sweep requires 0 <= delta-min <= delta-max");
    if (!(args.delta_step_deg > 0.0))
        throw UsageError("delta-step must be positive");
    if (!(args.delta_max_deg < args.fov_deg))
        throw UsageError("delta-max must be smaller than the fov");
    const auto samples = stereorange::fig2_curve(
        args.baselines, args.range, args.hres,
        stereorange::deg_to_rad(args.fov_deg), args.delta_min_deg,
        args.delta_max_deg, args.delta_step_deg);
    stereorange::write_csv_file(args.out, [&](std::ostream& os) {
        stereorange::write_fig2_csv(os, samples);
    });
    return 0;
}

struct Fig3Args {
    double baseline = 0.0;
    double fov_deg = 0.0;
    int hres = 0;
    int vres = 1080;
    std::vector<double> widths{0.5, 1.0, 2.0};
    double r_min = 50.0;
    double r_max = 500.0;
    double r_step = 10.0;
    double kappa = 32.0;
    std::string out;
};

int run_fig3(const Fig3Args& args) {
    check_common(args.fov_deg, args.hres);
    if (!(args.baseline > 0.0))
        throw UsageError("baseline must be positive");
    if (args.vres < 2)
        throw UsageError("vertical resolution must be at least 2");
    if (args.widths.empty())
        throw UsageError("at least one target width is required");
    for (double w : args.widths)
        if (!(w > 0.0))
            throw UsageError("target widths must be positive");
    if (!(args.r_min > 0.0) || !(args.r_max >= args.r_min) || !(args.r_step > 0.0))
        throw UsageError("range sweep requires 0 < r-min <= r-max and r-step > 0");
    if (!(args.kappa > 0.0))
        throw UsageError("kappa must be positive");
    const stereorange::CameraModel camera{args.hres, args.vres,
                                          stereorange::deg_to_rad(args.fov_deg)};
    const auto samples =
        stereorange::fig3_curve(camera, args.baseline, args.widths, args.r_min,
                                args.r_max, args.r_step, args.kappa);
    stereorange::write_csv_file(args.out, [&](std::ostream& os) {
        stereorange::write_fig3_csv(os, samples);
    });
    return 0;
}

struct TrackArgs {
    std::string scene_path;
    std::string out_dir;
    double ttc_threshold = 2.0;
};

std::string frame_image_path(const std::filesystem::path& dir, const char* side,
                             std::size_t index) {
    char name[32];
    std::snprintf(name, sizeof(name), "%s_%03zu.pgm", side, index);
    return (dir / name).string();
}

int run_simulation(const TrackArgs& args, bool with_warnings) {
    if (!(args.ttc_threshold > 0.0))
        throw UsageError("ttc-threshold must be positive");
    stereorange::SceneConfig config;
    try {
        config = stereorange::load_scene_file(args.scene_path);
    } catch (const stereorange::SceneParseError& e) {
        throw UsageError(e.what());
    }

    const std::filesystem::path out_dir(args.out_dir);
    std::filesystem::create_directories(out_dir);

    const stereorange::SequenceResult result = stereorange::run_sequence(
        config.scene, config.frames,
        [&](std::size_t index, const stereorange::Image& left,
            const stereorange::Image& right) {
            stereorange::write_pgm(frame_image_path(out_dir, "left", index), left);
            stereorange::write_pgm(frame_image_path(out_dir, "right", index), right);
        });

    for (const stereorange::SkippedTarget& skip : result.skipped) {
        std::cerr << "stereorange: skipped target " << skip.target_index << " at t="
                  << stereorange::format_number(skip.t_s) << ": " << skip.reason
                  << '\n';
    }

    stereorange::write_csv_file((out_dir / "estimates.csv").string(),
                                [&](std::ostream& os) {
                                    stereorange::write_estimates_csv(os, result.estimates);
                                });
    if (with_warnings) {
        const auto events =
            stereorange::closing_warnings(result.estimates, args.ttc_threshold);
        stereorange::write_csv_file((out_dir / "warnings.csv").string(),
                                    [&](std::ostream& os) {
                                        stereorange::write_warnings_csv(os, events);
                                    });
    }

    if (result.estimates.empty() && !result.skipped.empty()) {
        std::cerr << "stereorange: no target could be ranged in any frame\n";
        return kExitComputation;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stereo rangefinding toolkit"};
    app.require_subcommand(1);

    DesignArgs design;
    CLI::App* design_cmd =
        app.add_subcommand("design", "baseline and minimum reliable disparity for a "
                                     "target range and sensitivity");
    design_cmd->add_option("--range", design.range, "maximum range to cover, m")
        ->required();
    design_cmd->add_option("--fov-deg", design.fov_deg, "horizontal fov, degrees")
        ->required();
    design_cmd->add_option("--hres", design.hres, "horizontal resolution, px")
        ->required();
    design_cmd->add_option("--sensitivity", design.sensitivity,
                           "max relative range step per disparity count")->capture_default_str();

    RangeArgs range_args;
    CLI::App* range_cmd =
        app.add_subcommand("range", "range and quantization error for a disparity");
    range_cmd->add_option("--baseline", range_args.baseline, "baseline, m")->required();
    range_cmd->add_option("--fov-deg", range_args.fov_deg, "horizontal fov, degrees")
        ->required();
    range_cmd->add_option("--hres", range_args.hres, "horizontal resolution, px")
        ->required();
    range_cmd->add_option("--disparity", range_args.disparity, "disparity, px")
        ->required();

    Fig1Args fig1;
    CLI::App* fig1_cmd =
        app.add_subcommand("fig1", "range-vs-disparity curve as CSV");
    fig1_cmd->add_option("--baseline", fig1.baseline, "baseline, m")->required();
    fig1_cmd->add_option("--fov-deg", fig1.fov_deg, "horizontal fov, degrees")
        ->required();
    fig1_cmd->add_option("--hres", fig1.hres, "horizontal resolution, px")->required();
    fig1_cmd->add_option("--dx-min", fig1.dx_min, "first disparity")->capture_default_str();
    fig1_cmd->add_option("--dx-max", fig1.dx_max, "last disparity")->capture_default_str();
    fig1_cmd->add_option("--out", fig1.out, "output CSV path")->required();

    Fig2Args fig2;
    CLI::App* fig2_cmd = app.add_subcommand(
        "fig2", "range error vs axis misalignment (toe-out), per baseline, as CSV");
    fig2_cmd->add_option("--baselines", fig2.baselines, "baselines, m")->capture_default_str()
        ->delimiter(',');
    fig2_cmd->add_option("--range", fig2.range, "true target range, m")->capture_default_str();
    fig2_cmd->add_option("--fov-deg", fig2.fov_deg, "horizontal fov, degrees")
        ->required();
    fig2_cmd->add_option("--hres", fig2.hres, "horizontal resolution, px")->required();
    fig2_cmd->add_option("--delta-min-deg", fig2.delta_min_deg,
                         "first misalignment magnitude, degrees")->capture_default_str();
    fig2_cmd->add_option("--delta-max-deg", fig2.delta_max_deg,
                         "last misalignment magnitude, degrees")->capture_default_str();
    fig2_cmd->add_option("--delta-step-deg", fig2.delta_step_deg,
                         "misalignment step, degrees")->capture_default_str();
    fig2_cmd->add_option("--out", fig2.out, "output CSV path")->required();

    Fig3Args fig3;
    CLI::App* fig3_cmd = app.add_subcommand(
        "fig3", "range error vs distance for several target widths, as CSV");
    fig3_cmd->add_option("--baseline", fig3.baseline, "baseline, m")->required();
    fig3_cmd->add_option("--fov-deg", fig3.fov_deg, "horizontal fov, degrees")
        ->required();
    fig3_cmd->add_option("--hres", fig3.hres, "horizontal resolution, px")->required();
    fig3_cmd->add_option("--vres", fig3.vres, "vertical resolution, px")->capture_default_str();
    fig3_cmd->add_option("--widths", fig3.widths, "target widths, m")->capture_default_str()
        ->delimiter(',');
    fig3_cmd->add_option("--r-min", fig3.r_min, "first range, m")->capture_default_str();
    fig3_cmd->add_option("--r-max", fig3.r_max, "last range, m")->capture_default_str();
    fig3_cmd->add_option("--r-step", fig3.r_step, "range step, m")->capture_default_str();
    fig3_cmd->add_option("--kappa", fig3.kappa,
                         "boundary localization constant, px^2")->capture_default_str();
    fig3_cmd->add_option("--out", fig3.out, "output CSV path")->required();

    TrackArgs simulate;
    CLI::App* simulate_cmd = app.add_subcommand(
        "simulate", "render a scene sequence and write images and estimates");
    simulate_cmd->add_option("--scene", simulate.scene_path, "scene JSON path")
        ->required();
    simulate_cmd->add_option("--out-dir", simulate.out_dir, "output directory")
        ->required();

    TrackArgs track;
    CLI::App* track_cmd = app.add_subcommand(
        "track", "simulate plus closing-rate warnings");
    track_cmd->add_option("--scene", track.scene_path, "scene JSON path")->required();
    track_cmd->add_option("--out-dir", track.out_dir, "output directory")->required();
    track_cmd->add_option("--ttc-threshold", track.ttc_threshold,
                          "warning threshold on time to collision, s")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (design_cmd->parsed())
            return run_design(design);
        if (range_cmd->parsed())
            return run_range(range_args);
        if (fig1_cmd->parsed())
            return run_fig1(fig1);
        if (fig2_cmd->parsed())
            return run_fig2(fig2);
        if (fig3_cmd->parsed())
            return run_fig3(fig3);
        if (simulate_cmd->parsed())
            return run_simulation(simulate, false);
        if (track_cmd->parsed())
            return run_simulation(track, true);
    } catch (const UsageError& e) {
        std::cerr << "stereorange: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "stereorange: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}
