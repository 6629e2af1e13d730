// acceptance.cpp - end-to-end acceptance suite. Runs every shipping
// criterion at its stated tolerance and prints one PASS/FAIL line per
// criterion. Exits non-zero if any criterion fails.
//
// Usage: acceptance <path-to-stereorange-cli>
// The CLI path is needed for the output-determinism criterion.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stereorange/stereorange.hpp"

namespace fs = std::filesystem;
using namespace stereorange;

namespace {

constexpr double kFov13 = 13.0 * std::numbers::pi / 180.0;

int g_failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << id << ". " << title;
    if (!pass && !detail.empty())
        std::cout << "  [" << detail << "]";
    std::cout << '\n';
    if (!pass)
        ++g_failures;
}

template <typename Fn>
void criterion(int id, const std::string& title, Fn&& fn) {
    try {
        std::string detail;
        const bool pass = fn(detail);
        report(id, title, pass, detail);
    } catch (const std::exception& e) {
        report(id, title, false, std::string("exception: ") + e.what());
    }
}

bool nearly(double actual, double expected, double abs_tol) {
    return std::abs(actual - expected) <= abs_tol;
}

bool rel_close(double actual, double expected, double rel_tol) {
    return std::abs(actual - expected) <= rel_tol * std::abs(expected);
}

std::string slurp(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return buffer.str();
}

// --- criteria -------------------------------------------------------------

bool sensitivity_threshold(std::string& detail) {
    const int dx = min_reliable_disparity(0.05);
    detail = "got " + std::to_string(dx);
    return dx == 19;
}

bool baseline_design(std::string& detail) {
    const double d = design_baseline(500.0, kFov13, 1920, 19);
    detail = "got " + std::to_string(d);
    return nearly(d, 1.1423, 0.005);
}

bool range_round_trip(std::string& detail) {
    const double r = range_from_disparity(1.1423, 1920, kFov13, Disparity{19}).range_m;
    detail = "got " + std::to_string(r);
    return nearly(r, 500.0, 0.5);
}

bool fig1_reproduction(std::string& detail) {
    const auto curve = fig1_curve(1.1423, 1920, kFov13, 1, 200);
    if (curve.size() != 200) {
        detail = "unexpected sample count";
        return false;
    }
    const double product = curve.front().value.value() * curve.front().abscissa;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double r = curve[i].value.value();
        if (!rel_close(r * curve[i].abscissa, product, 1e-9)) {
            detail = "hyperbola invariant broken at n=" + std::to_string(i + 1);
            return false;
        }
        if (i > 0 && !(r < curve[i - 1].value.value())) {
            detail = "not strictly decreasing at n=" + std::to_string(i + 1);
            return false;
        }
    }
    const double at19 = curve[18].value.value();
    if (!nearly(at19, 500.0, 0.5)) {
        detail = "r(19) = " + std::to_string(at19);
        return false;
    }
    return true;
}

bool eq1_eq2_equivalence(std::string& detail) {
    for (int di = 0; di < 10; ++di) {
        for (int ai = 0; ai < 10; ++ai) {
            for (int ni = 0; ni < 10; ++ni) {
                const double d = 0.1 + di * 0.543;
                const double fov = deg_to_rad(5.0 + ai * 8.0);
                const Disparity n{1 + ni * 111};
                const CameraModel cam{1920, 1080, fov};
                const double via_focal = range_eq1(focal_pixels(cam), d, n);
                const double via_fov = range_from_disparity(d, 1920, fov, n).range_m;
                if (!rel_close(via_focal, via_fov, 1e-12)) {
                    detail = "mismatch at grid point (" + std::to_string(di) + "," +
                             std::to_string(ai) + "," + std::to_string(ni) + ")";
                    return false;
                }
            }
        }
    }
    return true;
}

bool eq4_consistency(std::string& detail) {
    for (int n = 1; n <= 10000; ++n) {
        const double eps = quantization_error(Disparity{n});
        if (eps != 1.0 / (n + 1.0)) {
            detail = "eps(" + std::to_string(n) + ") != 1/(n+1)";
            return false;
        }
        const double c = 1.14 * 1920 / std::tan(kFov13);
        const double r_n = c / n;
        const double r_next = c / (n + 1);
        // the subtraction r_n - r_next cancels ~n+1 significant digits,
        // so the oracle's own rounding grows as (n+1) * machine epsilon
        const double oracle_tol =
            4.0 * (n + 1) * std::numeric_limits<double>::epsilon();
        if (!rel_close(eps, (r_n - r_next) / r_n, oracle_tol)) {
            detail = "two-range oracle disagrees at n=" + std::to_string(n);
            return false;
        }
    }
    if (quantization_error(Disparity{19}) != 0.05) {
        detail = "eps(19) != 0.05";
        return false;
    }
    return true;
}

bool fig2_properties(std::string& detail) {
    const std::vector<double> baselines{0.60, 1.00, 1.14};
    const auto samples = fig2_curve(baselines, 500.0, 1920, kFov13, 0.0, 1.0, 0.01);
    const std::size_t per_baseline = samples.size() / baselines.size();

    // zero misalignment gives exactly zero error
    for (std::size_t b = 0; b < baselines.size(); ++b) {
        const auto& first = samples[b * per_baseline];
        if (!first.value || *first.value != 0.0) {
            detail = "nonzero error at delta=0";
            return false;
        }
    }
    // |error| non-decreasing up to divergence
    for (std::size_t b = 0; b < baselines.size(); ++b) {
        double previous = 0.0;
        for (std::size_t i = 0; i < per_baseline; ++i) {
            const auto& s = samples[b * per_baseline + i];
            if (!s.value)
                break;
            if (std::abs(*s.value) < previous) {
                detail = "error magnitude decreased along the sweep";
                return false;
            }
            previous = std::abs(*s.value);
        }
    }
    // larger baselines never err more at the same grid point
    for (std::size_t i = 0; i < per_baseline; ++i) {
        const auto& b060 = samples[0 * per_baseline + i];
        const auto& b100 = samples[1 * per_baseline + i];
        const auto& b114 = samples[2 * per_baseline + i];
        if (b060.value && b100.value &&
            std::abs(*b060.value) < std::abs(*b100.value)) {
            detail = "baseline ordering broken (0.60 vs 1.00)";
            return false;
        }
        if (b100.value && b114.value &&
            std::abs(*b100.value) < std::abs(*b114.value)) {
            detail = "baseline ordering broken (1.00 vs 1.14)";
            return false;
        }
    }
    // the 1.14 m rig exceeds 100 % error or diverges before one degree
    bool exceeded = false;
    for (std::size_t i = 0; i < per_baseline; ++i) {
        const auto& s = samples[2 * per_baseline + i];
        if (s.abscissa >= 1.0)
            break;
        if (!s.value || std::abs(*s.value) > 1.0) {
            exceeded = true;
            break;
        }
    }
    if (!exceeded) {
        detail = "error never exceeded 100 % below one degree";
        return false;
    }
    return true;
}

bool projection_oracle(std::string& detail) {
    std::mt19937 gen(31415u);
    std::uniform_real_distribution<double> fov_deg(5.0, 80.0);
    std::uniform_real_distribution<double> baseline(0.05, 5.0);
    std::uniform_real_distribution<double> disparity_target(0.1, 1000.0);
    std::uniform_int_distribution<int> hres(64, 4096);
    for (int i = 0; i < 100; ++i) {
        StereoRig rig;
        rig.camera = {hres(gen), 480, deg_to_rad(fov_deg(gen))};
        rig.baseline_m = baseline(gen);
        const double f = focal_pixels(rig.camera);
        const double z = f * rig.baseline_m / disparity_target(gen);
        const double projected = project_pair(rig, {0.0, 0.0, z}).disparity();
        const double analytic = f * rig.baseline_m / z;
        if (!rel_close(projected, analytic, 1e-9)) {
            detail = "divergence at sample " + std::to_string(i);
            return false;
        }
    }
    return true;
}

bool matcher_shift_recovery(std::string& detail) {
    Image left(256, 64);
    for (int v = 0; v < left.height; ++v)
        for (int u = 0; u < left.width; ++u)
            left.at(u, v) = texture_value(31, static_cast<std::uint64_t>(v),
                                          static_cast<std::uint64_t>(u));
    for (int k : {0, 1, 5, 19}) {
        Image right(left.width, left.height, 0);
        for (int v = 0; v < left.height; ++v)
            for (int u = 0; u + k < left.width; ++u)
                right.at(u, v) = left.at(u + k, v);
        const int matched = block_match(left, right, BoundingBox{30, 170, 8, 56}, 60);
        if (matched != k) {
            detail = "shift " + std::to_string(k) + " matched as " +
                     std::to_string(matched);
            return false;
        }
    }
    return true;
}

bool end_to_end_ranging(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();

    Scene scene;
    scene.camera = {1920, 1080, kFov13};
    scene.rig.camera = scene.camera;
    scene.rig.baseline_m = 1.14;
    scene.targets.push_back({100.0, 0.0, 2.0, 2.0, 4});

    const RenderResult rendered = render_pair(scene);
    if (!rendered.left_boxes[0]) {
        detail = "target not visible";
        return false;
    }
    const int k = block_match(rendered.left, rendered.right, *rendered.left_boxes[0],
                              1920 / 4);
    const double continuous = focal_pixels(scene.camera) * 1.14 / 100.0;
    if (std::abs(k - continuous) > 1.0) {
        detail = "matched " + std::to_string(k) + " px vs continuous " +
                 std::to_string(continuous);
        return false;
    }
    const double range = range_from_disparity(1.14, 1920, kFov13, Disparity{k}).range_m;
    if (!rel_close(range, 100.0, 0.02)) {
        detail = "range " + std::to_string(range);
        return false;
    }

    const double elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed_s >= 5.0) {
        detail = "took " + std::to_string(elapsed_s) + " s";
        return false;
    }
    return true;
}

bool warning_logic(std::string& detail) {
    const std::vector<FrameEstimate> constant{
        {0.0, 0, 50, 100.0, 100.0}, {1.0, 0, 50, 100.0, 100.0}, {2.0, 0, 50, 100.0, 100.0}};
    if (!closing_warnings(constant, 2.0).empty()) {
        detail = "constant range produced a warning";
        return false;
    }
    const std::vector<FrameEstimate> slow{{0.0, 0, 10, 100.0, 100.0},
                                          {1.0, 0, 11, 90.0, 90.0}};
    if (!closing_warnings(slow, 2.0).empty()) {
        detail = "ttc 9 s produced a warning at threshold 2 s";
        return false;
    }
    const std::vector<FrameEstimate> fast{{0.0, 0, 100, 20.0, 20.0},
                                          {1.0, 0, 200, 10.0, 10.0}};
    const auto events = closing_warnings(fast, 2.0);
    if (events.size() != 1) {
        detail = "expected exactly one warning, got " + std::to_string(events.size());
        return false;
    }
    if (!nearly(events[0].ttc_s, 1.0, 1e-9)) {
        detail = "ttc " + std::to_string(events[0].ttc_s);
        return false;
    }
    return true;
}

bool simulate_determinism(const std::string& cli_path, std::string& detail) {
    const fs::path dir = fs::temp_directory_path() / "stereorange_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const fs::path scene_path = dir / "scene.json";
    {
        std::ofstream os(scene_path, std::ios::binary);
        os << R"({
  "camera": {"h_resolution": 320, "v_resolution": 240, "fov_deg": 13.0},
  "rig": {"baseline_m": 1.14},
  "targets": [
    {"range_m": 25.0, "lateral_m": 0.0, "width_m": 1.0, "height_m": 1.0, "texture_seed": 42},
    {"range_m": 60.0, "lateral_m": 1.0, "width_m": 2.0, "height_m": 2.0, "texture_seed": 7}
  ],
  "frames": [
    {"t_s": 0.0, "ego_advance_m": 0.0},
    {"t_s": 0.5, "ego_advance_m": 3.0}
  ]
})";
    }

    for (const char* run : {"a", "b"}) {
        const std::string command = "\"" + cli_path + "\" simulate --scene " +
                                    scene_path.string() + " --out-dir " +
                                    (dir / run).string() + " > /dev/null 2>&1";
        const int status = std::system(command.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
            detail = std::string("simulate run '") + run + "' failed";
            return false;
        }
    }

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir / "a"))
        names.push_back(entry.path().filename().string());
    if (names.empty()) {
        detail = "no outputs produced";
        return false;
    }
    std::sort(names.begin(), names.end());
    for (const std::string& name : names) {
        if (!fs::exists(dir / "b" / name)) {
            detail = "missing " + name + " in second run";
            return false;
        }
        if (slurp(dir / "a" / name) != slurp(dir / "b" / name)) {
            detail = name + " differs between runs";
            return false;
        }
    }
    detail.clear();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-stereorange-cli>\n";
        return 2;
    }
    const std::string cli_path = argv[1];

    criterion(1, "sensitivity threshold: min reliable disparity at 5 % is 19",
              sensitivity_threshold);
    criterion(2, "baseline design: 500 m / 13 deg / 1920 px / 19 px gives 1.1423 m",
              baseline_design);
    criterion(3, "round trip: the designed rig ranges 19 px to 500 m", range_round_trip);
    criterion(4, "fig1: hyperbolic, strictly decreasing, 500 m at 19 px",
              fig1_reproduction);
    criterion(5, "focal-form and fov-form ranges agree to 1e-12", eq1_eq2_equivalence);
    criterion(6, "quantization error equals the adjacent-range gap, 1/(n+1)",
              eq4_consistency);
    criterion(7, "fig2: zero at zero, monotone, baseline-ordered, >100 % before 1 deg",
              fig2_properties);
    criterion(8, "projection oracle: disparity equals f*d/z to 1e-9", projection_oracle);
    criterion(9, "matcher recovers synthetic shifts 0/1/5/19 exactly",
              matcher_shift_recovery);
    criterion(10, "end to end: 100 m target within 1 px and 2 %, under 5 s",
              end_to_end_ranging);
    criterion(11, "warning logic: none / none / one event with ttc 1.0 s",
              warning_logic);
    criterion(12, "determinism: repeated simulate runs are bit-identical",
              [&](std::string& detail) { return simulate_determinism(cli_path, detail); });

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
