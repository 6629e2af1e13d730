// scene_io.hpp - JSON scene file loading. Parsing is strict: unknown
// fields are rejected, missing optional fields get documented defaults,
// and every numeric constraint of the underlying types is re-validated.
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stereorange/pipeline.hpp"
#include "stereorange/render.hpp"

namespace stereorange {

struct SceneConfig {
    Scene scene;
    std::vector<FrameSpec> frames;
};

class SceneParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_fields(const json& obj, const std::string& where,
                                  std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* name : allowed) {
            if (item.key() == name) {
                known = true;
                break;
            }
        }
        if (!known)
            throw SceneParseError("unknown field \"" + item.key() + "\" in " + where);
    }
}

inline const json& require_field(const json& obj, const std::string& where,
                                 const char* name) {
    const auto it = obj.find(name);
    if (it == obj.end())
        throw SceneParseError("missing field \"" + std::string(name) + "\" in " + where);
    return *it;
}

inline double as_real(const json& value, const std::string& what) {
    if (!value.is_number())
        throw SceneParseError(what + " must be a number");
    return value.get<double>();
}

inline int as_int(const json& value, const std::string& what) {
    if (!value.is_number_integer())
        throw SceneParseError(what + " must be an integer");
    return value.get<int>();
}

inline std::uint64_t as_seed(const json& value, const std::string& what) {
    if (!value.is_number_unsigned())
        throw SceneParseError(what + " must be a non-negative integer");
    return value.get<std::uint64_t>();
}

}  // namespace detail

inline SceneConfig parse_scene_json(const std::string& text) {
    using detail::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SceneParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw SceneParseError("scene file must be a JSON object");
    detail::reject_unknown_fields(
        root, "scene file",
        {"camera", "rig", "background_intensity", "targets", "frames"});

    SceneConfig config;

    const json& camera = detail::require_field(root, "scene file", "camera");
    if (!camera.is_object())
        throw SceneParseError("\"camera\" must be an object");
    detail::reject_unknown_fields(camera, "\"camera\"",
                                  {"h_resolution", "v_resolution", "fov_deg"});
    config.scene.camera.h_resolution = detail::as_int(
        detail::require_field(camera, "\"camera\"", "h_resolution"), "h_resolution");
    config.scene.camera.v_resolution = detail::as_int(
        detail::require_field(camera, "\"camera\"", "v_resolution"), "v_resolution");
    config.scene.camera.fov_rad = deg_to_rad(detail::as_real(
        detail::require_field(camera, "\"camera\"", "fov_deg"), "fov_deg"));

    const json& rig = detail::require_field(root, "scene file", "rig");
    if (!rig.is_object())
        throw SceneParseError("\"rig\" must be an object");
    detail::reject_unknown_fields(rig, "\"rig\"", {"baseline_m", "right_yaw_deg"});
    config.scene.rig.camera = config.scene.camera;
    config.scene.rig.baseline_m = detail::as_real(
        detail::require_field(rig, "\"rig\"", "baseline_m"), "baseline_m");
    config.scene.rig.right_yaw_rad =
        rig.contains("right_yaw_deg")
            ? deg_to_rad(detail::as_real(rig["right_yaw_deg"], "right_yaw_deg"))
            : 0.0;

    config.scene.background_intensity =
        root.contains("background_intensity")
            ? detail::as_int(root["background_intensity"], "background_intensity")
            : 64;

    const json& targets = detail::require_field(root, "scene file", "targets");
    if (!targets.is_array())
        throw SceneParseError("\"targets\" must be an array");
    for (const json& entry : targets) {
        if (!entry.is_object())
            throw SceneParseError("each target must be an object");
        detail::reject_unknown_fields(
            entry, "target",
            {"range_m", "lateral_m", "width_m", "height_m", "texture_seed"});
        TargetSpec target;
        target.range_m =
            detail::as_real(detail::require_field(entry, "target", "range_m"), "range_m");
        target.lateral_m = detail::as_real(
            detail::require_field(entry, "target", "lateral_m"), "lateral_m");
        target.width_m =
            detail::as_real(detail::require_field(entry, "target", "width_m"), "width_m");
        target.height_m = detail::as_real(
            detail::require_field(entry, "target", "height_m"), "height_m");
        target.texture_seed = detail::as_seed(
            detail::require_field(entry, "target", "texture_seed"), "texture_seed");
        config.scene.targets.push_back(target);
    }

    if (root.contains("frames")) {
        const json& frames = root["frames"];
        if (!frames.is_array() || frames.empty())
            throw SceneParseError("\"frames\" must be a non-empty array");
        for (const json& entry : frames) {
            if (!entry.is_object())
                throw SceneParseError("each frame must be an object");
            detail::reject_unknown_fields(entry, "frame", {"t_s", "ego_advance_m"});
            FrameSpec frame;
            frame.t_s = detail::as_real(detail::require_field(entry, "frame", "t_s"), "t_s");
            frame.ego_advance_m = detail::as_real(
                detail::require_field(entry, "frame", "ego_advance_m"), "ego_advance_m");
            config.frames.push_back(frame);
        }
    } else {
        config.frames.push_back({0.0, 0.0});
    }

    try {
        validate(config.scene);
    } catch (const std::invalid_argument& e) {
        throw SceneParseError(e.what());
    }
    for (std::size_t i = 1; i < config.frames.size(); ++i) {
        if (!(config.frames[i].t_s > config.frames[i - 1].t_s))
            throw SceneParseError("frame timestamps must be strictly increasing");
    }
    return config;
}

inline SceneConfig load_scene_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw SceneParseError("cannot open scene file: " + path);
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return parse_scene_json(buffer.str());
}

}  // namespace stereorange
