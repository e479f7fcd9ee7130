#include "voxmerge/io/scene.hpp"

#include <fstream>
#include <iterator>

#include <json.hpp>

#include "io/binary.hpp"
#include "voxmerge/error.hpp"

namespace voxmerge::io {

namespace {

using nlohmann::json;

double number(const json& node, const std::string& what) {
    if (!node.is_number()) {
        throw SceneError(what + " must be a number");
    }
    return node.get<double>();
}

Vec3 vec3(const json& node, const std::string& what) {
    if (!node.is_array() || node.size() != 3) {
        throw SceneError(what + " must be an array of 3 numbers");
    }
    return {number(node[0], what), number(node[1], what), number(node[2], what)};
}

const json& field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw SceneError(where + " is missing '" + key + "'");
    }
    return *it;
}

}  // namespace

SceneSpec parse_scene(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid scene JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object() || !doc.contains("primitives") || !doc["primitives"].is_array()) {
        throw SceneError("scene document needs a 'primitives' array");
    }
    SceneSpec scene;
    const json& list = doc["primitives"];
    for (std::size_t i = 0; i < list.size(); ++i) {
        const json& obj = list[i];
        const std::string where = "primitive " + std::to_string(i);
        if (!obj.is_object()) {
            throw SceneError(where + " must be an object");
        }
        const json& type = field(obj, "type", where);
        const json& label = field(obj, "label", where);
        if (!type.is_string() || !label.is_string()) {
            throw SceneError(where + ": 'type' and 'label' must be strings");
        }
        Primitive p;
        p.kind = primitive_kind_from_string(type.get<std::string>());
        p.label = label.get<std::string>();
        p.center = vec3(field(obj, "center", where), where + " center");
        const Vec3 rgb = vec3(field(obj, "rgb", where), where + " rgb");
        p.rgb = {static_cast<float>(rgb[0]), static_cast<float>(rgb[1]),
                 static_cast<float>(rgb[2])};
        switch (p.kind) {
            case PrimitiveKind::sphere:
                p.radius = number(field(obj, "radius", where), where + " radius");
                break;
            case PrimitiveKind::box:
                p.half_extents = vec3(field(obj, "half_extents", where), where + " half_extents");
                break;
            case PrimitiveKind::cylinder: {
                p.radius = number(field(obj, "radius", where), where + " radius");
                p.half_height = number(field(obj, "half_height", where), where + " half_height");
                const json& axis = obj.contains("axis") ? obj["axis"] : json(1);
                if (!axis.is_number_integer()) {
                    throw SceneError(where + " axis must be 0, 1 or 2");
                }
                p.axis = axis.get<int>();
                break;
            }
        }
        scene.primitives.push_back(std::move(p));
    }
    scene.validate();
    return scene;
}

SceneSpec read_scene(const std::filesystem::path& path) {
    std::ifstream in = detail::open_for_read(path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scene(text);
}

std::string format_scene(const SceneSpec& scene) {
    json list = json::array();
    for (const auto& p : scene.primitives) {
        json obj;
        obj["type"] = std::string(to_string(p.kind));
        obj["label"] = p.label;
        obj["center"] = p.center;
        obj["rgb"] = p.rgb;
        switch (p.kind) {
            case PrimitiveKind::sphere:
                obj["radius"] = p.radius;
                break;
            case PrimitiveKind::box:
                obj["half_extents"] = p.half_extents;
                break;
            case PrimitiveKind::cylinder:
                obj["radius"] = p.radius;
                obj["half_height"] = p.half_height;
                obj["axis"] = p.axis;
                break;
        }
        list.push_back(std::move(obj));
    }
    return json{{"primitives", list}}.dump(2) + "\n";
}

void write_scene(const SceneSpec& scene, const std::filesystem::path& path) {
    std::ofstream out = detail::open_for_write(path);
    out << format_scene(scene);
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace voxmerge::io
