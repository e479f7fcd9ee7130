#include "config_json.hpp"

namespace voxmerge::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Command-line results are strings; show numbers and booleans as such.
ordered_json typed(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    const json parsed = json::parse(text, nullptr, false);
    if (!parsed.is_discarded() && parsed.is_number()) return parsed;
    return text;
}

std::string scalar_text(const json& node, const std::string& name) {
    if (node.is_string()) return node.get<std::string>();
    if (node.is_boolean()) return node.get<bool>() ? "true" : "false";
    if (node.is_number()) return node.dump();
    throw CLI::ConversionError("config value for '" + name + "' must be a string, number or bool");
}

}  // namespace

ordered_json ConfigJson::render(const CLI::App* app, bool default_also) const {
    ordered_json j = ordered_json::object();
    for (const CLI::Option* opt : app->get_options({})) {
        if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
        const std::string& name = opt->get_lnames().front();
        if (opt->get_expected_max() != 0) {
            const auto& results = opt->results();
            if (opt->count() == 1 && results.size() == 1) {
                j[name] = typed(results.front());
            } else if (opt->count() >= 1) {
                ordered_json list = ordered_json::array();
                for (const auto& r : results) list.push_back(typed(r));
                j[name] = list;
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = typed(opt->get_default_str());
            } else if (default_also) {
                j[name] = nullptr;
            }
        } else {
            // Flags, including negated aliases such as --no-in-place.
            if (opt->count() > 0) {
                j[name] = opt->as<bool>();
            } else if (default_also) {
                j[name] = typed(opt->get_default_str().empty() ? "false" : opt->get_default_str());
            }
        }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
        if (sub->parsed()) {
            j[sub->get_name()] = render(sub, default_also);
        }
    }
    return j;
}

std::string ConfigJson::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
    return render(app, default_also).dump(2);
}

void ConfigJson::flatten(const json& node, const std::string& name,
                         const std::vector<std::string>& parents,
                         std::vector<CLI::ConfigItem>& out) const {
    if (node.is_object()) {
        std::vector<std::string> next = parents;
        if (!name.empty()) next.push_back(name);
        for (auto it = node.begin(); it != node.end(); ++it) {
            flatten(it.value(), it.key(), next, out);
        }
        return;
    }
    if (name.empty()) {
        throw CLI::ConversionError("config file must hold a JSON object");
    }
    CLI::ConfigItem item;
    item.name = name;
    item.parents = parents;
    if (node.is_array()) {
        for (const auto& v : node) item.inputs.push_back(scalar_text(v, name));
    } else if (!node.is_null()) {
        item.inputs.push_back(scalar_text(node, name));
    } else {
        return;
    }
    out.push_back(std::move(item));
}

std::vector<CLI::ConfigItem> ConfigJson::from_config(std::istream& input) const {
    json doc;
    try {
        input >> doc;
    } catch (const json::exception& e) {
        throw CLI::ConversionError(std::string("invalid config JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    flatten(doc, "", {}, items);
    return items;
}

}  // namespace voxmerge::cli
