#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace voxmerge::cli {

/// JSON front end for CLI11's config-file support.
///
/// Top-level keys set global options; an object keyed by a subcommand name
/// sets that subcommand's options. Flags given on the command line win.
///
///   { "threads": 2, "merge": { "theta": 0.25, "dilation": 3 } }
///
/// to_config() renders only the subcommands that were invoked, so it can
/// print the resolved configuration of a run.
class ConfigJson : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

private:
    nlohmann::ordered_json render(const CLI::App* app, bool default_also) const;
    void flatten(const nlohmann::json& node, const std::string& name,
                 const std::vector<std::string>& parents,
                 std::vector<CLI::ConfigItem>& out) const;
};

}  // namespace voxmerge::cli
