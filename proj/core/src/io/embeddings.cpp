#include "voxmerge/io/embeddings.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "io/binary.hpp"
#include "voxmerge/error.hpp"

namespace voxmerge::io {

namespace {

using nlohmann::json;

Embedding to_vector(const json& node, const std::string& name) {
    if (!node.is_array()) {
        throw SchemaError("'" + name + "' must be an array of numbers");
    }
    Embedding v;
    v.reserve(node.size());
    for (const auto& x : node) {
        if (!x.is_number()) {
            throw SchemaError("'" + name + "' contains a non-numeric entry");
        }
        v.push_back(x.get<double>());
    }
    return v;
}

std::vector<Embedding> to_matrix(const json& node, const std::string& name) {
    if (!node.is_array()) {
        throw SchemaError("'" + name + "' must be an array of arrays");
    }
    std::vector<Embedding> rows;
    rows.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        rows.push_back(to_vector(node[i], name + "[" + std::to_string(i) + "]"));
    }
    return rows;
}

const json& require(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw SchemaError(std::string("missing key '") + key + "'");
    }
    return *it;
}

}  // namespace

EmbeddingSet parse_embeddings(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid embeddings JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) {
        throw SchemaError("embeddings document must be a JSON object");
    }
    EmbeddingSet set;
    set.image_input = to_matrix(require(doc, "image_input"), "image_input");
    set.image_edited = to_matrix(require(doc, "image_edited"), "image_edited");
    set.text_input = to_vector(require(doc, "text_input"), "text_input");
    set.text_edited = to_vector(require(doc, "text_edited"), "text_edited");
    set.text_word = to_vector(require(doc, "text_word"), "text_word");
    set.text_generic = to_vector(require(doc, "text_generic"), "text_generic");
    return normalize_embeddings(std::move(set));
}

EmbeddingSet read_embeddings(const std::filesystem::path& path) {
    std::ifstream in = detail::open_for_read(path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_embeddings(text);
}

std::string format_embeddings(const EmbeddingSet& set) {
    set.validate_shape();
    json doc = json::object();
    doc["image_input"] = set.image_input;
    doc["image_edited"] = set.image_edited;
    doc["text_input"] = set.text_input;
    doc["text_edited"] = set.text_edited;
    doc["text_word"] = set.text_word;
    doc["text_generic"] = set.text_generic;
    return doc.dump() + "\n";
}

void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path) {
    std::ofstream out = detail::open_for_write(path);
    out << format_embeddings(set);
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace voxmerge::io
