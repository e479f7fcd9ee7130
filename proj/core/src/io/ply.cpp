#include "voxmerge/io/ply.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "io/binary.hpp"
#include "voxmerge/error.hpp"

namespace voxmerge::io {

namespace {

enum class Scalar { i8, u8, i16, u16, i32, u32, f32, f64 };

Scalar scalar_from_name(const std::string& name, std::uint64_t offset) {
    if (name == "char" || name == "int8") return Scalar::i8;
    if (name == "uchar" || name == "uint8") return Scalar::u8;
    if (name == "short" || name == "int16") return Scalar::i16;
    if (name == "ushort" || name == "uint16") return Scalar::u16;
    if (name == "int" || name == "int32") return Scalar::i32;
    if (name == "uint" || name == "uint32") return Scalar::u32;
    if (name == "float" || name == "float32") return Scalar::f32;
    if (name == "double" || name == "float64") return Scalar::f64;
    throw FormatError("unknown PLY property type '" + name + "'", offset);
}

std::size_t scalar_size(Scalar s) {
    switch (s) {
        case Scalar::i8:
        case Scalar::u8:
            return 1;
        case Scalar::i16:
        case Scalar::u16:
            return 2;
        case Scalar::i32:
        case Scalar::u32:
        case Scalar::f32:
            return 4;
        case Scalar::f64:
            return 8;
    }
    return 1;
}

struct Property {
    std::string name;
    Scalar type = Scalar::f32;
    bool is_list = false;
    Scalar count_type = Scalar::u8;
};

struct Element {
    std::string name;
    std::uint64_t count = 0;
    std::vector<Property> properties;
};

// Sequential reader over the body, binary LE or whitespace-separated ascii.
class BodyReader {
public:
    BodyReader(std::vector<std::uint8_t> body, std::uint64_t base, bool ascii)
        : body_(std::move(body)), base_(base), ascii_(ascii) {
        if (ascii_) {
            text_.str(std::string(body_.begin(), body_.end()));
        }
    }

    double read(Scalar type) {
        if (ascii_) {
            std::string token;
            if (!(text_ >> token)) {
                throw FormatError("unexpected end of ascii PLY body", base_ + body_.size());
            }
            try {
                std::size_t used = 0;
                const double v = std::stod(token, &used);
                if (used != token.size()) throw std::invalid_argument(token);
                return v;
            } catch (const std::exception&) {
                throw FormatError("bad number '" + token + "' in ascii PLY body",
                                  base_ + static_cast<std::uint64_t>(text_.tellg()));
            }
        }
        const std::size_t n = scalar_size(type);
        if (body_.size() - pos_ < n) {
            throw FormatError("unexpected end of binary PLY body", base_ + pos_);
        }
        const std::uint8_t* p = body_.data() + pos_;
        pos_ += n;
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
        }
        switch (type) {
            case Scalar::i8:
                return static_cast<std::int8_t>(bits);
            case Scalar::u8:
                return static_cast<std::uint8_t>(bits);
            case Scalar::i16:
                return static_cast<std::int16_t>(bits);
            case Scalar::u16:
                return static_cast<std::uint16_t>(bits);
            case Scalar::i32:
                return static_cast<std::int32_t>(bits);
            case Scalar::u32:
                return static_cast<std::uint32_t>(bits);
            case Scalar::f32:
                return std::bit_cast<float>(static_cast<std::uint32_t>(bits));
            case Scalar::f64:
                return std::bit_cast<double>(bits);
        }
        return 0.0;
    }

    std::uint64_t offset() const { return base_ + pos_; }
    std::uint64_t remaining() const { return body_.size() - pos_; }
    bool ascii() const { return ascii_; }

private:
    std::vector<std::uint8_t> body_;
    std::uint64_t base_;
    bool ascii_;
    std::size_t pos_ = 0;
    std::istringstream text_;
};

std::uint64_t index_value(double v, std::size_t vertex_count, std::uint64_t offset) {
    if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(vertex_count)) {
        throw FormatError("face index out of range", offset);
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

void write_mesh_ply(const TexturedMesh& mesh, const std::filesystem::path& path) {
    mesh.validate();
    std::ofstream out = detail::open_for_write(path);
    out << "ply\nformat binary_little_endian 1.0\n"
        << "element vertex " << mesh.positions.size() << "\n"
        << "property float x\nproperty float y\nproperty float z\n";
    if (mesh.has_colors()) {
        out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    }
    out << "element face " << mesh.triangles.size() << "\n"
        << "property list uchar uint vertex_indices\nend_header\n";

    const std::size_t vertex_bytes = mesh.has_colors() ? 15 : 12;
    std::vector<std::uint8_t> buf(mesh.positions.size() * vertex_bytes);
    for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
        std::uint8_t* p = buf.data() + i * vertex_bytes;
        detail::floats_to_le(mesh.positions[i], std::span<std::uint8_t>(p, 12));
        if (mesh.has_colors()) {
            for (std::size_t c = 0; c < 3; ++c) {
                const float v = std::clamp(mesh.colors[i][c], 0.0f, 1.0f);
                p[12 + c] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
            }
        }
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));

    buf.assign(mesh.triangles.size() * 13, 0);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        std::uint8_t* p = buf.data() + t * 13;
        p[0] = 3;
        for (std::size_t k = 0; k < 3; ++k) {
            detail::put_u32(p + 1 + 4 * k, mesh.triangles[t][k]);
        }
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

TexturedMesh read_mesh_ply(const std::filesystem::path& path) {
    std::ifstream in = detail::open_for_read(path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());

    // Header: newline-terminated ascii lines up to "end_header".
    std::size_t pos = 0;
    auto next_line = [&]() -> std::string {
        const std::size_t start = pos;
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        if (pos == bytes.size()) {
            throw FormatError("PLY header is not terminated by end_header", start);
        }
        std::string line(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                         bytes.begin() + static_cast<std::ptrdiff_t>(pos));
        ++pos;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };

    if (next_line() != "ply") {
        throw FormatError("missing 'ply' magic line", 0);
    }
    bool ascii = false;
    bool have_format = false;
    std::vector<Element> elements;
    for (;;) {
        const std::uint64_t line_offset = pos;
        const std::string line = next_line();
        std::istringstream words(line);
        std::string keyword;
        words >> keyword;
        if (keyword == "end_header") break;
        if (keyword.empty() || keyword == "comment" || keyword == "obj_info") continue;
        if (keyword == "format") {
            std::string kind, version;
            words >> kind >> version;
            if (kind == "ascii") {
                ascii = true;
            } else if (kind != "binary_little_endian") {
                throw FormatError("unsupported PLY format '" + kind + "'", line_offset);
            }
            have_format = true;
        } else if (keyword == "element") {
            Element e;
            if (!(words >> e.name >> e.count)) {
                throw FormatError("malformed element line", line_offset);
            }
            elements.push_back(std::move(e));
        } else if (keyword == "property") {
            if (elements.empty()) {
                throw FormatError("property before any element", line_offset);
            }
            Property prop;
            std::string type;
            words >> type;
            if (type == "list") {
                std::string count_type, item_type;
                words >> count_type >> item_type;
                prop.is_list = true;
                prop.count_type = scalar_from_name(count_type, line_offset);
                prop.type = scalar_from_name(item_type, line_offset);
            } else {
                prop.type = scalar_from_name(type, line_offset);
            }
            if (!(words >> prop.name)) {
                throw FormatError("property without a name", line_offset);
            }
            elements.back().properties.push_back(prop);
        } else {
            throw FormatError("unknown PLY header keyword '" + keyword + "'", line_offset);
        }
    }
    if (!have_format) {
        throw FormatError("PLY header has no format line", 0);
    }

    const std::uint64_t body_offset = pos;
    BodyReader body(std::vector<std::uint8_t>(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                              bytes.end()),
                    body_offset, ascii);
    bytes.clear();
    bytes.shrink_to_fit();

    TexturedMesh mesh;
    for (const Element& e : elements) {
        // A record needs at least its fixed-size fields (binary) or two
        // characters per property (ascii), so larger counts are hostile.
        std::uint64_t min_record = 0;
        for (const auto& p : e.properties) {
            min_record += ascii ? 2 : (p.is_list ? scalar_size(p.count_type) : scalar_size(p.type));
        }
        if (min_record != 0 && e.count > (body.remaining() + 1) / min_record) {
            throw FormatError("element '" + e.name + "' declares " + std::to_string(e.count) +
                                  " records but the body is only " +
                                  std::to_string(body.remaining()) + " bytes",
                              body.offset());
        }

        if (e.name == "vertex") {
            int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
            for (std::size_t k = 0; k < e.properties.size(); ++k) {
                const auto& n = e.properties[k].name;
                const int kk = static_cast<int>(k);
                if (n == "x") ix = kk;
                if (n == "y") iy = kk;
                if (n == "z") iz = kk;
                if (n == "red") ir = kk;
                if (n == "green") ig = kk;
                if (n == "blue") ib = kk;
            }
            if (ix < 0 || iy < 0 || iz < 0) {
                throw FormatError("vertex element lacks x, y or z", body_offset);
            }
            const bool colors = ir >= 0 && ig >= 0 && ib >= 0;
            mesh.positions.resize(e.count);
            if (colors) mesh.colors.resize(e.count);
            std::vector<double> values(e.properties.size());
            for (std::uint64_t i = 0; i < e.count; ++i) {
                for (std::size_t k = 0; k < e.properties.size(); ++k) {
                    const auto& p = e.properties[k];
                    if (p.is_list) {
                        const double n = body.read(p.count_type);
                        for (double j = 0; j < n; ++j) body.read(p.type);
                        values[k] = 0.0;
                    } else {
                        values[k] = body.read(p.type);
                    }
                }
                mesh.positions[i] = {static_cast<float>(values[ix]), static_cast<float>(values[iy]),
                                     static_cast<float>(values[iz])};
                if (colors) {
                    auto to_unit = [&](int k) {
                        const double v = values[k];
                        return e.properties[k].type == Scalar::u8
                                   ? static_cast<float>(v) / 255.0f
                                   : static_cast<float>(v);
                    };
                    mesh.colors[i] = {to_unit(ir), to_unit(ig), to_unit(ib)};
                }
            }
        } else if (e.name == "face") {
            int list = -1;
            for (std::size_t k = 0; k < e.properties.size(); ++k) {
                const auto& n = e.properties[k].name;
                if (e.properties[k].is_list && (n == "vertex_indices" || n == "vertex_index")) {
                    list = static_cast<int>(k);
                }
            }
            if (list < 0) {
                throw FormatError("face element lacks a vertex_indices list", body_offset);
            }
            mesh.triangles.reserve(e.count);
            std::vector<std::uint64_t> poly;
            for (std::uint64_t i = 0; i < e.count; ++i) {
                for (std::size_t k = 0; k < e.properties.size(); ++k) {
                    const auto& p = e.properties[k];
                    if (!p.is_list) {
                        body.read(p.type);
                        continue;
                    }
                    const std::uint64_t at = body.offset();
                    const double n = body.read(p.count_type);
                    if (!(n >= 0.0) || n > 255.0 * 255.0) {
                        throw FormatError("bad face list length", at);
                    }
                    poly.clear();
                    for (double j = 0; j < n; ++j) {
                        const std::uint64_t item_at = body.offset();
                        const double v = body.read(p.type);
                        if (static_cast<int>(k) == list) {
                            poly.push_back(index_value(v, mesh.positions.size(), item_at));
                        }
                    }
                    if (static_cast<int>(k) != list) continue;
                    if (poly.size() < 3) {
                        throw FormatError("face with fewer than 3 vertices", at);
                    }
                    // Fan triangulation for polygons.
                    for (std::size_t j = 1; j + 1 < poly.size(); ++j) {
                        mesh.triangles.push_back({static_cast<std::uint32_t>(poly[0]),
                                                  static_cast<std::uint32_t>(poly[j]),
                                                  static_cast<std::uint32_t>(poly[j + 1])});
                    }
                }
            }
        } else {
            for (std::uint64_t i = 0; i < e.count; ++i) {
                for (const auto& p : e.properties) {
                    if (p.is_list) {
                        const double n = body.read(p.count_type);
                        for (double j = 0; j < n; ++j) body.read(p.type);
                    } else {
                        body.read(p.type);
                    }
                }
            }
        }
    }
    mesh.validate();
    return mesh;
}

}  // namespace voxmerge::io
