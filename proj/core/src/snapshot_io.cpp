#include "sos/snapshot_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sos {

namespace {

constexpr char kMagic[4] = {'S', 'O', 'S', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

void save_snapshot(const std::string& path, const HeightField& field,
                   const Manifest& manifest_extra) {
    std::string blob;
    const int L = field.side();
    blob.reserve(16 + static_cast<std::size_t>(L) * L * 4);
    blob.append(kMagic, 4);
    put_u32(blob, static_cast<std::uint32_t>(L));
    put_u32(blob, field.floor() ? 1u : 0u);
    put_u32(blob, 0u); // reserved
    for (std::int32_t v : field.data())
        put_u32(blob, static_cast<std::uint32_t>(v));
    write_text_file(path, blob);

    Manifest m;
    m.emplace_back("format", "SOS1");
    m.emplace_back("side", std::to_string(L));
    m.emplace_back("floor", field.floor() ? "1" : "0");
    m.emplace_back("boundary_height", std::to_string(field.boundary_height()));
    m.emplace_back("checksum", std::to_string(field.checksum()));
    for (const auto& kv : manifest_extra) m.push_back(kv);
    write_manifest(path + ".manifest", m);
}

HeightField load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    std::string blob((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (blob.size() < 16 || std::memcmp(blob.data(), kMagic, 4) != 0)
        throw std::runtime_error("bad snapshot header: " + path);
    const auto* p = reinterpret_cast<const unsigned char*>(blob.data());
    const std::uint32_t side = get_u32(p + 4);
    const std::uint32_t flags = get_u32(p + 8);
    if (side == 0 || side > 1u << 16)
        throw std::runtime_error("bad snapshot side: " + path);
    const std::size_t need = 16 + static_cast<std::size_t>(side) * side * 4;
    if (blob.size() != need)
        throw std::runtime_error("snapshot size mismatch: " + path);

    int boundary = 0;
    try {
        for (const auto& [k, v] : read_manifest(path + ".manifest"))
            if (k == "boundary_height") boundary = std::stoi(v);
    } catch (const std::exception&) {
        // no sidecar: keep the default 0 boundary
    }

    HeightField field(static_cast<int>(side), 0, boundary, (flags & 1u) != 0);
    auto& data = field.data();
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<std::int32_t>(get_u32(p + 16 + 4 * i));
    return field;
}

void write_manifest(const std::string& path, const Manifest& manifest) {
    std::string out;
    for (const auto& [k, v] : manifest) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    write_text_file(path, out);
}

Manifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            return s.substr(b, e - b + 1);
        };
        m.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return m;
}

} // namespace sos
