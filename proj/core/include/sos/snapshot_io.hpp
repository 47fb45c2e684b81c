#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sos/height_field.hpp"

namespace sos {

using Manifest = std::vector<std::pair<std::string, std::string>>;

// Binary snapshot: 16-byte header (magic "SOS1", u32 side, u32 flags with
// bit 0 = floor, u32 reserved), then side*side little-endian i32 heights in
// row-major order.  A text key=value manifest is written alongside as
// "<path>.manifest".
void save_snapshot(const std::string& path, const HeightField& field,
                   const Manifest& manifest_extra = {});

HeightField load_snapshot(const std::string& path);

void write_manifest(const std::string& path, const Manifest& manifest);
Manifest read_manifest(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace sos
