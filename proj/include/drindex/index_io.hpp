// On-disk index format: "DRIX" magic, format version, little-endian
// fixed-width integers, six length-prefixed structure payloads (run heads,
// run lengths, regrouped lengths, head deltas, start samples, end samples),
// and a whole-file CRC32 trailer.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "r_index.hpp"

namespace drindex {

inline constexpr uint16_t index_format_version = 1;

uint32_t crc32(const uint8_t* data, uint64_t len);

std::vector<uint8_t> encode_index(const r_index& ix);
r_index decode_index(const std::vector<uint8_t>& bytes);

// file wrappers; save writes a temp file and renames it over path
void save_index(const r_index& ix, const std::string& path);
r_index load_index(const std::string& path);

}  // namespace drindex
