#pragma once

#include <filesystem>
#include <string>

#include "lcdvf/types.hpp"

namespace lcdvf::io {

// 8-bit binary PGM (P5). P6 colour input is accepted and collapsed to luma
// (Rec. 601 weights). Values are returned in [0, 255].
ScalarField read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const ScalarField& image);

// Mask threshold: value >= 128 -> 1.
BinaryMask read_mask(const std::filesystem::path& path);
void write_mask(const std::filesystem::path& path, const BinaryMask& mask);

// 32-bit PFM, grayscale "Pf" little-endian (scale -1.0), rows stored bottom
// to top. Colour "PF" input is collapsed to luma.
ScalarField read_pfm(const std::filesystem::path& path);
void write_pfm(const std::filesystem::path& path, const ScalarField& field);

// Writes `contents` to a temporary sibling then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace lcdvf::io
