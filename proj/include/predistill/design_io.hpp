#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "predistill/photonic.hpp"

namespace predistill {

// One segment per line, "w1_nm w2_nm z_um"; '#' starts a comment. Values are
// written with 17 significant digits so they reparse bit-exactly.
std::string format_design(const CouplerDesign& design, std::string_view header = {});
CouplerDesign parse_design(std::string_view text);

CouplerDesign read_design_file(const std::filesystem::path& path);

// Writes to a sibling temporary and renames it into place.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace predistill
