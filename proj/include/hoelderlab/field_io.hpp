#pragma once

#include <filesystem>

#include "hoelderlab/grid_field.hpp"

namespace hoelderlab {

/// Writes `path` (raw little-endian f64 payload, row-major) and the JSON header
/// sidecar `path + ".json"` = {"dim", "n", "dtype": "f64-le", "layout": "row-major"}.
void write_gfld(const std::filesystem::path& path, const GridField& field);

/// Reads a field written by write_gfld. Throws InvalidArgument on a missing or
/// inconsistent header, wrong dtype/layout, or a truncated payload.
GridField read_gfld(const std::filesystem::path& path);

std::filesystem::path gfld_header_path(const std::filesystem::path& path);

}  // namespace hoelderlab
