#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "coles/dense.hpp"

namespace coles {

/// CLSM layout: "CLSM", u32 version (=1), u64 rows, u64 cols, then
/// rows*cols IEEE-754 doubles, row-major. All integers and doubles are
/// little-endian regardless of host byte order.
inline constexpr std::uint32_t kClsmVersion = 1;

void write_clsm(const DenseMat& m, const std::filesystem::path& path);
DenseMat read_clsm(const std::filesystem::path& path);

/// Comma-separated values, one matrix row per line, no header. Values are
/// written in shortest round-trip form.
void write_csv(const DenseMat& m, const std::filesystem::path& path);
DenseMat read_csv(const std::filesystem::path& path);

/// Dispatches on the ".clsm" / ".csv" extension.
DenseMat read_matrix(const std::filesystem::path& path);

/// One integer per line; '#' lines skipped.
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::vector<int>& labels, const std::filesystem::path& path);

std::string format_double(double v);

} // namespace coles
