#pragma once

#include <filesystem>
#include <string>

#include "coles/graph.hpp"

namespace coles {

/// Reads the LINQS citation layout used by Cora and Citeseer:
/// `<name>.content` rows "<id> <binary features...> <class>" and
/// `<name>.cites` rows "<id> <id>". Nodes keep content-file order, classes
/// are numbered by sorted class name, citations to unknown ids and
/// self-citations are dropped.
LabeledGraph load_linqs(const std::filesystem::path& dir, const std::string& name);

/// True when both LINQS files for `name` exist under dir.
bool has_linqs(const std::filesystem::path& dir, const std::string& name);

} // namespace coles
