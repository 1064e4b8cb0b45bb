#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nedmp/generate.hpp"
#include "nedmp/instance.hpp"

namespace nedmp {

// Instance JSON: {"n", "edges" (as [src, dst, beta] triples), "gamma",
// "seeds", "T", "labels" (optional {"ps","pi","pr"} indexed [t][node])}.
std::string save_instance(const Instance& inst);
Instance load_instance(const std::string& json_text);

void save_instance_file(const Instance& inst, const std::filesystem::path& path);
Instance load_instance_file(const std::filesystem::path& path);

// One `src dst` pair per line, whitespace-separated, `#` comments. Node ids
// need not be contiguous; they are compacted preserving numeric order.
Topology load_edge_list(std::istream& is);
Topology load_edge_list_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace nedmp
