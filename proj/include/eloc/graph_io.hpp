#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "eloc/graph.hpp"

namespace eloc {

// Edge-list text format: one `tail head conductance` line per edge, fields
// separated by single spaces. Lines starting with '#' and blank lines are
// skipped. The vertex count is max id + 1.

Graph parse_graph(std::istream& in);
Graph read_graph(const std::filesystem::path& path);

/// Conductances are written in shortest round-trip decimal form.
void format_graph(const Graph& g, std::ostream& out);
void write_graph(const Graph& g, const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_real(double x);

/// Splits a line on single spaces; throws ParseError on empty fields.
std::vector<std::string> split_fields(const std::string& line, std::size_t line_no);

double parse_real_field(const std::string& field, std::size_t line_no);
std::size_t parse_id_field(const std::string& field, std::size_t line_no);

/// A graph argument is either "family:<spec>" or a path to an edge-list file.
Graph load_graph_arg(const std::string& arg);

}  // namespace eloc
