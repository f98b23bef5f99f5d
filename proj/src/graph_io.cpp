#include "eloc/graph_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "eloc/errors.hpp"
#include "eloc/generators.hpp"

namespace eloc {

std::vector<std::string> split_fields(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(' ', start);
    std::string f = line.substr(start, pos - start);
    if (f.empty()) throw ParseError("empty field (fields are separated by single spaces)", line_no);
    fields.push_back(std::move(f));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_real_field(const std::string& field, std::size_t line_no) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("expected a real number, got '" + field + "'", line_no);
  return v;
}

std::size_t parse_id_field(const std::string& field, std::size_t line_no) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("expected a vertex id, got '" + field + "'", line_no);
  return v;
}

Graph parse_graph(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, line_no);
    if (fields.size() != 3)
      throw ParseError("expected 'tail head conductance', got " + std::to_string(fields.size()) +
                           " field(s)",
                       line_no);
    Edge e{parse_id_field(fields[0], line_no), parse_id_field(fields[1], line_no),
           parse_real_field(fields[2], line_no)};
    if (e.tail == e.head) throw ParseError("self-loop", line_no);
    if (!(e.conductance > 0.0)) throw ParseError("conductance must be positive", line_no);
    edges.push_back(e);
  }
  return build_graph(std::move(edges));
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file '" + path.string() + "'");
  return parse_graph(in);
}

std::string format_real(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

void format_graph(const Graph& g, std::ostream& out) {
  for (const Edge& e : g.edges())
    out << e.tail << ' ' << e.head << ' ' << format_real(e.conductance) << '\n';
}

void write_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write graph file '" + path.string() + "'");
  format_graph(g, out);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Graph load_graph_arg(const std::string& arg) {
  if (arg.rfind("family:", 0) == 0) return generate_family(arg);
  return read_graph(arg);
}

}  // namespace eloc
