#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hardcore/graph.hpp"

namespace hardcore {

void write_graph(std::ostream& out, const Graph& g) {
  out << "hcg v1 " << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("graph file: missing header");
  std::istringstream header(line);
  std::string magic, version;
  std::size_t n = 0;
  if (!(header >> magic >> version >> n) || magic != "hcg" || version != "v1") {
    throw std::runtime_error("graph file: bad header '" + line + "'");
  }
  Graph g(n);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0 || u >= v || static_cast<std::size_t>(v) >= n) {
      throw std::runtime_error("graph file: bad edge on line " + std::to_string(lineno));
    }
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_graph(out, g);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in);
}

}  // namespace hardcore
