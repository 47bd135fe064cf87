#include "monalg/io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "monalg/structure.hpp"

namespace monalg {

namespace {

Algebra from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("f")) {
    throw std::invalid_argument("expected a JSON object with keys n and f");
  }
  if (!doc["n"].is_number_unsigned() || doc["n"].get<std::uint64_t>() == 0) {
    throw std::invalid_argument("n must be a positive integer");
  }
  const std::uint64_t n = doc["n"].get<std::uint64_t>();
  if (!doc["f"].is_array() || doc["f"].size() != n) {
    throw std::invalid_argument("f must be an array of n successors");
  }
  std::vector<Node> succ;
  succ.reserve(n);
  for (const auto& entry : doc["f"]) {
    if (!entry.is_number_unsigned() || entry.get<std::uint64_t>() >= n) {
      throw std::invalid_argument("successor entries must be nodes below n");
    }
    succ.push_back(entry.get<Node>());
  }
  return Algebra(std::move(succ));
}

// Parses "<i> -> <j>" into (i, j).  Returns false on lines without an arrow.
bool parse_arrow_line(const std::string& line, std::uint64_t* from,
                      std::uint64_t* to) {
  const std::size_t arrow = line.find("->");
  if (arrow == std::string::npos) return false;
  std::istringstream left(line.substr(0, arrow));
  std::istringstream right(line.substr(arrow + 2));
  if (!(left >> *from) || !(right >> *to)) {
    throw std::invalid_argument("malformed successor line: " + line);
  }
  std::string rest;
  if (left >> rest) {
    throw std::invalid_argument("malformed successor line: " + line);
  }
  // A trailing ';' (DOT body) or nothing may follow the target.
  if (right >> rest && rest != ";") {
    throw std::invalid_argument("malformed successor line: " + line);
  }
  return true;
}

Algebra from_line_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::uint64_t n = 0;
  bool have_n = false;
  std::vector<bool> assigned;
  std::vector<Node> succ;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    std::string body = line.substr(start, end - start + 1);
    if (body.empty() || body[0] == '#') continue;
    if (!have_n) {
      if (body.rfind("n=", 0) != 0) {
        throw std::invalid_argument("line format must start with n=<count>");
      }
      std::istringstream head(body.substr(2));
      if (!(head >> n) || n == 0) {
        throw std::invalid_argument("n must be a positive integer");
      }
      have_n = true;
      assigned.assign(n, false);
      succ.assign(n, 0);
      continue;
    }
    std::uint64_t from = 0, to = 0;
    if (!parse_arrow_line(body, &from, &to)) {
      throw std::invalid_argument("expected '<i> -> <j>', got: " + body);
    }
    if (from >= n || to >= n) {
      throw std::invalid_argument("node out of range in line: " + body);
    }
    if (assigned[from]) {
      throw std::invalid_argument("duplicate successor for node " +
                                  std::to_string(from));
    }
    assigned[from] = true;
    succ[from] = static_cast<Node>(to);
  }
  if (!have_n) {
    throw std::invalid_argument("empty algebra description");
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!assigned[i]) {
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " has no successor line");
    }
  }
  return Algebra(std::move(succ));
}

}  // namespace

Algebra parse_algebra(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return from_json_text(text);
    return from_line_text(text);
  }
  throw std::invalid_argument("empty algebra description");
}

std::string serialize_algebra(const Algebra& a) {
  std::ostringstream out;
  out << "{\"n\":" << a.size() << ",\"f\":[";
  for (Node x = 0; x < a.size(); ++x) {
    if (x) out << ',';
    out << a.successor(x);
  }
  out << "]}";
  return out.str();
}

std::string serialize_algebra_lines(const Algebra& a) {
  std::ostringstream out;
  out << "n=" << a.size() << "\n";
  for (Node x = 0; x < a.size(); ++x) {
    out << x << " -> " << a.successor(x) << "\n";
  }
  return out.str();
}

std::string export_dot(const Algebra& a, bool annotate_degree) {
  std::ostringstream out;
  out << "digraph monounary {\n";
  if (annotate_degree) {
    const DegreeMap degrees = degree_function(a);
    for (Node x = 0; x < a.size(); ++x) {
      out << "  " << x << " [label=\"" << x << " (s=";
      if (degrees.infinite(x)) {
        out << "inf";
      } else {
        out << degrees.degree[x];
      }
      out << ")\"];\n";
    }
  }
  for (Node x = 0; x < a.size(); ++x) {
    out << "  " << x << " -> " << a.successor(x) << ";\n";
  }
  out << "}\n";
  return out.str();
}

Algebra parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::uint64_t max_node = 0;
  while (std::getline(in, line)) {
    std::uint64_t from = 0, to = 0;
    bool ok = false;
    try {
      ok = parse_arrow_line(line, &from, &to);
    } catch (const std::invalid_argument&) {
      continue;  // not an edge line (e.g. a DOT node declaration)
    }
    if (!ok) continue;
    edges.emplace_back(from, to);
    max_node = std::max({max_node, from, to});
  }
  if (edges.empty()) {
    throw std::invalid_argument("no edges found");
  }
  const std::uint64_t n = max_node + 1;
  std::vector<bool> assigned(n, false);
  std::vector<Node> succ(n, 0);
  for (auto [from, to] : edges) {
    if (assigned[from]) {
      throw std::invalid_argument("duplicate successor for node " +
                                  std::to_string(from));
    }
    assigned[from] = true;
    succ[from] = static_cast<Node>(to);
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!assigned[i]) {
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " has no successor edge");
    }
  }
  return Algebra(std::move(succ));
}

std::string serialize_tree_lines(const PendantTree& t) {
  std::ostringstream out;
  out << "n=" << t.size() << "\n";
  out << "root=" << t.root() << "\n";
  for (Node x = 0; x < t.size(); ++x) {
    if (x == t.root()) continue;
    out << x << " -> " << t.successor(x) << "\n";
  }
  return out.str();
}

}  // namespace monalg
