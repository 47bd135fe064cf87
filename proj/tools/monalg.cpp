// Command-line front end.  Every subcommand is a thin adapter over the
// library; predicates answer through the exit code (0 yes, 1 no/unknown,
// 2 error).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "monalg/algebra.hpp"
#include "monalg/canon.hpp"
#include "monalg/enumerate.hpp"
#include "monalg/io.hpp"
#include "monalg/retract.hpp"
#include "monalg/structure.hpp"
#include "monalg/varieties.hpp"

namespace {

using monalg::Algebra;
using monalg::Node;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Algebra load_algebra(const std::string& path) {
  try {
    return monalg::parse_algebra(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

nlohmann::json algebra_json(const Algebra& a) {
  return nlohmann::json{{"n", a.size()}, {"f", a.successors()}};
}

std::vector<Node> parse_node_list(const std::string& text) {
  std::vector<Node> nodes;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long value = std::stoul(item, &pos);
    if (pos != item.size()) {
      throw std::runtime_error("bad node index: " + item);
    }
    nodes.push_back(static_cast<Node>(value));
  }
  if (nodes.empty()) {
    throw std::runtime_error("empty node list");
  }
  return nodes;
}

std::vector<std::string> split_paths(const std::string& text) {
  std::vector<std::string> paths;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) paths.push_back(item);
  }
  return paths;
}

std::string join(const std::vector<Node>& nodes) {
  std::ostringstream out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out << ',';
    out << nodes[i];
  }
  return out.str();
}

nlohmann::json witness_json(const monalg::EmbeddingWitness& w) {
  nlohmann::json factors = nlohmann::json::array();
  for (const Algebra& f : w.factors) factors.push_back(algebra_json(f));
  return nlohmann::json{{"factors", std::move(factors)},
                        {"map", w.flat_map()},
                        {"image", w.flat_image()}};
}

int run_analyze(const std::string& file, bool as_json) {
  const Algebra a = load_algebra(file);
  const monalg::DegreeMap degrees = monalg::degree_function(a);
  const monalg::ComponentPartition parts = monalg::connected_components(a);
  const auto lengths = monalg::component_cycle_lengths(a, parts);
  const auto cyclic = monalg::cyclic_nodes(a);
  const auto attach = monalg::boundary_nodes(a);
  const std::uint64_t bound = monalg::degree_bound(a);
  const bool star = monalg::satisfies_star(a);
  const bool star_star = monalg::satisfies_star_star(a);
  if (as_json) {
    nlohmann::json deg = nlohmann::json::array();
    for (Node x = 0; x < a.size(); ++x) {
      if (degrees.infinite(x)) {
        deg.push_back(nullptr);
      } else {
        deg.push_back(degrees.degree[x]);
      }
    }
    nlohmann::json j = algebra_json(a);
    j["components"] = parts.component_count;
    j["cycle_lengths"] = lengths;
    j["degrees"] = std::move(deg);
    j["cyclic"] = cyclic.members;
    j["attachment_points"] = attach;
    j["degree_bound"] = bound;
    j["star"] = star;
    j["star_star"] = star_star;
    std::cout << j.dump() << '\n';
    return 0;
  }
  std::cout << "nodes: " << a.size() << '\n';
  std::cout << "components: " << parts.component_count << '\n';
  std::cout << "cycle lengths:";
  for (auto len : lengths) std::cout << ' ' << len;
  std::cout << '\n';
  std::cout << "cyclic nodes: " << join(cyclic.members) << '\n';
  std::cout << "attachment points: "
            << (attach.empty() ? std::string("none") : join(attach)) << '\n';
  std::cout << "degree bound: " << bound << '\n';
  std::cout << "degrees:";
  for (Node x = 0; x < a.size(); ++x) {
    std::cout << ' ' << x << ':';
    if (degrees.infinite(x)) {
      std::cout << "inf";
    } else {
      std::cout << degrees.degree[x];
    }
  }
  std::cout << '\n';
  std::cout << "star: " << (star ? "yes" : "no") << '\n';
  std::cout << "star-star: " << (star_star ? "yes" : "no") << '\n';
  return 0;
}

int run_member(const std::string& file, const std::string& gens_text,
               std::size_t max_factors, std::size_t budget) {
  const Algebra b = load_algebra(file);
  std::vector<Algebra> gens;
  for (const std::string& path : split_paths(gens_text)) {
    gens.push_back(load_algebra(path));
  }
  const monalg::MembershipResult result =
      monalg::bounded_membership(b, gens, max_factors, budget);
  if (!result.certified) {
    std::cout << "unknown: " << result.note << '\n';
    return 1;
  }
  const monalg::MembershipWitness& w = *result.witness;
  nlohmann::json factors = nlohmann::json::array();
  for (std::size_t i : w.factor_indices) factors.push_back(algebra_json(gens[i]));
  nlohmann::json j{{"factors", std::move(factors)},
                   {"map", w.map},
                   {"image", w.image}};
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite monounary algebra toolkit"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "structural summary");
  std::string analyze_file;
  bool analyze_json = false;
  analyze->add_option("file", analyze_file, "algebra file")->required();
  analyze->add_flag("--json", analyze_json, "machine-readable output");

  auto* iso = app.add_subcommand("iso", "isomorphism test");
  std::string iso_a, iso_b;
  iso->add_option("first", iso_a)->required();
  iso->add_option("second", iso_b)->required();

  auto* retract_check =
      app.add_subcommand("retract-check", "decide whether a subset is a retract");
  std::string rc_file, rc_subset;
  bool rc_witness = false;
  retract_check->add_option("file", rc_file)->required();
  retract_check->add_option("--subset", rc_subset, "comma-separated nodes")
      ->required();
  retract_check->add_flag("--witness", rc_witness, "print the retraction map");

  auto* retract_enum =
      app.add_subcommand("retract-enum", "enumerate all retracts (small inputs)");
  std::string re_file;
  std::size_t re_bound = monalg::kDefaultOracleBound;
  retract_enum->add_option("file", re_file)->required();
  retract_enum->add_option("--bound", re_bound, "node limit");

  auto* product_cmd = app.add_subcommand("product", "direct product");
  std::vector<std::string> product_files;
  std::size_t product_max = monalg::kDefaultProductBudget;
  std::string product_out;
  product_cmd->add_option("files", product_files)->required()->expected(-1);
  product_cmd->add_option("--max-size", product_max, "node budget");
  product_cmd->add_option("-o,--output", product_out, "output file");

  auto* reduce = app.add_subcommand("reduce", "remove excess isomorphic parts");
  std::string reduce_file, reduce_out;
  bool reduce_star = false, reduce_star_star = false, reduce_json = false;
  reduce->add_option("file", reduce_file)->required();
  reduce->add_flag("--star", reduce_star, "reduce sibling trees");
  reduce->add_flag("--star-star", reduce_star_star, "reduce components");
  reduce->add_flag("--json", reduce_json, "include kept set and retraction");
  reduce->add_option("-o,--output", reduce_out, "output file");

  auto* split = app.add_subcommand("split", "branch decomposition");
  std::string split_file, split_dir;
  split->add_option("file", split_file)->required();
  split->add_option("-o,--output", split_dir, "output directory");

  auto* generators_cmd = app.add_subcommand("generators", "generator pipeline");
  std::string gen_file, gen_dir;
  generators_cmd->add_option("file", gen_file)->required();
  generators_cmd->add_option("-o,--output", gen_dir, "output directory");

  auto* member = app.add_subcommand("member", "bounded membership search");
  std::string member_file, member_gens;
  std::size_t member_max_factors = 3;
  std::size_t member_budget = monalg::kDefaultProductBudget;
  member->add_option("file", member_file)->required();
  member->add_option("--gens", member_gens, "comma-separated generator files")
      ->required();
  member->add_option("--max-factors", member_max_factors);
  member->add_option("--budget", member_budget);

  auto* enum_t = app.add_subcommand("enum-t", "count bounded tree classes");
  std::uint64_t enum_bound = 0;
  bool enum_list = false;
  enum_t->add_option("bound", enum_bound)->required();
  enum_t->add_flag("--list", enum_list, "print every class");

  auto* export_dot = app.add_subcommand("export-dot", "Graphviz output");
  std::string dot_file, dot_out;
  bool dot_annotate = false;
  export_dot->add_option("file", dot_file)->required();
  export_dot->add_option("-o,--output", dot_out, "output file");
  export_dot->add_flag("--annotate-degree", dot_annotate,
                       "label nodes with degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return run_analyze(analyze_file, analyze_json);

    if (*iso) {
      const bool same = monalg::is_isomorphic(load_algebra(iso_a),
                                              load_algebra(iso_b));
      std::cout << (same ? "isomorphic" : "not isomorphic") << '\n';
      return same ? 0 : 1;
    }

    if (*retract_check) {
      const Algebra a = load_algebra(rc_file);
      const monalg::NodeSubset subset(a, parse_node_list(rc_subset));
      const auto witness = monalg::find_retraction(a, subset);
      if (!witness) {
        std::cout << "not a retract" << '\n';
        return 1;
      }
      if (rc_witness) {
        nlohmann::json j{{"map", witness->map.map},
                         {"image", witness->image.members}};
        std::cout << j.dump() << '\n';
      } else {
        std::cout << "retract" << '\n';
      }
      return 0;
    }

    if (*retract_enum) {
      const Algebra a = load_algebra(re_file);
      for (const monalg::NodeSubset& r : monalg::enumerate_retracts(a, re_bound)) {
        std::cout << join(r.members) << '\n';
      }
      return 0;
    }

    if (*product_cmd) {
      std::vector<Algebra> factors;
      for (const std::string& path : product_files) {
        factors.push_back(load_algebra(path));
      }
      const Algebra p = monalg::product(factors, product_max);
      write_output(monalg::serialize_algebra(p), product_out);
      return 0;
    }

    if (*reduce) {
      if (reduce_star == reduce_star_star) {
        throw std::runtime_error("choose exactly one of --star / --star-star");
      }
      const Algebra a = load_algebra(reduce_file);
      const monalg::Reduction r =
          reduce_star ? monalg::star_reduce(a) : monalg::star_star_reduce(a);
      if (reduce_json) {
        nlohmann::json j{{"reduced", algebra_json(r.reduced)},
                         {"kept", r.kept.members},
                         {"retraction", r.retraction.map}};
        write_output(j.dump(), reduce_out);
      } else {
        write_output(monalg::serialize_algebra(r.reduced), reduce_out);
      }
      return 0;
    }

    if (*split) {
      const Algebra a = load_algebra(split_file);
      const monalg::BranchSplit bs = monalg::branch_split(a);
      if (split_dir.empty()) {
        nlohmann::json branches = nlohmann::json::array();
        for (const Algebra& b : bs.branches) branches.push_back(algebra_json(b));
        nlohmann::json j{{"branches", std::move(branches)},
                         {"witness", witness_json(bs.witness)}};
        std::cout << j.dump() << '\n';
      } else {
        std::filesystem::create_directories(split_dir);
        for (std::size_t i = 0; i < bs.branches.size(); ++i) {
          write_output(monalg::serialize_algebra(bs.branches[i]),
                       split_dir + "/branch_" + std::to_string(i) + ".json");
        }
        write_output(witness_json(bs.witness).dump(),
                     split_dir + "/witness.json");
        std::cout << bs.branches.size() << " branches written to " << split_dir
                  << '\n';
      }
      return 0;
    }

    if (*generators_cmd) {
      const Algebra a = load_algebra(gen_file);
      const monalg::GeneratorsResult result = monalg::generators(a);
      nlohmann::json gens = nlohmann::json::array();
      nlohmann::json origins = nlohmann::json::array();
      for (std::size_t i = 0; i < result.set.algebras.size(); ++i) {
        gens.push_back(algebra_json(result.set.algebras[i]));
        origins.push_back(
            nlohmann::json{{"component", result.origins[i].component},
                           {"subset", result.origins[i].subset}});
      }
      nlohmann::json j{{"count", result.set.algebras.size()},
                       {"generators", std::move(gens)},
                       {"origins", std::move(origins)}};
      if (gen_dir.empty()) {
        std::cout << j.dump() << '\n';
      } else {
        std::filesystem::create_directories(gen_dir);
        for (std::size_t i = 0; i < result.set.algebras.size(); ++i) {
          write_output(monalg::serialize_algebra(result.set.algebras[i]),
                       gen_dir + "/gen_" + std::to_string(i) + ".json");
        }
        write_output(j.dump(), gen_dir + "/index.json");
        std::cout << result.set.algebras.size() << " generators written to "
                  << gen_dir << '\n';
      }
      return 0;
    }

    if (*member) {
      return run_member(member_file, member_gens, member_max_factors,
                        member_budget);
    }

    if (*enum_t) {
      std::optional<monalg::TreeClassCatalog> catalog;
      if (enum_list) catalog = monalg::enumerate_t(enum_bound);
      std::cout << monalg::count_t(enum_bound).to_string() << '\n';
      if (catalog) {
        for (const monalg::PendantTree& t : catalog->trees) {
          std::cout << '\n' << monalg::serialize_tree_lines(t);
        }
      }
      return 0;
    }

    if (*export_dot) {
      const Algebra a = load_algebra(dot_file);
      write_output(monalg::export_dot(a, dot_annotate), dot_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
