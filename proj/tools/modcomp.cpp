// modcomp: stable dual graphs, specializations, extremal assignments,
// relative nef cones, and contracted models, from the command line.
//
// Exit codes: 0 success; 1 validation or check failure (the report is still
// printed); 2 usage error; 3 budget or resource limit exceeded.

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "modcomp/modcomp.hpp"

using namespace modcomp;

namespace {

int env_budget() {
  if (const char* env = std::getenv("MODCOMP_BUDGET")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw rejected_input("MODCOMP_BUDGET is not an integer");
    }
  }
  return kDefaultBudget;
}

json self_describing(int g, int n) {
  json j;
  j["tool"] = "modcomp";
  j["version"] = kVersion;
  j["g"] = g;
  j["n"] = n;
  return j;
}

DualGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rejected_input("cannot open graph file: " + path);
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw rejected_input("graph file is not JSON: " + path);
  DualGraph g = graph_from_json(j);
  auto rep = validate(g);
  if (!rep.ok()) throw rejected_input("invalid graph in " + path + ": " + rep.problems.front());
  return g;
}

ExtremalAssignment load_assignment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rejected_input("cannot open assignment file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw rejected_input("assignment file is not JSON: " + path);
  return assignment_from_json(j);
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump() << "\n";
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    out << j.dump() << "\n";
  }
}

std::string graph_summary(const DualGraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << " vertices [";
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v) os << ' ';
    os << 'g' << g.vertices[v].genus;
    if (!g.vertices[v].markings.empty()) {
      os << '{';
      for (std::size_t i = 0; i < g.vertices[v].markings.size(); ++i)
        os << (i ? "," : "") << g.vertices[v].markings[i];
      os << '}';
    }
  }
  os << "] " << g.edge_count() << " edges";
  return os.str();
}

// ---------------------------------------------------------------- graphs --

int run_graphs(int g, int n, bool zero_only, bool as_json, bool no_cache) {
  GraphUniverse u = no_cache ? stable_graphs(g, n, env_budget())
                             : stable_graphs_cached(g, n, env_budget());
  std::vector<int> shown;
  if (zero_only)
    shown = zero_strata(u);
  else {
    shown.resize(u.size());
    std::iota(shown.begin(), shown.end(), 0);
  }
  if (as_json) {
    json j = self_describing(g, n);
    j["zero_strata"] = zero_only;
    j["count"] = shown.size();
    j["graphs"] = json::array();
    for (int i : shown) j["graphs"].push_back(json::parse(u.at(i).form.encoding));
    emit(j, "");
  } else {
    std::cout << "stable dual graphs of type (" << g << "," << n << ")"
              << (zero_only ? ", zero strata only" : "") << ": " << shown.size() << "\n";
    for (int i : shown)
      std::cout << "  #" << i << "  " << graph_summary(u.at(i).form.graph) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- specialize --

int run_specialize(const std::string& from, const std::string& to, bool as_json) {
  const DualGraph generic = load_graph(from);
  const DualGraph special = load_graph(to);
  auto maps = specialization_maps(generic, special);
  if (as_json) {
    for (const auto& m : maps) std::cout << contraction_map_to_json(m).dump() << "\n";
  } else {
    std::cout << maps.size() << " contraction map(s) from " << to << " onto " << from << "\n";
    for (const auto& m : maps) {
      std::cout << "  contract edges {";
      for (std::size_t i = 0; i < m.contracted_edges.size(); ++i)
        std::cout << (i ? "," : "") << m.contracted_edges[i];
      std::cout << "}; fibers:";
      for (std::size_t v = 0; v < m.fibers.size(); ++v) {
        std::cout << " " << v << "<-{";
        for (std::size_t i = 0; i < m.fibers[v].size(); ++i)
          std::cout << (i ? "," : "") << m.fibers[v][i];
        std::cout << "}";
      }
      std::cout << "\n";
    }
  }
  return 0;
}

// ----------------------------------------------------------------- assign --

ExtremalAssignment make_builtin(const std::string& name, const GraphUniverse& u, int k) {
  if (name == "trivial") return trivial_assignment(u);
  if (name == "elliptic-tails") return elliptic_tails_assignment(u);
  if (name == "rational-tails") return rational_tails_assignment(u, k);
  if (name == "unmarked") return unmarked_assignment(u);
  throw CLI::ValidationError("unknown builtin '" + name +
                             "' (expected trivial|elliptic-tails|rational-tails|unmarked)");
}

int print_axiom_report(const AxiomReport& rep, const GraphUniverse& u) {
  if (rep.passed) {
    std::cout << "axioms: PASS\n";
    return 0;
  }
  std::cout << "axioms: FAIL (" << rep.violations.size() << " violation(s))\n";
  for (const auto& v : rep.violations) {
    std::cout << "  axiom " << v.axiom << " at "
              << graph_summary(graph_from_json(json::parse(v.graph))) << ": " << v.detail << "\n";
  }
  (void)u;
  return 1;
}

int run_assign_builtin(const std::string& name, int g, int n, int k, const std::string& out) {
  GraphUniverse u = stable_graphs_cached(g, n, env_budget());
  emit(assignment_to_json(make_builtin(name, u, k)), out);
  return 0;
}

int run_assign_check(const std::string& path) {
  ExtremalAssignment a = load_assignment(path);
  GraphUniverse u = stable_graphs_cached(a.g, a.n, env_budget());
  auto rel = specialization_relation(u);
  return print_axiom_report(check_axioms(a, u, rel), u);
}

int run_assign_enumerate(int g, int n, bool as_json) {
  GraphUniverse u = stable_graphs_cached(g, n, env_budget());
  auto rel = specialization_relation(u);
  auto all = enumerate_assignments(u, rel);
  if (as_json) {
    json j = self_describing(g, n);
    j["count"] = all.size();
    j["assignments"] = json::array();
    for (const auto& a : all) j["assignments"].push_back(assignment_to_json(a));
    emit(j, "");
  } else {
    std::cout << all.size() << " extremal assignment(s) over (" << g << "," << n << ")\n";
    for (std::size_t i = 0; i < all.size(); ++i) {
      int selected = 0;
      for (const auto& [enc, sel] : all[i].table) selected += static_cast<int>(sel.size());
      std::cout << "  #" << i << ": " << selected << " selected vertices across the universe\n";
    }
  }
  return 0;
}

std::vector<Seed> parse_seeds(const std::vector<std::string>& specs) {
  std::vector<Seed> seeds;
  for (const auto& entry : specs) {
    // FILE:VERTEX[:true|false]
    const auto first = entry.rfind(':');
    std::string head = entry.substr(0, first);
    std::string tail = entry.substr(first + 1);
    bool value = true;
    if (tail == "true" || tail == "false") {
      value = tail == "true";
      const auto second = head.rfind(':');
      if (second == std::string::npos)
        throw rejected_input("seed must look like FILE:VERTEX[:true|false]");
      tail = head.substr(second + 1);
      head = head.substr(0, second);
    }
    int vertex = 0;
    try {
      vertex = std::stoi(tail);
    } catch (const std::exception&) {
      throw rejected_input("seed vertex index is not an integer: " + entry);
    }
    const DualGraph g = load_graph(head);
    const CanonicalForm cf = canonicalize(g);
    if (vertex < 0 || vertex >= g.vertex_count())
      throw rejected_input("seed vertex out of range: " + entry);
    seeds.push_back({cf.encoding, cf.relabeling[vertex], value});
  }
  return seeds;
}

int run_assign_propagate(int g, int n, const std::vector<std::string>& seed_specs, bool as_json) {
  GraphUniverse u = stable_graphs_cached(g, n, env_budget());
  auto rel = specialization_relation(u);
  auto res = propagate(u, rel, parse_seeds(seed_specs));
  const bool contradiction = res.status == PropagationResult::Status::Contradiction;
  if (as_json) {
    json j = self_describing(g, n);
    j["status"] = contradiction ? "CONTRADICTION" : "consistent";
    j["violations"] = json::array();
    for (const auto& v : res.violations) {
      json jv;
      jv["kind"] = v.kind;
      jv["graph"] = json::parse(u.at(v.graph).form.encoding);
      jv["detail"] = v.detail;
      j["violations"].push_back(std::move(jv));
    }
    j["closure"] = assignment_to_json(res.to_assignment(u))["entries"];
    emit(j, "");
  } else {
    std::cout << "propagation: " << (contradiction ? "CONTRADICTION" : "consistent") << "\n";
    for (const auto& v : res.violations)
      std::cout << "  " << v.kind << " at " << graph_summary(u.at(v.graph).form.graph) << ": "
                << v.detail << "\n";
    if (!contradiction) {
      auto a = res.to_assignment(u);
      int selected = 0;
      for (const auto& [enc, sel] : a.table) selected += static_cast<int>(sel.size());
      std::cout << "closure selects " << selected << " vertices across the universe\n";
    }
  }
  return contradiction ? 1 : 0;
}

// ------------------------------------------------------------------- cone --

int run_cone(const std::string& what, int g, int n, bool zero_only, int face_index,
             bool as_json) {
  GraphUniverse u = stable_graphs_cached(g, n, env_budget());
  const PicBasis basis = pic_basis(g, n);
  auto cone = nef_cone(basis, u, zero_only);
  auto vec_to_json = [](const ZVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.convert_to<long long>());
    return a;
  };

  if (what == "rays") {
    json j = self_describing(g, n);
    j["basis"] = basis.symbols();
    j["zero_strata_only"] = zero_only;
    j["rays"] = json::array();
    for (const auto& r : cone.rays) j["rays"].push_back(vec_to_json(r));
    j["facets"] = json::array();
    for (const auto& f : cone.facets) j["facets"].push_back(vec_to_json(f));
    if (as_json) {
      emit(j, "");
    } else {
      std::cout << "relative nef cone for (" << g << "," << n << ") in basis";
      for (const auto& s : basis.symbols()) std::cout << " " << s;
      std::cout << "\n  rays:";
      for (const auto& r : cone.rays) std::cout << " " << vec_to_json(r).dump();
      std::cout << "\n  facets:";
      for (const auto& f : cone.facets) std::cout << " " << vec_to_json(f).dump();
      std::cout << "\n";
    }
    return 0;
  }

  auto faces = curve_cone_faces(basis, u, cone);
  if (what == "faces") {
    json j = self_describing(g, n);
    j["basis"] = basis.symbols();
    j["graphs"] = json::array();
    for (const auto& e : u.entries) j["graphs"].push_back(json::parse(e.form.encoding));
    j["faces"] = json::array();
    for (const auto& f : faces) {
      json jf;
      jf["codim"] = f.codim;
      jf["witness"] = vec_to_json(f.witness);
      jf["nef_rays"] = f.nef_rays;
      jf["vanishing"] = json::array();
      for (const auto& [graph, vertex] : f.vanishing)
        jf["vanishing"].push_back(json::array({graph, vertex}));
      j["faces"].push_back(std::move(jf));
    }
    if (as_json) {
      emit(j, "");
    } else {
      std::cout << faces.size() << " proper nonzero curve-cone face(s) for (" << g << "," << n
                << ")\n";
      for (std::size_t i = 0; i < faces.size(); ++i)
        std::cout << "  #" << i << " codim " << faces[i].codim << " witness "
                  << vec_to_json(faces[i].witness).dump() << " vanishing pairs "
                  << faces[i].vanishing.size() << "\n";
    }
    return 0;
  }

  // face-assignment
  if (face_index < 0 || face_index >= static_cast<int>(faces.size()))
    throw rejected_input("face index out of range (have " + std::to_string(faces.size()) +
                         " faces)");
  auto rel = specialization_relation(u);
  emit(assignment_to_json(face_assignment(u, rel, faces[face_index])), "");
  return 0;
}

// ------------------------------------------------------------------ model --

std::vector<int> parse_selection(const std::string& csv) {
  std::vector<int> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw rejected_input("selection must be a comma-separated list of vertex indices");
    }
  }
  return out;
}

int run_model_contract(const std::string& path, const std::string& selection, bool as_json) {
  const DualGraph g = load_graph(path);
  auto model = contract_model(g, parse_selection(selection));
  if (as_json) {
    emit(model_to_json(model), "");
  } else {
    std::cout << model.components.size() << " component(s), " << model.nodes.size()
              << " node(s), " << model.points.size() << " singular point(s)\n";
    for (const auto& p : model.points) {
      auto cat = singularity_catalog(p.g, p.m);
      std::cout << "  type (" << p.g << "," << p.m << ")";
      if (!p.markings.empty()) std::cout << " absorbing " << p.markings.size() << " marking(s)";
      std::cout << ":";
      if (cat.known_classes.empty())
        std::cout << " uncataloged";
      else
        for (const auto& c : cat.known_classes) std::cout << " [" << c << "]";
      if (cat.coverage == SingularityType::Coverage::ExhibitedOnly)
        std::cout << " (exhibited, exhaustiveness unverified)";
      std::cout << "\n";
    }
  }
  return 0;
}

int run_model_summary(const std::string& path, bool as_json) {
  ExtremalAssignment a = load_assignment(path);
  GraphUniverse u = stable_graphs_cached(a.g, a.n, env_budget());
  auto rel = specialization_relation(u);
  auto types = zstable_summary(a, u, rel);
  if (as_json) {
    json j = self_describing(a.g, a.n);
    j["types"] = json::array();
    for (const auto& [pa, m, l] : types) {
      json jt;
      jt["g"] = pa;
      jt["m"] = m;
      jt["absorbed_markings"] = l;
      auto cat = singularity_catalog(pa, m);
      jt["known_classes"] = cat.known_classes;
      jt["coverage"] = cat.coverage == SingularityType::Coverage::Exhaustive ? "exhaustive"
                        : cat.coverage == SingularityType::Coverage::ExhibitedOnly
                            ? "exhibited"
                            : "uncataloged";
      j["types"].push_back(std::move(jt));
    }
    emit(j, "");
  } else {
    if (types.empty()) {
      std::cout << "no contracted subcurves: only nodal stable curves arise\n";
    } else {
      std::cout << "singularity types contracted by this assignment:\n";
      for (const auto& [pa, m, l] : types) {
        std::cout << "  (" << pa << "," << m << ")";
        if (l) std::cout << " absorbing " << l << " marking(s)";
        auto cat = singularity_catalog(pa, m);
        for (const auto& c : cat.known_classes) std::cout << " [" << c << "]";
        std::cout << "\n";
      }
    }
  }
  return 0;
}

// ------------------------------------------------------------------ cache --

int run_cache(const std::string& what) {
  const auto dir = cache_directory();
  if (what == "status") {
    std::cout << "cache directory: " << dir.string() << "\n";
    if (!std::filesystem::exists(dir)) {
      std::cout << "  (absent)\n";
      return 0;
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      std::cout << "  " << entry.path().filename().string() << "  "
                << std::filesystem::file_size(entry.path()) << " bytes\n";
    return 0;
  }
  // clear
  if (std::filesystem::exists(dir)) std::filesystem::remove_all(dir);
  std::cout << "cache cleared: " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable dual graphs, extremal assignments, and relative nef cones"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("modcomp ") + kVersion);

  int g = 0, n = 0, k = 0, face_index = 0;
  bool zero_strata_flag = false, zero_only = false, no_cache = false;
  std::string format = "table", from, to, file, out, selection, builtin_name;
  std::vector<std::string> seed_specs;

  auto add_type = [&](CLI::App* cmd) {
    cmd->add_option("--genus", g, "ambient genus")->required();
    cmd->add_option("--markings", n, "number of marked points")->required();
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));
  };

  auto* graphs = app.add_subcommand("graphs", "list the universe of stable dual graphs");
  add_type(graphs);
  graphs->add_flag("--zero-strata", zero_strata_flag, "only maximally degenerate graphs");
  graphs->add_flag("--no-cache", no_cache, "bypass the universe cache");
  add_format(graphs);

  auto* specialize = app.add_subcommand("specialize", "contraction maps between two graphs");
  specialize->add_option("--from", from, "generic graph JSON file")->required();
  specialize->add_option("--to", to, "special graph JSON file")->required();
  add_format(specialize);

  auto* assign = app.add_subcommand("assign", "extremal assignment operations");
  assign->require_subcommand(1);
  auto* builtin = assign->add_subcommand("builtin", "emit a named assignment");
  builtin->add_option("name", builtin_name,
                      "trivial|elliptic-tails|rational-tails|unmarked")->required();
  add_type(builtin);
  builtin->add_option("--k", k, "marking threshold for rational-tails");
  builtin->add_option("--out", out, "write to file instead of stdout");
  auto* check = assign->add_subcommand("check", "verify the axioms for an assignment file");
  check->add_option("file", file, "assignment JSON file")->required();
  auto* enumerate = assign->add_subcommand("enumerate", "list all extremal assignments");
  add_type(enumerate);
  add_format(enumerate);
  auto* propagate_cmd = assign->add_subcommand("propagate", "close seeds under the axioms");
  add_type(propagate_cmd);
  propagate_cmd
      ->add_option("--seed", seed_specs, "GRAPH_FILE:VERTEX[:true|false]; repeatable")
      ->required();
  add_format(propagate_cmd);

  auto* cone = app.add_subcommand("cone", "relative nef cone and curve-cone faces");
  cone->require_subcommand(1);
  auto* rays = cone->add_subcommand("rays", "extremal rays and facets");
  add_type(rays);
  rays->add_flag("--zero-strata-only", zero_only, "use only zero-strata inequalities");
  add_format(rays);
  auto* faces = cone->add_subcommand("faces", "proper nonzero faces of the curve cone");
  add_type(faces);
  faces->add_flag("--zero-strata-only", zero_only, "use only zero-strata inequalities");
  add_format(faces);
  auto* face_assign = cone->add_subcommand("face-assignment", "assignment induced by a face");
  add_type(face_assign);
  face_assign->add_option("--index", face_index, "face index from `cone faces`")->required();
  face_assign->add_flag("--zero-strata-only", zero_only, "use only zero-strata inequalities");

  auto* model = app.add_subcommand("model", "contracted models and summaries");
  model->require_subcommand(1);
  auto* contract_cmd = model->add_subcommand("contract", "contract selected vertices");
  contract_cmd->add_option("--graph", file, "graph JSON file")->required();
  contract_cmd->add_option("--select", selection, "comma-separated vertex indices");
  add_format(contract_cmd);
  auto* summary = model->add_subcommand("summary", "singularity types of an assignment");
  summary->add_option("--assignment", file, "assignment JSON file")->required();
  add_format(summary);

  auto* cache = app.add_subcommand("cache", "universe cache maintenance");
  cache->require_subcommand(1);
  cache->add_subcommand("status", "show cache contents");
  cache->add_subcommand("clear", "delete the cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const bool as_json = format == "json";
  try {
    if (graphs->parsed()) return run_graphs(g, n, zero_strata_flag, as_json, no_cache);
    if (specialize->parsed()) return run_specialize(from, to, as_json);
    if (assign->parsed()) {
      if (builtin->parsed()) return run_assign_builtin(builtin_name, g, n, k, out);
      if (check->parsed()) return run_assign_check(file);
      if (enumerate->parsed()) return run_assign_enumerate(g, n, as_json);
      if (propagate_cmd->parsed()) return run_assign_propagate(g, n, seed_specs, as_json);
    }
    if (cone->parsed()) {
      if (rays->parsed()) return run_cone("rays", g, n, zero_only, 0, as_json);
      if (faces->parsed()) return run_cone("faces", g, n, zero_only, 0, as_json);
      if (face_assign->parsed()) return run_cone("face-assignment", g, n, zero_only, face_index, true);
    }
    if (model->parsed()) {
      if (contract_cmd->parsed()) return run_model_contract(file, selection, as_json);
      if (summary->parsed()) return run_model_summary(file, as_json);
    }
    if (cache->parsed())
      return run_cache(cache->get_subcommands().front()->get_name());
  } catch (const budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rejected_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
