// Command-line front end for the rewriting engine.
//
// Results go to stdout; diagnostics go to stderr as one JSON object per line.
// Exit codes: 0 = success / positive answer, 2 = negative answer or invalid
// object, 1 = I/O, parse, or usage trouble.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpo/dpo.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failed on '" + path + "'");
}

void diag(const nlohmann::json& j) { std::cerr << j.dump() << "\n"; }

std::string format_morphism(const dpo::Morphism& m) {
  std::ostringstream out;
  out << "nodes {";
  bool first = true;
  for (const auto& [v, w] : m.node_map) {
    if (!first) out << ", ";
    first = false;
    out << v.str() << "->" << w.str();
  }
  out << "} edges {";
  first = true;
  for (const auto& [e, d] : m.edge_map) {
    if (!first) out << ", ";
    first = false;
    out << e.str() << "->" << d.str();
  }
  out << "}";
  return out.str();
}

// out.json -> out.0.json, out.1.json, ...; no extension appends .N
std::string with_index(const std::string& path, std::size_t i) {
  std::filesystem::path p(path);
  std::filesystem::path stem = p.stem();
  std::filesystem::path ext = p.extension();
  p.replace_filename(stem.string() + "." + std::to_string(i) + ext.string());
  return p.string();
}

int run_validate(const std::string& file) {
  std::string text = read_file(file);
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  bool looks_like_rule = doc.is_object() && doc.contains("left") &&
                         doc.contains("interface") && doc.contains("right");
  try {
    if (looks_like_rule)
      dpo::parse_rule(text);
    else
      dpo::parse_graph(text);
  } catch (const dpo::ValidationError& e) {
    std::cout << e.report.str() << "\n";
    return 2;
  }
  std::cout << "ok\n";
  return 0;
}

int run_match(const std::string& rule_file, const std::string& host_file) {
  dpo::Rule rule = dpo::parse_rule(read_file(rule_file));
  dpo::Graph host = dpo::parse_graph(read_file(host_file));
  std::vector<dpo::Match> matches = dpo::find_matches(rule, host);
  for (std::size_t i = 0; i < matches.size(); ++i)
    std::cout << "[" << i << "] " << format_morphism(matches[i].morphism)
              << "\n";
  std::cout << matches.size() << (matches.size() == 1 ? " match" : " matches")
            << "\n";
  return 0;
}

int run_apply(const std::string& rule_file, const std::string& host_file,
              std::optional<std::size_t> index, bool all,
              const std::string& out_path) {
  dpo::Rule rule = dpo::parse_rule(read_file(rule_file));
  dpo::Graph host = dpo::parse_graph(read_file(host_file));
  std::vector<dpo::Match> matches = dpo::find_matches(rule, host);

  if (all) {
    for (std::size_t i = 0; i < matches.size(); ++i) {
      dpo::DerivationTrace trace =
          dpo::direct_derive(rule, host, matches[i].morphism);
      std::string path = with_index(out_path, i);
      write_file(path, dpo::serialize_graph(trace.result));
      std::cout << path << "\n";
    }
    return 0;
  }

  std::size_t chosen = index.value_or(0);
  if (chosen >= matches.size()) {
    diag({{"error",
           {{"kind", "usage"},
            {"message", "match index " + std::to_string(chosen) +
                            " out of range: " + std::to_string(matches.size()) +
                            " matches"}}}});
    return 1;
  }
  dpo::DerivationTrace trace =
      dpo::direct_derive(rule, host, matches[chosen].morphism);
  write_file(out_path, dpo::serialize_graph(trace.result));
  std::cout << out_path << "\n";
  return 0;
}

int run_check_pushout(const std::string& square_file) {
  dpo::Square sq = dpo::parse_square(read_file(square_file));
  if (dpo::is_pushout(sq)) {
    std::cout << "pushout\n";
    return 0;
  }
  std::cout << "not a pushout\n";
  return 2;
}

int run_iso(const std::string& file_a, const std::string& file_b) {
  dpo::Graph a = dpo::parse_graph(read_file(file_a));
  dpo::Graph b = dpo::parse_graph(read_file(file_b));
  if (auto witness = dpo::find_isomorphism(a, b)) {
    std::cout << format_morphism(*witness) << "\n";
    return 0;
  }
  std::cout << "not isomorphic\n";
  return 2;
}

int run_export_dot(const std::string& file) {
  std::cout << dpo::export_dot(dpo::parse_graph(read_file(file)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-pushout rewriting on labelled directed multigraphs"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed,
                 "seed for randomized commands; echoed to the diagnostic "
                 "stream for reproducibility");

  auto* validate = app.add_subcommand("validate", "check a graph or rule file");
  std::string validate_file;
  validate->add_option("file", validate_file, "graph or rule JSON file")
      ->required();

  auto* match = app.add_subcommand("match", "list matches of a rule in a host");
  std::string match_rule, match_host;
  match->add_option("--rule", match_rule, "rule JSON file")->required();
  match->add_option("--host", match_host, "host graph JSON file")->required();

  auto* apply = app.add_subcommand("apply", "rewrite a host graph");
  std::string apply_rule, apply_host, apply_out;
  std::optional<std::size_t> apply_index;
  bool apply_all = false;
  apply->add_option("--rule", apply_rule, "rule JSON file")->required();
  apply->add_option("--host", apply_host, "host graph JSON file")->required();
  apply->add_option("--out", apply_out, "output path")->required();
  auto* apply_index_opt =
      apply->add_option("--match", apply_index, "match index (default 0)");
  apply->add_flag("--all", apply_all, "apply at every match, one file each")
      ->excludes(apply_index_opt);

  auto* check = app.add_subcommand("check-pushout", "decide a square file");
  std::string check_square;
  check->add_option("--square", check_square, "square JSON file")->required();

  auto* iso = app.add_subcommand("iso", "search for an isomorphism");
  std::string iso_a, iso_b;
  iso->add_option("a", iso_a, "first graph JSON file")->required();
  iso->add_option("b", iso_b, "second graph JSON file")->required();

  auto* dot = app.add_subcommand("export-dot", "render a graph as GraphViz");
  std::string dot_file;
  dot->add_option("file", dot_file, "graph JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (seed) diag({{"seed", *seed}});

  try {
    if (*validate) return run_validate(validate_file);
    if (*match) return run_match(match_rule, match_host);
    if (*apply)
      return run_apply(apply_rule, apply_host, apply_index, apply_all,
                       apply_out);
    if (*check) return run_check_pushout(check_square);
    if (*iso) return run_iso(iso_a, iso_b);
    if (*dot) return run_export_dot(dot_file);
  } catch (const dpo::ParseError& e) {
    diag({{"error",
           {{"kind", "parse"},
            {"message", e.what()},
            {"line", e.line},
            {"column", e.column}}}});
    return 1;
  } catch (const dpo::ValidationError& e) {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : e.report.violations)
      violations.push_back({{"clause", std::string(dpo::clause_name(v.clause))},
                            {"item", v.item},
                            {"detail", v.detail}});
    diag({{"error",
           {{"kind", "validation"},
            {"subject", e.subject},
            {"violations", violations}}}});
    return 2;
  } catch (const dpo::NotInjectiveSpan& e) {
    diag({{"error", {{"kind", "not_injective_span"}, {"message", e.what()}}}});
    return 2;
  } catch (const IoError& e) {
    diag({{"error", {{"kind", "io"}, {"message", e.what()}}}});
    return 1;
  } catch (const dpo::Error& e) {
    diag({{"error", {{"kind", "engine"}, {"message", e.what()}}}});
    return 1;
  } catch (const std::exception& e) {
    diag({{"error", {{"kind", "internal"}, {"message", e.what()}}}});
    return 1;
  }
  return 1;
}
