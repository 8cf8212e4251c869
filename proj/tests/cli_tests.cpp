#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sample(const std::string& name) {
  return std::string(DPO_SAMPLES_DIR) + "/" + name;
}

std::string golden(const std::string& name) {
  return slurp(fs::path(DPO_GOLDEN_DIR) / name);
}

// Scratch directory for output files, fresh per test run.
const fs::path& scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("dpo_cli_tests_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  fs::path out_file = scratch_dir() / "stdout.txt";
  fs::path err_file = scratch_dir() / "stderr.txt";
  std::string cmd = std::string("'") + DPO_CLI_PATH + "' " + args + " > '" +
                    out_file.string() + "' 2> '" + err_file.string() + "'";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out_file), slurp(err_file)};
}

}  // namespace

TEST_CASE("validate accepts graph and rule files") {
  CliResult graph = run_cli("validate '" + sample("chain.json") + "'");
  CHECK(graph.exit_code == 0);
  CHECK(graph.out == "ok\n");
  CHECK(graph.err.empty());

  CliResult rule = run_cli("validate '" + sample("rule_identity.json") + "'");
  CHECK(rule.exit_code == 0);
  CHECK(rule.out == "ok\n");
}

TEST_CASE("validate reports violations and exits 2") {
  CliResult r = run_cli("validate '" + sample("bad_graph.json") + "'");
  CHECK(r.exit_code == 2);
  CHECK(r.out == golden("validate_bad_graph.txt"));
}

TEST_CASE("syntax errors exit 1 with a positioned diagnostic") {
  CliResult r = run_cli("validate '" + sample("bad_syntax.json") + "'");
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("\"kind\":\"parse\"") != std::string::npos);
  CHECK(r.err.find("\"line\":2") != std::string::npos);
}

TEST_CASE("missing input files exit 1 with an io diagnostic") {
  CliResult r = run_cli("validate '" + sample("no_such_file.json") + "'");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("\"kind\":\"io\"") != std::string::npos);
}

TEST_CASE("invalid data reaching a subcommand yields a validation diagnostic") {
  CliResult r = run_cli("match --rule '" + sample("rule_identity.json") +
                        "' --host '" + sample("bad_graph.json") + "'");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("\"kind\":\"validation\"") != std::string::npos);
  CHECK(r.err.find("source_integrity") != std::string::npos);
}

TEST_CASE("match lists morphisms with a trailing count") {
  std::string args = "match --rule '" + sample("rule_delete_node.json") +
                     "' --host '" + sample("two_a_nodes.json") + "'";
  CliResult r = run_cli(args);
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden("match_delete_two_a.txt"));

  SECTION("byte-identical on a second run") {
    CHECK(run_cli(args).out == r.out);
  }
  SECTION("dangling-blocked host reports zero") {
    CliResult none = run_cli("match --rule '" + sample("rule_delete_node.json") +
                             "' --host '" + sample("loop.json") + "'");
    CHECK(none.exit_code == 0);
    CHECK(none.out == "0 matches\n");
  }
}

TEST_CASE("apply writes the derived graph and prints the path") {
  fs::path out = scratch_dir() / "relabelled.json";
  CliResult r = run_cli("apply --rule '" + sample("rule_relabel.json") +
                        "' --host '" + sample("single_a.json") + "' --out '" +
                        out.string() + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.out == out.string() + "\n");
  CHECK(slurp(out) == golden("apply_relabel.json"));
}

TEST_CASE("apply can add structure around the preserved image") {
  fs::path out = scratch_dir() / "looped.json";
  CliResult r = run_cli("apply --rule '" + sample("rule_add_loop.json") +
                        "' --host '" + sample("single_a.json") + "' --out '" +
                        out.string() + "'");
  CHECK(r.exit_code == 0);
  CHECK(slurp(out) == golden("apply_add_loop.json"));
}

TEST_CASE("apply --all writes one numbered file per match") {
  fs::path out = scratch_dir() / "deleted.json";
  CliResult r = run_cli("apply --rule '" + sample("rule_delete_node.json") +
                        "' --host '" + sample("two_a_nodes.json") +
                        "' --all --out '" + out.string() + "'");
  CHECK(r.exit_code == 0);

  fs::path first = scratch_dir() / "deleted.0.json";
  fs::path second = scratch_dir() / "deleted.1.json";
  CHECK(r.out == first.string() + "\n" + second.string() + "\n");
  CHECK(slurp(first) == golden("apply_delete.json"));
  CHECK(slurp(second) == golden("apply_delete.json"));
}

TEST_CASE("apply --match selects by index and rejects out-of-range") {
  fs::path out = scratch_dir() / "picked.json";
  CliResult r = run_cli("apply --rule '" + sample("rule_delete_node.json") +
                        "' --host '" + sample("two_a_nodes.json") +
                        "' --match 1 --out '" + out.string() + "'");
  CHECK(r.exit_code == 0);
  CHECK(slurp(out) == golden("apply_delete.json"));

  CliResult bad = run_cli("apply --rule '" + sample("rule_delete_node.json") +
                          "' --host '" + sample("two_a_nodes.json") +
                          "' --match 5 --out '" + out.string() + "'");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("\"kind\":\"usage\"") != std::string::npos);
  CHECK(bad.err.find("out of range") != std::string::npos);

  CliResult both = run_cli("apply --rule '" + sample("rule_delete_node.json") +
                           "' --host '" + sample("two_a_nodes.json") +
                           "' --match 0 --all --out '" + out.string() + "'");
  CHECK(both.exit_code == 1);
}

TEST_CASE("applying the identity rule yields an isomorphic graph") {
  fs::path out = scratch_dir() / "copy.json";
  CliResult r = run_cli("apply --rule '" + sample("rule_identity.json") +
                        "' --host '" + sample("single_a.json") + "' --out '" +
                        out.string() + "'");
  REQUIRE(r.exit_code == 0);

  CliResult iso = run_cli("iso '" + out.string() + "' '" +
                          sample("single_a.json") + "'");
  CHECK(iso.exit_code == 0);
}

TEST_CASE("check-pushout answers through the exit code") {
  CliResult yes =
      run_cli("check-pushout --square '" + sample("square_glue.json") + "'");
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == "pushout\n");

  CliResult no = run_cli("check-pushout --square '" +
                         sample("square_not_pushout.json") + "'");
  CHECK(no.exit_code == 2);
  CHECK(no.out == "not a pushout\n");
}

TEST_CASE("iso prints a witness or a refusal") {
  CliResult yes = run_cli("iso '" + sample("chain.json") + "' '" +
                          sample("chain_renamed.json") + "'");
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == golden("iso_chain_renamed.txt"));

  CliResult no =
      run_cli("iso '" + sample("chain.json") + "' '" + sample("loop.json") + "'");
  CHECK(no.exit_code == 2);
  CHECK(no.out == "not isomorphic\n");
}

TEST_CASE("export-dot emits the frozen rendering") {
  CliResult r = run_cli("export-dot '" + sample("chain.json") + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden("export_dot_chain.txt"));
}

TEST_CASE("the seed option is echoed to the diagnostic stream") {
  CliResult r = run_cli("--seed 42 validate '" + sample("chain.json") + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.err == "{\"seed\":42}\n");
  CHECK(r.out == "ok\n");
}

TEST_CASE("usage problems exit 1") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("match --rule only").exit_code == 1);
}
