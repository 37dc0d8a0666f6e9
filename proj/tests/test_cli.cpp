#include <doctest.h>

#include <regex>
#include <string>

#include "erq/graph.hpp"
#include "erq/io.hpp"
#include "support/reference.hpp"

namespace {

ref::CliResult run(const std::string& args, bool merge_stderr = false) {
  return ref::run_cli(args, merge_stderr);
}

std::string strip_elapsed(const std::string& report) {
  static const std::regex kElapsed("\"elapsed_ms\":[^,}]*");
  return std::regex_replace(report, kElapsed, "\"elapsed_ms\":X");
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli emits one deterministic report line per run") {
  const std::string graph = ref::temp_path("p20.gr");
  const ref::CliResult gen =
      run("gen --family path --n 20 --graph-out " + graph);
  REQUIRE(gen.status == 0);
  CHECK(has(gen.output, "\"command\":\"gen\""));
  CHECK(has(gen.output, "\"family\":\"path\""));

  const std::string cmd = "verify-tree --hidden " + graph + " --seed 3";
  const ref::CliResult a = run(cmd);
  const ref::CliResult b = run(cmd);
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  CHECK(a.output.back() == '\n');
  // Bit-identical apart from the wall-clock field.
  CHECK(strip_elapsed(a.output) == strip_elapsed(b.output));
  CHECK(has(a.output, "\"command\":\"verify-tree\""));
  CHECK(has(a.output, "\"verdict\":true"));
  CHECK(has(a.output, "\"distinct_queries\":19"));
  CHECK(has(a.output, "\"seed\":3"));
}

TEST_CASE("cli exit codes separate reject from usage error") {
  const std::string cyc = ref::temp_path("c8.gr");
  REQUIRE(run("gen --family cycle --n 8 --graph-out " + cyc).status == 0);

  const ref::CliResult reject = run("verify-tree --hidden " + cyc);
  CHECK(reject.status == 1);
  CHECK(has(reject.output, "\"verdict\":false"));

  CHECK(run("no-such-command", true).status == 2);
  CHECK(run("verify-tree", true).status == 2);  // no --hidden
  const ref::CliResult same = run("er --hidden " + cyc + " --u 2 --v 2");
  CHECK(same.status == 2);
  CHECK(has(same.output, "\"reason\":\"SameVertex\""));
}

TEST_CASE("cli answers single resistance queries, exactly on demand") {
  const std::string tri = ref::temp_path("c3.gr");
  REQUIRE(run("gen --family cycle --n 3 --graph-out " + tri).status == 0);
  const ref::CliResult r = run("er --hidden " + tri + " --u 1 --v 2 --exact");
  CHECK(r.status == 0);
  CHECK(has(r.output, "\"er\":0.666666666667"));
  CHECK(has(r.output, "\"er_exact\":\"2/3\""));
  CHECK(has(r.output, "\"distinct_queries\":1"));

  const std::string transcript = ref::temp_path("t.log");
  REQUIRE(run("er --hidden " + tri + " --u 1 --v 3 --transcript-out " + transcript)
              .status == 0);
  const std::string logged = ref::read_file(transcript);
  REQUIRE(logged.rfind("q er 1 3 0.66666666666666", 0) == 0);
  CHECK(logged.back() == '\n');
}

TEST_CASE("cli reconstructs a hidden graph file and reports its budget") {
  erq::Rng rng(211);
  const erq::WeightedGraph g = ref::random_connected(rng, 9, 6, 0.5, 2.0);
  const std::string hidden = ref::temp_path("h9.gr");
  erq::write_graph_file(hidden, g);
  const std::string out = ref::temp_path("rec9.gr");

  const ref::CliResult r =
      run("reconstruct-full --hidden " + hidden + " --recovered-out " + out);
  CHECK(r.status == 0);
  CHECK(has(r.output, "\"distinct_queries\":36"));
  CHECK(has(r.output, "\"budget\":36"));
  const erq::WeightedGraph back = erq::read_graph_file(out);
  CHECK(erq::max_weight_error(g, back) < 1e-6);
}

TEST_CASE("cli completion covers both modes and classifies failures") {
  // Hidden path 1-2-3-4 (unit weights); the middle edge is unknown.
  const std::string hidden = ref::temp_path("p4.gr");
  ref::write_file(hidden, "p er 4 3\ne 1 2\ne 2 3\ne 3 4\n");
  const std::string inst = ref::temp_path("p4.inst");
  ref::write_file(inst, "p er 4 3\nw set 1 2\ne 1 2\ne 2 3 ?\ne 3 4\n");

  const std::string out = ref::temp_path("p4rec.gr");
  const ref::CliResult ex = run("complete --mode exhaustive --hidden " + hidden +
                                " --instance " + inst + " --recovered-out " + out);
  CHECK(ex.status == 0);
  CHECK(has(ex.output, "\"verdict\":true"));
  CHECK(has(ex.output, "\"mode\":\"exhaustive\""));
  CHECK(has(ex.output, "\"distinct_queries\":1"));
  CHECK(has(ex.output, "\"recovered\":[1]"));
  CHECK(has(ex.output, "\"candidates_total\":2"));
  CHECK(erq::read_graph_file(out).weight(1, 2) == 1.0);

  const ref::CliResult quad = run("complete --mode quadratic --hidden " + hidden +
                                  " --instance " + inst);
  CHECK(quad.status == 0);
  CHECK(has(quad.output, "\"mode\":\"quadratic\""));
  CHECK(has(quad.output, "\"distinct_queries\":1"));

  const std::string miss = ref::temp_path("p4miss.inst");
  ref::write_file(miss, "p er 4 3\nw set 2 3\ne 1 2\ne 2 3 ?\ne 3 4\n");
  const ref::CliResult none =
      run("complete --mode exhaustive --hidden " + hidden + " --instance " + miss);
  CHECK(none.status == 1);
  CHECK(has(none.output, "\"verdict\":false"));
  CHECK(has(none.output, "\"reason\":\"NoConsistentCompletion\""));

  const ref::CliResult badmode = run(
      "complete --mode guess --hidden " + hidden + " --instance " + inst, true);
  CHECK(badmode.status == 2);
}

TEST_CASE("cli runs the resistance-vs-shortest-path family end to end") {
  const std::string gout = ref::temp_path("adjg.gr");
  const std::string hout = ref::temp_path("adjh.gr");
  const ref::CliResult r = run("sep-adjacency --n 12 --i 4 --j 12 --graph-out " +
                               gout + " --paired-out " + hout);
  CHECK(r.status == 0);
  CHECK(has(r.output, "\"verdict\":true"));
  CHECK(has(r.output, "\"sp_centers_g\":1"));
  CHECK(has(r.output, "\"sp_centers_h\":2"));
  const erq::WeightedGraph g = erq::read_graph_file(gout);
  const erq::WeightedGraph h = erq::read_graph_file(hout);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(h.has_edge(0, 1));

  CHECK(run("sep-adjacency --n 4 --i 3 --j 4", true).status == 2);
}

TEST_CASE("cli property tester rejects a star and tracks its budget") {
  const std::string star = ref::temp_path("s16.gr");
  REQUIRE(run("gen --family star --n 16 --graph-out " + star).status == 0);
  const ref::CliResult r = run("ptest-vbc --hidden " + star + " --eps 0.5 --seed 5");
  CHECK(r.status == 1);
  CHECK(has(r.output, "\"verdict\":false"));
  CHECK(has(r.output, "\"reason\":\"CutVertexFound\""));
  CHECK(has(r.output, "\"within_budget\":true"));
}

TEST_CASE("cli gradient check compares the derivative to the queried value") {
  const std::string tri = ref::temp_path("g3.gr");
  REQUIRE(run("gen --family cycle --n 5 --graph-out " + tri).status == 0);
  const ref::CliResult r = run("gradient-check --hidden " + tri + " --i 1 --j 3");
  CHECK(r.status == 0);
  CHECK(has(r.output, "\"verdict\":true"));
}
