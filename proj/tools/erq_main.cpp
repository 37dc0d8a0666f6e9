// erq: command-line laboratory for inferring hidden graphs through an
// effective-resistance query oracle.  One subcommand per operation; every run
// emits a single-line JSON report (stdout or --out) and exits 0 for
// Accept/true/success, 1 for Reject/false, and 2 for usage or input errors.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "erq/errors.hpp"
#include "erq/exact.hpp"
#include "erq/generators.hpp"
#include "erq/graph.hpp"
#include "erq/io.hpp"
#include "erq/linalg.hpp"
#include "erq/oracle.hpp"
#include "erq/property_testing.hpp"
#include "erq/reconstruction.hpp"
#include "erq/report.hpp"
#include "erq/separation.hpp"
#include "erq/tolerance.hpp"
#include "erq/tree_decomposition.hpp"
#include "erq/verify.hpp"

namespace {

using erq::JsonValue;

struct Flags {
  std::string hidden;
  std::string known;
  std::string td;
  std::string instance;
  std::string out;
  std::string transcript_out;
  std::string recovered_out;
  double eps = 0.5;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  bool exact = false;
  bool ball_oracle = false;

  // Subcommand-specific.
  int u = 0;
  int v = 0;
  int vertex = 0;
  int i = 0;
  int j = 0;
  int n = 0;
  std::vector<int> keep;
  std::string mode = "quadratic";
  std::string family;
  std::string graph_out;
  std::string td_out;
  std::string paired_out;
  int m = 0;
  int k = 0;
  int t = 0;
  double keep_prob = 0.5;
  double wlo = 0.0;
  double whi = 0.0;
  int degree_bound = 0;
  bool matrices = false;
  int samples = 200;
  int b_t = 2;
};

int to_internal(int id, int n, const char* what) {
  if (id < 1 || id > n) {
    throw erq::BadParams(std::string(what) + " must lie in 1.." + std::to_string(n) +
                         ", got " + std::to_string(id));
  }
  return id - 1;
}

erq::ErOracle make_oracle(const Flags& f) {
  if (f.hidden.empty()) throw erq::BadParams("--hidden <graph file> is required");
  erq::WeightedGraph g = erq::read_graph_file(f.hidden);
  erq::OracleCapabilities caps;
  caps.sorted_ball = f.ball_oracle;
  caps.exact_rational = f.exact;
  return erq::ErOracle(std::move(g), caps);
}

JsonValue json_resistance(const erq::Resistance& r) {
  if (r.is_infinite()) return JsonValue("inf");
  return JsonValue(r.value());
}

JsonValue json_vertex(const std::optional<int>& v) {
  if (!v) return JsonValue();
  return JsonValue(*v + 1);
}

void add_verdict_details(JsonValue::Object& d, const erq::Verdict& verdict) {
  d.emplace_back("witness", json_vertex(verdict.witness));
  d.emplace_back("witness_value",
                 verdict.witness_value ? JsonValue(*verdict.witness_value) : JsonValue());
  d.emplace_back("saw_infinite", JsonValue(verdict.saw_infinite));
  if (!verdict.note.empty()) d.emplace_back("note", JsonValue(verdict.note));
}

void add_outcome_details(JsonValue::Object& d, const erq::TestOutcome& outcome) {
  d.emplace_back("samples_used", JsonValue(outcome.samples_used));
  d.emplace_back("witness_vertex", json_vertex(outcome.witness_vertex));
  if (outcome.witness_edge) {
    d.emplace_back("witness_edge",
                   JsonValue(JsonValue::Array{JsonValue(outcome.witness_edge->first + 1),
                                              JsonValue(outcome.witness_edge->second + 1)}));
  } else {
    d.emplace_back("witness_edge", JsonValue());
  }
  if (!outcome.witness_vertices.empty()) {
    JsonValue::Array w;
    for (int v : outcome.witness_vertices) w.emplace_back(v + 1);
    d.emplace_back("witness_vertices", JsonValue(std::move(w)));
  }
  if (!outcome.note.empty()) d.emplace_back("note", JsonValue(outcome.note));
}

double weight_error_vs(const erq::WeightedGraph& recovered, const std::string& hidden_path) {
  erq::WeightedGraph hidden = erq::read_graph_file(hidden_path);
  return erq::max_weight_error(recovered, hidden);
}

struct RunResult {
  int exit_code = 0;
  erq::Report report;
};

// Exceptions that represent a negative finding about the hidden graph rather
// than a malformed request; these exit 1 like any Reject verdict.
bool is_negative_finding(const std::exception& e) {
  return dynamic_cast<const erq::NoConsistentCompletion*>(&e) != nullptr ||
         dynamic_cast<const erq::AmbiguousCompletion*>(&e) != nullptr ||
         dynamic_cast<const erq::InconsistentKnownPart*>(&e) != nullptr;
}

std::string error_name(const std::exception& e) {
  if (dynamic_cast<const erq::ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const erq::SameVertex*>(&e)) return "SameVertex";
  if (dynamic_cast<const erq::DisconnectedPair*>(&e)) return "DisconnectedPair";
  if (dynamic_cast<const erq::Disconnected*>(&e)) return "Disconnected";
  if (dynamic_cast<const erq::WeightedInput*>(&e)) return "WeightedInput";
  if (dynamic_cast<const erq::InvalidDecomposition*>(&e)) return "InvalidDecomposition";
  if (dynamic_cast<const erq::InconsistentKnownPart*>(&e)) return "InconsistentKnownPart";
  if (dynamic_cast<const erq::NoConsistentCompletion*>(&e)) return "NoConsistentCompletion";
  if (dynamic_cast<const erq::AmbiguousCompletion*>(&e)) return "AmbiguousCompletion";
  if (dynamic_cast<const erq::DegreeBoundExceeded*>(&e)) return "DegreeBoundExceeded";
  if (dynamic_cast<const erq::CapabilityError*>(&e)) return "CapabilityError";
  if (dynamic_cast<const erq::BadParams*>(&e)) return "BadParams";
  return "Error";
}

void fill_ledger(erq::Report& rep, const erq::QueryLedger& ledger) {
  rep.distinct_queries = ledger.distinct;
  rep.total_queries = ledger.total;
}

std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each fills the report and returns the exit code.
// ---------------------------------------------------------------------------

int run_gen(const Flags& f, erq::Report& rep) {
  std::map<std::string, double> params;
  if (f.n > 0) params["n"] = f.n;
  if (f.m > 0) params["m"] = f.m;
  if (f.k > 0) params["k"] = f.k;
  if (f.t > 0) params["t"] = f.t;
  if (f.keep_prob != 0.5) params["keep"] = f.keep_prob;
  if (f.wlo > 0.0) params["wlo"] = f.wlo;
  if (f.whi > 0.0) params["whi"] = f.whi;
  if (f.family == "sp_er_pair") {
    // --i/--j are the 1-based leaf labels used throughout the reports.
    if (f.i) params["i"] = f.i - 1;
    if (f.j) params["j"] = f.j - 1;
  } else {
    if (f.i) params["i"] = f.i;
    if (f.j) params["j"] = f.j;
  }
  erq::Generated gen = erq::generate(f.family, params, f.seed);
  if (f.graph_out.empty()) throw erq::BadParams("gen: --graph-out <file> is required");
  erq::write_graph_file(f.graph_out, gen.graph);
  if (!f.td_out.empty()) {
    if (!gen.td) throw erq::BadParams("gen: family '" + f.family + "' provides no decomposition");
    erq::write_td_file(f.td_out, *gen.td, gen.graph.vertex_count());
  }
  if (!f.paired_out.empty()) {
    if (!gen.paired) throw erq::BadParams("gen: family '" + f.family + "' provides no paired graph");
    erq::write_graph_file(f.paired_out, *gen.paired);
  }
  rep.n = gen.graph.vertex_count();
  rep.details.emplace_back("family", JsonValue(f.family));
  rep.details.emplace_back("edges", JsonValue(gen.graph.edge_count()));
  rep.details.emplace_back("graph_out", JsonValue(f.graph_out));
  if (!f.td_out.empty()) rep.details.emplace_back("td_out", JsonValue(f.td_out));
  if (!f.paired_out.empty()) rep.details.emplace_back("paired_out", JsonValue(f.paired_out));
  return 0;
}

int run_er(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  int u = to_internal(f.u, o.vertex_count(), "--u");
  int v = to_internal(f.v, o.vertex_count(), "--v");
  erq::Resistance r = o.er_query(u, v);
  rep.details.emplace_back("u", JsonValue(f.u));
  rep.details.emplace_back("v", JsonValue(f.v));
  rep.details.emplace_back("er", json_resistance(r));
  if (f.exact) {
    erq::exact::Rational q = o.er_query_exact(u, v);
    rep.details.emplace_back("er_exact", JsonValue(erq::exact::to_string(q)));
  }
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return 0;
}

int run_verify_tree(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  erq::WeightClass wc =
      o.hidden_is_unweighted() ? erq::WeightClass::Unweighted : erq::WeightClass::Weighted;
  erq::Verdict v = erq::is_tree(o, wc);
  rep.verdict = JsonValue(v.answer);
  add_verdict_details(rep.details, v);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return v.answer ? 0 : 1;
}

int run_verify_equal(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  if (f.known.empty()) throw erq::BadParams("verify-equal: --known <graph file> is required");
  erq::WeightedGraph known = erq::read_graph_file(f.known);
  erq::Verdict v = erq::equal_monotone(o, known, erq::Tolerance{f.tol, 1e-10});
  rep.verdict = JsonValue(v.answer);
  add_verdict_details(rep.details, v);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return v.answer ? 0 : 1;
}

int run_verify_cut_vertex(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  int v = to_internal(f.vertex, o.vertex_count(), "--vertex");
  erq::WeightClass wc =
      o.hidden_is_unweighted() ? erq::WeightClass::Unweighted : erq::WeightClass::Weighted;
  erq::Verdict verdict = erq::is_cut_vertex(o, v, wc, f.tol);
  rep.verdict = JsonValue(verdict.answer);
  rep.details.emplace_back("vertex", JsonValue(f.vertex));
  add_verdict_details(rep.details, verdict);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return verdict.answer ? 0 : 1;
}

int run_verify_bicomp(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  int u = to_internal(f.u, o.vertex_count(), "--u");
  int v = to_internal(f.v, o.vertex_count(), "--v");
  erq::WeightClass wc =
      o.hidden_is_unweighted() ? erq::WeightClass::Unweighted : erq::WeightClass::Weighted;
  erq::Verdict verdict = erq::same_biconnected_component(o, u, v, wc, f.tol);
  rep.verdict = JsonValue(verdict.answer);
  rep.details.emplace_back("u", JsonValue(f.u));
  rep.details.emplace_back("v", JsonValue(f.v));
  add_verdict_details(rep.details, verdict);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return verdict.answer ? 0 : 1;
}

int run_verify_cut_edge(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  int u = to_internal(f.u, o.vertex_count(), "--u");
  int v = to_internal(f.v, o.vertex_count(), "--v");
  erq::WeightClass wc =
      o.hidden_is_unweighted() ? erq::WeightClass::Unweighted : erq::WeightClass::Weighted;
  erq::Verdict verdict = erq::is_cut_edge(o, u, v, wc, f.tol);
  rep.verdict = JsonValue(verdict.answer);
  rep.details.emplace_back("u", JsonValue(f.u));
  rep.details.emplace_back("v", JsonValue(f.v));
  add_verdict_details(rep.details, verdict);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return verdict.answer ? 0 : 1;
}

int run_ptest_vbc(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  erq::TestOutcome outcome = erq::test_vertex_biconnectivity(o, f.eps, f.seed);
  rep.verdict = JsonValue(outcome.accept);
  rep.reason = JsonValue(erq::to_string(outcome.reason));
  const std::int64_t n = o.vertex_count();
  const std::int64_t s = static_cast<std::int64_t>(std::ceil(4.0 / f.eps));
  const std::int64_t budget = (n - 1) + (s + 1) * (2 * n - 3);
  rep.details.emplace_back("eps", JsonValue(f.eps));
  rep.details.emplace_back("budget", JsonValue(budget));
  rep.details.emplace_back("within_budget",
                           JsonValue(outcome.queries_used.distinct <= budget));
  add_outcome_details(rep.details, outcome);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return outcome.accept ? 0 : 1;
}

int run_ptest_ebc(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  erq::TestOutcome outcome = erq::test_edge_biconnectivity(o, f.eps, f.seed);
  rep.verdict = JsonValue(outcome.accept);
  rep.reason = JsonValue(erq::to_string(outcome.reason));
  const double n = o.vertex_count();
  const double scale = n / (f.eps * f.eps) + 1.0 / (f.eps * f.eps * f.eps * f.eps);
  rep.details.emplace_back("eps", JsonValue(f.eps));
  rep.details.emplace_back("budget_scale", JsonValue(scale));
  rep.details.emplace_back("budget_constant",
                           JsonValue(outcome.queries_used.distinct / scale));
  rep.details.emplace_back("ball_items", JsonValue(outcome.queries_used.ball_items));
  add_outcome_details(rep.details, outcome);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return outcome.accept ? 0 : 1;
}

int run_density(const Flags& f, erq::Report& rep) {
  if (f.hidden.empty()) throw erq::BadParams("--hidden <graph file> is required");
  erq::WeightedGraph g = erq::read_graph_file(f.hidden);
  rep.n = g.vertex_count();
  erq::ErDensity d = erq::er_density(g);
  rep.details.emplace_back("rho", JsonValue(d.rho));
  rep.details.emplace_back("argmax", JsonValue(d.argmax + 1));
  return 0;
}

int run_adapt_test(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  int bound = f.degree_bound;
  erq::WeightedGraph hidden = erq::read_graph_file(f.hidden);
  if (bound <= 0) {
    for (int v = 0; v < hidden.vertex_count(); ++v) {
      bound = std::max(bound, hidden.degree_count(v));
    }
    bound = std::max(bound, 1);
  }
  erq::TriangleFreenessTester tester(bound, f.eps);
  erq::AdapterReport ar = erq::adapt_bounded_degree_tester(o, tester, f.seed);
  rep.verdict = JsonValue(ar.outcome.accept);
  rep.reason = JsonValue(erq::to_string(ar.outcome.reason));
  erq::ErDensity density = erq::er_density(hidden);
  const std::int64_t per_call =
      hidden.vertex_count() + static_cast<std::int64_t>(density.rho) * density.rho;
  rep.details.emplace_back("eps", JsonValue(f.eps));
  rep.details.emplace_back("degree_bound", JsonValue(bound));
  rep.details.emplace_back("callbacks", JsonValue(ar.callbacks));
  rep.details.emplace_back("degree_calls", JsonValue(ar.degree_calls));
  rep.details.emplace_back("neighbor_calls", JsonValue(ar.neighbor_calls));
  rep.details.emplace_back("rho", JsonValue(density.rho));
  rep.details.emplace_back("budget", JsonValue(ar.callbacks * per_call));
  rep.details.emplace_back("within_budget",
                           JsonValue(ar.outcome.queries_used.distinct <= ar.callbacks * per_call));
  add_outcome_details(rep.details, ar.outcome);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return ar.outcome.accept ? 0 : 1;
}

int run_reconstruct_full(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  erq::ReconstructionResult r = erq::reconstruct_full(o);
  if (!f.recovered_out.empty()) erq::write_graph_file(f.recovered_out, r.graph);
  double err = weight_error_vs(r.graph, f.hidden);
  rep.details.emplace_back("edges", JsonValue(r.graph.edge_count()));
  rep.details.emplace_back("budget", JsonValue(choose2(o.vertex_count())));
  rep.details.emplace_back("max_weight_error", JsonValue(err));
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return 0;
}

int run_reconstruct_td(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  if (f.td.empty()) throw erq::BadParams("reconstruct-td: --td <file> is required");
  erq::TdFile td = erq::read_td_file(f.td);
  if (td.n != o.vertex_count()) {
    throw erq::BadParams("reconstruct-td: decomposition declares " + std::to_string(td.n) +
                         " vertices, hidden graph has " + std::to_string(o.vertex_count()));
  }
  erq::ReconstructionResult r = erq::reconstruct_from_td(o, td.td);
  if (!f.recovered_out.empty()) erq::write_graph_file(f.recovered_out, r.graph);
  double err = weight_error_vs(r.graph, f.hidden);
  rep.details.emplace_back("bags", JsonValue(td.td.bag_count()));
  rep.details.emplace_back("width", JsonValue(td.td.width()));
  rep.details.emplace_back("budget",
                           JsonValue(td.td.bag_count() * choose2(td.td.width() + 1)));
  rep.details.emplace_back("within_budget",
                           JsonValue(o.ledger().distinct <=
                                     td.td.bag_count() * choose2(td.td.width() + 1)));
  rep.details.emplace_back("max_weight_error", JsonValue(err));
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return 0;
}

int run_reconstruct_schur(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  if (f.keep.empty()) throw erq::BadParams("reconstruct-schur: --keep <ids...> is required");
  std::vector<int> keep;
  keep.reserve(f.keep.size());
  for (int id : f.keep) keep.push_back(to_internal(id, o.vertex_count(), "--keep entry"));
  erq::SchurReconstruction r = erq::reconstruct_schur(o, keep);
  if (!f.recovered_out.empty()) erq::write_graph_file(f.recovered_out, r.graph);
  // Cross-check against the reduction computed directly from the hidden graph.
  erq::WeightedGraph hidden = erq::read_graph_file(f.hidden);
  erq::SchurResult reference = erq::schur_complement(hidden, keep);
  double err = erq::max_weight_error(r.graph, reference.graph);
  JsonValue::Array kept;
  for (int id : r.vertex_map) kept.emplace_back(id + 1);
  rep.details.emplace_back("keep", JsonValue(std::move(kept)));
  rep.details.emplace_back("edges", JsonValue(r.graph.edge_count()));
  rep.details.emplace_back("budget", JsonValue(choose2(static_cast<std::int64_t>(r.vertex_map.size()))));
  rep.details.emplace_back("max_weight_error", JsonValue(err));
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return 0;
}

int run_complete(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  if (f.instance.empty()) throw erq::BadParams("complete: --instance <file> is required");
  erq::CompletionInstance inst = erq::read_instance_file(f.instance);
  if (inst.n != o.vertex_count()) {
    throw erq::BadParams("complete: instance declares " + std::to_string(inst.n) +
                         " vertices, hidden graph has " + std::to_string(o.vertex_count()));
  }
  erq::CompletionResult r;
  if (f.mode == "quadratic") {
    r = erq::complete_quadratic(o, inst, erq::Tolerance{f.tol, 1e-10});
  } else if (f.mode == "exhaustive") {
    r = erq::complete_exhaustive(o, inst);
  } else {
    throw erq::BadParams("complete: --mode must be 'quadratic' or 'exhaustive'");
  }
  if (!f.recovered_out.empty()) erq::write_graph_file(f.recovered_out, r.graph);
  double err = weight_error_vs(r.graph, f.hidden);
  rep.verdict = JsonValue(true);
  JsonValue::Array recovered;
  for (double w : r.recovered) recovered.emplace_back(w);
  rep.details.emplace_back("mode", JsonValue(f.mode));
  rep.details.emplace_back("k", JsonValue(static_cast<std::int64_t>(inst.unknown.size())));
  rep.details.emplace_back("recovered", JsonValue(std::move(recovered)));
  if (f.mode == "exhaustive") {
    rep.details.emplace_back("candidates_total", JsonValue(r.candidates_total));
    rep.details.emplace_back("candidates_evaluated", JsonValue(r.candidates_evaluated));
  }
  rep.details.emplace_back("max_weight_error", JsonValue(err));
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return 0;
}

int run_sep_clique(const Flags& f, erq::Report& rep) {
  erq::ErOracle o = make_oracle(f);
  rep.n = o.vertex_count();
  erq::Verdict v = erq::clique_check(o);
  rep.verdict = JsonValue(v.answer);
  add_verdict_details(rep.details, v);
  fill_ledger(rep, o.ledger());
  if (!f.transcript_out.empty()) erq::write_transcript_file(f.transcript_out, o.transcript());
  return v.answer ? 0 : 1;
}

JsonValue er_matrix_json(const erq::WeightedGraph& g) {
  erq::ErMatrix m = erq::all_pairs_er(g);
  JsonValue::Array rows;
  for (int i = 0; i < m.size(); ++i) {
    JsonValue::Array row;
    for (int j = 0; j < m.size(); ++j) {
      row.emplace_back(i == j ? JsonValue(0.0) : json_resistance(m(i, j)));
    }
    rows.emplace_back(std::move(row));
  }
  return JsonValue(std::move(rows));
}

int run_sep_adjacency(const Flags& f, erq::Report& rep) {
  if (f.n < 8) throw erq::BadParams("sep-adjacency: --n must be even and at least 8");
  erq::AdjacencyFamilyReport r = erq::adjacency_family_report(f.n, f.i, f.j, 1e-9);
  rep.n = f.n;
  bool ok = r.er_indistinguishable && r.sp_distinguishes &&
            std::abs(r.r_centers_g - 1.0) <= 1e-9 && std::abs(r.r_centers_h - 1.0) <= 1e-9;
  rep.verdict = JsonValue(ok);
  rep.details.emplace_back("i", JsonValue(f.i));
  rep.details.emplace_back("j", JsonValue(f.j));
  rep.details.emplace_back("vi", JsonValue(r.vi + 1));
  rep.details.emplace_back("vj", JsonValue(r.vj + 1));
  rep.details.emplace_back("max_agreeing_diff", JsonValue(r.max_agreeing_diff));
  rep.details.emplace_back("distinguishing_pairs", JsonValue(r.distinguishing_pairs));
  rep.details.emplace_back("r_centers_g", JsonValue(r.r_centers_g));
  rep.details.emplace_back("r_centers_h", JsonValue(r.r_centers_h));
  rep.details.emplace_back("sp_centers_g", JsonValue(r.sp_centers_g));
  rep.details.emplace_back("sp_centers_h", JsonValue(r.sp_centers_h));
  if (f.matrices) {
    rep.details.emplace_back("er_matrix_g", er_matrix_json(r.g));
    rep.details.emplace_back("er_matrix_h", er_matrix_json(r.h));
  }
  if (!f.graph_out.empty()) erq::write_graph_file(f.graph_out, r.g);
  if (!f.paired_out.empty()) erq::write_graph_file(f.paired_out, r.h);
  return ok ? 0 : 1;
}

int run_gradient_check(const Flags& f, erq::Report& rep) {
  if (f.hidden.empty()) throw erq::BadParams("--hidden <graph file> is required");
  erq::WeightedGraph g = erq::read_graph_file(f.hidden);
  rep.n = g.vertex_count();
  int i = to_internal(f.i, g.vertex_count(), "--i");
  int j = to_internal(f.j, g.vertex_count(), "--j");
  double derivative = erq::logdet_directional_derivative(g, i, j);
  erq::Resistance r = erq::effective_resistance(g, i, j);
  double diff = std::abs(derivative - r.value());
  bool ok = diff <= f.tol;
  rep.verdict = JsonValue(ok);
  rep.details.emplace_back("i", JsonValue(f.i));
  rep.details.emplace_back("j", JsonValue(f.j));
  rep.details.emplace_back("derivative", JsonValue(derivative));
  rep.details.emplace_back("er", JsonValue(r.value()));
  rep.details.emplace_back("abs_diff", JsonValue(diff));
  return ok ? 0 : 1;
}

void write_report(const erq::Report& rep, const std::string& out_path) {
  std::string line = rep.to_json();
  if (out_path.empty()) {
    std::cout << line << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      std::exit(2);
    }
    out << line << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hidden-graph inference through an effective-resistance oracle"};
  app.require_subcommand(1);

  Flags f;

  auto add_common = [&](CLI::App* cmd, bool oracle_cmd) {
    cmd->add_option("--out", f.out, "write the JSON report here instead of stdout");
    cmd->add_option("--seed", f.seed, "random seed (default 0)");
    cmd->add_option("--tol", f.tol, "numeric tolerance (default 1e-8)");
    if (oracle_cmd) {
      cmd->add_option("--hidden", f.hidden, "hidden graph file (oracle input)");
      cmd->add_flag("--exact", f.exact, "enable the exact-rational oracle capability");
      cmd->add_flag("--ball-oracle", f.ball_oracle, "enable the sorted-ball capability");
      cmd->add_option("--transcript-out", f.transcript_out, "dump the query transcript here");
    }
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a benchmark graph family");
  add_common(gen, false);
  gen->add_option("--family", f.family)->required();
  gen->add_option("--n", f.n);
  gen->add_option("--m", f.m);
  gen->add_option("--k", f.k);
  gen->add_option("--t", f.t);
  gen->add_option("--i", f.i);
  gen->add_option("--j", f.j);
  gen->add_option("--keep-prob", f.keep_prob);
  gen->add_option("--wlo", f.wlo);
  gen->add_option("--whi", f.whi);
  gen->add_option("--graph-out", f.graph_out);
  gen->add_option("--td-out", f.td_out);
  gen->add_option("--paired-out", f.paired_out);

  CLI::App* er = app.add_subcommand("er", "answer one effective-resistance query");
  add_common(er, true);
  er->add_option("--u", f.u)->required();
  er->add_option("--v", f.v)->required();

  CLI::App* vtree = app.add_subcommand("verify-tree", "decide whether the hidden graph is a tree");
  add_common(vtree, true);

  CLI::App* vequal = app.add_subcommand("verify-equal", "decide equality with a known supergraph-ordered graph");
  add_common(vequal, true);
  vequal->add_option("--known", f.known, "known comparison graph file");

  CLI::App* vcv = app.add_subcommand("verify-cut-vertex", "decide whether a vertex is a cut vertex");
  add_common(vcv, true);
  vcv->add_option("--vertex", f.vertex)->required();

  CLI::App* vbicomp = app.add_subcommand("verify-bicomp", "decide whether two vertices share a biconnected component");
  add_common(vbicomp, true);
  vbicomp->add_option("--u", f.u)->required();
  vbicomp->add_option("--v", f.v)->required();

  CLI::App* vce = app.add_subcommand("verify-cut-edge", "decide whether an edge is a bridge");
  add_common(vce, true);
  vce->add_option("--u", f.u)->required();
  vce->add_option("--v", f.v)->required();

  CLI::App* pvbc = app.add_subcommand("ptest-vbc", "property-test vertex biconnectivity");
  add_common(pvbc, true);
  pvbc->add_option("--eps", f.eps);

  CLI::App* pebc = app.add_subcommand("ptest-ebc", "property-test edge biconnectivity");
  add_common(pebc, true);
  pebc->add_option("--eps", f.eps);

  CLI::App* density = app.add_subcommand("density", "resistance-ball density of a graph file");
  add_common(density, false);
  density->add_option("--hidden", f.hidden, "graph file");

  CLI::App* adapt = app.add_subcommand("adapt-test", "run the plugged-in triangle tester through the oracle adapter");
  add_common(adapt, true);
  adapt->add_option("--eps", f.eps);
  adapt->add_option("--degree-bound", f.degree_bound, "degree promise (default: measured)");

  CLI::App* rfull = app.add_subcommand("reconstruct-full", "recover the hidden graph from all pairs");
  add_common(rfull, true);
  rfull->add_option("--recovered-out", f.recovered_out);

  CLI::App* rtd = app.add_subcommand("reconstruct-td", "recover the hidden graph guided by a tree decomposition");
  add_common(rtd, true);
  rtd->add_option("--td", f.td, "tree decomposition file");
  rtd->add_option("--recovered-out", f.recovered_out);

  CLI::App* rschur = app.add_subcommand("reconstruct-schur", "recover the reduction onto a vertex subset");
  add_common(rschur, true);
  rschur->add_option("--keep", f.keep, "kept vertex ids (1-indexed)");
  rschur->add_option("--recovered-out", f.recovered_out);

  CLI::App* complete = app.add_subcommand("complete", "fill unknown weights of a partially known graph");
  add_common(complete, true);
  complete->add_option("--instance", f.instance, "completion instance file");
  complete->add_option("--mode", f.mode, "quadratic | exhaustive");
  complete->add_option("--recovered-out", f.recovered_out);

  CLI::App* sclique = app.add_subcommand("sep-clique", "clique test with n-1 resistance queries");
  add_common(sclique, true);

  CLI::App* sadj = app.add_subcommand("sep-adjacency", "resistance-indistinguishable adjacency family");
  add_common(sadj, false);
  sadj->add_option("--n", f.n)->required();
  sadj->add_option("--i", f.i)->required();
  sadj->add_option("--j", f.j)->required();
  sadj->add_flag("--matrices", f.matrices, "embed both resistance matrices in the report");
  sadj->add_option("--graph-out", f.graph_out, "write G here");
  sadj->add_option("--paired-out", f.paired_out, "write H here");

  CLI::App* grad = app.add_subcommand("gradient-check", "log-det derivative equals the pair resistance");
  add_common(grad, false);
  grad->add_option("--hidden", f.hidden, "graph file");
  grad->add_option("--i", f.i)->required();
  grad->add_option("--j", f.j)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  erq::Report rep;
  rep.seed = f.seed;
  rep.tolerance = f.tol;
  int code = 0;
  auto started = std::chrono::steady_clock::now();
  try {
    if (gen->parsed()) {
      rep.command = "gen";
      code = run_gen(f, rep);
    } else if (er->parsed()) {
      rep.command = "er";
      code = run_er(f, rep);
    } else if (vtree->parsed()) {
      rep.command = "verify-tree";
      code = run_verify_tree(f, rep);
    } else if (vequal->parsed()) {
      rep.command = "verify-equal";
      code = run_verify_equal(f, rep);
    } else if (vcv->parsed()) {
      rep.command = "verify-cut-vertex";
      code = run_verify_cut_vertex(f, rep);
    } else if (vbicomp->parsed()) {
      rep.command = "verify-bicomp";
      code = run_verify_bicomp(f, rep);
    } else if (vce->parsed()) {
      rep.command = "verify-cut-edge";
      code = run_verify_cut_edge(f, rep);
    } else if (pvbc->parsed()) {
      rep.command = "ptest-vbc";
      code = run_ptest_vbc(f, rep);
    } else if (pebc->parsed()) {
      rep.command = "ptest-ebc";
      code = run_ptest_ebc(f, rep);
    } else if (density->parsed()) {
      rep.command = "density";
      code = run_density(f, rep);
    } else if (adapt->parsed()) {
      rep.command = "adapt-test";
      code = run_adapt_test(f, rep);
    } else if (rfull->parsed()) {
      rep.command = "reconstruct-full";
      code = run_reconstruct_full(f, rep);
    } else if (rtd->parsed()) {
      rep.command = "reconstruct-td";
      code = run_reconstruct_td(f, rep);
    } else if (rschur->parsed()) {
      rep.command = "reconstruct-schur";
      code = run_reconstruct_schur(f, rep);
    } else if (complete->parsed()) {
      rep.command = "complete";
      code = run_complete(f, rep);
    } else if (sclique->parsed()) {
      rep.command = "sep-clique";
      code = run_sep_clique(f, rep);
    } else if (sadj->parsed()) {
      rep.command = "sep-adjacency";
      code = run_sep_adjacency(f, rep);
    } else if (grad->parsed()) {
      rep.command = "gradient-check";
      code = run_gradient_check(f, rep);
    }
  } catch (const erq::Error& e) {
    bool negative = is_negative_finding(e);
    code = negative ? 1 : 2;
    if (negative) rep.verdict = JsonValue(false);
    rep.reason = JsonValue(error_name(e));
    rep.details.emplace_back("error", JsonValue(std::string(e.what())));
    if (!negative) std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    rep.reason = JsonValue("Error");
    rep.details.emplace_back("error", JsonValue(std::string(e.what())));
    code = 2;
  }
  auto finished = std::chrono::steady_clock::now();
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(finished - started)
          .count();
  write_report(rep, f.out);
  return code;
}
