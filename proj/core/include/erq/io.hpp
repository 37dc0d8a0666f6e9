#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "erq/graph.hpp"
#include "erq/oracle.hpp"
#include "erq/reconstruction.hpp"
#include "erq/tree_decomposition.hpp"

namespace erq {

// Graph files: text, 1-indexed, '#' starts a comment anywhere on a line.
// Header `p er <n> <m>`, then m lines `e <u> <v> <w>` (`<w>` omitted = 1).
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);
void write_graph_file(const std::string& path, const WeightedGraph& g);

// Tree-decomposition files, PACE-style: `s td <#bags> <width+1> <n>`,
// then `b <id> <v...>` lines (ids 1-based), then bag-index pairs for the
// tree edges.  '#' and leading-'c' comments are skipped.
struct TdFile {
  TreeDecomposition td;
  int n = 0;  // vertex count the file declares
};
TdFile read_td(std::istream& in);
TdFile read_td_file(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& td, int n);
void write_td_file(const std::string& path, const TreeDecomposition& td, int n);

// Completion instances: a graph file whose unknown entries carry `?` instead
// of a weight, plus one `w set <w1> <w2> ...` line listing the candidate
// weights for exhaustive search.  Unknown pairs keep file order.
CompletionInstance read_instance(std::istream& in);
CompletionInstance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const CompletionInstance& inst);
void write_instance_file(const std::string& path, const CompletionInstance& inst);

// Query transcripts, one line per query in issue order:
// `q er <u> <v> <answer>` / `q sp <u> <v> <answer>`, 1-indexed,
// `inf` for unreachable pairs.  Intended for diffing runs.
void write_transcript(std::ostream& out, const std::vector<TranscriptEntry>& entries);
void write_transcript_file(const std::string& path,
                           const std::vector<TranscriptEntry>& entries);

// Shortest round-trip decimal rendering (std::to_chars) shared by the
// writers so identical inputs serialize byte-identically.
std::string format_number(double v);

}  // namespace erq
