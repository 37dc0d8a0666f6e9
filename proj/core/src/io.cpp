#include "erq/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "erq/errors.hpp"

namespace erq {
namespace {

// Strips comments ('#' to end of line, or a whole line starting with 'c')
// and returns whitespace-split tokens; empty for blank/comment lines.
std::vector<std::string> tokenize(const std::string& raw) {
  std::string line = raw;
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  if (!tokens.empty() && tokens[0] == "c") tokens.clear();
  return tokens;
}

int parse_int(const std::string& tok, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("expected an integer for ") + what + ", got '" + tok + "'");
  }
  return value;
}

double parse_double(const std::string& tok, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("expected a number for ") + what + ", got '" + tok + "'");
  }
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  return out;
}

int to_internal_vertex(int id, int n, const char* what) {
  if (id < 1 || id > n) {
    throw ParseError(std::string(what) + " id " + std::to_string(id) +
                     " outside 1.." + std::to_string(n));
  }
  return id - 1;
}

struct ParsedEdge {
  int u = 0;
  int v = 0;
  double w = 1.0;
  bool unknown = false;
};

// Shared edge-section parser for graph and instance files.
struct ParsedFile {
  int n = 0;
  std::vector<ParsedEdge> edges;
  std::vector<double> weight_set;
  bool saw_weight_set = false;
};

ParsedFile parse_edge_file(std::istream& in, bool allow_unknown) {
  ParsedFile file;
  int declared_m = 0;
  bool saw_header = false;
  std::string raw;
  while (std::getline(in, raw)) {
    std::vector<std::string> t = tokenize(raw);
    if (t.empty()) continue;
    if (!saw_header) {
      if (t.size() != 4 || t[0] != "p" || t[1] != "er") {
        throw ParseError("expected header 'p er <n> <m>', got '" + raw + "'");
      }
      file.n = parse_int(t[2], "vertex count");
      declared_m = parse_int(t[3], "edge count");
      if (file.n < 0 || declared_m < 0) throw ParseError("negative count in header");
      saw_header = true;
      continue;
    }
    if (t[0] == "e") {
      if (t.size() < 3 || t.size() > 4) {
        throw ParseError("expected 'e <u> <v> [<w>]', got '" + raw + "'");
      }
      ParsedEdge e;
      e.u = to_internal_vertex(parse_int(t[1], "vertex"), file.n, "vertex");
      e.v = to_internal_vertex(parse_int(t[2], "vertex"), file.n, "vertex");
      if (t.size() == 4) {
        if (t[3] == "?") {
          if (!allow_unknown) throw ParseError("'?' weights are only valid in instance files");
          e.unknown = true;
        } else {
          e.w = parse_double(t[3], "edge weight");
        }
      }
      file.edges.push_back(e);
    } else if (t[0] == "w") {
      if (!allow_unknown) throw ParseError("'w set' lines are only valid in instance files");
      if (t.size() < 3 || t[1] != "set") {
        throw ParseError("expected 'w set <w1> <w2> ...', got '" + raw + "'");
      }
      if (file.saw_weight_set) throw ParseError("duplicate 'w set' line");
      for (std::size_t i = 2; i < t.size(); ++i) {
        file.weight_set.push_back(parse_double(t[i], "candidate weight"));
      }
      file.saw_weight_set = true;
    } else {
      throw ParseError("unexpected line '" + raw + "'");
    }
  }
  if (!saw_header) throw ParseError("missing 'p er <n> <m>' header");
  if (static_cast<int>(file.edges.size()) != declared_m) {
    throw ParseError("header declares " + std::to_string(declared_m) + " edges but " +
                     std::to_string(file.edges.size()) + " 'e' lines follow");
  }
  return file;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw BadParams("format_number: value not representable");
  return std::string(buf, ptr);
}

WeightedGraph read_graph(std::istream& in) {
  ParsedFile file = parse_edge_file(in, /*allow_unknown=*/false);
  std::vector<Edge> edges;
  edges.reserve(file.edges.size());
  for (const ParsedEdge& e : file.edges) edges.push_back({e.u, e.v, e.w});
  return WeightedGraph(file.n, std::move(edges));
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << "p er " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << "e " << e.u + 1 << ' ' << e.v + 1;
    if (e.w != 1.0) out << ' ' << format_number(e.w);
    out << '\n';
  }
}

void write_graph_file(const std::string& path, const WeightedGraph& g) {
  std::ofstream out = open_output(path);
  write_graph(out, g);
}

TdFile read_td(std::istream& in) {
  TdFile file;
  int declared_bags = 0;
  bool saw_header = false;
  std::vector<std::vector<int>> bags;
  std::vector<char> seen;
  std::vector<std::pair<int, int>> edges;
  std::string raw;
  while (std::getline(in, raw)) {
    std::vector<std::string> t = tokenize(raw);
    if (t.empty()) continue;
    if (!saw_header) {
      if (t.size() != 5 || t[0] != "s" || t[1] != "td") {
        throw ParseError("expected header 's td <#bags> <width+1> <n>', got '" + raw + "'");
      }
      declared_bags = parse_int(t[2], "bag count");
      parse_int(t[3], "width");  // declared width+1; informational
      file.n = parse_int(t[4], "vertex count");
      if (declared_bags < 0 || file.n < 0) throw ParseError("negative count in header");
      bags.assign(declared_bags, {});
      seen.assign(declared_bags, 0);
      saw_header = true;
      continue;
    }
    if (t[0] == "b") {
      if (t.size() < 2) throw ParseError("expected 'b <id> <v...>', got '" + raw + "'");
      int id = parse_int(t[1], "bag id");
      if (id < 1 || id > declared_bags) {
        throw ParseError("bag id " + std::to_string(id) + " outside 1.." +
                         std::to_string(declared_bags));
      }
      if (seen[id - 1]) throw ParseError("bag " + std::to_string(id) + " defined twice");
      seen[id - 1] = 1;
      for (std::size_t i = 2; i < t.size(); ++i) {
        bags[id - 1].push_back(to_internal_vertex(parse_int(t[i], "vertex"), file.n, "vertex"));
      }
      std::sort(bags[id - 1].begin(), bags[id - 1].end());
      bags[id - 1].erase(std::unique(bags[id - 1].begin(), bags[id - 1].end()),
                         bags[id - 1].end());
    } else if (t.size() == 2) {
      int a = parse_int(t[0], "bag id");
      int b = parse_int(t[1], "bag id");
      if (a < 1 || a > declared_bags || b < 1 || b > declared_bags) {
        throw ParseError("tree edge (" + std::to_string(a) + ", " + std::to_string(b) +
                         ") references an undefined bag");
      }
      edges.emplace_back(a - 1, b - 1);
    } else {
      throw ParseError("unexpected line '" + raw + "'");
    }
  }
  if (!saw_header) throw ParseError("missing 's td' header");
  for (int b = 0; b < declared_bags; ++b) {
    if (!seen[b]) throw ParseError("bag " + std::to_string(b + 1) + " never defined");
  }
  file.td.bags = std::move(bags);
  file.td.tree_edges = std::move(edges);
  return file;
}

TdFile read_td_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_td(in);
}

void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
  out << "s td " << td.bag_count() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (int b = 0; b < td.bag_count(); ++b) {
    out << "b " << b + 1;
    for (int v : td.bags[b]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

void write_td_file(const std::string& path, const TreeDecomposition& td, int n) {
  std::ofstream out = open_output(path);
  write_td(out, td, n);
}

CompletionInstance read_instance(std::istream& in) {
  ParsedFile file = parse_edge_file(in, /*allow_unknown=*/true);
  CompletionInstance inst;
  inst.n = file.n;
  inst.weight_set = file.weight_set;
  for (const ParsedEdge& e : file.edges) {
    int a = std::min(e.u, e.v);
    int b = std::max(e.u, e.v);
    if (e.unknown) {
      inst.unknown.emplace_back(a, b);
    } else {
      if (!inst.known.emplace(std::make_pair(a, b), e.w).second) {
        throw ParseError("known pair (" + std::to_string(a + 1) + ", " +
                         std::to_string(b + 1) + ") listed twice");
      }
    }
  }
  return inst;
}

CompletionInstance read_instance_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const CompletionInstance& inst) {
  std::size_t listed = inst.unknown.size();
  for (const auto& [p, w] : inst.known) {
    if (w > 0.0) ++listed;
  }
  out << "p er " << inst.n << ' ' << listed << '\n';
  if (!inst.weight_set.empty()) {
    out << "w set";
    for (double w : inst.weight_set) out << ' ' << format_number(w);
    out << '\n';
  }
  for (const auto& [p, w] : inst.known) {
    if (w <= 0.0) continue;  // absent pairs read back as known-zero
    out << "e " << p.first + 1 << ' ' << p.second + 1;
    if (w != 1.0) out << ' ' << format_number(w);
    out << '\n';
  }
  for (auto [u, v] : inst.unknown) {
    out << "e " << u + 1 << ' ' << v + 1 << " ?\n";
  }
}

void write_instance_file(const std::string& path, const CompletionInstance& inst) {
  std::ofstream out = open_output(path);
  write_instance(out, inst);
}

void write_transcript(std::ostream& out, const std::vector<TranscriptEntry>& entries) {
  for (const TranscriptEntry& e : entries) {
    if (e.kind == TranscriptEntry::Kind::Er) {
      out << "q er " << e.u + 1 << ' ' << e.v + 1 << ' '
          << (e.er.is_infinite() ? std::string("inf") : format_number(e.er.value())) << '\n';
    } else {
      out << "q sp " << e.u + 1 << ' ' << e.v + 1 << ' '
          << (e.sp ? std::to_string(*e.sp) : std::string("inf")) << '\n';
    }
  }
}

void write_transcript_file(const std::string& path,
                           const std::vector<TranscriptEntry>& entries) {
  std::ofstream out = open_output(path);
  write_transcript(out, entries);
}

}  // namespace erq
