#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace erq {

// Minimal ordered JSON value for report emission.  Object keys keep
// insertion order and floats render with 12 significant digits, so identical
// runs serialize byte-identically (the library shortest-round-trip rendering
// would not pin a digit count).
class JsonValue {
 public:
  using Object = std::vector<std::pair<std::string, JsonValue>>;
  using Array = std::vector<JsonValue>;

  JsonValue() = default;  // null
  JsonValue(bool b);
  JsonValue(int i);
  JsonValue(std::int64_t i);
  JsonValue(std::uint64_t i);
  JsonValue(double d);
  JsonValue(const char* s);
  JsonValue(std::string s);
  JsonValue(Object o);
  JsonValue(Array a);

  bool is_null() const { return kind_ == Kind::Null; }
  void write(std::string& out) const;
  std::string dump() const;

  static std::string escape(const std::string& s);
  static std::string render_double(double d);  // %.12g, "inf"/"nan" quoted upstream

 private:
  enum class Kind { Null, Bool, Int, Uint, Double, String, Object_, Array_ };
  Kind kind_ = Kind::Null;
  bool b_ = false;
  std::int64_t i_ = 0;
  std::uint64_t u_ = 0;
  double d_ = 0.0;
  std::string s_;
  Object o_;
  Array a_;
};

// One machine-readable result record per CLI run.  Serialized as a single
// line with the fixed key order: command, n, verdict, reason,
// distinct_queries, total_queries, seed, tolerance, elapsed_ms, details.
struct Report {
  std::string command;
  int n = 0;
  JsonValue verdict;  // bool for decisions, null otherwise
  JsonValue reason;   // string naming the rejection/acceptance basis, or null
  std::int64_t distinct_queries = 0;
  std::int64_t total_queries = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  double elapsed_ms = 0.0;
  JsonValue::Object details;

  std::string to_json() const;
};

}  // namespace erq
