#include "erq/report.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace erq {

JsonValue::JsonValue(bool b) : kind_(Kind::Bool), b_(b) {}
JsonValue::JsonValue(int i) : kind_(Kind::Int), i_(i) {}
JsonValue::JsonValue(std::int64_t i) : kind_(Kind::Int), i_(i) {}
JsonValue::JsonValue(std::uint64_t i) : kind_(Kind::Uint), u_(i) {}
JsonValue::JsonValue(double d) : kind_(Kind::Double), d_(d) {}
JsonValue::JsonValue(const char* s) : kind_(Kind::String), s_(s) {}
JsonValue::JsonValue(std::string s) : kind_(Kind::String), s_(std::move(s)) {}
JsonValue::JsonValue(Object o) : kind_(Kind::Object_), o_(std::move(o)) {}
JsonValue::JsonValue(Array a) : kind_(Kind::Array_), a_(std::move(a)) {}

std::string JsonValue::escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string JsonValue::render_double(double d) {
  if (!std::isfinite(d)) return d > 0 ? "\"inf\"" : (d < 0 ? "\"-inf\"" : "\"nan\"");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", d);
  return buf;
}

void JsonValue::write(std::string& out) const {
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += b_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(i_); break;
    case Kind::Uint: out += std::to_string(u_); break;
    case Kind::Double: out += render_double(d_); break;
    case Kind::String:
      out += '"';
      out += escape(s_);
      out += '"';
      break;
    case Kind::Object_: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : o_) {
        if (!first) out += ',';
        first = false;
        out += '"';
        out += escape(k);
        out += "\":";
        v.write(out);
      }
      out += '}';
      break;
    }
    case Kind::Array_: {
      out += '[';
      bool first = true;
      for (const JsonValue& v : a_) {
        if (!first) out += ',';
        first = false;
        v.write(out);
      }
      out += ']';
      break;
    }
  }
}

std::string JsonValue::dump() const {
  std::string out;
  write(out);
  return out;
}

std::string Report::to_json() const {
  JsonValue::Object record;
  record.emplace_back("command", JsonValue(command));
  record.emplace_back("n", JsonValue(n));
  record.emplace_back("verdict", verdict);
  record.emplace_back("reason", reason);
  record.emplace_back("distinct_queries", JsonValue(distinct_queries));
  record.emplace_back("total_queries", JsonValue(total_queries));
  record.emplace_back("seed", JsonValue(seed));
  record.emplace_back("tolerance", JsonValue(tolerance));
  record.emplace_back("elapsed_ms", JsonValue(elapsed_ms));
  record.emplace_back("details", JsonValue(details));
  return JsonValue(std::move(record)).dump();
}

}  // namespace erq
