#include "nonnoether/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace nonnoether {

namespace {

void indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

void write(std::ostream& out, const nlohmann::ordered_json& v, int depth) {
  using value_t = nlohmann::ordered_json::value_t;
  switch (v.type()) {
    case value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        indent(out, depth + 1);
        out << nlohmann::ordered_json(it.key()).dump() << ": ";
        write(out, it.value(), depth + 1);
      }
      out << '\n';
      indent(out, depth);
      out << '}';
      return;
    }
    case value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        indent(out, depth + 1);
        write(out, v[i], depth + 1);
      }
      out << '\n';
      indent(out, depth);
      out << ']';
      return;
    }
    case value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out << buf;
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const nlohmann::ordered_json& value) {
  write(out, value, 0);
  out << '\n';
}

std::string to_json_text(const nlohmann::ordered_json& value) {
  std::ostringstream os;
  write_json(os, value);
  return os.str();
}

}  // namespace nonnoether
