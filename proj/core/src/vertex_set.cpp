#include "csf/vertex_set.hpp"

#include <charconv>

#include "csf/error.hpp"

namespace csf {

std::string VertexSet::to_string() const {
  std::string out;
  for (int v : *this) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

VertexSet VertexSet::parse(const std::string& text) {
  VertexSet s;
  if (text.empty()) return s;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    int v = -1;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || v < 0 || v >= kMaxVertices) {
      throw FormatError("bad vertex set '" + text + "'");
    }
    if (s.contains(v)) throw FormatError("repeated vertex in set '" + text + "'");
    s.insert(v);
    p = next;
    if (p < end) {
      if (*p != ',') throw FormatError("bad vertex set '" + text + "'");
      ++p;
      if (p == end) throw FormatError("trailing comma in '" + text + "'");
    }
  }
  return s;
}

}  // namespace csf
