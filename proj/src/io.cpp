#include "polybranch/io.hpp"

#include <cstdio>

#include <json.hpp>

#include "polybranch/errors.hpp"

namespace polybranch {

namespace {

void append_pairs(std::string& out, const std::vector<Arc>& arcs) {
  out += '[';
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i) out += ',';
    out += '[';
    out += std::to_string(arcs[i].tail);
    out += ',';
    out += std::to_string(arcs[i].head);
    out += ']';
  }
  out += ']';
}

std::string quoted(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string network_json(const ArcSet& arcs, double score,
                         const std::vector<Arc>& deletion_set) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", score);
  std::string out = "{\"arcs\":";
  append_pairs(out, arcs.arcs());
  out += ",\"score\":";
  out += buf;
  out += ",\"deletion_set\":";
  append_pairs(out, deletion_set);
  out += "}\n";
  return out;
}

ArcSet network_arcs_from_json(int node_count, std::string_view text) {
  nlohmann::json parsed = nlohmann::json::parse(text, nullptr, false);
  if (parsed.is_discarded()) throw ParseError("malformed network JSON");
  if (!parsed.is_object() || !parsed.contains("arcs") ||
      !parsed["arcs"].is_array())
    throw ParseError("network JSON must be an object with an \"arcs\" array");
  std::vector<Arc> arcs;
  for (const auto& pair : parsed["arcs"]) {
    if (!pair.is_array() || pair.size() != 2 ||
        !pair[0].is_number_integer() || !pair[1].is_number_integer())
      throw ParseError("every arc must be a [tail, head] integer pair");
    const long long t = pair[0].get<long long>();
    const long long h = pair[1].get<long long>();
    if (t < 0 || t >= node_count || h < 0 || h >= node_count)
      throw ParseError("arc endpoint out of range: [" + std::to_string(t) +
                       "," + std::to_string(h) + "]");
    if (t == h)
      throw ParseError("self-loop arc: [" + std::to_string(t) + "," +
                       std::to_string(h) + "]");
    arcs.push_back({static_cast<int>(t), static_cast<int>(h)});
  }
  return ArcSet(node_count, std::move(arcs));
}

std::string to_dot(const Instance& instance, const ArcSet& arcs) {
  std::string out = "digraph network {\n";
  for (int v = 0; v < instance.node_count(); ++v) {
    out += "  ";
    out += quoted(instance.name(v));
    out += ";\n";
  }
  for (const Arc& a : arcs.arcs()) {
    out += "  ";
    out += quoted(instance.name(a.tail));
    out += " -> ";
    out += quoted(instance.name(a.head));
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace polybranch
