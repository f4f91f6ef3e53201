#include "cpack/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <json.hpp>

#include "cpack/error.hpp"

namespace cpack::io {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string pointer_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::parse, (path.empty() ? std::string("/") : path) + ": " + message);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail("", std::string("malformed JSON: ") + e.what());
  }
}

const std::string& as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "number is not finite");
  return v;
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(path + "/" + pointer_token(key), "unknown field");
    }
  }
}

std::string number_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string number_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string edge_key(const std::string& a, const std::string& b) {
  return a < b ? a + ":" + b : b + ":" + a;
}

GraphDocument read_graph(std::string_view text) {
  const json root = parse_json(text);
  if (!root.is_object()) fail("", "expected an object");
  only_keys(root, "", {"vertices", "rotation", "boundary", "boundary_radii", "angles_deg", "outer"});
  GraphDocument doc;

  if (!root.contains("vertices")) fail("/vertices", "missing field");
  const json& verts = root.at("vertices");
  if (!verts.is_array()) fail("/vertices", "expected an array");
  std::set<std::string> known;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string path = "/vertices/" + std::to_string(i);
    const std::string& id = as_string(verts[i], path);
    if (id.empty()) fail(path, "empty vertex id");
    if (id.find(':') != std::string::npos) fail(path, "vertex id may not contain ':'");
    if (!known.insert(id).second) fail(path, "duplicate vertex id '" + id + "'");
    doc.vertices.push_back(id);
  }

  if (!root.contains("rotation")) fail("/rotation", "missing field");
  const json& rot = root.at("rotation");
  if (!rot.is_object()) fail("/rotation", "expected an object");
  for (const auto& [key, list] : rot.items()) {
    const std::string path = "/rotation/" + pointer_token(key);
    if (!known.contains(key)) fail(path, "'" + key + "' is not a vertex");
    if (!list.is_array()) fail(path, "expected an array");
    auto& out = doc.rotation[key];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string& nb = as_string(list[i], path + "/" + std::to_string(i));
      if (!known.contains(nb)) fail(path + "/" + std::to_string(i), "'" + nb + "' is not a vertex");
      out.push_back(nb);
    }
  }
  for (const auto& v : doc.vertices) {
    if (!doc.rotation.contains(v)) fail("/rotation/" + pointer_token(v), "missing rotation for vertex '" + v + "'");
  }
  for (const auto& [v, list] : doc.rotation) {
    for (const auto& w : list) {
      if (w == v) continue;
      const auto& back = doc.rotation.at(w);
      if (std::count(list.begin(), list.end(), w) != std::count(back.begin(), back.end(), v)) {
        fail("/rotation/" + pointer_token(v), "'" + w + "' is listed but '" + w + "' does not list '" + v +
                                                  "' the same number of times");
      }
    }
  }

  if (root.contains("boundary")) {
    const json& b = root.at("boundary");
    if (!b.is_array()) fail("/boundary", "expected an array");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string path = "/boundary/" + std::to_string(i);
      const std::string& id = as_string(b[i], path);
      if (!known.contains(id)) fail(path, "'" + id + "' is not a vertex");
      if (!seen.insert(id).second) fail(path, "'" + id + "' listed twice");
      doc.boundary.push_back(id);
    }
  }

  if (root.contains("boundary_radii")) {
    const json& br = root.at("boundary_radii");
    if (!br.is_object()) fail("/boundary_radii", "expected an object");
    for (const auto& [key, value] : br.items()) {
      const std::string path = "/boundary_radii/" + pointer_token(key);
      if (!known.contains(key)) fail(path, "'" + key + "' is not a vertex");
      const double r = as_number(value, path);
      if (!(r > 0.0)) fail(path, "radius must be positive");
      doc.boundary_radii[key] = r;
    }
  }

  if (root.contains("angles_deg")) {
    const json& ad = root.at("angles_deg");
    if (!ad.is_object()) fail("/angles_deg", "expected an object");
    for (const auto& [key, value] : ad.items()) {
      const std::string path = "/angles_deg/" + pointer_token(key);
      const auto colon = key.find(':');
      if (colon == std::string::npos) fail(path, "edge key must look like 'i:j'");
      const std::string a = key.substr(0, colon), b = key.substr(colon + 1);
      if (!known.contains(a) || !known.contains(b)) fail(path, "key '" + key + "' names an unknown vertex");
      if (!(a < b)) fail(path, "key '" + key + "' must list its ids in sorted order");
      const auto& ra = doc.rotation.at(a);
      if (std::find(ra.begin(), ra.end(), b) == ra.end()) fail(path, "key '" + key + "' is not an edge");
      const double deg = as_number(value, path);
      if (deg < 0.0 || deg >= 180.0) fail(path, "angle must lie in [0, 180)");
      doc.angles_deg[key] = deg;
    }
  }

  if (root.contains("outer")) {
    const json& o = root.at("outer");
    if (!o.is_array() || o.size() != 2) fail("/outer", "expected [tail, head]");
    const std::string& t = as_string(o[0], "/outer/0");
    const std::string& h = as_string(o[1], "/outer/1");
    if (!known.contains(t)) fail("/outer/0", "'" + t + "' is not a vertex");
    if (!known.contains(h)) fail("/outer/1", "'" + h + "' is not a vertex");
    const auto& rt = doc.rotation.at(t);
    if (std::find(rt.begin(), rt.end(), h) == rt.end()) fail("/outer", "outer dart is not an edge");
    doc.outer = std::make_pair(t, h);
  }
  return doc;
}

std::string write_graph(const GraphDocument& doc) {
  ordered_json root;
  root["vertices"] = doc.vertices;
  ordered_json rot = ordered_json::object();
  for (const auto& v : doc.vertices) rot[v] = doc.rotation.count(v) ? doc.rotation.at(v) : std::vector<std::string>{};
  root["rotation"] = rot;
  root["boundary"] = doc.boundary;
  ordered_json br = ordered_json::object();
  for (const auto& [k, v] : doc.boundary_radii) br[k] = v;
  root["boundary_radii"] = br;
  ordered_json ad = ordered_json::object();
  for (const auto& [k, v] : doc.angles_deg) ad[k] = v;
  root["angles_deg"] = ad;
  if (doc.outer) root["outer"] = {doc.outer->first, doc.outer->second};
  return root.dump(2) + "\n";
}

Graph to_graph(const GraphDocument& doc) {
  Graph g;
  g.vertices = doc.vertices;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < doc.vertices.size(); ++i) index[doc.vertices[i]] = i;
  for (std::size_t u = 0; u < doc.vertices.size(); ++u) {
    for (const auto& w : doc.rotation.at(doc.vertices[u])) {
      const std::size_t v = index.at(w);
      if (v >= u) g.edges.push_back({u, v});
    }
  }
  return g;
}

LabeledContactGraph to_labeled_graph(const GraphDocument& doc) {
  Graph g = to_graph(doc);
  std::vector<Angle> labels;
  labels.reserve(g.edges.size());
  for (const Edge& e : g.edges) {
    auto it = doc.angles_deg.find(edge_key(g.vertices[e.u], g.vertices[e.v]));
    labels.push_back(it == doc.angles_deg.end() ? Angle(0.0) : Angle::degrees(it->second));
  }
  return LabeledContactGraph{std::move(g), std::move(labels)};
}

EmbeddedGraph to_embedding(const GraphDocument& doc) {
  Graph g = to_graph(doc);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < doc.vertices.size(); ++i) index[doc.vertices[i]] = i;
  std::vector<std::vector<std::size_t>> rotation(doc.vertices.size());
  for (std::size_t v = 0; v < doc.vertices.size(); ++v) {
    for (const auto& w : doc.rotation.at(doc.vertices[v])) rotation[v].push_back(index.at(w));
  }
  std::vector<std::size_t> boundary;
  for (const auto& b : doc.boundary) boundary.push_back(index.at(b));
  std::optional<Dart> outer;
  if (doc.outer) outer = Dart{index.at(doc.outer->first), index.at(doc.outer->second)};
  return EmbeddedGraph(std::move(g), std::move(rotation), std::move(boundary), outer);
}

LayoutProblem to_layout_problem(const GraphDocument& doc, double tol, long max_iter) {
  EmbeddedGraph eg = to_embedding(doc);
  std::vector<double> radii(doc.vertices.size(), 0.0);
  for (const auto& b : doc.boundary) {
    auto it = doc.boundary_radii.find(b);
    if (it == doc.boundary_radii.end()) {
      fail("/boundary_radii/" + pointer_token(b), "boundary vertex '" + b + "' has no radius");
    }
    radii[eg.graph().index_of(b)] = it->second;
  }
  const LabeledContactGraph lg = to_labeled_graph(doc);
  return LayoutProblem(std::move(eg), std::move(radii), lg.labels, tol, max_iter);
}

GraphDocument graph_document(const EmbeddedGraph& eg, const std::vector<Angle>& labels,
                             const std::vector<double>& boundary_radii) {
  const Graph& g = eg.graph();
  GraphDocument doc;
  doc.vertices = g.vertices;
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto& out = doc.rotation[g.vertices[v]];
    for (std::size_t w : eg.rotation()[v]) out.push_back(g.vertices[w]);
  }
  for (std::size_t b : eg.boundary()) {
    doc.boundary.push_back(g.vertices[b]);
    if (!boundary_radii.empty()) doc.boundary_radii[g.vertices[b]] = boundary_radii[b];
  }
  for (std::size_t e = 0; e < labels.size(); ++e) {
    doc.angles_deg[edge_key(g.vertices[g.edges[e].u], g.vertices[g.edges[e].v])] = labels[e].degrees();
  }
  if (eg.outer()) doc.outer = std::make_pair(g.vertices[eg.outer()->tail], g.vertices[eg.outer()->head]);
  return doc;
}

GraphDocument graph_document(const LayoutProblem& problem) {
  return graph_document(problem.embedding(), problem.labels(), problem.boundary_radii());
}

GraphDocument graph_document(const DiskSet& ds, const LabeledContactGraph& lg) {
  const Graph& g = lg.graph;
  GraphDocument doc;
  doc.vertices = g.vertices;
  std::vector<std::vector<std::size_t>> nb(g.size());
  for (const Edge& e : g.edges) {
    nb[e.u].push_back(e.v);
    nb[e.v].push_back(e.u);
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    const Point c = ds[*ds.find(g.vertices[v])].center;
    auto direction = [&](std::size_t w) {
      const Point d = ds[*ds.find(g.vertices[w])].center - c;
      return std::atan2(d.y, d.x);
    };
    std::stable_sort(nb[v].begin(), nb[v].end(),
                     [&](std::size_t a, std::size_t b) { return direction(a) < direction(b); });
    auto& out = doc.rotation[g.vertices[v]];
    for (std::size_t w : nb[v]) out.push_back(g.vertices[w]);
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    doc.angles_deg[edge_key(g.vertices[g.edges[e].u], g.vertices[g.edges[e].v])] = lg.labels[e].degrees();
  }
  return doc;
}

DiskSet read_disks(std::string_view text) {
  const json root = parse_json(text);
  if (!root.is_array()) fail("", "expected an array of disk records");
  std::vector<Disk> disks;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::string path = "/" + std::to_string(i);
    const json& rec = root[i];
    if (!rec.is_object()) fail(path, "expected an object");
    only_keys(rec, path, {"id", "x", "y", "r"});
    for (const char* key : {"id", "x", "y", "r"}) {
      if (!rec.contains(key)) fail(path + "/" + key, "missing field");
    }
    Disk d;
    d.id = as_string(rec.at("id"), path + "/id");
    if (d.id.empty()) fail(path + "/id", "empty id");
    if (!seen.insert(d.id).second) fail(path + "/id", "duplicate id '" + d.id + "'");
    d.center.x = as_number(rec.at("x"), path + "/x");
    d.center.y = as_number(rec.at("y"), path + "/y");
    d.r = as_number(rec.at("r"), path + "/r");
    if (!(d.r > 0.0)) fail(path + "/r", "radius must be positive");
    disks.push_back(std::move(d));
  }
  return DiskSet(std::move(disks));
}

std::string write_disks(const DiskSet& ds) {
  std::string out = "[";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Disk& d = ds[i];
    out += i == 0 ? "\n" : ",\n";
    out += "  {\"id\": " + json(d.id).dump() + ", \"x\": " + number_17(d.center.x) +
           ", \"y\": " + number_17(d.center.y) + ", \"r\": " + number_17(d.r) + "}";
  }
  out += ds.empty() ? "]\n" : "\n]\n";
  return out;
}

std::map<std::string, std::string> read_correspondence(std::string_view text) {
  const json root = parse_json(text);
  if (!root.is_object()) fail("", "expected an object mapping ids to ids");
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : root.items()) {
    out[key] = as_string(value, "/" + pointer_token(key));
  }
  return out;
}

std::string render_svg(const DiskSet& ds, const LabeledContactGraph* overlay, const SvgOptions& options) {
  // SVG y grows downward; flip so the figure reads in the usual orientation.
  double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
  if (!ds.empty()) {
    min_x = min_y = std::numeric_limits<double>::infinity();
    max_x = max_y = -std::numeric_limits<double>::infinity();
    for (const Disk& d : ds.disks()) {
      min_x = std::min(min_x, d.center.x - d.r);
      max_x = std::max(max_x, d.center.x + d.r);
      min_y = std::min(min_y, -d.center.y - d.r);
      max_y = std::max(max_y, -d.center.y + d.r);
    }
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  const double margin = 0.05 * extent;
  const double vx = min_x - margin, vy = min_y - margin;
  const double vw = max_x - min_x + 2 * margin, vh = max_y - min_y + 2 * margin;
  const double px = options.pixel_size / std::max(vw, vh);
  const double stroke = 0.004 * extent;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + number_short(vw * px) +
       "\" height=\"" + number_short(vh * px) + "\" viewBox=\"" + number_short(vx) + " " + number_short(vy) +
       " " + number_short(vw) + " " + number_short(vh) + "\">\n";
  s += "  <g class=\"disks\" fill=\"" + xml_escape(options.fill.value_or("none")) +
       "\" stroke=\"black\" stroke-width=\"" + number_short(stroke) + "\">\n";
  for (const Disk& d : ds.disks()) {
    s += "    <circle class=\"disk\" cx=\"" + number_short(d.center.x) + "\" cy=\"" + number_short(-d.center.y) +
         "\" r=\"" + number_short(d.r) + "\"><title>" + xml_escape(d.id) + "</title></circle>\n";
  }
  s += "  </g>\n";
  if (overlay) {
    std::vector<std::size_t> at(overlay->graph.size());
    for (std::size_t v = 0; v < overlay->graph.size(); ++v) {
      auto idx = ds.find(overlay->graph.vertices[v]);
      if (!idx) throw Error(ErrorKind::invalid_input, "overlay vertex '" + overlay->graph.vertices[v] + "' has no disk");
      at[v] = *idx;
    }
    s += "  <g class=\"contact-graph\" stroke=\"black\" stroke-width=\"" + number_short(stroke) +
         "\" stroke-dasharray=\"" + number_short(4 * stroke) + " " + number_short(3 * stroke) + "\">\n";
    for (const Edge& e : overlay->graph.edges) {
      const Point a = ds[at[e.u]].center, b = ds[at[e.v]].center;
      s += "    <line class=\"edge\" x1=\"" + number_short(a.x) + "\" y1=\"" + number_short(-a.y) + "\" x2=\"" +
           number_short(b.x) + "\" y2=\"" + number_short(-b.y) + "\"/>\n";
    }
    s += "  </g>\n  <g class=\"centers\" fill=\"black\" stroke=\"none\">\n";
    for (std::size_t v = 0; v < overlay->graph.size(); ++v) {
      const Point c = ds[at[v]].center;
      s += "    <circle class=\"dot\" cx=\"" + number_short(c.x) + "\" cy=\"" + number_short(-c.y) + "\" r=\"" +
           number_short(3 * stroke) + "\"/>\n";
    }
    s += "  </g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace cpack::io
