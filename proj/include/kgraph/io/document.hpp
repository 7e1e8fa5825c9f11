#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgraph/error.hpp"
#include "kgraph/rules.hpp"
#include "kgraph/skeleton.hpp"

namespace kgraph {

// ---------------------------------------------------------------------------
// Instance documents.  Either a bare k-graph ("kgraph") or a pair of factors
// ("lambda", "gamma") with the mixed squares of a host on their box
// product.  Host vertices are named "(x,w)", host edges "(e,w)" for a
// lambda edge at a gamma vertex and "(x,g)" for a gamma edge at a lambda
// vertex.  Every square is written [[a, b], [c, d]] for a.b ~ c.d.

struct EdgeSpec {
  std::string id, src, dst;
  int color = 1;
};

struct SquareSpec {
  std::array<std::string, 2> lhs, rhs;
  friend bool operator<(const SquareSpec& x, const SquareSpec& y) {
    return std::tie(x.lhs, x.rhs) < std::tie(y.lhs, y.rhs);
  }
};

struct GraphSpec {
  int rank = 1;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<SquareSpec> squares;
};

struct LayerOverride {
  std::string at;
  std::vector<SquareSpec> squares;
};

struct DocumentOptions {
  std::optional<int> degree_bound;
  std::optional<std::size_t> budget;
};

struct InstanceDocument {
  int version = 1;
  std::string name;
  std::string description;
  std::optional<GraphSpec> kgraph;
  std::optional<GraphSpec> lambda, gamma;
  std::vector<SquareSpec> mixed_squares;
  std::vector<LayerOverride> lambda_layers;  // at a gamma vertex
  std::vector<LayerOverride> gamma_layers;   // at a lambda vertex
  std::optional<std::string> root;           // lambda vertex x0
  std::vector<GraphSpec> tree_factors;       // candidate polytree factors of gamma
  DocumentOptions options;

  bool is_quasi_product() const { return lambda.has_value(); }
};

constexpr int kDocumentVersion = 1;

namespace detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

[[noreturn]] inline void fail_at(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

inline void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail_at(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) fail_at(where, "unknown field '" + k + "'");
  }
}

inline const Json& need(const Json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) fail_at(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail_at(where, "expected a string");
  return j.get<std::string>();
}

inline long long get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail_at(where, "expected an integer");
  return j.get<long long>();
}

inline void check_id(const std::string& id, const std::string& where) {
  if (id.empty()) fail_at(where, "empty id");
  for (char c : id)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',')
      fail_at(where, "id '" + id + "' may not contain whitespace, parentheses or commas");
}

inline SquareSpec parse_square(const Json& j, const std::string& where) {
  auto side = [&](const Json& s, const std::string& w) {
    if (!s.is_array() || s.size() != 2) fail_at(w, "expected a pair of edge ids");
    return std::array<std::string, 2>{get_string(s[0], w + "/0"), get_string(s[1], w + "/1")};
  };
  if (!j.is_array() || j.size() != 2) fail_at(where, "a square is [[a, b], [c, d]]");
  return {side(j[0], where + "/0"), side(j[1], where + "/1")};
}

inline std::vector<SquareSpec> parse_squares(const Json& j, const std::string& where) {
  if (!j.is_array()) fail_at(where, "expected an array of squares");
  std::vector<SquareSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_square(j[i], where + "/" + std::to_string(i)));
  return out;
}

inline GraphSpec parse_graph(const Json& j, const std::string& where) {
  only_keys(j, where, {"rank", "vertices", "edges", "squares"});
  GraphSpec g;
  auto rank = get_int(need(j, where, "rank"), where + "/rank");
  if (rank < 1 || rank > 64) fail_at(where + "/rank", "rank must be between 1 and 64");
  g.rank = static_cast<int>(rank);
  const Json& vs = need(j, where, "vertices");
  if (!vs.is_array()) fail_at(where + "/vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) g.vertices.push_back(get_string(vs[i], where + "/vertices/" + std::to_string(i)));
  const Json& es = need(j, where, "edges");
  if (!es.is_array()) fail_at(where + "/edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string w = where + "/edges/" + std::to_string(i);
    only_keys(es[i], w, {"id", "src", "dst", "color"});
    EdgeSpec e;
    e.id = get_string(need(es[i], w, "id"), w + "/id");
    e.src = get_string(need(es[i], w, "src"), w + "/src");
    e.dst = get_string(need(es[i], w, "dst"), w + "/dst");
    auto c = get_int(need(es[i], w, "color"), w + "/color");
    if (c < 1 || c > g.rank) fail_at(w + "/color", "color must lie in 1.." + std::to_string(g.rank));
    e.color = static_cast<int>(c);
    g.edges.push_back(std::move(e));
  }
  if (j.contains("squares")) g.squares = parse_squares(j.at("squares"), where + "/squares");
  return g;
}

inline std::vector<LayerOverride> parse_layers(const Json& j, const std::string& where) {
  if (!j.is_array()) fail_at(where, "expected an array");
  std::vector<LayerOverride> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    only_keys(j[i], w, {"at", "squares"});
    out.push_back({get_string(need(j[i], w, "at"), w + "/at"),
                   parse_squares(need(j[i], w, "squares"), w + "/squares")});
  }
  return out;
}

// Builds the skeleton and checks ids.
inline ColoredGraph skeleton_of(const GraphSpec& s, const std::string& where) {
  ColoredGraph g(s.rank);
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    const std::string w = where + "/vertices/" + std::to_string(i);
    check_id(s.vertices[i], w);
    try {
      g.add_vertex(s.vertices[i]);
    } catch (const InputError& e) {
      fail_at(w, e.what());
    }
  }
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const EdgeSpec& e = s.edges[i];
    const std::string w = where + "/edges/" + std::to_string(i);
    check_id(e.id, w + "/id");
    auto src = g.find_vertex(e.src);
    if (!src) fail_at(w + "/src", "unknown vertex '" + e.src + "'");
    auto dst = g.find_vertex(e.dst);
    if (!dst) fail_at(w + "/dst", "unknown vertex '" + e.dst + "'");
    if (g.find_edge(e.id)) fail_at(w + "/id", "duplicate edge id '" + e.id + "'");
    if (e.color < 1 || e.color > s.rank)
      fail_at(w + "/color", "color " + std::to_string(e.color) + " outside 1.." + std::to_string(s.rank));
    g.add_edge(e.id, *src, *dst, e.color);
  }
  return g;
}

// Resolves a square against g, orients it so its key colors ascend.
inline Square resolve_square(const ColoredGraph& g, SquareSpec& s, const std::string& where) {
  auto edge = [&](const std::string& id) {
    auto e = g.find_edge(id);
    if (!e) fail_at(where, "unknown edge '" + id + "'");
    return *e;
  };
  EdgeId a = edge(s.lhs[0]), b = edge(s.lhs[1]), c = edge(s.rhs[0]), d = edge(s.rhs[1]);
  if (g.color(a) == g.color(b)) fail_at(where, "a square needs two distinct colors");
  if (g.color(a) > g.color(b)) {
    std::swap(a, c);
    std::swap(b, d);
    std::swap(s.lhs, s.rhs);
  }
  const std::string txt = s.lhs[0] + " " + s.lhs[1] + " ~ " + s.rhs[0] + " " + s.rhs[1];
  if (g.src(a) != g.dst(b)) fail_at(where, "composability error: " + s.lhs[0] + " " + s.lhs[1]);
  if (g.src(c) != g.dst(d)) fail_at(where, "composability error: " + s.rhs[0] + " " + s.rhs[1]);
  if (g.color(c) != g.color(b) || g.color(d) != g.color(a))
    fail_at(where, "colors of " + txt + " do not match");
  if (g.dst(a) != g.dst(c) || g.src(b) != g.src(d)) fail_at(where, "composability error: endpoints of " + txt + " differ");
  return {a, b, c, d};
}

inline SquareTable resolve_squares(const ColoredGraph& g, std::vector<SquareSpec>& squares,
                                   const std::string& where) {
  SquareTable t;
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    Square s = resolve_square(g, squares[i], w);
    if (t.lookup(s.a, s.b)) fail_at(w, "duplicate square for " + squares[i].lhs[0] + " " + squares[i].lhs[1]);
    t.add(s);
  }
  std::sort(squares.begin(), squares.end());
  return t;
}

inline void sort_graph(GraphSpec& g) {
  std::sort(g.vertices.begin(), g.vertices.end());
  std::sort(g.edges.begin(), g.edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  std::sort(g.squares.begin(), g.squares.end());
}

inline std::size_t line_of(const std::string& text, std::size_t byte, std::size_t* col) {
  std::size_t line = 1, c = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      c = 1;
    } else {
      ++c;
    }
  }
  if (col) *col = c;
  return line;
}

}  // namespace detail

// Checks every id, square and override against the skeletons, orients
// squares so their key colors ascend, and sorts every list by id.
inline void canonicalize(InstanceDocument& doc) {
  using namespace detail;
  if (doc.version != kDocumentVersion)
    fail_at("/version", "unsupported version " + std::to_string(doc.version));
  if (doc.kgraph.has_value() == doc.lambda.has_value())
    fail_at("/", "a document holds either 'kgraph' or 'lambda' and 'gamma'");
  if (doc.lambda.has_value() != doc.gamma.has_value()) fail_at("/", "'lambda' and 'gamma' go together");

  if (doc.kgraph) {
    if (!doc.mixed_squares.empty() || !doc.lambda_layers.empty() || !doc.gamma_layers.empty() || doc.root ||
        !doc.tree_factors.empty())
      fail_at("/", "factor fields are not allowed next to 'kgraph'");
    sort_graph(*doc.kgraph);
    auto g = skeleton_of(*doc.kgraph, "/kgraph");
    resolve_squares(g, doc.kgraph->squares, "/kgraph/squares");
    return;
  }

  sort_graph(*doc.lambda);
  sort_graph(*doc.gamma);
  auto lg = skeleton_of(*doc.lambda, "/lambda");
  auto gg = skeleton_of(*doc.gamma, "/gamma");
  resolve_squares(lg, doc.lambda->squares, "/lambda/squares");
  resolve_squares(gg, doc.gamma->squares, "/gamma/squares");

  auto layers = [&](std::vector<LayerOverride>& ls, const ColoredGraph& own, const ColoredGraph& other,
                    const std::string& where) {
    std::sort(ls.begin(), ls.end(), [](const LayerOverride& a, const LayerOverride& b) { return a.at < b.at; });
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const std::string w = where + "/" + std::to_string(i);
      if (!other.find_vertex(ls[i].at)) fail_at(w + "/at", "unknown vertex '" + ls[i].at + "'");
      if (i && ls[i].at == ls[i - 1].at) fail_at(w + "/at", "duplicate layer '" + ls[i].at + "'");
      resolve_squares(own, ls[i].squares, w + "/squares");
    }
  };
  layers(doc.lambda_layers, lg, gg, "/lambda_layers");
  layers(doc.gamma_layers, gg, lg, "/gamma_layers");

  auto host = box_product(lg, gg);
  for (std::size_t i = 0; i < doc.mixed_squares.size(); ++i) {
    const std::string w = "/mixed_squares/" + std::to_string(i);
    Square s = resolve_square(host.graph, doc.mixed_squares[i], w);
    if (host.graph.color(s.a) > lg.rank() || host.graph.color(s.b) <= lg.rank())
      fail_at(w, "a mixed square pairs a lambda edge with a gamma edge");
  }
  std::sort(doc.mixed_squares.begin(), doc.mixed_squares.end());
  for (std::size_t i = 1; i < doc.mixed_squares.size(); ++i)
    if (doc.mixed_squares[i].lhs == doc.mixed_squares[i - 1].lhs)
      fail_at("/mixed_squares", "duplicate square for " + doc.mixed_squares[i].lhs[0] + " " +
                                    doc.mixed_squares[i].lhs[1]);

  if (doc.root && !lg.find_vertex(*doc.root)) fail_at("/root", "unknown lambda vertex '" + *doc.root + "'");
  for (std::size_t i = 0; i < doc.tree_factors.size(); ++i) {
    const std::string w = "/tree_factors/" + std::to_string(i);
    auto& f = doc.tree_factors[i];
    if (f.rank != 1) fail_at(w + "/rank", "tree factors have rank 1");
    if (!f.squares.empty()) fail_at(w + "/squares", "tree factors have no squares");
    sort_graph(f);
    skeleton_of(f, w);
  }
}

inline InstanceDocument parse_document(const std::string& text) {
  using namespace detail;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t col = 0;
    std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1, &col);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  only_keys(j, "/", {"version", "name", "description", "kgraph", "lambda", "gamma", "mixed_squares",
                     "lambda_layers", "gamma_layers", "root", "tree_factors", "options"});
  InstanceDocument doc;
  doc.version = static_cast<int>(get_int(need(j, "/", "version"), "/version"));
  if (doc.version != kDocumentVersion)
    fail_at("/version", "unsupported version " + std::to_string(doc.version));
  doc.name = get_string(need(j, "/", "name"), "/name");
  if (j.contains("description")) doc.description = get_string(j.at("description"), "/description");
  if (j.contains("kgraph")) doc.kgraph = parse_graph(j.at("kgraph"), "/kgraph");
  if (j.contains("lambda")) doc.lambda = parse_graph(j.at("lambda"), "/lambda");
  if (j.contains("gamma")) doc.gamma = parse_graph(j.at("gamma"), "/gamma");
  if (j.contains("mixed_squares")) doc.mixed_squares = parse_squares(j.at("mixed_squares"), "/mixed_squares");
  if (j.contains("lambda_layers")) doc.lambda_layers = parse_layers(j.at("lambda_layers"), "/lambda_layers");
  if (j.contains("gamma_layers")) doc.gamma_layers = parse_layers(j.at("gamma_layers"), "/gamma_layers");
  if (j.contains("root")) doc.root = get_string(j.at("root"), "/root");
  if (j.contains("tree_factors")) {
    const Json& t = j.at("tree_factors");
    if (!t.is_array()) fail_at("/tree_factors", "expected an array");
    for (std::size_t i = 0; i < t.size(); ++i)
      doc.tree_factors.push_back(parse_graph(t[i], "/tree_factors/" + std::to_string(i)));
  }
  if (j.contains("options")) {
    const Json& o = j.at("options");
    only_keys(o, "/options", {"degree_bound", "budget"});
    if (o.contains("degree_bound")) {
      auto b = get_int(o.at("degree_bound"), "/options/degree_bound");
      if (b < 1 || b > 16) fail_at("/options/degree_bound", "must lie in 1..16");
      doc.options.degree_bound = static_cast<int>(b);
    }
    if (o.contains("budget")) {
      auto b = get_int(o.at("budget"), "/options/budget");
      if (b < 1) fail_at("/options/budget", "must be positive");
      doc.options.budget = static_cast<std::size_t>(b);
    }
  }
  canonicalize(doc);
  return doc;
}

namespace detail {

inline OrderedJson squares_json(const std::vector<SquareSpec>& ss) {
  OrderedJson a = OrderedJson::array();
  for (const auto& s : ss) {
    OrderedJson l = OrderedJson::array({s.lhs[0], s.lhs[1]});
    OrderedJson r = OrderedJson::array({s.rhs[0], s.rhs[1]});
    a.push_back(OrderedJson::array({l, r}));
  }
  return a;
}

inline OrderedJson graph_json(const GraphSpec& g) {
  OrderedJson o;
  o["rank"] = g.rank;
  o["vertices"] = g.vertices;
  OrderedJson es = OrderedJson::array();
  for (const auto& e : g.edges) {
    OrderedJson x;
    x["id"] = e.id;
    x["src"] = e.src;
    x["dst"] = e.dst;
    x["color"] = e.color;
    es.push_back(x);
  }
  o["edges"] = es;
  o["squares"] = squares_json(g.squares);
  return o;
}

// Pretty printer that keeps short values on one line.
inline void emit(const OrderedJson& j, std::string& out, int indent) {
  const std::string flat = j.dump(-1, ' ', false);
  if ((!j.is_object() && !j.is_array()) || j.empty() || flat.size() + static_cast<std::size_t>(indent) <= 96) {
    out += flat;
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  out += j.is_object() ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (j.is_object()) out += OrderedJson(it.key()).dump() + ": ";
    emit(*it, out, indent + 2);
  }
  out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + (j.is_object() ? "}" : "]");
}

}  // namespace detail

inline nlohmann::ordered_json document_json(const InstanceDocument& doc) {
  using namespace detail;
  OrderedJson o;
  o["version"] = doc.version;
  o["name"] = doc.name;
  if (!doc.description.empty()) o["description"] = doc.description;
  if (doc.kgraph) o["kgraph"] = graph_json(*doc.kgraph);
  if (doc.lambda) o["lambda"] = graph_json(*doc.lambda);
  if (doc.gamma) o["gamma"] = graph_json(*doc.gamma);
  if (doc.lambda) o["mixed_squares"] = squares_json(doc.mixed_squares);
  auto layers = [](const std::vector<LayerOverride>& ls) {
    OrderedJson a = OrderedJson::array();
    for (const auto& l : ls) {
      OrderedJson x;
      x["at"] = l.at;
      x["squares"] = squares_json(l.squares);
      a.push_back(x);
    }
    return a;
  };
  if (!doc.lambda_layers.empty()) o["lambda_layers"] = layers(doc.lambda_layers);
  if (!doc.gamma_layers.empty()) o["gamma_layers"] = layers(doc.gamma_layers);
  if (doc.root) o["root"] = *doc.root;
  if (!doc.tree_factors.empty()) {
    OrderedJson a = OrderedJson::array();
    for (const auto& f : doc.tree_factors) a.push_back(graph_json(f));
    o["tree_factors"] = a;
  }
  if (doc.options.degree_bound || doc.options.budget) {
    OrderedJson x = OrderedJson::object();
    if (doc.options.degree_bound) x["degree_bound"] = *doc.options.degree_bound;
    if (doc.options.budget) x["budget"] = *doc.options.budget;
    o["options"] = x;
  }
  return o;
}

inline std::string pretty_json(const nlohmann::ordered_json& j) {
  std::string out;
  detail::emit(j, out, 0);
  out += "\n";
  return out;
}

// Canonical text: sorted lists, fixed key order, so that
// serialize(parse(serialize(d))) == serialize(d).
inline std::string serialize_document(InstanceDocument doc) {
  canonicalize(doc);
  return pretty_json(document_json(doc));
}

// ---------------------------------------------------------------------------
// From documents to rules.  The rules are returned unvalidated so that a
// caller can report a failing cube condition.

inline ColoredGraph build_skeleton(const GraphSpec& s) { return detail::skeleton_of(s, "/"); }

inline RuleSet build_rule(const GraphSpec& s) {
  RuleSet r{build_skeleton(s), {}};
  auto squares = s.squares;
  r.squares = detail::resolve_squares(r.graph, squares, "/squares");
  return r;
}

struct BuiltInstance {
  RuleSet lambda, gamma, host;
  BoxEmbedding embedding;
  std::optional<VertexId> root;
  std::vector<ColoredGraph> tree_factors;
};

inline BuiltInstance build_instance(const InstanceDocument& doc) {
  if (!doc.is_quasi_product()) throw PreconditionError("document has no factors");
  BuiltInstance b{build_rule(*doc.lambda), build_rule(*doc.gamma), {}, {}, {}, {}};
  auto bp = box_product(b.lambda.graph, b.gamma.graph);
  b.embedding = bp.embedding;
  b.host.graph = std::move(bp.graph);
  const auto& m = b.embedding;
  const ColoredGraph& lg = b.lambda.graph;
  const ColoredGraph& gg = b.gamma.graph;

  std::map<VertexId, SquareTable> lambda_over, gamma_over;
  for (const auto& l : doc.lambda_layers) {
    auto sq = l.squares;
    lambda_over[*gg.find_vertex(l.at)] = detail::resolve_squares(lg, sq, "/lambda_layers");
  }
  for (const auto& l : doc.gamma_layers) {
    auto sq = l.squares;
    gamma_over[*lg.find_vertex(l.at)] = detail::resolve_squares(gg, sq, "/gamma_layers");
  }
  for (VertexId w = 0; w < gg.vertex_count(); ++w) {
    const SquareTable& t = lambda_over.count(w) ? lambda_over[w] : b.lambda.squares;
    for (const Square& s : t.squares())
      b.host.squares.add(m.host_lhs_edge(s.a, w), m.host_lhs_edge(s.b, w), m.host_lhs_edge(s.c, w),
                         m.host_lhs_edge(s.d, w));
  }
  for (VertexId x = 0; x < lg.vertex_count(); ++x) {
    const SquareTable& t = gamma_over.count(x) ? gamma_over[x] : b.gamma.squares;
    for (const Square& s : t.squares())
      b.host.squares.add(m.host_rhs_edge(x, s.a), m.host_rhs_edge(x, s.b), m.host_rhs_edge(x, s.c),
                         m.host_rhs_edge(x, s.d));
  }
  auto mixed = doc.mixed_squares;
  for (std::size_t i = 0; i < mixed.size(); ++i)
    b.host.squares.add(detail::resolve_square(b.host.graph, mixed[i], "/mixed_squares/" + std::to_string(i)));
  if (doc.root) b.root = lg.find_vertex(*doc.root);
  for (const auto& f : doc.tree_factors) b.tree_factors.push_back(build_skeleton(f));
  return b;
}

// Inverse of build_instance for a host on the box product of the factors:
// writes factors, mixed squares and any layer that differs from its factor.
inline InstanceDocument instance_document(const std::string& name, const RuleSet& lambda, const RuleSet& gamma,
                                          const RuleSet& host, const BoxEmbedding& m) {
  auto graph_spec = [](const RuleSet& r) {
    GraphSpec g;
    g.rank = r.graph.rank();
    g.vertices = r.graph.vertex_names();
    for (const Edge& e : r.graph.edges())
      g.edges.push_back({e.name, r.graph.vertex_name(e.src), r.graph.vertex_name(e.dst), e.color});
    for (const Square& s : r.squares.squares())
      g.squares.push_back({{r.graph.edge(s.a).name, r.graph.edge(s.b).name},
                           {r.graph.edge(s.c).name, r.graph.edge(s.d).name}});
    return g;
  };
  InstanceDocument doc;
  doc.name = name;
  doc.lambda = graph_spec(lambda);
  doc.gamma = graph_spec(gamma);
  const ColoredGraph& hg = host.graph;
  const ColoredGraph& lg = lambda.graph;
  const ColoredGraph& gg = gamma.graph;
  std::vector<SquareTable> lt(gg.vertex_count()), gt(lg.vertex_count());
  for (const Square& s : host.squares.squares()) {
    const auto& oa = m.edge_origin[s.a];
    const auto& ob = m.edge_origin[s.b];
    if (oa.from_lhs && !ob.from_lhs) {
      doc.mixed_squares.push_back({{hg.edge(s.a).name, hg.edge(s.b).name}, {hg.edge(s.c).name, hg.edge(s.d).name}});
      continue;
    }
    auto f = [&](EdgeId e) { return m.edge_origin[e].factor_edge; };
    (oa.from_lhs ? lt : gt)[oa.other].add(f(s.a), f(s.b), f(s.c), f(s.d));
  }
  for (VertexId w = 0; w < gg.vertex_count(); ++w)
    if (!(lt[w] == lambda.squares)) {
      LayerOverride l{gg.vertex_name(w), {}};
      for (const Square& s : lt[w].squares())
        l.squares.push_back({{lg.edge(s.a).name, lg.edge(s.b).name}, {lg.edge(s.c).name, lg.edge(s.d).name}});
      doc.lambda_layers.push_back(std::move(l));
    }
  for (VertexId x = 0; x < lg.vertex_count(); ++x)
    if (!(gt[x] == gamma.squares)) {
      LayerOverride l{lg.vertex_name(x), {}};
      for (const Square& s : gt[x].squares())
        l.squares.push_back({{gg.edge(s.a).name, gg.edge(s.b).name}, {gg.edge(s.c).name, gg.edge(s.d).name}});
      doc.gamma_layers.push_back(std::move(l));
    }
  canonicalize(doc);
  return doc;
}

}  // namespace kgraph
