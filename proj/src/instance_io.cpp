#include "mstu/instance_io.hpp"

#include <stdexcept>

#include "json.hpp"

namespace mstu {

namespace {

using OrderedJson = nlohmann::ordered_json;

void require_fields(const OrderedJson& object, std::initializer_list<const char*> fields) {
  for (const char* field : fields) {
    if (!object.contains(field)) {
      throw std::invalid_argument(std::string("missing field '") + field + "'");
    }
  }
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* field : fields) {
      known = known || item.key() == field;
    }
    if (!known) {
      throw std::invalid_argument("unknown field '" + item.key() + "'");
    }
  }
}

OrderedJson rational_to_json(const Rational& value) {
  if (denominator(value) == 1 && numerator(value) >= std::numeric_limits<std::int64_t>::min() &&
      numerator(value) <= std::numeric_limits<std::int64_t>::max()) {
    return OrderedJson(static_cast<std::int64_t>(numerator(value)));
  }
  return OrderedJson(rational_to_string(value));
}

Rational rational_from_json(const OrderedJson& value) {
  if (value.is_number_integer()) {
    return Rational(value.get<std::int64_t>());
  }
  if (value.is_string()) {
    return rational_from_string(value.get<std::string>());
  }
  throw std::invalid_argument("rational must be an integer or a \"p/q\" string");
}

OrderedJson edges_to_json(const std::vector<Edge>& edges) {
  OrderedJson list = OrderedJson::array();
  for (const Edge& e : edges) {
    list.push_back({e.u, e.v});
  }
  return list;
}

std::vector<Edge> edges_from_json(const OrderedJson& list) {
  std::vector<Edge> edges;
  for (const auto& pair : list) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("edge must be a [u, v] pair");
    }
    edges.push_back({pair[0].get<VertexId>(), pair[1].get<VertexId>()});
  }
  return edges;
}

}  // namespace

std::string edge_instance_to_json(const EdgeEnvironment& env) {
  const EdgeInstanceView& view = env.view();
  OrderedJson out;
  out["kind"] = "edge";
  out["n"] = view.vertex_count;
  out["edges"] = edges_to_json(view.edges);
  OrderedJson sets = OrderedJson::array();
  for (const UncertaintySet& set : view.sets) {
    OrderedJson entry;
    if (set.trivial()) {
      entry["type"] = "singleton";
      entry["value"] = rational_to_json(set.lower());
    } else {
      entry["type"] = "open";
      entry["lo"] = rational_to_json(set.lower());
      entry["hi"] = rational_to_json(set.upper());
    }
    sets.push_back(entry);
  }
  out["sets"] = sets;
  OrderedJson costs = OrderedJson::array();
  for (const Rational& q : view.costs) costs.push_back(rational_to_json(q));
  out["costs"] = costs;
  OrderedJson weights = OrderedJson::array();
  for (const Rational& w : env.true_weights()) weights.push_back(rational_to_json(w));
  out["weights"] = weights;
  return out.dump();
}

EdgeEnvironment edge_instance_from_json(const std::string& text, QueryPolicy policy) {
  const OrderedJson in = OrderedJson::parse(text);
  require_fields(in, {"kind", "n", "edges", "sets", "costs", "weights"});
  if (in["kind"] != "edge") {
    throw std::invalid_argument("expected kind \"edge\"");
  }
  EdgeInstanceView view;
  view.vertex_count = in["n"].get<std::size_t>();
  view.edges = edges_from_json(in["edges"]);
  for (const auto& entry : in["sets"]) {
    if (!entry.contains("type")) {
      throw std::invalid_argument("uncertainty set without a type");
    }
    const std::string type = entry["type"].get<std::string>();
    if (type == "singleton") {
      require_fields(entry, {"type", "value"});
      view.sets.push_back(UncertaintySet::singleton(rational_from_json(entry["value"])));
    } else if (type == "open") {
      require_fields(entry, {"type", "lo", "hi"});
      view.sets.push_back(
          UncertaintySet::open(rational_from_json(entry["lo"]), rational_from_json(entry["hi"])));
    } else {
      throw std::invalid_argument("unknown set type '" + type + "'");
    }
  }
  for (const auto& q : in["costs"]) view.costs.push_back(rational_from_json(q));
  std::vector<Rational> weights;
  for (const auto& w : in["weights"]) weights.push_back(rational_from_json(w));
  return EdgeEnvironment(std::move(view), std::move(weights), policy);
}

std::string vertex_instance_to_json(const VertexEnvironment& env) {
  const VertexInstanceView& view = env.view();
  OrderedJson out;
  out["kind"] = "vertex";
  out["n"] = view.vertex_count;
  out["edges"] = edges_to_json(view.edges);
  OrderedJson regions = OrderedJson::array();
  for (const VertexRegion& region : view.regions) {
    OrderedJson entry;
    if (region.trivial()) {
      entry["type"] = "point";
      entry["x"] = region.center().x;
      entry["y"] = region.center().y;
    } else {
      entry["type"] = "disk";
      entry["x"] = region.center().x;
      entry["y"] = region.center().y;
      entry["r"] = region.radius();
    }
    regions.push_back(entry);
  }
  out["regions"] = regions;
  out["costs"] = view.costs;
  OrderedJson locations = OrderedJson::array();
  for (const Point& p : env.true_locations()) {
    locations.push_back({p.x, p.y});
  }
  out["locations"] = locations;
  return out.dump();
}

VertexEnvironment vertex_instance_from_json(const std::string& text, QueryPolicy policy) {
  const OrderedJson in = OrderedJson::parse(text);
  require_fields(in, {"kind", "n", "edges", "regions", "costs", "locations"});
  if (in["kind"] != "vertex") {
    throw std::invalid_argument("expected kind \"vertex\"");
  }
  VertexInstanceView view;
  view.vertex_count = in["n"].get<std::size_t>();
  view.edges = edges_from_json(in["edges"]);
  for (const auto& entry : in["regions"]) {
    const std::string type = entry["type"].get<std::string>();
    if (type == "point") {
      require_fields(entry, {"type", "x", "y"});
      view.regions.push_back(VertexRegion::point({entry["x"].get<double>(), entry["y"].get<double>()}));
    } else if (type == "disk") {
      require_fields(entry, {"type", "x", "y", "r"});
      view.regions.push_back(VertexRegion::disk({entry["x"].get<double>(), entry["y"].get<double>()},
                                                entry["r"].get<double>()));
    } else {
      throw std::invalid_argument("unknown region type '" + type + "'");
    }
  }
  for (const auto& q : in["costs"]) view.costs.push_back(q.get<double>());
  std::vector<Point> locations;
  for (const auto& p : in["locations"]) {
    if (!p.is_array() || p.size() != 2) {
      throw std::invalid_argument("location must be an [x, y] pair");
    }
    locations.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return VertexEnvironment(std::move(view), std::move(locations), policy);
}

InstanceKind instance_kind_from_json(const std::string& text) {
  const OrderedJson in = OrderedJson::parse(text);
  if (!in.contains("kind")) {
    throw std::invalid_argument("missing field 'kind'");
  }
  if (in["kind"] == "edge") return InstanceKind::Edge;
  if (in["kind"] == "vertex") return InstanceKind::Vertex;
  throw std::invalid_argument("unknown instance kind");
}

}  // namespace mstu
