#pragma once

#include <string>

#include "mstu/core.hpp"
#include "mstu/geometry.hpp"

namespace mstu {

/// JSON wire formats. Field order on emission is fixed; parsing rejects
/// unknown or missing fields. Rationals serialize as integers when the
/// denominator is 1 and as "p/q" strings otherwise.
std::string edge_instance_to_json(const EdgeEnvironment& env);
EdgeEnvironment edge_instance_from_json(const std::string& text,
                                        QueryPolicy policy = QueryPolicy::Strict);

std::string vertex_instance_to_json(const VertexEnvironment& env);
VertexEnvironment vertex_instance_from_json(const std::string& text,
                                            QueryPolicy policy = QueryPolicy::Strict);

/// Dispatches on the "kind" field.
enum class InstanceKind { Edge, Vertex };
InstanceKind instance_kind_from_json(const std::string& text);

}  // namespace mstu
