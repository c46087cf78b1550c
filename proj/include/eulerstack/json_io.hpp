#pragma once

#include <json.hpp>

#include "eulerstack/cartesian.hpp"
#include "eulerstack/orbifold.hpp"
#include "eulerstack/pushpull.hpp"

namespace eulerstack {

// All descriptors use ordered JSON so serialized output is deterministic.
using Json = nlohmann::ordered_json;

Json group_to_json(const GroupExpr& g);
GroupExpr group_from_json(const Json& j);

Json stack_to_json(const StratifiedStack& stack);
StackPtr stack_from_json(const Json& j);

// Functions and morphisms reference their stacks either inline (an object)
// or as a path string resolved against base_dir. Serialization always
// inlines, so every output re-parses on its own.
Json fn_to_json(const ConstructibleFn& f);
ConstructibleFn fn_from_json(const Json& j, const std::string& base_dir = "");

Json morphism_to_json(const StackMorphism& m);
StackMorphism morphism_from_json(const Json& j, const std::string& base_dir = "");

Json gset_to_json(const FiniteGSet& a);
FiniteGSet gset_from_json(const Json& j);

// Read and parse a JSON file; throws Error(Parse) with the file name on
// any failure.
Json load_json_file(const std::string& path);

StackPtr load_stack(const std::string& path);
ConstructibleFn load_fn(const std::string& path);
StackMorphism load_morphism(const std::string& path);
FiniteGSet load_gset(const std::string& path);

} // namespace eulerstack
