#include "eulerstack/json_io.hpp"

#include <filesystem>
#include <fstream>

namespace eulerstack {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
    throw Error(ErrorCode::Parse, what);
}

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        parse_fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::int64_t need_int(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_number_integer()) parse_fail(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::string need_string(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_string()) parse_fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    parse_fail("rationals are \"p/q\" strings");
}

FiniteGroup finite_group_from_json(const Json& j) {
    std::vector<std::string> labels;
    for (const auto& l : need(j, "labels")) {
        if (!l.is_string()) parse_fail("labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    std::vector<std::vector<int>> table;
    for (const auto& row : need(j, "table")) {
        std::vector<int> r;
        for (const auto& entry : row) {
            if (!entry.is_number_integer()) parse_fail("table entries must be integers");
            r.push_back(entry.get<int>());
        }
        table.push_back(std::move(r));
    }
    return finite_group_from_table(labels, table);
}

Json finite_group_fields(const FiniteGroup& g) {
    Json j;
    j["labels"] = g.labels;
    j["table"] = g.table;
    return j;
}

} // namespace

Json group_to_json(const GroupExpr& g) {
    Json j;
    switch (g.kind) {
        case GroupExpr::Kind::Trivial:
            j["kind"] = "trivial";
            break;
        case GroupExpr::Kind::Finite:
            j["kind"] = "finite";
            j["labels"] = g.finite.labels;
            j["table"] = g.finite.table;
            break;
        case GroupExpr::Kind::Torus:
            j["kind"] = "torus";
            j["rank"] = g.parameter;
            break;
        case GroupExpr::Kind::Unipotent:
            j["kind"] = "unipotent";
            j["dim"] = g.parameter;
            break;
        case GroupExpr::Kind::GeneralLinear:
            j["kind"] = "gl";
            j["n"] = g.parameter;
            break;
        case GroupExpr::Kind::Product: {
            j["kind"] = "product";
            Json factors = Json::array();
            for (const auto& f : g.factors) factors.push_back(group_to_json(f));
            j["factors"] = factors;
            break;
        }
    }
    return j;
}

GroupExpr group_from_json(const Json& j) {
    std::string kind = need_string(j, "kind");
    if (kind == "trivial") return GroupExpr::trivial();
    if (kind == "finite") return GroupExpr::finite_of(finite_group_from_json(j));
    if (kind == "torus") return GroupExpr::torus((int)need_int(j, "rank"));
    if (kind == "unipotent") return GroupExpr::unipotent((int)need_int(j, "dim"));
    if (kind == "gl") return GroupExpr::general_linear((int)need_int(j, "n"));
    if (kind == "product") {
        std::vector<GroupExpr> factors;
        for (const auto& f : need(j, "factors")) factors.push_back(group_from_json(f));
        return GroupExpr::product(std::move(factors));
    }
    parse_fail("unknown group kind '" + kind + "'");
}

Json stack_to_json(const StratifiedStack& stack) {
    Json j;
    Json strata = Json::array();
    for (const auto& s : stack.strata()) {
        Json e;
        e["id"] = s.id;
        e["chi"] = s.coarse_chi;
        e["stabilizer"] = group_to_json(s.stabilizer);
        strata.push_back(std::move(e));
    }
    j["strata"] = strata;
    j["remainder"] = stack.has_remainder();
    return j;
}

StackPtr stack_from_json(const Json& j) {
    std::vector<Stratum> strata;
    for (const auto& e : need(j, "strata")) {
        Stratum s;
        s.id = need_string(e, "id");
        s.coarse_chi = need_int(e, "chi");
        s.stabilizer = group_from_json(need(e, "stabilizer"));
        strata.push_back(std::move(s));
    }
    bool remainder = false;
    if (j.contains("remainder")) {
        if (!j.at("remainder").is_boolean()) parse_fail("'remainder' must be a boolean");
        remainder = j.at("remainder").get<bool>();
    }
    return make_stack(std::move(strata), remainder);
}

namespace {

StackPtr resolve_stack_ref(const Json& ref, const std::string& base_dir) {
    if (ref.is_object()) return stack_from_json(ref);
    if (ref.is_string()) {
        std::filesystem::path p(ref.get<std::string>());
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        return stack_from_json(load_json_file(p.string()));
    }
    parse_fail("stack reference must be an object or a path string");
}

Json stab_to_json(const StabData& stab, bool inline_groups) {
    Json j;
    if (!stab.is_rich()) {
        j["mode"] = "lean";
        j["kernel_chi"] = stab.kernel_chi;
        j["quotient_chi"] = stab.quotient_chi;
        return j;
    }
    j["mode"] = "rich";
    Json hom;
    if (inline_groups) {
        hom["source"] = finite_group_fields(stab.hom->source);
        hom["target"] = finite_group_fields(stab.hom->target);
    }
    hom["images"] = stab.hom->images;
    j["hom"] = hom;
    return j;
}

// Rich homs usually take their endpoint groups from the two stacks; only
// the remainder record has no such context and must carry them inline.
StabData stab_from_json(const Json& j, const FiniteGroup* source_group,
                        const FiniteGroup* target_group) {
    std::string mode = need_string(j, "mode");
    if (mode == "lean")
        return StabData::lean(need_int(j, "kernel_chi"), need_int(j, "quotient_chi"));
    if (mode != "rich") parse_fail("unknown stab mode '" + mode + "'");
    const Json& hom = need(j, "hom");
    std::vector<int> images;
    for (const auto& i : need(hom, "images")) {
        if (!i.is_number_integer()) parse_fail("hom images must be integers");
        images.push_back(i.get<int>());
    }
    FiniteGroup source, target;
    if (hom.contains("source")) source = finite_group_from_json(hom.at("source"));
    else if (source_group) source = *source_group;
    else parse_fail("rich hom needs an explicit source group here");
    if (hom.contains("target")) target = finite_group_from_json(hom.at("target"));
    else if (target_group) target = *target_group;
    else parse_fail("rich hom needs an explicit target group here");
    return StabData::rich(make_hom(std::move(source), std::move(target), std::move(images)));
}

} // namespace

Json fn_to_json(const ConstructibleFn& f) {
    Json j;
    j["stack"] = stack_to_json(*f.stack());
    Json values = Json::object();
    for (const auto& [id, v] : f.values()) values[id] = v.str();
    j["values"] = values;
    j["default"] = f.default_value().str();
    return j;
}

ConstructibleFn fn_from_json(const Json& j, const std::string& base_dir) {
    StackPtr stack = resolve_stack_ref(need(j, "stack"), base_dir);
    std::map<std::string, Rational> values;
    if (j.contains("values"))
        for (const auto& [id, v] : j.at("values").items())
            values.emplace(id, rational_from_json(v));
    Rational def(0);
    if (j.contains("default")) def = rational_from_json(j.at("default"));
    return ConstructibleFn(std::move(stack), std::move(values), def);
}

Json morphism_to_json(const StackMorphism& m) {
    Json j;
    j["source"] = stack_to_json(*m.source());
    j["target"] = stack_to_json(*m.target());
    Json map = Json::object();
    for (const auto& s : m.source()->strata()) {
        const MorphismRecord& rec = m.record(s.id);
        Json r;
        r["to"] = rec.target_id;
        r["fiber_chi"] = rec.fiber_chi;
        r["stab"] = stab_to_json(rec.stab, /*inline_groups=*/false);
        map[s.id] = std::move(r);
    }
    j["map"] = map;
    if (m.remainder()) {
        Json r;
        r["fiber_chi"] = m.remainder()->fiber_chi;
        r["stab"] = stab_to_json(m.remainder()->stab, /*inline_groups=*/true);
        j["remainder"] = std::move(r);
    }
    return j;
}

StackMorphism morphism_from_json(const Json& j, const std::string& base_dir) {
    StackPtr source = resolve_stack_ref(need(j, "source"), base_dir);
    StackPtr target = resolve_stack_ref(need(j, "target"), base_dir);
    std::map<std::string, MorphismRecord> records;
    for (const auto& [id, r] : need(j, "map").items()) {
        MorphismRecord rec;
        rec.target_id = need_string(r, "to");
        rec.fiber_chi = need_int(r, "fiber_chi");
        const FiniteGroup* sg = nullptr;
        const FiniteGroup* tg = nullptr;
        if (source->contains(id) &&
            source->stratum(id).stabilizer.kind == GroupExpr::Kind::Finite)
            sg = &source->stratum(id).stabilizer.finite;
        if (target->contains(rec.target_id) &&
            target->stratum(rec.target_id).stabilizer.kind == GroupExpr::Kind::Finite)
            tg = &target->stratum(rec.target_id).stabilizer.finite;
        rec.stab = stab_from_json(need(r, "stab"), sg, tg);
        records.emplace(id, std::move(rec));
    }
    std::optional<MorphismRecord> remainder;
    if (j.contains("remainder")) {
        const Json& r = j.at("remainder");
        MorphismRecord rec;
        rec.target_id = "";
        rec.fiber_chi = need_int(r, "fiber_chi");
        rec.stab = stab_from_json(need(r, "stab"), nullptr, nullptr);
        remainder = std::move(rec);
    }
    return StackMorphism(std::move(source), std::move(target), std::move(records),
                         std::move(remainder));
}

Json gset_to_json(const FiniteGSet& a) {
    Json j;
    Json group;
    group["kind"] = "finite";
    group["labels"] = a.group().labels;
    group["table"] = a.group().table;
    j["group"] = group;
    j["size"] = a.set_size();
    j["action"] = a.action();
    return j;
}

FiniteGSet gset_from_json(const Json& j) {
    GroupExpr g = group_from_json(need(j, "group"));
    if (g.kind != GroupExpr::Kind::Finite)
        parse_fail("G-set group must have kind 'finite'");
    int size = (int)need_int(j, "size");
    std::vector<std::vector<int>> action;
    for (const auto& row : need(j, "action")) {
        std::vector<int> r;
        for (const auto& entry : row) {
            if (!entry.is_number_integer()) parse_fail("action entries must be integers");
            r.push_back(entry.get<int>());
        }
        action.push_back(std::move(r));
    }
    return FiniteGSet(std::move(g.finite), size, std::move(action));
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        parse_fail("invalid JSON in '" + path + "': " + e.what());
    }
}

namespace {

std::string dir_of(const std::string& path) {
    return std::filesystem::path(path).parent_path().string();
}

} // namespace

StackPtr load_stack(const std::string& path) {
    return stack_from_json(load_json_file(path));
}

ConstructibleFn load_fn(const std::string& path) {
    return fn_from_json(load_json_file(path), dir_of(path));
}

StackMorphism load_morphism(const std::string& path) {
    return morphism_from_json(load_json_file(path), dir_of(path));
}

FiniteGSet load_gset(const std::string& path) {
    return gset_from_json(load_json_file(path));
}

} // namespace eulerstack
