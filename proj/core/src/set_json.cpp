#include "fracperim/set_json.hpp"

#include <fstream>

#include "fracperim/canonical.hpp"
#include "fracperim/error.hpp"

namespace fracperim {

namespace {

using json = nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec vec_of(const json& j, const char* key) { return Vec::from(j.at(key).get<std::vector<double>>()); }

json args_of(const std::vector<SetSpec>& children) {
    json a = json::array();
    for (const auto& c : children) a.push_back(to_json(c));
    return a;
}

std::vector<SetSpec> children_of(const json& j) {
    require(j.contains("args") && j.at("args").is_array() && !j.at("args").empty(), ErrorCode::invalid_argument,
            "combinator needs a non-empty args array");
    std::vector<SetSpec> out;
    for (const auto& a : j.at("args")) out.push_back(set_from_json(a));
    return out;
}

SetSpec single_child(const json& j) {
    auto c = children_of(j);
    require(c.size() == 1, ErrorCode::invalid_argument, "unary combinator takes exactly one argument");
    return c.front();
}

}  // namespace

json to_json(const SetSpec& set) {
    using S = SetSpec;
    return std::visit(
        overloaded{
            [](const S::HalfSpace& h) -> json {
                return {{"type", "halfspace"}, {"normal", h.normal.to_vector()}, {"offset", h.offset}};
            },
            [](const S::Ball& b) -> json {
                return {{"type", "ball"}, {"center", b.center.to_vector()}, {"radius", b.radius}};
            },
            [](const S::Box& b) -> json { return {{"type", "box"}, {"lo", b.lo.to_vector()}, {"hi", b.hi.to_vector()}}; },
            [](const S::CapCone& c) -> json {
                return {{"type", "cap_cone"}, {"apex", c.apex.to_vector()}, {"axis", c.axis.to_vector()},
                        {"half_angle", c.half_angle}};
            },
            [](const S::AngleBoxCone& c) -> json {
                return {{"type", "angle_box_cone"}, {"apex", c.apex.to_vector()},
                        {"azimuth", {c.az_lo, c.az_hi}}, {"elevation", {c.el_lo, c.el_hi}}};
            },
            [](const S::Supergraph& g) -> json {
                require(g.graph.serializable(), ErrorCode::invalid_argument, "graph has no serializable descriptor");
                return {{"type", "supergraph"}, {"axis", g.axis}, {"graph", g.graph.descriptor()}};
            },
            [](const S::Raster& r) -> json {
                return {{"type", "raster"}, {"origin", r.grid->origin.to_vector()}, {"cell", r.grid->cell},
                        {"dims", r.grid->dims}, {"occupied", r.grid->occupied}};
            },
            [&](const S::Empty&) -> json { return {{"type", "empty"}, {"dim", set.dim()}}; },
            [&](const S::Full&) -> json { return {{"type", "full"}, {"dim", set.dim()}}; },
            [](const S::Complement& c) -> json { return {{"op", "complement"}, {"args", json::array({to_json(c.child)})}}; },
            [](const S::Union& u) -> json { return {{"op", "union"}, {"args", args_of(u.children)}}; },
            [](const S::Intersection& i) -> json { return {{"op", "intersection"}, {"args", args_of(i.children)}}; },
            [](const S::Translate& t) -> json {
                return {{"op", "translate"}, {"args", json::array({to_json(t.child)})}, {"shift", t.shift.to_vector()}};
            },
            [](const S::Rotate& r) -> json {
                return {{"op", "rotate"}, {"args", json::array({to_json(r.child)})}, {"matrix", r.rotation.to_rows()}};
            },
            [](const S::Scale& s) -> json {
                return {{"op", "scale"}, {"args", json::array({to_json(s.child)})}, {"factor", s.factor}};
            },
        },
        set.node().v);
}

SetSpec set_from_json(const json& j) {
    require(j.is_object(), ErrorCode::invalid_argument, "set specification must be an object");
    if (j.contains("op")) {
        const std::string op = j.at("op");
        if (op == "complement") return single_child(j).complement();
        if (op == "union") return SetSpec::unite(children_of(j));
        if (op == "intersection") return SetSpec::intersect(children_of(j));
        if (op == "translate") return single_child(j).translated(vec_of(j, "shift"));
        if (op == "rotate")
            return single_child(j).rotated(Mat::from_rows(j.at("matrix").get<std::vector<std::vector<double>>>()));
        if (op == "scale") return single_child(j).scaled(j.at("factor"));
        fail(ErrorCode::invalid_argument, "unknown set combinator: " + op);
    }
    require(j.contains("type"), ErrorCode::invalid_argument, "set leaf needs a type");
    const std::string type = j.at("type");
    if (type == "halfspace") return SetSpec::half_space(vec_of(j, "normal"), j.value("offset", 0.0));
    if (type == "ball") return SetSpec::ball(vec_of(j, "center"), j.at("radius"));
    if (type == "box") return SetSpec::box(vec_of(j, "lo"), vec_of(j, "hi"));
    if (type == "cap_cone") return SetSpec::cap_cone(vec_of(j, "apex"), vec_of(j, "axis"), j.at("half_angle"));
    if (type == "angle_box_cone") {
        const auto az = j.at("azimuth").get<std::vector<double>>();
        const auto el = j.value("elevation", std::vector<double>{0.0, 0.0});
        require(az.size() == 2 && el.size() == 2, ErrorCode::invalid_argument, "angle ranges need two entries");
        return SetSpec::angle_box_cone(vec_of(j, "apex"), az[0], az[1], el[0], el[1]);
    }
    if (type == "supergraph") return SetSpec::supergraph(graphs::from_json(j.at("graph")), j.at("axis"));
    if (type == "raster") {
        RasterGrid g;
        g.origin = vec_of(j, "origin");
        g.cell = j.at("cell");
        g.dims = j.at("dims").get<std::vector<int>>();
        g.occupied = j.at("occupied").get<std::vector<std::uint8_t>>();
        return SetSpec::raster(std::move(g));
    }
    if (type == "empty") return SetSpec::empty(j.at("dim"));
    if (type == "full") return SetSpec::full(j.at("dim"));
    if (type == "canonical") {
        SetParams params;
        if (j.contains("params"))
            for (const auto& [k, v] : j.at("params").items()) params[k] = v.get<double>();
        return canonical_set(j.at("name"), params);
    }
    fail(ErrorCode::invalid_argument, "unknown set type: " + type);
}

SetSpec load_set_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::io_error, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::invalid_argument, "malformed JSON in " + path + ": " + e.what());
    }
    return set_from_json(j);
}

}  // namespace fracperim
