#include "gauss_neumann/domain_json.hpp"

#include <cmath>
#include <fstream>

#include "gauss_neumann/errors.hpp"

namespace gauss_neumann {

namespace {

double number(const Json& j, const char* key)
{
    if (!j.contains(key))
        throw ParameterError(std::string("json: missing key '") + key + "'");
    const Json& v = j.at(key);
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf")
            return kInf;
        if (s == "-inf")
            return -kInf;
    }
    throw ParameterError(std::string("json: key '") + key + "' is not a number");
}

Point point(const Json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParameterError("json: expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

Json finite_or_string(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

Profile profile_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("form") || !j["form"].is_string())
        throw ParameterError("profile json: expected an object with a 'form' string");
    const auto form = j["form"].get<std::string>();
    if (form == "linear")
        return Profile::linear(number(j, "slope"));
    if (form == "tanh")
        return Profile::tanh(number(j, "scale"));
    if (form == "pwl") {
        if (!j.contains("knots") || !j["knots"].is_array())
            throw ParameterError("profile json: 'pwl' needs a 'knots' array");
        std::vector<std::array<double, 2>> knots;
        for (const auto& k : j["knots"]) {
            const Point p = point(k);
            knots.push_back({p.x, p.y});
        }
        return Profile::piecewise_linear(std::move(knots));
    }
    throw ParameterError("profile json: unknown form '" + form + "'");
}

Json to_json(const Profile& p)
{
    switch (p.form()) {
    case Profile::Form::Linear:
        return {{"form", "linear"}, {"slope", p.parameter()}};
    case Profile::Form::Tanh:
        return {{"form", "tanh"}, {"scale", p.parameter()}};
    case Profile::Form::PiecewiseLinear: {
        Json knots = Json::array();
        for (const auto& k : p.knots())
            knots.push_back({k[0], k[1]});
        return {{"form", "pwl"}, {"knots", knots}};
    }
    }
    return {};
}

Domain domain_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParameterError("domain json: expected an object with a 'kind' string");
    const auto kind = j["kind"].get<std::string>();
    Domain d = Plane{};
    if (kind == "polygon") {
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw ParameterError("domain json: polygon needs a 'vertices' array");
        std::vector<Point> v;
        for (const auto& p : j["vertices"])
            v.push_back(point(p));
        d = ConvexPolygon(std::move(v));
    } else if (kind == "strip") {
        d = Strip{number(j, "y1"), number(j, "y2")};
    } else if (kind == "semistrip") {
        d = SemiStrip{number(j, "x"), number(j, "y1"), number(j, "y2")};
    } else if (kind == "profile") {
        if (!j.contains("f"))
            throw ParameterError("domain json: profile needs 'f'");
        d = ProfileDomain{profile_from_json(j["f"]), number(j, "eps")};
    } else if (kind == "plane") {
        d = Plane{};
    } else {
        throw ParameterError("domain json: unknown kind '" + kind + "'");
    }
    validate(d);
    return d;
}

Json to_json(const Domain& d)
{
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Strip>) {
                return {{"kind", "strip"}, {"y1", finite_or_string(v.y1)}, {"y2", finite_or_string(v.y2)}};
            } else if constexpr (std::is_same_v<T, SemiStrip>) {
                return {{"kind", "semistrip"}, {"x", v.x}, {"y1", v.y1}, {"y2", v.y2}};
            } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
                Json verts = Json::array();
                for (const auto& p : v.vertices())
                    verts.push_back({p.x, p.y});
                return {{"kind", "polygon"}, {"vertices", verts}};
            } else if constexpr (std::is_same_v<T, ProfileDomain>) {
                Json out{{"kind", "profile"}, {"f", to_json(v.f)}, {"eps", v.eps}};
                if (std::isfinite(v.x_max))
                    out["x_max"] = v.x_max;
                return out;
            } else {
                return {{"kind", "plane"}};
            }
        },
        d);
}

WeightSpec weight_from_json(const Json& j)
{
    if (!j.is_object())
        throw ParameterError("weight json: expected an object");
    WeightSpec w;
    if (j.contains("x0"))
        w.x0 = number(j, "x0");
    if (j.contains("y0"))
        w.y0 = number(j, "y0");
    if (!std::isfinite(w.x0) || !std::isfinite(w.y0))
        throw ParameterError("weight json: offsets must be finite");
    return w;
}

Json to_json(const WeightSpec& w) { return {{"x0", w.x0}, {"y0", w.y0}}; }

Json to_json(const Spectrum1D& s)
{
    return {{"eigenvalues", s.eigenvalues},
            {"residuals", s.residuals},
            {"grid",
             {{"R", finite_or_string(s.grid.truncation_radius)},
              {"h", s.grid.h()},
              {"n_nodes", s.grid.size()}}}};
}

Json mesh_summary(const TriMesh& m)
{
    return {{"source", m.source},
            {"R", finite_or_string(m.truncation_radius)},
            {"h_max", m.h_max},
            {"n_nodes", m.vertices.size()},
            {"n_triangles", m.triangles.size()},
            {"min_angle_deg", m.min_angle_deg}};
}

Json to_json(const Spectrum2D& s)
{
    Json mult = Json::array();
    for (const auto& [value, count] : s.multiplicities)
        mult.push_back({{"value", value}, {"multiplicity", count}});
    return {{"eigenvalues", s.eigenvalues},
            {"residuals", s.residuals},
            {"multiplicities", mult},
            {"mesh", mesh_summary(s.mesh)}};
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParameterError("invalid JSON in '" + path + "': " + e.what());
    }
}

} // namespace gauss_neumann
