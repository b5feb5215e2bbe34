#include "multiplane/config_file.hpp"

#include "multiplane/catalog.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace multiplane {

using nlohmann::json;

ConfigError::ConfigError(const std::string& where, const std::string& what)
    : std::runtime_error(where + ": " + what), where_(where)
{
}

json fraction_to_json(const Fraction& f)
{
    if (f.get_den() == 1 && f.get_num().fits_slong_p())
        return f.get_num().get_si();
    return f.get_str();
}

Fraction fraction_from_json(const json& j, const std::string& where)
{
    if (j.is_number_integer())
        return make_fraction(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_fraction(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ConfigError(where, "expected an integer or a rational string such as \"3/4\"");
}

namespace {

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& what) const
    {
        throw ConfigError(source_ + ":" + (path.empty() ? "/" : path), what);
    }

    const json& member(const json& obj, const std::string& path, const std::string& key) const
    {
        if (!obj.is_object())
            fail(path, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end())
            fail(path, "missing \"" + key + "\"");
        return *it;
    }

    long integer(const json& j, const std::string& path) const
    {
        if (!j.is_number_integer())
            fail(path, "expected an integer");
        return j.get<long>();
    }

    std::string name(const json& j, const std::string& path) const
    {
        if (j.is_string())
            return j.get<std::string>();
        if (j.is_number_integer())
            return std::to_string(j.get<long>());
        fail(path, "expected a name or an integer id");
    }

    Fraction fraction(const json& j, const std::string& path) const
    {
        try {
            return fraction_from_json(j, path);
        } catch (const ConfigError&) {
            fail(path, "expected an integer or a rational string such as \"3/4\"");
        }
    }

    FieldElement element(const FieldPtr& K, const json& j, const std::string& path) const
    {
        if (!j.is_array())
            return FieldElement(K, fraction(j, path));
        if (j.size() > static_cast<std::size_t>(K->degree()))
            fail(path, "more coefficients than the field degree");
        std::vector<Fraction> c(static_cast<std::size_t>(K->degree()));
        for (std::size_t i = 0; i < j.size(); ++i)
            c[i] = fraction(j[i], path + "/" + std::to_string(i));
        return FieldElement(K, std::move(c));
    }

    std::vector<FieldElement> triple(const FieldPtr& K, const json& j, const std::string& path) const
    {
        if (!j.is_array() || j.size() != 3)
            fail(path, "expected three coordinates");
        std::vector<FieldElement> out;
        for (std::size_t i = 0; i < 3; ++i)
            out.push_back(element(K, j[i], path + "/" + std::to_string(i)));
        return out;
    }

    std::vector<long> integers(const json& j, const std::string& path) const
    {
        if (!j.is_array())
            fail(path, "expected an array of integers");
        std::vector<long> out;
        for (std::size_t i = 0; i < j.size(); ++i)
            out.push_back(integer(j[i], path + "/" + std::to_string(i)));
        return out;
    }

    FieldPtr field(const json& doc) const
    {
        auto it = doc.find("field");
        if (it == doc.end() || it->is_null())
            return NumberField::rationals();
        const json& poly = member(*it, "/field", "minimal_polynomial");
        std::vector<BigInt> c;
        for (long v : integers(poly, "/field/minimal_polynomial"))
            c.emplace_back(v);
        if (c.size() == 2 && c[0] == 1 && c[1] == 0)
            return NumberField::rationals();
        try {
            return std::make_shared<const NumberField>(c);
        } catch (const std::exception& e) {
            fail("/field/minimal_polynomial", e.what());
        }
    }

    std::shared_ptr<const ResolutionCluster> cluster(const Configuration& config, const std::string& id,
                                                     const json& j, const std::string& path) const
    {
        const json& list = member(j, path, "positions");
        if (!list.is_array() || list.empty())
            fail(path + "/positions", "expected a nonempty array");
        std::map<std::string, int> index;
        std::vector<ClusterPosition> positions;
        for (std::size_t a = 0; a < list.size(); ++a) {
            const std::string at = path + "/positions/" + std::to_string(a);
            const json& pj = list[a];
            ClusterPosition p;
            p.id = name(member(pj, at, "id"), at + "/id");
            if (index.count(p.id))
                fail(at + "/id", "duplicate position id " + p.id);
            auto ref = [&](const char* key) {
                auto it = pj.find(key);
                if (it == pj.end() || it->is_null())
                    return -1;
                const std::string target = name(*it, at + "/" + key);
                auto found = index.find(target);
                if (found == index.end())
                    fail(at + "/" + key, "unknown or later position " + target);
                return found->second;
            };
            p.parent = ref("parent");
            p.extra = ref("extra_proximity");
            if (a > 0 && p.parent < 0)
                fail(at + "/parent", "only the first position may be the planar point");
            if (a == 0 && p.parent >= 0)
                fail(at + "/parent", "the first position must be the planar point");
            auto dir = pj.find("direction");
            if (dir != pj.end() && !dir->is_null()) {
                if (dir->is_string() && dir->get<std::string>() == "infinity")
                    p.direction = Direction::infinity();
                else
                    p.direction = Direction::finite(element(config.field, *dir, at + "/direction"));
            }
            p.multiplicities.assign(config.curves.size(), 0);
            const json& mult = member(pj, at, "multiplicities");
            if (!mult.is_object())
                fail(at + "/multiplicities", "expected an object keyed by curve name");
            for (const auto& [curve, m] : mult.items()) {
                const int c = config.curve_index(curve);
                if (c < 0)
                    fail(at + "/multiplicities/" + curve, "unknown curve " + curve);
                const long v = integer(m, at + "/multiplicities/" + curve);
                if (v < 0)
                    fail(at + "/multiplicities/" + curve, "multiplicities are nonnegative");
                p.multiplicities[static_cast<std::size_t>(c)] = v;
            }
            index[p.id] = static_cast<int>(a);
            positions.push_back(std::move(p));
        }
        try {
            return std::make_shared<const ResolutionCluster>(id, std::move(positions), config.curves.size());
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
    }

    Configuration configuration(const json& doc) const
    {
        Configuration config;
        config.field = field(doc);
        auto lines = doc.find("lines");
        auto points = doc.find("singular_points");
        const bool has_lines = lines != doc.end() && !lines->is_null();
        if (has_lines) {
            if (!lines->is_array() || lines->empty())
                fail("/lines", "expected a nonempty array");
            ArrangementInput in;
            in.field = config.field;
            for (std::size_t i = 0; i < lines->size(); ++i) {
                const std::string at = "/lines/" + std::to_string(i);
                in.names.push_back(name(member((*lines)[i], at, "name"), at + "/name"));
                auto c = triple(config.field, member((*lines)[i], at, "coeffs"), at + "/coeffs");
                in.lines.push_back({c[0], c[1], c[2]});
            }
            try {
                config = arrangement_geometry(in);
            } catch (const std::exception& e) {
                fail("/lines", e.what());
            }
            if (points != doc.end() && !points->is_null())
                config.points.clear();
        }
        auto curves = doc.find("curves");
        if (curves != doc.end() && !curves->is_null()) {
            if (!curves->is_array())
                fail("/curves", "expected an array");
            std::vector<Curve> listed;
            for (std::size_t i = 0; i < curves->size(); ++i) {
                const std::string at = "/curves/" + std::to_string(i);
                Curve c;
                c.name = name(member((*curves)[i], at, "name"), at + "/name");
                c.degree = integer(member((*curves)[i], at, "degree"), at + "/degree");
                if (c.degree < 1)
                    fail(at + "/degree", "degrees are positive");
                for (const auto& d : listed)
                    if (d.name == c.name)
                        fail(at + "/name", "duplicate curve " + c.name);
                listed.push_back(c);
            }
            if (has_lines) {
                bool same = listed.size() == config.curves.size();
                for (std::size_t i = 0; same && i < listed.size(); ++i)
                    same = listed[i].name == config.curves[i].name && listed[i].degree == 1;
                if (!same)
                    fail("/curves", "curves must list the lines in order, each of degree 1");
            }
            config.curves = listed;
        } else if (!has_lines) {
            fail("", "missing \"curves\"");
        }
        if (points != doc.end() && !points->is_null()) {
            if (!points->is_array())
                fail("/singular_points", "expected an array");
            for (std::size_t k = 0; k < points->size(); ++k) {
                const std::string at = "/singular_points/" + std::to_string(k);
                const json& pj = (*points)[k];
                SingularPoint p;
                p.id = name(member(pj, at, "id"), at + "/id");
                if (config.point_index(p.id) >= 0)
                    fail(at + "/id", "duplicate point " + p.id);
                p.coords = triple(config.field, member(pj, at, "coords"), at + "/coords");
                if (p.coords[0].is_zero() && p.coords[1].is_zero() && p.coords[2].is_zero())
                    fail(at + "/coords", "the zero vector is not a point");
                p.cluster = cluster(config, p.id, member(pj, at, "cluster"), at + "/cluster");
                config.points.push_back(std::move(p));
            }
        } else if (!has_lines) {
            fail("", "missing \"singular_points\"");
        }
        return config;
    }

    CoveringSpec covering(std::shared_ptr<const Configuration> config, const json& j) const
    {
        CoveringSpec spec;
        spec.config = std::move(config);
        spec.grid.orders = integers(member(j, "/covering", "orders"), "/covering/orders");
        const json& m = member(j, "/covering", "matrix");
        if (!m.is_array())
            fail("/covering/matrix", "expected an array of rows");
        for (std::size_t r = 0; r < m.size(); ++r)
            spec.grid.matrix.push_back(integers(m[r], "/covering/matrix/" + std::to_string(r)));
        auto inf = j.find("infinity");
        if (inf != j.end() && !inf->is_null()) {
            const std::string mode = name(member(*inf, "/covering/infinity", "mode"), "/covering/infinity/mode");
            if (mode == "component") {
                const std::string curve =
                    name(member(*inf, "/covering/infinity", "curve"), "/covering/infinity/curve");
                spec.infinity = InfinityMode::component;
                spec.infinity_curve = spec.config->curve_index(curve);
                if (spec.infinity_curve < 0)
                    fail("/covering/infinity/curve", "unknown curve " + curve);
            } else if (mode != "transverse") {
                fail("/covering/infinity/mode", "expected \"transverse\" or \"component\"");
            }
        }
        try {
            spec.validate();
        } catch (const std::exception& e) {
            fail("/covering", e.what());
        }
        return spec;
    }

private:
    std::string source_;
};

json element_to_json(const FieldElement& a)
{
    if (a.field()->degree() == 1)
        return fraction_to_json(a.coefficients()[0]);
    json out = json::array();
    for (const auto& c : a.coefficients())
        out.push_back(fraction_to_json(c));
    return out;
}

}  // namespace

ConfigFile parse_config(const json& doc, const std::string& source)
{
    if (doc.is_object() && doc.contains("input"))
        return parse_config(doc.at("input"), source);
    Reader r(source);
    if (!doc.is_object())
        r.fail("", "expected a JSON object");
    ConfigFile out;
    out.config = std::make_shared<const Configuration>(r.configuration(doc));
    auto cov = doc.find("covering");
    if (cov != doc.end() && !cov->is_null())
        out.covering = r.covering(out.config, *cov);
    return out;
}

ConfigFile load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path, "cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ":byte " + std::to_string(e.byte), e.what());
    }
    return parse_config(doc, path);
}

json config_to_json(const Configuration& config)
{
    json doc;
    if (config.field->degree() > 1) {
        json poly = json::array();
        for (const auto& c : config.field->coefficients_descending())
            poly.push_back(c.get_si());
        doc["field"] = {{"minimal_polynomial", poly}};
    }
    doc["curves"] = json::array();
    for (const auto& c : config.curves)
        doc["curves"].push_back({{"name", c.name}, {"degree", c.degree}});
    if (!config.lines.empty()) {
        doc["lines"] = json::array();
        for (std::size_t i = 0; i < config.lines.size(); ++i) {
            json coeffs = json::array();
            for (const auto& a : config.lines[i])
                coeffs.push_back(element_to_json(a));
            doc["lines"].push_back({{"name", config.curves[i].name}, {"coeffs", coeffs}});
        }
    }
    doc["singular_points"] = json::array();
    for (const auto& p : config.points) {
        json coords = json::array();
        for (const auto& a : p.coords)
            coords.push_back(element_to_json(a));
        json positions = json::array();
        const auto& cl = *p.cluster;
        for (std::size_t a = 0; a < cl.size(); ++a) {
            const auto& pos = cl.position(a);
            json pj;
            pj["id"] = pos.id;
            pj["parent"] = pos.parent < 0 ? json(nullptr) : json(cl.position(static_cast<std::size_t>(pos.parent)).id);
            pj["extra_proximity"] =
                pos.extra < 0 ? json(nullptr) : json(cl.position(static_cast<std::size_t>(pos.extra)).id);
            if (!pos.direction)
                pj["direction"] = nullptr;
            else if (pos.direction->at_infinity)
                pj["direction"] = "infinity";
            else
                pj["direction"] = element_to_json(pos.direction->slope);
            json mult = json::object();
            for (std::size_t c = 0; c < config.curves.size(); ++c)
                if (pos.multiplicities[c] != 0)
                    mult[config.curves[c].name] = pos.multiplicities[c];
            pj["multiplicities"] = mult;
            positions.push_back(pj);
        }
        doc["singular_points"].push_back({{"id", p.id}, {"coords", coords}, {"cluster", {{"positions", positions}}}});
    }
    return doc;
}

json covering_to_json(const CoveringSpec& spec)
{
    json doc = config_to_json(*spec.config);
    json inf;
    if (spec.infinity == InfinityMode::component)
        inf = {{"mode", "component"}, {"curve", spec.config->curves[static_cast<std::size_t>(spec.infinity_curve)].name}};
    else
        inf = {{"mode", "transverse"}};
    doc["covering"] = {{"orders", spec.grid.orders}, {"matrix", spec.grid.matrix}, {"infinity", inf}};
    return doc;
}

}  // namespace multiplane
