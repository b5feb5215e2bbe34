#include "cli.hpp"

#include "multiplane/catalog.hpp"
#include "multiplane/config_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <omp.h>
#include <sstream>

namespace multiplane::cli {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string arrangement;
    std::string config;
    long n = 0;
    std::string orders;
    std::string matrix;
    std::string infinity;

    void add_to(CLI::App* app, bool covering)
    {
        app->add_option("--arrangement", arrangement, "builtin example, see the catalog subcommand");
        app->add_option("--config", config, "JSON configuration file");
        if (!covering)
            return;
        app->add_option("--n", n, "order of every generator");
        app->add_option("--orders", orders, "orders n1,n2,... of the generators");
        app->add_option("--matrix", matrix, "exponent matrix: a JSON file or rows like 1,0,2;0,1,1");
        app->add_option("--infinity", infinity, "transverse, or the name of the curve at infinity");
    }
};

std::vector<long> parse_longs(const std::string& text, char sep)
{
    std::vector<long> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            throw InputError("not an integer: '" + item + "'");
        }
        if (used != item.size())
            throw InputError("not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<Fraction> parse_fractions(const std::string& text)
{
    std::vector<Fraction> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(parse_fraction(item));
        } catch (const std::exception&) {
            throw InputError("not a rational number: '" + item + "'");
        }
    }
    return out;
}

std::vector<std::vector<long>> parse_matrix(const std::string& text)
{
    std::ifstream file(text);
    if (file) {
        json doc;
        try {
            doc = json::parse(file);
        } catch (const json::parse_error& e) {
            throw ConfigError(text + ":byte " + std::to_string(e.byte), e.what());
        }
        if (doc.is_object() && doc.contains("matrix"))
            doc = doc.at("matrix");
        try {
            return doc.get<std::vector<std::vector<long>>>();
        } catch (const json::exception&) {
            throw ConfigError(text + ":/", "expected an array of integer rows");
        }
    }
    std::vector<std::vector<long>> rows;
    std::stringstream in(text);
    std::string row;
    while (std::getline(in, row, ';'))
        rows.push_back(parse_longs(row, ','));
    return rows;
}

std::shared_ptr<const Configuration> load_configuration(const Source& s)
{
    if (s.arrangement.empty() == s.config.empty())
        throw InputError("give exactly one of --arrangement and --config");
    if (!s.config.empty())
        return load_config(s.config).config;
    return builtin(s.arrangement, s.n > 0 ? s.n : 5).config;
}

CoveringSpec identity_grid(std::shared_ptr<const Configuration> config, long n, int infinity)
{
    CoveringSpec spec;
    spec.config = std::move(config);
    const std::size_t t = spec.config->curves.size();
    for (std::size_t i = 0; i < t; ++i) {
        if (static_cast<int>(i) == infinity)
            continue;
        std::vector<long> row(t, 0);
        row[i] = 1;
        spec.grid.matrix.push_back(row);
        spec.grid.orders.push_back(n);
    }
    if (infinity >= 0) {
        spec.infinity = InfinityMode::component;
        spec.infinity_curve = infinity;
    }
    return spec;
}

CoveringSpec load_covering(const Source& s)
{
    if (s.arrangement.empty() == s.config.empty())
        throw InputError("give exactly one of --arrangement and --config");
    CoveringSpec spec;
    if (!s.arrangement.empty()) {
        if (s.n < 1)
            throw InputError("--arrangement needs --n");
        spec = builtin(s.arrangement, s.n);
    } else {
        auto file = load_config(s.config);
        if (file.covering)
            spec = *file.covering;
        else if (s.n > 0)
            spec = identity_grid(file.config, s.n, -1);
        else if (s.orders.empty())
            throw InputError(s.config + " has no covering; give --n or --orders and --matrix");
        spec.config = file.config;
    }
    if (!s.infinity.empty()) {
        int inf = -1;
        if (s.infinity != "transverse") {
            inf = spec.config->curve_index(s.infinity);
            if (inf < 0)
                throw InputError("--infinity: unknown curve " + s.infinity);
        }
        if (s.orders.empty() && s.matrix.empty() && s.n > 0) {
            spec = identity_grid(spec.config, s.n, inf);
        } else {
            spec.infinity = inf < 0 ? InfinityMode::transverse : InfinityMode::component;
            spec.infinity_curve = inf;
        }
    }
    if (!s.orders.empty())
        spec.grid.orders = parse_longs(s.orders, ',');
    if (!s.matrix.empty())
        spec.grid.matrix = parse_matrix(s.matrix);
    spec.validate();
    return spec;
}

std::string fraction_text(const Fraction& f) { return f.get_str(); }

std::string vector_text(const std::vector<long>& v)
{
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << v[i];
    out << ")";
    return out.str();
}

std::string wall_text(const JumpingWall& w, const Configuration& config)
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < w.normal.size(); ++i) {
        if (w.normal[i] == 0)
            continue;
        out << (first ? "" : "+");
        if (w.normal[i] != 1)
            out << w.normal[i] << "*";
        out << config.curves[i].name;
        first = false;
    }
    out << "=" << w.rhs;
    return out.str();
}

struct Walls {
    std::vector<JumpingWall> walls;
    Arrangement arr;
    std::vector<long> degrees;
};

Walls walls_of(const Configuration& config)
{
    Walls w;
    w.walls = all_walls(config);
    w.arr = Arrangement::from_walls(w.walls, config.curves.size());
    w.degrees = config.degrees();
    return w;
}

// distinguished first, by height, then by the normals of the face's hyperplanes
std::vector<Face> sorted_faces(const Walls& w, std::size_t max_faces)
{
    auto fs = faces(w.arr, w.degrees, max_faces);
    auto key = [&](const Face& f) {
        std::vector<std::vector<long>> normals;
        for (std::size_t h : f.on) {
            auto v = w.arr.normals[h];
            v.push_back(w.arr.rhs[h]);
            normals.push_back(v);
        }
        return std::make_tuple(!f.distinguished, f.height.value_or(Fraction(0)), normals);
    };
    std::stable_sort(fs.begin(), fs.end(), [&](const Face& a, const Face& b) { return key(a) < key(b); });
    return fs;
}

std::string face_text(const Walls& w, const Face& f, const Configuration& config)
{
    std::ostringstream out;
    for (std::size_t q = 0; q < f.on.size(); ++q)
        out << (q ? "; " : "") << hyperplane_text(w.arr, f.on[q], config, w.walls);
    return out.str();
}

json walls_json(const Walls& w, const Configuration& config)
{
    json out = json::array();
    for (const auto& wall : w.walls) {
        json sources = json::array();
        for (const auto& s : wall.sources)
            sources.push_back({{"point", config.points[s.point].id},
                               {"position", config.points[s.point].cluster->position(s.position).id},
                               {"value", s.value}});
        out.push_back({{"normal", wall.normal}, {"rhs", wall.rhs}, {"points", wall.point_ids}, {"sources", sources}});
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> split_label(const std::string& label)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t k = label.find("; ", start);
        out.push_back(label.substr(start, k - start));
        if (k == std::string::npos)
            break;
        start = k + 2;
    }
    return out;
}

// contributions grouped by face (or by label for the other methods)
json faces_json(const IrregularityResult& r)
{
    std::map<std::pair<long, std::string>, json> groups;
    for (const auto& c : r.contributions) {
        json& g = groups[{c.twist, c.label}];
        if (g.is_null())
            g = {{"walls", split_label(c.label)}, {"height", c.twist + 3}, {"cells", json::array()}};
        g["cells"].push_back({{"count", c.characters.get_str()}, {"h1", c.h1}, {"representative", c.representative}});
    }
    json out = json::array();
    for (auto& [key, g] : groups) {
        auto& cells = g["cells"];
        std::sort(cells.begin(), cells.end(),
                  [](const json& a, const json& b) { return a["representative"] < b["representative"]; });
        out.push_back(std::move(g));
    }
    return out;
}

void print_result(std::ostream& out, const IrregularityResult& r)
{
    out << "method " << method_name(r.method) << ": q = " << r.q << (r.connected ? "" : " (disconnected cover)")
        << "\n";
    const json fs = faces_json(r);
    for (const auto& f : fs) {
        out << "  height " << f["height"].get<long>() << "  ";
        const auto walls = f["walls"].get<std::vector<std::string>>();
        for (std::size_t i = 0; i < walls.size(); ++i)
            out << (i ? "; " : "") << walls[i];
        out << "\n";
        for (const auto& c : f["cells"])
            out << "    characters " << c["count"].get<std::string>() << "  h1 " << c["h1"].get<long>()
                << "  representative " << vector_text(c["representative"].get<std::vector<long>>()) << "\n";
    }
}

IrregularityOptions options_for(int threads)
{
    IrregularityOptions opt;
    opt.sweep.threads = threads;
    return opt;
}

int cmd_irregularity(const Source& src, const std::string& method, int threads, bool as_json, std::ostream& out)
{
    const auto spec = load_covering(src);
    std::vector<Method> methods;
    if (method == "all")
        methods = {Method::direct, Method::faces, Method::triple};
    else if (method == "direct")
        methods = {Method::direct};
    else if (method == "faces")
        methods = {Method::faces};
    else if (method == "triple")
        methods = {Method::triple};
    else
        throw InputError("--method must be direct, faces, triple or all");
    std::vector<IrregularityResult> results;
    json timings = json::object();
    for (Method m : methods) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            results.push_back(irregularity(spec, m, options_for(threads)));
        } catch (const MathError& e) {
            // a method that does not apply is skipped when running all of them
            if (method != "all" || m != Method::triple)
                throw;
            timings[method_name(m)] = std::string("not applicable: ") + e.what();
            continue;
        }
        timings[method_name(m)] = seconds_since(t0);
    }
    for (const auto& r : results)
        if (r.q != results.front().q) {
            std::ostringstream msg;
            msg << "methods disagree:";
            for (const auto& s : results)
                msg << " " << method_name(s.method) << " q = " << s.q;
            throw MathError(msg.str());
        }
    const auto& main = results.back();
    if (as_json) {
        json doc;
        doc["input"] = covering_to_json(spec);
        doc["q"] = main.q.get_str();
        doc["method"] = method;
        doc["connected"] = main.connected;
        doc["faces"] = faces_json(main);
        doc["timings"] = timings;
        out << doc.dump(2) << "\n";
        return 0;
    }
    for (const auto& r : results)
        print_result(out, r);
    if (results.size() > 1)
        out << "all methods agree: q = " << main.q << "\n";
    return 0;
}

int cmd_walls(const Source& src, bool as_json, std::ostream& out)
{
    const auto config = load_configuration(src);
    const auto w = walls_of(*config);
    if (as_json) {
        out << json{{"walls", walls_json(w, *config)}}.dump(2) << "\n";
        return 0;
    }
    for (std::size_t h = 0; h < w.walls.size(); ++h) {
        const auto& wall = w.walls[h];
        out << "W" << h << "  " << wall_text(wall, *config) << "  points";
        for (const auto& id : wall.point_ids)
            out << " " << id;
        out << "  sources";
        for (const auto& s : wall.sources)
            out << " " << config->points[s.point].id << "/" << config->points[s.point].cluster->position(s.position).id
                << ":" << s.value;
        out << "\n";
    }
    return 0;
}

int cmd_faces(const Source& src, std::size_t max_faces, bool as_json, std::ostream& out)
{
    const auto config = load_configuration(src);
    const auto w = walls_of(*config);
    const auto fs = sorted_faces(w, max_faces);
    json list = json::array();
    for (const auto& f : fs) {
        json walls = json::array();
        for (std::size_t h : f.on)
            walls.push_back(hyperplane_text(w.arr, h, *config, w.walls));
        list.push_back({{"walls", walls},
                        {"dimension", f.subspace.direction_basis.size()},
                        {"distinguished", f.distinguished},
                        {"height", f.height ? json(fraction_text(*f.height)) : json(nullptr)}});
    }
    if (as_json) {
        out << json{{"faces", list}}.dump(2) << "\n";
        return 0;
    }
    for (const auto& f : fs) {
        out << (f.distinguished ? "distinguished  height " + fraction_text(*f.height) : "ordinary       height -")
            << "  dim " << f.subspace.direction_basis.size() << "  " << face_text(w, f, *config) << "\n";
    }
    return 0;
}

int cmd_count(const Source& src, std::uint64_t budget, std::size_t max_faces, bool as_json, std::ostream& out)
{
    const auto spec = load_covering(src);
    const auto g = spec.effective_grid();
    const auto w = walls_of(*spec.config);
    json list = json::array();
    for (const auto& f : sorted_faces(w, max_faces)) {
        if (!f.distinguished)
            continue;
        json cells = json::array();
        BigInt total = 0;
        for (const auto& [cell, count] : face_cells(w.arr, f, g, budget)) {
            json rep = json::array();
            for (const auto& v : cell.representative)
                rep.push_back(fraction_text(v));
            cells.push_back({{"count", count.get_str()}, {"representative", rep}});
            total += count;
        }
        json walls = json::array();
        for (std::size_t h : f.on)
            walls.push_back(hyperplane_text(w.arr, h, *spec.config, w.walls));
        list.push_back({{"walls", walls}, {"height", fraction_text(*f.height)}, {"total", total.get_str()},
                        {"cells", cells}});
    }
    if (as_json) {
        out << json{{"input", covering_to_json(spec)}, {"faces", list}}.dump(2) << "\n";
        return 0;
    }
    for (const auto& f : list) {
        out << "height " << f["height"].get<std::string>() << "  characters " << f["total"].get<std::string>() << "  ";
        const auto walls = f["walls"].get<std::vector<std::string>>();
        for (std::size_t i = 0; i < walls.size(); ++i)
            out << (i ? "; " : "") << walls[i];
        out << "\n";
        for (const auto& c : f["cells"]) {
            out << "    " << c["count"].get<std::string>() << " at (";
            const auto rep = c["representative"].get<std::vector<std::string>>();
            for (std::size_t i = 0; i < rep.size(); ++i)
                out << (i ? "," : "") << rep[i];
            out << ")\n";
        }
    }
    return 0;
}

int cmd_h1(const Source& src, const std::string& x_text, const std::string& character, std::optional<int> degree,
           bool as_json, std::ostream& out)
{
    std::shared_ptr<const Configuration> config;
    FractionVector x;
    if (!character.empty()) {
        const auto spec = load_covering(src);
        config = spec.config;
        const auto a = parse_longs(character, ',');
        const auto g = spec.effective_grid();
        if (a.size() != g.generators())
            throw InputError("--character needs one entry per generator");
        x = phi(g, a);
    } else {
        config = load_configuration(src);
        x = parse_fractions(x_text);
        if (x.size() != config->curves.size())
            throw InputError("--x needs one coordinate per curve");
    }
    Fraction h = 0;
    const auto d = config->degrees();
    for (std::size_t i = 0; i < d.size(); ++i)
        h += d[i] * x[i];
    const int twist = degree ? *degree : static_cast<int>(to_long(floor_of(h))) - 3;
    const auto scheme = multiplier_scheme(*config, x);
    const long value = h1(scheme, twist);
    const auto len = colength(scheme);
    if (as_json) {
        json xs = json::array();
        for (const auto& v : x)
            xs.push_back(fraction_text(v));
        out << json{{"x", xs}, {"height", fraction_text(h)}, {"degree", twist}, {"colength", len}, {"h1", value}}.dump(2)
            << "\n";
        return 0;
    }
    out << "height " << fraction_text(h) << "  degree " << twist << "  colength " << len << "  h1 " << value << "\n";
    return 0;
}

int cmd_jumping(const Source& src, const std::string& point, const std::string& exponents, const std::string& max,
                bool as_json, std::ostream& out)
{
    const auto config = load_configuration(src);
    if (config->points.empty())
        throw InputError("the configuration has no singular points");
    std::size_t p = 0;
    if (!point.empty()) {
        const int k = config->point_index(point);
        if (k < 0)
            throw InputError("--point: unknown point " + point);
        p = static_cast<std::size_t>(k);
    } else if (config->points.size() > 1) {
        throw InputError("the configuration has several points; choose one with --point");
    }
    const auto& cl = *config->points[p].cluster;
    std::vector<long> weights(config->curves.size(), 1);
    if (!exponents.empty()) {
        weights = parse_longs(exponents, ',');
        if (weights.size() != config->curves.size())
            throw InputError("--exponents needs one entry per curve");
    }
    std::vector<long> e(cl.size(), 0);
    for (std::size_t a = 0; a < cl.size(); ++a)
        for (std::size_t i = 0; i < weights.size(); ++i)
            e[a] += weights[i] * cl.e(i, a);
    Fraction bound;
    try {
        bound = parse_fraction(max);
    } catch (const std::exception&) {
        throw InputError("--max: not a rational number: " + max);
    }
    const auto jumps = jumping_scan(cl, e, bound);
    if (as_json) {
        json list = json::array();
        for (const auto& j : jumps)
            list.push_back(fraction_text(j));
        out << json{{"point", config->points[p].id}, {"jumping_numbers", list}}.dump(2) << "\n";
        return 0;
    }
    for (std::size_t i = 0; i < jumps.size(); ++i)
        out << (i ? " " : "") << fraction_text(jumps[i]);
    out << "\n";
    return 0;
}

int cmd_ehrhart(const Source& src, long n_min, long n_max, long period, int degree, const std::string& method,
                int threads, bool as_json, std::ostream& out)
{
    if (n_min < 1 || n_max < n_min)
        throw InputError("need 1 <= --n-min <= --n-max");
    Method m = Method::faces;
    if (method == "direct")
        m = Method::direct;
    else if (method == "triple")
        m = Method::triple;
    else if (method != "faces")
        throw InputError("--method must be direct, faces or triple");
    std::map<long, BigInt> values;
    std::vector<long> skipped;
    for (long n = n_min; n <= n_max; ++n) {
        Source s = src;
        s.n = n;
        try {
            values[n] = irregularity(load_covering(s), m, options_for(threads)).q;
        } catch (const UnsupportedInput&) {
            skipped.push_back(n);
        }
    }
    const auto qp = ehrhart_fit(values, period, degree);
    if (as_json) {
        json vals = json::object();
        for (const auto& [n, q] : values)
            vals[std::to_string(n)] = q.get_str();
        json constituents = json::array();
        for (const auto& c : qp.constituents) {
            json row = json::array();
            for (const auto& v : c)
                row.push_back(fraction_text(v));
            constituents.push_back(row);
        }
        out << json{{"values", vals}, {"skipped", skipped}, {"period", qp.period}, {"constituents", constituents}}.dump(2)
            << "\n";
        return 0;
    }
    for (const auto& [n, q] : values)
        out << "n = " << n << "  q = " << q << "\n";
    for (long n : skipped)
        out << "n = " << n << "  unsupported\n";
    out << "quasi-polynomial: " << qp.to_string() << "\n";
    return 0;
}

int cmd_catalog(bool as_json, std::ostream& out)
{
    const auto entries = catalog_entries();
    if (as_json) {
        json list = json::array();
        for (const auto& e : entries)
            list.push_back({{"name", e.name}, {"summary", e.summary}, {"needs_n", e.needs_n}});
        out << json{{"catalog", list}}.dump(2) << "\n";
        return 0;
    }
    std::size_t width = 0;
    for (const auto& e : entries)
        width = std::max(width, e.name.size());
    for (const auto& e : entries)
        out << std::left << std::setw(static_cast<int>(width) + 2) << e.name << e.summary << "\n";
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mixed multiplier ideals, jumping walls and the irregularity of abelian covers of the plane"};
    app.require_subcommand(1);
    bool as_json = false;
    int threads = 0;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--threads", threads, "cap on worker threads (0: all)");

    Source src;
    std::string method = "faces";
    std::size_t max_faces = 50000;
    std::uint64_t budget = 100'000'000;
    std::string x_text, character, point, exponents, max = "1";
    std::optional<int> degree;
    long n_min = 2, n_max = 12, period = 1;
    int fit_degree = 2;

    auto* walls = app.add_subcommand("walls", "jumping walls of a configuration");
    auto* faces_cmd = app.add_subcommand("faces", "faces of the wall arrangement in [0,1)^t");
    auto* count = app.add_subcommand("count", "characters on each cell of the distinguished faces");
    auto* h1_cmd = app.add_subcommand("h1", "superabundance of the multiplier scheme at a point or character");
    auto* jumping = app.add_subcommand("jumping", "jumping numbers of one singular point");
    auto* irr = app.add_subcommand("irregularity", "irregularity of an abelian cover");
    auto* ehrhart = app.add_subcommand("ehrhart", "quasi-polynomial fit of the irregularity in n");
    auto* catalog = app.add_subcommand("catalog", "builtin examples");
    for (auto* sub : {walls, faces_cmd, count, h1_cmd, jumping, irr, ehrhart, catalog}) {
        sub->add_flag("--json", as_json, "machine-readable output");
        sub->add_option("--threads", threads, "cap on worker threads (0: all)");
    }
    src.add_to(walls, false);
    src.add_to(faces_cmd, false);
    faces_cmd->add_option("--max-faces", max_faces, "abort when the closure grows beyond this");
    src.add_to(count, true);
    count->add_option("--budget", budget, "largest number of lattice points enumerated on one face");
    count->add_option("--max-faces", max_faces, "abort when the closure grows beyond this");
    src.add_to(h1_cmd, true);
    h1_cmd->add_option("--x", x_text, "curve coordinates such as 1/2,1/3,2/3");
    h1_cmd->add_option("--character", character, "character exponents a1,a2,...");
    h1_cmd->add_option("--degree", degree, "twist (default floor(height) - 3)");
    src.add_to(jumping, false);
    jumping->add_option("--point", point, "singular point id");
    jumping->add_option("--exponents", exponents, "exponent of each curve in the ideal (default all 1)");
    jumping->add_option("--max", max, "largest jumping number reported");
    src.add_to(irr, true);
    irr->add_option("--method", method, "direct, faces, triple or all");
    src.add_to(ehrhart, false);
    ehrhart->add_option("--n-min", n_min);
    ehrhart->add_option("--n-max", n_max);
    ehrhart->add_option("--period", period);
    ehrhart->add_option("--degree", fit_degree);
    ehrhart->add_option("--method", method, "direct, faces or triple");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    if (threads > 0)
        omp_set_num_threads(threads);
    try {
        if (*walls)
            return cmd_walls(src, as_json, out);
        if (*faces_cmd)
            return cmd_faces(src, max_faces, as_json, out);
        if (*count)
            return cmd_count(src, budget, max_faces, as_json, out);
        if (*h1_cmd) {
            if (x_text.empty() == character.empty())
                throw InputError("give exactly one of --x and --character");
            return cmd_h1(src, x_text, character, degree, as_json, out);
        }
        if (*jumping)
            return cmd_jumping(src, point, exponents, max, as_json, out);
        if (*irr)
            return cmd_irregularity(src, method, threads, as_json, out);
        if (*ehrhart)
            return cmd_ehrhart(src, n_min, n_max, period, fit_degree, method, threads, as_json, out);
        return cmd_catalog(as_json, out);
    } catch (const UnsupportedInput& e) {
        err << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace multiplane::cli
