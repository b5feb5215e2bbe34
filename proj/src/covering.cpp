#include "multiplane/covering.hpp"

#include "multiplane/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace multiplane {

void CoveringSpec::validate() const
{
    if (!config)
        throw MathError("covering without a configuration");
    const std::size_t t = config->curves.size();
    if (t == 0)
        throw MathError("the configuration has no curves");
    grid.validate(t);
    for (const auto& c : config->curves)
        if (c.degree < 1)
            throw MathError("curve " + c.name + " must have positive degree");
    for (const auto& p : config->points) {
        if (!p.cluster || p.cluster->curve_count() != t)
            throw MathError("point " + p.id + " needs a cluster over all curves");
        if (p.curves().empty())
            throw MathError("point " + p.id + " lies on no curve");
    }
    if (infinity == InfinityMode::component) {
        if (infinity_curve < 0 || static_cast<std::size_t>(infinity_curve) >= t)
            throw MathError("the infinity curve is not a listed curve");
        if (config->curves[static_cast<std::size_t>(infinity_curve)].degree != 1)
            throw MathError("the infinity curve must be a line");
        bool through = false;
        for (const auto& p : config->points)
            if (p.cluster->position(0).multiplicities[static_cast<std::size_t>(infinity_curve)] > 0)
                through = true;
        if (!through)
            throw MathError("the infinity line passes through no singular point");
    } else if (infinity_curve != -1) {
        throw MathError("a transverse line at infinity is not one of the curves");
    }
}

std::vector<long> CoveringSpec::infinity_multiplicities() const
{
    const auto d = config->degrees();
    std::vector<long> mu0;
    for (std::size_t j = 0; j < grid.orders.size(); ++j) {
        const long n = grid.orders[j];
        long s = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
            s += (grid.matrix[j][i] % n) * d[i];
        mu0.push_back((s + n - 1) / n * n - s);
    }
    return mu0;
}

CharacterGrid CoveringSpec::effective_grid() const
{
    CharacterGrid g = grid;
    for (std::size_t j = 0; j < g.orders.size(); ++j)
        for (auto& v : g.matrix[j])
            v %= g.orders[j];
    if (infinity == InfinityMode::transverse)
        return g;
    const auto mu0 = infinity_multiplicities();
    const auto inf = static_cast<std::size_t>(infinity_curve);
    bool branched = false;
    for (std::size_t j = 0; j < g.orders.size(); ++j) {
        g.matrix[j][inf] = (g.matrix[j][inf] + mu0[j]) % g.orders[j];
        if (g.matrix[j][inf] != 0)
            branched = true;
    }
    if (!branched)
        throw UnsupportedInput("the covering is not branched along the line at infinity; run it in transverse mode");
    return g;
}

// ---------------------------------------------------------------------------

bool BuildingData::relations_hold() const
{
    for (std::size_t j = 0; j < orders.size(); ++j) {
        Fraction rhs = 0;
        for (const auto& part : parts) {
            long deg = 0;
            for (const auto& [curve, mult] : part.divisor)
                deg += mult * curve_degrees.at(curve);
            rhs += make_fraction(orders[j] * part.values[j], part.order) * deg;
        }
        if (orders[j] * bundle_degrees[j] != rhs)
            return false;
    }
    return true;
}

BuildingData BuildingData::from_spec(const CoveringSpec& spec)
{
    spec.validate();
    const CharacterGrid g = spec.effective_grid();
    BuildingData data;
    data.orders = g.orders;
    const auto& curves = spec.config->curves;
    for (const auto& c : curves)
        data.curve_degrees[c.name] = c.degree;
    auto add_part = [&](const std::string& name, const std::vector<long>& column) {
        long m = 1;
        for (std::size_t j = 0; j < column.size(); ++j)
            m = std::lcm(m, g.orders[j] / std::gcd(column[j], g.orders[j]));
        if (m == 1)
            return;
        BranchPart part{name, m, {{name, 1}}, {}};
        for (std::size_t j = 0; j < column.size(); ++j)
            part.values.push_back(column[j] * m / g.orders[j]);
        data.parts.push_back(std::move(part));
    };
    for (std::size_t i = 0; i < curves.size(); ++i) {
        std::vector<long> column;
        for (std::size_t j = 0; j < g.orders.size(); ++j)
            column.push_back(g.matrix[j][i]);
        add_part(curves[i].name, column);
    }
    std::vector<long> mu0(g.orders.size(), 0);
    if (spec.infinity == InfinityMode::transverse) {
        mu0 = spec.infinity_multiplicities();
        data.curve_degrees["Hinf"] = 1;
        add_part("Hinf", mu0);
    }
    const auto d = spec.config->degrees();
    for (std::size_t j = 0; j < g.orders.size(); ++j) {
        long s = mu0[j];
        for (std::size_t i = 0; i < d.size(); ++i)
            s += g.matrix[j][i] * d[i];
        data.bundle_degrees.push_back(make_fraction(s, g.orders[j]));
    }
    return data;
}

namespace {

BigInt floor_sum(const BranchPart& part, std::span<const long> a)
{
    BigInt s = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        s += BigInt(a[j]) * part.values[j];
    return floor_of(Fraction(s, part.order));
}

long divisor_degree(const BuildingData& data, const std::map<std::string, long>& divisor)
{
    long deg = 0;
    for (const auto& [curve, mult] : divisor)
        deg += mult * data.curve_degrees.at(curve);
    return deg;
}

void subtract(DivisorClass& c, const BuildingData& data, const std::map<std::string, long>& divisor,
              const BigInt& times)
{
    if (times == 0)
        return;
    c.degree -= Fraction(times * divisor_degree(data, divisor));
    for (const auto& [curve, mult] : divisor)
        if (mult != 0)
            c.subtracted[curve] += times * mult;
}

DivisorClass base_class(const BuildingData& data, std::span<const long> a)
{
    if (a.size() != data.orders.size())
        throw MathError("character has the wrong length");
    DivisorClass c;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] < 0 || a[j] >= data.orders[j])
            throw MathError("character coordinate out of range");
        c.degree += data.bundle_degrees[j] * a[j];
    }
    return c;
}

const BranchPart& find_part(const BuildingData& data, const std::string& label)
{
    for (const auto& p : data.parts)
        if (p.label == label)
            return p;
    throw MathError("no branch part labelled " + label);
}

}  // namespace

DivisorClass l_chi(const BuildingData& data, std::span<const long> a)
{
    DivisorClass c = base_class(data, a);
    for (const auto& part : data.parts)
        subtract(c, data, part.divisor, floor_sum(part, a));
    return c;
}

DivisorClass normalize_step(const BuildingData& data, const std::string& curve, const std::string& f,
                            const std::string& g, std::span<const long> a)
{
    const BranchPart& pf = find_part(data, f);
    const BranchPart& pg = find_part(data, g);
    auto mult = [&](const BranchPart& p) {
        auto it = p.divisor.find(curve);
        return it == p.divisor.end() ? 0L : it->second;
    };
    if (mult(pf) != 1 || mult(pg) != 1)
        throw MathError(curve + " must have multiplicity one in both branch parts");
    DivisorClass c = base_class(data, a);
    Fraction both = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        both += make_fraction(a[j] * pf.values[j], pf.order) + make_fraction(a[j] * pg.values[j], pg.order);
    subtract(c, data, {{curve, 1}}, floor_of(both));
    for (const BranchPart* p : {&pf, &pg}) {
        auto rest = p->divisor;
        rest[curve] -= 1;
        subtract(c, data, rest, floor_sum(*p, a));
    }
    for (const auto& part : data.parts)
        if (part.label != f && part.label != g)
            subtract(c, data, part.divisor, floor_sum(part, a));
    return c;
}

// ---------------------------------------------------------------------------

std::string method_name(Method m)
{
    switch (m) {
    case Method::direct:
        return "direct";
    case Method::faces:
        return "faces";
    case Method::triple:
        return "triple";
    }
    return "?";
}

PointScheme multiplier_scheme(const Configuration& config, std::span<const Fraction> x)
{
    PointScheme scheme(config.field);
    for (const auto& p : config.points) {
        ClusterIdeal ideal = mixed_mi_cluster(*p.cluster, x);
        if (!ideal.is_trivial())
            scheme.add_point(p.coords, ideal);
    }
    return scheme;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<long>& v) const
    {
        std::size_t h = v.size();
        for (long x : v)
            h ^= std::hash<long>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct Entry {
    std::uint64_t count = 0;
    std::vector<long> rep;
};

using Tally = std::unordered_map<std::vector<long>, Entry, VecHash>;

void record(Tally& tally, const std::vector<long>& key, const std::vector<long>& a)
{
    auto it = tally.find(key);
    if (it == tally.end()) {
        tally.emplace(key, Entry{1, a});
        return;
    }
    ++it->second.count;
    if (a < it->second.rep)
        it->second.rep = a;
}

Tally merge(std::vector<Tally>& parts)
{
    Tally out;
    for (auto& part : parts)
        for (auto& [key, e] : part) {
            auto it = out.find(key);
            if (it == out.end()) {
                out.emplace(key, std::move(e));
                continue;
            }
            it->second.count += e.count;
            if (e.rep < it->second.rep)
                it->second.rep = e.rep;
        }
    return out;
}

// Relevant positions of one point with their valuations.
struct PointData {
    const ResolutionCluster* cluster;
    std::vector<std::size_t> rel;
    std::vector<std::vector<long>> e;  // per relevant position, per curve
    std::vector<long> k;
};

std::vector<PointData> point_data(const Configuration& config)
{
    std::vector<PointData> out;
    for (const auto& p : config.points) {
        PointData pd{p.cluster.get(), p.cluster->relevant_positions(), {}, {}};
        for (std::size_t r : pd.rel) {
            std::vector<long> e(config.curves.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = p.cluster->e(i, r);
            pd.e.push_back(e);
            pd.k.push_back(p.cluster->k(r));
        }
        out.push_back(std::move(pd));
    }
    return out;
}

// Appends c at every relevant position; returns false when all vanish.
bool append_orders(const std::vector<PointData>& pts, const std::vector<long>& X, long N, std::vector<long>& key)
{
    bool any = false;
    for (const auto& pd : pts)
        for (std::size_t r = 0; r < pd.rel.size(); ++r) {
            long s = 0;
            for (std::size_t i = 0; i < X.size(); ++i)
                s += pd.e[r][i] * X[i];
            const long c = std::max(0L, s / N - pd.k[r]);
            key.push_back(c);
            any = any || c > 0;
        }
    return any;
}

PointScheme scheme_from_orders(const Configuration& config, const std::vector<PointData>& pts,
                               std::span<const long> orders, std::vector<std::size_t>* used = nullptr)
{
    PointScheme scheme(config.field);
    std::size_t pos = 0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
        ClusterIdeal ideal{pts[p].cluster, std::vector<long>(pts[p].cluster->size(), 0)};
        for (std::size_t r = 0; r < pts[p].rel.size(); ++r)
            ideal.c[pts[p].rel[r]] = orders[pos++];
        if (!ideal.is_trivial()) {
            scheme.add_point(config.points[p].coords, ideal);
            if (used)
                used->push_back(p);
        }
    }
    return scheme;
}

long weighted_sum(std::span<const long> d, const std::vector<long>& X)
{
    long s = 0;
    for (std::size_t i = 0; i < X.size(); ++i)
        s += d[i] * X[i];
    return s;
}

struct Evaluated {
    long h1 = 0;
    std::vector<std::size_t> points;
};

template <typename Job>
std::vector<Evaluated> evaluate_all(std::size_t n, const SweepOptions& opt, Job job)
{
    std::vector<Evaluated> out(n);
    const auto count = static_cast<std::int64_t>(n);
    if (opt.parallel) {
        const int workers = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (std::int64_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] = job(static_cast<std::size_t>(k));
    } else {
        for (std::int64_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] = job(static_cast<std::size_t>(k));
    }
    return out;
}

std::vector<std::pair<std::vector<long>, Entry>> sorted(Tally&& tally)
{
    std::vector<std::pair<std::vector<long>, Entry>> v(std::make_move_iterator(tally.begin()),
                                                       std::make_move_iterator(tally.end()));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

void check_size(const CharacterGrid& g, std::uint64_t limit)
{
    if (g.character_count() > BigInt(static_cast<unsigned long>(limit)))
        throw MathError("too many characters (" + g.character_count().get_str() + ") for a full sweep");
}

// ---------------------------------------------------------------------------

void run_direct(const CoveringSpec& spec, const CharacterGrid& g, const IrregularityOptions& opt,
                IrregularityResult& res)
{
    const Configuration& config = *spec.config;
    const auto pts = point_data(config);
    const auto d = config.degrees();
    const long N = g.modulus();
    check_size(g, opt.threshold);
    auto states = sweep_characters<Tally>(
        g.layout(), opt.sweep, [] { return Tally{}; },
        [&](Tally& tally, const std::vector<long>& a, const std::vector<long>& X) {
            const long D = weighted_sum(d, X);
            if (D % N != 0)
                return;
            thread_local std::vector<long> key;
            key.clear();
            key.push_back(D / N);
            if (append_orders(pts, X, N, key))
                record(tally, key, a);
        });
    auto groups = sorted(merge(states));
    auto values = evaluate_all(groups.size(), opt.sweep, [&](std::size_t k) {
        const auto& key = groups[k].first;
        Evaluated ev;
        PointScheme scheme = scheme_from_orders(config, pts, std::span<const long>(key).subspan(1), &ev.points);
        ev.h1 = h1(scheme, static_cast<int>(key[0]) - 3);
        return ev;
    });
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (values[k].h1 == 0)
            continue;
        const auto& [key, e] = groups[k];
        Contribution c;
        c.ideal_points = values[k].points;
        c.twist = key[0] - 3;
        c.h1 = values[k].h1;
        c.characters = BigInt(static_cast<unsigned long>(e.count));
        c.representative = e.rep;
        std::ostringstream label;
        label << "twist " << c.twist << ", ideals at";
        for (std::size_t p : c.ideal_points)
            label << " " << config.points[p].id;
        c.label = label.str();
        res.q += c.characters * c.h1;
        res.contributions.push_back(std::move(c));
    }
}

// Cell keys: on-mask words followed by positive-side words.
void run_faces(const CoveringSpec& spec, const CharacterGrid& g, const IrregularityOptions& opt,
               IrregularityResult& res)
{
    const Configuration& config = *spec.config;
    const auto pts = point_data(config);
    const auto d = config.degrees();
    const long N = g.modulus();
    res.walls = all_walls(config);
    res.arrangement = Arrangement::from_walls(res.walls, config.curves.size());
    const Arrangement& arr = res.arrangement;
    const std::size_t H = arr.size();
    const std::size_t words = (H + 63) / 64;

    struct CellGroup {
        std::vector<std::size_t> on;
        std::vector<long> rep_a;     // character, when known
        std::vector<long> rep_X;
        BigInt count;
    };
    std::vector<CellGroup> groups;

    if (g.character_count() <= BigInt(static_cast<unsigned long>(opt.threshold))) {
        // sparse normals
        std::vector<std::vector<std::pair<std::size_t, long>>> sparse(H);
        for (std::size_t h = 0; h < H; ++h)
            for (std::size_t i = 0; i < arr.dim; ++i)
                if (arr.normals[h][i] != 0)
                    sparse[h].emplace_back(i, arr.normals[h][i]);
        struct State {
            Tally tally;
            std::unordered_map<std::vector<long>, bool, VecHash> distinguished;
        };
        auto states = sweep_characters<State>(
            g.layout(), opt.sweep, [] { return State{}; },
            [&](State& st, const std::vector<long>& a, const std::vector<long>& X) {
                thread_local std::vector<long> key, on_key;
                key.assign(2 * words, 0);
                bool on_wall = false;
                for (std::size_t h = 0; h < H; ++h) {
                    long v = -arr.rhs[h] * N;
                    for (const auto& [i, c] : sparse[h])
                        v += c * X[i];
                    if (v == 0) {
                        key[h / 64] |= static_cast<long>(1ULL << (h % 64));
                        on_wall = on_wall || arr.is_wall(h);
                    } else if (v > 0) {
                        key[words + h / 64] |= static_cast<long>(1ULL << (h % 64));
                    }
                }
                if (!on_wall)
                    return;
                on_key.assign(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(words));
                auto it = st.distinguished.find(on_key);
                if (it == st.distinguished.end()) {
                    std::vector<std::size_t> on;
                    for (std::size_t h = 0; h < H; ++h)
                        if (static_cast<unsigned long>(on_key[h / 64]) >> (h % 64) & 1ULL)
                            on.push_back(h);
                    it = st.distinguished.emplace(on_key, is_distinguished(arr, on, d)).first;
                }
                if (it->second)
                    record(st.tally, key, a);
            });
        std::vector<Tally> tallies;
        for (auto& st : states)
            tallies.push_back(std::move(st.tally));
        for (auto& [key, e] : sorted(merge(tallies))) {
            CellGroup cg;
            for (std::size_t h = 0; h < H; ++h)
                if (static_cast<unsigned long>(key[h / 64]) >> (h % 64) & 1ULL)
                    cg.on.push_back(h);
            cg.rep_a = e.rep;
            cg.rep_X = g.image(e.rep);
            cg.count = BigInt(static_cast<unsigned long>(e.count));
            groups.push_back(std::move(cg));
        }
    } else {
        for (const auto& face : faces(arr, d, opt.max_faces)) {
            if (!face.distinguished)
                continue;
            for (auto& [cell, count] : face_cells(arr, face, g, opt.face_budget)) {
                CellGroup cg;
                cg.on = face.on;
                for (const auto& v : cell.representative)
                    cg.rep_X.push_back(to_long(floor_of(v * N)));
                cg.count = count;
                groups.push_back(std::move(cg));
            }
        }
        std::sort(groups.begin(), groups.end(),
                  [](const CellGroup& a, const CellGroup& b) { return std::tie(a.on, a.rep_X) < std::tie(b.on, b.rep_X); });
    }

    std::map<std::vector<std::size_t>, bool> distinguished;
    for (const auto& cg : groups)
        if (!distinguished.count(cg.on))
            distinguished[cg.on] = is_distinguished(arr, cg.on, d);

    auto values = evaluate_all(groups.size(), opt.sweep, [&](std::size_t k) {
        const auto& cg = groups[k];
        Evaluated ev;
        const long D = weighted_sum(d, cg.rep_X);
        if (!distinguished.at(cg.on) || D % N != 0)
            return ev;
        std::vector<long> orders;
        if (!append_orders(pts, cg.rep_X, N, orders))
            return ev;
        PointScheme scheme = scheme_from_orders(config, pts, orders, &ev.points);
        ev.h1 = h1(scheme, static_cast<int>(D / N) - 3);
        return ev;
    });
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (values[k].h1 == 0)
            continue;
        auto& cg = groups[k];
        Contribution c;
        c.on = cg.on;
        c.ideal_points = values[k].points;
        c.twist = weighted_sum(d, cg.rep_X) / N - 3;
        c.h1 = values[k].h1;
        c.characters = cg.count;
        c.representative = cg.rep_a;
        std::ostringstream label;
        for (std::size_t q = 0; q < cg.on.size(); ++q)
            label << (q ? "; " : "") << hyperplane_text(arr, cg.on[q], config, res.walls);
        c.label = label.str();
        res.q += c.characters * c.h1;
        res.contributions.push_back(std::move(c));
    }
}

void run_triple(const CoveringSpec& spec, const CharacterGrid& g, const IrregularityOptions& opt,
                IrregularityResult& res)
{
    const Configuration& config = *spec.config;
    for (const auto& c : config.curves)
        if (c.degree != 1)
            throw MathError("the triple-point formula needs a line arrangement");
    std::vector<std::size_t> triples;
    std::vector<std::vector<std::size_t>> lines_of;
    for (std::size_t p = 0; p < config.points.size(); ++p) {
        const auto& pt = config.points[p];
        const long m = pt.multiplicity();
        if (m >= 4)
            throw MathError("point " + pt.id + " has multiplicity " + std::to_string(m) +
                            "; use the faces method");
        if (pt.cluster->size() != 1)
            throw MathError("point " + pt.id + " is not an ordinary point");
        if (m == 3) {
            triples.push_back(p);
            lines_of.push_back(pt.curves());
        }
    }
    const long N = g.modulus();
    const std::size_t T = triples.size();
    const std::size_t t = config.curves.size();
    if (T > 62)
        throw MathError("too many triple points for the triple-point formula");
    check_size(g, opt.threshold);
    auto states = sweep_characters<Tally>(
        g.layout(), opt.sweep, [] { return Tally{}; },
        [&](Tally& tally, const std::vector<long>& a, const std::vector<long>& X) {
            thread_local std::vector<long> key;
            thread_local std::vector<char> in_aw;
            key.assign(2, 0);
            in_aw.assign(t, 0);
            long on = 0, z = 0;
            for (std::size_t q = 0; q < T; ++q) {
                long s = 0;
                for (std::size_t i : lines_of[q])
                    s += X[i];
                if (s >= 2 * N)
                    z |= 1L << q;
                if (s == 2 * N) {
                    on |= 1L << q;
                    for (std::size_t i : lines_of[q])
                        in_aw[i] = 1;
                }
            }
            if (on == 0)
                return;
            long deg = 0, total = 0;
            for (std::size_t i = 0; i < t; ++i) {
                if (!in_aw[i] && X[i] != 0)
                    return;
                if (in_aw[i])
                    ++deg;
                total += X[i];
            }
            if (3 * total != 2 * deg * N)
                return;
            key[0] = on;
            key[1] = z;
            record(tally, key, a);
        });
    auto groups = sorted(merge(states));
    auto values = evaluate_all(groups.size(), opt.sweep, [&](std::size_t k) {
        const long on = groups[k].first[0], z = groups[k].first[1];
        Evaluated ev;
        std::vector<bool> in_aw(t, false);
        for (std::size_t q = 0; q < T; ++q)
            if (on >> q & 1)
                for (std::size_t i : lines_of[q])
                    in_aw[i] = true;
        const long deg = std::count(in_aw.begin(), in_aw.end(), true);
        if (2 * deg % 3 != 0)
            return ev;
        PointScheme scheme(config.field);
        for (std::size_t q = 0; q < T; ++q)
            if (z >> q & 1) {
                const auto& pt = config.points[triples[q]];
                scheme.add_point(pt.coords, ClusterIdeal{pt.cluster.get(), {1}});
                ev.points.push_back(triples[q]);
            }
        ev.h1 = h1(scheme, static_cast<int>(2 * deg / 3) - 3);
        return ev;
    });
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (values[k].h1 == 0)
            continue;
        const auto& [key, e] = groups[k];
        Contribution c;
        std::ostringstream label;
        label << "A_W through";
        for (std::size_t q = 0; q < T; ++q)
            if (key[0] >> q & 1) {
                c.on.push_back(triples[q]);
                label << " " << config.points[triples[q]].id;
            }
        c.ideal_points = values[k].points;
        label << "; Z =";
        for (std::size_t p : c.ideal_points)
            label << " " << config.points[p].id;
        c.label = label.str();
        c.h1 = values[k].h1;
        c.characters = BigInt(static_cast<unsigned long>(e.count));
        c.representative = e.rep;
        long deg = 0;
        std::vector<bool> in_aw(t, false);
        for (std::size_t p : c.on)
            for (std::size_t i : config.points[p].curves())
                in_aw[i] = true;
        deg = std::count(in_aw.begin(), in_aw.end(), true);
        c.twist = 2 * deg / 3 - 3;
        res.q += c.characters * c.h1;
        res.contributions.push_back(std::move(c));
    }
}

}  // namespace

IrregularityResult irregularity(const CoveringSpec& spec, Method method, const IrregularityOptions& opt)
{
    spec.validate();
    const CharacterGrid g = spec.effective_grid();
    IrregularityResult res;
    res.method = method;
    res.connected = GridImage(g).fibre_size() == 1;
    switch (method) {
    case Method::direct:
        run_direct(spec, g, opt, res);
        break;
    case Method::faces:
        run_faces(spec, g, opt, res);
        break;
    case Method::triple:
        run_triple(spec, g, opt, res);
        break;
    }
    return res;
}

}  // namespace multiplane
