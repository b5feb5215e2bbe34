#include <doctest.h>

#include "multiplane/catalog.hpp"
#include "multiplane/covering.hpp"

#include <set>

using namespace multiplane;

namespace {

std::vector<std::vector<long>> all_characters(const std::vector<long>& orders)
{
    std::vector<std::vector<long>> out;
    std::vector<long> a(orders.size(), 0);
    while (true) {
        out.push_back(a);
        std::size_t j = 0;
        while (j < a.size() && ++a[j] == orders[j])
            a[j++] = 0;
        if (j == a.size())
            break;
    }
    return out;
}

// Sum over characters of h1(O(h - 3) x J(x)) with full floors at every
// position and one scheme per character.
BigInt q_oracle(const CoveringSpec& spec)
{
    const auto g = spec.effective_grid();
    const auto& config = *spec.config;
    const auto d = config.degrees();
    BigInt q = 0;
    for (const auto& a : all_characters(g.orders)) {
        const auto x = phi(g, a);
        Fraction h = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
            h += d[i] * x[i];
        if (!is_integer(h))
            continue;
        PointScheme scheme(config.field);
        for (const auto& p : config.points) {
            auto ideal = mixed_mi_cluster_full(*p.cluster, x);
            if (!ideal.is_trivial())
                scheme.add_point(p.coords, ideal);
        }
        q += h1(scheme, static_cast<int>(to_long(floor_of(h))) - 3);
    }
    return q;
}

std::vector<std::size_t> lines_through(const Configuration& c, std::size_t p) { return c.points[p].curves(); }

}  // namespace

TEST_CASE("irregularity methods agree with the character-sum oracle")
{
    struct Case {
        std::string name;
        long n;
        bool triple;
    };
    const std::vector<Case> cases{{"ceva6", 2, true},          {"ceva6", 3, true},
                                  {"ceva6", 4, true},          {"triple-point", 4, true},
                                  {"two-tangent-conics", 5, false}, {"two-tangent-conics", 7, false},
                                  {"two-tangent-conics-split", 4, false}, {"two-tangent-conics-transverse", 4, false},
                                  {"two-tangent-conics-transverse", 8, false}, {"ishida", 5, true},
                                  {"hesse-dual", 3, true}};
    for (const auto& c : cases) {
        CAPTURE(c.name);
        CAPTURE(c.n);
        const auto spec = builtin(c.name, c.n);
        const BigInt want = q_oracle(spec);
        CHECK(irregularity_direct(spec).q == want);
        CHECK(irregularity_faces(spec).q == want);
        if (c.triple)
            CHECK(irregularity_triple(spec).q == want);
        else
            CHECK_THROWS_AS(irregularity_triple(spec), MathError);
    }
}

TEST_CASE("face-parametrized counting gives the same irregularity")
{
    for (const auto& [name, n] : std::vector<std::pair<std::string, long>>{
             {"ceva6", 5}, {"hesse-dual", 4}, {"ishida", 5}, {"two-tangent-conics-split", 9}}) {
        CAPTURE(name);
        const auto spec = builtin(name, n);
        IrregularityOptions by_face;
        by_face.threshold = 0;
        const auto swept = irregularity_faces(spec);
        const auto counted = irregularity_faces(spec, by_face);
        CHECK(counted.q == swept.q);
        BigInt sum = 0;
        for (const auto& c : counted.contributions)
            sum += c.characters * c.h1;
        CHECK(sum == counted.q);
    }
}

TEST_CASE("serial and parallel irregularity agree")
{
    const auto spec = builtin("hesse-dual", 3);
    IrregularityOptions serial;
    serial.sweep.parallel = false;
    IrregularityOptions threads;
    threads.sweep.threads = 3;
    for (Method m : {Method::direct, Method::faces, Method::triple}) {
        const auto a = irregularity(spec, m, serial);
        const auto b = irregularity(spec, m, threads);
        CHECK(a.q == b.q);
        REQUIRE(a.contributions.size() == b.contributions.size());
        for (std::size_t i = 0; i < a.contributions.size(); ++i) {
            CHECK(a.contributions[i].characters == b.contributions[i].characters);
            CHECK(a.contributions[i].representative == b.contributions[i].representative);
        }
    }
}

TEST_CASE("unbranched line at infinity is rejected")
{
    for (long n : {2L, 4L}) {
        const auto spec = builtin("two-tangent-conics", n);
        CHECK_THROWS_AS(irregularity_direct(spec), UnsupportedInput);
        CHECK_THROWS_AS(irregularity_faces(spec), UnsupportedInput);
    }
    CHECK_NOTHROW(irregularity_direct(builtin("two-tangent-conics", 3)));
}

TEST_CASE("triple-point formula needs multiplicity at most three")
{
    CHECK_THROWS_AS(irregularity_triple(builtin("hesse-pencil", 2)), MathError);
}

TEST_CASE("connectedness of the cover")
{
    CoveringSpec spec = builtin("two-tangent-conics-transverse", 4);
    CHECK(irregularity_direct(spec).connected);
    spec.grid.matrix = {{2}};
    CHECK_FALSE(irregularity_direct(spec).connected);
}

TEST_CASE("line bundles of characters")
{
    // cyclic 3-cover of a quartic with a transverse line: L has degree ceil(4/3)
    const auto cyclic = BuildingData::from_spec(builtin("two-tangent-conics-transverse", 3));
    CHECK(cyclic.relations_hold());
    const long one[1] = {1};
    CHECK(l_chi(cyclic, one).degree == 2);
    const long zero[1] = {0};
    CHECK(l_chi(cyclic, zero).is_trivial());

    const auto spec = builtin("ishida", 5);
    const auto data = BuildingData::from_spec(spec);
    CHECK(data.relations_hold());
    const long e1[3] = {1, 0, 0};
    const auto c1 = l_chi(data, e1);
    CHECK(c1.degree == 1);
    CHECK(c1.subtracted.empty());

    // the degree of L_chi is the height of phi(chi) in component mode
    const auto g = spec.effective_grid();
    const auto d = spec.config->degrees();
    for (const auto& a : all_characters(g.orders)) {
        const auto x = phi(g, a);
        Fraction h = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
            h += d[i] * x[i];
        CHECK(l_chi(data, a).degree == h);
    }
}

TEST_CASE("normalization step on a shared component")
{
    BuildingData data;
    data.orders = {6};
    data.curve_degrees = {{"C", 1}, {"A", 1}, {"B", 2}};
    data.parts.push_back({"f", 2, {{"C", 1}, {"A", 1}}, {1}});
    data.parts.push_back({"g", 3, {{"C", 1}, {"B", 1}}, {2}});
    // 6L = 3 B_f + 4 B_g
    data.bundle_degrees = {Fraction(3)};
    CHECK(data.relations_hold());

    const long one[1] = {1};
    const auto c = normalize_step(data, "C", "f", "g", one);
    REQUIRE(c.subtracted.count("C") == 1);
    CHECK(c.subtracted.at("C") == 1);
    CHECK(c.subtracted.count("A") == 0);
    CHECK(c.subtracted.count("B") == 0);
    CHECK(c.degree == 2);

    for (long a = 0; a < 6; ++a) {
        const long aa[1] = {a};
        const auto s = normalize_step(data, "C", "f", "g", aa);
        auto coeff = [&](const std::string& k) {
            auto it = s.subtracted.find(k);
            return it == s.subtracted.end() ? BigInt(0) : it->second;
        };
        CHECK(coeff("C") == to_long(floor_of(make_fraction(a, 2) + make_fraction(2 * a, 3))));
        CHECK(coeff("A") == a / 2);
        CHECK(coeff("B") == 2 * a / 3);
    }
    const long zero[1] = {0};
    CHECK(normalize_step(data, "C", "f", "g", zero).is_trivial());

    data.parts[0].divisor["C"] = 2;
    CHECK_THROWS_AS(normalize_step(data, "C", "f", "g", one), MathError);

    BuildingData broken = data;
    broken.parts[0].divisor["C"] = 1;
    broken.bundle_degrees = {Fraction(4)};
    CHECK_FALSE(broken.relations_hold());
}

TEST_CASE("building data from builtin specs")
{
    for (const auto& e : catalog_entries()) {
        const auto spec = builtin(e.name, e.needs_n ? 5 : 0);
        const auto data = BuildingData::from_spec(spec);
        CHECK(data.relations_hold());
        const bool has_inf = std::any_of(data.parts.begin(), data.parts.end(),
                                         [](const BranchPart& p) { return p.label == "Hinf"; });
        CHECK(has_inf == (spec.infinity == InfinityMode::transverse));
    }
}

TEST_CASE("incidences of the catalog arrangements")
{
    const auto ceva = ceva_configuration();
    std::multiset<long> ceva_mult;
    for (const auto& p : ceva.points)
        ceva_mult.insert(p.multiplicity());
    CHECK(ceva_mult == std::multiset<long>{2, 2, 2, 3, 3, 3, 3});

    const auto dual = hesse_dual_configuration();
    REQUIRE(dual.points.size() == 12);
    for (const auto& p : dual.points)
        CHECK(p.multiplicity() == 3);
    for (std::size_t i = 0; i < dual.curves.size(); ++i) {
        long through = 0;
        for (std::size_t p = 0; p < dual.points.size(); ++p) {
            auto ls = lines_through(dual, p);
            through += std::count(ls.begin(), ls.end(), i);
        }
        CHECK(through == 4);
    }
    // triples of points with no arrangement line through any two of them
    auto joined = [&](std::size_t p, std::size_t q) {
        auto a = lines_through(dual, p), b = lines_through(dual, q);
        for (auto l : a)
            if (std::find(b.begin(), b.end(), l) != b.end())
                return true;
        return false;
    };
    long triples = 0;
    std::set<std::size_t> covered;
    for (std::size_t p = 0; p < 12; ++p)
        for (std::size_t q = p + 1; q < 12; ++q)
            for (std::size_t r = q + 1; r < 12; ++r)
                if (!joined(p, q) && !joined(p, r) && !joined(q, r)) {
                    ++triples;
                    covered.insert({p, q, r});
                }
    CHECK(triples == 4);
    CHECK(covered.size() == 12);

    const auto pencil = hesse_pencil_configuration();
    std::multiset<long> pencil_mult;
    for (const auto& p : pencil.points)
        pencil_mult.insert(p.multiplicity());
    CHECK(pencil_mult.count(4) == 9);
    CHECK(pencil_mult.count(2) == 12);
    CHECK(pencil_mult.size() == 21);

    // Ceva subarrangements: six lines with four points where exactly three of
    // them meet, each line through two of those points
    long ceva_count = 0;
    const std::size_t t = pencil.curves.size();
    for (unsigned mask = 0; mask < (1u << t); ++mask) {
        if (__builtin_popcount(mask) != 6)
            continue;
        std::vector<long> per_line(t, 0);
        long triple_points = 0;
        bool ok = true;
        for (std::size_t p = 0; p < pencil.points.size(); ++p) {
            long inside = 0;
            for (auto l : lines_through(pencil, p))
                inside += (mask >> l) & 1u;
            if (inside == 3) {
                ++triple_points;
                for (auto l : lines_through(pencil, p))
                    if ((mask >> l) & 1u)
                        ++per_line[l];
            } else if (inside > 3) {
                ok = false;
            }
        }
        for (std::size_t l = 0; l < t; ++l)
            if (((mask >> l) & 1u) && per_line[l] != 2)
                ok = false;
        if (ok && triple_points == 4)
            ++ceva_count;
    }
    CHECK(ceva_count == 54);
}

TEST_CASE("contributions of the Ishida example")
{
    const auto spec = builtin("ishida", 5);
    const auto res = irregularity_faces(spec);
    CHECK(res.q == 10);
    REQUIRE(res.contributions.size() == 5);
    for (const auto& c : res.contributions) {
        CHECK(c.characters == 2);
        CHECK(c.h1 == 1);
    }
    // characters on every wall at once
    const auto g = spec.effective_grid();
    std::set<std::vector<long>> big;
    for (const auto& a : all_characters(g.orders)) {
        const auto x = phi(g, a);
        bool all = true;
        for (std::size_t w = 0; w < res.arrangement.wall_count; ++w)
            all = all && res.arrangement.side(w, x) == 0;
        if (all)
            big.insert(a);
    }
    CHECK(big == std::set<std::vector<long>>{{2, 4, 4}, {4, 3, 3}});
}
