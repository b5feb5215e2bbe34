#include "multiplane/catalog.hpp"

#include "multiplane/cohomology.hpp"

#include <memory>

namespace multiplane {

Configuration arrangement_geometry(const ArrangementInput& input)
{
    const FieldPtr& K = input.field;
    const std::size_t t = input.lines.size();
    if (input.names.size() != t)
        throw MathError("every line needs a name");
    std::vector<std::array<FieldElement, 3>> lines;
    for (const auto& l : input.lines) {
        std::array<FieldElement, 3> e{embed(l[0], K), embed(l[1], K), embed(l[2], K)};
        if (e[0].is_zero() && e[1].is_zero() && e[2].is_zero())
            throw MathError("a line needs a nonzero equation");
        lines.push_back(e);
    }
    std::vector<std::vector<FieldElement>> coords;
    std::vector<std::vector<std::size_t>> through;
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            const auto& a = lines[i];
            const auto& b = lines[j];
            std::vector<FieldElement> p{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                        a[0] * b[1] - a[1] * b[0]};
            if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero())
                throw MathError("lines " + input.names[i] + " and " + input.names[j] + " coincide");
            p = normalize_point(std::move(p));
            std::size_t k = 0;
            while (k < coords.size() && coords[k] != p)
                ++k;
            if (k == coords.size()) {
                coords.push_back(p);
                through.emplace_back();
            }
            for (std::size_t l : {i, j})
                if (std::find(through[k].begin(), through[k].end(), l) == through[k].end())
                    through[k].push_back(l);
        }
    Configuration config;
    config.field = K;
    for (std::size_t i = 0; i < t; ++i)
        config.curves.push_back({input.names[i], 1});
    config.lines = lines;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        std::sort(through[k].begin(), through[k].end());
        const std::string id = "P" + std::to_string(k + 1);
        config.points.push_back(
            {id, coords[k], std::make_shared<ResolutionCluster>(ResolutionCluster::ordinary_point(id, t, through[k]))});
    }
    return config;
}

namespace {

FieldElement q(const FieldPtr& K, long v) { return FieldElement(K, Fraction(v)); }

ArrangementInput lines_over(const FieldPtr& K, const std::vector<std::array<FieldElement, 3>>& lines)
{
    ArrangementInput in;
    in.field = K;
    in.lines = lines;
    for (std::size_t i = 0; i < lines.size(); ++i)
        in.names.push_back("C" + std::to_string(i + 1));
    return in;
}

std::vector<FieldElement> omega_powers(const FieldPtr& K)
{
    const FieldElement w = FieldElement::generator(K);
    return {q(K, 1), w, w * w};
}

CoveringSpec identity_covering(Configuration config, long n, std::size_t infinity)
{
    CoveringSpec spec;
    const std::size_t t = config.curves.size();
    spec.grid.orders.assign(t - 1, n);
    for (std::size_t j = 0, i = 0; i < t; ++i) {
        if (i == infinity)
            continue;
        std::vector<long> row(t, 0);
        row[i] = 1;
        spec.grid.matrix.push_back(row);
        ++j;
    }
    spec.infinity = InfinityMode::component;
    spec.infinity_curve = static_cast<int>(infinity);
    spec.config = std::make_shared<const Configuration>(std::move(config));
    return spec;
}

}  // namespace

Configuration ceva_configuration()
{
    const auto K = NumberField::rationals();
    auto l = [&](long a, long b, long c) { return std::array<FieldElement, 3>{q(K, a), q(K, b), q(K, c)}; };
    // y, x, z, x - y, y - z, z - x
    return arrangement_geometry(lines_over(K, {l(0, 1, 0), l(1, 0, 0), l(0, 0, 1), l(1, -1, 0), l(0, 1, -1), l(-1, 0, 1)}));
}

Configuration hesse_pencil_configuration()
{
    const auto K = NumberField::eisenstein();
    const auto w = omega_powers(K);
    std::vector<std::array<FieldElement, 3>> lines{{q(K, 1), q(K, 0), q(K, 0)},
                                                   {q(K, 0), q(K, 1), q(K, 0)},
                                                   {q(K, 0), q(K, 0), q(K, 1)}};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            lines.push_back({q(K, 1), w[static_cast<std::size_t>(a)], w[static_cast<std::size_t>(b)]});
    return arrangement_geometry(lines_over(K, lines));
}

Configuration hesse_dual_configuration()
{
    const auto K = NumberField::eisenstein();
    const auto w = omega_powers(K);
    std::vector<std::array<FieldElement, 3>> lines;
    for (int k = 0; k < 3; ++k)
        lines.push_back({q(K, 0), q(K, 1), -w[static_cast<std::size_t>(k)]});
    for (int k = 0; k < 3; ++k)
        lines.push_back({q(K, 1), q(K, 0), -w[static_cast<std::size_t>(k)]});
    for (int k = 0; k < 3; ++k)
        lines.push_back({q(K, 1), -w[static_cast<std::size_t>(k)], q(K, 0)});
    return arrangement_geometry(lines_over(K, lines));
}

Configuration tangent_conics_configuration(bool split, bool with_line)
{
    // x^2 - yz and x^2 - 2yz meet at P = (0:1:0) and Q = (0:0:1) with the
    // common tangent v = 0; the line x = 0 passes through both points.
    const auto K = NumberField::rationals();
    Configuration config;
    config.field = K;
    if (split) {
        config.curves = {{"G1", 2}, {"G2", 2}};
    } else {
        config.curves = {{"C", 4}};
    }
    if (with_line)
        config.curves.push_back({"H", 1});
    const std::size_t t = config.curves.size();
    auto make = [&](const std::string& id) {
        ClusterPosition p1, p2;
        p1.id = id + ".1";
        p2.id = id + ".2";
        p2.parent = 0;
        p2.direction = Direction::finite(q(K, 0));
        p1.multiplicities.assign(t, 0);
        p2.multiplicities.assign(t, 0);
        if (split) {
            p1.multiplicities[0] = p1.multiplicities[1] = 1;
            p2.multiplicities[0] = p2.multiplicities[1] = 1;
        } else {
            p1.multiplicities[0] = p2.multiplicities[0] = 2;
        }
        if (with_line)
            p1.multiplicities[t - 1] = 1;
        return std::make_shared<ResolutionCluster>(id, std::vector<ClusterPosition>{p1, p2}, t);
    };
    config.points.push_back({"P", {q(K, 0), q(K, 1), q(K, 0)}, make("P")});
    config.points.push_back({"Q", {q(K, 0), q(K, 0), q(K, 1)}, make("Q")});
    return config;
}

std::vector<CatalogEntry> catalog_entries()
{
    return {
        {"ceva6", "Ceva arrangement of six lines, (Z/n)^5, infinity C6", true},
        {"hesse-dual", "nine lines with twelve triple points, (Z/n)^8, infinity C9", true},
        {"hesse-pencil", "twelve lines of the Hesse pencil, (Z/n)^11, infinity C12", true},
        {"two-tangent-conics", "two tangent conics as one quartic C plus the line H, Z/n, infinity H", true},
        {"two-tangent-conics-transverse", "the quartic C alone with a transverse line at infinity, Z/n", true},
        {"two-tangent-conics-split", "conics G1, G2 and the line H, (Z/n)^2, infinity H", true},
        {"ishida", "Ceva lines with the (Z/5)^3 exponent matrix, infinity C6", false},
        {"triple-point", "three concurrent lines, (Z/n)^2, infinity C3", true},
    };
}

CoveringSpec builtin(const std::string& name, long n)
{
    if (name != "ishida" && n < 2)
        throw MathError("builtin " + name + " needs n >= 2");
    if (name == "ceva6")
        return identity_covering(ceva_configuration(), n, 5);
    if (name == "hesse-dual")
        return identity_covering(hesse_dual_configuration(), n, 8);
    if (name == "hesse-pencil")
        return identity_covering(hesse_pencil_configuration(), n, 11);
    if (name == "two-tangent-conics")
        return identity_covering(tangent_conics_configuration(false), n, 1);
    if (name == "two-tangent-conics-split")
        return identity_covering(tangent_conics_configuration(true), n, 2);
    if (name == "two-tangent-conics-transverse") {
        CoveringSpec spec;
        spec.config = std::make_shared<const Configuration>(tangent_conics_configuration(false, false));
        spec.grid.orders = {n};
        spec.grid.matrix = {{1}};
        return spec;
    }
    if (name == "triple-point") {
        const auto K = NumberField::rationals();
        auto l = [&](long a, long b, long c) { return std::array<FieldElement, 3>{q(K, a), q(K, b), q(K, c)}; };
        return identity_covering(arrangement_geometry(lines_over(K, {l(1, 0, 0), l(0, 1, 0), l(1, -1, 0)})), n, 2);
    }
    if (name == "ishida") {
        if (n != 0 && n != 5)
            throw MathError("the ishida example is defined for n = 5 only");
        CoveringSpec spec;
        spec.config = std::make_shared<const Configuration>(ceva_configuration());
        spec.grid.orders = {5, 5, 5};
        spec.grid.matrix = {{0, 3, 1, 0, 0, 1}, {2, 2, 0, 1, 0, 0}, {1, 0, 3, 0, 1, 0}};
        spec.infinity = InfinityMode::component;
        spec.infinity_curve = 5;
        return spec;
    }
    throw MathError("unknown builtin " + name);
}

}  // namespace multiplane
