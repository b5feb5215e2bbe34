#include "multiplane/cohomology.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

namespace multiplane {

FieldElement embed(const FieldElement& a, const FieldPtr& K)
{
    if (a.field() == K || a.field()->same_as(*K))
        return FieldElement(K, a.coefficients());
    if (a.is_rational())
        return FieldElement(K, a.rational_value());
    throw MathError("cannot embed " + a.to_string() + " into the working field");
}

std::vector<FieldElement> normalize_point(std::vector<FieldElement> coords)
{
    if (coords.size() != 3)
        throw MathError("projective points need three coordinates");
    std::size_t k = 0;
    while (k < 3 && coords[k].is_zero())
        ++k;
    if (k == 3)
        throw MathError("(0:0:0) is not a projective point");
    FieldElement inv = coords[k].inverse();
    for (auto& c : coords)
        c = c * inv;
    return coords;
}

std::size_t local_monomial_index(std::size_t a, std::size_t b)
{
    const std::size_t deg = a + b;
    return deg * (deg + 1) / 2 + b;
}

namespace {

BigInt binomial(long n, long k)
{
    if (k < 0 || k > n)
        return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Polynomial in X, Y truncated below total degree D, dense in local_monomial_index order.
struct TruncPoly {
    std::size_t D = 0;
    std::vector<FieldElement> c;
};

// Pull back along the blowup chart selected by a direction:
// finite t: (X, Y) -> (X, X(Y + t)); infinity: (X, Y) -> (XY, X).
TruncPoly pull_back(const TruncPoly& g, const Direction& dir, const std::vector<FieldElement>& tpow,
                    const FieldPtr& K)
{
    TruncPoly out{g.D, std::vector<FieldElement>(g.c.size(), FieldElement(K))};
    for (std::size_t deg = 0; deg < g.D; ++deg) {
        for (std::size_t j = 0; j <= deg; ++j) {
            const std::size_t i = deg - j;
            const FieldElement& coef = g.c[local_monomial_index(i, j)];
            if (coef.is_zero())
                continue;
            if (dir.at_infinity) {
                // X^i Y^j -> X^{i+j} Y^i
                if (2 * i + j < g.D)
                    out.c[local_monomial_index(i + j, i)] += coef;
                continue;
            }
            // X^i Y^j -> X^{i+j} sum_l binom(j,l) t^{j-l} Y^l
            for (std::size_t l = 0; l <= j && i + j + l < g.D; ++l) {
                const FieldElement& tp = tpow[j - l];
                if (tp.is_zero())
                    continue;
                out.c[local_monomial_index(i + j, l)] += coef * tp * FieldElement(K, Fraction(binomial(j, l)));
            }
        }
    }
    return out;
}

std::string ideal_key(const ClusterIdeal& ideal, const FieldPtr& K)
{
    std::string key = ideal.cluster->shape_key();
    key += '|';
    for (long v : ideal.c)
        key += std::to_string(v) + ',';
    key += '|';
    for (const auto& b : K->lower_coefficients())
        key += b.get_str() + ',';
    return key;
}

class ConditionCache {
public:
    std::optional<ExactMatrix> find(const std::string& key)
    {
        std::shared_lock lock(mu_);
        auto it = memo_.find(key);
        if (it == memo_.end())
            return std::nullopt;
        return it->second;
    }
    void store(const std::string& key, const ExactMatrix& m)
    {
        std::unique_lock lock(mu_);
        memo_.emplace(key, m);
    }

private:
    std::shared_mutex mu_;
    std::map<std::string, ExactMatrix> memo_;
};

ConditionCache& condition_cache()
{
    static ConditionCache cache;
    return cache;
}

ExactMatrix compute_local_conditions(const ClusterIdeal& ideal, const FieldPtr& K)
{
    const ResolutionCluster& cl = *ideal.cluster;
    const std::size_t D = static_cast<std::size_t>(ideal.max_order());
    const std::size_t nmono = D * (D + 1) / 2;
    if (D == 0)
        return ExactMatrix(0, 0, FieldElement(K));

    // positions that matter: those with c > 0 and their ancestors
    const std::size_t n = cl.size();
    std::vector<bool> needed(n, false);
    for (std::size_t a = n; a-- > 0;) {
        if (ideal.c[a] > 0)
            needed[a] = true;
        if (needed[a] && a > 0)
            needed[cl.position(a).parent] = true;
    }
    std::vector<std::vector<FieldElement>> tpows(n);
    for (std::size_t a = 1; a < n; ++a) {
        if (!needed[a])
            continue;
        const Direction& dir = cl.resolved_direction(a);
        tpows[a].push_back(FieldElement(K, Fraction(1)));
        if (!dir.at_infinity) {
            FieldElement t = embed(dir.slope, K);
            for (std::size_t p = 1; p < D; ++p)
                tpows[a].push_back(tpows[a].back() * t);
        }
    }

    std::size_t nrows = 0;
    for (std::size_t a = 0; a < n; ++a)
        nrows += static_cast<std::size_t>(ideal.c[a] * (ideal.c[a] + 1) / 2);
    ExactMatrix m(nrows, nmono, FieldElement(K));

    for (std::size_t deg = 0; deg < D; ++deg) {
        for (std::size_t b = 0; b <= deg; ++b) {
            const std::size_t col = local_monomial_index(deg - b, b);
            std::vector<TruncPoly> g(n);
            g[0] = TruncPoly{D, std::vector<FieldElement>(nmono, FieldElement(K))};
            g[0].c[col] = FieldElement(K, Fraction(1));
            std::size_t row = 0;
            for (std::size_t a = 0; a < n; ++a) {
                if (!needed[a])
                    continue;
                if (a > 0)
                    g[a] = pull_back(g[cl.position(a).parent], cl.resolved_direction(a), tpows[a], K);
                const std::size_t ca = static_cast<std::size_t>(ideal.c[a]);
                for (std::size_t idx = 0; idx < ca * (ca + 1) / 2; ++idx)
                    m(row++, col) = g[a].c[idx];
            }
        }
    }
    auto pivots = row_reduce(m);
    ExactMatrix reduced(0, 0, FieldElement(K));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::vector<FieldElement> rowv(nmono, FieldElement(K));
        for (std::size_t c = 0; c < nmono; ++c)
            rowv[c] = m(r, c);
        reduced.append_row(rowv);
    }
    if (pivots.empty())
        reduced = ExactMatrix(0, nmono, FieldElement(K));
    return reduced;
}

}  // namespace

ExactMatrix local_conditions(const ClusterIdeal& ideal, const FieldPtr& K)
{
    if (ideal.cluster == nullptr)
        throw MathError("cluster ideal without cluster");
    const std::string key = ideal_key(ideal, K);
    if (auto hit = condition_cache().find(key))
        return *hit;
    ExactMatrix m = compute_local_conditions(ideal, K);
    condition_cache().store(key, m);
    return m;
}

std::size_t local_colength(const ClusterIdeal& ideal, const FieldPtr& K)
{
    if (ideal.is_trivial())
        return 0;
    return local_conditions(ideal, K).rows();
}

// ---------------------------------------------------------------------------

void PointScheme::add_point(std::vector<FieldElement> coords, ClusterIdeal ideal)
{
    for (auto& c : coords)
        c = embed(c, field_);
    coords = normalize_point(std::move(coords));
    for (const auto& p : points_)
        if (p.coords == coords)
            throw MathError("scheme points must be distinct");
    points_.push_back({std::move(coords), std::move(ideal)});
}

std::vector<std::array<int, 3>> form_monomials(int d)
{
    std::vector<std::array<int, 3>> out;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
            out.push_back({a, b, d - a - b});
    return out;
}

ExactMatrix conditions_matrix(const PointScheme& scheme, int d)
{
    if (d < 0)
        throw MathError("conditions_matrix needs a non-negative degree");
    const FieldPtr& K = scheme.field();
    const auto monos = form_monomials(d);
    ExactMatrix out(0, monos.size(), FieldElement(K));
    std::vector<FieldElement> rowbuf(monos.size(), FieldElement(K));
    for (const auto& pt : scheme.points()) {
        if (pt.ideal.is_trivial())
            continue;
        const ExactMatrix L = local_conditions(pt.ideal, K);
        const std::size_t D = static_cast<std::size_t>(pt.ideal.max_order());
        std::size_t k = 0;
        while (pt.coords[k].is_zero())
            ++k;
        const std::size_t j = (k == 0) ? 1 : 0;
        const std::size_t l = (k == 2) ? 1 : 2;
        // powers of the point's affine coordinates
        std::vector<FieldElement> pj{FieldElement(K, Fraction(1))}, pl{FieldElement(K, Fraction(1))};
        for (int e = 1; e <= d; ++e) {
            pj.push_back(pj.back() * pt.coords[j]);
            pl.push_back(pl.back() * pt.coords[l]);
        }
        // T: local monomial expansion of each form monomial
        ExactMatrix T(D * (D + 1) / 2, monos.size(), FieldElement(K));
        for (std::size_t col = 0; col < monos.size(); ++col) {
            const int aj = monos[col][j], al = monos[col][l];
            for (int x = 0; x <= aj; ++x)
                for (int y = 0; y <= al && static_cast<std::size_t>(x + y) < D; ++y) {
                    FieldElement coef = pj[aj - x] * pl[al - y];
                    if (coef.is_zero())
                        continue;
                    BigInt bin = binomial(aj, x) * binomial(al, y);
                    T(local_monomial_index(x, y), col) = coef * FieldElement(K, Fraction(bin));
                }
        }
        for (std::size_t r = 0; r < L.rows(); ++r) {
            for (std::size_t col = 0; col < monos.size(); ++col) {
                FieldElement s(K);
                for (std::size_t q = 0; q < L.cols(); ++q) {
                    if (L(r, q).is_zero() || T(q, col).is_zero())
                        continue;
                    s += L(r, q) * T(q, col);
                }
                rowbuf[col] = s;
            }
            out.append_row(rowbuf);
        }
    }
    return out;
}

std::size_t colength(const PointScheme& scheme)
{
    std::size_t total = 0;
    for (const auto& pt : scheme.points())
        total += local_colength(pt.ideal, scheme.field());
    return total;
}

long h0(const PointScheme& scheme, int d)
{
    if (d < 0)
        return 0;
    const long forms = static_cast<long>((d + 1) * (d + 2) / 2);
    return forms - static_cast<long>(rank(conditions_matrix(scheme, d)));
}

long h2(int d)
{
    if (d > -3)
        return 0;
    const long m = -d - 1;
    return m * (m - 1) / 2;
}

long euler_characteristic(const PointScheme& scheme, int d)
{
    return static_cast<long>((d + 1) * (d + 2) / 2) - static_cast<long>(colength(scheme));
}

long h1(const PointScheme& scheme, int d)
{
    if (d < -3)
        throw MathError("h1 is only needed for twists >= -3");
    return h0(scheme, d) - euler_characteristic(scheme, d) + h2(d);
}

}  // namespace multiplane
