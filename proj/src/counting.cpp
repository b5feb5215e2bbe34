#include "multiplane/counting.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace multiplane {

void CharacterGrid::validate(std::size_t t) const
{
    if (orders.empty())
        throw MathError("the group needs at least one generator");
    if (matrix.size() != orders.size())
        throw MathError("matrix needs one row per generator");
    for (long n : orders)
        if (n < 1)
            throw MathError("orders must be positive");
    for (const auto& row : matrix) {
        if (row.size() != t)
            throw MathError("matrix needs one column per curve");
        for (long v : row)
            if (v < 0)
                throw MathError("matrix entries must be non-negative");
    }
}

long CharacterGrid::modulus() const
{
    long N = 1;
    for (long n : orders)
        N = std::lcm(N, n);
    return N;
}

BigInt CharacterGrid::character_count() const
{
    BigInt c = 1;
    for (long n : orders)
        c *= n;
    return c;
}

std::vector<long> CharacterGrid::image(std::span<const long> a) const
{
    const long N = modulus();
    std::vector<long> X(curves(), 0);
    for (std::size_t j = 0; j < orders.size(); ++j) {
        if (a[j] < 0 || a[j] >= orders[j])
            throw MathError("character coordinate out of range");
        for (std::size_t i = 0; i < X.size(); ++i)
            X[i] = (X[i] + (matrix[j][i] % orders[j]) * (N / orders[j]) % N * a[j]) % N;
    }
    return X;
}

SweepLayout CharacterGrid::layout(std::uint64_t min_chunks) const
{
    const long N = modulus();
    std::vector<std::vector<long>> step(orders.size(), std::vector<long>(curves()));
    for (std::size_t j = 0; j < orders.size(); ++j)
        for (std::size_t i = 0; i < curves(); ++i)
            step[j][i] = (matrix[j][i] % orders[j]) * (N / orders[j]) % N;
    return make_sweep_layout(orders, step, N, curves(), min_chunks);
}

SweepLayout make_sweep_layout(const std::vector<long>& orders, const std::vector<std::vector<long>>& step,
                              long modulus, std::size_t curves, std::uint64_t min_chunks)
{
    SweepLayout lay;
    lay.orders = orders;
    lay.step = step;
    lay.modulus = modulus;
    lay.curves = curves;
    lay.fast_digits = orders.size();
    lay.chunks = 1;
    while (lay.fast_digits > 1 && lay.chunks < min_chunks) {
        --lay.fast_digits;
        lay.chunks *= static_cast<std::uint64_t>(orders[lay.fast_digits]);
    }
    return lay;
}

FractionVector phi(const CharacterGrid& grid, std::span<const long> a)
{
    if (a.size() != grid.generators())
        throw MathError("character has the wrong length");
    FractionVector x(grid.curves(), Fraction(0));
    for (std::size_t j = 0; j < grid.generators(); ++j) {
        if (a[j] < 0 || a[j] >= grid.orders[j])
            throw MathError("character coordinate out of range");
        for (std::size_t i = 0; i < grid.curves(); ++i)
            x[i] += make_fraction(grid.matrix[j][i] * a[j], grid.orders[j]);
    }
    for (auto& v : x)
        v = frac_part(v);
    return x;
}

// ---------------------------------------------------------------------------

GridImage::GridImage(const CharacterGrid& grid) : modulus_(grid.modulus())
{
    const std::size_t t = grid.curves(), s = grid.generators();
    const long N = modulus_;
    std::vector<std::vector<BigInt>> a(t, std::vector<BigInt>(s));
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < t; ++i)
            a[i][j] = (grid.matrix[j][i] % grid.orders[j]) * (N / grid.orders[j]);
    u_.assign(t, std::vector<BigInt>(t, 0));
    for (std::size_t i = 0; i < t; ++i)
        u_[i][i] = 1;
    auto swap_rows = [&](std::size_t p, std::size_t q) {
        std::swap(a[p], a[q]);
        std::swap(u_[p], u_[q]);
    };
    auto swap_cols = [&](std::size_t p, std::size_t q) {
        for (auto& row : a)
            std::swap(row[p], row[q]);
    };

    std::size_t r = 0;
    std::vector<BigInt> diag;
    while (r < t && r < s) {
        // smallest nonzero entry of the remaining block
        std::size_t bi = t, bj = s;
        for (std::size_t i = r; i < t; ++i)
            for (std::size_t j = r; j < s; ++j)
                if (a[i][j] != 0 && (bi == t || abs(a[i][j]) < abs(a[bi][bj]))) {
                    bi = i;
                    bj = j;
                }
        if (bi == t)
            break;
        swap_rows(r, bi);
        swap_cols(r, bj);
        while (true) {
            bool clean = true;
            for (std::size_t i = r + 1; i < t; ++i) {
                if (a[i][r] == 0)
                    continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][r].get_mpz_t(), a[r][r].get_mpz_t());
                for (std::size_t j = r; j < s; ++j)
                    a[i][j] -= q * a[r][j];
                for (std::size_t j = 0; j < t; ++j)
                    u_[i][j] -= q * u_[r][j];
                if (a[i][r] != 0)
                    clean = false;
            }
            for (std::size_t j = r + 1; j < s; ++j) {
                if (a[r][j] == 0)
                    continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][j].get_mpz_t(), a[r][r].get_mpz_t());
                for (std::size_t i = r; i < t; ++i)
                    a[i][j] -= q * a[i][r];
                if (a[r][j] != 0)
                    clean = false;
            }
            if (clean)
                break;
            std::size_t bi2 = r, bj2 = r;
            for (std::size_t i = r + 1; i < t; ++i)
                if (a[i][r] != 0 && abs(a[i][r]) < abs(a[bi2][bj2])) {
                    bi2 = i;
                    bj2 = r;
                }
            for (std::size_t j = r + 1; j < s; ++j)
                if (a[r][j] != 0 && abs(a[r][j]) < abs(a[bi2][bj2])) {
                    bi2 = r;
                    bj2 = j;
                }
            if (bi2 != r)
                swap_rows(r, bi2);
            if (bj2 != r)
                swap_cols(r, bj2);
        }
        diag.push_back(abs(a[r][r]));
        ++r;
    }
    BigInt image_size = 1;
    divisor_.assign(t, BigInt(N));
    for (std::size_t i = 0; i < diag.size(); ++i) {
        BigInt g;
        BigInt bn(N);
        mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), bn.get_mpz_t());
        divisor_[i] = g;
        image_size *= bn / g;
    }
    fibre_ = grid.character_count() / image_size;
}

bool GridImage::contains(std::span<const long> X) const
{
    for (std::size_t i = 0; i < u_.size(); ++i) {
        BigInt y = 0;
        for (std::size_t j = 0; j < X.size(); ++j)
            if (u_[i][j] != 0 && X[j] != 0)
                y += u_[i][j] * X[j];
        BigInt rem;
        mpz_fdiv_r(rem.get_mpz_t(), y.get_mpz_t(), divisor_[i].get_mpz_t());
        if (rem != 0)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

int integer_side(const Arrangement& arr, std::size_t h, const std::vector<long>& X, long N)
{
    long v = -arr.rhs[h] * N;
    const auto& n = arr.normals[h];
    for (std::size_t i = 0; i < X.size(); ++i)
        v += n[i] * X[i];
    return (v > 0) - (v < 0);
}

bool matches(const Arrangement& arr, const std::vector<int>& signs, const std::vector<long>& X, long N)
{
    for (std::size_t h = 0; h < arr.size(); ++h)
        if (integer_side(arr, h, X, N) != signs[h])
            return false;
    return true;
}

BigInt count_by_enumeration(const Arrangement& arr, const Cell& cell, const CharacterGrid& grid,
                            const SweepOptions& sweep)
{
    const long N = grid.modulus();
    auto states = sweep_characters<std::uint64_t>(
        grid.layout(), sweep, [] { return std::uint64_t{0}; },
        [&](std::uint64_t& hits, const std::vector<long>&, const std::vector<long>& X) {
            if (matches(arr, cell.signs, X, N))
                ++hits;
        });
    BigInt total = 0;
    for (auto v : states)
        total += BigInt(static_cast<unsigned long>(v));
    return total;
}

// Calls visit(X) for every image point X on the face cut out by `on` whose
// hyperplanes through it are exactly `on`; returns the characters per point.
template <typename Visit>
BigInt enumerate_face_points(const Arrangement& arr, const std::vector<std::size_t>& on, const CharacterGrid& grid,
                             std::uint64_t budget, Visit visit)
{
    const long N = grid.modulus();
    const std::size_t t = arr.dim;
    const GridImage image(grid);
    RationalMatrix eq(on.size(), t + 1, Fraction(0));
    for (std::size_t r = 0; r < on.size(); ++r) {
        const std::size_t h = on[r];
        for (std::size_t i = 0; i < t; ++i)
            eq(r, i) = arr.normals[h][i];
        eq(r, t) = arr.rhs[h] * N;
    }
    const auto pivots = on.empty() ? std::vector<std::size_t>{} : row_reduce(eq);
    if (!pivots.empty() && pivots.back() == t)
        return image.fibre_size();
    std::vector<bool> is_pivot(t, false);
    for (std::size_t p : pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < t; ++i)
        if (!is_pivot[i])
            free.push_back(i);
    BigInt points = 1;
    for (std::size_t k = 0; k < free.size(); ++k)
        points *= N;
    if (points > BigInt(static_cast<unsigned long>(budget)))
        throw MathError("grid too large for both counting strategies: raise the threshold or reduce n");

    // den X_p = num - sum_f coef_f X_f with integers
    struct PivotRow {
        std::size_t var;
        BigInt den, num;
        std::vector<BigInt> coef;
    };
    std::vector<PivotRow> rows;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        BigInt den = 1;
        for (std::size_t c = 0; c <= t; ++c)
            den = lcm(den, BigInt(eq(r, c).get_den()));
        PivotRow row{pivots[r], den, BigInt(eq(r, t) * den), {}};
        for (std::size_t f : free)
            row.coef.push_back(BigInt(eq(r, f) * den));
        rows.push_back(std::move(row));
    }
    std::vector<bool> on_mask(arr.size(), false);
    for (std::size_t h : on)
        on_mask[h] = true;
    std::vector<long> X(t, 0);
    while (true) {
        bool ok = true;
        for (const auto& row : rows) {
            BigInt v = row.num;
            for (std::size_t k = 0; k < free.size(); ++k)
                if (X[free[k]] != 0)
                    v -= row.coef[k] * X[free[k]];
            if (!mpz_divisible_p(v.get_mpz_t(), row.den.get_mpz_t())) {
                ok = false;
                break;
            }
            v /= row.den;
            if (v < 0 || v >= N) {
                ok = false;
                break;
            }
            X[row.var] = v.get_si();
        }
        if (ok) {
            for (std::size_t h = 0; h < arr.size() && ok; ++h)
                if (!on_mask[h] && integer_side(arr, h, X, N) == 0)
                    ok = false;
        }
        if (ok && image.contains(X))
            visit(static_cast<const std::vector<long>&>(X));
        std::size_t k = 0;
        while (k < free.size()) {
            if (++X[free[k]] < N)
                break;
            X[free[k]] = 0;
            ++k;
        }
        if (k == free.size())
            break;
    }
    return image.fibre_size();
}

BigInt count_on_face(const Arrangement& arr, const Cell& cell, const CharacterGrid& grid, std::uint64_t budget)
{
    const long N = grid.modulus();
    unsigned long hits = 0;
    const BigInt fibre = enumerate_face_points(arr, cell.face_on, grid, budget, [&](const std::vector<long>& X) {
        if (matches(arr, cell.signs, X, N))
            ++hits;
    });
    return fibre * hits;
}

}  // namespace

std::vector<std::pair<Cell, BigInt>> face_cells(const Arrangement& arr, const Face& face, const CharacterGrid& grid,
                                                std::uint64_t budget)
{
    grid.validate(arr.dim);
    const long N = grid.modulus();
    std::map<std::vector<int>, std::pair<Cell, unsigned long>> found;
    const BigInt fibre = enumerate_face_points(arr, face.on, grid, budget, [&](const std::vector<long>& X) {
        std::vector<int> signs(arr.size());
        for (std::size_t h = 0; h < arr.size(); ++h)
            signs[h] = integer_side(arr, h, X, N);
        auto [it, fresh] = found.try_emplace(signs);
        if (fresh) {
            FractionVector x(X.size());
            for (std::size_t i = 0; i < X.size(); ++i)
                x[i] = make_fraction(X[i], N);
            it->second.first = Cell{face.on, signs, x, 0};
        }
        ++it->second.first.members;
        ++it->second.second;
    });
    std::vector<std::pair<Cell, BigInt>> out;
    for (auto& [signs, entry] : found)
        out.emplace_back(entry.first, fibre * entry.second);
    return out;
}

BigInt count_cell(const Arrangement& arr, const Cell& cell, const CharacterGrid& grid, const CountOptions& opt)
{
    grid.validate(arr.dim);
    if (cell.signs.size() != arr.size())
        throw MathError("cell does not belong to this arrangement");
    const bool small = grid.character_count() <= BigInt(static_cast<unsigned long>(opt.threshold));
    switch (opt.strategy) {
    case CountStrategy::enumerate:
        if (!small)
            throw MathError("too many characters for full enumeration: use the face strategy or raise the threshold");
        return count_by_enumeration(arr, cell, grid, opt.sweep);
    case CountStrategy::face:
        return count_on_face(arr, cell, grid, opt.threshold);
    case CountStrategy::automatic:
        break;
    }
    if (small)
        return count_by_enumeration(arr, cell, grid, opt.sweep);
    return count_on_face(arr, cell, grid, opt.threshold);
}

// ---------------------------------------------------------------------------

BigInt sigma(int k, long m, long n)
{
    if (k < 1 || n < 1)
        throw MathError("sigma needs k >= 1 and n >= 1");
    if (m < 0 || m > k * (n - 1))
        return 0;
    std::vector<BigInt> ways(static_cast<std::size_t>(m) + 1, 0);
    ways[0] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<BigInt> next(ways.size(), 0);
        for (std::size_t v = 0; v < ways.size(); ++v) {
            if (ways[v] == 0)
                continue;
            for (long a = 0; a < n && v + static_cast<std::size_t>(a) < ways.size(); ++a)
                next[v + static_cast<std::size_t>(a)] += ways[v];
        }
        ways.swap(next);
    }
    return ways[static_cast<std::size_t>(m)];
}

Fraction QuasiPolynomial::operator()(long n) const
{
    const long r = ((n % period) + period) % period;
    const auto& c = constituents[static_cast<std::size_t>(r)];
    Fraction v = 0, p = 1;
    for (const auto& coef : c) {
        v += coef * p;
        p *= n;
    }
    return v;
}

std::string QuasiPolynomial::to_string() const
{
    std::ostringstream out;
    for (long r = 0; r < period; ++r) {
        out << "n = " << r << " mod " << period << ": ";
        const auto& c = constituents[static_cast<std::size_t>(r)];
        bool first = true;
        for (std::size_t k = c.size(); k-- > 0;) {
            if (c[k] == 0 && !(first && k == 0))
                continue;
            if (!first)
                out << " + ";
            out << "(" << multiplane::to_string(c[k]) << ")";
            if (k > 0)
                out << " n" << (k > 1 ? "^" + std::to_string(k) : "");
            first = false;
        }
        if (first)
            out << "0";
        if (r + 1 < period)
            out << "\n";
    }
    return out.str();
}

QuasiPolynomial ehrhart_fit(const std::map<long, BigInt>& counts, long period, int degree)
{
    if (period < 1 || degree < 0)
        throw MathError("ehrhart_fit needs a positive period and a non-negative degree");
    QuasiPolynomial q;
    q.period = period;
    const std::size_t m = static_cast<std::size_t>(degree) + 1;
    for (long r = 0; r < period; ++r) {
        std::vector<std::pair<long, BigInt>> pts;
        for (const auto& [n, v] : counts)
            if (((n % period) + period) % period == r)
                pts.emplace_back(n, v);
        if (pts.size() < m)
            throw MathError("not enough values in residue class " + std::to_string(r) + " mod " +
                            std::to_string(period));
        RationalMatrix vander(m, m, Fraction(0));
        FractionVector rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            Fraction p = 1;
            for (std::size_t k = 0; k < m; ++k) {
                vander(i, k) = p;
                p *= pts[i].first;
            }
            rhs[i] = Fraction(pts[i].second);
        }
        auto sol = solve_affine(vander, rhs);
        if (!sol || sol->dimension() != 0)
            throw MathError("interpolation points are not distinct");
        q.constituents.push_back(sol->base_point);
    }
    for (const auto& [n, v] : counts)
        if (q(n) != Fraction(v))
            throw MathError("no quasi-polynomial of period " + std::to_string(period) + " and degree " +
                            std::to_string(degree) + " fits the value at n = " + std::to_string(n));
    return q;
}

}  // namespace multiplane
