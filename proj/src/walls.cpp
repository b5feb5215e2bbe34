#include "multiplane/walls.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace multiplane {

std::vector<JumpingWall> all_walls(const Configuration& config)
{
    const std::size_t t = config.curves.size();
    std::map<std::pair<std::vector<long>, long>, JumpingWall> merged;
    std::vector<std::pair<std::vector<long>, long>> order;
    for (std::size_t p = 0; p < config.points.size(); ++p) {
        const ResolutionCluster& cl = *config.points[p].cluster;
        if (cl.curve_count() != t)
            throw MathError("cluster of " + config.points[p].id + " has the wrong number of curves");
        for (std::size_t rho : cl.relevant_positions()) {
            std::vector<long> e(t);
            long g = 0;
            for (std::size_t i = 0; i < t; ++i) {
                e[i] = cl.e(i, rho);
                g = std::gcd(g, e[i]);
            }
            for (long r : relevant_values(cl, rho, Fraction(1))) {
                const long h = std::gcd(g, r);
                std::vector<long> normal(t);
                for (std::size_t i = 0; i < t; ++i)
                    normal[i] = e[i] / h;
                auto key = std::make_pair(normal, r / h);
                auto [it, fresh] = merged.try_emplace(key);
                if (fresh) {
                    it->second.normal = normal;
                    it->second.rhs = r / h;
                    order.push_back(key);
                }
                it->second.sources.push_back({p, rho, r});
                const std::string& id = config.points[p].id;
                auto& ids = it->second.point_ids;
                if (std::find(ids.begin(), ids.end(), id) == ids.end())
                    ids.push_back(id);
            }
        }
    }
    std::vector<JumpingWall> out;
    for (const auto& key : order)
        out.push_back(merged.at(key));
    return out;
}

Arrangement Arrangement::from_walls(const std::vector<JumpingWall>& walls, std::size_t dim)
{
    Arrangement arr;
    arr.dim = dim;
    arr.wall_count = walls.size();
    for (const auto& w : walls) {
        if (w.normal.size() != dim)
            throw MathError("wall normal has the wrong dimension");
        arr.normals.push_back(w.normal);
        arr.rhs.push_back(w.rhs);
    }
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<long> n(dim, 0);
        n[i] = 1;
        arr.normals.push_back(n);
        arr.rhs.push_back(0);
    }
    return arr;
}

int Arrangement::side(std::size_t h, std::span<const Fraction> x) const
{
    Fraction v = -rhs[h];
    for (std::size_t i = 0; i < dim; ++i)
        if (normals[h][i] != 0)
            v += normals[h][i] * x[i];
    return sgn(v);
}

namespace {

bool contains_subspace(const Arrangement& arr, std::size_t h, const AffineSubspace& s)
{
    if (arr.side(h, s.base_point) != 0)
        return false;
    for (const auto& d : s.direction_basis) {
        Fraction v = 0;
        for (std::size_t i = 0; i < arr.dim; ++i)
            v += arr.normals[h][i] * d[i];
        if (v != 0)
            return false;
    }
    return true;
}

// Necessary conditions for meeting [0,1)^t: coordinates constant on the face
// lie in [0,1), and a wall with nonnegative normal has rhs below the sum of
// its coefficients on the coordinates not forced to vanish.
bool surely_outside_box(const Arrangement& arr, const Face& f)
{
    std::vector<bool> zero(arr.dim, false);
    for (std::size_t h : f.on)
        if (!arr.is_wall(h))
            zero[h - arr.wall_count] = true;
    for (std::size_t h : f.on) {
        if (!arr.is_wall(h))
            continue;
        long reach = 0;
        bool nonnegative = true;
        for (std::size_t i = 0; i < arr.dim; ++i) {
            nonnegative = nonnegative && arr.normals[h][i] >= 0;
            if (!zero[i])
                reach += arr.normals[h][i];
        }
        if (nonnegative && arr.rhs[h] >= reach)
            return true;
    }
    for (std::size_t i = 0; i < arr.dim; ++i) {
        const bool fixed = std::all_of(f.subspace.direction_basis.begin(), f.subspace.direction_basis.end(),
                                       [&](const FractionVector& v) { return v[i] == 0; });
        if (fixed && (f.subspace.base_point[i] < 0 || f.subspace.base_point[i] >= 1))
            return true;
    }
    return false;
}

// Fraction-free elimination; nullopt when an entry leaves the 64-bit range.
std::optional<std::size_t> bareiss_rank(std::vector<std::vector<long>> m)
{
    const std::size_t rows = m.size();
    if (rows == 0)
        return 0;
    const std::size_t cols = m[0].size();
    constexpr __int128 limit = static_cast<__int128>(1) << 62;
    std::size_t r = 0;
    long prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                const __int128 v =
                    (static_cast<__int128>(m[i][j]) * m[r][c] - static_cast<__int128>(m[i][c]) * m[r][j]) / prev;
                if (v >= limit || v <= -limit)
                    return std::nullopt;
                m[i][j] = static_cast<long>(v);
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

}  // namespace

bool is_distinguished(const Arrangement& arr, std::span<const std::size_t> on, std::span<const long> degrees)
{
    std::vector<std::vector<long>> rows;
    for (std::size_t h : on)
        rows.push_back(arr.normals[h]);
    auto without = bareiss_rank(rows);
    rows.emplace_back(degrees.begin(), degrees.end());
    auto with = bareiss_rank(rows);
    if (without && with)
        return *without == *with;

    RationalMatrix m(0, 0, Fraction(0));
    for (const auto& row : rows) {
        FractionVector q(row.begin(), row.end());
        m.append_row(q);
    }
    RationalMatrix head(0, 0, Fraction(0));
    for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
        FractionVector q(rows[r].begin(), rows[r].end());
        head.append_row(q);
    }
    const std::size_t r0 = on.empty() ? 0 : rank(head);
    return rank(m) == r0;
}

namespace {

Face face_of(const Arrangement& arr, AffineSubspace subspace, std::span<const long> degrees)
{
    Face f;
    f.subspace = std::move(subspace);
    for (std::size_t h = 0; h < arr.size(); ++h)
        if (contains_subspace(arr, h, f.subspace))
            f.on.push_back(h);
    f.distinguished = is_distinguished(arr, f.on, degrees);
    if (f.distinguished) {
        Fraction v = 0;
        for (std::size_t i = 0; i < arr.dim; ++i)
            v += degrees[i] * f.subspace.base_point[i];
        f.height = v;
    }
    return f;
}

// s cut by hyperplane h, or nullopt when they are disjoint. The directions
// come back in reduced echelon form with the base point zero on the pivots.
std::optional<AffineSubspace> cut(const Arrangement& arr, const AffineSubspace& s, std::size_t h)
{
    const auto& normal = arr.normals[h];
    auto dot = [&](const FractionVector& v) {
        Fraction r = 0;
        for (std::size_t i = 0; i < arr.dim; ++i)
            if (normal[i] != 0)
                r += normal[i] * v[i];
        return r;
    };
    const std::size_t k = s.direction_basis.size();
    const Fraction beta = arr.rhs[h] - dot(s.base_point);
    std::vector<Fraction> alpha(k);
    std::size_t j0 = k;
    for (std::size_t j = 0; j < k; ++j) {
        alpha[j] = dot(s.direction_basis[j]);
        if (j0 == k && alpha[j] != 0)
            j0 = j;
    }
    if (j0 == k) {
        if (beta != 0)
            return std::nullopt;
        return s;
    }
    AffineSubspace out;
    out.ambient_dim = arr.dim;
    const FractionVector& d0 = s.direction_basis[j0];
    const Fraction t = beta / alpha[j0];
    out.base_point = s.base_point;
    for (std::size_t i = 0; i < arr.dim; ++i)
        out.base_point[i] += t * d0[i];
    RationalMatrix dirs(0, 0, Fraction(0));
    for (std::size_t j = 0; j < k; ++j) {
        if (j == j0)
            continue;
        FractionVector v = s.direction_basis[j];
        const Fraction f = alpha[j] / alpha[j0];
        if (f != 0)
            for (std::size_t i = 0; i < arr.dim; ++i)
                v[i] -= f * d0[i];
        dirs.append_row(v);
    }
    if (dirs.rows() > 0) {
        const auto pivots = row_reduce(dirs);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            FractionVector v(arr.dim);
            for (std::size_t i = 0; i < arr.dim; ++i)
                v[i] = dirs(r, i);
            const Fraction shift = out.base_point[pivots[r]];
            if (shift != 0)
                for (std::size_t i = 0; i < arr.dim; ++i)
                    out.base_point[i] -= shift * v[i];
            out.direction_basis.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace

std::optional<Face> make_face(const Arrangement& arr, std::span<const std::size_t> hyperplanes,
                              std::span<const long> degrees)
{
    if (degrees.size() != arr.dim)
        throw MathError("degree vector has the wrong dimension");
    RationalMatrix a(hyperplanes.size(), arr.dim, Fraction(0));
    FractionVector b(hyperplanes.size());
    for (std::size_t r = 0; r < hyperplanes.size(); ++r) {
        for (std::size_t i = 0; i < arr.dim; ++i)
            a(r, i) = arr.normals[hyperplanes[r]][i];
        b[r] = arr.rhs[hyperplanes[r]];
    }
    std::optional<AffineSubspace> s;
    if (hyperplanes.empty()) {
        AffineSubspace whole;
        whole.ambient_dim = arr.dim;
        whole.base_point.assign(arr.dim, Fraction(0));
        for (std::size_t i = 0; i < arr.dim; ++i) {
            FractionVector e(arr.dim);
            e[i] = 1;
            whole.direction_basis.push_back(e);
        }
        s = whole;
    } else {
        s = solve_affine(a, b);
    }
    if (!s)
        return std::nullopt;
    return face_of(arr, std::move(*s), degrees);
}

std::vector<Face> faces(const Arrangement& arr, std::span<const long> degrees, std::size_t max_faces)
{
    std::set<std::vector<std::size_t>> seen;
    std::vector<Face> found;
    std::deque<std::size_t> queue;
    auto consider = [&](std::optional<Face> f) {
        if (!f || seen.count(f->on))
            return;
        seen.insert(f->on);
        if (surely_outside_box(arr, *f) || !meets_half_open_box(f->subspace))
            return;
        if (found.size() >= max_faces)
            throw MathError("face closure exceeds " + std::to_string(max_faces) + " faces");
        found.push_back(std::move(*f));
        queue.push_back(found.size() - 1);
    };
    for (std::size_t w = 0; w < arr.wall_count; ++w) {
        const std::size_t h[1] = {w};
        consider(make_face(arr, h, degrees));
    }
    while (!queue.empty()) {
        const std::size_t idx = queue.front();
        queue.pop_front();
        const std::vector<std::size_t> base = found[idx].on;
        const AffineSubspace parent = found[idx].subspace;
        for (std::size_t h = 0; h < arr.size(); ++h) {
            if (std::binary_search(base.begin(), base.end(), h))
                continue;
            auto s = cut(arr, parent, h);
            consider(s ? std::optional<Face>(face_of(arr, std::move(*s), degrees)) : std::nullopt);
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const Face& a, const Face& b) {
        if (a.distinguished != b.distinguished)
            return a.distinguished;
        if (a.distinguished && *a.height != *b.height)
            return *a.height < *b.height;
        return a.on < b.on;
    });
    return found;
}

std::vector<Cell> cells(const Arrangement& arr, const Face& face, const std::vector<FractionVector>& points)
{
    std::map<std::vector<int>, std::size_t> index;
    std::vector<Cell> out;
    for (const auto& x : points) {
        if (x.size() != arr.dim)
            throw MathError("point has the wrong dimension");
        std::vector<int> signs(arr.size());
        std::vector<std::size_t> on;
        for (std::size_t h = 0; h < arr.size(); ++h) {
            signs[h] = arr.side(h, x);
            if (signs[h] == 0)
                on.push_back(h);
        }
        if (on != face.on)
            throw MathError("point does not lie in the relative interior of the face");
        auto [it, fresh] = index.try_emplace(signs, out.size());
        if (fresh)
            out.push_back({face.on, signs, x, 0});
        ++out[it->second].members;
    }
    return out;
}

std::string hyperplane_text(const Arrangement& arr, std::size_t h, const Configuration& config,
                            const std::vector<JumpingWall>& walls)
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < arr.dim; ++i) {
        const long c = arr.normals[h][i];
        if (c == 0)
            continue;
        out << (first ? "" : "+");
        if (c != 1)
            out << c << "*";
        out << config.curves[i].name;
        first = false;
    }
    out << "=" << arr.rhs[h];
    if (arr.is_wall(h)) {
        out << " [";
        const auto& ids = walls[h].point_ids;
        for (std::size_t k = 0; k < ids.size(); ++k)
            out << (k ? "," : "") << ids[k];
        out << "]";
    }
    return out.str();
}

}  // namespace multiplane
