#include "multiplane/singularity.hpp"

#include "multiplane/cohomology.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace multiplane {

ResolutionCluster::ResolutionCluster(std::string point_id, std::vector<ClusterPosition> positions,
                                     std::size_t curve_count)
    : point_id_(std::move(point_id)), pos_(std::move(positions)), curves_(curve_count)
{
    if (pos_.empty())
        throw ClusterError(point_id_ + ": cluster has no positions");
    derive();
}

ResolutionCluster ResolutionCluster::ordinary_point(std::string point_id, std::size_t curve_count,
                                                    const std::vector<std::size_t>& curves)
{
    ClusterPosition p;
    p.id = "1";
    p.multiplicities.assign(curve_count, 0);
    for (auto c : curves)
        p.multiplicities.at(c) = 1;
    return ResolutionCluster(std::move(point_id), {p}, curve_count);
}

int ResolutionCluster::index_of(const std::string& id) const
{
    for (std::size_t a = 0; a < pos_.size(); ++a)
        if (pos_[a].id == id)
            return static_cast<int>(a);
    return -1;
}

long ResolutionCluster::e_total(std::size_t a) const
{
    long s = 0;
    for (std::size_t i = 0; i < curves_; ++i)
        s += e_[i][a];
    return s;
}

bool ResolutionCluster::is_relevant(std::size_t a) const
{
    return std::find(relevant_.begin(), relevant_.end(), a) != relevant_.end();
}

void ResolutionCluster::derive()
{
    const std::size_t n = pos_.size();
    const std::string where = "cluster " + point_id_;
    prox_.assign(n, {});
    for (std::size_t a = 0; a < n; ++a) {
        const auto& p = pos_[a];
        if (p.multiplicities.size() != curves_)
            throw ClusterError(where + ": position " + p.id + " has wrong number of multiplicities");
        for (long m : p.multiplicities)
            if (m < 0)
                throw ClusterError(where + ": negative multiplicity at position " + p.id);
        if (a == 0) {
            if (p.parent != -1 || p.extra != -1)
                throw ClusterError(where + ": first position must be the planar point");
            continue;
        }
        if (p.parent < 0 || p.parent >= static_cast<int>(a))
            throw ClusterError(where + ": position " + p.id + " must follow its parent");
        prox_[a].push_back(p.parent);
        if (p.extra >= 0) {
            if (p.extra >= p.parent)
                throw ClusterError(where + ": satellite " + p.id + " must be proximate to an ancestor of its parent");
            prox_[a].push_back(p.extra);
        }
    }

    e_.assign(curves_, std::vector<long>(n, 0));
    k_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        k_[a] = 1;
        for (auto b : prox_[a])
            k_[a] += k_[b];
        for (std::size_t i = 0; i < curves_; ++i) {
            long v = pos_[a].multiplicities[i];
            for (auto b : prox_[a])
                v += e_[i][b];
            e_[i][a] = v;
        }
    }

    attach_.assign(curves_, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < curves_; ++i)
        for (std::size_t a = 0; a < n; ++a)
            attach_[i][a] = pos_[a].multiplicities[i];
    for (std::size_t b = 0; b < n; ++b)
        for (auto a : prox_[b])
            for (std::size_t i = 0; i < curves_; ++i)
                attach_[i][a] -= pos_[b].multiplicities[i];
    for (std::size_t i = 0; i < curves_; ++i)
        for (std::size_t a = 0; a < n; ++a)
            if (attach_[i][a] < 0)
                throw ClusterError(where + ": proximity inequality violated at position " + pos_[a].id);

    simulate_blowups();

    inter_ = RationalMatrix(n, n, Fraction(0));
    for (std::size_t a = 0; a < n; ++a) {
        inter_(a, a) = -1;
        for (auto b : neighbours_[a])
            inter_(a, b) = 1;
    }
    for (std::size_t b = 0; b < n; ++b)
        for (auto a : prox_[b])
            inter_(a, a) -= 1;
    if (!is_negative_definite(inter_))
        throw ClusterError(where + ": intersection matrix is not negative definite");
    RationalMatrix neg(n, n, Fraction(0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            neg(a, b) = -inter_(a, b);
    branch_ = inverse(neg);

    relevant_.clear();
    for (std::size_t a = 0; a < n; ++a) {
        long branches = 0;
        for (std::size_t i = 0; i < curves_; ++i)
            branches += attach_[i][a];
        if (static_cast<long>(neighbours_[a].size()) + branches >= 3 || branches > 0)
            relevant_.push_back(a);
    }

    resolve_directions();
}

void ResolutionCluster::simulate_blowups()
{
    const std::size_t n = pos_.size();
    std::set<std::pair<std::size_t, std::size_t>> edges;
    auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (std::size_t a = 1; a < n; ++a) {
        const std::size_t p = pos_[a].parent;
        edges.insert(key(a, p));
        if (pos_[a].extra >= 0) {
            const std::size_t x = pos_[a].extra;
            auto it = edges.find(key(p, x));
            if (it == edges.end())
                throw ClusterError("cluster " + point_id_ + ": satellite " + pos_[a].id +
                                   " is not on an intersection of exceptional curves");
            edges.erase(it);
            edges.insert(key(a, x));
        }
    }
    neighbours_.assign(n, {});
    for (auto [a, b] : edges) {
        neighbours_[a].push_back(b);
        neighbours_[b].push_back(a);
    }
    for (auto& v : neighbours_)
        std::sort(v.begin(), v.end());
}

void ResolutionCluster::resolve_directions()
{
    const std::size_t n = pos_.size();
    dir_.assign(n, Direction{});
    auto same = [](const Direction& a, const Direction& b) {
        if (a.at_infinity || b.at_infinity)
            return a.at_infinity == b.at_infinity;
        return a.slope.coefficients() == b.slope.coefficients();
    };
    const std::string where = "cluster " + point_id_;
    // satellites and specified free directions first
    std::vector<bool> fixed(n, false);
    for (std::size_t a = 1; a < n; ++a) {
        const auto& p = pos_[a];
        const auto& par = pos_[p.parent];
        if (p.extra >= 0) {
            Direction forced;
            if (p.extra == par.parent)
                forced = Direction::infinity();
            else if (p.extra == par.extra)
                forced = Direction::finite(FieldElement(NumberField::rationals(), Fraction(0)));
            else
                throw ClusterError(where + ": satellite " + p.id + " has no chart direction");
            if (p.direction && !same(*p.direction, forced))
                throw ClusterError(where + ": satellite " + p.id + " direction contradicts its proximity");
            dir_[a] = forced;
            fixed[a] = true;
        } else if (p.direction) {
            if (p.parent != 0 && p.direction->at_infinity)
                throw ClusterError(where + ": free point " + p.id + " cannot lie on the previous exceptional curve");
            if (par.extra >= 0 && !p.direction->at_infinity && p.direction->slope.is_zero())
                throw ClusterError(where + ": free point " + p.id + " cannot lie on a satellite corner");
            dir_[a] = *p.direction;
            fixed[a] = true;
        }
    }
    for (std::size_t a = 1; a < n; ++a) {
        if (fixed[a])
            continue;
        long t = 1;
        for (;; ++t) {
            Direction cand = Direction::finite(FieldElement(NumberField::rationals(), Fraction(t)));
            bool clash = false;
            for (std::size_t b = 1; b < n; ++b)
                if (b != a && pos_[b].parent == pos_[a].parent && (fixed[b] || b < a) && same(dir_[b], cand))
                    clash = true;
            if (!clash) {
                dir_[a] = cand;
                break;
            }
        }
    }
    for (std::size_t a = 1; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (pos_[a].parent == pos_[b].parent && same(dir_[a], dir_[b]))
                throw ClusterError(where + ": positions " + pos_[a].id + " and " + pos_[b].id +
                                   " are the same infinitely near point");

    std::ostringstream os;
    for (std::size_t a = 0; a < n; ++a) {
        os << pos_[a].parent << ',' << pos_[a].extra << ',';
        if (a > 0)
            os << (dir_[a].at_infinity ? std::string("inf") : dir_[a].slope.to_string());
        os << ';';
    }
    shape_key_ = os.str();
}

// ---------------------------------------------------------------------------

bool ClusterIdeal::is_trivial() const
{
    return std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
}

long ClusterIdeal::max_order() const
{
    long m = 0;
    for (long v : c)
        m = std::max(m, v);
    return m;
}

namespace {

long order_at(const ResolutionCluster& cl, std::size_t a, std::span<const Fraction> x)
{
    Fraction s = 0;
    for (std::size_t i = 0; i < cl.curve_count(); ++i)
        if (cl.e(i, a) != 0)
            s += x[i] * cl.e(i, a);
    return std::max(0L, to_long(floor_of(s)) - cl.k(a));
}

void check_weights(const ResolutionCluster& cl, std::span<const Fraction> x)
{
    if (x.size() != cl.curve_count())
        throw ClusterError("weight vector length differs from the curve count");
    for (const auto& v : x)
        if (v < 0)
            throw ClusterError("weights must be non-negative");
}

}  // namespace

ClusterIdeal mixed_mi_cluster(const ResolutionCluster& cl, std::span<const Fraction> x)
{
    check_weights(cl, x);
    ClusterIdeal id{&cl, std::vector<long>(cl.size(), 0)};
    for (auto r : cl.relevant_positions())
        id.c[r] = order_at(cl, r, x);
    return id;
}

ClusterIdeal mixed_mi_cluster_full(const ResolutionCluster& cl, std::span<const Fraction> x)
{
    check_weights(cl, x);
    ClusterIdeal id{&cl, std::vector<long>(cl.size(), 0)};
    for (std::size_t a = 0; a < cl.size(); ++a)
        id.c[a] = order_at(cl, a, x);
    return id;
}

std::vector<long> relevant_ideal_valuations(const ResolutionCluster& cl, std::size_t r)
{
    std::vector<long> v(cl.size());
    for (std::size_t a = 0; a < cl.size(); ++a) {
        const Fraction& b = cl.branch_basis()(a, r);
        if (!is_integer(b))
            throw ClusterError("branch basis is not integral");
        v[a] = to_long(b.get_num());
    }
    return v;
}

namespace {

class ColengthMemo {
public:
    explicit ColengthMemo(const ResolutionCluster& cl) : cl_(cl) {}
    std::size_t operator()(const std::vector<long>& c)
    {
        auto it = memo_.find(c);
        if (it != memo_.end())
            return it->second;
        std::size_t v = local_colength(ClusterIdeal{&cl_, c});
        memo_.emplace(c, v);
        return v;
    }

private:
    const ResolutionCluster& cl_;
    std::map<std::vector<long>, std::size_t> memo_;
};

// Orders for the ideal with valuations e scaled by xi, exactly at xi and just below.
void scaled_orders(const ResolutionCluster& cl, std::span<const long> e, const Fraction& xi, std::vector<long>& at,
                   std::vector<long>& below)
{
    at.assign(cl.size(), 0);
    below.assign(cl.size(), 0);
    for (std::size_t a = 0; a < cl.size(); ++a) {
        Fraction s = xi * e[a];
        at[a] = std::max(0L, to_long(floor_of(s)) - cl.k(a));
        below[a] = std::max(0L, to_long(left_floor(s)) - cl.k(a));
    }
}

}  // namespace

std::vector<Fraction> jumping_scan(const ResolutionCluster& cl, std::span<const long> e, const Fraction& bound)
{
    if (e.size() != cl.size())
        throw ClusterError("valuation vector length differs from the cluster size");
    if (bound <= 0)
        throw ClusterError("scan bound must be positive");
    std::set<Fraction> candidates;
    for (std::size_t a = 0; a < cl.size(); ++a) {
        if (e[a] <= 0)
            continue;
        const long top = to_long(floor_of(bound * e[a]));
        for (long r = 1; r <= top; ++r)
            candidates.insert(make_fraction(r, e[a]));
    }
    ColengthMemo colen(cl);
    std::vector<Fraction> out;
    std::vector<long> at, below;
    for (const auto& xi : candidates) {
        scaled_orders(cl, e, xi, at, below);
        if (at != below && colen(at) != colen(below))
            out.push_back(xi);
    }
    return out;
}

namespace {

bool proportional(const ResolutionCluster& cl, std::size_t a, std::size_t b)
{
    for (std::size_t i = 0; i < cl.curve_count(); ++i)
        for (std::size_t j = 0; j < cl.curve_count(); ++j)
            if (cl.e(i, a) * cl.e(j, b) != cl.e(j, a) * cl.e(i, b))
                return false;
    return true;
}

// Generic points on sum_i y^i e_i^rho = r inside (0, bound)^t.
std::vector<FractionVector> wall_samples(const ResolutionCluster& cl, std::size_t rho, long r, const Fraction& bound)
{
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < cl.curve_count(); ++i)
        if (cl.e(i, rho) > 0)
            active.push_back(i);
    std::vector<FractionVector> out;
    std::mt19937_64 rng(0x5eed + 131 * rho + r);
    auto inside = [&](const FractionVector& y) {
        for (auto i : active)
            if (y[i] <= 0 || y[i] >= bound)
                return false;
        return true;
    };
    auto generic = [&](const FractionVector& y) {
        for (std::size_t a = 0; a < cl.size(); ++a) {
            if (proportional(cl, a, rho))
                continue;
            Fraction s = 0;
            for (auto i : active)
                s += y[i] * cl.e(i, a);
            if (is_integer(s))
                return false;
        }
        return true;
    };
    if (active.size() == 1) {
        FractionVector y(cl.curve_count());
        y[active[0]] = make_fraction(r, cl.e(active[0], rho));
        if (inside(y))
            out.push_back(std::move(y));
        return out;
    }
    const int wanted = 48;
    for (int attempt = 0; attempt < 4000 && static_cast<int>(out.size()) < wanted; ++attempt) {
        FractionVector y(cl.curve_count());
        // some coordinates pinned just below the bound, the rest proportional to random weights
        std::vector<std::size_t> free_idx;
        std::size_t pinned = 0;
        Fraction rest = r;
        for (auto i : active) {
            if (attempt % 3 == 2 && rng() % 2 == 0 && pinned + 1 < active.size()) {
                ++pinned;
                long q = 2 + static_cast<long>(rng() % 997);
                y[i] = bound * make_fraction(q - 1, q);
                rest -= y[i] * cl.e(i, rho);
            } else {
                free_idx.push_back(i);
            }
        }
        if (free_idx.empty() || rest <= 0)
            continue;
        const long span = (attempt % 3 == 1) ? 10007 : 97;
        Fraction wsum = 0;
        std::vector<long> w(free_idx.size());
        for (std::size_t j = 0; j < free_idx.size(); ++j) {
            w[j] = 1 + static_cast<long>(rng() % span);
            wsum += Fraction(w[j] * cl.e(free_idx[j], rho));
        }
        for (std::size_t j = 0; j < free_idx.size(); ++j) {
            y[free_idx[j]] = rest * w[j] / wsum;
            y[free_idx[j]].canonicalize();
        }
        if (inside(y) && generic(y))
            out.push_back(std::move(y));
    }
    return out;
}

}  // namespace

std::vector<long> relevant_values(const ResolutionCluster& cl, std::size_t rho, const Fraction& bound)
{
    if (rho >= cl.size() || !cl.is_relevant(rho))
        throw ClusterError("position is not relevant");
    const auto b = relevant_ideal_valuations(cl, rho);
    const long brr = b[rho];
    const Fraction limit = bound * cl.e_total(rho);
    ColengthMemo relevant_colen(cl);
    ColengthMemo colen(cl);
    std::vector<long> out;
    std::vector<long> at, below;
    for (long r = cl.k(rho) + 1; Fraction(r) < limit; ++r) {
        scaled_orders(cl, b, make_fraction(r, brr), at, below);
        if (at[rho] == below[rho] || relevant_colen(at) == relevant_colen(below))
            continue;
        bool confirmed = false;
        for (const auto& y : wall_samples(cl, rho, r, bound)) {
            std::vector<long> on(cl.size()), left(cl.size());
            for (std::size_t a = 0; a < cl.size(); ++a) {
                Fraction s = 0;
                for (std::size_t i = 0; i < cl.curve_count(); ++i)
                    s += y[i] * cl.e(i, a);
                on[a] = std::max(0L, to_long(floor_of(s)) - cl.k(a));
                left[a] = std::max(0L, to_long(left_floor(s)) - cl.k(a));
                if (!is_integer(s))
                    left[a] = on[a];
            }
            if (on != left && colen(on) != colen(left)) {
                confirmed = true;
                break;
            }
        }
        if (confirmed)
            out.push_back(r);
    }
    return out;
}

}  // namespace multiplane
