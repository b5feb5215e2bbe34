#include "multiplane/exactmath.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace multiplane {

Fraction make_fraction(long num, long den)
{
    if (den == 0)
        throw MathError("zero denominator");
    Fraction q(num, den);
    q.canonicalize();
    return q;
}

Fraction parse_fraction(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ')
            s.push_back(ch);
    if (s.empty())
        throw MathError("empty rational literal");
    Fraction q;
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            q = Fraction(BigInt(s));
        } else {
            BigInt den(s.substr(slash + 1));
            if (den == 0)
                throw MathError("zero denominator in '" + text + "'");
            q = Fraction(BigInt(s.substr(0, slash)), den);
        }
    } catch (const std::invalid_argument&) {
        throw MathError("malformed rational literal '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Fraction& q) { return q.get_str(); }

BigInt floor_of(const Fraction& q)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt ceil_of(const Fraction& q)
{
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Fraction frac_part(const Fraction& q) { return q - Fraction(floor_of(q)); }

bool is_integer(const Fraction& q) { return q.get_den() == 1; }

BigInt left_floor(const Fraction& q)
{
    BigInt f = floor_of(q);
    return is_integer(q) ? BigInt(f - 1) : f;
}

long to_long(const BigInt& z)
{
    if (!z.fits_slong_p())
        throw MathError("integer does not fit in a machine word: " + z.get_str());
    return z.get_si();
}

BigInt lcm_of(std::span<const BigInt> values)
{
    BigInt acc = 1;
    for (const auto& v : values) {
        if (v == 0)
            continue;
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_mpz_t());
    }
    return acc;
}

// ---------------------------------------------------------------------------

namespace {

bool has_integer_root(const std::vector<BigInt>& low)
{
    // monic: rational roots are integer divisors of c_0
    const BigInt& c0 = low.front();
    if (c0 == 0)
        return true;
    BigInt a = abs(c0);
    auto eval = [&](const BigInt& x) {
        BigInt v = 1;
        for (auto it = low.rbegin(); it != low.rend(); ++it)
            v = v * x + *it;
        return v;
    };
    for (BigInt d = 1; d * d <= a; ++d) {
        if (a % d != 0)
            continue;
        BigInt e = a / d;
        for (const BigInt& r : {d, BigInt(-d), e, BigInt(-e)})
            if (eval(r) == 0)
                return true;
    }
    return false;
}

}  // namespace

NumberField::NumberField(std::vector<BigInt> desc)
{
    if (desc.empty() || desc.front() != 1)
        throw MathError("minimal polynomial must be monic with integer coefficients");
    if (desc.size() < 2)
        throw MathError("minimal polynomial must have degree >= 1");
    low_.assign(desc.rbegin(), desc.rend() - 1);
    const int deg = degree();
    if (deg == 1) {
        verified_ = true;
    } else if (deg <= 3) {
        if (has_integer_root(low_))
            throw MathError("minimal polynomial is reducible over Q");
        verified_ = true;
    }
}

std::vector<BigInt> NumberField::coefficients_descending() const
{
    std::vector<BigInt> out{1};
    out.insert(out.end(), low_.rbegin(), low_.rend());
    return out;
}

FieldPtr NumberField::rationals()
{
    static const FieldPtr q = std::make_shared<NumberField>(std::vector<BigInt>{1, 0});
    return q;
}

FieldPtr NumberField::eisenstein()
{
    static const FieldPtr f = std::make_shared<NumberField>(std::vector<BigInt>{1, 1, 1});
    return f;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement() : FieldElement(NumberField::rationals()) {}

FieldElement::FieldElement(FieldPtr field) : field_(std::move(field)), c_(field_->degree()) {}

FieldElement::FieldElement(FieldPtr field, const Fraction& value) : FieldElement(std::move(field))
{
    c_[0] = value;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Fraction> coefficients) : FieldElement(std::move(field))
{
    if (coefficients.size() > c_.size()) {
        // reduce a longer polynomial modulo the minimal polynomial
        const auto& low = field_->lower_coefficients();
        const std::size_t deg = c_.size();
        for (std::size_t k = coefficients.size(); k-- > deg;) {
            Fraction top = coefficients[k];
            if (top == 0)
                continue;
            for (std::size_t j = 0; j < deg; ++j)
                coefficients[k - deg + j] -= top * Fraction(low[j]);
            coefficients[k] = 0;
        }
        coefficients.resize(deg);
    }
    std::copy(coefficients.begin(), coefficients.end(), c_.begin());
}

FieldElement FieldElement::generator(FieldPtr field)
{
    if (field->degree() == 1)
        return FieldElement(field, Fraction(-Fraction(field->lower_coefficients()[0])));
    FieldElement g(field);
    g.c_[1] = 1;
    return g;
}

bool FieldElement::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Fraction& q) { return q == 0; });
}

bool FieldElement::is_rational() const
{
    return std::all_of(c_.begin() + 1, c_.end(), [](const Fraction& q) { return q == 0; });
}

Fraction FieldElement::rational_value() const
{
    if (!is_rational())
        throw MathError("field element is not rational");
    return c_[0];
}

void FieldElement::check_same(const FieldElement& o) const
{
    if (field_ != o.field_ && !field_->same_as(*o.field_))
        throw MathError("field elements from different number fields");
}

FieldElement FieldElement::operator-() const
{
    FieldElement r(*this);
    for (auto& q : r.c_)
        q = -q;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o)
{
    check_same(o);
    for (std::size_t k = 0; k < c_.size(); ++k)
        c_[k] += o.c_[k];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o)
{
    check_same(o);
    for (std::size_t k = 0; k < c_.size(); ++k)
        c_[k] -= o.c_[k];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o)
{
    check_same(o);
    const std::size_t deg = c_.size();
    if (deg == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<Fraction> prod(2 * deg - 1);
    for (std::size_t i = 0; i < deg; ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < deg; ++j)
            prod[i + j] += c_[i] * o.c_[j];
    }
    *this = FieldElement(field_, std::move(prod));
    return *this;
}

FieldElement FieldElement::inverse() const
{
    if (is_zero())
        throw MathError("inverse of zero");
    const std::size_t deg = c_.size();
    if (deg == 1)
        return FieldElement(field_, Fraction(1 / c_[0]));
    // column k of the multiplication matrix is this * t^k
    RationalMatrix a(deg, deg + 1, Fraction(0));
    FieldElement power(field_, Fraction(1));
    const FieldElement t = generator(field_);
    for (std::size_t k = 0; k < deg; ++k) {
        FieldElement col = *this * power;
        for (std::size_t r = 0; r < deg; ++r)
            a(r, k) = col.c_[r];
        power *= t;
    }
    a(0, deg) = 1;
    auto pivots = row_reduce(a);
    if (pivots.size() != deg || pivots.back() >= deg)
        throw MathError("non-invertible element: minimal polynomial is not irreducible");
    std::vector<Fraction> x(deg);
    for (std::size_t r = 0; r < deg; ++r)
        x[pivots[r]] = a(r, deg);
    return FieldElement(field_, std::move(x));
}

bool operator==(const FieldElement& a, const FieldElement& b)
{
    a.check_same(b);
    return a.c_ == b.c_;
}

std::string FieldElement::to_string() const
{
    if (is_rational())
        return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0)
            continue;
        if (!first)
            os << (c_[k] > 0 ? " + " : " - ");
        else if (c_[k] < 0)
            os << "-";
        Fraction mag = abs(c_[k]);
        if (k == 0 || mag != 1)
            os << mag.get_str() << (k > 0 ? "*" : "");
        if (k == 1)
            os << "t";
        else if (k > 1)
            os << "t^" << k;
        first = false;
    }
    return os.str();
}

FieldElement field_arithmetic(const FieldElement& a, const FieldElement& b, FieldOp op)
{
    switch (op) {
    case FieldOp::add:
        return a + b;
    case FieldOp::mul:
        return a * b;
    case FieldOp::inv:
        return a.inverse();
    }
    throw MathError("unknown field operation");
}

// ---------------------------------------------------------------------------

namespace {

bool is_zero_entry(const Fraction& q) { return q == 0; }
bool is_zero_entry(const FieldElement& e) { return e.is_zero(); }
Fraction inverse_entry(const Fraction& q) { return 1 / q; }
FieldElement inverse_entry(const FieldElement& e) { return e.inverse(); }

template <typename T>
std::vector<std::size_t> rref(Matrix<T>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && is_zero_entry(m(p, col)))
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t c = col; c < m.cols(); ++c)
                std::swap(m(p, c), m(row, c));
        T inv = inverse_entry(m(row, col));
        for (std::size_t c = col; c < m.cols(); ++c)
            m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero_entry(m(r, col)))
                continue;
            T factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m(r, c) -= factor * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename T>
std::size_t echelon_rank(Matrix<T>& m)
{
    // forward elimination only
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && is_zero_entry(m(p, col)))
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t c = col; c < m.cols(); ++c)
                std::swap(m(p, c), m(row, c));
        T inv = inverse_entry(m(row, col));
        for (std::size_t r = row + 1; r < m.rows(); ++r) {
            if (is_zero_entry(m(r, col)))
                continue;
            T factor = m(r, col) * inv;
            for (std::size_t c = col; c < m.cols(); ++c)
                m(r, c) -= factor * m(row, c);
        }
        ++row;
    }
    return row;
}

}  // namespace

std::vector<std::size_t> row_reduce(RationalMatrix& m) { return rref(m); }
std::vector<std::size_t> row_reduce(ExactMatrix& m) { return rref(m); }

std::size_t rank(RationalMatrix m) { return echelon_rank(m); }

std::size_t rank(ExactMatrix m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    if (m(0, 0).field()->degree() == 1) {
        RationalMatrix q(m.rows(), m.cols(), Fraction(0));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                q(r, c) = m(r, c).coefficients()[0];
        return echelon_rank(q);
    }
    return echelon_rank(m);
}

std::vector<FractionVector> kernel(const RationalMatrix& m)
{
    RationalMatrix r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<FractionVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        FractionVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool AffineSubspace::contains(std::span<const Fraction> x) const
{
    if (x.size() != ambient_dim)
        return false;
    // x - base in span(direction_basis)
    RationalMatrix m(ambient_dim, direction_basis.size() + 1, Fraction(0));
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        for (std::size_t k = 0; k < direction_basis.size(); ++k)
            m(i, k) = direction_basis[k][i];
        m(i, direction_basis.size()) = x[i] - base_point[i];
    }
    auto pivots = rref(m);
    return pivots.empty() || pivots.back() != direction_basis.size();
}

std::optional<AffineSubspace> solve_affine(const RationalMatrix& a, std::span<const Fraction> b)
{
    if (a.rows() != b.size())
        throw MathError("solve_affine: row count and right-hand side differ");
    const std::size_t n = a.cols();
    RationalMatrix aug(a.rows(), n + 1, Fraction(0));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n)
        return std::nullopt;
    AffineSubspace s;
    s.ambient_dim = n;
    s.base_point.assign(n, Fraction(0));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        s.base_point[pivots[i]] = aug(i, n);
    RationalMatrix lhs(a.rows(), n, Fraction(0));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c)
            lhs(r, c) = a(r, c);
    s.direction_basis = kernel(lhs);
    return s;
}

// ---------------------------------------------------------------------------
// Dense two-phase simplex with Bland's rule.

namespace {

struct Tableau {
    // rows 0..m-1 constraints, row m objective (reduced costs, maximization form)
    std::size_t m, n;
    RationalMatrix t;
    std::vector<std::size_t> basis;

    void pivot(std::size_t row, std::size_t col)
    {
        Fraction inv = 1 / t(row, col);
        for (std::size_t c = 0; c <= n; ++c)
            t(row, c) *= inv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == row || t(r, col) == 0)
                continue;
            Fraction f = t(r, col);
            for (std::size_t c = 0; c <= n; ++c)
                t(r, c) -= f * t(row, c);
        }
        basis[row] = col;
    }

    // Objective row holds -c_j + ..., optimal when all entries >= 0.
    bool optimize(const std::vector<bool>& allowed)
    {
        for (;;) {
            std::size_t enter = n;
            for (std::size_t c = 0; c < n; ++c)
                if (allowed[c] && t(m, c) < 0) {
                    enter = c;
                    break;
                }
            if (enter == n)
                return true;
            std::size_t leave = m;
            Fraction best;
            for (std::size_t r = 0; r < m; ++r) {
                if (t(r, enter) <= 0)
                    continue;
                Fraction ratio = t(r, n) / t(r, enter);
                if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == m)
                return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult maximize_lp(const RationalMatrix& a, std::span<const Fraction> b, std::span<const Fraction> c)
{
    const std::size_t m = a.rows();
    const std::size_t nv = a.cols();
    if (b.size() != m || c.size() != nv)
        throw MathError("maximize_lp: dimension mismatch");
    // columns: original nv, slacks m, artificials m
    const std::size_t n = nv + 2 * m;
    Tableau tab{m, n, RationalMatrix(m + 1, n + 1, Fraction(0)), std::vector<std::size_t>(m)};
    std::vector<bool> needs_art(m, false);
    for (std::size_t r = 0; r < m; ++r) {
        const bool neg = b[r] < 0;
        const int s = neg ? -1 : 1;
        for (std::size_t j = 0; j < nv; ++j)
            tab.t(r, j) = s * a(r, j);
        tab.t(r, nv + r) = s;
        tab.t(r, n) = s * b[r];
        if (neg) {
            needs_art[r] = true;
            tab.t(r, nv + m + r) = 1;
            tab.basis[r] = nv + m + r;
        } else {
            tab.basis[r] = nv + r;
        }
    }
    std::vector<bool> allowed(n, true);
    // phase 1: maximize -sum(artificials)
    bool any_art = std::any_of(needs_art.begin(), needs_art.end(), [](bool v) { return v; });
    if (any_art) {
        for (std::size_t r = 0; r < m; ++r)
            if (needs_art[r])
                for (std::size_t col = 0; col <= n; ++col)
                    if (col < nv + m || col == n)
                        tab.t(m, col) -= tab.t(r, col);
        tab.optimize(allowed);
        if (tab.t(m, n) != 0)
            return {LpResult::Status::infeasible, Fraction(0), {}};
        // drive remaining artificials out of the basis
        for (std::size_t r = 0; r < m; ++r) {
            if (tab.basis[r] < nv + m)
                continue;
            for (std::size_t col = 0; col < nv + m; ++col)
                if (tab.t(r, col) != 0) {
                    tab.pivot(r, col);
                    break;
                }
        }
    }
    for (std::size_t col = nv + m; col < n; ++col)
        allowed[col] = false;
    // phase 2 objective row: -c, then price out basics
    for (std::size_t col = 0; col <= n; ++col)
        tab.t(m, col) = 0;
    for (std::size_t j = 0; j < nv; ++j)
        tab.t(m, j) = -c[j];
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t bcol = tab.basis[r];
        if (tab.t(m, bcol) == 0)
            continue;
        Fraction f = tab.t(m, bcol);
        for (std::size_t col = 0; col <= n; ++col)
            tab.t(m, col) -= f * tab.t(r, col);
    }
    if (!tab.optimize(allowed))
        return {LpResult::Status::unbounded, Fraction(0), {}};
    LpResult res{LpResult::Status::optimal, tab.t(m, n), FractionVector(nv)};
    for (std::size_t r = 0; r < m; ++r)
        if (tab.basis[r] < nv)
            res.point[tab.basis[r]] = tab.t(r, n);
    return res;
}

bool meets_half_open_box(const AffineSubspace& s)
{
    const std::size_t n = s.ambient_dim;
    const std::size_t k = s.dimension();
    auto in_box = [&](const FractionVector& x) {
        return std::all_of(x.begin(), x.end(), [](const Fraction& v) { return v >= 0 && v < 1; });
    };
    if (k == 0)
        return in_box(s.base_point);

    // When direction j is the unit vector on a free coordinate c_j (zero on the
    // other free coordinates, base point zero there), lambda_j = x_{c_j} >= 0
    // and the LP needs k + 1 variables instead of 2k + 1.
    std::vector<std::size_t> free_coord(k, n);
    std::vector<bool> is_free(n, false);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n && free_coord[j] == n; ++i) {
            if (s.direction_basis[j][i] != 1 || s.base_point[i] != 0 || is_free[i])
                continue;
            bool unit = true;
            for (std::size_t l = 0; l < k && unit; ++l)
                unit = l == j || s.direction_basis[l][i] == 0;
            if (unit) {
                free_coord[j] = i;
                is_free[i] = true;
            }
        }
    }
    if (std::none_of(free_coord.begin(), free_coord.end(), [&](std::size_t c) { return c == n; })) {
        const std::size_t nv = k + 1;
        RationalMatrix a(0, 0, Fraction(0));
        FractionVector b;
        for (std::size_t i = 0; i < n; ++i) {
            FractionVector lo(nv), hi(nv);
            bool moving = false;
            for (std::size_t j = 0; j < k; ++j) {
                const Fraction& d = s.direction_basis[j][i];
                lo[j] = -d;
                hi[j] = d;
                moving = moving || d != 0;
            }
            hi[k] = 1;
            if (!moving && (s.base_point[i] < 0 || s.base_point[i] >= 1))
                return false;
            if (moving && !is_free[i]) {
                a.append_row(lo);
                b.push_back(s.base_point[i]);
            }
            a.append_row(hi);
            b.push_back(1 - s.base_point[i]);
        }
        FractionVector cap(nv), c(nv);
        cap[k] = 1;
        c[k] = 1;
        a.append_row(cap);
        b.push_back(Fraction(1));
        auto res = maximize_lp(a, b, c);
        return res.status == LpResult::Status::optimal && res.value > 0;
    }

    // variables: lambda+ (k), lambda- (k), slack s; maximize s
    const std::size_t nv = 2 * k + 1;
    RationalMatrix a(0, 0, Fraction(0));
    FractionVector b;
    auto add_row = [&](const FractionVector& row, const Fraction& rhs) {
        a.append_row(row);
        b.push_back(rhs);
    };
    for (std::size_t i = 0; i < n; ++i) {
        FractionVector lo(nv), hi(nv);
        for (std::size_t j = 0; j < k; ++j) {
            const Fraction& d = s.direction_basis[j][i];
            lo[j] = -d;
            lo[k + j] = d;
            hi[j] = d;
            hi[k + j] = -d;
        }
        hi[2 * k] = 1;
        add_row(lo, s.base_point[i]);          // -(p + D lambda)_i <= 0
        add_row(hi, 1 - s.base_point[i]);      // (p + D lambda)_i + s <= 1
    }
    FractionVector cap(nv);
    cap[2 * k] = 1;
    add_row(cap, Fraction(1));
    FractionVector c(nv);
    c[2 * k] = 1;
    auto res = maximize_lp(a, b, c);
    return res.status == LpResult::Status::optimal && res.value > 0;
}

bool is_negative_definite(const RationalMatrix& m)
{
    const std::size_t n = m.rows();
    if (n != m.cols())
        throw MathError("is_negative_definite: matrix not square");
    // Sylvester: leading principal minors of -m positive; via pivots of LDL-style elimination
    RationalMatrix a(n, n, Fraction(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = -m(i, j);
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) <= 0)
            return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0)
                continue;
            Fraction f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j)
                a(i, j) -= f * a(k, j);
        }
    }
    return true;
}

RationalMatrix inverse(const RationalMatrix& m)
{
    const std::size_t n = m.rows();
    if (n != m.cols())
        throw MathError("inverse: matrix not square");
    RationalMatrix aug(n, 2 * n, Fraction(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        throw MathError("inverse: matrix is singular");
    RationalMatrix out(n, n, Fraction(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = aug(i, n + j);
    return out;
}

}  // namespace multiplane
