#pragma once

// Exact arithmetic: rationals, simple algebraic extensions Q(theta), and
// linear algebra over both (rank, kernels, affine solution sets, a small
// exact simplex used for box-feasibility of faces).

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace multiplane {

using BigInt = mpz_class;
using Fraction = mpq_class;
using FractionVector = std::vector<Fraction>;

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Fraction make_fraction(long num, long den = 1);
Fraction parse_fraction(const std::string& text);
std::string to_string(const Fraction& q);

BigInt floor_of(const Fraction& q);
BigInt ceil_of(const Fraction& q);
/// Fractional part in [0,1).
Fraction frac_part(const Fraction& q);
/// Limit of floor(q - eps) as eps -> 0+: q-1 when q is an integer, floor(q) otherwise.
BigInt left_floor(const Fraction& q);
bool is_integer(const Fraction& q);
long to_long(const BigInt& z);

BigInt lcm_of(std::span<const BigInt> values);

// ---------------------------------------------------------------------------
// Number fields

/// Q[t]/(f) for a monic integer polynomial f. Degree 1 is Q itself.
class NumberField {
public:
    /// Coefficients from the leading term down, e.g. {1,1,1} for t^2+t+1.
    explicit NumberField(std::vector<BigInt> coefficients_descending);

    static std::shared_ptr<const NumberField> rationals();
    static std::shared_ptr<const NumberField> eisenstein();  // t^2+t+1

    int degree() const { return static_cast<int>(low_.size()); }
    /// Ascending coefficients c_0..c_{deg-1} of the monic minimal polynomial (leading 1 omitted).
    const std::vector<BigInt>& lower_coefficients() const { return low_; }
    std::vector<BigInt> coefficients_descending() const;
    /// True when irreducibility was actually checked (degree <= 3).
    bool irreducibility_verified() const { return verified_; }
    bool same_as(const NumberField& other) const { return low_ == other.low_; }

private:
    std::vector<BigInt> low_;
    bool verified_ = false;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class FieldElement {
public:
    FieldElement();  // zero of Q
    explicit FieldElement(FieldPtr field);
    FieldElement(FieldPtr field, const Fraction& value);
    FieldElement(FieldPtr field, std::vector<Fraction> coefficients);

    static FieldElement generator(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Fraction>& coefficients() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    /// Only valid when is_rational().
    Fraction rational_value() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement inverse() const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    std::string to_string() const;

private:
    void check_same(const FieldElement& o) const;

    FieldPtr field_;
    std::vector<Fraction> c_;
};

enum class FieldOp { add, mul, inv };
FieldElement field_arithmetic(const FieldElement& a, const FieldElement& b, FieldOp op);

// ---------------------------------------------------------------------------
// Matrices

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(std::span<const T> row)
    {
        if (rows_ == 0 && cols_ == 0)
            cols_ = row.size();
        if (row.size() != cols_)
            throw MathError("append_row: column count mismatch");
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Fraction>;
using ExactMatrix = Matrix<FieldElement>;

std::size_t rank(ExactMatrix m);
std::size_t rank(RationalMatrix m);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m);
std::vector<std::size_t> row_reduce(ExactMatrix& m);

/// Basis of {x : m x = 0}.
std::vector<FractionVector> kernel(const RationalMatrix& m);

struct AffineSubspace {
    FractionVector base_point;
    std::vector<FractionVector> direction_basis;
    std::size_t ambient_dim = 0;

    std::size_t dimension() const { return direction_basis.size(); }
    bool contains(std::span<const Fraction> x) const;
};

/// Full solution set of A x = b, or nullopt when inconsistent.
std::optional<AffineSubspace> solve_affine(const RationalMatrix& a, std::span<const Fraction> b);

/// Result of maximizing c.y subject to A y <= b, y >= 0.
struct LpResult {
    enum class Status { optimal, infeasible, unbounded } status;
    Fraction value;
    FractionVector point;
};
LpResult maximize_lp(const RationalMatrix& a, std::span<const Fraction> b, std::span<const Fraction> c);

/// True iff the subspace has a point with 0 <= x_i < 1 for every coordinate.
bool meets_half_open_box(const AffineSubspace& s);

/// Determinant-free negative-definiteness test (Sylvester on -m).
bool is_negative_definite(const RationalMatrix& m);
/// Inverse of a square non-singular rational matrix.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace multiplane
