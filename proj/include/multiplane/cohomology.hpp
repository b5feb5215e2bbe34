#pragma once

// Zero-dimensional cluster schemes in P^2 and the cohomology of their
// twisted ideal sheaves: conditions on forms, colength, h0 and h1.

#include "multiplane/exactmath.hpp"
#include "multiplane/singularity.hpp"

#include <array>
#include <string>
#include <vector>

namespace multiplane {

/// Embed an element of Q, or of the same field, into K.
FieldElement embed(const FieldElement& a, const FieldPtr& K);

/// Projective point, normalized so that its first nonzero coordinate is 1.
/// Local coordinates there: with k the index of that coordinate and j < l the
/// other two, u = X_j/X_k - p_j and v = X_l/X_k - p_l.
std::vector<FieldElement> normalize_point(std::vector<FieldElement> coords);

/// Linear conditions on the local monomials u^a v^b (a + b < c_max, graded
/// lexicographic order, see local_monomial_index) cutting out the ideal.
/// Rows are linearly independent; their number is the local colength.
ExactMatrix local_conditions(const ClusterIdeal& ideal, const FieldPtr& K);
std::size_t local_colength(const ClusterIdeal& ideal, const FieldPtr& K = NumberField::rationals());
/// Position of u^a v^b among local monomials of degree < D: degree-major, then by b.
std::size_t local_monomial_index(std::size_t a, std::size_t b);

struct SchemePoint {
    std::vector<FieldElement> coords;  // projective, normalized
    ClusterIdeal ideal;
};

class PointScheme {
public:
    explicit PointScheme(FieldPtr field) : field_(std::move(field)) {}

    void add_point(std::vector<FieldElement> coords, ClusterIdeal ideal);
    const FieldPtr& field() const { return field_; }
    const std::vector<SchemePoint>& points() const { return points_; }

private:
    FieldPtr field_;
    std::vector<SchemePoint> points_;
};

/// Matrix whose kernel is the space of degree-d forms in the ideal.
/// Columns index monomials x^a y^b z^c in the order of form_monomials(d).
ExactMatrix conditions_matrix(const PointScheme& scheme, int d);
std::vector<std::array<int, 3>> form_monomials(int d);

std::size_t colength(const PointScheme& scheme);
long h0(const PointScheme& scheme, int d);
/// h^1(P^2, I(d)); requires d >= -3.
long h1(const PointScheme& scheme, int d);
long euler_characteristic(const PointScheme& scheme, int d);
long h2(int d);

}  // namespace multiplane
