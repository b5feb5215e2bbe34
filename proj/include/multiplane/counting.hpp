#pragma once

// Characters of Z/n_1 x ... x Z/n_s, their images in [0,1)^t, lattice counts
// of cells, composition counters and quasi-polynomial fitting.

#include "multiplane/exactmath.hpp"
#include "multiplane/sweep.hpp"
#include "multiplane/walls.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace multiplane {

/// matrix[j][i] = mu_j^i: row j is the generator j, column i the curve i.
struct CharacterGrid {
    std::vector<long> orders;
    std::vector<std::vector<long>> matrix;

    void validate(std::size_t curves) const;
    std::size_t generators() const { return orders.size(); }
    std::size_t curves() const { return matrix.empty() ? 0 : matrix[0].size(); }
    /// N = lcm of the orders; x^i = X_i / N.
    long modulus() const;
    BigInt character_count() const;
    /// X_i in [0, N) for the character a.
    std::vector<long> image(std::span<const long> a) const;
    SweepLayout layout(std::uint64_t min_chunks = 256) const;
};

/// x^i = frac(sum_j mu_j^i a^j / n_j).
FractionVector phi(const CharacterGrid& grid, std::span<const long> a);

/// Image of the characters in (Z/N)^t via a Smith normal form of the step matrix.
class GridImage {
public:
    explicit GridImage(const CharacterGrid& grid);
    bool contains(std::span<const long> X) const;
    /// Number of characters over each image point.
    const BigInt& fibre_size() const { return fibre_; }

private:
    long modulus_;
    std::vector<std::vector<BigInt>> u_;  // row transform
    std::vector<BigInt> divisor_;         // modulus each transformed coordinate must vanish at
    BigInt fibre_;
};

enum class CountStrategy { automatic, enumerate, face };

struct CountOptions {
    CountStrategy strategy = CountStrategy::automatic;
    std::uint64_t threshold = 10'000'000;
    SweepOptions sweep;
};

/// Characters a with phi(a) in the cell.
BigInt count_cell(const Arrangement& arr, const Cell& cell, const CharacterGrid& grid, const CountOptions& opt = {});

/// Cells of the face with their character counts, by face parametrization.
/// Throws MathError when the face has more than budget lattice points.
std::vector<std::pair<Cell, BigInt>> face_cells(const Arrangement& arr, const Face& face, const CharacterGrid& grid,
                                                std::uint64_t budget);

/// Number of k-tuples in {0,...,n-1}^k summing to m.
BigInt sigma(int k, long m, long n);

struct QuasiPolynomial {
    long period = 1;
    std::vector<std::vector<Fraction>> constituents;  // ascending coefficients

    Fraction operator()(long n) const;
    std::string to_string() const;
};

/// Exact interpolation per residue class from the smallest degree+1 values of n
/// in each class; every other supplied value must match.
QuasiPolynomial ehrhart_fit(const std::map<long, BigInt>& counts, long period, int degree);

}  // namespace multiplane
