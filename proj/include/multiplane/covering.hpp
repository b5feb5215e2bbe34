#pragma once

// Abelian covers of P^2 branched along a partitioned curve: reduced building
// data, the line bundles L_chi, the normalization step, and the irregularity
// by a character sum, by distinguished faces and by the triple-point formula.

#include "multiplane/cohomology.hpp"
#include "multiplane/configuration.hpp"
#include "multiplane/counting.hpp"
#include "multiplane/walls.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace multiplane {

class UnsupportedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InfinityMode { transverse, component };

struct CoveringSpec {
    std::shared_ptr<const Configuration> config;
    /// Columns follow config->curves; row j is the generator of order orders[j].
    CharacterGrid grid;
    InfinityMode infinity = InfinityMode::transverse;
    int infinity_curve = -1;  // index into config->curves in component mode

    void validate() const;
    /// mu_j^0 = ceil(sum_i mu_j^i d_i / n_j) n_j - sum_i mu_j^i d_i for each generator.
    std::vector<long> infinity_multiplicities() const;
    /// The grid with mu_j^0 added to the infinity column; the grid itself in transverse mode.
    CharacterGrid effective_grid() const;
};

// ---------------------------------------------------------------------------
// Reduced building data

struct BranchPart {
    std::string label;
    long order = 1;                        // m_f
    std::map<std::string, long> divisor;   // B_f as a combination of curves
    std::vector<long> values;              // f(chi_j) in [0, m_f)
};

struct BuildingData {
    std::vector<long> orders;              // n_j
    std::vector<Fraction> bundle_degrees;  // deg L_{chi_j}
    std::vector<BranchPart> parts;
    std::map<std::string, long> curve_degrees;

    /// Degree-wise check of n_j L_{chi_j} = sum_f (n_j f(chi_j)/m_f) B_f.
    bool relations_hold() const;
    /// One branch part per curve with nonzero column, plus the line at infinity.
    static BuildingData from_spec(const CoveringSpec& spec);
};

struct DivisorClass {
    Fraction degree;
    std::map<std::string, BigInt> subtracted;  // curve -> multiplicity removed by the floors

    bool is_trivial() const { return degree == 0 && subtracted.empty(); }
};

DivisorClass l_chi(const BuildingData& data, std::span<const long> a);
DivisorClass normalize_step(const BuildingData& data, const std::string& curve, const std::string& f,
                            const std::string& g, std::span<const long> a);

// ---------------------------------------------------------------------------
// Irregularity

enum class Method { direct, faces, triple };
std::string method_name(Method m);

struct IrregularityOptions {
    SweepOptions sweep;
    /// Faces method: above this many characters the distinguished faces are
    /// counted by face parametrization instead of a full sweep.
    std::uint64_t threshold = 100'000'000;
    /// Largest number of lattice points enumerated on one face.
    std::uint64_t face_budget = 100'000'000;
    std::size_t max_faces = 50000;
};

/// One group of characters sharing the data that fixes their h^1 term.
struct Contribution {
    std::vector<std::size_t> on;           // faces: hyperplanes of the face; triple: points of A_W
    std::vector<std::size_t> ideal_points; // points with a nontrivial ideal
    std::string label;
    long twist = 0;
    long h1 = 0;
    BigInt characters = 0;
    std::vector<long> representative;
};

struct IrregularityResult {
    Method method = Method::direct;
    BigInt q = 0;
    std::vector<Contribution> contributions;  // only those with h1 > 0
    bool connected = true;
    std::vector<JumpingWall> walls;           // faces method
    Arrangement arrangement;                  // faces method
};

IrregularityResult irregularity(const CoveringSpec& spec, Method method, const IrregularityOptions& opt = {});
inline IrregularityResult irregularity_direct(const CoveringSpec& s, const IrregularityOptions& o = {})
{
    return irregularity(s, Method::direct, o);
}
inline IrregularityResult irregularity_faces(const CoveringSpec& s, const IrregularityOptions& o = {})
{
    return irregularity(s, Method::faces, o);
}
inline IrregularityResult irregularity_triple(const CoveringSpec& s, const IrregularityOptions& o = {})
{
    return irregularity(s, Method::triple, o);
}

/// Scheme of the mixed multiplier ideals at x (curve coordinates of the configuration).
PointScheme multiplier_scheme(const Configuration& config, std::span<const Fraction> x);

}  // namespace multiplane
