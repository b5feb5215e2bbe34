#pragma once

// Proximity clusters of one singular point: infinitely near points with
// per-curve multiplicities, the derived valuation vectors, canonical
// coefficients, intersection matrix and branch basis, plus the cluster
// form of mixed multiplier ideals and the scanners built on it.

#include "multiplane/exactmath.hpp"

#include <optional>
#include <string>
#include <vector>

namespace multiplane {

/// Tangent direction of an infinitely near point in the chart of its parent.
/// In the local coordinates (u, v) of the parent chart a finite direction t
/// is the line v = t u; infinity is the line u = 0.
struct Direction {
    bool at_infinity = false;
    FieldElement slope;

    static Direction infinity() { return {true, FieldElement()}; }
    static Direction finite(FieldElement t) { return {false, std::move(t)}; }
};

struct ClusterPosition {
    std::string id;
    int parent = -1;  // -1 marks the planar point
    int extra = -1;   // second proximity of a satellite point
    std::optional<Direction> direction;
    std::vector<long> multiplicities;  // one per curve of the configuration
};

class ClusterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResolutionCluster {
public:
    /// Positions must be listed parents first. Every position carries one
    /// multiplicity per curve; missing curves have multiplicity zero.
    ResolutionCluster(std::string point_id, std::vector<ClusterPosition> positions, std::size_t curve_count);

    /// Single blowup with multiplicity one along each listed curve.
    static ResolutionCluster ordinary_point(std::string point_id, std::size_t curve_count,
                                            const std::vector<std::size_t>& curves);

    const std::string& point_id() const { return point_id_; }
    std::size_t size() const { return pos_.size(); }
    std::size_t curve_count() const { return curves_; }
    const ClusterPosition& position(std::size_t a) const { return pos_[a]; }
    int index_of(const std::string& id) const;

    /// Positions that a is proximate to (parent, and extra for satellites).
    const std::vector<std::size_t>& proximate_to(std::size_t a) const { return prox_[a]; }
    bool is_satellite(std::size_t a) const { return pos_[a].extra >= 0; }

    long e(std::size_t curve, std::size_t a) const { return e_[curve][a]; }
    long e_total(std::size_t a) const;
    long k(std::size_t a) const { return k_[a]; }
    const RationalMatrix& intersection_matrix() const { return inter_; }
    /// Column r is the branch basis divisor B_r in the E basis.
    const RationalMatrix& branch_basis() const { return branch_; }
    /// Number of strict-transform branches of each curve meeting E_a (with multiplicity).
    long attachments(std::size_t curve, std::size_t a) const { return attach_[curve][a]; }
    std::size_t exceptional_neighbours(std::size_t a) const { return neighbours_[a].size(); }
    const std::vector<std::size_t>& neighbours(std::size_t a) const { return neighbours_[a]; }

    const std::vector<std::size_t>& relevant_positions() const { return relevant_; }
    bool is_relevant(std::size_t a) const;

    /// Direction used when localizing position a, defaults filled in.
    const Direction& resolved_direction(std::size_t a) const { return dir_[a]; }

    /// Structural signature (proximities, directions) used as a memo key.
    const std::string& shape_key() const { return shape_key_; }

private:
    void derive();
    void simulate_blowups();
    void resolve_directions();

    std::string point_id_;
    std::vector<ClusterPosition> pos_;
    std::size_t curves_;
    std::vector<std::vector<std::size_t>> prox_;
    std::vector<std::vector<long>> e_;
    std::vector<long> k_;
    std::vector<std::vector<long>> attach_;
    std::vector<std::vector<std::size_t>> neighbours_;
    RationalMatrix inter_;
    RationalMatrix branch_;
    std::vector<std::size_t> relevant_;
    std::vector<Direction> dir_;
    std::string shape_key_;
};

/// Required orders of vanishing c^a along each E_a.
struct ClusterIdeal {
    const ResolutionCluster* cluster = nullptr;
    std::vector<long> c;

    bool is_trivial() const;
    long max_order() const;
    friend bool operator==(const ClusterIdeal& a, const ClusterIdeal& b) { return a.c == b.c; }
};

/// c^r = max(0, floor(sum_i x^i e_i^r) - k^r) at relevant positions only.
ClusterIdeal mixed_mi_cluster(const ResolutionCluster& cl, std::span<const Fraction> x);
/// Same at every position.
ClusterIdeal mixed_mi_cluster_full(const ResolutionCluster& cl, std::span<const Fraction> x);

/// Valuation vector of the relevant ideal of r: column r of the branch basis.
std::vector<long> relevant_ideal_valuations(const ResolutionCluster& cl, std::size_t r);

/// Jumping numbers in (0, bound] of the complete ideal with valuations e (one per position).
std::vector<Fraction> jumping_scan(const ResolutionCluster& cl, std::span<const long> e, const Fraction& bound);

/// Confirmed relevant values r at relevant position rho with walls meeting (0, bound)^t.
std::vector<long> relevant_values(const ResolutionCluster& cl, std::size_t rho, const Fraction& bound);

}  // namespace multiplane
