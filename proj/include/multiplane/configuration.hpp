#pragma once

// A plane curve with a partition into curves C_1..C_t, its singular points
// with planar coordinates and resolution clusters.

#include "multiplane/exactmath.hpp"
#include "multiplane/singularity.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace multiplane {

struct Curve {
    std::string name;
    long degree = 1;
};

struct SingularPoint {
    std::string id;
    std::vector<FieldElement> coords;  // projective
    std::shared_ptr<const ResolutionCluster> cluster;

    /// Multiplicity of the whole curve at the point.
    long multiplicity() const;
    /// Curves through the point.
    std::vector<std::size_t> curves() const;
};

struct Configuration {
    FieldPtr field = NumberField::rationals();
    std::vector<Curve> curves;
    std::vector<SingularPoint> points;
    /// Line coefficients (a, b, c) of ax + by + cz when the curves are lines.
    std::vector<std::array<FieldElement, 3>> lines;

    std::vector<long> degrees() const;
    int curve_index(const std::string& name) const;
    int point_index(const std::string& id) const;
};

}  // namespace multiplane
