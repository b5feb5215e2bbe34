#pragma once

// Line arrangements turned into configurations, and the builtin examples.

#include "multiplane/configuration.hpp"
#include "multiplane/covering.hpp"

#include <array>
#include <string>
#include <vector>

namespace multiplane {

struct ArrangementInput {
    FieldPtr field = NumberField::rationals();
    std::vector<std::string> names;
    std::vector<std::array<FieldElement, 3>> lines;  // ax + by + cz
};

/// One curve per line and an ordinary point at every point where two or more
/// lines meet. Points are named P1, P2, ... in order of discovery.
Configuration arrangement_geometry(const ArrangementInput& input);

struct CatalogEntry {
    std::string name;
    std::string summary;
    bool needs_n = true;
};

std::vector<CatalogEntry> catalog_entries();

/// Covering of a builtin example with all orders equal to n.
CoveringSpec builtin(const std::string& name, long n);

/// Builtin configurations without a covering.
Configuration ceva_configuration();
Configuration hesse_pencil_configuration();
Configuration hesse_dual_configuration();
/// Two conics tangent at two points and the line through them; the conics
/// form one curve of degree 4 unless split.
Configuration tangent_conics_configuration(bool split, bool with_line = true);

}  // namespace multiplane
