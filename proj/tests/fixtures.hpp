#pragma once

#include "multiplane/singularity.hpp"

#include <vector>

namespace fixtures {

using multiplane::ClusterPosition;
using multiplane::ResolutionCluster;

inline ClusterPosition pos(int parent, int extra, std::vector<long> m)
{
    ClusterPosition p;
    p.id = "p";
    p.parent = parent;
    p.extra = extra;
    p.multiplicities = std::move(m);
    return p;
}

inline ResolutionCluster make(std::vector<ClusterPosition> ps, std::size_t curves)
{
    for (std::size_t a = 0; a < ps.size(); ++a)
        ps[a].id = std::to_string(a + 1);
    return ResolutionCluster("P", std::move(ps), curves);
}

// two branches: (u^3, v^2)-type cusp and a (u^6, v^2)-type tacnode-like pair
inline ResolutionCluster two_cusps()
{
    return make({pos(-1, -1, {2, 2}), pos(0, -1, {1, 2}), pos(1, 0, {1, 0}), pos(1, -1, {0, 2})}, 2);
}

inline ResolutionCluster cusp()
{
    return make({pos(-1, -1, {2}), pos(0, -1, {1}), pos(1, 0, {1})}, 1);
}

// seven positions, two branches
inline ResolutionCluster seven_positions()
{
    return make({pos(-1, -1, {4, 2}), pos(0, -1, {2, 2}), pos(1, 0, {2, 0}), pos(2, -1, {1, 0}),
                 pos(3, 2, {1, 0}), pos(1, -1, {0, 1}), pos(5, 1, {0, 1})},
                2);
}

// two conics tangent at the point (curve 0) and a transverse line (curve 1)
inline ResolutionCluster tacnode_line()
{
    return make({pos(-1, -1, {2, 1}), pos(0, -1, {2, 0})}, 2);
}

inline ResolutionCluster ordinary(std::size_t m)
{
    std::vector<std::size_t> curves(m);
    for (std::size_t i = 0; i < m; ++i)
        curves[i] = i;
    return ResolutionCluster::ordinary_point("P", m, curves);
}

}  // namespace fixtures
