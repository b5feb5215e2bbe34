#pragma once

// Jumping walls of a configuration, the hyperplane arrangement they form
// together with the coordinate hyperplanes, its faces meeting [0,1)^t and
// the cells of a face.

#include "multiplane/configuration.hpp"
#include "multiplane/exactmath.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace multiplane {

struct WallSource {
    std::size_t point = 0;
    std::size_t position = 0;
    long value = 0;  // r in sum_i e_i x^i = r
};

/// Geometric wall normal . x = rhs with primitive integer data.
struct JumpingWall {
    std::vector<long> normal;
    long rhs = 0;
    std::vector<WallSource> sources;
    std::vector<std::string> point_ids;
};

/// Walls of every relevant position of every point meeting (0,1)^t,
/// merged when several sources give the same hyperplane.
std::vector<JumpingWall> all_walls(const Configuration& config);

/// Hyperplanes normal . x = rhs: walls first, then x^i = 0 for each curve.
struct Arrangement {
    std::size_t dim = 0;
    std::size_t wall_count = 0;
    std::vector<std::vector<long>> normals;
    std::vector<long> rhs;

    static Arrangement from_walls(const std::vector<JumpingWall>& walls, std::size_t dim);
    std::size_t size() const { return normals.size(); }
    bool is_wall(std::size_t h) const { return h < wall_count; }
    /// Sign of normal . x - rhs.
    int side(std::size_t h, std::span<const Fraction> x) const;
};

struct Face {
    std::vector<std::size_t> on;  // every hyperplane containing the face, sorted
    AffineSubspace subspace;
    bool distinguished = false;
    std::optional<Fraction> height;  // value of d . x on a distinguished face
};

/// Face cut out by the given hyperplanes, or nullopt when they do not meet.
std::optional<Face> make_face(const Arrangement& arr, std::span<const std::size_t> hyperplanes,
                              std::span<const long> degrees);

/// d lies in the span of the normals of the hyperplanes.
bool is_distinguished(const Arrangement& arr, std::span<const std::size_t> on, std::span<const long> degrees);

/// Faces lying on at least one wall and meeting [0,1)^t. Throws MathError when
/// more than max_faces are found. Sorted: distinguished by height first.
std::vector<Face> faces(const Arrangement& arr, std::span<const long> degrees, std::size_t max_faces = 50000);

struct Cell {
    std::vector<std::size_t> face_on;
    std::vector<int> signs;  // one per hyperplane, 0 exactly on face_on
    FractionVector representative;
    std::size_t members = 0;
};

/// Readable form of hyperplane h, such as "C1+C2+C3=2 [P1]".
std::string hyperplane_text(const Arrangement& arr, std::size_t h, const Configuration& config,
                            const std::vector<JumpingWall>& walls);

/// Group points of the face by sign vector. Points off the face, or on a
/// smaller face, are rejected with MathError.
std::vector<Cell> cells(const Arrangement& arr, const Face& face, const std::vector<FractionVector>& points);

}  // namespace multiplane
