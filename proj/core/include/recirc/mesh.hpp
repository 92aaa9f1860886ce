#ifndef RECIRC_MESH_HPP
#define RECIRC_MESH_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "recirc/types.hpp"

namespace recirc {

enum class Side { Bottom, Right, Top, Left };

std::string side_name(Side s);
Side side_from_name(const std::string& name);

/// Outward unit normal of a rectangle side.
Vec2 side_normal(Side s);

/// Interval on a named rectangle side, in the side's axis coordinate (meters).
struct Span {
    Side side = Side::Bottom;
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

struct PumpPair {
    Span collector;
    Span injector;
};

/// Collector/injector geometry. Spans must be pairwise disjoint, strictly
/// inside their side, with positive length, and off the surface side.
struct PumpLayout {
    std::vector<PumpPair> pairs;
    Side surface_side = Side::Top;

    int pump_count() const { return static_cast<int>(pairs.size()); }

    /// No pumps; only the surface/normal split of the boundary.
    static PumpLayout none();

    /// Four pairs mimicking the symmetric reference configuration: collectors
    /// of 1 m on the upper third of the lateral sides, injectors of 1 m on
    /// the bottom, mirror-symmetric about the vertical midline.
    static PumpLayout symmetric4(double width, double height);
};

struct BoundaryTag {
    enum Kind { S, N, C, T } kind = N;
    int pump = -1;  // 0-based pair index for C/T

    friend bool operator==(const BoundaryTag&, const BoundaryTag&) = default;
    friend auto operator<=>(const BoundaryTag&, const BoundaryTag&) = default;
};

std::string tag_name(BoundaryTag t);

/// Boundary edge (a,b ordered by increasing side coordinate) with its
/// quadratic midpoint dof and tag.
struct BoundaryEdge {
    int a = 0;
    int b = 0;
    int mid_dof = 0;
    Side side = Side::Bottom;
    BoundaryTag tag;
};

/// Conforming structured triangulation of the rectangle [0,w] x [0,h_dom].
/// Cells are split along mirrored diagonals (left half "/", right half "\")
/// so a symmetric layout yields a left-right symmetric discrete problem.
struct Mesh {
    double width = 0.0, height = 0.0, h = 0.0;
    int nx = 0, ny = 0;

    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;       // CCW vertex ids
    std::vector<std::array<int, 3>> triangle_edges;  // edge ids opposite nothing: local order (01,12,20)
    std::vector<std::array<int, 2>> edges;           // unique edges, (min,max) vertex ids
    std::vector<BoundaryEdge> boundary_edges;
    PumpLayout layout;  // snapped spans

    // uniform background grid (cell size h) for point location
    std::vector<std::vector<int>> cell_triangles;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    double triangle_area(int t) const;
    /// Constant barycentric gradients of triangle t.
    std::array<Vec2, 3> barycentric_gradients(int t) const;
    Vec2 barycentric_to_point(int t, const std::array<double, 3>& l) const;
    std::array<double, 3> point_to_barycentric(int t, Vec2 p) const;
};

/// Scalar quadratic dof = vertex id, or vertex_count + edge id.
struct DofMap {
    int n_vertices = 0;
    int n_edges = 0;
    std::vector<Vec2> q2_coords;                       // coordinate of each scalar dof
    std::map<BoundaryTag, std::vector<int>> tag_dofs;  // sorted; junction nodes appear under both tags

    int scalar_q2_count() const { return n_vertices + n_edges; }
    int vector_q2_count() const { return 2 * scalar_q2_count(); }
    int scalar_q1_count() const { return n_vertices; }
};

Mesh build_rect_mesh(double width, double height, double h, const PumpLayout& layout);

DofMap make_dof_map(const Mesh& mesh);

/// Total length of the edges carrying the tag.
double boundary_measure(const Mesh& mesh, BoundaryTag tag);

struct PointLocation {
    bool inside = false;
    int triangle = -1;
    std::array<double, 3> bary{};
    Vec2 closest_boundary;  // valid when !inside
};

/// Containing triangle + barycentric coordinates, or outside-marker with the
/// closest boundary point. Ties on shared edges/vertices resolve to the
/// lowest triangle id.
PointLocation locate_point(const Mesh& mesh, Vec2 p);

}  // namespace recirc

#endif
