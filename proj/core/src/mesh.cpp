#include "recirc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace recirc {

std::string side_name(Side s) {
    switch (s) {
        case Side::Bottom: return "bottom";
        case Side::Right: return "right";
        case Side::Top: return "top";
        case Side::Left: return "left";
    }
    return "?";
}

Side side_from_name(const std::string& name) {
    if (name == "bottom") return Side::Bottom;
    if (name == "right") return Side::Right;
    if (name == "top") return Side::Top;
    if (name == "left") return Side::Left;
    throw param_error("unknown side name: " + name);
}

Vec2 side_normal(Side s) {
    switch (s) {
        case Side::Bottom: return {0.0, -1.0};
        case Side::Right: return {1.0, 0.0};
        case Side::Top: return {0.0, 1.0};
        case Side::Left: return {-1.0, 0.0};
    }
    return {};
}

std::string tag_name(BoundaryTag t) {
    switch (t.kind) {
        case BoundaryTag::S: return "S";
        case BoundaryTag::N: return "N";
        case BoundaryTag::C: return "C" + std::to_string(t.pump + 1);
        case BoundaryTag::T: return "T" + std::to_string(t.pump + 1);
    }
    return "?";
}

PumpLayout PumpLayout::none() { return {}; }

PumpLayout PumpLayout::symmetric4(double width, double height) {
    PumpLayout l;
    l.surface_side = Side::Top;
    const double yl1 = height - 6.0, yl2 = height - 5.0;  // lower collector span
    const double yu1 = height - 3.0, yu2 = height - 2.0;  // upper collector span
    const double w8 = width / 8.0;
    // odd pairs own the upper collectors; pairs 1/3 and 2/4 mirror each
    // other about x = width/2
    l.pairs.push_back({{Side::Left, yu1, yu2}, {Side::Bottom, w8, w8 + 1.0}});
    l.pairs.push_back({{Side::Left, yl1, yl2}, {Side::Bottom, 3.0 * w8 - 1.0, 3.0 * w8}});
    l.pairs.push_back({{Side::Right, yu1, yu2}, {Side::Bottom, width - w8 - 1.0, width - w8}});
    l.pairs.push_back({{Side::Right, yl1, yl2}, {Side::Bottom, 5.0 * w8, 5.0 * w8 + 1.0}});
    return l;
}

double Mesh::triangle_area(int t) const {
    const auto& tr = triangles[t];
    const Vec2 a = vertices[tr[0]], b = vertices[tr[1]], c = vertices[tr[2]];
    return 0.5 * cross(b - a, c - a);
}

std::array<Vec2, 3> Mesh::barycentric_gradients(int t) const {
    const auto& tr = triangles[t];
    const Vec2 a = vertices[tr[0]], b = vertices[tr[1]], c = vertices[tr[2]];
    const double inv2A = 1.0 / (2.0 * triangle_area(t));
    // grad lambda_i is the inward-scaled normal of the opposite edge
    return {Vec2{(b.y - c.y) * inv2A, (c.x - b.x) * inv2A},
            Vec2{(c.y - a.y) * inv2A, (a.x - c.x) * inv2A},
            Vec2{(a.y - b.y) * inv2A, (b.x - a.x) * inv2A}};
}

Vec2 Mesh::barycentric_to_point(int t, const std::array<double, 3>& l) const {
    const auto& tr = triangles[t];
    return l[0] * vertices[tr[0]] + l[1] * vertices[tr[1]] + l[2] * vertices[tr[2]];
}

std::array<double, 3> Mesh::point_to_barycentric(int t, Vec2 p) const {
    const auto& tr = triangles[t];
    const Vec2 a = vertices[tr[0]], b = vertices[tr[1]], c = vertices[tr[2]];
    const double inv2A = 1.0 / (2.0 * triangle_area(t));
    const double l1 = cross(p - a, c - a) * inv2A;
    const double l2 = cross(b - a, p - a) * inv2A;
    return {1.0 - l1 - l2, l1, l2};
}

namespace {

struct SnappedSpan {
    Side side;
    int lo_cell, hi_cell;  // grid-node indices along the side axis
};

int side_cells(Side s, int nx, int ny) {
    return (s == Side::Bottom || s == Side::Top) ? nx : ny;
}

SnappedSpan snap_span(const Span& sp, double h, int nx, int ny) {
    const int n = side_cells(sp.side, nx, ny);
    int lo = static_cast<int>(std::lround(sp.lo / h));
    int hi = static_cast<int>(std::lround(sp.hi / h));
    if (hi <= lo) hi = lo + 1;  // keep positive measure after snapping
    if (lo < 1 || hi > n - 1)
        throw param_error("pump span [" + std::to_string(sp.lo) + "," + std::to_string(sp.hi) +
                          "] on side " + side_name(sp.side) +
                          " does not lie strictly inside the side after snapping");
    return {sp.side, lo, hi};
}

}  // namespace

Mesh build_rect_mesh(double width, double height, double h, const PumpLayout& layout) {
    if (width <= 0.0 || height <= 0.0 || h <= 0.0)
        throw param_error("build_rect_mesh: width, height and h must be positive");

    Mesh m;
    m.width = width;
    m.height = height;
    m.h = h;
    m.nx = std::max(1, static_cast<int>(std::lround(width / h)));
    m.ny = std::max(1, static_cast<int>(std::lround(height / h)));
    const int nx = m.nx, ny = m.ny;
    const double dx = width / nx, dy = height / ny;

    // snap spans and validate the layout
    std::vector<SnappedSpan> coll, inj;
    for (const auto& pr : layout.pairs) {
        if (pr.collector.length() <= 0.0 || pr.injector.length() <= 0.0)
            throw param_error("pump span with non-positive length");
        if (pr.collector.side == layout.surface_side || pr.injector.side == layout.surface_side)
            throw param_error("pump span on the surface side is not supported");
        coll.push_back(snap_span(pr.collector, h, nx, ny));
        inj.push_back(snap_span(pr.injector, h, nx, ny));
    }
    {
        std::vector<SnappedSpan> all = coll;
        all.insert(all.end(), inj.begin(), inj.end());
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (all[i].side == all[j].side && all[i].hi_cell > all[j].lo_cell &&
                    all[j].hi_cell > all[i].lo_cell)
                    throw param_error("pump spans overlap after snapping");
    }

    // snapped layout back to coordinates
    m.layout.surface_side = layout.surface_side;
    for (std::size_t k = 0; k < coll.size(); ++k) {
        const double cs = (coll[k].side == Side::Bottom || coll[k].side == Side::Top) ? dx : dy;
        const double is = (inj[k].side == Side::Bottom || inj[k].side == Side::Top) ? dx : dy;
        m.layout.pairs.push_back(
            {{coll[k].side, coll[k].lo_cell * cs, coll[k].hi_cell * cs},
             {inj[k].side, inj[k].lo_cell * is, inj[k].hi_cell * is}});
    }

    // vertices
    m.vertices.reserve((nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) m.vertices.push_back({i * dx, j * dy});
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

    // triangles, mirrored diagonals about the vertical midline
    m.triangles.reserve(2 * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            const bool slash = 2 * i + 1 <= nx;  // "/" on the left half (and middle column)
            if (slash) {
                m.triangles.push_back({v00, v10, v11});
                m.triangles.push_back({v00, v11, v01});
            } else {
                m.triangles.push_back({v00, v10, v01});
                m.triangles.push_back({v10, v11, v01});
            }
        }
    }

    // unique edges, discovered in triangle order
    std::map<std::array<int, 2>, int> edge_ids;
    m.triangle_edges.resize(m.triangles.size());
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& tr = m.triangles[t];
        const std::array<std::array<int, 2>, 3> local = {
            {{tr[0], tr[1]}, {tr[1], tr[2]}, {tr[2], tr[0]}}};
        for (int e = 0; e < 3; ++e) {
            std::array<int, 2> key = {std::min(local[e][0], local[e][1]),
                                      std::max(local[e][0], local[e][1])};
            auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(m.edges.size()));
            if (inserted) m.edges.push_back(key);
            m.triangle_edges[t][e] = it->second;
        }
    }

    // boundary edges with tags
    auto span_tag = [&](Side side, int cell) -> BoundaryTag {
        for (std::size_t k = 0; k < coll.size(); ++k)
            if (coll[k].side == side && cell >= coll[k].lo_cell && cell < coll[k].hi_cell)
                return {BoundaryTag::C, static_cast<int>(k)};
        for (std::size_t k = 0; k < inj.size(); ++k)
            if (inj[k].side == side && cell >= inj[k].lo_cell && cell < inj[k].hi_cell)
                return {BoundaryTag::T, static_cast<int>(k)};
        if (side == layout.surface_side) return {BoundaryTag::S, -1};
        return {BoundaryTag::N, -1};
    };
    auto add_bedge = [&](Side side, int cell, int va, int vb) {
        std::array<int, 2> key = {std::min(va, vb), std::max(va, vb)};
        BoundaryEdge be;
        be.a = va;
        be.b = vb;
        be.mid_dof = (nx + 1) * (ny + 1) + edge_ids.at(key);
        be.side = side;
        be.tag = span_tag(side, cell);
        m.boundary_edges.push_back(be);
    };
    for (int i = 0; i < nx; ++i) add_bedge(Side::Bottom, i, vid(i, 0), vid(i + 1, 0));
    for (int j = 0; j < ny; ++j) add_bedge(Side::Right, j, vid(nx, j), vid(nx, j + 1));
    for (int i = 0; i < nx; ++i) add_bedge(Side::Top, i, vid(i, ny), vid(i + 1, ny));
    for (int j = 0; j < ny; ++j) add_bedge(Side::Left, j, vid(0, j), vid(0, j + 1));

    // background grid: triangles binned by bounding-box overlap
    m.cell_triangles.assign(static_cast<std::size_t>(nx) * ny, {});
    for (int t = 0; t < m.triangle_count(); ++t) {
        const auto& tr = m.triangles[t];
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (int v : tr) {
            xmin = std::min(xmin, m.vertices[v].x);
            xmax = std::max(xmax, m.vertices[v].x);
            ymin = std::min(ymin, m.vertices[v].y);
            ymax = std::max(ymax, m.vertices[v].y);
        }
        // closed-interval overlap: a triangle touching a cell line is binned
        // on both sides, so ties on shared vertices see every candidate
        const int i0 = std::clamp(static_cast<int>(std::floor(xmin / dx)), 0, nx - 1);
        const int i1 = std::clamp(static_cast<int>(std::floor(xmax / dx)), 0, nx - 1);
        const int j0 = std::clamp(static_cast<int>(std::floor(ymin / dy)), 0, ny - 1);
        const int j1 = std::clamp(static_cast<int>(std::floor(ymax / dy)), 0, ny - 1);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i)
                m.cell_triangles[static_cast<std::size_t>(j) * nx + i].push_back(t);
    }
    return m;
}

DofMap make_dof_map(const Mesh& mesh) {
    DofMap dm;
    dm.n_vertices = mesh.vertex_count();
    dm.n_edges = mesh.edge_count();
    dm.q2_coords.resize(dm.scalar_q2_count());
    for (int v = 0; v < dm.n_vertices; ++v) dm.q2_coords[v] = mesh.vertices[v];
    for (int e = 0; e < dm.n_edges; ++e)
        dm.q2_coords[dm.n_vertices + e] =
            0.5 * (mesh.vertices[mesh.edges[e][0]] + mesh.vertices[mesh.edges[e][1]]);

    std::map<BoundaryTag, std::set<int>> sets;
    for (const auto& be : mesh.boundary_edges) {
        auto& s = sets[be.tag];
        s.insert(be.a);
        s.insert(be.b);
        s.insert(be.mid_dof);
    }
    for (auto& [tag, s] : sets) dm.tag_dofs[tag] = std::vector<int>(s.begin(), s.end());
    return dm;
}

double boundary_measure(const Mesh& mesh, BoundaryTag tag) {
    double len = 0.0;
    bool found = false;
    for (const auto& be : mesh.boundary_edges) {
        if (be.tag == tag) {
            len += norm(mesh.vertices[be.b] - mesh.vertices[be.a]);
            found = true;
        }
    }
    if (!found) throw param_error("boundary_measure: no edges tagged " + tag_name(tag));
    return len;
}

PointLocation locate_point(const Mesh& mesh, Vec2 p) {
    const double dx = mesh.width / mesh.nx, dy = mesh.height / mesh.ny;
    const double tol = 1e-12 * std::max(mesh.width, mesh.height) / std::min(dx, dy);

    const bool outside = p.x < 0.0 || p.x > mesh.width || p.y < 0.0 || p.y > mesh.height;
    PointLocation loc;
    if (outside) {
        loc.closest_boundary = {std::clamp(p.x, 0.0, mesh.width),
                                std::clamp(p.y, 0.0, mesh.height)};
        return loc;
    }

    auto try_cells = [&](int ring) -> int {
        const int ci = std::clamp(static_cast<int>(std::floor(p.x / dx)), 0, mesh.nx - 1);
        const int cj = std::clamp(static_cast<int>(std::floor(p.y / dy)), 0, mesh.ny - 1);
        int best = -1;
        for (int j = std::max(0, cj - ring); j <= std::min(mesh.ny - 1, cj + ring); ++j)
            for (int i = std::max(0, ci - ring); i <= std::min(mesh.nx - 1, ci + ring); ++i)
                for (int t : mesh.cell_triangles[static_cast<std::size_t>(j) * mesh.nx + i]) {
                    const auto l = mesh.point_to_barycentric(t, p);
                    if (l[0] >= -tol && l[1] >= -tol && l[2] >= -tol)
                        if (best < 0 || t < best) best = t;
                }
        return best;
    };

    int t = try_cells(0);
    if (t < 0) t = try_cells(1);
    if (t < 0) throw numerical_error("locate_point: interior point not found in any triangle");

    loc.inside = true;
    loc.triangle = t;
    auto l = mesh.point_to_barycentric(t, p);
    for (double& li : l) li = std::clamp(li, 0.0, 1.0);
    const double s = l[0] + l[1] + l[2];
    for (double& li : l) li /= s;
    loc.bary = l;
    return loc;
}

}  // namespace recirc
