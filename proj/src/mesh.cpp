#include "wgfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <utility>

namespace wgfem {

namespace {

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

// Longest-edge label; among equal lengths the edge whose opposite vertex has
// the smallest global id wins.
int longest_edge_label(const std::vector<Eigen::Vector2d>& verts, const Triangle& tri) {
  int best = 0;
  double best_len = -1.0;
  for (int le = 0; le < 3; ++le) {
    const Eigen::Vector2d& a = verts[tri.v[(le + 1) % 3]];
    const Eigen::Vector2d& b = verts[tri.v[(le + 2) % 3]];
    const double len = (b - a).norm();
    if (len > best_len || (len == best_len && tri.v[le] < tri.v[best])) {
      best = le;
      best_len = len;
    }
  }
  return best;
}

}  // namespace

Mesh::Mesh(std::vector<Eigen::Vector2d> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nt = static_cast<int>(triangles_.size());
  areas_.resize(nt);
  diameters_.resize(nt);
  normals_.resize(nt);
  tri_edges_.assign(nt, {-1, -1, -1});

  for (const auto& v : vertices_) {
    if (!v.allFinite()) throw mesh_error("Mesh: non-finite vertex coordinates");
  }

  std::map<std::pair<int, int>, int> edge_ids;
  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = triangles_[t];
    if (tri.v[0] == tri.v[1] || tri.v[1] == tri.v[2] || tri.v[0] == tri.v[2])
      throw mesh_error("Mesh: repeated vertex id in triangle");
    for (int i : tri.v) {
      if (i < 0 || i >= num_vertices()) throw mesh_error("Mesh: vertex id out of range");
    }

    const auto& a = vertices_[tri.v[0]];
    const auto& b = vertices_[tri.v[1]];
    const auto& c = vertices_[tri.v[2]];
    const double area = signed_area(a, b, c);
    const double diam = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    if (!(area > 1e-14 * diam * diam))
      throw mesh_error("Mesh: degenerate or clockwise triangle");
    areas_[t] = area;
    diameters_[t] = diam;

    for (int le = 0; le < 3; ++le) {
      const int va = tri.v[(le + 1) % 3];
      const int vb = tri.v[(le + 2) % 3];
      const auto key = std::minmax(va, vb);
      auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(edges_.size()));
      if (inserted) {
        Edge e;
        e.v = {key.first, key.second};
        edges_.push_back(e);
      }
      Edge& e = edges_[it->second];
      if (e.tri[0] < 0) {
        e.tri[0] = t;
      } else if (e.tri[1] < 0) {
        e.tri[1] = t;
      } else {
        throw mesh_error("Mesh: edge shared by more than two triangles");
      }
      tri_edges_[t][le] = it->second;

      // CCW traversal from va to vb puts the outward normal on the right.
      const Eigen::Vector2d d = vertices_[vb] - vertices_[va];
      normals_[t][le] = Eigen::Vector2d(d.y(), -d.x()).normalized();
    }
  }

  edge_lengths_.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    edges_[e].boundary = edges_[e].tri[1] < 0;
    edge_lengths_[e] = (vertices_[edges_[e].v[1]] - vertices_[edges_[e].v[0]]).norm();
  }

  total_area_ = 0.0;
  for (double a : areas_) total_area_ += a;
}

Eigen::Vector2d Mesh::centroid(int t) const {
  const Triangle& tri = triangles_[t];
  return (vertices_[tri.v[0]] + vertices_[tri.v[1]] + vertices_[tri.v[2]]) / 3.0;
}

Eigen::Vector2d Mesh::edge_midpoint(int e) const {
  return 0.5 * (vertices_[edges_[e].v[0]] + vertices_[edges_[e].v[1]]);
}

std::array<Eigen::Vector2d, 3> Mesh::corners(int t) const {
  const Triangle& tri = triangles_[t];
  return {vertices_[tri.v[0]], vertices_[tri.v[1]], vertices_[tri.v[2]]};
}

Mesh build_initial(Domain domain) {
  std::vector<Eigen::Vector2d> verts;
  std::vector<Triangle> tris;
  switch (domain) {
    case Domain::unit_square:
      verts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      tris = {{{0, 1, 2}}, {{0, 2, 3}}};
      break;
    case Domain::lshape2d:
      // (-1,1)^2 minus the quadrant (0,1) x (-1,0); square diagonals meet at
      // the reentrant corner so every coarse triangle touches the origin.
      verts = {{-1, -1}, {0, -1}, {-1, 0}, {0, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};
      tris = {{{3, 4, 7}}, {{3, 7, 6}}, {{3, 6, 5}}, {{3, 5, 2}}, {{3, 2, 0}}, {{3, 0, 1}}};
      break;
  }
  for (auto& t : tris) {
    t.refinement_edge = longest_edge_label(verts, t);
    t.generation = 0;
  }
  return Mesh(std::move(verts), std::move(tris));
}

Mesh bisect(const Mesh& mesh, const std::vector<int>& marked) {
  std::vector<Eigen::Vector2d> verts = mesh.vertices();
  std::vector<Triangle> cur = mesh.triangles();

  std::map<std::pair<int, int>, int> midpoints;
  auto midpoint_of = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto [it, inserted] = midpoints.try_emplace(key, static_cast<int>(verts.size()));
    if (inserted) verts.push_back(0.5 * (verts[a] + verts[b]));
    return it->second;
  };

  auto split = [&](const Triangle& tri, std::vector<Triangle>& out) {
    const int r = tri.refinement_edge;
    const int a = tri.v[r];
    const int b = tri.v[(r + 1) % 3];
    const int c = tri.v[(r + 2) % 3];
    const int m = midpoint_of(b, c);
    // The midpoint is the newest vertex of both children, so their
    // refinement edges are the parent edges (a,b) and (a,c).
    out.push_back({{a, b, m}, 2, tri.generation + 1});
    out.push_back({{a, m, c}, 1, tri.generation + 1});
  };

  std::set<int> to_split(marked.begin(), marked.end());
  for (int id : to_split) {
    if (id < 0 || id >= mesh.num_triangles())
      throw mesh_error("bisect: marked id out of range");
  }

  int max_gen = 0;
  for (const auto& t : cur) max_gen = std::max(max_gen, t.generation);
  const long pass_cap =
      static_cast<long>(max_gen + 2) * std::max<long>(1, static_cast<long>(cur.size()));

  bool first_pass = true;
  for (long pass = 0;; ++pass) {
    if (pass > pass_cap)
      throw mesh_error("bisect: conformity closure did not terminate (bad edge labels)");
    std::vector<Triangle> next;
    next.reserve(cur.size());
    bool changed = false;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const Triangle& tri = cur[i];
      bool need = first_pass && to_split.count(static_cast<int>(i)) > 0;
      for (int le = 0; le < 3 && !need; ++le) {
        const auto key = std::minmax(tri.v[(le + 1) % 3], tri.v[(le + 2) % 3]);
        need = midpoints.count(key) > 0;  // hanging node on this edge
      }
      if (need) {
        split(tri, next);
        changed = true;
      } else {
        next.push_back(tri);
      }
    }
    cur = std::move(next);
    first_pass = false;
    if (!changed) break;
  }

  return Mesh(std::move(verts), std::move(cur));
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  os << std::setprecision(17);
  for (const auto& v : mesh.vertices()) os << v.x() << ' ' << v.y() << '\n';
  for (const auto& t : mesh.triangles())
    os << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << ' ' << t.refinement_edge << ' '
       << t.generation << '\n';
}

}  // namespace wgfem
