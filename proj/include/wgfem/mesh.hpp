#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace wgfem {

enum class Domain { unit_square, lshape2d };

/// Triangle of a conforming triangulation. Vertices are counter-clockwise.
/// Local edge i is the edge opposite local vertex i; `refinement_edge` names
/// the local edge opposite the newest vertex, i.e. the edge bisection splits.
struct Triangle {
  std::array<int, 3> v;
  int refinement_edge = 0;
  int generation = 0;
};

/// Undirected mesh edge. `v` is sorted ascending; `tri[1] == -1` on the
/// boundary. Interior edges have exactly two adjacent triangles.
struct Edge {
  std::array<int, 2> v;
  std::array<int, 2> tri{-1, -1};
  bool boundary = false;
};

class mesh_error : public std::runtime_error {
 public:
  explicit mesh_error(const std::string& what) : std::runtime_error(what) {}
};

/// Conforming triangular mesh with cached geometry. Immutable after
/// construction; refinement produces a new mesh (triangle and edge ids are
/// not stable across refinement).
class Mesh {
 public:
  Mesh(std::vector<Eigen::Vector2d> vertices, std::vector<Triangle> triangles);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Eigen::Vector2d& vertex(int v) const { return vertices_[v]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }

  const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Global edge id of local edge `le` of triangle `t` (edge opposite vertex le).
  int triangle_edge(int t, int le) const { return tri_edges_[t][le]; }

  double area(int t) const { return areas_[t]; }
  /// Element diameter: the longest edge of the triangle.
  double diameter(int t) const { return diameters_[t]; }
  double edge_length(int e) const { return edge_lengths_[e]; }

  /// Unit normal of local edge `le` pointing out of triangle `t`.
  const Eigen::Vector2d& outward_normal(int t, int le) const { return normals_[t][le]; }

  Eigen::Vector2d centroid(int t) const;
  Eigen::Vector2d edge_midpoint(int e) const;

  /// Corner coordinates of triangle t in vertex order.
  std::array<Eigen::Vector2d, 3> corners(int t) const;

  double total_area() const { return total_area_; }

 private:
  std::vector<Eigen::Vector2d> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::array<Eigen::Vector2d, 3>> normals_;
  std::vector<double> areas_;
  std::vector<double> diameters_;
  std::vector<double> edge_lengths_;
  double total_area_ = 0.0;
};

/// Coarse mesh of the named domain. Every refinement edge is the longest
/// edge (ties broken by the smallest opposite-vertex id), generation 0.
Mesh build_initial(Domain domain);

/// Newest-vertex bisection of the marked triangles plus conformity closure.
/// Throws mesh_error if the closure fails to reach a fixed point within an
/// iteration bound (a symptom of inconsistent refinement-edge labels).
Mesh bisect(const Mesh& mesh, const std::vector<int>& marked);

/// Plain-text export: header "nvertices ntriangles", one "x y" line per
/// vertex, then one "v0 v1 v2 refedge generation" line per triangle.
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace wgfem
