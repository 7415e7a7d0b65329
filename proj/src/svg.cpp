#include "cfree/svg.hpp"

#include "cfree/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cfree {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* kPalette[] = {"#4c78a8", "#f58518", "#54a24b", "#e45756",
                          "#72b7b2", "#b279a2", "#eeca3b", "#9d755d"};

}  // namespace

std::vector<bool> rasterize_obstacles(const CollisionWorld& world, const BoundingBox& box,
                                      int nx, int ny) {
  check_dim("rasterize_obstacles", 2, world.dim());
  if (nx <= 0 || ny <= 0) throw std::invalid_argument("raster size must be positive");
  const double dx = (box.upper[0] - box.lower[0]) / nx;
  const double dy = (box.upper[1] - box.lower[1]) / ny;
  std::vector<char> cells(static_cast<std::size_t>(nx) * ny, 0);
  parallel_for(cells.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx % nx);
    const int j = static_cast<int>(idx / nx);
    Vector q(2);
    q << box.lower[0] + (i + 0.5) * dx, box.lower[1] + (j + 0.5) * dy;
    cells[idx] = world.check(q) ? 1 : 0;
  });
  return std::vector<bool>(cells.begin(), cells.end());
}

std::vector<Vector> polygon_vertices_2d(const HPolytope& P) {
  check_dim("polygon_vertices_2d", 2, P.dim());
  std::vector<Vector> verts;
  const Matrix& A = P.A();
  const Vector& b = P.b();
  for (int r = 0; r < P.num_faces(); ++r) {
    for (int s = r + 1; s < P.num_faces(); ++s) {
      Eigen::Matrix2d M;
      M << A(r, 0), A(r, 1), A(s, 0), A(s, 1);
      if (std::abs(M.determinant()) < 1e-12) continue;
      const Eigen::Vector2d x = M.partialPivLu().solve(Eigen::Vector2d(b[r], b[s]));
      Vector v = x;
      if (!P.contains(v, 1e-7)) continue;
      const bool dup = std::any_of(verts.begin(), verts.end(),
                                   [&](const Vector& w) { return (w - v).norm() < 1e-9; });
      if (!dup) verts.push_back(v);
    }
  }
  if (verts.empty()) return verts;
  Vector centroid = Vector::Zero(2);
  for (const auto& v : verts) centroid += v;
  centroid /= static_cast<double>(verts.size());
  std::sort(verts.begin(), verts.end(), [&](const Vector& a, const Vector& b2) {
    return std::atan2(a[1] - centroid[1], a[0] - centroid[0]) <
           std::atan2(b2[1] - centroid[1], b2[0] - centroid[0]);
  });
  return verts;
}

std::string render_svg(const HPolytope& domain, const CollisionWorld& world,
                       const std::vector<HPolytope>& regions,
                       const std::vector<Ellipsoid>& ellipsoids,
                       const std::vector<Vector>& seeds, const SvgOptions& opts) {
  check_dim("render_svg", 2, domain.dim());
  const BoundingBox box = bounding_box(domain);
  const double w = box.upper[0] - box.lower[0];
  const double h = box.upper[1] - box.lower[1];
  const double sx = opts.width / w;
  const double sy = opts.height / h;
  auto px = [&](const Vector& q) {
    return fmt((q[0] - box.lower[0]) * sx) + "," + fmt(opts.height - (q[1] - box.lower[1]) * sy);
  };
  auto path = [&](const std::vector<Vector>& pts) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) d += (i == 0 ? "M" : " L") + px(pts[i]);
    return d + " Z";
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width
      << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width << " "
      << opts.height << "\">\n";
  out << "<path class=\"domain\" d=\"" << path(polygon_vertices_2d(domain))
      << "\" fill=\"white\" stroke=\"black\"/>\n";

  // Obstacles: one rect per horizontal run of occupied cells, in cell units.
  const int n = opts.raster;
  const std::vector<bool> cells = rasterize_obstacles(world, box, n, n);
  out << "<g class=\"obstacles\" fill=\"#555555\" transform=\"scale("
      << fmt(static_cast<double>(opts.width) / n) << "," << fmt(static_cast<double>(opts.height) / n)
      << ")\">\n";
  for (int j = 0; j < n; ++j) {
    int i = 0;
    while (i < n) {
      if (!cells[static_cast<std::size_t>(j) * n + i]) {
        ++i;
        continue;
      }
      int k = i;
      while (k < n && cells[static_cast<std::size_t>(j) * n + k]) ++k;
      out << "<rect x=\"" << i << "\" y=\"" << (n - 1 - j) << "\" width=\"" << (k - i)
          << "\" height=\"1\"/>\n";
      i = k;
    }
  }
  out << "</g>\n";

  for (std::size_t r = 0; r < regions.size(); ++r) {
    const char* color = kPalette[r % std::size(kPalette)];
    out << "<path class=\"region-" << r << "\" d=\"" << path(polygon_vertices_2d(regions[r]))
        << "\" fill=\"" << color << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\"/>\n";
  }
  for (std::size_t r = 0; r < ellipsoids.size(); ++r) {
    const Ellipsoid& e = ellipsoids[r];
    const Eigen::LLT<Matrix> llt(e.E());
    const Matrix L = llt.matrixL();
    const Matrix Linv_t = L.transpose().inverse();
    std::vector<Vector> pts;
    for (int t = 0; t < 64; ++t) {
      const double th = 2.0 * std::numbers::pi * t / 64.0;
      Vector u(2);
      u << std::cos(th), std::sin(th);
      pts.push_back(e.center() + Linv_t * u);
    }
    out << "<path class=\"ellipse-" << r << "\" d=\"" << path(pts)
        << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4,2\"/>\n";
  }
  for (const auto& s : seeds) {
    const double cx = (s[0] - box.lower[0]) * sx;
    const double cy = opts.height - (s[1] - box.lower[1]) * sy;
    out << "<circle class=\"seed\" cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
        << "\" r=\"3\" fill=\"red\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cfree
