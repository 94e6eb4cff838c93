#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <sstream>

#include "masonry/wallplan.hpp"

namespace masonry {

namespace {

struct Aabb {
  double lo[3] = {std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[3] = {-std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  bool any = false;

  void add(double x, double y, double z) {
    double v[3] = {x, y, z};
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
    any = true;
  }
};

float read_f32(const char* p) {
  float f;
  std::memcpy(&f, p, 4);
  return f;
}

bool parse_binary(const std::string& bytes, Aabb* box) {
  if (bytes.size() < 84) return false;
  uint32_t n;
  std::memcpy(&n, bytes.data() + 80, 4);
  if (bytes.size() != 84 + static_cast<size_t>(n) * 50) return false;
  for (uint32_t t = 0; t < n; ++t) {
    const char* tri = bytes.data() + 84 + t * 50;
    for (int v = 0; v < 3; ++v) {
      const char* p = tri + 12 + v * 12;  // skip the normal
      box->add(read_f32(p), read_f32(p + 4), read_f32(p + 8));
    }
  }
  return true;
}

bool parse_ascii(const std::string& bytes, Aabb* box) {
  std::istringstream in(bytes);
  std::string tok;
  if (!(in >> tok) || tok != "solid") return false;
  while (in >> tok) {
    if (tok == "vertex") {
      double x, y, z;
      if (!(in >> x >> y >> z)) return false;
      box->add(x, y, z);
    }
  }
  return true;
}

}  // namespace

WallSpec ingest_mesh_bounds(const std::string& stl_bytes) {
  Aabb box;
  bool ok = parse_binary(stl_bytes, &box);
  if (!ok) ok = parse_ascii(stl_bytes, &box);
  if (!ok) throw PlanError("malformed STL data");
  if (!box.any) throw PlanError("STL mesh has no facets");

  std::array<double, 3> ext = {box.hi[0] - box.lo[0], box.hi[1] - box.lo[1],
                               box.hi[2] - box.lo[2]};
  std::sort(ext.begin(), ext.end(), std::greater<>());
  if (ext[2] <= 1e-12) throw PlanError("degenerate mesh: zero extent along an axis");
  WallSpec w;
  w.length = ext[0];
  w.height = ext[1];
  w.width = ext[2];
  return w;
}

}  // namespace masonry
