#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holescope/geom.hpp"

namespace holescope::bodies {

// Counter-based stream built on the splitmix64 finalizer: the state is
// seed + n * golden, so any (master_seed, stream_id) pair reproduces the
// same point stream bit-for-bit on every platform (integer ops only).
class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double uniform01();                       // [0, 1), 53-bit resolution
    double uniform(double lo, double hi);

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_id() const { return stream_; }

    // Fresh, statistically independent stream derived from this one.
    Rng child(std::uint64_t salt) const;

private:
    std::uint64_t master_ = 0, stream_ = 0, state_ = 0;
};

enum class Shape { polygon, ball, simplex, cube, tetrahedron, octahedron, dodecahedron, icosahedron };

// A sampleable convex body. Polytopes carry explicit vertices; balls carry a
// center and radius. Immutable after construction; transforms return copies.
// A default-constructed body is an empty placeholder (dim 0) only fit for
// later assignment.
class ConvexBody {
public:
    ConvexBody() = default;

    static ConvexBody polygon(std::vector<Point> vertices, std::string name = "polygon");
    static ConvexBody ball(int dim, double radius = 1.0);
    static ConvexBody simplex(std::vector<Point> vertices);
    static ConvexBody regular_simplex(int dim);
    static ConvexBody platonic(Shape s);  // cube .. icosahedron, dim 3

    // CLI body names: triangle, square, disk, ball, simplex, cube,
    // tetrahedron, octahedron, dodecahedron, icosahedron.
    static ConvexBody from_name(const std::string& name, std::optional<int> dim = std::nullopt);

    int dim() const { return dim_; }
    Shape shape() const { return shape_; }
    const std::string& name() const { return name_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    double radius() const { return radius_; }

    double volume() const;
    double diameter() const;
    Point centroid() const;
    bool contains(const Point& p) const;

    ConvexBody normalized_to_unit_volume() const;

    // Axis-aligned bounding box (used by rejection samplers).
    const Point& bbox_lo() const { return bbox_lo_; }
    const Point& bbox_hi() const { return bbox_hi_; }

    Point sample_point(Rng& rng) const;

private:
    void finalize();  // bbox, facet planes, cached volume

    int dim_ = 0;
    Shape shape_ = Shape::polygon;
    std::string name_;
    std::vector<Point> vertices_;
    double radius_ = 0.0;
    Point center_;

    // Outward facet planes (3D polytopes): dot(n, x) <= off inside.
    std::vector<Point> facet_normals_;
    std::vector<double> facet_offsets_;

    Point bbox_lo_, bbox_hi_;
    double volume_ = 0.0;
};

// n i.i.d. uniform points from a body. The draw is retried with a derived
// child stream if the sample fails the general-position check (probability
// zero in the model, possible in floating point).
PointSet sample_uniform(const ConvexBody& body, int n, Rng rng, int gp_check_threads = 1);

}  // namespace holescope::bodies
