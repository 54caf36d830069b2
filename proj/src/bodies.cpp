#include "holescope/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "holescope/analytic.hpp"

namespace holescope::bodies {

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t sm_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream_id) : master_(master_seed), stream_(stream_id) {
    state_ = sm_finalize(sm_finalize(master_seed + kGolden) ^ sm_finalize(stream_id + 0xD1B54A32D192ED03ull));
}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return sm_finalize(state_);
}

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

Rng Rng::child(std::uint64_t salt) const {
    return Rng(master_, sm_finalize(stream_ ^ sm_finalize(salt + 0x2545F4914F6CDD1Dull)));
}

// ---------------------------------------------------------------------------
// ConvexBody
// ---------------------------------------------------------------------------

namespace {

double dist(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double dot(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double shoelace_area(const std::vector<Point>& v) {
    double a = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return a / 2.0;
}

Point polygon_centroid(const std::vector<Point>& v) {
    double a = 0, cx = 0, cy = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        const double w = p[0] * q[1] - q[0] * p[1];
        a += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    a /= 2.0;
    return {cx / (6.0 * a), cy / (6.0 * a)};
}

// Minimum pairwise vertex distance; equals the edge length for all five
// regular solids.
double min_vertex_distance(const std::vector<Point>& v) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) best = std::min(best, dist(v[i], v[j]));
    return best;
}

std::vector<Point> platonic_vertices(Shape s) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Point> v;
    switch (s) {
        case Shape::cube:
            for (int a : {-1, 1})
                for (int b : {-1, 1})
                    for (int c : {-1, 1}) v.push_back({double(a), double(b), double(c)});
            break;
        case Shape::tetrahedron:
            v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
            break;
        case Shape::octahedron:
            for (int i = 0; i < 3; ++i)
                for (int sgn : {-1, 1}) {
                    Point p(3, 0.0);
                    p[i] = sgn;
                    v.push_back(p);
                }
            break;
        case Shape::icosahedron:
            for (int a : {-1, 1})
                for (int b : {-1, 1}) {
                    v.push_back({0.0, double(a), double(b) * phi});
                    v.push_back({double(a), double(b) * phi, 0.0});
                    v.push_back({double(a) * phi, 0.0, double(b)});
                }
            break;
        case Shape::dodecahedron:
            for (int a : {-1, 1})
                for (int b : {-1, 1})
                    for (int c : {-1, 1}) v.push_back({double(a), double(b), double(c)});
            for (int a : {-1, 1})
                for (int b : {-1, 1}) {
                    v.push_back({0.0, double(a) / phi, double(b) * phi});
                    v.push_back({double(a) / phi, double(b) * phi, 0.0});
                    v.push_back({double(a) * phi, 0.0, double(b) / phi});
                }
            break;
        default:
            throw std::invalid_argument("platonic_vertices: not a Platonic shape");
    }
    return v;
}

// Outward facet planes of a 3D vertex polytope, found by scanning vertex
// triples: a triple spans a facet plane iff every vertex lies (weakly) on
// one side. Deduplicated by direction; fine for vertex counts up to ~20.
void facet_planes_3d(const std::vector<Point>& v, std::vector<Point>& normals, std::vector<double>& offsets) {
    normals.clear();
    offsets.clear();
    const double tol = 1e-9;
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                const double ux = v[j][0] - v[i][0], uy = v[j][1] - v[i][1], uz = v[j][2] - v[i][2];
                const double wx = v[k][0] - v[i][0], wy = v[k][1] - v[i][1], wz = v[k][2] - v[i][2];
                Point n{uy * wz - uz * wy, uz * wx - ux * wz, ux * wy - uy * wx};
                const double len = std::sqrt(dot(n, n));
                if (len < tol) continue;
                for (auto& c : n) c /= len;
                const double base = dot(n, v[i]);
                double lo = base, hi = base;
                for (const auto& p : v) {
                    const double s = dot(n, p);
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
                int side = 0;
                if (hi - base <= tol)
                    side = 1;  // all vertices weakly below: n is outward
                else if (base - lo <= tol)
                    side = -1;  // flip
                else
                    continue;
                if (side < 0)
                    for (auto& c : n) c = -c;
                const double off = side > 0 ? hi : -lo;
                bool dup = false;
                for (std::size_t f = 0; f < normals.size() && !dup; ++f)
                    dup = dot(normals[f], n) > 1.0 - 1e-9;
                if (!dup) {
                    normals.push_back(n);
                    offsets.push_back(off);
                }
            }
}

}  // namespace

void ConvexBody::finalize() {
    const std::size_t d = static_cast<std::size_t>(dim_);

    if (shape_ == Shape::ball) {
        bbox_lo_.assign(d, 0.0);
        bbox_hi_.assign(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            bbox_lo_[i] = center_[i] - radius_;
            bbox_hi_[i] = center_[i] + radius_;
        }
        volume_ = analytic::kappa(dim_) * std::pow(radius_, dim_);
        return;
    }

    bbox_lo_.assign(d, std::numeric_limits<double>::infinity());
    bbox_hi_.assign(d, -std::numeric_limits<double>::infinity());
    for (const auto& v : vertices_)
        for (std::size_t i = 0; i < d; ++i) {
            bbox_lo_[i] = std::min(bbox_lo_[i], v[i]);
            bbox_hi_[i] = std::max(bbox_hi_[i], v[i]);
        }

    switch (shape_) {
        case Shape::polygon:
            volume_ = shoelace_area(vertices_);
            break;
        case Shape::simplex:
            volume_ = geom::simplex_volume(vertices_);
            break;
        case Shape::cube: {
            const double a = min_vertex_distance(vertices_);
            volume_ = a * a * a;
            break;
        }
        case Shape::tetrahedron: {
            const double a = min_vertex_distance(vertices_);
            volume_ = a * a * a / (6.0 * std::sqrt(2.0));
            break;
        }
        case Shape::octahedron: {
            const double a = min_vertex_distance(vertices_);
            volume_ = std::sqrt(2.0) / 3.0 * a * a * a;
            break;
        }
        case Shape::icosahedron: {
            const double a = min_vertex_distance(vertices_);
            volume_ = 5.0 * (3.0 + std::sqrt(5.0)) / 12.0 * a * a * a;
            break;
        }
        case Shape::dodecahedron: {
            const double a = min_vertex_distance(vertices_);
            volume_ = (15.0 + 7.0 * std::sqrt(5.0)) / 4.0 * a * a * a;
            break;
        }
        default:
            throw std::logic_error("finalize: unhandled shape");
    }

    // Half-space representation for the 3D regular solids.
    if (shape_ != Shape::polygon && shape_ != Shape::simplex) facet_planes_3d(vertices_, facet_normals_, facet_offsets_);
}

ConvexBody ConvexBody::polygon(std::vector<Point> vertices, std::string name) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon: needs at least 3 vertices");
    for (const auto& v : vertices)
        if (v.size() != 2) throw std::invalid_argument("polygon: vertices must be 2-dimensional");
    if (shoelace_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
    const std::size_t m = vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % m];
        const auto& c = vertices[(i + 2) % m];
        if (geom::orient2d(a[0], a[1], b[0], b[1], c[0], c[1]) <= 0)
            throw std::invalid_argument("polygon: vertices must be strictly convex in boundary order");
    }
    ConvexBody body;
    body.dim_ = 2;
    body.shape_ = Shape::polygon;
    body.name_ = std::move(name);
    body.vertices_ = std::move(vertices);
    body.finalize();
    return body;
}

ConvexBody ConvexBody::ball(int dim, double radius) {
    if (dim < 2) throw std::invalid_argument("ball: dim must be >= 2");
    if (radius <= 0) throw std::invalid_argument("ball: radius must be positive");
    ConvexBody body;
    body.dim_ = dim;
    body.shape_ = Shape::ball;
    body.name_ = dim == 2 ? "disk" : "ball";
    body.radius_ = radius;
    body.center_.assign(dim, 0.0);
    body.finalize();
    return body;
}

ConvexBody ConvexBody::simplex(std::vector<Point> vertices) {
    if (vertices.empty()) throw std::invalid_argument("simplex: no vertices");
    const int d = static_cast<int>(vertices[0].size());
    if (static_cast<int>(vertices.size()) != d + 1)
        throw std::invalid_argument("simplex: needs d+1 vertices in R^d");
    ConvexBody body;
    body.dim_ = d;
    body.shape_ = Shape::simplex;
    body.name_ = "simplex";
    body.vertices_ = std::move(vertices);
    body.finalize();
    if (body.volume_ <= 0.0) throw std::invalid_argument("simplex: degenerate vertices");
    return body;
}

ConvexBody ConvexBody::regular_simplex(int dim) {
    if (dim < 2) throw std::invalid_argument("regular_simplex: dim must be >= 2");
    std::vector<Point> v(dim + 1, Point(dim, 0.0));
    for (int i = 0; i < dim; ++i) v[i][i] = 1.0;
    const double off = (1.0 - std::sqrt(dim + 1.0)) / dim;
    for (int j = 0; j < dim; ++j) v[dim][j] = off;
    // center at the origin
    Point mean(dim, 0.0);
    for (const auto& p : v)
        for (int j = 0; j < dim; ++j) mean[j] += p[j] / (dim + 1.0);
    for (auto& p : v)
        for (int j = 0; j < dim; ++j) p[j] -= mean[j];
    auto body = simplex(std::move(v));
    body.name_ = "simplex";
    return body;
}

ConvexBody ConvexBody::platonic(Shape s) {
    ConvexBody body;
    body.dim_ = 3;
    body.shape_ = s;
    switch (s) {
        case Shape::cube: body.name_ = "cube"; break;
        case Shape::tetrahedron: body.name_ = "tetrahedron"; break;
        case Shape::octahedron: body.name_ = "octahedron"; break;
        case Shape::dodecahedron: body.name_ = "dodecahedron"; break;
        case Shape::icosahedron: body.name_ = "icosahedron"; break;
        default: throw std::invalid_argument("platonic: unknown solid");
    }
    body.vertices_ = platonic_vertices(s);
    body.finalize();
    return body;
}

ConvexBody ConvexBody::from_name(const std::string& name, std::optional<int> dim) {
    auto need_dim3 = [&]() {
        if (dim && *dim != 3) throw std::invalid_argument("body '" + name + "' is 3-dimensional");
    };
    if (name == "triangle") {
        if (dim && *dim != 2) throw std::invalid_argument("triangle is 2-dimensional");
        const double s = std::sqrt(3.0) / 2.0;
        auto b = polygon({{0.0, 1.0}, {-s, -0.5}, {s, -0.5}}, "triangle");
        return b;
    }
    if (name == "square") {
        if (dim && *dim != 2) throw std::invalid_argument("square is 2-dimensional");
        return polygon({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}, "square");
    }
    if (name == "disk") {
        if (dim && *dim != 2) throw std::invalid_argument("disk is 2-dimensional");
        return ball(2);
    }
    if (name == "ball") return ball(dim.value_or(3));
    if (name == "simplex") return regular_simplex(dim.value_or(3));
    if (name == "cube") { need_dim3(); return platonic(Shape::cube); }
    if (name == "tetrahedron") { need_dim3(); return platonic(Shape::tetrahedron); }
    if (name == "octahedron") { need_dim3(); return platonic(Shape::octahedron); }
    if (name == "dodecahedron") { need_dim3(); return platonic(Shape::dodecahedron); }
    if (name == "icosahedron") { need_dim3(); return platonic(Shape::icosahedron); }
    throw std::invalid_argument("unknown body '" + name + "'");
}

double ConvexBody::volume() const { return volume_; }

double ConvexBody::diameter() const {
    if (shape_ == Shape::ball) return 2.0 * radius_;
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j) best = std::max(best, dist(vertices_[i], vertices_[j]));
    return best;
}

Point ConvexBody::centroid() const {
    if (shape_ == Shape::ball) return center_;
    if (shape_ == Shape::polygon) return polygon_centroid(vertices_);
    // Vertex mean: exact for simplices and for the vertex-transitive solids.
    Point c(dim_, 0.0);
    for (const auto& v : vertices_)
        for (int j = 0; j < dim_; ++j) c[j] += v[j] / static_cast<double>(vertices_.size());
    return c;
}

bool ConvexBody::contains(const Point& p) const {
    if (static_cast<int>(p.size()) != dim_) throw std::invalid_argument("contains: dimension mismatch");
    switch (shape_) {
        case Shape::ball: {
            double s = 0;
            for (int i = 0; i < dim_; ++i) s += (p[i] - center_[i]) * (p[i] - center_[i]);
            return s <= radius_ * radius_;
        }
        case Shape::polygon: {
            const std::size_t m = vertices_.size();
            for (std::size_t i = 0; i < m; ++i) {
                const auto& a = vertices_[i];
                const auto& b = vertices_[(i + 1) % m];
                if (geom::orient2d(a[0], a[1], b[0], b[1], p[0], p[1]) < 0) return false;
            }
            return true;
        }
        case Shape::simplex: {
            // p inside iff, against every facet, it lies on the same side as
            // the opposite vertex (or on the facet).
            const std::size_t d = static_cast<std::size_t>(dim_);
            std::vector<Point> frame(d + 1);
            for (std::size_t skip = 0; skip <= d; ++skip) {
                std::size_t t = 0;
                for (std::size_t i = 0; i <= d; ++i)
                    if (i != skip) frame[t++] = vertices_[i];
                frame[d] = vertices_[skip];
                const int ref = geom::affine_orientation(frame);
                frame[d] = p;
                const int s = geom::affine_orientation(frame);
                if (s != 0 && s != ref) return false;
            }
            return true;
        }
        default: {  // 3D regular solids: halfspace tests
            for (std::size_t f = 0; f < facet_normals_.size(); ++f)
                if (dot(facet_normals_[f], p) > facet_offsets_[f]) return false;
            return true;
        }
    }
}

ConvexBody ConvexBody::normalized_to_unit_volume() const {
    const double vol = volume_;
    if (!(vol > 0.0)) throw std::invalid_argument("normalize: degenerate body");
    double s = std::pow(1.0 / vol, 1.0 / dim_);
    // Newton polish so that s^d * vol is 1 to the last bit.
    for (int it = 0; it < 2; ++it) {
        const double f = std::pow(s, dim_) * vol;
        s *= 1.0 - (f - 1.0) / (dim_ * f);
    }

    ConvexBody out = *this;
    if (shape_ == Shape::ball) {
        out.radius_ = radius_ * s;
    } else {
        const Point c = centroid();
        for (auto& v : out.vertices_)
            for (int j = 0; j < dim_; ++j) v[j] = c[j] + s * (v[j] - c[j]);
    }
    out.finalize();
    return out;
}

Point ConvexBody::sample_point(Rng& rng) const {
    constexpr int kMaxRejects = 200000;
    const std::size_t d = static_cast<std::size_t>(dim_);

    switch (shape_) {
        case Shape::ball: {
            Point p(d);
            for (int attempt = 0; attempt < kMaxRejects; ++attempt) {
                double s = 0;
                for (std::size_t i = 0; i < d; ++i) {
                    p[i] = rng.uniform(-radius_, radius_);
                    s += p[i] * p[i];
                }
                if (s <= radius_ * radius_) {
                    for (std::size_t i = 0; i < d; ++i) p[i] += center_[i];
                    return p;
                }
            }
            throw std::runtime_error("sample_point: rejection budget exhausted (ball)");
        }
        case Shape::polygon: {
            // Fan triangulation, area-weighted triangle, then uniform inside.
            const std::size_t m = vertices_.size();
            double total = 0;
            double pick = 0;
            // Two passes keep this allocation-free; polygons are small.
            for (std::size_t i = 1; i + 1 < m; ++i) {
                const double a2 = (vertices_[i][0] - vertices_[0][0]) * (vertices_[i + 1][1] - vertices_[0][1]) -
                                  (vertices_[i][1] - vertices_[0][1]) * (vertices_[i + 1][0] - vertices_[0][0]);
                total += a2;
            }
            pick = rng.uniform01() * total;
            std::size_t tri = 1;
            for (std::size_t i = 1; i + 1 < m; ++i) {
                const double a2 = (vertices_[i][0] - vertices_[0][0]) * (vertices_[i + 1][1] - vertices_[0][1]) -
                                  (vertices_[i][1] - vertices_[0][1]) * (vertices_[i + 1][0] - vertices_[0][0]);
                if (pick <= a2 || i + 2 == m) {
                    tri = i;
                    break;
                }
                pick -= a2;
            }
            double u = rng.uniform01(), v = rng.uniform01();
            if (u > v) std::swap(u, v);
            const double l0 = u, l1 = v - u, l2 = 1.0 - v;
            const auto& A = vertices_[0];
            const auto& B = vertices_[tri];
            const auto& C = vertices_[tri + 1];
            return {l0 * A[0] + l1 * B[0] + l2 * C[0], l0 * A[1] + l1 * B[1] + l2 * C[1]};
        }
        case Shape::simplex: {
            // Sorted uniform spacings give exact barycentric uniformity.
            std::vector<double> u(d);
            for (auto& x : u) x = rng.uniform01();
            std::sort(u.begin(), u.end());
            Point p(d, 0.0);
            double prev = 0.0;
            for (std::size_t i = 0; i <= d; ++i) {
                const double next = (i < d) ? u[i] : 1.0;
                const double lambda = next - prev;
                prev = next;
                for (std::size_t j = 0; j < d; ++j) p[j] += lambda * vertices_[i][j];
            }
            return p;
        }
        default: {  // 3D regular solids: rejection from the bounding box
            Point p(d);
            for (int attempt = 0; attempt < kMaxRejects; ++attempt) {
                for (std::size_t i = 0; i < d; ++i) p[i] = rng.uniform(bbox_lo_[i], bbox_hi_[i]);
                bool ok = true;
                for (std::size_t f = 0; f < facet_normals_.size() && ok; ++f)
                    ok = dot(facet_normals_[f], p) <= facet_offsets_[f];
                if (ok) return p;
            }
            throw std::runtime_error("sample_point: rejection budget exhausted (polytope)");
        }
    }
}

PointSet sample_uniform(const ConvexBody& body, int n, Rng rng, int gp_check_threads) {
    if (n < 1) throw std::invalid_argument("sample_uniform: n must be >= 1");
    constexpr int kMaxResamples = 32;
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        Rng stream = (attempt == 0) ? rng : rng.child(0x600D5EEDull + attempt);
        PointSet ps;
        ps.dim = body.dim();
        ps.coords.reserve(static_cast<std::size_t>(n) * body.dim());
        for (int i = 0; i < n; ++i) {
            const Point p = body.sample_point(stream);
            ps.coords.insert(ps.coords.end(), p.begin(), p.end());
        }
        if (n == 1 || geom::check_general_position(ps, gp_check_threads)) return ps;
    }
    throw degenerate_input("sample_uniform: repeated general-position failures");
}

}  // namespace holescope::bodies
