#include "setdepth/geometry.hpp"

#include "setdepth/directions.hpp"
#include "setdepth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace setdepth {

namespace {

bool all_finite(const Vector& v) { return v.allFinite(); }

void require_same_dimension(const ConvexBody& a, const ConvexBody& b, const char* what) {
    if (a.dimension() != b.dimension()) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (" << a.dimension() << " vs " << b.dimension() << ")";
        throw ValidationError(msg.str());
    }
}

// In R^1 every body is the interval [-s(-1), s(+1)].
ConvexBody as_interval(const ConvexBody& body) {
    Vector plus(1), minus(1);
    plus[0] = 1.0;
    minus[0] = -1.0;
    return ConvexBody::interval(-body.support_of(minus), body.support_of(plus));
}

void append_terms(const ConvexBody& body, double factor, std::vector<CompositeTerm>& out) {
    if (const auto* c = std::get_if<Composite>(&body.shape())) {
        for (const auto& term : c->terms) {
            out.push_back({term.scale * factor, term.map, term.body});
        }
    } else {
        out.push_back({factor, std::nullopt, std::make_shared<const ConvexBody>(body)});
    }
}

ConvexBody planar_polytope(std::vector<Vector> points) {
    return ConvexBody::polytope(convex_hull_2d(std::move(points)));
}

double cross(const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double distance_to_segment(const Vector& p, const Vector& a, const Vector& b) {
    const Vector ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) {
        return (p - a).norm();
    }
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

double directed_polygon_distance(const std::vector<Vector>& from, const std::vector<Vector>& to) {
    double worst = 0.0;
    for (const auto& v : from) {
        worst = std::max(worst, distance_to_polygon(v, to));
    }
    return worst;
}

double gap(const ConvexBody& a, const ConvexBody& b, const Vector& v) {
    return std::abs(a.support_of(v) - b.support_of(v));
}

HausdorffResult approximate_hausdorff(const ConvexBody& a, const ConvexBody& b) {
    const int p = a.dimension();
    const auto grid = default_directions(p);
    HausdorffResult result{0.0, false, grid.size()};
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double g = gap(a, b, grid[i].coords());
        if (g > result.value) {
            result.value = g;
            best = i;
        }
    }

    if (p == 2) {
        // golden-section refinement on the bracketing arc of the best angle
        const double step = 2.0 * std::numbers::pi / static_cast<double>(grid.size());
        const double center = grid[best].angle();
        auto f = [&](double t) { return gap(a, b, UnitDirection::from_angle(t).coords()); };
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = center - step, hi = center + step;
        double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + ratio * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - ratio * (hi - lo);
                f1 = f(x1);
            }
        }
        result.value = std::max({result.value, f1, f2});
        return result;
    }

    // coordinate hill climb on the sphere around the best grid direction
    Vector u = grid[best].coords();
    double h = 1.0 / std::sqrt(static_cast<double>(grid.size()));
    for (int it = 0; it < 40; ++it) {
        bool improved = false;
        for (int i = 0; i < p; ++i) {
            for (double sign : {1.0, -1.0}) {
                Vector trial = u;
                trial[i] += sign * h;
                trial.normalize();
                const double g = gap(a, b, trial);
                if (g > result.value) {
                    result.value = g;
                    u = trial;
                    improved = true;
                }
            }
        }
        if (!improved) {
            h *= 0.5;
        }
    }
    return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// UnitDirection

UnitDirection::UnitDirection(Vector v) : coords_(std::move(v)) {
    if (coords_.size() < 1) {
        throw ValidationError("UnitDirection: empty vector");
    }
    if (!all_finite(coords_)) {
        throw ValidationError("UnitDirection: non-finite coordinates");
    }
    const double n = coords_.norm();
    if (n == 0.0) {
        throw ValidationError("UnitDirection: zero vector");
    }
    if (coords_.size() == 1) {
        coords_[0] = coords_[0] > 0 ? 1.0 : -1.0;
    } else {
        coords_ /= n;
    }
}

UnitDirection UnitDirection::from_angle(double theta) {
    Vector v(2);
    v << std::cos(theta), std::sin(theta);
    return UnitDirection(std::move(v));
}

UnitDirection UnitDirection::axis(int dimension, int index, bool negative) {
    if (dimension < 1 || index < 0 || index >= dimension) {
        throw ValidationError("UnitDirection::axis: index out of range");
    }
    Vector v = Vector::Zero(dimension);
    v[index] = negative ? -1.0 : 1.0;
    return UnitDirection(std::move(v));
}

UnitDirection UnitDirection::operator-() const { return UnitDirection(-coords_); }

double UnitDirection::angle() const {
    if (dimension() != 2) {
        throw ValidationError("UnitDirection::angle: needs p = 2");
    }
    double t = std::atan2(coords_[1], coords_[0]);
    if (t < 0) {
        t += 2.0 * std::numbers::pi;
    }
    return t;
}

// ---------------------------------------------------------------------------
// ConvexBody

std::string to_string(BodyKind kind) {
    switch (kind) {
        case BodyKind::kInterval: return "interval";
        case BodyKind::kBox: return "box";
        case BodyKind::kPolytope: return "polytope";
        case BodyKind::kBall: return "ball";
        case BodyKind::kComposite: return "composite";
    }
    return "unknown";
}

ConvexBody ConvexBody::interval(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ValidationError("interval: non-finite endpoint");
    }
    if (a > b) {
        throw ValidationError("interval: a > b");
    }
    return ConvexBody(Interval{a, b}, 1);
}

ConvexBody ConvexBody::box(Vector min, Vector max) {
    if (min.size() < 1 || min.size() != max.size()) {
        throw ValidationError("box: min/max must be nonempty with equal length");
    }
    if (!all_finite(min) || !all_finite(max)) {
        throw ValidationError("box: non-finite coordinate");
    }
    if ((min.array() > max.array()).any()) {
        throw ValidationError("box: min > max in some coordinate");
    }
    const int p = static_cast<int>(min.size());
    return ConvexBody(Box{std::move(min), std::move(max)}, p);
}

ConvexBody ConvexBody::polytope(std::vector<Vector> vertices) {
    if (vertices.empty()) {
        throw ValidationError("polytope: no vertices");
    }
    const auto p = vertices.front().size();
    if (p < 1) {
        throw ValidationError("polytope: zero-dimensional vertex");
    }
    for (const auto& v : vertices) {
        if (v.size() != p) {
            throw ValidationError("polytope: vertices of mixed dimension");
        }
        if (!all_finite(v)) {
            throw ValidationError("polytope: non-finite vertex");
        }
    }
    return ConvexBody(Polytope{std::move(vertices)}, static_cast<int>(p));
}

ConvexBody ConvexBody::ball(Vector center, double radius) {
    if (center.size() < 1 || !all_finite(center)) {
        throw ValidationError("ball: invalid center");
    }
    if (!std::isfinite(radius) || radius < 0) {
        throw ValidationError("ball: radius must be finite and >= 0");
    }
    const int p = static_cast<int>(center.size());
    return ConvexBody(Ball{std::move(center), radius}, p);
}

ConvexBody ConvexBody::singleton(const Vector& point) {
    if (point.size() == 1) {
        return interval(point[0], point[0]);
    }
    return polytope({point});
}

ConvexBody ConvexBody::composite(std::vector<CompositeTerm> terms) {
    if (terms.empty()) {
        throw ValidationError("composite: no terms");
    }
    int p = -1;
    for (const auto& t : terms) {
        if (!t.body) {
            throw ValidationError("composite: null sub-body");
        }
        if (!std::isfinite(t.scale) || t.scale < 0) {
            throw ValidationError("composite: scale must be finite and >= 0");
        }
        const int q = t.map ? static_cast<int>(t.map->rows()) : t.body->dimension();
        if (t.map && (t.map->cols() != t.body->dimension() || t.map->rows() != t.map->cols())) {
            throw ValidationError("composite: map shape does not match sub-body");
        }
        if (p == -1) {
            p = q;
        } else if (p != q) {
            throw ValidationError("composite: terms of mixed dimension");
        }
    }
    return ConvexBody(Composite{std::move(terms)}, p);
}

bool ConvexBody::is_polytopal() const {
    const auto k = kind();
    return k == BodyKind::kInterval || k == BodyKind::kBox || k == BodyKind::kPolytope;
}

double ConvexBody::support(const UnitDirection& u) const {
    if (u.dimension() != dimension_) {
        std::ostringstream msg;
        msg << "support: direction dimension " << u.dimension() << " != body dimension " << dimension_;
        throw ValidationError(msg.str());
    }
    return support_of(u.coords());
}

double ConvexBody::support_of(const Vector& v) const {
    struct Visitor {
        const Vector& v;
        double operator()(const Interval& i) const { return v[0] >= 0 ? i.b * v[0] : i.a * v[0]; }
        double operator()(const Box& b) const {
            double s = 0.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                s += v[i] >= 0 ? b.max[i] * v[i] : b.min[i] * v[i];
            }
            return s;
        }
        double operator()(const Polytope& p) const {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& x : p.vertices) {
                best = std::max(best, x.dot(v));
            }
            return best;
        }
        double operator()(const Ball& b) const { return b.center.dot(v) + b.radius * v.norm(); }
        double operator()(const Composite& c) const {
            double s = 0.0;
            for (const auto& term : c.terms) {
                if (term.scale == 0.0) {
                    continue;
                }
                if (!term.map) {
                    s += term.scale * term.body->support_of(v);
                    continue;
                }
                const Vector w = term.map->transpose() * v;
                const double n = w.norm();
                if (n == 0.0) {
                    continue;
                }
                s += term.scale * n * term.body->support(UnitDirection(w));
            }
            return s;
        }
    };
    return std::visit(Visitor{v}, shape_);
}

std::vector<Vector> ConvexBody::points() const {
    if (const auto* i = std::get_if<Interval>(&shape_)) {
        Vector a(1), b(1);
        a[0] = i->a;
        b[0] = i->b;
        if (i->a == i->b) {
            return {a};
        }
        return {a, b};
    }
    if (const auto* b = std::get_if<Box>(&shape_)) {
        const int p = dimension_;
        if (p > 20) {
            throw ValidationError("box: too many corners to enumerate");
        }
        std::vector<Vector> corners;
        corners.reserve(std::size_t{1} << p);
        for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
            Vector c(p);
            for (int k = 0; k < p; ++k) {
                c[k] = (mask >> k) & 1U ? b->max[k] : b->min[k];
            }
            corners.push_back(std::move(c));
        }
        return corners;
    }
    if (const auto* poly = std::get_if<Polytope>(&shape_)) {
        return poly->vertices;
    }
    throw NeedsSampling("body of kind " + to_string(kind()) + " has no finite vertex set");
}

std::string ConvexBody::describe() const {
    std::ostringstream os;
    os.precision(12);
    auto vec = [&os](const Vector& v) {
        os << '(';
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            os << (i ? "," : "") << v[i];
        }
        os << ')';
    };
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                os << '[' << s.a << ',' << s.b << ']';
            } else if constexpr (std::is_same_v<T, Box>) {
                os << "box";
                vec(s.min);
                vec(s.max);
            } else if constexpr (std::is_same_v<T, Polytope>) {
                os << "polytope{";
                for (std::size_t i = 0; i < s.vertices.size(); ++i) {
                    if (i) os << ',';
                    vec(s.vertices[i]);
                }
                os << '}';
            } else if constexpr (std::is_same_v<T, Ball>) {
                os << "ball";
                vec(s.center);
                os << 'r' << s.radius;
            } else {
                os << "composite[" << s.terms.size() << " terms]";
            }
        },
        shape_);
    return os.str();
}

// ---------------------------------------------------------------------------
// AffineMap

void require_nonsingular(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw ValidationError("matrix must be square and nonempty");
    }
    if (!m.allFinite()) {
        throw ValidationError("matrix has non-finite entries");
    }
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible() || lu.determinant() == 0.0) {
        throw ValidationError("matrix is singular");
    }
}

AffineMap::AffineMap(Matrix matrix, ConvexBody translate)
    : matrix_(std::move(matrix)), translate_(std::move(translate)) {
    require_nonsingular(matrix_);
    if (translate_.dimension() != matrix_.rows()) {
        throw ValidationError("AffineMap: translate dimension does not match matrix");
    }
}

AffineMap AffineMap::identity(int dimension) {
    return AffineMap(Matrix::Identity(dimension, dimension),
                     ConvexBody::singleton(Vector::Zero(dimension)));
}

// ---------------------------------------------------------------------------
// Operations

double support(const ConvexBody& body, const UnitDirection& u) { return body.support(u); }

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
    require_same_dimension(a, b, "minkowski_sum");
    const auto* ba = std::get_if<Ball>(&a.shape());
    const auto* bb = std::get_if<Ball>(&b.shape());
    if (ba && bb) {
        return ConvexBody::ball(ba->center + bb->center, ba->radius + bb->radius);
    }
    if (a.dimension() == 1) {
        const auto ia = as_interval(a);
        const auto ib = as_interval(b);
        const auto& x = std::get<Interval>(ia.shape());
        const auto& y = std::get<Interval>(ib.shape());
        return ConvexBody::interval(x.a + y.a, x.b + y.b);
    }
    const auto* xa = std::get_if<Box>(&a.shape());
    const auto* xb = std::get_if<Box>(&b.shape());
    if (xa && xb) {
        return ConvexBody::box(xa->min + xb->min, xa->max + xb->max);
    }
    if (a.is_polytopal() && b.is_polytopal()) {
        const auto pa = a.dimension() == 2 ? convex_hull_2d(a.points()) : a.points();
        const auto pb = b.dimension() == 2 ? convex_hull_2d(b.points()) : b.points();
        std::vector<Vector> sums;
        sums.reserve(pa.size() * pb.size());
        for (const auto& v : pa) {
            for (const auto& w : pb) {
                sums.push_back(v + w);
            }
        }
        if (a.dimension() == 2) {
            return planar_polytope(std::move(sums));
        }
        return ConvexBody::polytope(std::move(sums));
    }
    std::vector<CompositeTerm> terms;
    append_terms(a, 1.0, terms);
    append_terms(b, 1.0, terms);
    return ConvexBody::composite(std::move(terms));
}

ConvexBody scale(const ConvexBody& body, double gamma) {
    if (!std::isfinite(gamma) || gamma < 0) {
        throw ValidationError("scale: factor must be finite and >= 0");
    }
    return std::visit(
        [&](const auto& s) -> ConvexBody {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                return ConvexBody::interval(gamma * s.a, gamma * s.b);
            } else if constexpr (std::is_same_v<T, Box>) {
                return ConvexBody::box(gamma * s.min, gamma * s.max);
            } else if constexpr (std::is_same_v<T, Polytope>) {
                std::vector<Vector> pts;
                pts.reserve(s.vertices.size());
                for (const auto& v : s.vertices) {
                    pts.push_back(gamma * v);
                }
                return ConvexBody::polytope(std::move(pts));
            } else if constexpr (std::is_same_v<T, Ball>) {
                return ConvexBody::ball(gamma * s.center, gamma * s.radius);
            } else {
                if (body.dimension() == 1) {
                    return scale(as_interval(body), gamma);
                }
                std::vector<CompositeTerm> terms;
                append_terms(body, gamma, terms);
                return ConvexBody::composite(std::move(terms));
            }
        },
        body.shape());
}

ConvexBody convex_combination(const ConvexBody& k, const ConvexBody& l, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ValidationError("convex_combination: lambda outside [0, 1]");
    }
    return minkowski_sum(scale(k, 1.0 - lambda), scale(l, lambda));
}

ConvexBody linear_image(const Matrix& m, const ConvexBody& body) {
    require_nonsingular(m);
    if (m.rows() != body.dimension()) {
        throw ValidationError("linear_image: matrix dimension does not match body");
    }
    if (body.dimension() == 1) {
        const auto i = as_interval(body);
        const auto& s = std::get<Interval>(i.shape());
        const double x = m(0, 0) * s.a;
        const double y = m(0, 0) * s.b;
        return ConvexBody::interval(std::min(x, y), std::max(x, y));
    }
    if (body.is_polytopal()) {
        std::vector<Vector> pts = body.points();
        for (auto& v : pts) {
            v = m * v;
        }
        if (body.dimension() == 2) {
            return planar_polytope(std::move(pts));
        }
        return ConvexBody::polytope(std::move(pts));
    }
    return ConvexBody::composite({CompositeTerm{1.0, m, std::make_shared<const ConvexBody>(body)}});
}

ConvexBody affine_image(const AffineMap& map, const ConvexBody& body) {
    return minkowski_sum(linear_image(map.matrix(), body), map.translate());
}

UnitDirection sphere_map(const Matrix& m, const UnitDirection& u) {
    require_nonsingular(m);
    if (m.rows() != u.dimension()) {
        throw ValidationError("sphere_map: dimension mismatch");
    }
    return UnitDirection(m.transpose() * u.coords());
}

std::vector<Vector> convex_hull_2d(std::vector<Vector> points) {
    for (const auto& p : points) {
        if (p.size() != 2) {
            throw ValidationError("convex_hull_2d: points must be planar");
        }
    }
    std::sort(points.begin(), points.end(), [](const Vector& a, const Vector& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vector& a, const Vector& b) { return a[0] == b[0] && a[1] == b[1]; }),
                 points.end());
    if (points.size() <= 2) {
        return points;
    }
    // Andrew's monotone chain
    std::vector<Vector> hull(2 * points.size());
    std::size_t k = 0;
    for (const auto& p : points) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
        const auto& p = points[i];
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

ConvexBody hull_reduced(const ConvexBody& body) {
    if (body.dimension() != 2 || !body.is_polytopal()) {
        return body;
    }
    return planar_polytope(body.points());
}

double distance_to_polygon(const Vector& point, const std::vector<Vector>& hull) {
    if (hull.empty()) {
        throw ValidationError("distance_to_polygon: empty polygon");
    }
    if (hull.size() == 1) {
        return (point - hull[0]).norm();
    }
    if (hull.size() == 2) {
        return distance_to_segment(point, hull[0], hull[1]);
    }
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, point) < 0) {
            inside = false;
        }
        best = std::min(best, distance_to_segment(point, a, b));
    }
    return inside ? 0.0 : best;
}

bool identical(const ConvexBody& a, const ConvexBody& b) {
    if (a.kind() != b.kind() || a.dimension() != b.dimension()) {
        return false;
    }
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.shape());
            if constexpr (std::is_same_v<T, Interval>) {
                return x.a == y.a && x.b == y.b;
            } else if constexpr (std::is_same_v<T, Box>) {
                return x.min == y.min && x.max == y.max;
            } else if constexpr (std::is_same_v<T, Polytope>) {
                return x.vertices == y.vertices;
            } else if constexpr (std::is_same_v<T, Ball>) {
                return x.center == y.center && x.radius == y.radius;
            } else {
                if (x.terms.size() != y.terms.size()) return false;
                for (std::size_t i = 0; i < x.terms.size(); ++i) {
                    const auto& s = x.terms[i];
                    const auto& t = y.terms[i];
                    if (s.scale != t.scale || s.body != t.body || s.map.has_value() != t.map.has_value()) return false;
                    if (s.map && *s.map != *t.map) return false;
                }
                return true;
            }
        },
        a.shape());
}

double hausdorff_on_directions(const ConvexBody& a, const ConvexBody& b,
                               const std::vector<UnitDirection>& directions) {
    require_same_dimension(a, b, "hausdorff");
    double worst = 0.0;
    for (const auto& u : directions) {
        worst = std::max(worst, std::abs(a.support(u) - b.support(u)));
    }
    return worst;
}

HausdorffResult hausdorff(const ConvexBody& a, const ConvexBody& b) {
    require_same_dimension(a, b, "hausdorff");
    if (a.dimension() == 1) {
        const auto plus = UnitDirection::axis(1, 0);
        const auto minus = UnitDirection::axis(1, 0, true);
        return {std::max(std::abs(a.support(plus) - b.support(plus)), std::abs(a.support(minus) - b.support(minus))),
                true, 2};
    }
    const auto* ba = std::get_if<Ball>(&a.shape());
    const auto* bb = std::get_if<Ball>(&b.shape());
    if (ba && bb) {
        return {(ba->center - bb->center).norm() + std::abs(ba->radius - bb->radius), true, 0};
    }
    if (a.dimension() == 2 && a.is_polytopal() && b.is_polytopal()) {
        const auto ha = convex_hull_2d(a.points());
        const auto hb = convex_hull_2d(b.points());
        return {std::max(directed_polygon_distance(ha, hb), directed_polygon_distance(hb, ha)), true, 0};
    }
    return approximate_hausdorff(a, b);
}

}  // namespace setdepth
