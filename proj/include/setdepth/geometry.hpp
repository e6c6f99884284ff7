#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace setdepth {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Absolute tolerance used by every combinatorial comparison (ties, hull
// tests, metric-betweenness).
inline constexpr double kGeometryTolerance = 1e-9;

/// A point on the unit sphere S^{p-1}. The constructor normalizes any nonzero
/// finite vector; for p = 1 the only values are +1 and -1.
class UnitDirection {
public:
    explicit UnitDirection(Vector v);

    static UnitDirection from_angle(double theta);
    static UnitDirection axis(int dimension, int index, bool negative = false);

    int dimension() const { return static_cast<int>(coords_.size()); }
    const Vector& coords() const { return coords_; }
    double operator[](int i) const { return coords_[i]; }
    UnitDirection operator-() const;

    // Polar angle in [0, 2pi); p = 2 only.
    double angle() const;

private:
    Vector coords_;
};

class ConvexBody;

struct Interval {
    double a = 0.0;
    double b = 0.0;
};

struct Box {
    Vector min;
    Vector max;
};

// Convex hull of the stored points. Points need not be extreme.
struct Polytope {
    std::vector<Vector> vertices;
};

struct Ball {
    Vector center;
    double radius = 0.0;
};

// One summand scale * (map * body) of a composite body. An empty map means
// the identity.
struct CompositeTerm {
    double scale = 1.0;
    std::optional<Matrix> map;
    std::shared_ptr<const ConvexBody> body;
};

// Minkowski sum of terms, evaluated purely through support oracles.
struct Composite {
    std::vector<CompositeTerm> terms;
};

enum class BodyKind { kInterval, kBox, kPolytope, kBall, kComposite };

std::string to_string(BodyKind kind);

/// Nonempty compact convex subset of R^p backed by an exact support oracle.
/// Immutable; copies are cheap for composites (sub-bodies are shared).
class ConvexBody {
public:
    using Variant = std::variant<Interval, Box, Polytope, Ball, Composite>;

    static ConvexBody interval(double a, double b);
    static ConvexBody box(Vector min, Vector max);
    static ConvexBody polytope(std::vector<Vector> vertices);
    static ConvexBody ball(Vector center, double radius);
    static ConvexBody singleton(const Vector& point);
    static ConvexBody composite(std::vector<CompositeTerm> terms);

    int dimension() const { return dimension_; }
    BodyKind kind() const { return static_cast<BodyKind>(shape_.index()); }
    const Variant& shape() const { return shape_; }

    // Interval, Box and Polytope: the exact combinatorial engines accept these.
    bool is_polytopal() const;

    /// s_K(u) = sup_{k in K} <k, u>.
    double support(const UnitDirection& u) const;

    // Positively homogeneous extension h_K(v) = |v| s_K(v/|v|), h_K(0) = 0.
    double support_of(const Vector& v) const;

    // Generating points of a polytopal body (interval endpoints, box corners,
    // stored polytope vertices). Throws NeedsSampling otherwise.
    std::vector<Vector> points() const;

    std::string describe() const;

private:
    ConvexBody(Variant shape, int dimension) : shape_(std::move(shape)), dimension_(dimension) {}

    Variant shape_;
    int dimension_ = 0;
};

/// x -> matrix * x + translate, with translate a body (the Minkowski
/// summand L). The matrix must be square and nonsingular.
class AffineMap {
public:
    AffineMap(Matrix matrix, ConvexBody translate);

    static AffineMap identity(int dimension);

    int dimension() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    const ConvexBody& translate() const { return translate_; }

private:
    Matrix matrix_;
    ConvexBody translate_;
};

double support(const ConvexBody& body, const UnitDirection& u);

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b);

// gamma * K for gamma >= 0.
ConvexBody scale(const ConvexBody& body, double gamma);

// (1 - lambda) * K + lambda * L.
ConvexBody convex_combination(const ConvexBody& k, const ConvexBody& l, double lambda);

// M * K without a translate.
ConvexBody linear_image(const Matrix& m, const ConvexBody& body);

// M * K + L.
ConvexBody affine_image(const AffineMap& map, const ConvexBody& body);

/// M^T u / |M^T u|. Bijective on the sphere for nonsingular M; satisfies
/// s_{M K}(u) = |M^T u| * s_K(sphere_map(M, u)).
UnitDirection sphere_map(const Matrix& m, const UnitDirection& u);

// Throws ValidationError unless m is square, finite and nonsingular.
void require_nonsingular(const Matrix& m);

// Counter-clockwise extreme points of a planar point set (collinear and
// duplicate points removed). One or two points for degenerate input.
std::vector<Vector> convex_hull_2d(std::vector<Vector> points);

// Replaces a planar polytopal body by the polytope on its hull vertices.
ConvexBody hull_reduced(const ConvexBody& body);

double distance_to_polygon(const Vector& point, const std::vector<Vector>& hull);

// Same kind and bit-identical data. Composites compare by shared sub-body
// identity only.
bool identical(const ConvexBody& a, const ConvexBody& b);

struct HausdorffResult {
    double value = 0.0;
    bool exact = true;
    std::size_t directions = 0;  // grid size for approximate results

    std::string method() const { return exact ? "exact" : "approx"; }
};

/// d_H(A, B) = sup_u |s_A(u) - s_B(u)|. Exact for p = 1, ball pairs and
/// planar polytopes; otherwise a grid lower bound with one refinement pass.
HausdorffResult hausdorff(const ConvexBody& a, const ConvexBody& b);

// Max of |s_A - s_B| over the given directions, no refinement.
double hausdorff_on_directions(const ConvexBody& a, const ConvexBody& b,
                               const std::vector<UnitDirection>& directions);

}  // namespace setdepth
