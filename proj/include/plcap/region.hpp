#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "plcap/ball.hpp"
#include "plcap/polynomial.hpp"

namespace plcap {

// Upper-level-set style function on C^n used by sublevel regions; implemented
// by the closed-form psh test functions.
struct ComplexFunction {
    virtual ~ComplexFunction() = default;
    virtual double eval(std::span<const Complex> z) const = 0;
    virtual std::string id() const = 0;
};

// Subset of one complex coordinate plane. An interval on the real axis is a
// rect with y0 == y1.
struct PlaneSet {
    enum class Kind { disc, rect };
    Kind kind = Kind::disc;
    Complex center{0.0, 0.0};
    double radius = 1.0;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    static PlaneSet disc(Complex c, double r);
    static PlaneSet rect(double x0, double x1, double y0, double y1);
    static PlaneSet interval(double a, double b);

    bool contains(Complex z) const;
    bool is_interval() const { return kind == Kind::rect && y0 == y1; }
    double area() const;
};

struct Interval {
    double a = -1.0, b = 1.0;
    double length() const { return b - a; }
};

// Column-major batch of points of a generic subspace.
struct PointBatch {
    size_t n = 0;
    int dim = 0;
    std::vector<double> data;

    PointBatch() = default;
    PointBatch(size_t n_, int dim_) : n(n_), dim(dim_), data(n_ * (size_t)dim_, 0.0) {}
    double* col(int d) { return data.data() + (size_t)d * n; }
    const double* col(int d) const { return data.data() + (size_t)d * n; }
    RVec point(size_t i) const {
        RVec x((size_t)dim);
        for (int d = 0; d < dim; ++d) x[(size_t)d] = col(d)[i];
        return x;
    }
};

enum class RegionKind {
    ball,
    box,
    product,
    lemniscate,
    sublevel,
    union_of,
    intersection,
    finite_set
};

struct BoxData {
    AmbientSpace space;
    RVec lo, hi;
};

struct ProductData {
    AmbientSpace space;
    std::vector<PlaneSet> complex_factors;  // one per complex coordinate of G
    std::vector<Interval> real_factors;     // one per real coordinate of G
};

struct LemniscateData {
    AmbientSpace space;
    Polynomial poly;
    double threshold = 1.0;
    Ball bounding;
};

struct SublevelData {
    AmbientSpace space;
    std::shared_ptr<const ComplexFunction> fn;
    double s = 1.0;
    Ball bounding;
};

struct FiniteSetData {
    AmbientSpace space;
    std::vector<RVec> points;
    double tol = 1e-12;
};

// Declarative compact/Borel set with an exact membership predicate. Immutable;
// cheap to copy.
class Region {
public:
    RegionKind kind() const;
    const AmbientSpace& space() const;

    bool contains(std::span<const double> x) const;
    void contains_batch(const PointBatch& pts, uint8_t* out) const;

    // Ball enclosing the region. For balls, boxes and products this is the
    // smallest enclosing ball; elsewhere it is the declared bounding ball.
    Ball bounding_ball() const;

    // Points of the region for search-based operations (sup norms, Fekete
    // configurations): boundary-biased for discs/boxes, rejection-sampled
    // from the bounding ball for implicit regions.
    std::vector<RVec> candidate_points(int k, uint64_t seed) const;

    std::string describe() const;

    static Region ball(Ball b);
    static Region box(AmbientSpace sp, RVec lo, RVec hi);
    static Region product(AmbientSpace sp, std::vector<PlaneSet> complex_factors,
                          std::vector<Interval> real_factors);
    // Plane set as a region of C (space (1,1)).
    static Region plane(const PlaneSet& f);
    static Region lemniscate(AmbientSpace sp, Polynomial p, double threshold,
                             Ball bounding);
    static Region sublevel(AmbientSpace sp, std::shared_ptr<const ComplexFunction> fn,
                           double s, Ball bounding);
    static Region union_of(std::vector<Region> members);
    static Region intersection(std::vector<Region> members);
    static Region finite_set(AmbientSpace sp, std::vector<RVec> points);

    const Ball* as_ball() const;
    const BoxData* as_box() const;
    const ProductData* as_product() const;
    const LemniscateData* as_lemniscate() const;
    const SublevelData* as_sublevel() const;
    const std::vector<Region>* as_union() const;
    const FiniteSetData* as_finite_set() const;

    struct Impl;

private:
    explicit Region(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// Uniform point in a ball / box driven by one per-sample stream.
RVec sample_in_ball(const Ball& b, class SampleRng& rng);
RVec sample_on_sphere(int dim, class SampleRng& rng);

}  // namespace plcap
