#pragma once

#include <optional>
#include <string>
#include <vector>

#include "codim1/measure.hpp"
#include "codim1/simplicial.hpp"

namespace codim1 {

// Weighted barycentric point sample of a closed subset of a complex.
struct ComplexSampleSet {
    std::vector<BarycentricPoint> points;
    std::vector<double> weights;  // optional, defaults to 1 per point
    int k = 1;                    // target Hausdorff dimension
    double scale = 0.0;           // resolution (in the complex's metric)
};

// k-dimensional covering measure of a barycentric point cloud (Euclidean
// metric of the standard realization; comparable to the intrinsic one).
MeasureEstimate complex_set_measure(const ComplexSampleSet& set);

// Radial projection from an interior center: the boundary point on the ray
// from `center` through `x`. Both points must live in the same simplex.
BarycentricPoint radial_project(const BarycentricPoint& center, const BarycentricPoint& x);

// Thrown when a simplex is fully covered by the set at its resolution, so no
// projection center exists (the base-case obstruction).
class ObstructionError : public Error {
public:
    ObstructionError(Simplex simplex, const std::string& what)
        : Error(ErrorCode::kDomain, what), simplex_(std::move(simplex)) {}
    const Simplex& simplex() const { return simplex_; }

private:
    Simplex simplex_;
};

// Center choice inside the middle simplex (same barycenter, half side
// length): minimizes the discrete energy sum_j w_j |x_j - y|^-k over a
// deterministic barycentric grid, excluding grid points within `scale` of the
// samples. Guarantees a positive distance to the set.
BarycentricPoint select_center(const std::vector<BarycentricPoint>& samples,
                               const std::vector<double>& weights, const Simplex& simplex,
                               int k, double scale, int subdivisions = 7);

struct SimplexStage {
    int stage_dim = 0;
    Simplex simplex;
    BarycentricPoint center;
    int moved_points = 0;
    double measure_before = 0.0;
    double measure_after = 0.0;
    double growth = 1.0;
};

struct ConstantRow {
    int k = 0;
    int n = 0;
    std::string formula;   // symbolic chain entry
    double base = 0.0;     // numeric base-case value (vol(simplex_k)/2 at n = k)
    double empirical = 0.0;  // evaluated with measured stage growths
};

struct ProjectionLog {
    std::vector<SimplexStage> per_simplex;
    std::vector<int> stage_dims;
    std::vector<double> stage_measure_before;
    std::vector<double> stage_measure_after;
    std::vector<double> stage_growth;
    double initial_measure = 0.0;
    double final_measure = 0.0;
    double cumulative_growth = 1.0;
    bool measure_precondition_ok = true;  // estimated H_k(E) <= c_{k,dim}
    std::vector<ConstantRow> constants;
    // The continuous construction blends the projection near the center; for
    // point samples the blend region is set-free, so it is skipped.
    bool smoothing_skipped = true;
};

// Volume of the standard k-simplex conv(e_1..e_{k+1}) (side sqrt(2)).
double standard_simplex_volume(int k);

// Projects interior samples of one simplex to its boundary; boundary samples
// are untouched. growth = measure(image)/measure(set) (1 when measure 0).
std::pair<ComplexSampleSet, double> project_simplex(const ComplexSampleSet& set,
                                                    const Simplex& simplex,
                                                    const BarycentricPoint& center);

// Skeleton-by-skeleton projection: stages run from dim(complex) down to k;
// after the run every sample lies in the (k-1)-skeleton. Barycentric support
// never grows at any sample (audited on every point).
std::pair<ComplexSampleSet, ProjectionLog> project_to_skeleton(
    const SimplicialComplex& complex, const ComplexSampleSet& set, int k);

}  // namespace codim1
