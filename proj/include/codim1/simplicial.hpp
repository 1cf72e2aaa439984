#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

namespace codim1 {

// A simplex is a sorted tuple of vertex indices.
using Simplex = std::vector<int>;

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int v : s) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Finite abstract simplicial complex, always kept downward closed.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    explicit SimplicialComplex(int vertex_count) : vertex_count_(vertex_count) {}

    int vertex_count() const { return vertex_count_; }
    void set_vertex_count(int n);

    // Inserts a simplex together with all of its faces.
    void insert_closed(Simplex s);

    bool contains(const Simplex& s) const;
    int dim() const;
    std::size_t simplex_count() const { return all_.size(); }
    std::size_t count_in_dim(int k) const;

    // Simplices of dimension k, sorted lexicographically.
    const std::vector<Simplex>& simplices(int k) const;

    SimplicialComplex skeleton(int k) const;

    long long euler_characteristic() const;

    static SimplicialComplex from_maximal(const std::vector<Simplex>& maximal, int vertex_count);

private:
    int vertex_count_ = 0;
    std::unordered_set<Simplex, SimplexHash> all_;
    mutable std::vector<std::vector<Simplex>> by_dim_;
    mutable bool dirty_ = false;
    void refresh() const;
};

// Boundary matrices over the two-element field, one per dimension.
// Columns are k-simplices, rows are (k-1)-simplices; entries are bit-packed.
class Z2ChainComplex {
public:
    explicit Z2ChainComplex(const SimplicialComplex& complex);

    int dim() const { return static_cast<int>(chain_dims_.size()) - 1; }
    int chain_dim(int k) const;
    int boundary_rank(int k) const;  // rank of d_k (0 for k <= 0 or k > dim)
    int betti(int k) const;

    // d_{k-1} . d_k = 0; exposed so tests can audit every construction.
    bool boundary_squares_to_zero() const;

private:
    std::vector<int> chain_dims_;
    std::vector<int> ranks_;  // ranks_[k] = rank of d_k
    struct Matrix {
        int rows = 0, cols = 0, words = 0;
        std::vector<std::uint64_t> data;  // column-major bit matrix
        std::uint64_t* col(int c) { return data.data() + static_cast<std::size_t>(c) * words; }
        const std::uint64_t* col(int c) const {
            return data.data() + static_cast<std::size_t>(c) * words;
        }
    };
    std::vector<Matrix> boundaries_;
    static int rank_of(Matrix m);
};

int betti_z2(const SimplicialComplex& complex, int k);

// Barycentric point in a host complex: nonnegative weights on the simplex
// vertices, summing to 1. A zero weight means the point lies on that face.
struct BarycentricPoint {
    Simplex simplex;
    std::vector<double> coords;

    // Euclidean distance between the standard geometric realizations
    // (vertex i of the host complex sits at the basis vector e_i).
    static double euclidean(const BarycentricPoint& a, const BarycentricPoint& b);

    void validate() const;  // throws on malformed weights
    // Drops zero coordinates; the support of the result is a face.
    BarycentricPoint pruned(double tol = 0.0) const;
};

}  // namespace codim1
