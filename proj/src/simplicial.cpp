#include "codim1/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "codim1/errors.hpp"

namespace codim1 {

void SimplicialComplex::set_vertex_count(int n) {
    if (n < vertex_count_) throw invalid_argument("cannot shrink vertex count");
    vertex_count_ = n;
}

void SimplicialComplex::insert_closed(Simplex s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) return;
    for (int v : s) {
        if (v < 0) throw invalid_argument("negative vertex index");
        if (v >= vertex_count_) vertex_count_ = v + 1;
    }
    // Insert every nonempty subset. Tuples here are small (dim <= multiplicity).
    const int m = static_cast<int>(s.size());
    if (m > 25) throw invalid_argument("simplex tuple too large");
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        Simplex face;
        face.reserve(static_cast<std::size_t>(__builtin_popcount(mask)));
        for (int i = 0; i < m; ++i) {
            if (mask & (1u << i)) face.push_back(s[static_cast<std::size_t>(i)]);
        }
        if (all_.insert(std::move(face)).second) dirty_ = true;
    }
}

bool SimplicialComplex::contains(const Simplex& s) const { return all_.count(s) > 0; }

void SimplicialComplex::refresh() const {
    if (!dirty_ && !by_dim_.empty()) return;
    by_dim_.clear();
    for (const auto& s : all_) {
        const std::size_t d = s.size() - 1;
        if (by_dim_.size() <= d) by_dim_.resize(d + 1);
        by_dim_[d].push_back(s);
    }
    for (auto& level : by_dim_) std::sort(level.begin(), level.end());
    dirty_ = false;
}

int SimplicialComplex::dim() const {
    refresh();
    return static_cast<int>(by_dim_.size()) - 1;
}

std::size_t SimplicialComplex::count_in_dim(int k) const {
    refresh();
    if (k < 0 || k >= static_cast<int>(by_dim_.size())) return 0;
    return by_dim_[static_cast<std::size_t>(k)].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
    static const std::vector<Simplex> kEmpty;
    refresh();
    if (k < 0 || k >= static_cast<int>(by_dim_.size())) return kEmpty;
    return by_dim_[static_cast<std::size_t>(k)];
}

SimplicialComplex SimplicialComplex::skeleton(int k) const {
    if (k < 0) throw invalid_argument("skeleton dimension must be >= 0");
    SimplicialComplex out(vertex_count_);
    for (const auto& s : all_) {
        if (static_cast<int>(s.size()) - 1 <= k) {
            out.all_.insert(s);
        }
    }
    out.dirty_ = true;
    return out;
}

long long SimplicialComplex::euler_characteristic() const {
    refresh();
    long long chi = 0;
    for (std::size_t d = 0; d < by_dim_.size(); ++d) {
        const long long n = static_cast<long long>(by_dim_[d].size());
        chi += (d % 2 == 0) ? n : -n;
    }
    return chi;
}

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<Simplex>& maximal,
                                                  int vertex_count) {
    SimplicialComplex out(vertex_count);
    for (const auto& s : maximal) out.insert_closed(s);
    return out;
}

// ---------------------------------------------------------------------------

Z2ChainComplex::Z2ChainComplex(const SimplicialComplex& complex) {
    const int dim = complex.dim();
    chain_dims_.resize(static_cast<std::size_t>(std::max(dim, 0)) + 1, 0);
    ranks_.resize(chain_dims_.size(), 0);
    boundaries_.resize(chain_dims_.size());
    if (dim < 0) return;

    for (int k = 0; k <= dim; ++k) {
        chain_dims_[static_cast<std::size_t>(k)] =
            static_cast<int>(complex.count_in_dim(k));
    }

    for (int k = 1; k <= dim; ++k) {
        const auto& rows_s = complex.simplices(k - 1);
        const auto& cols_s = complex.simplices(k);
        std::unordered_map<Simplex, int, SimplexHash> row_index;
        row_index.reserve(rows_s.size());
        for (std::size_t i = 0; i < rows_s.size(); ++i) {
            row_index.emplace(rows_s[i], static_cast<int>(i));
        }

        Matrix m;
        m.rows = static_cast<int>(rows_s.size());
        m.cols = static_cast<int>(cols_s.size());
        m.words = (m.rows + 63) / 64;
        m.data.assign(static_cast<std::size_t>(m.cols) * m.words, 0);
        for (int c = 0; c < m.cols; ++c) {
            const Simplex& s = cols_s[static_cast<std::size_t>(c)];
            Simplex facet(s.size() - 1);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::size_t w = 0;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (i != drop) facet[w++] = s[i];
                }
                const auto it = row_index.find(facet);
                if (it == row_index.end()) {
                    throw internal_error("complex is not downward closed");
                }
                m.col(c)[it->second / 64] ^= (1ull << (it->second % 64));
            }
        }
        ranks_[static_cast<std::size_t>(k)] = rank_of(m);
        boundaries_[static_cast<std::size_t>(k)] = std::move(m);
    }
}

int Z2ChainComplex::rank_of(Matrix m) {
    // Plain elimination with pivoting by lowest row index.
    int rank = 0;
    std::vector<int> pivot_row;
    std::vector<int> pivot_col;
    for (int c = 0; c < m.cols; ++c) {
        std::uint64_t* col = m.col(c);
        // Reduce against existing pivots.
        bool changed = true;
        while (changed) {
            changed = false;
            int low = -1;
            for (int w = m.words - 1; w >= 0; --w) {
                if (col[w]) {
                    low = w * 64 + 63 - __builtin_clzll(col[w]);
                    break;
                }
            }
            if (low < 0) break;
            for (std::size_t p = 0; p < pivot_row.size(); ++p) {
                if (pivot_row[p] == low) {
                    const std::uint64_t* pc = m.col(pivot_col[p]);
                    for (int w = 0; w < m.words; ++w) col[w] ^= pc[w];
                    changed = true;
                    break;
                }
            }
        }
        int low = -1;
        for (int w = m.words - 1; w >= 0; --w) {
            if (col[w]) {
                low = w * 64 + 63 - __builtin_clzll(col[w]);
                break;
            }
        }
        if (low >= 0) {
            pivot_row.push_back(low);
            pivot_col.push_back(c);
            ++rank;
        }
    }
    return rank;
}

int Z2ChainComplex::chain_dim(int k) const {
    if (k < 0 || k >= static_cast<int>(chain_dims_.size())) return 0;
    return chain_dims_[static_cast<std::size_t>(k)];
}

int Z2ChainComplex::boundary_rank(int k) const {
    if (k <= 0 || k >= static_cast<int>(ranks_.size())) return 0;
    return ranks_[static_cast<std::size_t>(k)];
}

int Z2ChainComplex::betti(int k) const {
    if (k < 0) return 0;
    return chain_dim(k) - boundary_rank(k) - boundary_rank(k + 1);
}

bool Z2ChainComplex::boundary_squares_to_zero() const {
    for (int k = 2; k < static_cast<int>(boundaries_.size()); ++k) {
        const Matrix& dk = boundaries_[static_cast<std::size_t>(k)];
        const Matrix& dk1 = boundaries_[static_cast<std::size_t>(k - 1)];
        // (d_{k-1} d_k) column c = sum of d_{k-1} columns where d_k has a bit.
        std::vector<std::uint64_t> acc(static_cast<std::size_t>(dk1.words));
        for (int c = 0; c < dk.cols; ++c) {
            std::fill(acc.begin(), acc.end(), 0);
            const std::uint64_t* col = dk.col(c);
            for (int r = 0; r < dk.rows; ++r) {
                if (col[r / 64] & (1ull << (r % 64))) {
                    const std::uint64_t* src = dk1.col(r);
                    for (int w = 0; w < dk1.words; ++w) acc[static_cast<std::size_t>(w)] ^= src[w];
                }
            }
            for (const std::uint64_t w : acc) {
                if (w) return false;
            }
        }
    }
    return true;
}

int betti_z2(const SimplicialComplex& complex, int k) {
    if (complex.simplex_count() == 0) return 0;
    return Z2ChainComplex(complex).betti(k);
}

// ---------------------------------------------------------------------------

double BarycentricPoint::euclidean(const BarycentricPoint& a, const BarycentricPoint& b) {
    double sq = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.simplex.size() || j < b.simplex.size()) {
        if (j >= b.simplex.size() || (i < a.simplex.size() && a.simplex[i] < b.simplex[j])) {
            sq += a.coords[i] * a.coords[i];
            ++i;
        } else if (i >= a.simplex.size() || b.simplex[j] < a.simplex[i]) {
            sq += b.coords[j] * b.coords[j];
            ++j;
        } else {
            const double d = a.coords[i] - b.coords[j];
            sq += d * d;
            ++i;
            ++j;
        }
    }
    return std::sqrt(sq);
}

void BarycentricPoint::validate() const {
    if (simplex.size() != coords.size() || simplex.empty()) {
        throw invalid_argument("barycentric point: support/coords mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < 0.0) throw invalid_argument("barycentric coordinate < 0");
        if (i > 0 && simplex[i] <= simplex[i - 1]) {
            throw invalid_argument("barycentric support not sorted");
        }
        sum += coords[i];
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "barycentric coordinates sum to %.17g", sum);
        throw invalid_argument(buf);
    }
}

BarycentricPoint BarycentricPoint::pruned(double tol) const {
    BarycentricPoint out;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] > tol) {
            out.simplex.push_back(simplex[i]);
            out.coords.push_back(coords[i]);
        }
    }
    if (out.simplex.empty()) {
        // Keep the largest coordinate if everything was at the tolerance.
        std::size_t best = 0;
        for (std::size_t i = 1; i < coords.size(); ++i) {
            if (coords[i] > coords[best]) best = i;
        }
        out.simplex.push_back(simplex[best]);
        out.coords.push_back(1.0);
    }
    return out;
}

}  // namespace codim1
