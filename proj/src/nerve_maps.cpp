#include "codim1/nerve_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "codim1/errors.hpp"
#include "internal/parallel.hpp"
#include "internal/rng.hpp"

namespace codim1 {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double PartitionOfUnity::value(int sample, int element) const {
    for (const auto& [e, v] : values[static_cast<std::size_t>(sample)]) {
        if (e == element) return v;
    }
    return 0.0;
}

double PartitionOfUnity::sum(int sample) const {
    double s = 0.0;
    for (const auto& [e, v] : values[static_cast<std::size_t>(sample)]) s += v;
    return s;
}

PartitionOfUnity partition_of_unity(const FiniteMetricSpace& space, const BallCover& cover) {
    const double delta = cover.delta;
    if (!(delta > 0.0)) throw invalid_argument("partition of unity needs delta > 0");
    if (delta > cover.lebesgue_audited * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "delta " << delta << " exceeds the certified Lebesgue number "
            << cover.lebesgue_audited;
        throw invalid_argument(msg.str());
    }

    const int n = space.size();
    const int ell = cover.element_count();
    // phi values per element, computed independently. dist(x, M \ U_i) is only
    // needed where it is < delta (phi saturates at 1 beyond), so candidates
    // outside the element are taken from a ring of width delta around it.
    std::vector<std::vector<std::pair<int, double>>> phi_per_element(
        static_cast<std::size_t>(ell));
    std::vector<char> member_flag;  // reused by sequential fallback only

    detail::parallel_for(ell, [&](int lo, int hi) {
        std::vector<char> member(static_cast<std::size_t>(n), 0);
        for (int e = lo; e < hi; ++e) {
            const auto& members = cover.members[static_cast<std::size_t>(e)];
            for (int i : members) member[static_cast<std::size_t>(i)] = 1;
            const int pivot = members.front();
            const std::vector<double> from_pivot = space.dists_from(pivot);
            double r_elem = 0.0;
            for (int i : members) {
                r_elem = std::max(r_elem, from_pivot[static_cast<std::size_t>(i)]);
            }
            std::vector<int> ring;
            for (int i = 0; i < n; ++i) {
                if (!member[static_cast<std::size_t>(i)] &&
                    from_pivot[static_cast<std::size_t>(i)] <= r_elem + delta) {
                    ring.push_back(i);
                }
            }
            std::vector<double> d_out(members.size(), kInf);
            if (!ring.empty()) {
                const std::vector<double> d_ring = space.dists_to_set(ring, delta);
                for (std::size_t a = 0; a < members.size(); ++a) {
                    d_out[a] = d_ring[static_cast<std::size_t>(members[a])];
                }
            }
            auto& out = phi_per_element[static_cast<std::size_t>(e)];
            for (std::size_t a = 0; a < members.size(); ++a) {
                const double d = std::min(d_out[a], delta);  // saturation range
                const double phi = std::min(1.0, (2.0 / delta) * std::max(0.0, d - delta / 2.0));
                if (phi > 0.0) out.emplace_back(members[a], phi);
            }
            for (int i : members) member[static_cast<std::size_t>(i)] = 0;
        }
    });

    // Assemble per-sample rows and normalize.
    PartitionOfUnity pou;
    pou.delta = delta;
    pou.lip_bound = (2.0 * cover.multiplicity + 1.0) / delta;
    pou.values.assign(static_cast<std::size_t>(n), {});
    for (int e = 0; e < ell; ++e) {
        for (const auto& [i, phi] : phi_per_element[static_cast<std::size_t>(e)]) {
            pou.values[static_cast<std::size_t>(i)].emplace_back(e, phi);
        }
    }
    for (int i = 0; i < n; ++i) {
        auto& row = pou.values[static_cast<std::size_t>(i)];
        std::sort(row.begin(), row.end());
        double total = 0.0;
        for (const auto& [e, phi] : row) total += phi;
        if (total < 0.5) {
            std::ostringstream msg;
            msg << "partition of unity broke down at sample " << i << ": sum phi = " << total;
            throw internal_error(msg.str());
        }
        for (auto& [e, phi] : row) phi /= total;
    }
    return pou;
}

LipschitzAudit audit_pou_lipschitz(const FiniteMetricSpace& space,
                                   const PartitionOfUnity& pou, int pairs,
                                   std::uint64_t seed) {
    LipschitzAudit audit;
    audit.bound = pou.lip_bound;
    audit.pairs = pairs;
    Rng rng(seed);
    const int n = space.size();
    if (n < 2) return audit;
    for (int t = 0; t < pairs; ++t) {
        const int x = rng.uniform_int(n);
        int y = rng.uniform_int(n);
        if (x == y) continue;
        const double d = space.dist(x, y);
        if (!(d > 0.0)) continue;
        // Only elements active at x or y can contribute.
        const auto& rx = pou.values[static_cast<std::size_t>(x)];
        const auto& ry = pou.values[static_cast<std::size_t>(y)];
        std::size_t a = 0, b = 0;
        while (a < rx.size() || b < ry.size()) {
            double fx = 0.0, fy = 0.0;
            if (b >= ry.size() || (a < rx.size() && rx[a].first < ry[b].first)) {
                fx = rx[a].second;
                ++a;
            } else if (a >= rx.size() || ry[b].first < rx[a].first) {
                fy = ry[b].second;
                ++b;
            } else {
                fx = rx[a].second;
                fy = ry[b].second;
                ++a;
                ++b;
            }
            audit.max_component_ratio =
                std::max(audit.max_component_ratio, std::fabs(fx - fy) / d);
        }
    }
    return audit;
}

NerveMap map_f(const FiniteMetricSpace& space, const PartitionOfUnity& pou,
               const SimplicialComplex& nerve_complex, int lip_pairs,
               std::uint64_t lip_seed) {
    NerveMap map;
    const int n = space.size();
    map.images.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        BarycentricPoint& p = map.images[static_cast<std::size_t>(i)];
        for (const auto& [e, v] : pou.values[static_cast<std::size_t>(i)]) {
            p.simplex.push_back(e);
            p.coords.push_back(v);
        }
        if (!nerve_complex.contains(p.simplex)) {
            std::ostringstream msg;
            msg << "image support of sample " << i
                << " is not a simplex of the nerve (cover/nerve mismatch)";
            throw internal_error(msg.str());
        }
    }

    // Sampled Lipschitz constant of f.
    Rng rng(lip_seed);
    for (int t = 0; t < lip_pairs && n >= 2; ++t) {
        const int x = rng.uniform_int(n);
        const int y = rng.uniform_int(n);
        if (x == y) continue;
        const double d = space.dist(x, y);
        if (!(d > 0.0)) continue;
        const auto& px = map.images[static_cast<std::size_t>(x)];
        const auto& py = map.images[static_cast<std::size_t>(y)];
        map.lip_estimate_euclidean =
            std::max(map.lip_estimate_euclidean, BarycentricPoint::euclidean(px, py) / d);
        map.lip_estimate =
            std::max(map.lip_estimate, nerve_point_distance(nerve_complex, px, py) / d);
    }
    const double two_n = 2.0 * std::max(1, static_cast<int>(nerve_complex.dim()) + 1);
    map.lip_bound = std::sqrt(two_n) * pou.lip_bound;
    return map;
}

double nerve_point_distance(const SimplicialComplex& complex, const BarycentricPoint& a,
                            const BarycentricPoint& b) {
    // Union support inside one simplex: the intrinsic and Euclidean metrics
    // agree there.
    Simplex joint = a.simplex;
    joint.insert(joint.end(), b.simplex.begin(), b.simplex.end());
    std::sort(joint.begin(), joint.end());
    joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
    if (complex.contains(joint)) return BarycentricPoint::euclidean(a, b);

    // Otherwise hop along the 1-skeleton: unit-simplex edges have length
    // sqrt(2). BFS is enough since all edges share that length.
    const auto& edges = complex.simplices(1);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(complex.vertex_count()));
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
        adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    std::vector<int> hops(static_cast<std::size_t>(complex.vertex_count()), -1);
    std::queue<int> queue;
    for (int v : a.simplex) {
        hops[static_cast<std::size_t>(v)] = 0;
        queue.push(v);
    }
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (hops[static_cast<std::size_t>(v)] == -1) {
                hops[static_cast<std::size_t>(v)] = hops[static_cast<std::size_t>(u)] + 1;
                queue.push(v);
            }
        }
    }
    double best = kInf;
    for (std::size_t j = 0; j < b.simplex.size(); ++j) {
        const int v = b.simplex[j];
        if (hops[static_cast<std::size_t>(v)] < 0) continue;
        // Enter the skeleton at the nearest vertex of a's simplex, walk, then
        // approach b from vertex v.
        double enter = kInf;
        for (std::size_t i = 0; i < a.simplex.size(); ++i) {
            BarycentricPoint va{{a.simplex[i]}, {1.0}};
            enter = std::min(enter, BarycentricPoint::euclidean(a, va));
        }
        BarycentricPoint vb{{v}, {1.0}};
        best = std::min(best, enter + M_SQRT2 * hops[static_cast<std::size_t>(v)] +
                                  BarycentricPoint::euclidean(vb, b));
    }
    return best;
}

double GluedMap::diam_bound(int k, double L, double epsilon) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= 2.0 * L;
    return f * p * epsilon;
}

GluedMap build_g(const SimplicialComplex& nerve_complex, const BallCover& cover,
                 const FiniteMetricSpace& space, double L, int max_dim) {
    if (!(L >= 1.0)) throw invalid_argument("contractibility constant must be >= 1");
    GluedMap g;
    g.epsilon = cover.epsilon;
    g.L = L;
    const int dim = nerve_complex.dim();
    g.built_dim = max_dim < 0 ? dim : std::min(max_dim, dim);

    // Vertices: the net centers themselves.
    g.vertex_images.resize(static_cast<std::size_t>(nerve_complex.vertex_count()));
    for (const auto& v : nerve_complex.simplices(0)) {
        g.vertex_images[static_cast<std::size_t>(v[0])] = cover.net.centers[static_cast<std::size_t>(v[0])];
        g.cell_images[v] = {cover.net.centers[static_cast<std::size_t>(v[0])]};
        g.diam_table[v] = 0.0;
    }

    auto set_diam = [&](const std::vector<int>& pts) {
        double d = 0.0;
        if (space.metric_model() == MetricModel::kAnalytic) {
            for (std::size_t a = 0; a < pts.size(); ++a) {
                for (std::size_t b = a + 1; b < pts.size(); ++b) {
                    d = std::max(d, space.dist(pts[a], pts[b]));
                }
            }
        } else {
            for (std::size_t a = 0; a < pts.size(); ++a) {
                const auto row = space.dists_from(pts[a]);
                for (std::size_t b = a + 1; b < pts.size(); ++b) {
                    d = std::max(d, row[static_cast<std::size_t>(pts[b])]);
                }
            }
        }
        return d;
    };

    // Edges: shortest-path chains between endpoint centers.
    for (const auto& e : nerve_complex.simplices(1)) {
        if (g.built_dim < 1) break;
        const int xi = g.vertex_images[static_cast<std::size_t>(e[0])];
        const int xj = g.vertex_images[static_cast<std::size_t>(e[1])];
        std::vector<int> path = space.graph_path(xi, xj);
        g.diam_table[e] = set_diam(path);
        g.cell_images[e] = std::move(path);
    }

    // Higher cells: discrete coning of the boundary image toward the image of
    // the lexicographically smallest boundary vertex, along shortest-path
    // trees in the neighborhood graph.
    for (int k = 2; k <= g.built_dim; ++k) {
        for (const auto& s : nerve_complex.simplices(k)) {
            std::vector<int> boundary;
            Simplex facet(s.size() - 1);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::size_t w = 0;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (i != drop) facet[w++] = s[i];
                }
                const auto it = g.cell_images.find(facet);
                if (it == g.cell_images.end()) {
                    throw internal_error("missing facet image while coning");
                }
                boundary.insert(boundary.end(), it->second.begin(), it->second.end());
            }
            std::sort(boundary.begin(), boundary.end());
            boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());

            const int base = g.vertex_images[static_cast<std::size_t>(s[0])];
            std::vector<int> parents;
            space.graph_dists_from(base, &parents);
            std::vector<char> in_image(static_cast<std::size_t>(space.size()), 0);
            std::vector<int> image;
            auto add = [&](int p) {
                if (!in_image[static_cast<std::size_t>(p)]) {
                    in_image[static_cast<std::size_t>(p)] = 1;
                    image.push_back(p);
                }
            };
            for (int p : boundary) {
                for (int v = p; v != -1; v = parents[static_cast<std::size_t>(v)]) {
                    if (in_image[static_cast<std::size_t>(v)]) break;
                    add(v);
                }
            }
            add(base);
            std::sort(image.begin(), image.end());
            g.diam_table[s] = set_diam(image);
            g.cell_images[s] = std::move(image);
        }
    }

    for (const auto& [s, d] : g.diam_table) {
        const int k = static_cast<int>(s.size()) - 1;
        if (d > GluedMap::diam_bound(k, L, cover.epsilon) * (1.0 + 1e-9)) {
            g.flagged.push_back(s);
        }
    }
    return g;
}

}  // namespace codim1
