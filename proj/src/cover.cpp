#include "codim1/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "codim1/errors.hpp"
#include "internal/parallel.hpp"
#include "internal/rng.hpp"

namespace codim1 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Net greedy_net_impl(const FiniteMetricSpace& space, const std::vector<int>& points,
                    double sep) {
    if (!(sep > 0.0)) throw invalid_argument("net separation must be > 0");
    Net net;
    net.sep = sep;
    const int m = static_cast<int>(points.size());
    std::vector<double> mind(static_cast<std::size_t>(m), kInf);
    for (int a = 0; a < m; ++a) {
        if (mind[static_cast<std::size_t>(a)] < sep) continue;
        const int p = points[static_cast<std::size_t>(a)];
        net.centers.push_back(p);
        const std::vector<double> row = space.dists_from(p);
        for (int b = 0; b < m; ++b) {
            const double d = row[static_cast<std::size_t>(points[static_cast<std::size_t>(b)])];
            if (d < mind[static_cast<std::size_t>(b)]) mind[static_cast<std::size_t>(b)] = d;
        }
    }
    return net;
}

}  // namespace

Net greedy_net(const FiniteMetricSpace& space, double sep) {
    std::vector<int> all(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return greedy_net_impl(space, all, sep);
}

Net greedy_net_subset(const FiniteMetricSpace& space, const std::vector<int>& subset,
                      double sep) {
    if (subset.empty()) throw invalid_argument("net over an empty subset");
    return greedy_net_impl(space, subset, sep);
}

NetAudit audit_net_subset(const FiniteMetricSpace& space, const std::vector<int>& subset,
                          const Net& net) {
    NetAudit audit;
    audit.min_center_gap = kInf;
    for (std::size_t a = 0; a < net.centers.size(); ++a) {
        for (std::size_t b = a + 1; b < net.centers.size(); ++b) {
            audit.min_center_gap =
                std::min(audit.min_center_gap, space.dist(net.centers[a], net.centers[b]));
        }
    }
    if (net.centers.size() < 2) audit.min_center_gap = kInf;
    audit.separation_ok = audit.min_center_gap >= net.sep;

    std::vector<double> mind(subset.size(), kInf);
    for (int c : net.centers) {
        const std::vector<double> row = space.dists_from(c);
        for (std::size_t i = 0; i < subset.size(); ++i) {
            mind[i] = std::min(mind[i], row[static_cast<std::size_t>(subset[i])]);
        }
    }
    audit.max_point_gap = *std::max_element(mind.begin(), mind.end());
    audit.maximality_ok = audit.max_point_gap < net.sep;
    return audit;
}

NetAudit audit_net(const FiniteMetricSpace& space, const Net& net) {
    std::vector<int> all(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return audit_net_subset(space, all, net);
}

// Distance from every member of an element to the nearest sample outside it.
// Exact: candidates are taken from a ring around the element and the ring is
// grown until every found minimum is certified (any excluded point is
// provably farther).
static std::vector<double> dists_to_outside(const FiniteMetricSpace& space,
                                            const std::vector<int>& members,
                                            std::vector<char>& member_flag) {
    const int n = space.size();
    std::vector<double> result(members.size(), kInf);
    if (static_cast<int>(members.size()) == n) return result;  // element covers all

    const int pivot = members.front();
    const std::vector<double> from_pivot = space.dists_from(pivot);
    double r_elem = 0.0;
    for (int i : members) {
        r_elem = std::max(r_elem, from_pivot[static_cast<std::size_t>(i)]);
    }
    double g = std::max({r_elem, 4.0 * space.graph_scale(), 1e-12});
    for (int round = 0;; ++round) {
        std::vector<int> candidates;
        for (int i = 0; i < n; ++i) {
            if (!member_flag[static_cast<std::size_t>(i)] &&
                from_pivot[static_cast<std::size_t>(i)] <= r_elem + g) {
                candidates.push_back(i);
            }
        }
        bool certified = true;
        if (!candidates.empty()) {
            const std::vector<double> d_cand = space.dists_to_set(candidates, g);
            for (std::size_t a = 0; a < members.size(); ++a) {
                result[a] = d_cand[static_cast<std::size_t>(members[a])];
                if (!(result[a] <= g)) certified = false;
            }
        } else {
            certified = false;
        }
        if (certified || round >= 40) return result;
        g *= 2.0;
    }
}

double certify_lebesgue(const FiniteMetricSpace& space, const BallCover& cover) {
    // d*(x) = max over elements containing x of the distance from x to the
    // nearest sample outside that element; the certified number is min_x d*.
    const int n = space.size();
    const int ell = cover.element_count();
    std::vector<double> best(static_cast<std::size_t>(n), 0.0);
    std::vector<char> member(static_cast<std::size_t>(n), 0);
    for (int e = 0; e < ell; ++e) {
        const auto& members = cover.members[static_cast<std::size_t>(e)];
        for (int i : members) member[static_cast<std::size_t>(i)] = 1;
        const std::vector<double> d_out = dists_to_outside(space, members, member);
        for (std::size_t a = 0; a < members.size(); ++a) {
            auto& b = best[static_cast<std::size_t>(members[a])];
            b = std::max(b, d_out[a]);
        }
        for (int i : members) member[static_cast<std::size_t>(i)] = 0;
    }
    double lebesgue = kInf;
    for (int i = 0; i < n; ++i) {
        lebesgue = std::min(lebesgue, best[static_cast<std::size_t>(i)]);
    }
    return lebesgue;
}

namespace {

void finish_cover(const FiniteMetricSpace& space, BallCover& cover) {
    const int n = space.size();
    cover.memberships.assign(static_cast<std::size_t>(n), {});
    for (int e = 0; e < cover.element_count(); ++e) {
        auto& m = cover.members[static_cast<std::size_t>(e)];
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
        for (int i : m) cover.memberships[static_cast<std::size_t>(i)].push_back(e);
    }
    cover.multiplicity = 0;
    for (int i = 0; i < n; ++i) {
        cover.multiplicity = std::max(
            cover.multiplicity, static_cast<int>(cover.memberships[static_cast<std::size_t>(i)].size()));
        if (cover.memberships[static_cast<std::size_t>(i)].empty()) {
            std::ostringstream msg;
            msg << "cover audit failed: sample " << i << " lies in no element";
            throw domain_error(msg.str());
        }
    }
    // Exact element diameters on the sample.
    cover.max_diameter = 0.0;
    std::vector<double> diams(static_cast<std::size_t>(cover.element_count()), 0.0);
    detail::parallel_for(cover.element_count(), [&](int lo, int hi) {
        for (int e = lo; e < hi; ++e) {
            const auto& m = cover.members[static_cast<std::size_t>(e)];
            double d = 0.0;
            if (space.metric_model() == MetricModel::kAnalytic) {
                for (std::size_t a = 0; a < m.size(); ++a) {
                    for (std::size_t b = a + 1; b < m.size(); ++b) {
                        d = std::max(d, space.dist(m[a], m[b]));
                    }
                }
            } else {
                for (std::size_t a = 0; a < m.size(); ++a) {
                    const auto row = space.dists_from(m[a]);
                    for (std::size_t b = a + 1; b < m.size(); ++b) {
                        d = std::max(d, row[static_cast<std::size_t>(m[b])]);
                    }
                }
            }
            diams[static_cast<std::size_t>(e)] = d;
        }
    });
    cover.max_diameter = *std::max_element(diams.begin(), diams.end());
    cover.lebesgue_audited = certify_lebesgue(space, cover);
}

}  // namespace

BallCover build_cover(const FiniteMetricSpace& space, double epsilon) {
    if (!(epsilon > 0.0)) throw invalid_argument("cover scale must be > 0");
    if (space.size() > 1 && epsilon > space.diameter() * (1.0 + 1e-9)) {
        throw invalid_argument("cover scale exceeds the diameter estimate");
    }
    BallCover cover;
    cover.epsilon = epsilon;
    cover.radius = epsilon / 2.0;
    cover.net = greedy_net(space, epsilon / 4.0);
    cover.members.resize(cover.net.centers.size());
    for (std::size_t e = 0; e < cover.net.centers.size(); ++e) {
        const std::vector<double> row = space.dists_from(cover.net.centers[e]);
        for (int i = 0; i < space.size(); ++i) {
            if (row[static_cast<std::size_t>(i)] <= cover.radius) {
                cover.members[e].push_back(i);
            }
        }
    }
    finish_cover(space, cover);
    cover.lebesgue = epsilon / 4.0;
    cover.delta = cover.lebesgue;
    if (cover.lebesgue_audited < cover.lebesgue * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "cover audit failed: audited Lebesgue number " << cover.lebesgue_audited
            << " below " << cover.lebesgue;
        throw domain_error(msg.str());
    }
    if (cover.max_diameter > epsilon * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "cover audit failed: element diameter " << cover.max_diameter
            << " exceeds " << epsilon;
        throw domain_error(msg.str());
    }
    return cover;
}

BallCover cover_from_members(const FiniteMetricSpace& space,
                             std::vector<std::vector<int>> members, double epsilon_label) {
    BallCover cover;
    cover.epsilon = epsilon_label;
    cover.radius = epsilon_label / 2.0;
    cover.members = std::move(members);
    finish_cover(space, cover);
    cover.lebesgue = cover.lebesgue_audited;
    cover.delta = cover.lebesgue;
    return cover;
}

SimplicialComplex nerve_from_memberships(const std::vector<std::vector<int>>& per_sample,
                                         int element_count) {
    SimplicialComplex complex(element_count);
    for (const auto& tuple : per_sample) {
        if (tuple.empty()) continue;
        complex.insert_closed(tuple);
    }
    return complex;
}

SimplicialComplex nerve(const BallCover& cover) {
    return nerve_from_memberships(cover.memberships, cover.element_count());
}

int estimate_doubling(const FiniteMetricSpace& space, int trials, std::uint64_t seed) {
    if (space.size() == 0) throw invalid_argument("doubling estimate needs a nonempty space");
    if (trials < 1) throw invalid_argument("doubling estimate needs trials >= 1");
    if (space.size() == 1) return 1;
    Rng rng(seed);
    const double diam = space.diameter();
    int best = 1;
    for (int t = 0; t < trials; ++t) {
        const int center = rng.uniform_int(space.size());
        const double r = diam / static_cast<double>(1 << (1 + t % 5));
        const std::vector<double> from_center = space.dists_from(center);
        std::vector<int> ball;
        for (int i = 0; i < space.size(); ++i) {
            if (from_center[static_cast<std::size_t>(i)] <= r) ball.push_back(i);
        }
        // Farthest-point-first maximal r/2-separated subset of the ball.
        std::vector<double> mind(ball.size(), kInf);
        int chosen = center;
        int count = 0;
        while (true) {
            ++count;
            const std::vector<double> row = space.dists_from(chosen);
            int arg = -1;
            double far = -1.0;
            for (std::size_t i = 0; i < ball.size(); ++i) {
                mind[i] = std::min(mind[i], row[static_cast<std::size_t>(ball[i])]);
                if (mind[i] > far) {
                    far = mind[i];
                    arg = static_cast<int>(i);
                }
            }
            if (far < r / 2.0 || arg < 0) break;
            chosen = ball[static_cast<std::size_t>(arg)];
        }
        best = std::max(best, count);
    }
    return best;
}

int separation_witness(const FiniteMetricSpace& space, const SampleSet& set, double scale) {
    if (!(scale > 0.0)) throw invalid_argument("witness scale must be > 0");
    if (set.indices.empty()) return 0;  // an empty set never separates
    const Net net = greedy_net_subset(space, set.indices, scale / 4.0);
    std::vector<std::vector<int>> memberships(set.indices.size());
    for (std::size_t e = 0; e < net.centers.size(); ++e) {
        const std::vector<double> row = space.dists_from(net.centers[e]);
        for (std::size_t i = 0; i < set.indices.size(); ++i) {
            if (row[static_cast<std::size_t>(set.indices[i])] <= scale / 2.0) {
                memberships[i].push_back(static_cast<int>(e));
            }
        }
    }
    const SimplicialComplex nerve_complex =
        nerve_from_memberships(memberships, static_cast<int>(net.centers.size()));
    return betti_z2(nerve_complex, space.manifold_dim() - 1);
}

}  // namespace codim1
