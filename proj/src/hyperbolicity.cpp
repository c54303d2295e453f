#include "cuspedkit/hyperbolicity.hpp"

#include "cuspedkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace cuspedkit {

std::string format_half(std::uint64_t twice) {
    std::string s = std::to_string(twice / 2);
    if (twice % 2) s += ".5";
    return s;
}

namespace {

struct ScanResult {
    std::int32_t best = -1;
    std::array<std::uint32_t, 4> quad{};

    void offer(std::int32_t value, const std::array<std::uint32_t, 4>& q) {
        if (value > best || (value == best && q < quad)) {
            best = value;
            quad = q;
        }
    }
};

// Quartic scan over x in {first, first + stride, ...}; x < y < z < w.
template <class T>
ScanResult scan_quadruples(const std::vector<T>& d, std::size_t k, std::size_t first, std::size_t stride) {
    ScanResult res;
    for (std::size_t x = first; x < k; x += stride) {
        const T* rx = &d[x * k];
        for (std::size_t y = x + 1; y < k; ++y) {
            const T* ry = &d[y * k];
            const T dxy = rx[y];
            for (std::size_t z = y + 1; z + 1 < k; ++z) {
                const T* rz = &d[z * k];
                const T dxz = rx[z];
                const T dyz = ry[z];
                T local = 0;
                for (std::size_t w = z + 1; w < k; ++w) {
                    const T s1 = static_cast<T>(dxy + rz[w]);
                    const T s2 = static_cast<T>(dxz + ry[w]);
                    const T s3 = static_cast<T>(dyz + rx[w]);
                    const T hi = std::max(s1, std::max(s2, s3));
                    const T lo = std::min(s1, std::min(s2, s3));
                    // largest minus middle
                    const T val = static_cast<T>(hi + hi + lo - s1 - s2 - s3);
                    local = std::max(local, val);
                }
                if (static_cast<std::int32_t>(local) > res.best) {
                    for (std::size_t w = z + 1; w < k; ++w) {
                        const T s1 = static_cast<T>(dxy + rz[w]);
                        const T s2 = static_cast<T>(dxz + ry[w]);
                        const T s3 = static_cast<T>(dyz + rx[w]);
                        const T hi = std::max(s1, std::max(s2, s3));
                        const T lo = std::min(s1, std::min(s2, s3));
                        const T val = static_cast<T>(hi + hi + lo - s1 - s2 - s3);
                        if (val == local) {
                            res.offer(val, {static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
                                            static_cast<std::uint32_t>(z), static_cast<std::uint32_t>(w)});
                            break;
                        }
                    }
                }
            }
        }
    }
    return res;
}

template <class T>
ScanResult scan_parallel(const std::vector<T>& d, std::size_t k, unsigned jobs) {
    if (jobs <= 1 || k < 64) return scan_quadruples(d, k, 0, 1);
    std::vector<ScanResult> parts(jobs);
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j)
        workers.emplace_back([&, j] { parts[j] = scan_quadruples(d, k, j, jobs); });
    for (auto& t : workers) t.join();
    ScanResult res;
    for (const auto& p : parts)
        if (p.best >= 0) res.offer(p.best, p.quad);
    return res;
}

}  // namespace

DeltaReport four_point_delta(const Graph& g, unsigned jobs) {
    DeltaReport report;
    const DistanceMatrix dm(g);
    bool have_witness = false;
    for (const VertexSet& comp : connected_components(g)) {
        const std::size_t k = comp.size();
        std::vector<std::size_t> idx(k);
        std::uint32_t diam = 0;
        for (std::size_t i = 0; i < k; ++i) idx[i] = g.require_index(comp[i]);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) diam = std::max(diam, dm.at(idx[i], idx[j]).hops());

        ScanResult res;
        if (k >= 4) {
            if (diam < 8000) {
                std::vector<std::int16_t> d(k * k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        d[i * k + j] = static_cast<std::int16_t>(dm.at(idx[i], idx[j]).hops());
                res = scan_parallel(d, k, jobs);
            } else {
                std::vector<std::int32_t> d(k * k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        d[i * k + j] = static_cast<std::int32_t>(dm.at(idx[i], idx[j]).hops());
                res = scan_parallel(d, k, jobs);
            }
        } else {
            res.best = 0;
            res.quad = {0, 0, 0, 0};
        }

        const auto twice = static_cast<std::uint32_t>(res.best);
        report.per_component.push_back({comp, twice});
        if (!have_witness || twice > report.twice_delta) {
            report.twice_delta = twice;
            report.witness = std::array<VertexId, 4>{comp[res.quad[0]], comp[res.quad[1]], comp[res.quad[2]],
                                                     comp[res.quad[3]]};
            have_witness = true;
        }
    }
    return report;
}

std::uint32_t four_point_value(const DistanceMatrix& d, const std::array<VertexId, 4>& q) {
    auto h = [&](VertexId a, VertexId b) {
        const Distance x = d.between(a, b);
        if (!x.is_finite()) throw InvalidInput("four_point_value: quadruple spans two components");
        return static_cast<std::int64_t>(x.hops());
    };
    std::array<std::int64_t, 3> s{h(q[0], q[1]) + h(q[2], q[3]), h(q[0], q[2]) + h(q[1], q[3]),
                                   h(q[0], q[3]) + h(q[1], q[2])};
    std::sort(s.begin(), s.end());
    return static_cast<std::uint32_t>(s[2] - s[1]);
}

namespace {

struct PairMetrics {
    std::vector<VertexId> ids;
    std::vector<std::int32_t> amb;  // ids.size()^2, -1 = unreachable
    std::vector<std::int32_t> sub;
};

PairMetrics pair_metrics(const Graph& amb, const Graph& sub) {
    PairMetrics m;
    m.ids.assign(sub.vertices().begin(), sub.vertices().end());
    const std::size_t k = m.ids.size();
    m.amb.assign(k * k, -1);
    m.sub.assign(k * k, -1);
    std::vector<std::size_t> amb_idx(k);
    for (std::size_t i = 0; i < k; ++i) amb_idx[i] = amb.require_index(m.ids[i]);
    std::vector<std::int32_t> dist;
    std::vector<std::uint32_t> queue;
    for (std::size_t i = 0; i < k; ++i) {
        bfs_indices(amb, amb_idx[i], dist, queue);
        for (std::size_t j = 0; j < k; ++j) m.amb[i * k + j] = dist[amb_idx[j]];
        bfs_indices(sub, i, dist, queue);
        for (std::size_t j = 0; j < k; ++j) m.sub[i * k + j] = dist[j];
    }
    return m;
}

}  // namespace

DistortionReport distortion(const Graph& amb, const Graph& sub, double cap) {
    if (sub.order() == 0) throw InvalidInput("distortion: empty subgraph");
    const PairMetrics m = pair_metrics(amb, sub);
    const std::size_t k = m.ids.size();
    DistortionReport rep;
    std::uint64_t twice = 2;  // K >= 1
    bool infinite = false;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const std::int32_t da = m.amb[i * k + j];
            const std::int32_t ds = m.sub[i * k + j];
            const auto pair = std::make_pair(m.ids[i], m.ids[j]);
            if (da >= 0 && ds >= 0 && da > ds && rep.lower_ok) {
                rep.lower_ok = false;
                rep.lower_witness = pair;
            }
            if (da < 0) continue;
            if (ds < 0) {
                if (!infinite) rep.witness = pair;
                infinite = true;
                continue;
            }
            // smallest half-integer K with ds <= K (da + 1)
            const std::uint64_t need = (2 * static_cast<std::uint64_t>(ds) + da) / (static_cast<std::uint64_t>(da) + 1);
            if (!infinite && need > twice) {
                twice = need;
                rep.witness = pair;
            }
        }
    }
    if (!infinite && static_cast<double>(twice) <= 2.0 * cap) rep.twice_mult = static_cast<std::uint32_t>(twice);
    return rep;
}

DistortionReport distortion(const Graph& amb, const VertexSet& sub_vertices, double cap) {
    if (sub_vertices.empty()) throw InvalidInput("distortion: empty vertex set");
    return distortion(amb, induced(amb, sub_vertices), cap);
}

EmbeddingCheck verify_coarse_embedding(const Graph& domain, const Graph& codomain,
                                       const std::unordered_map<VertexId, VertexId>& f,
                                       const std::function<double(double)>& lower,
                                       const std::function<double(double)>& upper) {
    constexpr double kSlack = 1e-9;
    const std::size_t n = domain.order();
    std::vector<std::size_t> image(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = f.find(domain.id_at(i));
        if (it == f.end()) throw InvalidInput("coarse embedding map is not total on the domain");
        auto ci = codomain.index_of(it->second);
        if (!ci) throw InvalidInput("coarse embedding map leaves the codomain at vertex " + std::to_string(it->first));
        image[i] = *ci;
    }
    std::vector<std::int32_t> dd, dc;
    std::vector<std::uint32_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        bfs_indices(domain, i, dd, queue);
        bfs_indices(codomain, image[i], dc, queue);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dd[j] < 0) continue;
            const double t = dd[j];
            const std::int32_t c = dc[image[j]];
            const bool ok = c >= 0 && lower(t) <= c + kSlack && c <= upper(t) + kSlack;
            if (!ok) return {false, std::make_pair(domain.id_at(i), domain.id_at(j))};
        }
    }
    return {};
}

}  // namespace cuspedkit
