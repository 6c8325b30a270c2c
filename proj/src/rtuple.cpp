#include "rbr/rtuple.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "rbr/errors.hpp"
#include "rbr/parallel.hpp"

namespace rbr {

namespace {

void check_rumor_seeds(const Graph& g, const std::vector<NodeId>& rumor) {
    if (rumor.empty()) throw std::invalid_argument("rumor seed set must not be empty");
    for (NodeId u : rumor)
        if (u < 0 || u >= g.node_count())
            throw std::invalid_argument("rumor seed out of range: " + std::to_string(u));
}

// Workspace for repeated reverse probes over one graph / seed set.
struct Prober {
    const Graph& g;
    std::vector<std::uint8_t> is_rumor;
    std::vector<std::int32_t> committed, queued;
    std::vector<NodeId> level, next;
    std::int32_t cur = 0;
    TupleOptions opts;

    Prober(const Graph& g, const std::vector<NodeId>& rumor, const TupleOptions& opts)
        : g(g), is_rumor(g.node_count(), 0), committed(g.node_count(), -1),
          queued(g.node_count(), -1), opts(opts) {
        for (NodeId u : rumor) is_rumor[u] = 1;
    }

    // live(edge_id, p) supplies the coin for an edge; each edge is consulted
    // at most once per probe.
    template <class Live>
    RTuple probe(NodeId root, Live&& live, std::uint64_t* tested) {
        RTuple t;
        t.root = root;
        ++cur;
        level.assign(1, root);
        while (!level.empty()) {
            for (NodeId u : level) {
                if (is_rumor[u]) {
                    t.hit_rumor = true;
                    std::sort(t.nodes.begin(), t.nodes.end());
                    return t;
                }
            }
            for (NodeId u : level) {
                committed[u] = cur;
                t.nodes.push_back(u);
            }
            next.clear();
            for (NodeId u : level) {
                for (const Graph::Arc& a : g.in_arcs(u)) {
                    if (committed[a.node] == cur) continue;
                    if (tested) ++*tested;
                    if (live(a.edge, a.p)) {
                        if (opts.record_edges) t.live_edges.push_back(a.edge);
                        if (queued[a.node] != cur) {
                            queued[a.node] = cur;
                            next.push_back(a.node);
                        }
                    } else {
                        if (opts.record_edges) t.blocked_edges.push_back(a.edge);
                    }
                }
            }
            level.swap(next);
        }
        std::sort(t.nodes.begin(), t.nodes.end());
        return t;
    }

    RTuple sample(NodeId root, Rng& rng, std::uint64_t* tested) {
        return probe(root, [&](EdgeId, double p) { return rng.unit() < p; }, tested);
    }
};

void put_varint(std::string& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

std::uint64_t get_varint(const std::string& buf, std::size_t& pos) {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
        if (pos >= buf.size()) throw DataError("sample set file truncated");
        std::uint8_t b = static_cast<std::uint8_t>(buf[pos++]);
        v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
        if (shift > 63) throw DataError("sample set file corrupt: varint overflow");
    }
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& buf, std::size_t& pos) {
    if (pos + 4 > buf.size()) throw DataError("sample set file truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos + i])) << (8 * i);
    pos += 4;
    return v;
}

std::uint64_t get_u64(const std::string& buf, std::size_t& pos) {
    if (pos + 8 > buf.size()) throw DataError("sample set file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos + i])) << (8 * i);
    pos += 8;
    return v;
}

constexpr char kMagic[4] = {'R', 'B', 'T', 'S'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

RTuple sample_rtuple_of(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                        NodeId root, Rng& rng, const TupleOptions& opts) {
    check_rumor_seeds(g, rumor_seeds);
    if (root < 0 || root >= g.node_count())
        throw std::invalid_argument("root out of range: " + std::to_string(root));
    Prober prober(g, rumor_seeds, opts);
    return prober.sample(root, rng, nullptr);
}

RTuple sample_rtuple(const Graph& g, const std::vector<NodeId>& rumor_seeds, Rng& rng,
                     const TupleOptions& opts) {
    check_rumor_seeds(g, rumor_seeds);
    NodeId root = static_cast<NodeId>(rng.below(static_cast<std::uint32_t>(g.node_count())));
    Prober prober(g, rumor_seeds, opts);
    return prober.sample(root, rng, nullptr);
}

RTuple rtuple_from_realization(const Realization& r, const std::vector<NodeId>& rumor_seeds,
                               NodeId root) {
    const Graph& g = *r.graph;
    check_rumor_seeds(g, rumor_seeds);
    if (root < 0 || root >= g.node_count())
        throw std::invalid_argument("root out of range: " + std::to_string(root));
    Prober prober(g, rumor_seeds, {});
    return prober.probe(root, [&](EdgeId e, double) { return r.present[e] != 0; }, nullptr);
}

bool covers(const std::vector<NodeId>& s, const RTuple& t) {
    if (!t.hit_rumor) return true;
    for (NodeId u : s)
        if (std::binary_search(t.nodes.begin(), t.nodes.end(), u)) return true;
    return false;
}

SampleSet::SampleSet(NodeId node_count, std::vector<RTuple> tuples)
    : node_count_(node_count), tuples_(std::move(tuples)) {
    for (RTuple& t : tuples_) {
        if (t.root < 0 || t.root >= node_count_)
            throw std::invalid_argument("tuple root out of range");
        for (NodeId u : t.nodes)
            if (u < 0 || u >= node_count_)
                throw std::invalid_argument("tuple node out of range");
        std::sort(t.nodes.begin(), t.nodes.end());
    }
    index_from(0);
}

void SampleSet::index_from(std::uint64_t first) {
    index_.resize(node_count_);
    for (std::uint64_t i = first; i < tuples_.size(); ++i) {
        const RTuple& t = tuples_[i];
        if (!t.hit_rumor) {
            ++unreachable_;
            continue;
        }
        for (NodeId u : t.nodes) index_[u].push_back(static_cast<std::uint32_t>(i));
    }
}

SampleSet SampleSet::generate(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                              std::uint64_t count, std::uint64_t seed, int threads,
                              const TupleOptions& opts) {
    check_rumor_seeds(g, rumor_seeds);
    SampleSet set;
    set.node_count_ = g.node_count();
    set.index_.resize(g.node_count());
    set.seed_ = seed;
    set.opts_ = opts;
    set.extendable_ = true;
    set.extend(g, rumor_seeds, count, threads);
    return set;
}

void SampleSet::extend(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                       std::uint64_t new_total, int threads) {
    if (!extendable_)
        throw std::logic_error("sample set was not produced by generate(); cannot extend");
    check_rumor_seeds(g, rumor_seeds);
    if (g.node_count() != node_count_)
        throw std::invalid_argument("graph size does not match sample set");
    const std::uint64_t first = tuples_.size();
    if (new_total <= first) return;
    tuples_.resize(new_total);
    threads = std::max(1, threads);
    std::vector<std::uint64_t> tested(threads, 0);
    std::vector<std::unique_ptr<Prober>> work(threads);
    parallel_chunks(new_total - first, threads,
                    [&](int worker, std::uint64_t begin, std::uint64_t end) {
                        if (!work[worker])
                            work[worker] = std::make_unique<Prober>(g, rumor_seeds, opts_);
                        Prober& prober = *work[worker];
                        for (std::uint64_t i = begin; i < end; ++i) {
                            Rng rng(mix_seed(seed_, first + i));
                            NodeId root = static_cast<NodeId>(
                                rng.below(static_cast<std::uint32_t>(g.node_count())));
                            tuples_[first + i] = prober.sample(root, rng, &tested[worker]);
                        }
                    });
    for (std::uint64_t t : tested) edges_tested_ += t;
    index_from(first);
}

std::uint64_t SampleSet::coverage(const std::vector<NodeId>& s) const {
    for (NodeId u : s)
        if (u < 0 || u >= node_count_)
            throw std::invalid_argument("seed out of range: " + std::to_string(u));
    std::vector<std::uint8_t> hit(tuples_.size(), 0);
    std::uint64_t covered = unreachable_;
    for (NodeId u : s) {
        for (std::uint32_t i : index_[u]) {
            if (!hit[i]) {
                hit[i] = 1;
                ++covered;
            }
        }
    }
    return covered;
}

void SampleSet::save(const std::string& path) const {
    std::string buf;
    buf.reserve(tuples_.size() * 8 + 64);
    buf.append(kMagic, 4);
    put_u32(buf, kVersion);
    put_u64(buf, static_cast<std::uint64_t>(node_count_));
    put_u64(buf, tuples_.size());
    put_u64(buf, unreachable_);
    put_u64(buf, edges_tested_);
    for (const RTuple& t : tuples_) {
        buf.push_back(t.hit_rumor ? 1 : 0);
        put_varint(buf, static_cast<std::uint64_t>(t.root));
        put_varint(buf, t.nodes.size());
        NodeId prev = 0;
        for (std::size_t i = 0; i < t.nodes.size(); ++i) {
            put_varint(buf, static_cast<std::uint64_t>(i == 0 ? t.nodes[0]
                                                              : t.nodes[i] - prev));
            prev = t.nodes[i];
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write sample set: " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw DataError("write failed: " + path);
}

SampleSet SampleSet::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open sample set: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0)
        throw DataError("not a sample set file: " + path);
    pos = 4;
    std::uint32_t version = get_u32(buf, pos);
    if (version != kVersion)
        throw DataError("unsupported sample set version " + std::to_string(version));
    SampleSet set;
    std::uint64_t n = get_u64(buf, pos);
    if (n > 0x7fffffffULL) throw DataError("sample set node count out of range");
    set.node_count_ = static_cast<NodeId>(n);
    std::uint64_t count = get_u64(buf, pos);
    std::uint64_t unreachable = get_u64(buf, pos);
    set.edges_tested_ = get_u64(buf, pos);
    set.tuples_.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        if (pos >= buf.size()) throw DataError("sample set file truncated");
        RTuple& t = set.tuples_[i];
        t.hit_rumor = buf[pos++] != 0;
        std::uint64_t root = get_varint(buf, pos);
        std::uint64_t len = get_varint(buf, pos);
        if (root >= n || len > n) throw DataError("sample set file corrupt");
        t.root = static_cast<NodeId>(root);
        t.nodes.resize(len);
        std::int64_t value = 0;
        for (std::uint64_t j = 0; j < len; ++j) {
            value += static_cast<std::int64_t>(get_varint(buf, pos));
            if (value >= static_cast<std::int64_t>(n))
                throw DataError("sample set file corrupt");
            t.nodes[j] = static_cast<NodeId>(value);
        }
    }
    if (pos != buf.size()) throw DataError("sample set file has trailing bytes");
    set.index_from(0);
    if (set.unreachable_ != unreachable)
        throw DataError("sample set file corrupt: tuple counts disagree");
    return set;
}

TupleEstimate estimate_f_tuples(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                                const std::vector<NodeId>& seeds, std::uint64_t count,
                                std::uint64_t seed, int threads) {
    check_rumor_seeds(g, rumor_seeds);
    if (count < 1) throw std::invalid_argument("tuple count must be positive");
    for (NodeId u : seeds)
        if (u < 0 || u >= g.node_count())
            throw std::invalid_argument("seed out of range: " + std::to_string(u));
    threads = std::max(1, threads);
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::unique_ptr<Prober>> work(threads);
    std::vector<NodeId> sorted_seeds = seeds;
    std::sort(sorted_seeds.begin(), sorted_seeds.end());
    parallel_chunks(count, threads, [&](int worker, std::uint64_t begin, std::uint64_t end) {
        if (!work[worker]) work[worker] = std::make_unique<Prober>(g, rumor_seeds, TupleOptions{});
        Prober& prober = *work[worker];
        std::uint64_t covered = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng(mix_seed(seed, i));
            NodeId root =
                static_cast<NodeId>(rng.below(static_cast<std::uint32_t>(g.node_count())));
            RTuple t = prober.sample(root, rng, nullptr);
            if (covers(sorted_seeds, t)) ++covered;
        }
        partial[worker] += covered;
    });
    TupleEstimate est;
    est.count = count;
    for (std::uint64_t c : partial) est.covered += c;
    const double n = static_cast<double>(g.node_count());
    const double phat = static_cast<double>(est.covered) / static_cast<double>(count);
    est.f_estimate = n * phat;
    est.f_stderr = n * std::sqrt(phat * (1.0 - phat) / static_cast<double>(count));
    return est;
}

}  // namespace rbr
