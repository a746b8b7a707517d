#include "snt/labeling.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "snt/rng.hpp"
#include "snt/serialize.hpp"

namespace snt {

et_graph et_graph::build(const trajectory_string& ts) {
    const auto& t = ts.symbols;
    const uint64_t n = t.size();
    // an edge (w', w) exists iff the bigram "w w'" occurs in T; the scan is
    // cyclic so the wrap pair (terminator, first symbol) contributes as well
    std::vector<std::pair<uint32_t, uint32_t>> pairs(n);  // (from w', to w)
    for (uint64_t i = 0; i < n; ++i) pairs[i] = {t[(i + 1) % n], t[i]};
    std::sort(pairs.begin(), pairs.end());

    et_graph g;
    g.sigma_ = ts.sigma;
    g.heads_.assign(static_cast<size_t>(g.sigma_) + 1, 0);
    for (size_t i = 0; i < pairs.size();) {
        size_t j = i;
        while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
        g.edges_.push_back({pairs[i].second, 0, 0, j - i});
        ++g.heads_[pairs[i].first + 1];
        i = j;
    }
    for (size_t v = 1; v <= g.sigma_; ++v) g.heads_[v] += g.heads_[v - 1];
    g.num_edges_ = g.edges_.size();
    return g;
}

uint32_t et_graph::max_out_degree() const {
    uint32_t d = 0;
    for (uint32_t v = 0; v < sigma_; ++v) d = std::max(d, out_degree(v));
    return d;
}

uint32_t et_graph::max_out_degree_edges() const {
    uint32_t d = 0;
    for (uint32_t v = trajectory_string::edge_offset; v < sigma_; ++v)
        d = std::max(d, out_degree(v));
    return d;
}

double et_graph::avg_out_degree() const {
    uint64_t used = 0;
    for (uint32_t v = 0; v < sigma_; ++v)
        if (out_degree(v) > 0) ++used;
    return used == 0 ? 0.0 : double(num_edges_) / double(used);
}

uint32_t et_graph::max_label() const {
    uint32_t m = 0;
    for (const edge& e : edges_) m = std::max(m, e.label);
    return m;
}

std::optional<uint32_t> et_graph::label_of(uint32_t from, uint32_t to) const {
    for (const edge& e : out(from))
        if (e.target == to) return e.label;
    return std::nullopt;
}

std::optional<uint32_t> et_graph::decode(uint32_t label, uint32_t from) const {
    for (const edge& e : out(from))
        if (e.label == label) return e.target;
    return std::nullopt;
}

const et_graph::edge* et_graph::find_edge(uint32_t from, uint32_t to) const {
    for (const edge& e : out(from))
        if (e.target == to) return &e;
    return nullptr;
}

bool et_graph::labels_are_positional() const {
    for (uint32_t v = 0; v < sigma_; ++v) {
        uint32_t expect = 1;
        for (const edge& e : out(v))
            if (e.label != expect++) return false;
    }
    return true;
}

void et_graph::assign_rml(const rml_strategy& strategy) {
    using kind = rml_strategy::kind;
    if (strategy.k == kind::mel_baseline) {
        // per-symbol labels emulated as an RML; unigram counts are the
        // summed outgoing bigram counts (every occurrence has a successor
        // in the cyclic scan)
        std::vector<uint64_t> unigram(sigma_, 0);
        for (uint32_t v = 0; v < sigma_; ++v)
            for (const edge& e : out(v)) unigram[v] += e.count;
        std::vector<uint32_t> psi = mel_labels_from_counts(unigram);
        for (uint32_t v = 0; v < sigma_; ++v) {
            auto edges = out_mut(v);
            for (edge& e : edges) e.label = psi[e.target];
            std::sort(edges.begin(), edges.end(),
                      [](const edge& a, const edge& b) { return a.label < b.label; });
        }
        return;
    }
    for (uint32_t v = 0; v < sigma_; ++v) {
        auto edges = out_mut(v);
        if (strategy.k == kind::bigram_sorted) {
            std::sort(edges.begin(), edges.end(), [](const edge& a, const edge& b) {
                if (a.count != b.count) return a.count > b.count;
                return a.target < b.target;
            });
        } else {
            std::sort(edges.begin(), edges.end(),
                      [](const edge& a, const edge& b) { return a.target < b.target; });
            rng r(rng::mix(strategy.seed, v));
            for (size_t i = edges.size(); i > 1; --i)
                std::swap(edges[i - 1], edges[r.next_below(i)]);
        }
        uint32_t label = 1;
        for (edge& e : edges) e.label = label++;
    }
}

std::vector<uint32_t> et_graph::mel_labels_from_counts(
    const std::vector<uint64_t>& unigram) const {
    // reverse incidence: out-lists that contain each symbol
    std::vector<std::vector<uint32_t>> containing(sigma_);
    for (uint32_t v = 0; v < sigma_; ++v)
        for (const edge& e : out(v)) containing[e.target].push_back(v);

    std::vector<uint32_t> order;
    for (uint32_t w = 0; w < sigma_; ++w)
        if (!containing[w].empty() || out_degree(w) > 0) order.push_back(w);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (unigram[a] != unigram[b]) return unigram[a] > unigram[b];
        return a < b;
    });

    std::vector<uint32_t> psi(sigma_, 0);
    std::vector<uint32_t> stamp(sigma_ + 2, 0);
    uint32_t tick = 0;
    for (uint32_t w : order) {
        ++tick;
        for (uint32_t v : containing[w])
            for (const edge& e : out(v))
                if (psi[e.target] != 0 && psi[e.target] < stamp.size())
                    stamp[psi[e.target]] = tick;
        uint32_t label = 1;
        while (stamp[label] == tick) ++label;
        psi[w] = label;
    }
    return psi;
}

std::vector<uint32_t> assign_mel(const trajectory_string& ts, const et_graph& g) {
    std::vector<uint64_t> unigram(g.sigma(), 0);
    for (uint32_t sym : ts.symbols) ++unigram[sym];
    return g.mel_labels_from_counts(unigram);
}

std::vector<uint32_t> label_bwt(const bwt_text& bwt, const et_graph& g) {
    const uint64_t n = bwt.size();
    std::vector<uint32_t> labels(n);
    std::vector<std::pair<uint32_t, uint32_t>> lookup;  // (target, label), sorted
    for (uint32_t ctx = 0; ctx < bwt.sigma; ++ctx) {
        const uint64_t begin = bwt.c[ctx], end = bwt.c[ctx + 1];
        if (begin == end) continue;
        lookup.clear();
        for (const auto& e : g.out(ctx)) lookup.emplace_back(e.target, e.label);
        std::sort(lookup.begin(), lookup.end());
        for (uint64_t j = begin; j < end; ++j) {
            auto it = std::lower_bound(lookup.begin(), lookup.end(),
                                       std::make_pair(bwt.bwt[j], uint32_t(0)));
            if (it == lookup.end() || it->first != bwt.bwt[j])
                throw std::logic_error("label_bwt: symbol without an edge from its context");
            labels[j] = it->second;
        }
    }
    return labels;
}

void compute_corrections(const bwt_text& bwt, std::span<const uint32_t> labeled, et_graph& g) {
    const uint64_t n = bwt.size();
    if (labeled.size() != n) throw std::invalid_argument("compute_corrections: length mismatch");
    uint32_t max_label = g.max_label();
    std::vector<uint64_t> label_cnt(static_cast<size_t>(max_label) + 1, 0);
    std::vector<uint64_t> sym_cnt(bwt.sigma, 0);
    for (uint32_t ctx = 0; ctx < bwt.sigma; ++ctx) {
        // both running counts are prefix ranks at the block start C[ctx]
        for (auto& e : g.out_mut(ctx))
            e.correction = static_cast<int64_t>(label_cnt[e.label]) -
                           static_cast<int64_t>(sym_cnt[e.target]);
        for (uint64_t j = bwt.c[ctx]; j < bwt.c[ctx + 1]; ++j) {
            ++label_cnt[labeled[j]];
            ++sym_cnt[bwt.bwt[j]];
        }
    }
}

void et_graph::serialize(std::ostream& out) const {
    if (c_.size() != static_cast<size_t>(sigma_) + 1)
        throw std::logic_error("et_graph::serialize: C array not attached");
    const bool explicit_labels = !labels_are_positional();
    write_u32(out, sigma_);
    for (uint32_t v = 0; v < sigma_; ++v) {
        uint32_t deg = out_degree(v);
        if (deg > std::numeric_limits<uint16_t>::max())
            throw std::length_error("et_graph::serialize: out-degree exceeds format limit");
        write_u64(out, c_[v]);
        write_u16(out, static_cast<uint16_t>(deg));
        for (const edge& e : out(v)) {
            write_u32(out, e.target);
            if (explicit_labels) write_u32(out, e.label);
            write_i64(out, e.correction);
        }
    }
}

et_graph et_graph::load(std::istream& in, bool explicit_labels, uint64_t text_length) {
    et_graph g;
    g.sigma_ = read_u32(in);
    g.heads_.assign(static_cast<size_t>(g.sigma_) + 1, 0);
    g.c_.assign(static_cast<size_t>(g.sigma_) + 1, 0);
    g.c_[g.sigma_] = text_length;
    for (uint32_t v = 0; v < g.sigma_; ++v) {
        g.c_[v] = read_u64(in);
        uint16_t deg = read_u16(in);
        g.heads_[v + 1] = g.heads_[v] + deg;
        for (uint16_t i = 0; i < deg; ++i) {
            edge e;
            e.target = read_u32(in);
            e.label = explicit_labels ? read_u32(in) : i + 1;
            e.correction = read_i64(in);
            g.edges_.push_back(e);
        }
    }
    g.num_edges_ = g.edges_.size();
    return g;
}

}  // namespace snt
