#include "snt/index.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>

#include "snt/query_counters.hpp"

namespace snt {

namespace {

class phase_timer {
public:
    phase_timer() : start_(clock::now()) {}
    double take_ms() {
        auto now = clock::now();
        double ms = std::chrono::duration<double, std::milli>(now - start_).count();
        start_ = now;
        return ms;
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_;
};

void validate_path(std::span<const uint32_t> forward_edges, uint32_t sigma) {
    if (forward_edges.empty()) throw invalid_query("empty query path");
    for (uint32_t e : forward_edges) {
        if (e > sigma || trajectory_string::encode_edge(e) >= sigma)
            throw invalid_query("edge id " + std::to_string(e) + " outside the alphabet");
    }
}

}  // namespace

snt_index snt_index::build(const std::vector<trajectory>& trajectories,
                           const index_options& opt, build_report* report) {
    phase_timer timer;
    trajectory_string ts = trajectory_string::build(trajectories);
    double ts_ms = timer.take_ms();
    bwt_text bwt = bwt_text::build(ts);
    double sort_ms = timer.take_ms();
    snt_index idx = build_from_bwt(ts, bwt, opt, report);
    if (report) {
        report->trajectory_string_ms = ts_ms;
        report->suffix_sort_ms = sort_ms;
    }
    return idx;
}

snt_index snt_index::build_from_bwt(const trajectory_string& ts, const bwt_text& bwt,
                                    const index_options& opt, build_report* report) {
    snt_index idx;
    idx.n_ = ts.size();
    idx.num_trajectories_ = ts.num_trajectories;
    idx.bv_ = opt.bitvectors;
    idx.strategy_ = opt.strategy.k;

    phase_timer timer;
    idx.graph_ = et_graph::build(ts);
    double etg_ms = timer.take_ms();
    idx.graph_.assign_rml(opt.strategy);
    double rml_ms = timer.take_ms();
    std::vector<uint32_t> labeled = label_bwt(bwt, idx.graph_);
    double label_ms = timer.take_ms();
    compute_corrections(bwt, labeled, idx.graph_);
    idx.graph_.attach_c_array(bwt.c);
    double corr_ms = timer.take_ms();
    idx.labels_ = wavelet_tree(labeled, opt.bitvectors);
    double wt_ms = timer.take_ms();

    if (report) {
        report->et_graph_ms = etg_ms;
        report->rml_ms = rml_ms;
        report->label_ms = label_ms;
        report->corrections_ms = corr_ms;
        report->wavelet_ms = wt_ms;
        report->h0_bwt = h0(bwt.bwt);
        report->h0_labeled = h0(labeled);
    }
    if (opt.retain_debug_data) {
        idx.debug_text_ = ts.symbols;
        idx.debug_sa_ = bwt.sa;
    }
    return idx;
}

uint64_t snt_index::internal_pseudo_rank(uint64_t j, const et_graph::edge& e) const {
    ++tls_counters().pseudo_ranks;
    uint64_t r = labels_.rank(e.label, j);
    assert(static_cast<int64_t>(r) >= e.correction);
    return r - static_cast<uint64_t>(e.correction);
}

std::optional<uint64_t> snt_index::pseudo_rank(uint64_t j, uint32_t w, uint32_t w_prev) const {
    if (w >= sigma() || w_prev >= sigma()) return std::nullopt;
    const auto& c = graph_.c();
    if (j < c[w_prev] || j > c[w_prev + 1]) return std::nullopt;
    const et_graph::edge* e = graph_.find_edge(w_prev, w);
    if (!e) return std::nullopt;
    return internal_pseudo_rank(j, *e);
}

std::optional<suffix_range> snt_index::suffix_range_path(
    std::span<const uint32_t> forward_edges) const {
    validate_path(forward_edges, sigma());
    const auto& c = graph_.c();
    // the text stores reversed trajectories, so the backward search over
    // reverse(P) consumes the forward path front to back
    uint32_t w = trajectory_string::encode_edge(forward_edges[0]);
    uint64_t sp = c[w], ep = c[w + 1];
    for (size_t i = 1; i < forward_edges.size(); ++i) {
        if (sp >= ep) return std::nullopt;
        uint32_t w_prev = w;
        w = trajectory_string::encode_edge(forward_edges[i]);
        const et_graph::edge* e = graph_.find_edge(w_prev, w);
        if (!e) return std::nullopt;  // transition never observed
        // Theorem-2 domain: both endpoints stay inside the context block
        assert(c[w_prev] <= sp && sp <= c[w_prev + 1]);
        assert(c[w_prev] <= ep && ep <= c[w_prev + 1]);
        sp = c[w] + internal_pseudo_rank(sp, *e);
        ep = c[w] + internal_pseudo_rank(ep, *e);
    }
    if (sp >= ep) return std::nullopt;
    return suffix_range{sp, ep};
}

uint64_t snt_index::count_occurrences(std::span<const uint32_t> forward_edges) const {
    auto r = suffix_range_path(forward_edges);
    return r ? r->count() : 0;
}

uint32_t snt_index::context_of(uint64_t j) const {
    const auto& c = graph_.c();
    // last context with C[w'] <= j
    auto it = std::upper_bound(c.begin(), c.end(), j);
    return static_cast<uint32_t>(it - c.begin()) - 1;
}

std::vector<uint32_t> snt_index::extract(uint64_t j, uint64_t l) const {
    if (j >= n_) throw std::out_of_range("snt_index::extract: position past end");
    if (l > n_) throw std::out_of_range("snt_index::extract: length exceeds text");
    const auto& c = graph_.c();
    std::vector<uint32_t> out(l);
    uint32_t ctx = context_of(j);
    for (uint64_t k = 1; k <= l; ++k) {
        uint32_t label = labels_.access(j);
        const et_graph::edge* e = graph_.find_label(ctx, label);
        if (!e) throw std::logic_error("snt_index::extract: undecodable label");
        out[l - k] = e->target;
        j = c[e->target] + internal_pseudo_rank(j, *e);  // LF step
        ctx = e->target;
    }
    return out;
}

std::vector<uint32_t> snt_index::extract_path(uint64_t j, uint64_t max_len) const {
    if (j >= n_) throw std::out_of_range("snt_index::extract_path: position past end");
    const auto& c = graph_.c();
    std::vector<uint32_t> out;
    uint32_t ctx = context_of(j);
    for (uint64_t k = 0; k < max_len && k < n_; ++k) {
        uint32_t label = labels_.access(j);
        const et_graph::edge* e = graph_.find_label(ctx, label);
        if (!e) throw std::logic_error("snt_index::extract_path: undecodable label");
        if (trajectory_string::is_sentinel(e->target)) break;
        // walking backwards through the stored reversal yields travel order
        out.push_back(trajectory_string::decode_edge(e->target));
        j = c[e->target] + internal_pseudo_rank(j, *e);
        ctx = e->target;
    }
    return out;
}

index_size_report snt_index::sizes() const {
    index_size_report r;
    r.wavelet = labels_.sizes();
    uint64_t edge_bytes = graph_.labels_are_positional() ? 12 : 16;
    r.graph_bits = 8 * (4 + uint64_t(graph_.sigma()) * 10 + graph_.num_edges() * edge_bytes);
    r.header_bits = 8 * (4 + 2 + 8 + 4 + 4 + 8 + 1 + 1 + 1 + 4);
    return r;
}

baseline_fm_index baseline_fm_index::build(const std::vector<trajectory>& trajectories,
                                           const index_options& opt, build_report* report) {
    phase_timer timer;
    trajectory_string ts = trajectory_string::build(trajectories);
    double ts_ms = timer.take_ms();
    bwt_text bwt = bwt_text::build(ts);
    double sort_ms = timer.take_ms();
    baseline_fm_index idx = build_from_bwt(ts, bwt, opt, report);
    if (report) {
        report->trajectory_string_ms = ts_ms;
        report->suffix_sort_ms = sort_ms;
    }
    return idx;
}

baseline_fm_index baseline_fm_index::build_from_bwt(const trajectory_string& ts,
                                                    const bwt_text& bwt,
                                                    const index_options& opt,
                                                    build_report* report) {
    baseline_fm_index idx;
    idx.n_ = ts.size();
    idx.num_trajectories_ = ts.num_trajectories;
    idx.sigma_ = ts.sigma;
    idx.c_ = bwt.c;
    idx.bv_ = opt.bitvectors;
    phase_timer timer;
    idx.bwt_ = wavelet_tree(bwt.bwt, opt.bitvectors);
    if (report) {
        report->wavelet_ms = timer.take_ms();
        report->h0_bwt = h0(bwt.bwt);
    }
    return idx;
}

std::optional<suffix_range> baseline_fm_index::search(std::span<const uint32_t> pattern) const {
    if (pattern.empty()) throw invalid_query("empty pattern");
    uint32_t w = pattern[pattern.size() - 1];
    if (w >= sigma_) return std::nullopt;  // unknown symbol
    uint64_t sp = c_[w], ep = c_[w + 1];
    for (size_t i = 2; i <= pattern.size(); ++i) {
        if (sp >= ep) return std::nullopt;
        w = pattern[pattern.size() - i];
        if (w >= sigma_) return std::nullopt;
        sp = c_[w] + bwt_.rank(w, sp);
        ep = c_[w] + bwt_.rank(w, ep);
    }
    if (sp >= ep) return std::nullopt;
    return suffix_range{sp, ep};
}

std::optional<suffix_range> baseline_fm_index::suffix_range_path(
    std::span<const uint32_t> forward_edges) const {
    validate_path(forward_edges, sigma_);
    std::vector<uint32_t> pattern(forward_edges.size());
    for (size_t i = 0; i < forward_edges.size(); ++i)
        pattern[forward_edges.size() - 1 - i] = trajectory_string::encode_edge(forward_edges[i]);
    return search(pattern);
}

uint64_t baseline_fm_index::count_occurrences(std::span<const uint32_t> forward_edges) const {
    auto r = suffix_range_path(forward_edges);
    return r ? r->count() : 0;
}

index_size_report baseline_fm_index::sizes() const {
    index_size_report r;
    r.wavelet = bwt_.sizes();
    r.graph_bits = 8 * (uint64_t(sigma_) + 1) * 8;  // the C array
    r.header_bits = 8 * (4 + 2 + 8 + 4 + 4 + 8 + 1 + 1 + 1 + 4);
    return r;
}

}  // namespace snt
