/*
 * index.hpp
 *
 * The assembled index: labeled BWT in a Huffman wavelet tree plus the
 * ET-graph with correction terms. PseudoRank simulates BWT ranks on the
 * label stream, which drives both the suffix-range search and sub-path
 * extraction. A baseline FM-index over the raw BWT shares the same
 * bitvector and wavelet machinery for size/speed comparisons.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "snt/labeling.hpp"
#include "snt/text.hpp"
#include "snt/wavelet_tree.hpp"

namespace snt {

struct suffix_range {
    uint64_t sp = 0, ep = 0;  // half-open [sp, ep)
    uint64_t count() const { return ep - sp; }
    bool operator==(const suffix_range&) const = default;
};

// a malformed query (edge id outside the alphabet); distinct from NotFound
struct invalid_query : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct index_options {
    rml_strategy strategy = rml_strategy::bigram();
    bv_config bitvectors = bv_config::rrr(63);
    bool retain_debug_data = false;  // keep T and SA in memory for test oracles
};

struct build_report {
    double trajectory_string_ms = 0;
    double suffix_sort_ms = 0;  // suffix array + BWT + C
    double et_graph_ms = 0;
    double rml_ms = 0;
    double label_ms = 0;
    double corrections_ms = 0;
    double wavelet_ms = 0;
    double h0_bwt = 0;
    double h0_labeled = 0;
    // the phases the labeling adds on top of a plain FM-index build
    double labeling_total_ms() const { return et_graph_ms + rml_ms + label_ms + corrections_ms; }
    double total_ms() const {
        return trajectory_string_ms + suffix_sort_ms + labeling_total_ms() + wavelet_ms;
    }
};

struct index_size_report {
    wavelet_tree::size_breakdown wavelet;
    uint64_t graph_bits = 0;    // serialized ET-graph (or C array for the baseline)
    uint64_t header_bits = 0;
    uint64_t total_bits() const { return wavelet.total() + graph_bits + header_bits; }
    double bits_per_symbol(uint64_t n) const { return double(total_bits()) / double(n); }
};

class snt_index {
public:
    snt_index() = default;

    static snt_index build(const std::vector<trajectory>& trajectories,
                           const index_options& opt = {}, build_report* report = nullptr);
    static snt_index build_from_bwt(const trajectory_string& ts, const bwt_text& bwt,
                                    const index_options& opt = {},
                                    build_report* report = nullptr);

    uint64_t text_length() const { return n_; }
    uint32_t sigma() const { return graph_.sigma(); }
    uint32_t label_alphabet_size() const { return static_cast<uint32_t>(labels_.alphabet_size()); }
    uint64_t num_trajectories() const { return num_trajectories_; }
    const et_graph& graph() const { return graph_; }
    const wavelet_tree& labels() const { return labels_; }
    bv_config bitvectors() const { return bv_; }
    rml_strategy::kind strategy() const { return strategy_; }

    // rank_w(T_bwt, j) simulated on the label stream; requires the edge
    // (w_prev, w) to exist and C[w_prev] <= j <= C[w_prev + 1]
    std::optional<uint64_t> pseudo_rank(uint64_t j, uint32_t w, uint32_t w_prev) const;

    // suffix range of a forward path of edge ids; the reversal needed by
    // the stored text layout happens internally
    std::optional<suffix_range> suffix_range_path(std::span<const uint32_t> forward_edges) const;
    uint64_t count_occurrences(std::span<const uint32_t> forward_edges) const;

    // extract(j, l) = T[i - l, i) with i = SA[j], as raw text symbols
    std::vector<uint32_t> extract(uint64_t j, uint64_t l) const;
    // forward-order edge ids, stopping before the first trajectory boundary
    std::vector<uint32_t> extract_path(uint64_t j, uint64_t max_len) const;

    index_size_report sizes() const;

    const std::vector<uint32_t>* debug_text() const {
        return debug_text_.empty() ? nullptr : &debug_text_;
    }
    const std::vector<uint64_t>* debug_sa() const {
        return debug_sa_.empty() ? nullptr : &debug_sa_;
    }

    void serialize(std::ostream& out) const;
    static snt_index load(std::istream& in);

private:
    friend snt_index load_snt_payload(std::istream&, uint16_t);

    uint64_t internal_pseudo_rank(uint64_t j, const et_graph::edge& e) const;
    uint32_t context_of(uint64_t j) const;

    uint64_t n_ = 0;
    uint64_t num_trajectories_ = 0;
    et_graph graph_;
    wavelet_tree labels_;
    bv_config bv_;
    rml_strategy::kind strategy_ = rml_strategy::kind::bigram_sorted;
    std::vector<uint32_t> debug_text_;
    std::vector<uint64_t> debug_sa_;
};

class baseline_fm_index {
public:
    baseline_fm_index() = default;

    static baseline_fm_index build(const std::vector<trajectory>& trajectories,
                                   const index_options& opt = {},
                                   build_report* report = nullptr);
    static baseline_fm_index build_from_bwt(const trajectory_string& ts, const bwt_text& bwt,
                                            const index_options& opt = {},
                                            build_report* report = nullptr);

    uint64_t text_length() const { return n_; }
    uint32_t sigma() const { return sigma_; }
    uint64_t num_trajectories() const { return num_trajectories_; }
    const wavelet_tree& bwt() const { return bwt_; }
    const std::vector<uint64_t>& c() const { return c_; }
    bv_config bitvectors() const { return bv_; }

    // classical backward search over raw text symbols
    std::optional<suffix_range> search(std::span<const uint32_t> pattern) const;
    // forward-path convenience mirroring snt_index
    std::optional<suffix_range> suffix_range_path(std::span<const uint32_t> forward_edges) const;
    uint64_t count_occurrences(std::span<const uint32_t> forward_edges) const;

    index_size_report sizes() const;

    void serialize(std::ostream& out) const;
    static baseline_fm_index load(std::istream& in);

private:
    friend baseline_fm_index load_baseline_payload(std::istream&, uint16_t);

    uint64_t n_ = 0;
    uint64_t num_trajectories_ = 0;
    uint32_t sigma_ = 0;
    std::vector<uint64_t> c_;
    wavelet_tree bwt_;
    bv_config bv_;
};

using any_index = std::variant<snt_index, baseline_fm_index>;

// Index file container: magic, version, payload, CRC32. Throws on
// magic/version/CRC mismatch.
void save_index(const std::string& path, const snt_index& idx);
void save_index(const std::string& path, const baseline_fm_index& idx);
any_index load_index(const std::string& path);

// debug sidecar with the raw text and suffix array, for oracle checks
void save_debug_sidecar(const std::string& path, const std::vector<uint32_t>& text,
                        const std::vector<uint64_t>& sa);
std::pair<std::vector<uint32_t>, std::vector<uint64_t>> load_debug_sidecar(
    const std::string& path);

}  // namespace snt
