/*
 * labeling.hpp
 *
 * Empirical transition graph over the trajectory alphabet, relative
 * movement labeling of its edges, the labeled BWT, and the per-edge
 * rank correction terms that make PseudoRank work.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "snt/text.hpp"

namespace snt {

struct rml_strategy {
    enum class kind : uint8_t { bigram_sorted = 0, random_shuffle = 1, mel_baseline = 2 };
    kind k = kind::bigram_sorted;
    uint64_t seed = 0;  // used by random_shuffle

    static rml_strategy bigram() { return {kind::bigram_sorted, 0}; }
    static rml_strategy random(uint64_t seed) { return {kind::random_shuffle, seed}; }
    static rml_strategy mel() { return {kind::mel_baseline, 0}; }
};

class et_graph {
public:
    struct edge {
        uint32_t target = 0;     // w in the transition w' -> w
        uint32_t label = 0;      // phi(w | w'), 1-based
        int64_t correction = 0;  // Z_{w'w}
        uint64_t count = 0;      // bigram occurrences; construction-time only
    };

    et_graph() = default;

    // adjacency from the cyclic bigrams of the trajectory string; labels
    // and corrections are not assigned yet
    static et_graph build(const trajectory_string& ts);

    uint32_t sigma() const { return sigma_; }
    uint64_t num_edges() const { return num_edges_; }

    std::span<const edge> out(uint32_t vertex) const {
        return {edges_.data() + heads_[vertex], heads_[vertex + 1] - heads_[vertex]};
    }
    std::span<edge> out_mut(uint32_t vertex) {
        return {edges_.data() + heads_[vertex], heads_[vertex + 1] - heads_[vertex]};
    }
    uint32_t out_degree(uint32_t vertex) const {
        return static_cast<uint32_t>(heads_[vertex + 1] - heads_[vertex]);
    }

    // max out-degree over all vertices; equals the label alphabet size
    // under the bigram and random strategies
    uint32_t max_out_degree() const;
    // max out-degree restricted to edge-symbol vertices (ids >= 2)
    uint32_t max_out_degree_edges() const;
    // |E_T| / number of vertices with at least one outgoing edge
    double avg_out_degree() const;
    uint32_t max_label() const;

    // phi(w | w') and its inverse, by linear scan of the out-list
    std::optional<uint32_t> label_of(uint32_t from, uint32_t to) const;
    std::optional<uint32_t> decode(uint32_t label, uint32_t from) const;
    const edge* find_edge(uint32_t from, uint32_t to) const;

    void attach_c_array(std::vector<uint64_t> c) { c_ = std::move(c); }
    const std::vector<uint64_t>& c() const { return c_; }

    // reorders every out-list and assigns labels 1..deg (bigram/random) or
    // the MEL-baseline per-symbol labels
    void assign_rml(const rml_strategy& strategy);

    void serialize(std::ostream& out) const;
    static et_graph load(std::istream& in, bool explicit_labels, uint64_t text_length);
    bool labels_are_positional() const;  // false only for the MEL baseline

    // greedy injective-per-out-list labeling given unigram counts
    std::vector<uint32_t> mel_labels_from_counts(const std::vector<uint64_t>& unigram) const;

private:
    uint32_t sigma_ = 0;
    uint64_t num_edges_ = 0;
    std::vector<uint64_t> heads_;  // CSR offsets, size sigma_ + 1
    std::vector<edge> edges_;
    std::vector<uint64_t> c_;  // size sigma_ + 1 once attached
};

// per-symbol labeling that is injective inside every out-list; the
// greedy assigns labels to symbols in descending unigram frequency
std::vector<uint32_t> assign_mel(const trajectory_string& ts, const et_graph& g);

// labels[j] = phi(bwt[j] | w') where w' is the context block of j
std::vector<uint32_t> label_bwt(const bwt_text& bwt, const et_graph& g);

// Z_{w'w} = rank_label(labeled, C[w']) - rank_w(bwt, C[w']), one linear scan
void compute_corrections(const bwt_text& bwt, std::span<const uint32_t> labeled, et_graph& g);

}  // namespace snt
