/*
 * wavelet_tree.hpp
 *
 * Huffman-shaped wavelet tree over plain or RRR bitvectors. Rank and
 * access cost one bit-rank per tree level, so the average cost tracks
 * 1 + H0 of the stored sequence.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "snt/bit_vector.hpp"
#include "snt/rrr_vector.hpp"

namespace snt {

struct bv_config {
    enum class kind : uint8_t { plain = 0, rrr = 1 };
    kind k = kind::rrr;
    unsigned block_size = 63;  // used when k == rrr

    static bv_config plain() { return {kind::plain, 0}; }
    static bv_config rrr(unsigned b = 63) { return {kind::rrr, b}; }
};

// Canonical-order Huffman code assignment. Ties between equal weights are
// broken by creation order (leaves in ascending symbol order first, then
// merge order), and the lighter/earlier subtree becomes the left child,
// so the tree shape is deterministic.
struct huffman_code {
    std::vector<uint32_t> symbols;  // ascending
    std::vector<uint8_t> lengths;   // code length per symbol; 0 only when |alphabet| == 1
    std::vector<uint64_t> codes;    // branch bits, MSB-first within `length` bits

    static huffman_code build(const std::vector<std::pair<uint32_t, uint64_t>>& freqs);

    size_t alphabet_size() const { return symbols.size(); }
    // average code length weighted by the given frequencies
    double average_length(const std::vector<std::pair<uint32_t, uint64_t>>& freqs) const;
};

class wavelet_tree {
public:
    wavelet_tree() = default;
    wavelet_tree(std::span<const uint32_t> seq, bv_config cfg);

    uint64_t size() const { return n_; }
    size_t alphabet_size() const { return code_.alphabet_size(); }
    const huffman_code& code() const { return code_; }
    const std::vector<uint32_t>& symbols() const { return code_.symbols; }

    bool contains(uint32_t symbol) const { return symbol_slot(symbol) >= 0; }
    unsigned code_length(uint32_t symbol) const;

    uint32_t access(uint64_t i) const;
    // occurrences of symbol in [0, i); 0 for symbols outside the alphabet
    // (use contains() to distinguish an unknown symbol from a zero count)
    uint64_t rank(uint32_t symbol, uint64_t i) const;

    struct size_breakdown {
        uint64_t node_lengths = 0;     // sum of logical bitvector lengths
        uint64_t payload_bits = 0;     // classes + offsets (rrr) or raw words (plain)
        uint64_t class_bits = 0;
        uint64_t offset_bits = 0;
        uint64_t sample_bits = 0;
        uint64_t code_table_bits = 0;
        uint64_t node_count = 0;
        uint64_t total() const { return payload_bits + sample_bits + code_table_bits; }
    };
    size_breakdown sizes() const;

    void serialize(std::ostream& out) const;
    static wavelet_tree load(std::istream& in);

private:
    struct node_bits {
        std::variant<bit_vector, rrr_vector> bv;
        uint64_t size() const;
        uint64_t rank1(uint64_t i) const;
        uint64_t rank0(uint64_t i) const { return i - rank1(i); }
        bool access(uint64_t i) const;
    };
    struct node {
        int32_t left = -1;   // node index, -1 for leaf child
        int32_t right = -1;
        uint32_t symbol_left = 0;   // leaf symbol when left == -1
        uint32_t symbol_right = 0;  // leaf symbol when right == -1
        node_bits bits;
    };

    int64_t symbol_slot(uint32_t symbol) const;
    void build_nodes(std::span<const uint32_t> seq, bv_config cfg);
    void rebuild_shape();  // recover node topology from the code table

    uint64_t n_ = 0;
    huffman_code code_;
    std::vector<int32_t> slot_of_;  // symbol -> index into code_ arrays, -1 if absent
    std::vector<node> nodes_;       // preorder; nodes_[0] is the root when non-degenerate
};

}  // namespace snt
