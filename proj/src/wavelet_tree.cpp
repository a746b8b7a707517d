#include "snt/wavelet_tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "snt/query_counters.hpp"
#include "snt/serialize.hpp"

namespace snt {

query_counters& tls_counters() {
    thread_local query_counters c;
    return c;
}

huffman_code huffman_code::build(const std::vector<std::pair<uint32_t, uint64_t>>& freqs) {
    if (freqs.empty()) throw std::invalid_argument("huffman_code: empty alphabet");

    auto sorted = freqs;
    std::sort(sorted.begin(), sorted.end());

    huffman_code hc;
    hc.symbols.reserve(sorted.size());
    for (auto& [sym, cnt] : sorted) {
        if (cnt == 0) throw std::invalid_argument("huffman_code: zero frequency symbol");
        if (!hc.symbols.empty() && hc.symbols.back() == sym)
            throw std::invalid_argument("huffman_code: duplicate symbol");
        hc.symbols.push_back(sym);
    }
    const size_t m = hc.symbols.size();
    hc.lengths.assign(m, 0);
    hc.codes.assign(m, 0);
    if (m == 1) return hc;

    struct hnode {
        uint64_t weight;
        int32_t left = -1, right = -1;
        int32_t slot = -1;
    };
    std::vector<hnode> tree;
    tree.reserve(2 * m - 1);
    using item = std::pair<uint64_t, int32_t>;  // (weight, creation id)
    std::priority_queue<item, std::vector<item>, std::greater<item>> heap;
    for (size_t i = 0; i < m; ++i) {
        tree.push_back({sorted[i].second, -1, -1, static_cast<int32_t>(i)});
        heap.emplace(sorted[i].second, static_cast<int32_t>(i));
    }
    while (heap.size() >= 2) {
        auto [wa, a] = heap.top();
        heap.pop();
        auto [wb, b] = heap.top();
        heap.pop();
        int32_t id = static_cast<int32_t>(tree.size());
        tree.push_back({wa + wb, a, b, -1});  // lighter/earlier subtree on the left
        heap.emplace(wa + wb, id);
    }

    struct frame {
        int32_t node;
        uint8_t depth;
        uint64_t bits;
    };
    std::vector<frame> stack{{static_cast<int32_t>(tree.size() - 1), 0, 0}};
    while (!stack.empty()) {
        auto [id, depth, bits] = stack.back();
        stack.pop_back();
        const hnode& nd = tree[id];
        if (nd.slot >= 0) {
            hc.lengths[nd.slot] = depth;
            hc.codes[nd.slot] = bits;
            continue;
        }
        if (depth == 64) throw std::length_error("huffman_code: code longer than 64 bits");
        stack.push_back({nd.right, static_cast<uint8_t>(depth + 1), (bits << 1) | 1});
        stack.push_back({nd.left, static_cast<uint8_t>(depth + 1), bits << 1});
    }
    return hc;
}

double huffman_code::average_length(
    const std::vector<std::pair<uint32_t, uint64_t>>& freqs) const {
    uint64_t total = 0, weighted = 0;
    for (auto& [sym, cnt] : freqs) {
        auto it = std::lower_bound(symbols.begin(), symbols.end(), sym);
        if (it == symbols.end() || *it != sym) continue;
        size_t slot = static_cast<size_t>(it - symbols.begin());
        total += cnt;
        weighted += cnt * lengths[slot];
    }
    return total == 0 ? 0.0 : double(weighted) / double(total);
}

uint64_t wavelet_tree::node_bits::size() const {
    return std::visit([](const auto& v) { return v.size(); }, bv);
}
uint64_t wavelet_tree::node_bits::rank1(uint64_t i) const {
    return std::visit([i](const auto& v) { return v.rank1(i); }, bv);
}
bool wavelet_tree::node_bits::access(uint64_t i) const {
    return std::visit([i](const auto& v) { return v.access(i); }, bv);
}

int64_t wavelet_tree::symbol_slot(uint32_t symbol) const {
    if (symbol >= slot_of_.size()) return -1;
    return slot_of_[symbol];
}

unsigned wavelet_tree::code_length(uint32_t symbol) const {
    int64_t slot = symbol_slot(symbol);
    return slot < 0 ? 0 : code_.lengths[static_cast<size_t>(slot)];
}

wavelet_tree::wavelet_tree(std::span<const uint32_t> seq, bv_config cfg) {
    if (seq.empty()) throw std::invalid_argument("wavelet_tree: empty sequence");
    n_ = seq.size();

    uint32_t max_sym = *std::max_element(seq.begin(), seq.end());
    std::vector<uint64_t> counts(static_cast<size_t>(max_sym) + 1, 0);
    for (uint32_t s : seq) ++counts[s];
    std::vector<std::pair<uint32_t, uint64_t>> freqs;
    for (uint32_t s = 0; s <= max_sym; ++s)
        if (counts[s]) freqs.emplace_back(s, counts[s]);

    code_ = huffman_code::build(freqs);
    slot_of_.assign(static_cast<size_t>(max_sym) + 1, -1);
    for (size_t i = 0; i < code_.symbols.size(); ++i)
        slot_of_[code_.symbols[i]] = static_cast<int32_t>(i);

    rebuild_shape();
    build_nodes(seq, cfg);
}

// Recover the binary tree from the prefix-free code table; nodes_ ends up
// in preorder, which is also the serialized order.
void wavelet_tree::rebuild_shape() {
    nodes_.clear();
    if (code_.alphabet_size() <= 1) return;

    struct tmp_node {
        int32_t child[2] = {-1, -1};
        bool child_is_leaf[2] = {false, false};
        uint32_t leaf_sym[2] = {0, 0};
    };
    std::vector<tmp_node> tmp(1);
    for (size_t slot = 0; slot < code_.symbols.size(); ++slot) {
        unsigned len = code_.lengths[slot];
        if (len == 0) throw std::runtime_error("wavelet_tree: malformed code table");
        int32_t cur = 0;
        for (unsigned d = 0; d < len; ++d) {
            unsigned bit = (code_.codes[slot] >> (len - 1 - d)) & 1;
            if (d + 1 == len) {
                if (tmp[cur].child[bit] != -1 || tmp[cur].child_is_leaf[bit])
                    throw std::runtime_error("wavelet_tree: code table is not prefix-free");
                tmp[cur].child_is_leaf[bit] = true;
                tmp[cur].leaf_sym[bit] = code_.symbols[slot];
            } else {
                if (tmp[cur].child_is_leaf[bit])
                    throw std::runtime_error("wavelet_tree: code table is not prefix-free");
                if (tmp[cur].child[bit] == -1) {
                    tmp[cur].child[bit] = static_cast<int32_t>(tmp.size());
                    tmp.emplace_back();
                }
                cur = tmp[cur].child[bit];
            }
        }
    }

    nodes_.resize(tmp.size());
    std::vector<int32_t> order;  // preorder renumbering: tmp id -> preorder id
    order.assign(tmp.size(), -1);
    std::vector<int32_t> stack{0};
    int32_t next_id = 0;
    while (!stack.empty()) {
        int32_t t = stack.back();
        stack.pop_back();
        order[t] = next_id++;
        // push right first so the left subtree is numbered first
        if (tmp[t].child[1] != -1) stack.push_back(tmp[t].child[1]);
        if (tmp[t].child[0] != -1) stack.push_back(tmp[t].child[0]);
    }
    for (size_t t = 0; t < tmp.size(); ++t) {
        node& nd = nodes_[order[t]];
        nd.left = tmp[t].child[0] == -1 ? -1 : order[tmp[t].child[0]];
        nd.right = tmp[t].child[1] == -1 ? -1 : order[tmp[t].child[1]];
        nd.symbol_left = tmp[t].leaf_sym[0];
        nd.symbol_right = tmp[t].leaf_sym[1];
        if (!tmp[t].child_is_leaf[0] && tmp[t].child[0] == -1)
            throw std::runtime_error("wavelet_tree: dangling tree node");
        if (!tmp[t].child_is_leaf[1] && tmp[t].child[1] == -1)
            throw std::runtime_error("wavelet_tree: dangling tree node");
    }
}

void wavelet_tree::build_nodes(std::span<const uint32_t> seq, bv_config cfg) {
    if (nodes_.empty()) return;  // degenerate single-symbol tree stores no bits

    auto code_bit = [&](uint32_t sym, unsigned depth) -> unsigned {
        size_t slot = static_cast<size_t>(slot_of_[sym]);
        return (code_.codes[slot] >> (code_.lengths[slot] - 1 - depth)) & 1;
    };
    auto make_bits = [&](bit_buffer&& bits) -> node_bits {
        if (cfg.k == bv_config::kind::plain) return {bit_vector(std::move(bits))};
        return {rrr_vector(bits, cfg.block_size)};
    };

    struct work {
        int32_t node;
        uint64_t begin, end;
    };
    std::vector<uint32_t> cur(seq.begin(), seq.end()), next;
    std::vector<work> level{{0, 0, n_}}, next_level;
    unsigned depth = 0;
    while (!level.empty()) {
        next_level.clear();
        uint64_t next_size = 0;
        std::vector<uint64_t> left_counts(level.size(), 0);
        for (size_t w = 0; w < level.size(); ++w) {
            const work& wk = level[w];
            bit_buffer bits(wk.end - wk.begin);
            for (uint64_t i = wk.begin; i < wk.end; ++i) {
                if (code_bit(cur[i], depth))
                    bits.set_bit(i - wk.begin, true);
                else
                    ++left_counts[w];
            }
            nodes_[wk.node].bits = make_bits(std::move(bits));
            const node& nd = nodes_[wk.node];
            if (nd.left != -1) next_size += left_counts[w];
            if (nd.right != -1) next_size += (wk.end - wk.begin) - left_counts[w];
        }
        next.resize(next_size);
        std::vector<std::pair<uint64_t, uint64_t>> wp(level.size());  // (left, right) write pos
        uint64_t off = 0;
        for (size_t w = 0; w < level.size(); ++w) {
            const work& wk = level[w];
            const node& nd = nodes_[wk.node];
            uint64_t right_count = (wk.end - wk.begin) - left_counts[w];
            if (nd.left != -1) {
                wp[w].first = off;
                next_level.push_back({nd.left, off, off + left_counts[w]});
                off += left_counts[w];
            }
            if (nd.right != -1) {
                wp[w].second = off;
                next_level.push_back({nd.right, off, off + right_count});
                off += right_count;
            }
        }
        for (size_t w = 0; w < level.size(); ++w) {
            const work& wk = level[w];
            const node& nd = nodes_[wk.node];
            for (uint64_t i = wk.begin; i < wk.end; ++i) {
                if (code_bit(cur[i], depth)) {
                    if (nd.right != -1) next[wp[w].second++] = cur[i];
                } else {
                    if (nd.left != -1) next[wp[w].first++] = cur[i];
                }
            }
        }
        cur.swap(next);
        level.swap(next_level);
        ++depth;
    }
}

uint32_t wavelet_tree::access(uint64_t i) const {
    if (i >= n_) throw std::out_of_range("wavelet_tree::access: index past end");
    ++tls_counters().wt_accesses;
    if (nodes_.empty()) return code_.symbols[0];
    int32_t cur = 0;
    for (;;) {
        const node& nd = nodes_[cur];
        bool bit = nd.bits.access(i);
        ++tls_counters().bv_ranks;
        i = bit ? nd.bits.rank1(i) : nd.bits.rank0(i);
        if (bit) {
            if (nd.right == -1) return nd.symbol_right;
            cur = nd.right;
        } else {
            if (nd.left == -1) return nd.symbol_left;
            cur = nd.left;
        }
    }
}

uint64_t wavelet_tree::rank(uint32_t symbol, uint64_t i) const {
    if (i > n_) throw std::out_of_range("wavelet_tree::rank: index past end");
    ++tls_counters().wt_ranks;
    int64_t slot = symbol_slot(symbol);
    if (slot < 0) return 0;
    if (nodes_.empty()) return i;  // single-symbol alphabet
    unsigned len = code_.lengths[static_cast<size_t>(slot)];
    uint64_t bits = code_.codes[static_cast<size_t>(slot)];
    int32_t cur = 0;
    for (unsigned d = 0; d < len; ++d) {
        const node& nd = nodes_[cur];
        bool bit = (bits >> (len - 1 - d)) & 1;
        ++tls_counters().bv_ranks;
        i = bit ? nd.bits.rank1(i) : nd.bits.rank0(i);
        cur = bit ? nd.right : nd.left;
    }
    return i;
}

wavelet_tree::size_breakdown wavelet_tree::sizes() const {
    size_breakdown sb;
    sb.node_count = nodes_.size();
    sb.code_table_bits = code_.alphabet_size() * (32 + 8 + 64);
    for (const node& nd : nodes_) {
        sb.node_lengths += nd.bits.size();
        if (const auto* rrr = std::get_if<rrr_vector>(&nd.bits.bv)) {
            auto s = rrr->sizes();
            sb.class_bits += s.class_bits;
            sb.offset_bits += s.offset_bits;
            sb.sample_bits += s.sample_bits;
            sb.payload_bits += s.payload();
        } else {
            const auto& plain = std::get<bit_vector>(nd.bits.bv);
            sb.payload_bits += plain.payload_bits();
            sb.sample_bits += plain.sample_bits();
        }
    }
    return sb;
}

void wavelet_tree::serialize(std::ostream& out) const {
    write_u64(out, n_);
    write_u32(out, static_cast<uint32_t>(code_.alphabet_size()));
    for (size_t i = 0; i < code_.alphabet_size(); ++i) {
        write_u32(out, code_.symbols[i]);
        write_u8(out, code_.lengths[i]);
        write_u64(out, code_.codes[i]);
    }
    write_u32(out, static_cast<uint32_t>(nodes_.size()));
    for (const node& nd : nodes_) {
        if (const auto* rrr = std::get_if<rrr_vector>(&nd.bits.bv)) {
            write_u8(out, 1);
            rrr->serialize(out);
        } else {
            write_u8(out, 0);
            std::get<bit_vector>(nd.bits.bv).serialize(out);
        }
    }
}

wavelet_tree wavelet_tree::load(std::istream& in) {
    wavelet_tree wt;
    wt.n_ = read_u64(in);
    uint32_t m = read_u32(in);
    if (m == 0) throw std::runtime_error("wavelet_tree: empty alphabet in stream");
    wt.code_.symbols.resize(m);
    wt.code_.lengths.resize(m);
    wt.code_.codes.resize(m);
    for (uint32_t i = 0; i < m; ++i) {
        wt.code_.symbols[i] = read_u32(in);
        wt.code_.lengths[i] = read_u8(in);
        wt.code_.codes[i] = read_u64(in);
    }
    uint32_t max_sym = *std::max_element(wt.code_.symbols.begin(), wt.code_.symbols.end());
    wt.slot_of_.assign(static_cast<size_t>(max_sym) + 1, -1);
    for (uint32_t i = 0; i < m; ++i) wt.slot_of_[wt.code_.symbols[i]] = static_cast<int32_t>(i);
    wt.rebuild_shape();
    uint32_t node_count = read_u32(in);
    if (node_count != wt.nodes_.size())
        throw std::runtime_error("wavelet_tree: node count does not match code table");
    for (node& nd : wt.nodes_) {
        uint8_t kind = read_u8(in);
        if (kind == 1)
            nd.bits = node_bits{rrr_vector::load(in)};
        else if (kind == 0)
            nd.bits = node_bits{bit_vector::load(in)};
        else
            throw std::runtime_error("wavelet_tree: unknown bitvector kind");
    }
    return wt;
}

}  // namespace snt
