/*
 * text.hpp
 *
 * Trajectory-string assembly, suffix array (SA-IS), BWT, the cumulative
 * count array C, and empirical entropy.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace snt {

using trajectory = std::vector<uint32_t>;  // edge ids in travel order

// Concatenation of reversed trajectories: T1^r $ T2^r $ ... TN^r $ #
// with # encoded as 0 and $ as 1, so the required order # < $ < edge
// holds numerically. Edge id e is stored as e + 2.
struct trajectory_string {
    static constexpr uint32_t terminator = 0;   // #
    static constexpr uint32_t separator = 1;    // $
    static constexpr uint32_t edge_offset = 2;

    std::vector<uint32_t> symbols;
    uint64_t num_trajectories = 0;
    uint32_t sigma = 0;  // max edge id + 3, stable across datasets sharing a map

    static trajectory_string build(const std::vector<trajectory>& trajectories);

    uint64_t size() const { return symbols.size(); }

    static bool is_sentinel(uint32_t sym) { return sym < edge_offset; }
    static uint32_t encode_edge(uint32_t edge_id) { return edge_id + edge_offset; }
    static uint32_t decode_edge(uint32_t sym) { return sym - edge_offset; }

    // inverse of build; used by tests and the extraction CLI
    std::vector<trajectory> split() const;
};

// Suffix array of an arbitrary uint32 sequence (no sentinel requirements;
// one is appended internally). O(n) via induced sorting.
std::vector<uint64_t> suffix_array(std::span<const uint32_t> s);

struct bwt_text {
    std::vector<uint32_t> bwt;
    std::vector<uint64_t> sa;  // rank -> rotation start; retained for oracles
    std::vector<uint64_t> c;   // c[w] = symbols smaller than w; c[sigma] = n
    uint32_t sigma = 0;

    static bwt_text build(const trajectory_string& ts);

    uint64_t size() const { return bwt.size(); }

    // reproduce the text by walking the LF mapping; test oracle
    std::vector<uint32_t> invert() const;
};

// C[w] = number of symbols in seq lexicographically smaller than w,
// returned with the extra C[sigma] = |seq| entry.
std::vector<uint64_t> c_array(std::span<const uint32_t> seq, uint32_t sigma);

// 0th order empirical entropy, bits per symbol
double h0(std::span<const uint32_t> seq);

// k-th order empirical entropy: contexts are the k-grams of seq and each
// contributes the symbols immediately preceding its occurrences, weighted
// by |seq|. k = 0 falls back to h0; monotone non-increasing in k.
double hk(std::span<const uint32_t> seq, unsigned k);

struct parse_error : std::runtime_error {
    size_t line;
    parse_error(size_t line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// One trajectory per line, whitespace-separated decimal edge ids.
// Lines starting with '#' are comments; empty lines are rejected.
std::vector<trajectory> read_trajectories(std::istream& in);
std::vector<trajectory> read_trajectory_file(const std::string& path);
void write_trajectories(std::ostream& out, const std::vector<trajectory>& trajectories);
void write_trajectory_file(const std::string& path, const std::vector<trajectory>& trajectories);

}  // namespace snt
