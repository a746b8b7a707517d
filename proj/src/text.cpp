#include "snt/text.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace snt {

trajectory_string trajectory_string::build(const std::vector<trajectory>& trajectories) {
    if (trajectories.empty())
        throw std::invalid_argument("trajectory_string: empty trajectory set");
    uint64_t total = 0;
    uint32_t max_edge = 0;
    for (const auto& t : trajectories) {
        if (t.empty()) throw std::invalid_argument("trajectory_string: empty trajectory");
        total += t.size();
        for (uint32_t e : t) {
            if (e > std::numeric_limits<uint32_t>::max() - edge_offset - 1)
                throw std::invalid_argument("trajectory_string: edge id too large");
            max_edge = std::max(max_edge, e);
        }
    }
    trajectory_string ts;
    ts.num_trajectories = trajectories.size();
    ts.sigma = max_edge + edge_offset + 1;
    ts.symbols.reserve(total + trajectories.size() + 1);
    for (const auto& t : trajectories) {
        for (auto it = t.rbegin(); it != t.rend(); ++it)
            ts.symbols.push_back(encode_edge(*it));
        ts.symbols.push_back(separator);
    }
    ts.symbols.push_back(terminator);
    return ts;
}

std::vector<trajectory> trajectory_string::split() const {
    std::vector<trajectory> out;
    trajectory cur;
    for (uint32_t sym : symbols) {
        if (sym == terminator) break;
        if (sym == separator) {
            std::reverse(cur.begin(), cur.end());
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(decode_edge(sym));
        }
    }
    return out;
}

namespace {

// SA-IS induced-sorting construction. s[n-1] must be the unique minimum.
void sais_core(const int64_t* s, int64_t* sa, int64_t n, int64_t K) {
    if (n == 1) {
        sa[0] = 0;
        return;
    }
    std::vector<bool> is_s(n);
    is_s[n - 1] = true;
    for (int64_t i = n - 2; i >= 0; --i)
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    auto is_lms = [&](int64_t i) { return i > 0 && is_s[i] && !is_s[i - 1]; };

    std::vector<int64_t> counts(K, 0), bkt(K);
    for (int64_t i = 0; i < n; ++i) ++counts[s[i]];
    auto bucket_heads = [&] {
        int64_t sum = 0;
        for (int64_t c = 0; c < K; ++c) {
            bkt[c] = sum;
            sum += counts[c];
        }
    };
    auto bucket_tails = [&] {
        int64_t sum = 0;
        for (int64_t c = 0; c < K; ++c) {
            sum += counts[c];
            bkt[c] = sum;
        }
    };

    auto induce = [&] {
        // L-type left to right from bucket heads
        bucket_heads();
        for (int64_t i = 0; i < n; ++i) {
            int64_t j = sa[i] - 1;
            if (sa[i] > 0 && !is_s[j]) sa[bkt[s[j]]++] = j;
        }
        // S-type right to left from bucket tails
        bucket_tails();
        for (int64_t i = n - 1; i >= 0; --i) {
            int64_t j = sa[i] - 1;
            if (sa[i] > 0 && is_s[j]) sa[--bkt[s[j]]] = j;
        }
    };

    // first pass: approximate LMS order is enough to sort LMS substrings
    std::fill(sa, sa + n, -1);
    bucket_tails();
    for (int64_t i = 1; i < n; ++i)
        if (is_lms(i)) sa[--bkt[s[i]]] = i;
    induce();

    // name sorted LMS substrings
    int64_t nlms = 0;
    for (int64_t i = 0; i < n; ++i)
        if (is_lms(sa[i])) sa[nlms++] = sa[i];
    std::fill(sa + nlms, sa + n, -1);
    auto lms_equal = [&](int64_t a, int64_t b) {
        if (s[a] != s[b]) return false;
        for (int64_t d = 1;; ++d) {
            bool la = is_lms(a + d), lb = is_lms(b + d);
            if (la && lb) return true;
            if (la != lb) return false;
            if (s[a + d] != s[b + d]) return false;
        }
    };
    int64_t name = -1, prev = -1;
    for (int64_t i = 0; i < nlms; ++i) {
        int64_t pos = sa[i];
        if (prev == -1 || !lms_equal(prev, pos)) ++name;
        sa[nlms + pos / 2] = name;
        prev = pos;
    }

    std::vector<int64_t> lms_pos;
    lms_pos.reserve(nlms);
    for (int64_t i = 1; i < n; ++i)
        if (is_lms(i)) lms_pos.push_back(i);

    std::vector<int64_t> s1(nlms), sa1(nlms);
    {
        int64_t p = 0;
        for (int64_t i = nlms; i < n; ++i)
            if (sa[i] >= 0) s1[p++] = sa[i];
    }
    if (name + 1 == nlms) {
        for (int64_t i = 0; i < nlms; ++i) sa1[s1[i]] = i;
    } else {
        sais_core(s1.data(), sa1.data(), nlms, name + 1);
    }

    // final pass with LMS suffixes in true sorted order
    std::fill(sa, sa + n, -1);
    bucket_tails();
    for (int64_t i = nlms - 1; i >= 0; --i) {
        int64_t j = lms_pos[sa1[i]];
        sa[--bkt[s[j]]] = j;
    }
    induce();
}

}  // namespace

std::vector<uint64_t> suffix_array(std::span<const uint32_t> s) {
    const int64_t n = static_cast<int64_t>(s.size());
    if (n == 0) return {};
    // shift by one and append a unique smallest sentinel
    std::vector<int64_t> t(n + 1);
    int64_t K = 0;
    for (int64_t i = 0; i < n; ++i) {
        t[i] = static_cast<int64_t>(s[i]) + 1;
        K = std::max(K, t[i]);
    }
    t[n] = 0;
    std::vector<int64_t> sa(n + 1);
    sais_core(t.data(), sa.data(), n + 1, K + 1);
    std::vector<uint64_t> out(n);
    for (int64_t i = 1; i <= n; ++i) out[i - 1] = static_cast<uint64_t>(sa[i]);
    return out;
}

std::vector<uint64_t> c_array(std::span<const uint32_t> seq, uint32_t sigma) {
    std::vector<uint64_t> c(static_cast<size_t>(sigma) + 1, 0);
    for (uint32_t sym : seq) ++c[sym + 1];
    for (size_t w = 1; w <= sigma; ++w) c[w] += c[w - 1];
    return c;
}

bwt_text bwt_text::build(const trajectory_string& ts) {
    // the unique terminal # makes the rotation sort equal to the suffix sort
    bwt_text bt;
    bt.sigma = ts.sigma;
    bt.sa = suffix_array(ts.symbols);
    const uint64_t n = ts.size();
    bt.bwt.resize(n);
    for (uint64_t j = 0; j < n; ++j)
        bt.bwt[j] = ts.symbols[(bt.sa[j] + n - 1) % n];
    bt.c = c_array(ts.symbols, ts.sigma);
    return bt;
}

std::vector<uint32_t> bwt_text::invert() const {
    const uint64_t n = bwt.size();
    std::vector<uint64_t> lf(n);
    std::vector<uint64_t> seen(sigma, 0);
    uint64_t start = n;
    for (uint64_t j = 0; j < n; ++j) {
        lf[j] = c[bwt[j]] + seen[bwt[j]]++;
        if (bwt[j] == trajectory_string::terminator) start = j;
    }
    if (start == n) throw std::logic_error("bwt_text::invert: missing terminator");
    std::vector<uint32_t> text(n);
    uint64_t j = start;
    for (uint64_t pos = n; pos-- > 0;) {
        text[pos] = bwt[j];
        j = lf[j];
    }
    return text;
}

double h0(std::span<const uint32_t> seq) {
    if (seq.empty()) throw std::invalid_argument("h0: empty sequence");
    uint32_t max_sym = *std::max_element(seq.begin(), seq.end());
    std::vector<uint64_t> counts(static_cast<size_t>(max_sym) + 1, 0);
    for (uint32_t s : seq) ++counts[s];
    const double n = static_cast<double>(seq.size());
    double h = 0.0;
    for (uint64_t c : counts)
        if (c) h += (double(c) / n) * std::log2(n / double(c));
    return h;
}

double hk(std::span<const uint32_t> seq, unsigned k) {
    if (seq.empty()) throw std::invalid_argument("hk: empty sequence");
    if (k == 0) return h0(seq);
    if (k >= seq.size()) throw std::invalid_argument("hk: order must be smaller than the sequence");

    const uint64_t n = seq.size();
    // positions whose k-gram context has a preceding symbol
    std::vector<uint64_t> pos(n - k);
    for (uint64_t t = 1; t + k <= n; ++t) pos[t - 1] = t;
    std::sort(pos.begin(), pos.end(), [&](uint64_t a, uint64_t b) {
        return std::lexicographical_compare(seq.begin() + a, seq.begin() + a + k,
                                            seq.begin() + b, seq.begin() + b + k);
    });

    auto same_context = [&](uint64_t a, uint64_t b) {
        return std::equal(seq.begin() + a, seq.begin() + a + k, seq.begin() + b);
    };

    double total = 0.0;
    std::vector<uint32_t> preceding;
    for (size_t i = 0; i < pos.size();) {
        size_t j = i;
        preceding.clear();
        while (j < pos.size() && same_context(pos[i], pos[j])) {
            preceding.push_back(seq[pos[j] - 1]);
            ++j;
        }
        std::sort(preceding.begin(), preceding.end());
        const double m = static_cast<double>(preceding.size());
        for (size_t a = 0; a < preceding.size();) {
            size_t b = a;
            while (b < preceding.size() && preceding[b] == preceding[a]) ++b;
            const double cnt = static_cast<double>(b - a);
            total += cnt * std::log2(m / cnt);
            a = b;
        }
        i = j;
    }
    return total / static_cast<double>(n);
}

std::vector<trajectory> read_trajectories(std::istream& in) {
    std::vector<trajectory> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.front() == '#') continue;
        std::istringstream ss(line);
        trajectory t;
        std::string tok;
        while (ss >> tok) {
            errno = 0;
            char* end = nullptr;
            unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0' || tok.front() == '-')
                throw parse_error(lineno, "invalid edge id '" + tok + "'");
            if (errno == ERANGE || v > std::numeric_limits<uint32_t>::max() - 3)
                throw parse_error(lineno, "edge id out of range '" + tok + "'");
            t.push_back(static_cast<uint32_t>(v));
        }
        if (t.empty()) throw parse_error(lineno, "empty trajectory line");
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<trajectory> read_trajectory_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
    return read_trajectories(in);
}

void write_trajectories(std::ostream& out, const std::vector<trajectory>& trajectories) {
    for (const auto& t : trajectories) {
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) out << ' ';
            out << t[i];
        }
        out << '\n';
    }
}

void write_trajectory_file(const std::string& path, const std::vector<trajectory>& trajectories) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_trajectories(out, trajectories);
}

}  // namespace snt
