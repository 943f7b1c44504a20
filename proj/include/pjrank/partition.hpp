#pragma once

// Integer partitions and rank vectors.
//
// A partition lambda = (lambda_1 >= lambda_2 >= ... >= 1) indexes group
// types, moments and truncated sums throughout the library.  Conventions:
//   - the empty partition is a first-class value (sums start at mu = {});
//   - zero parts are dropped on construction;
//   - (lambda|mu) = sum_i lambda_i mu_i with the shorter sequence padded
//     by zeros; note (lambda|lambda) = sum lambda_i^2, not |lambda|^2;
//   - mu <= lambda componentwise is written contains(lambda, mu);
//   - every enumeration is emitted in graded lexicographic order (by
//     size, then ascending lexicographic on the padded part vectors), so
//     truncated sums are reproducible run to run.
//
// A RankVector is a weakly decreasing vector with *significant* trailing
// zeros: entry j prescribes the p^j-rank, so (1,0) and (1) are different
// events (lengths 2 and 1).

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pjrank {

class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::erase(parts_, 0);
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw std::invalid_argument("Partition: negative part");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }

    static Partition from_multiplicities(const std::map<int, int>& mults) {
        std::vector<int> parts;
        for (auto it = mults.rbegin(); it != mults.rend(); ++it) {
            auto [value, count] = *it;
            if (count < 0) throw std::invalid_argument("Partition: negative multiplicity");
            if (value <= 0 && count > 0) throw std::invalid_argument("Partition: nonpositive part value");
            parts.insert(parts.end(), count, value);
        }
        return Partition(std::move(parts));
    }

    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int x : parts_) ++m[x];
        return m;
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    // i is 0-based; parts beyond the length read as 0.
    int part(size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    long size() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

    Partition conjugate() const {
        std::vector<int> conj;
        if (!parts_.empty()) {
            conj.resize(parts_[0]);
            for (int k = 0; k < parts_[0]; ++k)
                conj[k] = static_cast<int>(std::count_if(parts_.begin(), parts_.end(),
                                                         [&](int x) { return x > k; }));
        }
        return Partition(std::move(conj));
    }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    auto operator<=>(const Partition& o) const = default;

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    // Accepts the comma form "2,1,1" and the multiplicity form "1^2 2^1";
    // the empty string is the empty partition.
    static Partition parse(std::string_view text);

private:
    std::vector<int> parts_;
};

inline long pairing(const Partition& a, const Partition& b) {
    long s = 0;
    size_t n = std::min(a.parts().size(), b.parts().size());
    for (size_t i = 0; i < n; ++i) s += static_cast<long>(a.parts()[i]) * b.parts()[i];
    return s;
}

inline bool contains(const Partition& lambda, const Partition& mu) {
    if (mu.length() > lambda.length()) return false;
    for (int i = 0; i < mu.length(); ++i)
        if (mu.parts()[i] > lambda.parts()[i]) return false;
    return true;
}

// Graded lexicographic order: by size, then lexicographically on parts.
inline bool graded_lex_less(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.parts() < b.parts();
}

namespace detail {

inline void subpartitions_rec(const std::vector<int>& lambda, size_t i, int prev,
                              std::vector<int>& current, std::vector<Partition>& out) {
    out.emplace_back(Partition(current));
    if (i >= lambda.size()) return;
    int cap = std::min(lambda[i], prev);
    for (int v = 1; v <= cap; ++v) {
        current.push_back(v);
        subpartitions_rec(lambda, i + 1, v, current, out);
        current.pop_back();
    }
}

}  // namespace detail

// All mu with mu <= lambda componentwise, each exactly once; the count is
// bounded by prod_i (lambda_i + 1).
inline std::vector<Partition> subpartitions(const Partition& lambda) {
    std::vector<Partition> out;
    std::vector<int> current;
    out.emplace_back();  // mu = {}
    for (int v = 1; v <= lambda.part(0); ++v) {
        current.assign(1, v);
        detail::subpartitions_rec(lambda.parts(), 1, v, current, out);
    }
    std::sort(out.begin(), out.end(), graded_lex_less);
    return out;
}

// Every partition with first part <= max_first and length <= max_len.
inline std::vector<Partition> partitions_up_to(int max_first, int max_len) {
    if (max_first < 0 || max_len < 0) throw std::invalid_argument("partitions_up_to: negative bound");
    std::vector<Partition> out;
    out.emplace_back();
    std::vector<int> current;
    auto rec = [&](auto&& self, int prev) -> void {
        if (static_cast<int>(current.size()) >= max_len) return;
        for (int v = 1; v <= prev; ++v) {
            current.push_back(v);
            out.emplace_back(Partition(current));
            self(self, v);
            current.pop_back();
        }
    };
    rec(rec, max_first);
    std::sort(out.begin(), out.end(), graded_lex_less);
    return out;
}

struct RankVector {
    std::vector<int> entries;  // weakly decreasing, >= 0; size() is the length ell >= 1

    explicit RankVector(std::vector<int> e) : entries(std::move(e)) {
        if (entries.empty()) throw std::invalid_argument("RankVector: length must be >= 1");
        for (size_t i = 0; i < entries.size(); ++i) {
            if (entries[i] < 0) throw std::invalid_argument("RankVector: negative entry");
            if (i > 0 && entries[i] > entries[i - 1])
                throw std::invalid_argument("RankVector: entries must be weakly decreasing");
        }
    }

    int length() const { return static_cast<int>(entries.size()); }
    int entry(size_t j) const { return j < entries.size() ? entries[j] : 0; }  // 0-based
    long sum() const { return std::accumulate(entries.begin(), entries.end(), 0L); }
    long self_pairing() const {
        long s = 0;
        for (int x : entries) s += static_cast<long>(x) * x;
        return s;
    }

    bool operator==(const RankVector& o) const { return entries == o.entries; }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < entries.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(entries[i]);
        }
        return s;
    }
};

inline long pairing(const Partition& a, const RankVector& r) {
    long s = 0;
    size_t n = std::min(a.parts().size(), r.entries.size());
    for (size_t i = 0; i < n; ++i) s += static_cast<long>(a.parts()[i]) * r.entries[i];
    return s;
}

// All weakly decreasing vectors of the given length with entries <= max_entry,
// in graded lexicographic order.
inline std::vector<RankVector> rank_vectors(int length, int max_entry) {
    if (length < 1) throw std::invalid_argument("rank_vectors: length must be >= 1");
    if (max_entry < 0) throw std::invalid_argument("rank_vectors: negative bound");
    std::vector<RankVector> out;
    std::vector<int> current(length, 0);
    auto rec = [&](auto&& self, int pos, int prev) -> void {
        if (pos == length) {
            out.emplace_back(RankVector(current));
            return;
        }
        for (int v = 0; v <= prev; ++v) {
            current[pos] = v;
            self(self, pos + 1, v);
        }
    };
    rec(rec, 0, max_entry);
    std::sort(out.begin(), out.end(), [](const RankVector& a, const RankVector& b) {
        long sa = a.sum(), sb = b.sum();
        if (sa != sb) return sa < sb;
        return a.entries < b.entries;
    });
    return out;
}

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string strip(std::string_view s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

inline int parse_small_int(const std::string& s, const char* what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(what);
        return v;
    } catch (...) {
        throw std::invalid_argument(std::string(what) + ": bad integer '" + s + "'");
    }
}

}  // namespace detail

inline Partition Partition::parse(std::string_view text) {
    std::string s = detail::strip(text);
    if (s.empty()) return Partition();
    if (s.find('^') != std::string::npos) {
        std::map<int, int> mults;
        for (const auto& rawtok : detail::split(s, ' ')) {
            std::string tok = detail::strip(rawtok);
            if (tok.empty()) continue;
            auto caret = tok.find('^');
            if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size())
                throw std::invalid_argument("Partition::parse: bad multiplicity token '" + tok + "'");
            int value = detail::parse_small_int(tok.substr(0, caret), "Partition::parse");
            int count = detail::parse_small_int(tok.substr(caret + 1), "Partition::parse");
            if (value <= 0 || count < 0) throw std::invalid_argument("Partition::parse: bad multiplicity");
            mults[value] += count;
        }
        return from_multiplicities(mults);
    }
    std::vector<int> parts;
    for (const auto& tok : detail::split(s, ',')) {
        std::string t = detail::strip(tok);
        if (t.empty()) throw std::invalid_argument("Partition::parse: empty component");
        parts.push_back(detail::parse_small_int(t, "Partition::parse"));
    }
    return Partition(std::move(parts));
}

// Rank vectors keep trailing zeros, so parsing is separate from Partition.
inline RankVector parse_rank_vector(std::string_view text) {
    std::string s = detail::strip(text);
    if (s.empty()) throw std::invalid_argument("parse_rank_vector: empty vector");
    std::vector<int> entries;
    for (const auto& tok : detail::split(s, ',')) {
        std::string t = detail::strip(tok);
        if (t.empty()) throw std::invalid_argument("parse_rank_vector: empty component");
        entries.push_back(detail::parse_small_int(t, "parse_rank_vector"));
    }
    return RankVector(std::move(entries));
}

}  // namespace pjrank
