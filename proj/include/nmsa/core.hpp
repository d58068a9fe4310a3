#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nmsa/error.hpp"

namespace nmsa {

/// The reserved gap character. Never a member of any alphabet.
inline constexpr char kGap = '-';

/// Ordered set of printable symbols, gap excluded.
class Alphabet {
  public:
    explicit Alphabet(std::string_view symbols) : symbols_(symbols) {
        index_.fill(-1);
        if (symbols_.empty())
            throw Error(Errc::ValidationError, "alphabet must be non-empty");
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            unsigned char c = symbols_[i];
            if (c == (unsigned char)kGap)
                throw Error(Errc::ValidationError, "alphabet must not contain the gap character");
            if (c < 0x21 || c > 0x7e)
                throw Error(Errc::ValidationError, "alphabet symbols must be printable");
            if (index_[c] != -1)
                throw Error(Errc::ValidationError, std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
            index_[c] = (int)i;
        }
    }

    int size() const { return (int)symbols_.size(); }
    char symbol(int i) const { return symbols_[i]; }
    const std::string& symbols() const { return symbols_; }
    bool contains(char c) const { return index_[(unsigned char)c] >= 0; }

    /// Index of a symbol, or size() for the gap. Throws on anything else.
    int index_of(char c) const {
        if (c == kGap) return size();
        int i = index_[(unsigned char)c];
        if (i < 0)
            throw Error(Errc::AlphabetMismatch, std::string("symbol '") + c + "' not in alphabet");
        return i;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

  private:
    std::string symbols_;
    std::array<int, 256> index_{};
};

using Sequence = std::string;

/// Prefix cursor / DP index: one non-negative count per sequence.
using IndexVector = std::vector<int>;

/// Column selector: one bit per sequence (1 = consume a symbol, 0 = gap).
using BitVector = std::vector<std::uint8_t>;

/// An ordered tuple of k sequences over a common alphabet.
class KSequence {
  public:
    KSequence(Alphabet alphabet, std::vector<Sequence> sequences)
        : alphabet_(std::move(alphabet)), seqs_(std::move(sequences)) {
        if (seqs_.empty())
            throw Error(Errc::ValidationError, "a k-sequence needs k >= 1 sequences");
        for (const auto& s : seqs_)
            for (char c : s)
                if (!alphabet_.contains(c))
                    throw Error(Errc::AlphabetMismatch,
                                std::string("sequence symbol '") + c + "' not in alphabet");
    }

    int k() const { return (int)seqs_.size(); }
    const Alphabet& alphabet() const { return alphabet_; }
    const Sequence& sequence(int i) const { return seqs_[i]; }
    const std::vector<Sequence>& sequences() const { return seqs_; }

    IndexVector lengths() const {
        IndexVector n(seqs_.size());
        for (std::size_t i = 0; i < seqs_.size(); ++i) n[i] = (int)seqs_[i].size();
        return n;
    }

    long long total_length() const {
        long long t = 0;
        for (const auto& s : seqs_) t += (long long)s.size();
        return t;
    }

    bool all_empty() const {
        return std::all_of(seqs_.begin(), seqs_.end(), [](const Sequence& s) { return s.empty(); });
    }

  private:
    Alphabet alphabet_;
    std::vector<Sequence> seqs_;
};

/// Gap-padded character matrix. Construct through validate_alignment (or
/// alignment_from_bitvectors) so the row invariants are known to hold;
/// the raw constructor is for code that builds columns it already trusts.
class Alignment {
  public:
    Alignment() = default;
    explicit Alignment(std::vector<std::string> rows) : rows_(std::move(rows)) {}

    int k() const { return (int)rows_.size(); }
    int width() const { return rows_.empty() ? 0 : (int)rows_[0].size(); }
    const std::string& row(int i) const { return rows_[i]; }
    const std::vector<std::string>& rows() const { return rows_; }

    std::string column(int j) const {
        std::string col(rows_.size(), kGap);
        for (std::size_t i = 0; i < rows_.size(); ++i) col[i] = rows_[i][j];
        return col;
    }

    /// The bit vector defining column j.
    BitVector column_bits(int j) const {
        BitVector b(rows_.size(), 0);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i][j] != kGap) b[i] = 1;
        return b;
    }

    std::string row_degapped(int i) const {
        std::string s;
        for (char c : rows_[i])
            if (c != kGap) s += c;
        return s;
    }

    friend bool operator==(const Alignment& a, const Alignment& b) { return a.rows_ == b.rows_; }
    friend bool operator!=(const Alignment& a, const Alignment& b) { return !(a == b); }

  private:
    std::vector<std::string> rows_;
};

/// Checks the three alignment conditions against S: equal row lengths,
/// no all-gap column, each row degapping to its sequence.
inline Alignment validate_alignment(const std::vector<std::string>& rows, const KSequence& S) {
    if ((int)rows.size() != S.k())
        throw Error(Errc::RowMismatchesSequence, "row count differs from k");
    const std::size_t width = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != width)
            throw Error(Errc::UnequalRowLengths, "alignment rows have unequal lengths");
    for (std::size_t j = 0; j < width; ++j) {
        bool all_gap = true;
        for (const auto& r : rows)
            if (r[j] != kGap) { all_gap = false; break; }
        if (all_gap)
            throw Error(Errc::AllGapColumn, "all-gap column at position " + std::to_string(j + 1));
    }
    for (int i = 0; i < S.k(); ++i) {
        std::string degapped;
        for (char c : rows[i])
            if (c != kGap) degapped += c;
        if (degapped != S.sequence(i))
            throw Error(Errc::RowMismatchesSequence,
                        "row " + std::to_string(i + 1) + " does not degap to its sequence");
    }
    return Alignment(rows);
}

/// Restriction of A to the rows in I (0-based, strictly increasing),
/// with all-gap columns removed.
inline Alignment induced_alignment(const Alignment& A, const std::vector<int>& I) {
    if (I.empty()) throw Error(Errc::EmptyIndexSet, "induced alignment needs a non-empty index set");
    for (std::size_t t = 0; t < I.size(); ++t) {
        if (I[t] < 0 || I[t] >= A.k())
            throw Error(Errc::IndexOutOfRange, "induced index out of range");
        if (t > 0 && I[t] <= I[t - 1])
            throw Error(Errc::IndexOutOfRange, "induced index set must be strictly increasing");
    }
    std::vector<std::string> rows(I.size());
    for (int j = 0; j < A.width(); ++j) {
        bool all_gap = true;
        for (int i : I)
            if (A.row(i)[j] != kGap) { all_gap = false; break; }
        if (all_gap) continue;
        for (std::size_t t = 0; t < I.size(); ++t) rows[t] += A.row(I[t])[j];
    }
    return Alignment(std::move(rows));
}

/// The column b . S(j): entry i is s_i(j_i) when b_i = 1, gap otherwise.
inline std::string column_from_bits(const KSequence& S, const IndexVector& j, const BitVector& b) {
    if ((int)j.size() != S.k() || (int)b.size() != S.k())
        throw Error(Errc::ArityMismatch, "index/bit vector arity differs from k");
    std::string col(S.k(), kGap);
    for (int i = 0; i < S.k(); ++i) {
        if (!b[i]) continue;
        if (j[i] < 1 || j[i] > (int)S.sequence(i).size())
            throw Error(Errc::BitExceedsIndex, "bit set where index vector has no symbol");
        col[i] = S.sequence(i)[j[i] - 1];
    }
    return col;
}

/// Rebuilds the alignment whose column j is defined by bits[j]. The
/// component-wise sum of the bits must equal the length vector of S and
/// every column must consume at least one symbol.
inline Alignment alignment_from_bitvectors(const KSequence& S, const std::vector<BitVector>& bits) {
    IndexVector cursor(S.k(), 0);
    std::vector<std::string> rows(S.k());
    for (const auto& b : bits) {
        if ((int)b.size() != S.k())
            throw Error(Errc::ArityMismatch, "bit vector arity differs from k");
        bool any = false;
        for (int i = 0; i < S.k(); ++i) {
            if (b[i]) {
                any = true;
                ++cursor[i];
                if (cursor[i] > (int)S.sequence(i).size())
                    throw Error(Errc::BitSumMismatch, "bit vectors consume more symbols than available");
                rows[i] += S.sequence(i)[cursor[i] - 1];
            } else {
                rows[i] += kGap;
            }
        }
        if (!any) throw Error(Errc::ZeroColumn, "all-zero column bit vector");
    }
    for (int i = 0; i < S.k(); ++i)
        if (cursor[i] != (int)S.sequence(i).size())
            throw Error(Errc::BitSumMismatch, "bit vectors do not consume every symbol");
    return Alignment(std::move(rows));
}

/// Enumerates every index vector j <= n, ordered so that j comes before
/// h whenever, at the highest position where they differ, j has the
/// smaller entry. Equivalently an odometer whose *first* component spins
/// fastest; this is a topological order, and it matches the linear
/// layout of the dense DP tables.
template <typename Fn>
inline void for_each_index_vector(const IndexVector& n, Fn&& fn) {
    IndexVector v(n.size(), 0);
    for (;;) {
        fn(static_cast<const IndexVector&>(v));
        std::size_t i = 0;
        while (i < v.size() && v[i] == n[i]) v[i++] = 0;
        if (i == v.size()) return;
        ++v[i];
    }
}

inline std::vector<IndexVector> index_vectors(const IndexVector& n) {
    std::vector<IndexVector> out;
    for_each_index_vector(n, [&](const IndexVector& v) { out.push_back(v); });
    return out;
}

/// Strict component-wise order on index vectors.
inline bool strictly_precedes(const IndexVector& a, const IndexVector& b) {
    bool lt = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) lt = true;
    }
    return lt;
}

} // namespace nmsa
