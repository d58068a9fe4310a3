#pragma once

#include <cstring>
#include <string>
#include <unordered_set>
#include <vector>

#include "nmsa/detail/dense.hpp"

namespace nmsa {

struct EailResult {
    bool feasible = false;
    /// Column definitions of a witness alignment (content-free: only the
    /// gap structure matters). Empty when infeasible.
    std::vector<BitVector> witness;
    long long states_visited = 0;
};

/// The matrix form of an induced-length vector: diagonal holds the
/// sequence lengths, entry (h,i) the number of symbols of s_h aligned
/// with symbols of s_i. This is the Recognizing-Intersection-Patterns
/// view of the same instance.
inline std::vector<std::vector<long long>> eail_to_rip(const IndexVector& n,
                                                       const std::vector<int>& L) {
    const int k = (int)n.size();
    if ((int)L.size() != pair_count(k))
        throw Error(Errc::ArityMismatch, "length vector needs C(k,2) entries");
    for (int x : n)
        if (x < 0) throw Error(Errc::LengthVectorOutOfRange, "sequence lengths must be non-negative");
    for (int h = 0, p = 0; h < k; ++h)
        for (int i = h + 1; i < k; ++i, ++p)
            if (L[p] < 0 || L[p] > n[h] + n[i])
                throw Error(Errc::LengthVectorOutOfRange, "induced length outside 0..n_h+n_i");
    std::vector<std::vector<long long>> M(k, std::vector<long long>(k, 0));
    for (int h = 0; h < k; ++h) M[h][h] = n[h];
    for (int h = 0, p = 0; h < k; ++h)
        for (int i = h + 1; i < k; ++i, ++p) {
            M[h][i] = (long long)n[h] + n[i] - L[p];
            M[i][h] = M[h][i];
        }
    return M;
}

namespace detail {

struct EailSearch {
    int k, P;
    std::vector<int> pair_h, pair_i;
    std::vector<unsigned> masks;
    long long max_states;
    long long visited = 0;
    std::unordered_set<std::string> dead;
    std::vector<BitVector> columns;

    EailSearch(int k_, long long max_states_) : k(k_), P(pair_count(k_)), max_states(max_states_) {
        pair_h.resize(P);
        pair_i.resize(P);
        for (int h = 0, p = 0; h < k; ++h)
            for (int i = h + 1; i < k; ++i, ++p) {
                pair_h[p] = h;
                pair_i[p] = i;
            }
        masks = masks_lex_desc(k);
    }

    static std::string pack(const IndexVector& r, const std::vector<int>& T) {
        std::string s((r.size() + T.size()) * sizeof(int), '\0');
        std::memcpy(s.data(), r.data(), r.size() * sizeof(int));
        std::memcpy(s.data() + r.size() * sizeof(int), T.data(), T.size() * sizeof(int));
        return s;
    }

    bool dfs(IndexVector& r, std::vector<int>& T) {
        if (++visited > max_states)
            throw Error(Errc::ResourceCapExceeded,
                        "induced-length search exceeded " + std::to_string(max_states) + " states");
        // Remaining widths must fit between the longer remainder and the
        // sum of remainders, else no completion exists.
        bool all_zero = true;
        for (int p = 0; p < P; ++p) {
            int rh = r[pair_h[p]], ri = r[pair_i[p]];
            if (T[p] < std::max(rh, ri) || T[p] > rh + ri) return false;
            if (rh || ri) all_zero = false;
        }
        if (all_zero) return true; // pruning forced T = 0 as well
        std::string key = pack(r, T);
        if (dead.count(key)) return false;
        for (unsigned m : masks) {
            if (!mask_within(m, r)) continue;
            bool ok = true;
            for (int p = 0; p < P; ++p)
                if (((m >> pair_h[p] & 1u) || (m >> pair_i[p] & 1u)) && T[p] < 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) --r[i];
            for (int p = 0; p < P; ++p)
                if ((m >> pair_h[p] & 1u) || (m >> pair_i[p] & 1u)) --T[p];
            columns.push_back(mask_to_bits(m, k));
            if (dfs(r, T)) return true;
            columns.pop_back();
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) ++r[i];
            for (int p = 0; p < P; ++p)
                if ((m >> pair_h[p] & 1u) || (m >> pair_i[p] & 1u)) ++T[p];
        }
        dead.insert(std::move(key));
        return false;
    }
};

} // namespace detail

/// Decides whether some alignment of sequences with lengths n has
/// induced lengths exactly L, returning witness columns when one does.
/// Backtracking with memoized dead states; guarded, since the general
/// decision problem is hard.
inline EailResult eail_check(const IndexVector& n, const std::vector<int>& L,
                             long long max_states = 10'000'000) {
    eail_to_rip(n, L); // validates shape and bounds
    detail::EailSearch search((int)n.size(), max_states);
    IndexVector r = n;
    std::vector<int> T = L;
    EailResult res;
    res.feasible = search.dfs(r, T);
    res.witness = res.feasible ? search.columns : std::vector<BitVector>{};
    res.states_visited = search.visited;
    return res;
}

} // namespace nmsa
