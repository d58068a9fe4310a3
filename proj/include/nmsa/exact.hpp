#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmsa/detail/dense.hpp"
#include "nmsa/scoring.hpp"

namespace nmsa {

struct ExactOptions {
    /// Abort (ResourceCapExceeded) before allocating a table whose
    /// estimated cell count exceeds this.
    long long max_cells = 100'000'000;
};

struct ExactResult {
    Rational value;
    Alignment alignment;
    std::string method;
    long long cells_computed = 0;
};

namespace detail {

inline ExactResult trivial_result(const KSequence& S, const char* method, long long cells) {
    // The unique alignment of an all-empty k-sequence is the empty one;
    // for k = 1 it is the sequence itself. Either way the score is 0.
    return ExactResult{Rational(0), Alignment(S.sequences()), method, cells};
}

struct MsaDP {
    const KSequence& S;
    IndexVector n;
    int k;
    IndexedSequences seqs;
    MixedRadix V;
    std::vector<unsigned> masks;
    std::vector<long long> mask_stride;
    std::vector<long long> D;

    MsaDP(const KSequence& S_, const Alphabet& alpha, long long cap)
        : S(S_), n(S_.lengths()), k(S_.k()), seqs(S_, alpha) {
        std::vector<int> radix(k);
        i128 cells = 1;
        for (int i = 0; i < k; ++i) {
            radix[i] = n[i] + 1;
            cells = sat_mul(cells, radix[i]);
        }
        check_cell_cap(cells, cap, "msa");
        V = MixedRadix(radix);
        masks = masks_lex_desc(k);
        mask_stride.assign(1u << k, 0);
        for (unsigned m : masks)
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) mask_stride[m] += V.stride[i];
        D.assign(V.size, 0);
    }

    template <typename CostFn>
    void fill(CostFn&& column_cost) {
        IndexVector v(k, 0);
        for (long long idx = 0; idx < V.size; ++idx) {
            if (idx > 0) {
                long long best = -1;
                for (unsigned m : masks) {
                    if (!mask_within(m, v)) continue;
                    long long cand = D[idx - mask_stride[m]] + column_cost(m, v);
                    if (best < 0 || cand < best) best = cand;
                }
                D[idx] = best;
            }
            for (int i = 0; i < k; ++i) {
                if (v[i] < n[i]) { ++v[i]; break; }
                v[i] = 0;
            }
        }
    }

    template <typename CostFn>
    std::vector<BitVector> traceback(CostFn&& column_cost) const {
        std::vector<BitVector> cols;
        IndexVector v = n;
        long long idx = V.size - 1;
        while (idx != 0) {
            for (unsigned m : masks) {
                if (!mask_within(m, v)) continue;
                if (D[idx - mask_stride[m]] + column_cost(m, v) == D[idx]) {
                    cols.push_back(mask_to_bits(m, k));
                    idx -= mask_stride[m];
                    for (int i = 0; i < k; ++i)
                        if (m >> i & 1u) --v[i];
                    break;
                }
            }
        }
        std::reverse(cols.begin(), cols.end());
        return cols;
    }
};

} // namespace detail

/// Exact SP-optimal multiple alignment (dense DP over all prefixes).
inline ExactResult msa_exact(const KSequence& S, const ScoringMatrix& g,
                             const ExactOptions& opts = {}) {
    detail::ensure_sequences_over(g, S);
    if (S.all_empty() || S.k() == 1) return detail::trivial_result(S, "msa_exact", 1);
    detail::ScaledMatrix m(g);
    detail::check_cost_headroom(m.max_cost, pair_count(S.k()), S.total_length());
    detail::MsaDP dp(S, g.alphabet(), opts.max_cells);
    auto cost = [&](unsigned mask, const IndexVector& v) {
        return detail::sp_column_cost(m, dp.seqs, mask, v);
    };
    dp.fill(cost);
    Alignment A = alignment_from_bitvectors(S, dp.traceback(cost));
    return ExactResult{Rational(dp.D.back(), m.scale), std::move(A), "msa_exact", dp.V.size};
}

/// SP-optimal alignment with one scoring matrix per sequence pair.
inline ExactResult msa_exact_array(const KSequence& S, const MatrixArray& gs,
                                   const ExactOptions& opts = {}) {
    if (gs.k() != S.k()) throw Error(Errc::ArityMismatch, "matrix array arity differs from k");
    for (int p = 0; p < pair_count(S.k()); ++p)
        detail::ensure_sequences_over(gs.at_pair(p), S);
    if (S.all_empty() || S.k() == 1) return detail::trivial_result(S, "msa_exact_array", 1);

    // One common scale across the array so cell values stay comparable.
    long long common = 1;
    std::vector<long long> own(pair_count(S.k()), 1);
    for (int p = 0; p < pair_count(S.k()); ++p) {
        for (const auto& e : gs.at_pair(p).entries()) own[p] = detail::checked_lcm(own[p], e.den());
        common = detail::checked_lcm(common, own[p]);
    }
    std::vector<detail::ScaledMatrix> per_pair;
    long long max_cost = 0;
    for (int p = 0; p < pair_count(S.k()); ++p) {
        per_pair.emplace_back(gs.at_pair(p), common / own[p]);
        max_cost = std::max(max_cost, per_pair.back().max_cost);
    }
    detail::check_cost_headroom(max_cost, pair_count(S.k()), S.total_length());

    detail::MsaDP dp(S, gs.alphabet(), opts.max_cells);
    auto cost = [&](unsigned mask, const IndexVector& v) {
        return detail::sp_column_cost_array(per_pair, dp.seqs, mask, v);
    };
    dp.fill(cost);
    Alignment A = alignment_from_bitvectors(S, dp.traceback(cost));
    return ExactResult{Rational(dp.D.back(), common), std::move(A), "msa_exact_array", dp.V.size};
}

namespace detail {

/// Length-stratified SP table D(v, L) shared by the width-normalized and
/// total-induced-length-normalized programs. `step(mask)` says how much a
/// column advances L; the answer is min over L of D(n, L) / L.
struct LayeredDP {
    const KSequence& S;
    IndexVector n;
    int k;
    long long layers; // L ranges over 0..layers-1... kept as count of L values
    IndexedSequences seqs;
    MixedRadix V;
    std::vector<unsigned> masks;
    std::vector<long long> vstride_full;
    std::vector<std::optional<long long>> D;

    LayeredDP(const KSequence& S_, const Alphabet& alpha, long long l_max, long long cap)
        : S(S_), n(S_.lengths()), k(S_.k()), layers(l_max + 1), seqs(S_, alpha) {
        std::vector<int> radix(k);
        i128 cells = layers;
        for (int i = 0; i < k; ++i) {
            radix[i] = n[i] + 1;
            cells = sat_mul(cells, radix[i]);
        }
        check_cell_cap(cells, cap, "layered dp");
        V = MixedRadix(radix);
        masks = masks_lex_desc(k);
        vstride_full.assign(1u << k, 0);
        for (unsigned m : masks)
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) vstride_full[m] += V.stride[i] * layers;
        D.assign(V.size * layers, std::nullopt);
    }

    long long cells() const { return V.size * layers; }

    template <typename CostFn, typename StepFn>
    void fill(CostFn&& column_cost, StepFn&& step) {
        IndexVector v(k, 0);
        for (long long vidx = 0; vidx < V.size; ++vidx) {
            long long base = vidx * layers;
            if (vidx == 0) {
                D[0] = 0;
            } else {
                for (long long L = 1; L < layers; ++L) {
                    std::optional<long long> best;
                    for (unsigned m : masks) {
                        if (!mask_within(m, v)) continue;
                        long long adv = step(m);
                        if (adv > L) continue;
                        const auto& prev = D[base - vstride_full[m] + (L - adv)];
                        if (!prev) continue;
                        long long cand = *prev + column_cost(m, v);
                        if (!best || cand < *best) best = cand;
                    }
                    D[base + L] = best;
                }
            }
            for (int i = 0; i < k; ++i) {
                if (v[i] < n[i]) { ++v[i]; break; }
                v[i] = 0;
            }
        }
    }

    /// Minimum of D(n, L)/L over L >= 1; smallest L wins ties.
    std::optional<std::pair<Rational, long long>> best_layer(long long scale) const {
        long long base = (V.size - 1) * layers;
        std::optional<std::pair<Rational, long long>> best;
        for (long long L = 1; L < layers; ++L) {
            const auto& cell = D[base + L];
            if (!cell) continue;
            Rational cand = Rational(*cell, scale) / Rational(L);
            if (!best || cand < best->first) best = {cand, L};
        }
        return best;
    }

    template <typename CostFn, typename StepFn>
    std::vector<BitVector> traceback(long long L_final, CostFn&& column_cost, StepFn&& step) const {
        std::vector<BitVector> cols;
        IndexVector v = n;
        long long vidx = V.size - 1, L = L_final;
        while (vidx != 0) {
            long long cur = *D[vidx * layers + L];
            for (unsigned m : masks) {
                if (!mask_within(m, v)) continue;
                long long adv = step(m);
                if (adv > L) continue;
                const auto& prev = D[vidx * layers - vstride_full[m] + (L - adv)];
                if (prev && *prev + column_cost(m, v) == cur) {
                    cols.push_back(mask_to_bits(m, k));
                    for (int i = 0; i < k; ++i)
                        if (m >> i & 1u) {
                            --v[i];
                            vidx -= V.stride[i];
                        }
                    L -= adv;
                    break;
                }
            }
        }
        std::reverse(cols.begin(), cols.end());
        return cols;
    }
};

} // namespace detail

/// Exact optimum under criterion 1 (SP-score over alignment length).
/// Table over prefixes x alignment length 0..N, N = total symbol count.
inline ExactResult nmsa1_exact(const KSequence& S, const ScoringMatrix& g,
                               const ExactOptions& opts = {}) {
    detail::ensure_sequences_over(g, S);
    if (S.all_empty()) return detail::trivial_result(S, "nmsa1_exact", 1);
    const long long N = S.total_length();
    detail::ScaledMatrix m(g);
    detail::check_cost_headroom(m.max_cost, pair_count(S.k()), N);
    detail::LayeredDP dp(S, g.alphabet(), N, opts.max_cells);
    auto cost = [&](unsigned mask, const IndexVector& v) {
        return detail::sp_column_cost(m, dp.seqs, mask, v);
    };
    auto step = [](unsigned) -> long long { return 1; };
    dp.fill(cost, step);
    auto best = dp.best_layer(m.scale);
    Alignment A = alignment_from_bitvectors(S, dp.traceback(best->second, cost, step));
    return ExactResult{best->first, std::move(A), "nmsa1_exact", dp.cells()};
}

/// Exact optimum under criterion 3 (SP-score over summed induced
/// lengths). A column's contribution to the length layer is the number
/// of pairs it touches: C(k,2) minus the pairs left entirely gapped.
inline ExactResult nmsa3_exact(const KSequence& S, const ScoringMatrix& g,
                               const ExactOptions& opts = {}) {
    detail::ensure_sequences_over(g, S);
    if (S.all_empty() || S.k() == 1) return detail::trivial_result(S, "nmsa3_exact", 1);
    const int k = S.k();
    const long long N = S.total_length();
    const long long l_max = (long long)(k - 1) * N;
    detail::ScaledMatrix m(g);
    detail::check_cost_headroom(m.max_cost, pair_count(k), N);
    detail::LayeredDP dp(S, g.alphabet(), l_max, opts.max_cells);
    std::vector<long long> norm(1u << k, 0);
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        int zeros = k - __builtin_popcount(mask);
        norm[mask] = (long long)pair_count(k) - pair_count(zeros);
    }
    auto cost = [&](unsigned mask, const IndexVector& v) {
        return detail::sp_column_cost(m, dp.seqs, mask, v);
    };
    auto step = [&](unsigned mask) { return norm[mask]; };
    dp.fill(cost, step);
    auto best = dp.best_layer(m.scale);
    Alignment A = alignment_from_bitvectors(S, dp.traceback(best->second, cost, step));
    return ExactResult{best->first, std::move(A), "nmsa3_exact", dp.cells()};
}

namespace detail {

/// Inner DP of the criterion-2 program: for a target induced-length
/// vector LT, computes the minimum gamma x LT weighted SP-score over
/// alignments of S whose induced lengths are exactly LT. The table is
/// laid out over the full bounds vector so one allocation can be reused
/// across every target the outer loop visits.
struct InducedLengthDP {
    const KSequence& S;
    IndexVector n;
    int k, P;
    IndexedSequences seqs;
    MixedRadix V;
    MixedRadix Lspace;
    std::vector<int> pair_h, pair_i;
    std::vector<unsigned> masks;
    std::vector<std::vector<int>> engaged;      // mask -> engaged pair indices
    std::vector<long long> lstride_mask;        // mask -> sum of strides of engaged pairs
    std::vector<long long> vstride_full;        // mask -> v-stride * |Lspace|
    ScaledMatrix base;
    std::vector<std::optional<long long>> D;
    long long cells_written = 0;

    // per-target state
    long long lambda = 1;
    long long wmax = 0;
    std::vector<std::vector<long long>> w; // per pair, side*side weighted costs

    InducedLengthDP(const KSequence& S_, const ScoringMatrix& g, const std::vector<int>& bounds,
                    long long cap)
        : S(S_), n(S_.lengths()), k(S_.k()), P(pair_count(S_.k())), seqs(S_, g.alphabet()),
          base(g) {
        std::vector<int> vradix(k), lradix(P);
        i128 cells = 1;
        for (int i = 0; i < k; ++i) {
            vradix[i] = n[i] + 1;
            cells = sat_mul(cells, vradix[i]);
        }
        for (int p = 0; p < P; ++p) {
            lradix[p] = bounds[p] + 1;
            cells = sat_mul(cells, lradix[p]);
        }
        check_cell_cap(cells, cap, "induced-length dp");
        V = MixedRadix(vradix);
        Lspace = MixedRadix(lradix);
        pair_h.resize(P);
        pair_i.resize(P);
        for (int h = 0, p = 0; h < k; ++h)
            for (int i = h + 1; i < k; ++i, ++p) {
                pair_h[p] = h;
                pair_i[p] = i;
            }
        masks = masks_lex_desc(k);
        engaged.assign(1u << k, {});
        lstride_mask.assign(1u << k, 0);
        vstride_full.assign(1u << k, 0);
        for (unsigned m : masks) {
            for (int p = 0; p < P; ++p)
                if ((m >> pair_h[p] & 1u) || (m >> pair_i[p] & 1u)) {
                    engaged[m].push_back(p);
                    lstride_mask[m] += Lspace.stride[p];
                }
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) vstride_full[m] += V.stride[i] * Lspace.size;
        }
        D.assign(V.size * Lspace.size, std::nullopt);
        w.assign(P, std::vector<long long>((std::size_t)base.side * base.side, 0));
    }

    long long scale() const { return base.scale * lambda; }

    void set_target(const std::vector<int>& target) {
        lambda = 1;
        wmax = 0;
        for (int p = 0; p < P; ++p)
            if (target[p] > 0) lambda = checked_lcm(lambda, target[p]);
        for (int p = 0; p < P; ++p) {
            if (target[p] == 0) {
                std::fill(w[p].begin(), w[p].end(), 0);
                continue;
            }
            long long f = lambda / target[p];
            for (std::size_t e = 0; e < base.cost.size(); ++e) {
                i128 v = (i128)base.cost[e] * f;
                if (v > (i128)(1LL << 60)) throw std::overflow_error("induced-length weights overflow");
                w[p][e] = (long long)v;
                wmax = std::max(wmax, (long long)v);
            }
        }
        check_cost_headroom(wmax, P, S.total_length());
    }

    long long column_cost(unsigned mask, const IndexVector& v) const {
        long long c = 0;
        for (int p : engaged[mask])
            c += w[p][(std::size_t)seqs.col_sym(pair_h[p], mask, v) * base.side +
                      seqs.col_sym(pair_i[p], mask, v)];
        return c;
    }

    /// Fills the table for the given target and returns D(n, target).
    std::optional<long long> run(const std::vector<int>& target) {
        set_target(target);
        IndexVector v(k, 0), Ld(P, 0);
        long long vbase = 0;
        for (long long vidx = 0; vidx < V.size; ++vidx, vbase += Lspace.size) {
            // enumerate L <= target (odometer over pair digits)
            std::fill(Ld.begin(), Ld.end(), 0);
            long long lidx = 0;
            for (;;) {
                ++cells_written;
                if (vidx == 0) {
                    D[lidx] = (lidx == 0) ? std::optional<long long>(0) : std::nullopt;
                } else {
                    std::optional<long long> best;
                    for (unsigned m : masks) {
                        if (!mask_within(m, v)) continue;
                        bool ok = true;
                        for (int p : engaged[m])
                            if (Ld[p] < 1) { ok = false; break; }
                        if (!ok) continue;
                        const auto& prev = D[vbase - vstride_full[m] + (lidx - lstride_mask[m])];
                        if (!prev) continue;
                        long long cand = *prev + column_cost(m, v);
                        if (!best || cand < *best) best = cand;
                    }
                    D[vbase + lidx] = best;
                }
                int p = 0;
                while (p < P && Ld[p] == target[p]) {
                    lidx -= (long long)Ld[p] * Lspace.stride[p];
                    Ld[p++] = 0;
                }
                if (p == P) break;
                ++Ld[p];
                lidx += Lspace.stride[p];
            }
            for (int i = 0; i < k; ++i) {
                if (v[i] < n[i]) { ++v[i]; break; }
                v[i] = 0;
            }
        }
        long long final_lidx = 0;
        for (int p = 0; p < P; ++p) final_lidx += (long long)target[p] * Lspace.stride[p];
        return D[(V.size - 1) * Lspace.size + final_lidx];
    }

    /// Walk the filled table back from (n, target). Call right after run().
    std::vector<BitVector> traceback(const std::vector<int>& target) const {
        std::vector<BitVector> cols;
        IndexVector v = n;
        std::vector<int> Ld(target.begin(), target.end());
        long long vidx = V.size - 1, lidx = 0;
        for (int p = 0; p < P; ++p) lidx += (long long)target[p] * Lspace.stride[p];
        while (vidx != 0) {
            long long cur = *D[vidx * Lspace.size + lidx];
            for (unsigned m : masks) {
                if (!mask_within(m, v)) continue;
                bool ok = true;
                for (int p : engaged[m])
                    if (Ld[p] < 1) { ok = false; break; }
                if (!ok) continue;
                const auto& prev = D[vidx * Lspace.size - vstride_full[m] + (lidx - lstride_mask[m])];
                if (prev && *prev + column_cost(m, v) == cur) {
                    cols.push_back(mask_to_bits(m, k));
                    for (int i = 0; i < k; ++i)
                        if (m >> i & 1u) {
                            --v[i];
                            vidx -= V.stride[i];
                        }
                    for (int p : engaged[m]) --Ld[p];
                    lidx -= lstride_mask[m];
                    break;
                }
            }
        }
        std::reverse(cols.begin(), cols.end());
        return cols;
    }
};

} // namespace detail

/// Value of the criterion-2 inner DP for one induced-length vector:
/// min over alignments with induced lengths exactly L of the gamma x L
/// weighted SP-score, or nullopt when no such alignment exists.
inline std::optional<Rational> nmsa2_induced_length_value(const KSequence& S,
                                                          const ScoringMatrix& g,
                                                          const std::vector<int>& L,
                                                          const ExactOptions& opts = {}) {
    detail::ensure_sequences_over(g, S);
    const int P = pair_count(S.k());
    if ((int)L.size() != P) throw Error(Errc::ArityMismatch, "length vector needs C(k,2) entries");
    IndexVector n = S.lengths();
    for (int h = 0, p = 0; h < S.k(); ++h)
        for (int i = h + 1; i < S.k(); ++i, ++p)
            if (L[p] < 0 || L[p] > n[h] + n[i])
                throw Error(Errc::LengthVectorOutOfRange, "induced length outside 0..n_h+n_i");
    if (S.k() == 1) return Rational(0);
    detail::InducedLengthDP dp(S, g, L, opts.max_cells);
    auto val = dp.run(L);
    if (!val) return std::nullopt;
    return Rational(*val, dp.scale());
}

/// Exact optimum under criterion 2 (sum of per-pair N-scores). Outer
/// loop over every candidate induced-length vector; inner DP constrained
/// to realize it exactly. Candidates that cannot bound any alignment
/// (some pair shorter than the longer of its two sequences) are skipped;
/// the skip never changes the result, only the work.
inline ExactResult nmsa2_exact(const KSequence& S, const ScoringMatrix& g,
                               const ExactOptions& opts = {}) {
    detail::ensure_sequences_over(g, S);
    if (S.all_empty() || S.k() == 1) return detail::trivial_result(S, "nmsa2_exact", 1);
    const int k = S.k(), P = pair_count(k);
    IndexVector n = S.lengths();
    std::vector<int> bounds(P), floors(P);
    for (int h = 0, p = 0; h < k; ++h)
        for (int i = h + 1; i < k; ++i, ++p) {
            bounds[p] = n[h] + n[i];
            floors[p] = std::max(n[h], n[i]);
        }
    detail::InducedLengthDP dp(S, g, bounds, opts.max_cells);

    std::optional<Rational> best;
    std::vector<int> best_target;
    std::vector<int> target(P, 0);
    for (;;) { // odometer over the induced-length space
        bool plausible = true;
        for (int p = 0; p < P; ++p)
            if (target[p] < floors[p]) { plausible = false; break; }
        if (plausible) {
            auto val = dp.run(target);
            if (val) {
                Rational cand(*val, dp.scale());
                if (!best || cand < *best) {
                    best = cand;
                    best_target = target;
                }
            }
        }
        int p = 0;
        while (p < P && target[p] == bounds[p]) target[p++] = 0;
        if (p == P) break;
        ++target[p];
    }

    dp.run(best_target); // restore the winning table for the walk back
    Alignment A = alignment_from_bitvectors(S, dp.traceback(best_target));
    return ExactResult{*best, std::move(A), "nmsa2_exact", dp.cells_written};
}

} // namespace nmsa
