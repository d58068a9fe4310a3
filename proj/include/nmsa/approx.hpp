#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nmsa/pairwise.hpp"
#include "nmsa/scoring.hpp"

namespace nmsa {

enum class PairCriterion { A, N };

/// A star with center c: one pairwise alignment per other sequence, each
/// pairing s_h with s_c. Arm rows are ordered by sequence index, so the
/// center sits in row 1 of arms[h] when h < c and in row 0 when h > c.
struct Star {
    int center = 0;
    std::vector<Alignment> arms; // indexed by h; arms[center] unused

    const Alignment& arm(int h) const { return arms[h]; }
    int center_row_of_arm(int h) const { return h < center ? 1 : 0; }
};

inline Rational pair_score(PairCriterion crit, const ScoringMatrix& g, const Alignment& A) {
    return crit == PairCriterion::A ? score_A(g, A) : score_N(g, A);
}

/// Sum of arm scores under the chosen pair criterion.
inline Rational star_score(const Star& X, const ScoringMatrix& g, PairCriterion crit) {
    Rational total(0);
    for (int h = 0; h < (int)X.arms.size(); ++h)
        if (h != X.center) total += pair_score(crit, g, X.arm(h));
    return total;
}

/// The v-optimal star: the center minimizing the sum of optimal pairwise
/// scores against every other sequence; ties go to the smallest index.
inline Star optimal_star(const KSequence& S, const ScoringMatrix& g, PairCriterion crit) {
    detail::ensure_sequences_over(g, S);
    const int k = S.k();
    if (k < 2) throw Error(Errc::ValidationError, "a star needs k >= 2");
    auto pair_opt = [&](int a, int b) {
        return crit == PairCriterion::A ? dist_A(S.sequence(a), S.sequence(b), g)
                                        : dist_N(S.sequence(a), S.sequence(b), g);
    };
    int best_c = 0;
    Rational best_sum(0);
    for (int c = 0; c < k; ++c) {
        Rational sum(0);
        for (int h = 0; h < k; ++h) {
            if (h == c) continue;
            sum += pair_opt(std::min(h, c), std::max(h, c)).value;
        }
        if (c == 0 || sum < best_sum) {
            best_sum = sum;
            best_c = c;
        }
    }
    Star X;
    X.center = best_c;
    X.arms.resize(k);
    for (int h = 0; h < k; ++h) {
        if (h == best_c) continue;
        X.arms[h] = pair_opt(std::min(h, best_c), std::max(h, best_c)).alignment;
    }
    return X;
}

/// Rewrites every splittable substitution column [x,y] as the staggered
/// pair [x,-], [-,y]. A column splits when the cheaper of its two indel
/// costs does not exceed its substitution cost.
inline Alignment split_alignment(const Alignment& X, const ScoringMatrix& g) {
    if (X.k() != 2) throw Error(Errc::WrongRowCount, "splitting is defined on 2-row alignments");
    std::string top, bottom;
    for (int j = 0; j < X.width(); ++j) {
        char x = X.row(0)[j], y = X.row(1)[j];
        bool splittable = x != kGap && y != kGap &&
                          std::min(g.at(y, kGap), g.at(x, kGap)) <= g.at(x, y);
        if (splittable) {
            top += x;
            bottom += kGap;
            top += kGap;
            bottom += y;
        } else {
            top += x;
            bottom += y;
        }
    }
    return Alignment({std::move(top), std::move(bottom)});
}

/// Splits every arm; the result is a star over the same center.
inline Star star_splitting(const Star& X, const ScoringMatrix& g) {
    Star Y;
    Y.center = X.center;
    Y.arms.resize(X.arms.size());
    for (int h = 0; h < (int)X.arms.size(); ++h)
        if (h != X.center) Y.arms[h] = split_alignment(X.arm(h), g);
    return Y;
}

/// Builds an alignment of S inducing every arm of the star exactly:
/// symbols aligned with a center symbol in an arm stay aligned with it
/// (and hence with each other), and symbols an arm leaves unmatched are
/// emitted as single-symbol columns, in arm order, between the center
/// positions they fall between.
inline Alignment compatible_align(const Star& Y, const KSequence& S) {
    const int k = S.k();
    const int c = Y.center;
    if ((int)Y.arms.size() != k || c < 0 || c >= k)
        throw Error(Errc::IncoherentStar, "star shape does not match the k-sequence");
    const Sequence& sc = S.sequence(c);
    const int nc = (int)sc.size();

    // match[h][p]  = what arm h aligns with center symbol p (symbol or gap)
    // pending[h][p] = symbols of s_h the arm places between center symbols p-1 and p
    std::vector<std::vector<char>> match(k);
    std::vector<std::vector<std::string>> pending(k);
    for (int h = 0; h < k; ++h) {
        if (h == c) continue;
        const Alignment& arm = Y.arm(h);
        if (arm.k() != 2) throw Error(Errc::IncoherentStar, "star arm is not a 2-row alignment");
        const int crow = Y.center_row_of_arm(h), orow = 1 - crow;
        if (arm.row_degapped(crow) != sc)
            throw Error(Errc::IncoherentStar,
                        "arm " + std::to_string(h + 1) + " center row does not degap to the center");
        if (arm.row_degapped(orow) != S.sequence(h))
            throw Error(Errc::IncoherentStar,
                        "arm " + std::to_string(h + 1) + " does not degap to its sequence");
        match[h].assign(nc, kGap);
        pending[h].assign(nc + 1, "");
        int cpos = 0;
        for (int j = 0; j < arm.width(); ++j) {
            char cc = arm.row(crow)[j], oc = arm.row(orow)[j];
            if (cc != kGap)
                match[h][cpos++] = oc;
            else
                pending[h][cpos] += oc; // never a gap: no all-gap arm columns
        }
    }

    std::vector<std::string> rows(k);
    auto emit_single = [&](int h, char x) {
        for (int i = 0; i < k; ++i) rows[i] += (i == h ? x : kGap);
    };
    for (int p = 0; p <= nc; ++p) {
        for (int h = 0; h < k; ++h) {
            if (h == c) continue;
            for (char x : pending[h][p]) emit_single(h, x);
        }
        if (p < nc)
            for (int i = 0; i < k; ++i) rows[i] += (i == c ? sc[p] : match[i][p]);
    }
    return validate_alignment(rows, S);
}

struct ApproxResult {
    Alignment alignment;
    Rational value;
    int center = 0;
    std::string guarantee; // "2", "6", "12" or "none"
};

/// Star approximation for the SP criterion. With a classical metric
/// matrix the optimal-star alignment alone is a 2-approximation; in the
/// wider class that induces an A-distance, splitting the arms first
/// gives a 6-approximation. Out-of-class matrices still produce a valid
/// alignment, tagged with no guarantee.
inline ApproxResult approx_msa(const KSequence& S, const ScoringMatrix& g) {
    MatrixClassReport rep = classify_matrix(g);
    Star X = optimal_star(S, g, PairCriterion::A);
    std::string tag = rep.in_MC ? "2" : rep.in_MW ? "6" : "none";
    Star Y = rep.in_MC ? std::move(X) : star_splitting(X, g);
    Alignment A = compatible_align(Y, S);
    Rational value = score_SP(g, A);
    return ApproxResult{std::move(A), std::move(value), Y.center, std::move(tag)};
}

/// Star approximation for criterion 2, using N-optimal arms; a
/// 12-approximation when the matrix induces a normalized distance.
inline ApproxResult approx_nmsa2(const KSequence& S, const ScoringMatrix& g) {
    MatrixClassReport rep = classify_matrix(g);
    Star X = optimal_star(S, g, PairCriterion::N);
    Star Y = star_splitting(X, g);
    Alignment A = compatible_align(Y, S);
    Rational value = score_V2(g, A);
    return ApproxResult{std::move(A), std::move(value), Y.center,
                        rep.in_MN ? std::string("12") : std::string("none")};
}

} // namespace nmsa
