#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nmsa/core.hpp"
#include "nmsa/scoring.hpp"

namespace nmsa {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

inline long long parse_ll(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, std::string("bad ") + what + " '" + tok + "'");
    }
}

inline Rational parse_entry(const std::string& tok) {
    auto slash = tok.find('/');
    if (slash == std::string::npos) return Rational(parse_ll(tok, "matrix entry"));
    long long num = parse_ll(tok.substr(0, slash), "matrix entry numerator");
    long long den = parse_ll(tok.substr(slash + 1), "matrix entry denominator");
    if (den <= 0) throw Error(Errc::ParseError, "matrix entry denominator must be positive");
    return Rational(num, den);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scoring matrix files (TSV).
//
//   line 1:  the alphabet symbols, whitespace separated
//   then     one line per row of the square table over alphabet + '-',
//            entries are integers or p/q rationals; the (-,-) cell is
//            written as the literal '*'
// ---------------------------------------------------------------------------

inline ScoringMatrix parse_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty matrix file");
    std::string symbols;
    for (const auto& tok : detail::split_ws(detail::strip_cr(line))) {
        if (tok.size() != 1)
            throw Error(Errc::ParseError, "alphabet symbols must be single characters, got '" + tok + "'");
        symbols += tok[0];
    }
    Alphabet alphabet(symbols);
    const int side = alphabet.size() + 1;
    std::vector<Rational> entries((std::size_t)side * side, Rational(0));
    for (int r = 0; r < side; ++r) {
        if (!std::getline(in, line))
            throw Error(Errc::ParseError, "matrix row " + std::to_string(r + 1) + " missing");
        auto toks = detail::split_ws(detail::strip_cr(line));
        if ((int)toks.size() != side)
            throw Error(Errc::ParseError, "matrix row " + std::to_string(r + 1) + " needs " +
                                              std::to_string(side) + " entries");
        for (int c = 0; c < side; ++c) {
            bool is_gap_gap = (r == side - 1 && c == side - 1);
            if (is_gap_gap) {
                if (toks[c] != "*")
                    throw Error(Errc::ParseError, "the (-,-) cell must be the literal '*'");
                continue;
            }
            if (toks[c] == "*")
                throw Error(Errc::ParseError, "'*' is only allowed in the (-,-) cell");
            Rational e = detail::parse_entry(toks[c]);
            if (e < Rational(0))
                throw Error(Errc::ParseError, "matrix entries must be non-negative");
            entries[(std::size_t)r * side + c] = e;
        }
    }
    return ScoringMatrix(alphabet, std::move(entries)).canonicalized();
}

inline ScoringMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open matrix file '" + path + "'");
    return parse_matrix(in);
}

inline std::string format_matrix(const ScoringMatrix& g) {
    std::ostringstream out;
    const int side = g.side();
    for (int a = 0; a < g.alphabet().size(); ++a) {
        if (a) out << ' ';
        out << g.alphabet().symbol(a);
    }
    out << '\n';
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            if (c) out << '\t';
            if (r == side - 1 && c == side - 1)
                out << '*';
            else
                out << g.at_index(r, c).to_string();
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// FASTA ingestion. Record order is sequence order; lowercase folds to
// uppercase; validation against the matrix alphabet happens when the
// KSequence is built.
// ---------------------------------------------------------------------------

struct FastaRecord {
    std::string name;
    std::string sequence;
};

inline std::vector<FastaRecord> parse_fasta(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '>') {
            records.push_back({line.substr(1), ""});
            continue;
        }
        if (records.empty())
            throw Error(Errc::ParseError, "FASTA content before the first '>' header");
        for (char c : line) {
            if (std::isspace((unsigned char)c)) continue;
            records.back().sequence += (char)std::toupper((unsigned char)c);
        }
    }
    if (records.empty()) throw Error(Errc::ParseError, "no FASTA records found");
    return records;
}

inline std::vector<FastaRecord> load_fasta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open FASTA file '" + path + "'");
    return parse_fasta(in);
}

// ---------------------------------------------------------------------------
// Plain-text alignment format: a header line '#k width' followed by k
// rows of exactly `width` characters over the alphabet + '-'.
// ---------------------------------------------------------------------------

inline Alignment parse_alignment_text(std::istream& in, const KSequence& S) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty alignment file");
    line = detail::strip_cr(line);
    if (line.empty() || line[0] != '#')
        throw Error(Errc::ParseError, "alignment file must start with '#k width'");
    auto toks = detail::split_ws(line.substr(1));
    if (toks.size() != 2) throw Error(Errc::ParseError, "alignment header must be '#k width'");
    long long k = detail::parse_ll(toks[0], "alignment k");
    long long width = detail::parse_ll(toks[1], "alignment width");
    if (k != S.k())
        throw Error(Errc::ValidationError, "alignment k differs from the input sequences");
    std::vector<std::string> rows;
    for (long long i = 0; i < k; ++i) {
        if (!std::getline(in, line))
            throw Error(Errc::ParseError, "alignment row " + std::to_string(i + 1) + " missing");
        line = detail::strip_cr(line);
        if ((long long)line.size() != width)
            throw Error(Errc::ParseError,
                        "alignment row " + std::to_string(i + 1) + " is not " +
                            std::to_string(width) + " characters wide");
        rows.push_back(line);
    }
    return validate_alignment(rows, S);
}

inline std::string format_alignment_text(const Alignment& A) {
    std::ostringstream out;
    out << '#' << A.k() << ' ' << A.width() << '\n';
    for (int i = 0; i < A.k(); ++i) out << A.row(i) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Matrix-array manifest: TSV lines 'h i path' (1-based, h < i); pairs not
// listed fall back to a default matrix. Paths resolve relative to the
// manifest location.
// ---------------------------------------------------------------------------

inline MatrixArray load_matrix_array(const std::string& manifest_path, int k,
                                     const std::optional<ScoringMatrix>& fallback) {
    std::ifstream in(manifest_path);
    if (!in) throw Error(Errc::ParseError, "cannot open manifest '" + manifest_path + "'");
    std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
    std::vector<std::optional<ScoringMatrix>> mats(pair_count(k));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto toks = detail::split_ws(line);
        if (toks.size() != 3)
            throw Error(Errc::ParseError,
                        "manifest line " + std::to_string(lineno) + " must be 'h i path'");
        long long h = detail::parse_ll(toks[0], "pair index");
        long long i = detail::parse_ll(toks[1], "pair index");
        if (h < 1 || i <= h || i > k)
            throw Error(Errc::ParseError, "manifest pair (" + toks[0] + "," + toks[1] +
                                              ") must satisfy 1 <= h < i <= k");
        std::filesystem::path p(toks[2]);
        if (p.is_relative()) p = base / p;
        mats[pair_index((int)h - 1, (int)i - 1, k)] = load_matrix(p.string());
    }
    std::vector<ScoringMatrix> final_mats;
    for (int p = 0; p < pair_count(k); ++p) {
        if (mats[p]) {
            final_mats.push_back(std::move(*mats[p]));
        } else {
            if (!fallback)
                throw Error(Errc::ParseError,
                            "manifest leaves a pair unlisted and no fallback matrix was given");
            final_mats.push_back(*fallback);
        }
    }
    return MatrixArray(k, std::move(final_mats));
}

} // namespace nmsa
