// Command-line front end: FASTA in, scoring-matrix files, one subcommand
// per algorithm family, JSON/TSV/text out.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nmsa/approx.hpp"
#include "nmsa/eail.hpp"
#include "nmsa/exact.hpp"
#include "nmsa/io.hpp"
#include "nmsa/oracle.hpp"
#include "nmsa/pairwise.hpp"

using json = nlohmann::ordered_json;
using namespace nmsa;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitUnsupported = 4;

int exit_code_for(Errc c) {
    switch (c) {
        case Errc::ResourceCapExceeded:
        case Errc::BudgetExceeded:
            return kExitResource;
        case Errc::UnsupportedCombination:
            return kExitUnsupported;
        default:
            return kExitValidation;
    }
}

struct CommonOpts {
    std::string output = "json";
    int decimals = 2;
    std::string rounding = "half-even";
};

Rational::Rounding rounding_mode(const CommonOpts& c) {
    return c.rounding == "trunc" ? Rational::Rounding::Truncate : Rational::Rounding::HalfEven;
}

json value_json(const Rational& v, const CommonOpts& c) {
    return json{{"num", v.num()}, {"den", v.den()}, {"decimal", v.to_decimal(c.decimals, rounding_mode(c))}};
}

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--output", c.output, "output format")
        ->check(CLI::IsMember({"json", "tsv", "text"}))
        ->capture_default_str();
    cmd->add_option("--decimals", c.decimals, "decimal digits in rendered values")
        ->check(CLI::Range(0, 18))
        ->capture_default_str();
    cmd->add_option("--rounding", c.rounding, "decimal rendering mode")
        ->check(CLI::IsMember({"half-even", "trunc"}))
        ->capture_default_str();
}

KSequence read_input(const std::string& input_path, const ScoringMatrix& g) {
    auto records = load_fasta(input_path);
    std::vector<std::string> seqs;
    for (auto& r : records) seqs.push_back(std::move(r.sequence));
    return KSequence(g.alphabet(), std::move(seqs));
}

void emit_result(const json& doc, const CommonOpts& c, const std::vector<std::string>& rows) {
    if (c.output == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (c.output == "tsv") {
        bool first = true;
        for (auto& [key, val] : doc.items()) {
            if (val.is_object() || val.is_array()) continue;
            if (!first) std::cout << '\t';
            std::cout << key << '=' << (val.is_string() ? val.get<std::string>() : val.dump());
            first = false;
        }
        if (doc.contains("value"))
            std::cout << "\tnum=" << doc["value"]["num"] << "\tden=" << doc["value"]["den"]
                      << "\tdecimal=" << doc["value"]["decimal"].get<std::string>();
        if (!rows.empty()) {
            std::cout << "\talignment=";
            for (std::size_t i = 0; i < rows.size(); ++i)
                std::cout << (i ? ";" : "") << rows[i];
        }
        std::cout << "\n";
    } else {
        for (auto& [key, val] : doc.items()) {
            if (key == "alignment" || key == "stats") continue;
            if (val.is_object() && val.contains("decimal")) {
                std::cout << key << ": " << val["num"] << "/" << val["den"] << " = "
                          << val["decimal"].get<std::string>() << "\n";
            } else if (!val.is_object() && !val.is_array()) {
                std::cout << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
                          << "\n";
            } else if (val.is_object()) {
                std::cout << key << ":";
                for (auto& [k2, v2] : val.items())
                    std::cout << " " << k2 << "=" << (v2.is_string() ? v2.get<std::string>() : v2.dump());
                std::cout << "\n";
            }
        }
        if (!rows.empty()) {
            std::cout << "alignment:\n#" << rows.size() << ' ' << rows[0].size() << "\n";
            for (const auto& r : rows) std::cout << r << "\n";
        }
    }
}

struct AlignConfig {
    std::string input, matrix, matrix_array;
    std::string criterion, method;
    long long max_cells = 100'000'000;
    long long budget = 10'000'000;
    CommonOpts common;
};

int run_align(const AlignConfig& cfg) {
    ScoringMatrix g = load_matrix(cfg.matrix);
    KSequence S = read_input(cfg.input, g);
    std::optional<MatrixArray> gs;
    if (!cfg.matrix_array.empty()) {
        if (cfg.criterion != "sp")
            throw Error(Errc::UnsupportedCombination, "--matrix-array is only supported with --criterion sp");
        gs = load_matrix_array(cfg.matrix_array, S.k(), g);
    }

    const bool pairwise = cfg.criterion == "a" || cfg.criterion == "n";
    if (pairwise && S.k() != 2)
        throw Error(Errc::ValidationError, "criterion '" + cfg.criterion + "' needs exactly 2 sequences");
    if (!pairwise && S.k() < 2)
        throw Error(Errc::ValidationError, "criterion '" + cfg.criterion + "' needs k >= 2 sequences");

    auto supported = [&]() {
        if (cfg.method == "exact" || cfg.method == "oracle") return true;
        if (cfg.method == "heuristic") return cfg.criterion == "n";
        if (cfg.method == "star") return cfg.criterion == "sp" || cfg.criterion == "v2";
        return false;
    };
    if (!supported())
        throw Error(Errc::UnsupportedCombination,
                    "method '" + cfg.method + "' does not support criterion '" + cfg.criterion + "'");
    if (gs && cfg.method == "star")
        throw Error(Errc::UnsupportedCombination, "--matrix-array is not supported with --method star");

    ExactOptions opts{cfg.max_cells};
    EnumerationBudget ebudget{cfg.budget, -1};
    Rational value;
    std::vector<std::string> rows;
    std::string guarantee = "exact";
    long long cells = 0, enumerated = 0;

    auto t0 = std::chrono::steady_clock::now();
    if (cfg.method == "exact") {
        if (pairwise) {
            PairwiseResult r = cfg.criterion == "a" ? dist_A(S.sequence(0), S.sequence(1), g)
                                                    : dist_N(S.sequence(0), S.sequence(1), g);
            value = r.value;
            rows = r.alignment.rows();
            cells = r.cells_computed;
        } else {
            ExactResult r = cfg.criterion == "sp"
                                ? (gs ? msa_exact_array(S, *gs, opts) : msa_exact(S, g, opts))
                            : cfg.criterion == "v1" ? nmsa1_exact(S, g, opts)
                            : cfg.criterion == "v2" ? nmsa2_exact(S, g, opts)
                                                    : nmsa3_exact(S, g, opts);
            value = r.value;
            rows = r.alignment.rows();
            cells = r.cells_computed;
        }
    } else if (cfg.method == "heuristic") {
        value = heuristic_N(S.sequence(0), S.sequence(1), g);
        PairwiseResult r = dist_A(S.sequence(0), S.sequence(1), g);
        rows = r.alignment.rows();
        cells = r.cells_computed;
        guarantee = "2";
    } else if (cfg.method == "star") {
        ApproxResult r = cfg.criterion == "sp" ? approx_msa(S, g) : approx_nmsa2(S, g);
        value = r.value;
        rows = r.alignment.rows();
        guarantee = r.guarantee;
    } else { // oracle
        ExactResult r = [&]() {
            if (gs) return brute_force_optimum_array(S, *gs, ebudget);
            if (pairwise)
                return brute_force_optimum(S, g,
                                           cfg.criterion == "a" ? OracleCriterion::SP
                                                                : OracleCriterion::V1,
                                           ebudget);
            OracleCriterion crit = cfg.criterion == "sp"   ? OracleCriterion::SP
                                   : cfg.criterion == "v1" ? OracleCriterion::V1
                                   : cfg.criterion == "v2" ? OracleCriterion::V2
                                                           : OracleCriterion::V3;
            return brute_force_optimum(S, g, crit, ebudget);
        }();
        value = r.value;
        rows = r.alignment.rows();
        enumerated = r.cells_computed;
    }
    auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();

    json doc;
    doc["criterion"] = cfg.criterion;
    doc["method"] = cfg.method;
    doc["value"] = value_json(value, cfg.common);
    doc["alignment"] = rows;
    doc["guarantee"] = guarantee;
    doc["stats"] = {{"cells", cells}, {"alignments_enumerated", enumerated}, {"wall_ms", wall_ms}};
    emit_result(doc, cfg.common, rows);
    return 0;
}

struct ScoreConfig {
    std::string input, matrix, alignment;
    CommonOpts common;
};

int run_score(const ScoreConfig& cfg) {
    ScoringMatrix g = load_matrix(cfg.matrix);
    KSequence S = read_input(cfg.input, g);
    std::ifstream in(cfg.alignment);
    if (!in) throw Error(Errc::ParseError, "cannot open alignment file '" + cfg.alignment + "'");
    Alignment A = parse_alignment_text(in, S);

    json crit;
    crit["sp"] = value_json(score_SP(g, A), cfg.common);
    crit["v1"] = value_json(score_V1(g, A), cfg.common);
    crit["v2"] = value_json(score_V2(g, A), cfg.common);
    crit["v3"] = value_json(score_V3(g, A), cfg.common);
    if (A.k() == 2) {
        crit["a"] = value_json(score_A(g, A), cfg.common);
        crit["n"] = value_json(score_N(g, A), cfg.common);
    }
    json doc;
    doc["k"] = A.k();
    doc["width"] = A.width();
    doc["criteria"] = crit;
    if (cfg.common.output == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        for (auto& [name, v] : crit.items())
            std::cout << name << (cfg.common.output == "tsv" ? "\t" : ": ")
                      << v["num"] << "/" << v["den"]
                      << (cfg.common.output == "tsv" ? "\t" : " = ")
                      << v["decimal"].get<std::string>() << "\n";
    }
    return 0;
}

int run_classify(const std::string& matrix_path, const CommonOpts& common) {
    ScoringMatrix g = load_matrix(matrix_path);
    MatrixClassReport rep = classify_matrix(g);
    json doc;
    doc["in_MC"] = rep.in_MC;
    doc["in_MW"] = rep.in_MW;
    doc["in_MN"] = rep.in_MN;
    json vio = json::array();
    for (const auto& v : rep.violations) vio.push_back({{"condition", v.condition}, {"witness", v.witness}});
    doc["violations"] = vio;
    if (common.output == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "MC: " << (rep.in_MC ? "yes" : "no") << "\n"
                  << "MW: " << (rep.in_MW ? "yes" : "no") << "\n"
                  << "MN: " << (rep.in_MN ? "yes" : "no") << "\n";
        for (const auto& v : rep.violations)
            std::cout << "violation " << v.condition << " (" << v.witness << ")\n";
    }
    return 0;
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back((int)nmsa::detail::parse_ll(tok, what));
    if (out.empty()) throw Error(Errc::ParseError, std::string("empty ") + what + " list");
    return out;
}

int run_eail(const std::string& n_csv, const std::string& l_csv, long long max_states,
             const CommonOpts& common) {
    IndexVector n = parse_int_list(n_csv, "length");
    std::vector<int> L = parse_int_list(l_csv, "induced length");
    auto rip = eail_to_rip(n, L); // validates dimensions and range
    EailResult res = eail_check(n, L, max_states);

    std::vector<std::string> witness_rows;
    if (res.feasible) {
        witness_rows.assign(n.size(), "");
        for (const auto& col : res.witness)
            for (std::size_t i = 0; i < n.size(); ++i) witness_rows[i] += col[i] ? 'x' : '-';
    }
    json doc;
    doc["n"] = n;
    doc["L"] = L;
    doc["feasible"] = res.feasible;
    doc["witness"] = witness_rows;
    doc["rip"] = rip;
    doc["stats"] = {{"states_visited", res.states_visited}};
    if (common.output == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << (res.feasible ? "Yes" : "No") << "\n";
        for (const auto& r : witness_rows) std::cout << r << "\n";
        std::cout << "RIP:\n";
        for (const auto& row : rip) {
            for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
            std::cout << "\n";
        }
    }
    return 0;
}

struct OracleConfig {
    std::string input, matrix, criterion = "sp";
    long long budget = 10'000'000;
    bool count_only = false;
    CommonOpts common;
};

int run_oracle(const OracleConfig& cfg) {
    ScoringMatrix g = load_matrix(cfg.matrix);
    KSequence S = read_input(cfg.input, g);
    EnumerationBudget budget{cfg.budget, -1};
    json doc;
    if (cfg.count_only) {
        doc["alignments"] = count_alignments(S, budget);
    } else {
        OracleCriterion crit = cfg.criterion == "sp"   ? OracleCriterion::SP
                               : cfg.criterion == "v1" ? OracleCriterion::V1
                               : cfg.criterion == "v2" ? OracleCriterion::V2
                                                       : OracleCriterion::V3;
        ExactResult r = brute_force_optimum(S, g, crit, budget);
        doc["criterion"] = cfg.criterion;
        doc["method"] = "oracle";
        doc["value"] = value_json(r.value, cfg.common);
        doc["alignment"] = r.alignment.rows();
        doc["stats"] = {{"alignments_enumerated", r.cells_computed}};
    }
    emit_result(doc, cfg.common, doc.contains("alignment")
                                     ? doc["alignment"].get<std::vector<std::string>>()
                                     : std::vector<std::string>{});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and approximate multiple sequence alignment under the "
                 "sum-of-pairs score and its three normalized variants"};
    app.require_subcommand(1);

    AlignConfig ac;
    auto* align = app.add_subcommand("align", "align sequences under a criterion");
    align->add_option("--input", ac.input, "FASTA input")->required();
    align->add_option("--matrix", ac.matrix, "scoring matrix (TSV)")->required();
    align->add_option("--matrix-array", ac.matrix_array, "per-pair matrix manifest");
    align->add_option("--criterion", ac.criterion, "scoring criterion")
        ->required()
        ->check(CLI::IsMember({"a", "n", "sp", "v1", "v2", "v3"}));
    align->add_option("--method", ac.method, "algorithm")
        ->required()
        ->check(CLI::IsMember({"exact", "star", "heuristic", "oracle"}));
    align->add_option("--max-cells", ac.max_cells, "resource cap on DP cells")->capture_default_str();
    align->add_option("--budget", ac.budget, "oracle enumeration budget")->capture_default_str();
    add_common(align, ac.common);

    ScoreConfig sc;
    auto* score = app.add_subcommand("score", "score a given alignment under every criterion");
    score->add_option("--input", sc.input, "FASTA input")->required();
    score->add_option("--matrix", sc.matrix, "scoring matrix (TSV)")->required();
    score->add_option("--alignment", sc.alignment, "alignment file ('#k width' + rows)")->required();
    add_common(score, sc.common);

    std::string classify_matrix_path;
    CommonOpts cc;
    auto* classify = app.add_subcommand("classify", "report matrix class membership");
    classify->add_option("--matrix", classify_matrix_path, "scoring matrix (TSV)")->required();
    add_common(classify, cc);

    std::string eail_n, eail_l;
    long long eail_states = 10'000'000;
    CommonOpts ec;
    auto* eail = app.add_subcommand("eail", "decide feasibility of an induced-length vector");
    eail->add_option("--n", eail_n, "sequence lengths, comma separated")->required();
    eail->add_option("--L", eail_l, "induced lengths per pair, comma separated")->required();
    eail->add_option("--max-states", eail_states, "search state cap")->capture_default_str();
    add_common(eail, ec);

    OracleConfig oc;
    auto* oracle = app.add_subcommand("oracle", "brute-force enumeration cross-checks");
    oracle->add_option("--input", oc.input, "FASTA input")->required();
    oracle->add_option("--matrix", oc.matrix, "scoring matrix (TSV)")->required();
    oracle->add_option("--criterion", oc.criterion, "criterion to minimize")
        ->check(CLI::IsMember({"sp", "v1", "v2", "v3"}))
        ->capture_default_str();
    oracle->add_option("--budget", oc.budget, "enumeration budget")->capture_default_str();
    oracle->add_flag("--count", oc.count_only, "only count the alignments");
    add_common(oracle, oc.common);

    try {
        app.parse(argc, argv);
        if (align->parsed()) return run_align(ac);
        if (score->parsed()) return run_score(sc);
        if (classify->parsed()) return run_classify(classify_matrix_path, cc);
        if (eail->parsed()) return run_eail(eail_n, eail_l, eail_states, ec);
        if (oracle->parsed()) return run_oracle(oc);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::overflow_error& e) {
        std::cerr << "error [Overflow]: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
