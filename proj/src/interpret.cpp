#include "averify/interpret.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "averify/util.hpp"

namespace averify {

InterpretationResult interpret_vectors(const std::vector<std::string>& vocab,
                                       const std::vector<double>& x,
                                       const std::vector<double>& y,
                                       double threshold) {
    if (vocab.empty()) throw std::invalid_argument("no features for this category");
    if (x.size() != vocab.size() || y.size() != vocab.size()) {
        throw std::invalid_argument("interpret_vectors: vector length mismatch");
    }
    if (!(threshold > 0.0) || threshold > kMaxDistance) {
        throw std::domain_error("interpret_vectors: threshold outside (0, 2]");
    }

    InterpretationResult result;
    result.threshold = threshold;
    result.equilibrated_threshold = threshold / static_cast<double>(vocab.size());
    result.phi.reserve(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const double d_i = std::fabs(x[i] - y[i]);
        result.phi.push_back({vocab[i], d_i});
        const double importance = std::fabs(result.equilibrated_threshold - d_i);
        // Strictly below the equilibrated threshold argues for the same
        // author; at or above it argues against.
        if (d_i < result.equilibrated_threshold) {
            result.y_list.push_back({vocab[i], importance});
        } else {
            result.n_list.push_back({vocab[i], importance});
        }
    }
    const auto by_importance_desc = [](const ScoredFeature& a, const ScoredFeature& b) {
        return a.value > b.value;
    };
    std::stable_sort(result.y_list.begin(), result.y_list.end(), by_importance_desc);
    std::stable_sort(result.n_list.begin(), result.n_list.end(), by_importance_desc);
    return result;
}

InterpretationResult interpret_case(const VerificationCase& c,
                                    const AtomicEnsemble& atomic,
                                    const Lexicon& lex) {
    const ProfiledCase pc = profile(c);
    const FeatureVectorPair pair = make_vector_pair(pc.unknown, pc.known, atomic.category, lex);
    return interpret_vectors(pair.vocab, pair.x, pair.y, atomic.threshold);
}

void emit_importance_report(const InterpretationResult& result, const std::string& path) {
    if (path.empty()) throw std::invalid_argument("emit_importance_report: empty path");

    std::unordered_map<std::string, double> distance_of;
    distance_of.reserve(result.phi.size());
    double total_distance = 0.0;
    for (const ScoredFeature& f : result.phi) {
        distance_of.emplace(f.feature, f.value);
        total_distance += f.value;
    }

    std::string csv = "feature,elementwise_distance,side,importance\n";
    double sum_y = 0.0;
    double sum_n = 0.0;
    const auto append_rows = [&](const std::vector<ScoredFeature>& list, const char* side,
                                 double& sum) {
        for (const ScoredFeature& f : list) {
            sum += f.value;
            csv += csv_quote(f.feature);
            csv += ',';
            csv += format_double(distance_of.at(f.feature));
            csv += ',';
            csv += side;
            csv += ',';
            csv += format_double(f.value);
            csv += '\n';
        }
    };
    append_rows(result.y_list, "Y", sum_y);
    append_rows(result.n_list, "N", sum_n);
    write_text_file(path, csv);

    nlohmann::json summary{
        {"num_features", result.phi.size()},
        {"threshold", result.threshold},
        {"equilibrated_threshold", result.equilibrated_threshold},
        {"distance", total_distance},
        {"sum_importance_y", sum_y},
        {"sum_importance_n", sum_n},
        {"prediction", sum_y > sum_n ? "Y" : "N"},
    };
    std::filesystem::path summary_path(path);
    if (summary_path.extension() == ".json") {
        summary_path += ".summary.json";
    } else {
        summary_path.replace_extension(".json");
    }
    write_text_file(summary_path.string(), summary.dump(2) + "\n");
}

}  // namespace averify
