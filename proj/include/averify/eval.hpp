// Scoring predictions against labeled ground truth.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "averify/corpus.hpp"
#include "averify/lexicon.hpp"
#include "averify/verifier.hpp"

namespace averify {

struct EvaluationReport {
    double accuracy = 0.0;
    // Area under the ROC curve of the scores (ties credited 0.5). Unset when
    // the truth contains only one class.
    std::optional<double> auc;
    std::uint64_t tp = 0, fn = 0, fp = 0, tn = 0;

    std::uint64_t total() const { return tp + fn + fp + tn; }
};

// Joins predictions to truth by case_id. Every truth case must be labeled
// and predicted exactly once, and every prediction must match a truth case;
// violations throw std::runtime_error naming the offending case_id.
EvaluationReport evaluate(const std::vector<Prediction>& predictions, const Corpus& truth);

std::string report_to_json(const EvaluationReport& report);

// Predictions as JSONL: {"case_id": ..., "score": ..., "label": ...}.
// save_predictions writes them sorted by case_id.
std::vector<Prediction> load_predictions(const std::string& path);
void save_predictions(std::vector<Prediction> predictions, const std::string& path);

// Per-case, per-member similarity table for score distribution analysis.
// CSV columns: case_id, category_id, label, atomic_similarity; rows sorted
// by case_id, members in model order. The corpus must be fully labeled.
void export_score_distributions(const Model& model, const Corpus& corpus,
                                const Lexicon& lex, const std::string& path);

}  // namespace averify
