// Distance-based verification: thresholds, similarity, ensembles, training.
//
// Per feature category, a case is scored by the Manhattan distance between
// the L1-normalized vectors of the unknown document and the known profile.
// Distances are mapped to [0, 1] similarities by a piecewise linear ramp
// anchored at a per-category threshold learned as the median training
// distance; with a balanced training corpus that median equalizes false
// accepts and false rejects. An ensemble scores a case with the median of
// its members' similarities and answers Y when the score exceeds 0.5.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "averify/corpus.hpp"
#include "averify/features.hpp"
#include "averify/lexicon.hpp"

namespace averify {

// Two L1-normalized vectors are at most 2 apart.
inline constexpr double kMaxDistance = 2.0;

// Manhattan distance; throws std::invalid_argument on length mismatch.
double distance(const std::vector<double>& x, const std::vector<double>& y);

// Linear ramp through (0, 1), (theta, 0.5), (d_max, 0). Requires
// 0 <= d <= d_max and 0 < theta <= d_max (std::domain_error otherwise);
// theta == d_max degenerates to the single ramp 1 - d / (2 * theta).
double similarity(double d, double d_max, double theta);

// Y exactly when the score exceeds 0.5; a score of exactly 0.5 is N.
Label label_for_score(double score);

struct AtomicEnsemble {
    CategoryId category;
    double threshold;  // in (0, kMaxDistance]
};

struct TrainingMeta {
    std::string corpus;
    double training_accuracy = 0.0;
    // Singleton accuracy per member, model order.
    std::vector<std::pair<CategoryId, double>> atomic_accuracies;
};

struct Model {
    std::vector<AtomicEnsemble> members;  // non-empty, ascending category id
    TrainingMeta training_meta;
};

struct Prediction {
    std::string case_id;
    double score;  // in [0, 1]
    Label label;
};

// Distance of one case under one category (profile, extract, normalize,
// Manhattan), clamped against rounding drift past kMaxDistance.
double case_distance(const VerificationCase& c, CategoryId id, const Lexicon& lex);

// rows[i][j] = distance of cases[i] under categories[j].
struct DistanceMatrix {
    std::vector<CategoryId> categories;
    std::vector<std::vector<double>> rows;
};

DistanceMatrix compute_distance_matrix(const std::vector<VerificationCase>& cases,
                                       const std::vector<CategoryId>& categories,
                                       const Lexicon& lex);

// Median distance per category. Throws on an empty matrix.
std::vector<AtomicEnsemble> thresholds_from_matrix(const DistanceMatrix& matrix);

std::vector<AtomicEnsemble> compute_thresholds(const std::vector<VerificationCase>& cases,
                                               const std::vector<CategoryId>& categories,
                                               const Lexicon& lex);

// Median of the members' similarities for one case.
double ensemble_similarity(const VerificationCase& c, const Model& model, const Lexicon& lex);

Prediction classify(const VerificationCase& c, const Model& model, const Lexicon& lex);

// One row of the exhaustive ensemble search, for audit output.
struct EnsembleCandidate {
    std::vector<CategoryId> members;
    double accuracy = 0.0;
    double median_atomic_accuracy = 0.0;
};

// Evaluates every non-empty subset of `thresholds` on the labeled cases and
// returns the winner under the ordering: training accuracy desc, member
// count desc, median singleton accuracy desc, then smallest category-id
// sequence. Cases must all be labeled.
Model select_optimal_ensemble(const std::vector<VerificationCase>& cases,
                              const std::vector<AtomicEnsemble>& thresholds,
                              const Lexicon& lex);

struct TrainingResult {
    Model model;
    std::vector<AtomicEnsemble> thresholds;  // all candidate categories
    // Singleton accuracy per candidate category, category order.
    std::vector<std::pair<CategoryId, double>> atomic_accuracies;
    std::vector<EnsembleCandidate> top_candidates;  // best first, at most 10
};

// Median thresholds plus exhaustive ensemble selection on a balanced
// labeled corpus. Throws std::invalid_argument on unlabeled or unbalanced
// input.
TrainingResult train_model(const Corpus& corpus,
                           const std::vector<CategoryId>& categories,
                           const Lexicon& lex);

// Model JSON round-trip. Serialized thresholds keep full precision, so a
// saved and reloaded model classifies identically.
std::string model_to_json(const Model& model);
Model model_from_json(std::string_view text, std::string_view origin = "<memory>");
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace averify
