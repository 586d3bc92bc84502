// Post-hoc interpretation of a single verification decision.
//
// For one case under one atomic ensemble, every shared-vocabulary feature
// contributes its elementwise distance |x_i - y_i|. Distributing the
// category threshold uniformly over m features gives the equilibrated
// threshold theta / m; features below it argue for "same author", the rest
// argue against, and each feature's importance is its margin to that
// per-feature threshold. The signed sums of the two lists reconstruct the
// decision: sum(Y importances) - sum(N importances) = theta - d.
#pragma once

#include <string>
#include <vector>

#include "averify/corpus.hpp"
#include "averify/features.hpp"
#include "averify/lexicon.hpp"
#include "averify/verifier.hpp"

namespace averify {

struct ScoredFeature {
    std::string feature;
    double value;  // elementwise distance in `phi`, importance in the lists
};

struct InterpretationResult {
    double threshold = 0.0;               // the atomic ensemble's theta
    double equilibrated_threshold = 0.0;  // theta / m
    std::vector<ScoredFeature> phi;       // per-feature distances, vocab order
    std::vector<ScoredFeature> y_list;    // supports Y, importance descending
    std::vector<ScoredFeature> n_list;    // supports N, importance descending
};

// Vocab, x, y must have equal nonzero length (an empty vocabulary has
// nothing to explain and throws std::invalid_argument, as does a length
// mismatch). A feature exactly at the equilibrated threshold lands in
// n_list with importance 0. Ties in importance keep vocabulary order.
InterpretationResult interpret_vectors(const std::vector<std::string>& vocab,
                                       const std::vector<double>& x,
                                       const std::vector<double>& y,
                                       double threshold);

InterpretationResult interpret_case(const VerificationCase& c,
                                    const AtomicEnsemble& atomic,
                                    const Lexicon& lex);

// Writes the report as CSV (feature, elementwise_distance, side, importance;
// Y rows before N rows, each side importance-descending) plus a JSON summary
// next to it at `path` with the extension swapped to ".json" (or
// ".summary.json" appended when `path` itself ends in ".json"). Doubles are
// written with shortest round-trip precision.
void emit_importance_report(const InterpretationResult& result, const std::string& path);

}  // namespace averify
