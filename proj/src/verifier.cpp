#include "averify/verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <json.hpp>

#include "averify/util.hpp"

namespace averify {
namespace {

using json = nlohmann::json;

struct LabeledSims {
    std::vector<char> truth_y;                // per case
    std::vector<std::vector<double>> sims;    // [case][category]
};

// Similarity of every case under every atomic ensemble, plus truth bits.
LabeledSims similarity_table(const DistanceMatrix& matrix,
                             const std::vector<AtomicEnsemble>& thresholds,
                             const std::vector<VerificationCase>& cases) {
    if (matrix.categories.size() != thresholds.size()) {
        throw std::invalid_argument("distance matrix and thresholds disagree on categories");
    }
    LabeledSims out;
    out.truth_y.reserve(cases.size());
    out.sims.reserve(cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (!cases[i].label) {
            throw std::invalid_argument("unlabeled case '" + cases[i].case_id +
                                        "' in training input");
        }
        out.truth_y.push_back(*cases[i].label == Label::Y ? 1 : 0);
        std::vector<double> row(thresholds.size());
        for (std::size_t j = 0; j < thresholds.size(); ++j) {
            row[j] = similarity(matrix.rows[i][j], kMaxDistance, thresholds[j].threshold);
        }
        out.sims.push_back(std::move(row));
    }
    return out;
}

double subset_accuracy(const LabeledSims& table, std::uint32_t mask) {
    std::size_t hits = 0;
    std::vector<double> member_sims;
    member_sims.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (std::size_t i = 0; i < table.sims.size(); ++i) {
        member_sims.clear();
        for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
            member_sims.push_back(table.sims[i][std::countr_zero(bits)]);
        }
        const bool predicted_y = label_for_score(median(member_sims)) == Label::Y;
        if (predicted_y == (table.truth_y[i] != 0)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(table.sims.size());
}

// Full power-set search; returns candidates best-first under the ordering:
// accuracy desc, member count desc, median singleton accuracy desc, then
// smallest member-id sequence.
std::vector<EnsembleCandidate> search_ensembles(const DistanceMatrix& matrix,
                                                const std::vector<AtomicEnsemble>& thresholds,
                                                const std::vector<VerificationCase>& cases) {
    if (thresholds.empty()) throw std::invalid_argument("no atomic ensembles to search");
    if (thresholds.size() > 20) {
        throw std::invalid_argument("power-set search over more than 20 categories");
    }
    if (cases.empty()) throw std::invalid_argument("no training cases");

    const LabeledSims table = similarity_table(matrix, thresholds, cases);

    std::vector<double> atomic_acc(thresholds.size());
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
        atomic_acc[j] = subset_accuracy(table, std::uint32_t{1} << j);
    }

    const std::uint32_t subsets = (std::uint32_t{1} << thresholds.size()) - 1;
    std::vector<EnsembleCandidate> candidates;
    candidates.reserve(subsets);
    for (std::uint32_t mask = 1; mask <= subsets; ++mask) {
        EnsembleCandidate c;
        std::vector<double> member_acc;
        for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
            const std::size_t j = static_cast<std::size_t>(std::countr_zero(bits));
            c.members.push_back(thresholds[j].category);
            member_acc.push_back(atomic_acc[j]);
        }
        c.accuracy = subset_accuracy(table, mask);
        c.median_atomic_accuracy = median(std::move(member_acc));
        std::sort(c.members.begin(), c.members.end());
        candidates.push_back(std::move(c));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const EnsembleCandidate& a, const EnsembleCandidate& b) {
                  if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
                  if (a.members.size() != b.members.size())
                      return a.members.size() > b.members.size();
                  if (a.median_atomic_accuracy != b.median_atomic_accuracy)
                      return a.median_atomic_accuracy > b.median_atomic_accuracy;
                  return a.members < b.members;
              });
    return candidates;
}

void check_members(const std::vector<AtomicEnsemble>& members, const char* what) {
    if (members.empty()) throw std::invalid_argument(std::string(what) + ": no members");
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double theta = members[i].threshold;
        if (!(theta > 0.0) || !(theta <= kMaxDistance)) {
            throw std::domain_error(std::string(what) + ": threshold for " +
                                    std::string(category_name(members[i].category)) +
                                    " outside (0, 2]");
        }
        for (std::size_t k = i + 1; k < members.size(); ++k) {
            if (members[k].category == members[i].category) {
                throw std::invalid_argument(std::string(what) + ": duplicate category " +
                                            std::string(category_name(members[i].category)));
            }
        }
    }
}

json meta_to_json(const TrainingMeta& meta) {
    json atomic = json::object();
    for (const auto& [id, acc] : meta.atomic_accuracies) {
        atomic[std::string(category_name(id))] = acc;
    }
    return json{{"corpus", meta.corpus},
                {"training_accuracy", meta.training_accuracy},
                {"atomic_accuracies", atomic}};
}

}  // namespace

double distance(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("distance: vector length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += std::fabs(x[i] - y[i]);
    return sum;
}

double similarity(double d, double d_max, double theta) {
    if (!(d_max > 0.0)) throw std::domain_error("similarity: d_max must be positive");
    if (!(d >= 0.0) || d > d_max) {
        throw std::domain_error("similarity: distance outside [0, d_max]");
    }
    if (!(theta > 0.0) || theta > d_max) {
        throw std::domain_error("similarity: threshold outside (0, d_max]");
    }
    // The d <= theta branch first: with theta == d_max the second ramp is
    // degenerate and never applies.
    if (d <= theta) return 1.0 - d / (2.0 * theta);
    return 0.5 - (d - theta) / (2.0 * (d_max - theta));
}

Label label_for_score(double score) {
    return score > 0.5 ? Label::Y : Label::N;
}

double case_distance(const VerificationCase& c, CategoryId id, const Lexicon& lex) {
    const ProfiledCase pc = profile(c);
    const FeatureVectorPair pair = make_vector_pair(pc.unknown, pc.known, id, lex);
    return std::min(distance(pair.x, pair.y), kMaxDistance);
}

DistanceMatrix compute_distance_matrix(const std::vector<VerificationCase>& cases,
                                       const std::vector<CategoryId>& categories,
                                       const Lexicon& lex) {
    DistanceMatrix out;
    out.categories = categories;
    out.rows.reserve(cases.size());
    for (const VerificationCase& c : cases) {
        const ProfiledCase pc = profile(c);
        std::vector<double> row;
        row.reserve(categories.size());
        for (CategoryId id : categories) {
            const FeatureVectorPair pair = make_vector_pair(pc.unknown, pc.known, id, lex);
            row.push_back(std::min(distance(pair.x, pair.y), kMaxDistance));
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<AtomicEnsemble> thresholds_from_matrix(const DistanceMatrix& matrix) {
    if (matrix.rows.empty()) throw std::invalid_argument("no cases to derive thresholds from");
    std::vector<AtomicEnsemble> out;
    out.reserve(matrix.categories.size());
    for (std::size_t j = 0; j < matrix.categories.size(); ++j) {
        std::vector<double> column;
        column.reserve(matrix.rows.size());
        for (const auto& row : matrix.rows) column.push_back(row[j]);
        out.push_back({matrix.categories[j], median(std::move(column))});
    }
    return out;
}

std::vector<AtomicEnsemble> compute_thresholds(const std::vector<VerificationCase>& cases,
                                               const std::vector<CategoryId>& categories,
                                               const Lexicon& lex) {
    return thresholds_from_matrix(compute_distance_matrix(cases, categories, lex));
}

double ensemble_similarity(const VerificationCase& c, const Model& model, const Lexicon& lex) {
    check_members(model.members, "ensemble_similarity");
    const ProfiledCase pc = profile(c);
    std::vector<double> sims;
    sims.reserve(model.members.size());
    for (const AtomicEnsemble& member : model.members) {
        const FeatureVectorPair pair =
            make_vector_pair(pc.unknown, pc.known, member.category, lex);
        const double d = std::min(distance(pair.x, pair.y), kMaxDistance);
        sims.push_back(similarity(d, kMaxDistance, member.threshold));
    }
    return median(std::move(sims));
}

Prediction classify(const VerificationCase& c, const Model& model, const Lexicon& lex) {
    const double score = ensemble_similarity(c, model, lex);
    return {c.case_id, score, label_for_score(score)};
}

Model select_optimal_ensemble(const std::vector<VerificationCase>& cases,
                              const std::vector<AtomicEnsemble>& thresholds,
                              const Lexicon& lex) {
    check_members(thresholds, "select_optimal_ensemble");
    std::vector<CategoryId> categories;
    categories.reserve(thresholds.size());
    for (const auto& t : thresholds) categories.push_back(t.category);
    const DistanceMatrix matrix = compute_distance_matrix(cases, categories, lex);
    const std::vector<EnsembleCandidate> ranked = search_ensembles(matrix, thresholds, cases);

    const EnsembleCandidate& winner = ranked.front();
    Model model;
    for (CategoryId id : winner.members) {
        const auto it = std::find_if(thresholds.begin(), thresholds.end(),
                                     [&](const AtomicEnsemble& t) { return t.category == id; });
        model.members.push_back(*it);
    }
    std::sort(model.members.begin(), model.members.end(),
              [](const AtomicEnsemble& a, const AtomicEnsemble& b) {
                  return a.category < b.category;
              });
    model.training_meta.training_accuracy = winner.accuracy;
    return model;
}

TrainingResult train_model(const Corpus& corpus,
                           const std::vector<CategoryId>& categories,
                           const Lexicon& lex) {
    if (corpus.cases.empty()) throw std::invalid_argument("training corpus is empty");
    if (corpus.count_label(Label::Y) != corpus.count_label(Label::N)) {
        throw std::invalid_argument("training corpus is not balanced");
    }
    if (categories.empty()) throw std::invalid_argument("no feature categories given");

    const DistanceMatrix matrix = compute_distance_matrix(corpus.cases, categories, lex);
    TrainingResult result;
    result.thresholds = thresholds_from_matrix(matrix);
    for (const AtomicEnsemble& t : result.thresholds) {
        if (!(t.threshold > 0.0)) {
            throw std::invalid_argument(
                "category " + std::string(category_name(t.category)) +
                ": median training distance is 0, cannot calibrate a threshold");
        }
    }
    check_members(result.thresholds, "train_model");

    std::vector<EnsembleCandidate> ranked =
        search_ensembles(matrix, result.thresholds, corpus.cases);

    // Singleton accuracies in category order, recovered from the ranked list.
    for (std::size_t j = 0; j < result.thresholds.size(); ++j) {
        const CategoryId id = result.thresholds[j].category;
        for (const EnsembleCandidate& c : ranked) {
            if (c.members.size() == 1 && c.members.front() == id) {
                result.atomic_accuracies.emplace_back(id, c.accuracy);
                break;
            }
        }
    }

    const EnsembleCandidate& winner = ranked.front();
    for (CategoryId id : winner.members) {
        const auto it = std::find_if(
            result.thresholds.begin(), result.thresholds.end(),
            [&](const AtomicEnsemble& t) { return t.category == id; });
        result.model.members.push_back(*it);
    }
    std::sort(result.model.members.begin(), result.model.members.end(),
              [](const AtomicEnsemble& a, const AtomicEnsemble& b) {
                  return a.category < b.category;
              });
    result.model.training_meta.corpus = corpus.meta.name;
    result.model.training_meta.training_accuracy = winner.accuracy;
    for (const AtomicEnsemble& member : result.model.members) {
        for (const auto& [id, acc] : result.atomic_accuracies) {
            if (id == member.category) {
                result.model.training_meta.atomic_accuracies.emplace_back(id, acc);
            }
        }
    }
    if (ranked.size() > 10) ranked.resize(10);
    result.top_candidates = std::move(ranked);
    return result;
}

std::string model_to_json(const Model& model) {
    check_members(model.members, "model_to_json");
    json members = json::array();
    for (const AtomicEnsemble& m : model.members) {
        const int n = category_gram_order(m.category);
        json entry{{"id", std::string(category_name(m.category))},
                   {"threshold", m.threshold}};
        if (n > 0) {
            entry["n"] = n;
        } else {
            entry["n"] = nullptr;
        }
        members.push_back(std::move(entry));
    }
    json doc{{"categories", std::move(members)},
             {"training_meta", meta_to_json(model.training_meta)}};
    return doc.dump(2) + "\n";
}

Model model_from_json(std::string_view text, std::string_view origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string(origin) + ": invalid model JSON: " + e.what());
    }
    const auto fail = [&](const std::string& what) {
        throw std::runtime_error(std::string(origin) + ": " + what);
    };
    if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_array()) {
        fail("model JSON must contain a 'categories' array");
    }
    Model model;
    for (const json& entry : doc["categories"]) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("threshold")) {
            fail("each category needs 'id' and 'threshold'");
        }
        AtomicEnsemble member{};
        try {
            member.category = parse_category(entry["id"].get<std::string>());
        } catch (const std::exception& e) {
            fail(e.what());
        }
        if (!entry["threshold"].is_number()) fail("threshold must be a number");
        member.threshold = entry["threshold"].get<double>();
        if (entry.contains("n") && !entry["n"].is_null()) {
            const int expected = category_gram_order(member.category);
            if (!entry["n"].is_number_integer() || entry["n"].get<int>() != expected) {
                fail("wrong n-gram order for " + std::string(category_name(member.category)));
            }
        }
        model.members.push_back(member);
    }
    std::sort(model.members.begin(), model.members.end(),
              [](const AtomicEnsemble& a, const AtomicEnsemble& b) {
                  return a.category < b.category;
              });
    try {
        check_members(model.members, "model");
    } catch (const std::exception& e) {
        fail(e.what());
    }
    if (doc.contains("training_meta") && doc["training_meta"].is_object()) {
        const json& meta = doc["training_meta"];
        if (meta.contains("corpus") && meta["corpus"].is_string()) {
            model.training_meta.corpus = meta["corpus"].get<std::string>();
        }
        if (meta.contains("training_accuracy") && meta["training_accuracy"].is_number()) {
            model.training_meta.training_accuracy = meta["training_accuracy"].get<double>();
        }
        if (meta.contains("atomic_accuracies") && meta["atomic_accuracies"].is_object()) {
            for (const AtomicEnsemble& member : model.members) {
                const std::string key{category_name(member.category)};
                if (meta["atomic_accuracies"].contains(key)) {
                    model.training_meta.atomic_accuracies.emplace_back(
                        member.category, meta["atomic_accuracies"][key].get<double>());
                }
            }
        }
    }
    return model;
}

void save_model(const Model& model, const std::string& path) {
    write_text_file(path, model_to_json(model));
}

Model load_model(const std::string& path) {
    return model_from_json(read_text_file(path), path);
}

}  // namespace averify
