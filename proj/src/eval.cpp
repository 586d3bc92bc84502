#include "averify/eval.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "averify/util.hpp"

namespace averify {
namespace {

using json = nlohmann::json;

// Mann-Whitney AUC via average ranks; ties between scores get half credit.
double rank_auc(std::vector<std::pair<double, bool>> scored) {
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t positives = 0;
    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < scored.size()) {
        std::size_t j = i;
        while (j < scored.size() && scored[j].first == scored[i].first) ++j;
        // 1-based average rank of the tie group [i, j).
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (scored[k].second) {
                ++positives;
                positive_rank_sum += avg_rank;
            }
        }
        i = j;
    }
    const std::size_t negatives = scored.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw std::logic_error("rank_auc needs both classes");
    }
    const double np = static_cast<double>(positives);
    const double nn = static_cast<double>(negatives);
    return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

}  // namespace

EvaluationReport evaluate(const std::vector<Prediction>& predictions, const Corpus& truth) {
    std::map<std::string, Label> truth_by_id;
    for (const VerificationCase& c : truth.cases) {
        if (!c.label) {
            throw std::runtime_error("truth case '" + c.case_id + "' is unlabeled");
        }
        truth_by_id.emplace(c.case_id, *c.label);
    }

    EvaluationReport report;
    std::vector<std::pair<double, bool>> scored;
    scored.reserve(predictions.size());
    std::map<std::string, const Prediction*> seen;
    for (const Prediction& p : predictions) {
        const auto it = truth_by_id.find(p.case_id);
        if (it == truth_by_id.end()) {
            throw std::runtime_error("prediction for unknown case '" + p.case_id + "'");
        }
        if (!seen.emplace(p.case_id, &p).second) {
            throw std::runtime_error("duplicate prediction for case '" + p.case_id + "'");
        }
        const bool truth_y = it->second == Label::Y;
        const bool pred_y = p.label == Label::Y;
        if (truth_y && pred_y) ++report.tp;
        if (truth_y && !pred_y) ++report.fn;
        if (!truth_y && pred_y) ++report.fp;
        if (!truth_y && !pred_y) ++report.tn;
        scored.emplace_back(p.score, truth_y);
    }
    for (const auto& [id, label] : truth_by_id) {
        if (seen.find(id) == seen.end()) {
            throw std::runtime_error("missing prediction for case '" + id + "'");
        }
    }

    report.accuracy = static_cast<double>(report.tp + report.tn) /
                      static_cast<double>(report.total());
    const bool both_classes = (report.tp + report.fn) > 0 && (report.fp + report.tn) > 0;
    if (both_classes) report.auc = rank_auc(std::move(scored));
    return report;
}

std::string report_to_json(const EvaluationReport& report) {
    json doc{{"accuracy", report.accuracy},
             {"auc", report.auc ? json(*report.auc) : json(nullptr)},
             {"tp", report.tp},
             {"fn", report.fn},
             {"fp", report.fp},
             {"tn", report.tn},
             {"total", report.total()}};
    return doc.dump(2) + "\n";
}

std::vector<Prediction> load_predictions(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<Prediction> out;
    const auto fail = [&](const std::string& what) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& e) {
            fail(std::string("invalid JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("case_id") || !doc["case_id"].is_string() ||
            !doc.contains("score") || !doc["score"].is_number() || !doc.contains("label") ||
            !doc["label"].is_string()) {
            fail("prediction needs string case_id, numeric score, string label");
        }
        Prediction p;
        p.case_id = doc["case_id"].get<std::string>();
        p.score = doc["score"].get<double>();
        try {
            p.label = parse_label(doc["label"].get<std::string>());
        } catch (const std::exception& e) {
            fail(e.what());
        }
        out.push_back(std::move(p));
    }
    if (out.empty()) throw std::runtime_error(path + ": no predictions");
    return out;
}

void save_predictions(std::vector<Prediction> predictions, const std::string& path) {
    std::sort(predictions.begin(), predictions.end(),
              [](const Prediction& a, const Prediction& b) { return a.case_id < b.case_id; });
    std::string out;
    for (const Prediction& p : predictions) {
        json doc{{"case_id", p.case_id},
                 {"score", p.score},
                 {"label", std::string(1, label_char(p.label))}};
        out += doc.dump();
        out.push_back('\n');
    }
    write_text_file(path, out);
}

void export_score_distributions(const Model& model, const Corpus& corpus,
                                const Lexicon& lex, const std::string& path) {
    if (model.members.empty()) throw std::invalid_argument("model has no members");
    std::vector<const VerificationCase*> ordered;
    ordered.reserve(corpus.cases.size());
    for (const VerificationCase& c : corpus.cases) {
        if (!c.label) {
            throw std::runtime_error("case '" + c.case_id + "' is unlabeled");
        }
        ordered.push_back(&c);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const VerificationCase* a, const VerificationCase* b) {
                  return a->case_id < b->case_id;
              });

    std::string csv = "case_id,category_id,label,atomic_similarity\n";
    for (const VerificationCase* c : ordered) {
        const ProfiledCase pc = profile(*c);
        for (const AtomicEnsemble& member : model.members) {
            const FeatureVectorPair pair =
                make_vector_pair(pc.unknown, pc.known, member.category, lex);
            const double d = std::min(distance(pair.x, pair.y), kMaxDistance);
            const double sim = similarity(d, kMaxDistance, member.threshold);
            csv += csv_quote(c->case_id);
            csv += ',';
            csv += category_name(member.category);
            csv += ',';
            csv += label_char(*c->label);
            csv += ',';
            csv += format_double(sim);
            csv += '\n';
        }
    }
    write_text_file(path, csv);
}

}  // namespace averify
