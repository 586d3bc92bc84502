#include "averify/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "averify/corpus.hpp"
#include "averify/eval.hpp"
#include "averify/features.hpp"
#include "averify/interpret.hpp"
#include "averify/lexicon.hpp"
#include "averify/textproc.hpp"
#include "averify/util.hpp"
#include "averify/verifier.hpp"

namespace averify {
namespace {

using json = nlohmann::json;

std::string resolve_lexicon_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("AVERIFY_LEXICON"); env != nullptr && *env != '\0') {
        return env;
    }
    throw std::runtime_error("no lexicon given: pass --lexicon or set AVERIFY_LEXICON");
}

std::vector<CategoryId> parse_category_list(const std::string& csv) {
    if (csv.empty()) return all_categories();
    std::vector<CategoryId> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(parse_category(item));
    }
    if (out.empty()) throw std::invalid_argument("empty category list");
    return out;
}

std::string members_brief(const Model& model) {
    std::string out = "{";
    for (std::size_t i = 0; i < model.members.size(); ++i) {
        if (i > 0) out += ", ";
        out += "(";
        out += category_name(model.members[i].category);
        out += ", ";
        out += format_double(model.members[i].threshold);
        out += ")";
    }
    out += "}";
    return out;
}

int run_gen(const std::string& config_path, std::uint64_t seed, const std::string& out_dir) {
    const GeneratorConfig cfg = config_path.empty()
                                    ? GeneratorConfig{}
                                    : GeneratorConfig::from_json_file(config_path);
    cfg.validate();
    const GeneratedCorpora corpora = generate_synthetic(cfg, seed);
    std::filesystem::create_directories(out_dir);
    const auto train_path =
        (std::filesystem::path(out_dir) / (corpora.train.meta.name + ".jsonl")).string();
    const auto test_path =
        (std::filesystem::path(out_dir) / (corpora.test.meta.name + ".jsonl")).string();
    save_corpus(corpora.train, train_path);
    save_corpus(corpora.test, test_path);
    std::cout << "wrote " << corpora.train.cases.size() << " train cases to " << train_path
              << "\n"
              << "wrote " << corpora.test.cases.size() << " test cases to " << test_path
              << "\n";
    return 0;
}

int run_train(const std::string& corpus_path, const std::string& lexicon_flag,
              const std::string& categories_csv, const std::string& out_path) {
    const Lexicon lex = load_lexicon(resolve_lexicon_path(lexicon_flag));
    const Corpus corpus = load_corpus(corpus_path, /*require_balanced=*/true);
    const std::vector<CategoryId> categories = parse_category_list(categories_csv);
    const TrainingResult result = train_model(corpus, categories, lex);

    std::cout << "atomic ensembles (threshold | training accuracy):\n";
    for (std::size_t j = 0; j < result.thresholds.size(); ++j) {
        std::cout << "  " << category_name(result.thresholds[j].category) << "  "
                  << format_double(result.thresholds[j].threshold) << "  |  "
                  << format_double(result.atomic_accuracies[j].second) << "\n";
    }
    std::cout << "top ensembles (accuracy | members | median atomic accuracy):\n";
    for (std::size_t i = 0; i < result.top_candidates.size(); ++i) {
        const EnsembleCandidate& c = result.top_candidates[i];
        std::cout << "  " << (i + 1) << ". " << format_double(c.accuracy) << " | {";
        for (std::size_t k = 0; k < c.members.size(); ++k) {
            if (k > 0) std::cout << ", ";
            std::cout << category_name(c.members[k]);
        }
        std::cout << "} | " << format_double(c.median_atomic_accuracy) << "\n";
    }
    std::cout << "selected: " << corpus.meta.name << " | " << members_brief(result.model)
              << " | accuracy " << format_double(result.model.training_meta.training_accuracy)
              << "\n";
    save_model(result.model, out_path);
    std::cout << "wrote model to " << out_path << "\n";
    return 0;
}

int run_infer(const std::string& model_path, const std::string& corpus_path,
              const std::string& lexicon_flag, const std::string& out_path) {
    const Lexicon lex = load_lexicon(resolve_lexicon_path(lexicon_flag));
    const Model model = load_model(model_path);
    const Corpus corpus = load_corpus(corpus_path, /*require_balanced=*/false);
    std::vector<Prediction> predictions;
    predictions.reserve(corpus.cases.size());
    for (const VerificationCase& c : corpus.cases) {
        predictions.push_back(classify(c, model, lex));
    }
    save_predictions(std::move(predictions), out_path);
    std::cout << "wrote " << corpus.cases.size() << " predictions to " << out_path << "\n";
    return 0;
}

int run_eval(const std::string& predictions_path, const std::string& truth_path,
             const std::string& out_path) {
    const std::vector<Prediction> predictions = load_predictions(predictions_path);
    const Corpus truth = load_corpus(truth_path, /*require_balanced=*/false);
    const EvaluationReport report = evaluate(predictions, truth);
    const std::string rendered = report_to_json(report);
    if (!out_path.empty()) write_text_file(out_path, rendered);
    std::cout << rendered;
    return 0;
}

int run_interpret(const std::string& model_path, const std::string& corpus_path,
                  const std::string& lexicon_flag, const std::string& case_id,
                  const std::string& category, const std::string& out_path) {
    const Lexicon lex = load_lexicon(resolve_lexicon_path(lexicon_flag));
    const Model model = load_model(model_path);
    const Corpus corpus = load_corpus(corpus_path, /*require_balanced=*/false);
    const VerificationCase* found = nullptr;
    for (const VerificationCase& c : corpus.cases) {
        if (c.case_id == case_id) {
            found = &c;
            break;
        }
    }
    if (found == nullptr) {
        throw std::runtime_error("case '" + case_id + "' not found in " + corpus_path);
    }

    std::vector<AtomicEnsemble> members;
    if (category.empty()) {
        members = model.members;
    } else {
        const CategoryId wanted = parse_category(category);
        for (const AtomicEnsemble& m : model.members) {
            if (m.category == wanted) members.push_back(m);
        }
        if (members.empty()) {
            throw std::runtime_error("category " + category + " is not a model member");
        }
    }

    for (const AtomicEnsemble& member : members) {
        const InterpretationResult result = interpret_case(*found, member, lex);
        std::filesystem::path report_path(out_path);
        if (members.size() > 1) {
            const std::string ext = report_path.extension().string();
            report_path.replace_extension();
            report_path += std::string("_") + std::string(category_name(member.category)) + ext;
        }
        emit_importance_report(result, report_path.string());
        double sum_y = 0.0;
        double sum_n = 0.0;
        for (const ScoredFeature& f : result.y_list) sum_y += f.value;
        for (const ScoredFeature& f : result.n_list) sum_n += f.value;
        std::cout << category_name(member.category) << ": " << result.phi.size()
                  << " features, equilibrated threshold "
                  << format_double(result.equilibrated_threshold) << ", verdict "
                  << (sum_y > sum_n ? 'Y' : 'N') << " (" << result.y_list.size() << " for, "
                  << result.n_list.size() << " against), wrote " << report_path.string()
                  << "\n";
    }
    return 0;
}

int run_features(const std::string& input_path, const std::string& lexicon_flag,
                 const std::string& category, const std::string& out_path) {
    const Lexicon lex = load_lexicon(resolve_lexicon_path(lexicon_flag));
    const Document doc = segment(read_text_file(input_path));
    const std::vector<CategoryId> wanted =
        category.empty() ? all_categories() : std::vector<CategoryId>{parse_category(category)};
    json out = json::object();
    for (CategoryId id : wanted) {
        json bag = json::object();
        for (const auto& [feature, count] : extract(doc, id, lex)) {
            bag[feature] = count;
        }
        out[std::string(category_name(id))] = std::move(bag);
    }
    const std::string rendered = out.dump(2) + "\n";
    if (!out_path.empty()) {
        write_text_file(out_path, rendered);
    } else {
        std::cout << rendered;
    }
    return 0;
}

int run_segment(const std::string& input_path, const std::string& out_path) {
    const Document doc = segment(read_text_file(input_path));
    json sentences = json::array();
    for (const Sentence& s : doc.sentences) {
        json tokens = json::array();
        for (const Token& t : s.tokens) {
            tokens.push_back(json{{"text", t.text}, {"kind", token_kind_name(t.kind)}});
        }
        sentences.push_back(json{{"raw", s.raw}, {"tokens", std::move(tokens)}});
    }
    const std::string rendered = sentences.dump(2) + "\n";
    if (!out_path.empty()) {
        write_text_file(out_path, rendered);
    } else {
        std::cout << rendered;
    }
    return 0;
}

int run_scores(const std::string& model_path, const std::string& corpus_path,
               const std::string& lexicon_flag, const std::string& out_path) {
    const Lexicon lex = load_lexicon(resolve_lexicon_path(lexicon_flag));
    const Model model = load_model(model_path);
    const Corpus corpus = load_corpus(corpus_path, /*require_balanced=*/false);
    export_score_distributions(model, corpus, lex, out_path);
    std::cout << "wrote per-member similarities for " << corpus.cases.size() << " cases to "
              << out_path << "\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Topic-agnostic authorship verification"};
    app.require_subcommand(1);

    std::string corpus_path, lexicon_path, model_path, out_path, truth_path;
    std::string predictions_path, case_id, category, categories_csv, input_path;
    std::string config_path, out_dir = ".";
    std::uint64_t seed = 1;

    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic train/test corpus pair");
    gen->add_option("--config", config_path, "Generator config JSON (defaults when omitted)");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out-dir", out_dir, "Output directory");

    CLI::App* train = app.add_subcommand("train", "Learn thresholds and the optimal ensemble");
    train->add_option("--corpus", corpus_path, "Balanced labeled training corpus (JSONL)")
        ->required();
    train->add_option("--lexicon", lexicon_path, "Lexicon TSV (or set AVERIFY_LEXICON)");
    train->add_option("--categories", categories_csv,
                      "Comma-separated feature categories (default: all)");
    train->add_option("--out", out_path, "Model JSON output path")->required();

    CLI::App* infer = app.add_subcommand("infer", "Score a corpus with a trained model");
    infer->add_option("--model", model_path, "Model JSON")->required();
    infer->add_option("--corpus", corpus_path, "Corpus to score (JSONL)")->required();
    infer->add_option("--lexicon", lexicon_path, "Lexicon TSV (or set AVERIFY_LEXICON)");
    infer->add_option("--out", out_path, "Predictions JSONL output path")->required();

    CLI::App* eval = app.add_subcommand("eval", "Score predictions against labeled truth");
    eval->add_option("--pred,--predictions", predictions_path, "Predictions JSONL")->required();
    eval->add_option("--truth", truth_path, "Labeled corpus (JSONL)")->required();
    eval->add_option("--out", out_path, "Also write the report JSON here");

    CLI::App* interpret =
        app.add_subcommand("interpret", "Explain one case's decision per model member");
    interpret->add_option("--model", model_path, "Model JSON")->required();
    interpret->add_option("--corpus", corpus_path, "Corpus containing the case")->required();
    interpret->add_option("--lexicon", lexicon_path, "Lexicon TSV (or set AVERIFY_LEXICON)");
    interpret->add_option("--case-id", case_id, "Case to explain")->required();
    interpret->add_option("--category", category,
                          "Single member category (default: every member)");
    interpret->add_option("--out", out_path, "Report CSV path")->required();

    CLI::App* features = app.add_subcommand("features", "Dump feature bags for a document");
    features->add_option("--input", input_path, "UTF-8 text file")->required();
    features->add_option("--lexicon", lexicon_path, "Lexicon TSV (or set AVERIFY_LEXICON)");
    features->add_option("--category", category, "Single category (default: all)");
    features->add_option("--out", out_path, "Write JSON here instead of stdout");

    CLI::App* seg = app.add_subcommand("segment", "Dump sentence segmentation and tokens");
    seg->add_option("--input", input_path, "UTF-8 text file")->required();
    seg->add_option("--out", out_path, "Write JSON here instead of stdout");

    CLI::App* scores =
        app.add_subcommand("scores", "Export per-member similarities for a labeled corpus");
    scores->add_option("--model", model_path, "Model JSON")->required();
    scores->add_option("--corpus", corpus_path, "Labeled corpus (JSONL)")->required();
    scores->add_option("--lexicon", lexicon_path, "Lexicon TSV (or set AVERIFY_LEXICON)");
    scores->add_option("--out", out_path, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) return run_gen(config_path, seed, out_dir);
        if (train->parsed()) return run_train(corpus_path, lexicon_path, categories_csv, out_path);
        if (infer->parsed()) return run_infer(model_path, corpus_path, lexicon_path, out_path);
        if (eval->parsed()) return run_eval(predictions_path, truth_path, out_path);
        if (interpret->parsed()) {
            return run_interpret(model_path, corpus_path, lexicon_path, case_id, category,
                                 out_path);
        }
        if (features->parsed()) return run_features(input_path, lexicon_path, category, out_path);
        if (seg->parsed()) return run_segment(input_path, out_path);
        if (scores->parsed()) return run_scores(model_path, corpus_path, lexicon_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}

}  // namespace averify
