#include "infotweet/evaluation.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infotweet/errors.hpp"

namespace infotweet {

ConfusionCounts confusion(std::span<const ClassLabel> predicted,
                          std::span<const ClassLabel> gold) {
    if (predicted.size() != gold.size()) {
        throw DataError("confusion: " + std::to_string(predicted.size()) +
                        " predictions vs " + std::to_string(gold.size()) + " gold labels");
    }
    if (predicted.empty()) throw DataError("confusion: no records");

    ConfusionCounts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool pred_pos = predicted[i] == ClassLabel::Informative;
        const bool gold_pos = gold[i] == ClassLabel::Informative;
        if (pred_pos && gold_pos) ++c.tp;
        else if (pred_pos && !gold_pos) ++c.fp;
        else if (!pred_pos && gold_pos) ++c.fn;
        else ++c.tn;
    }
    return c;
}

EvaluationReport precision_recall_f1(const ConfusionCounts& counts) {
    EvaluationReport r;
    r.counts = counts;

    if (counts.tp + counts.fp == 0) {
        r.precision = 0.0;
        r.degenerate = true;
    } else {
        r.precision = static_cast<double>(counts.tp) /
                      static_cast<double>(counts.tp + counts.fp);
    }
    if (counts.tp + counts.fn == 0) {
        r.recall = 0.0;
        r.degenerate = true;
    } else {
        r.recall = static_cast<double>(counts.tp) /
                   static_cast<double>(counts.tp + counts.fn);
    }
    if (r.precision + r.recall == 0.0) {
        r.f1 = 0.0;
        r.degenerate = true;
    } else {
        r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    }
    return r;
}

EvaluationReport evaluate(std::span<const ClassLabel> predicted,
                          std::span<const ClassLabel> gold) {
    return precision_recall_f1(confusion(predicted, gold));
}

std::string to_string(FineTuningVariant v) {
    switch (v) {
        case FineTuningVariant::None: return "none";
        case FineTuningVariant::Ei: return "ei";
        case FineTuningVariant::Lm: return "lm";
    }
    return "none";
}

FineTuningVariant parse_variant(const std::string& name) {
    if (name == "none" || name == "-") return FineTuningVariant::None;
    if (name == "ei" || name == "EI") return FineTuningVariant::Ei;
    if (name == "lm" || name == "LM") return FineTuningVariant::Lm;
    throw UsageError("unknown variant \"" + name + "\" (valid: none, ei, lm)");
}

void ExperimentGrid::validate() const {
    if (learning_rates.empty()) throw DataError("experiment grid: no learning rates");
    if (strategies.empty()) throw DataError("experiment grid: no strategies");
    for (double lr : learning_rates) {
        if (lr <= 0.0) throw DataError("experiment grid: learning rates must be positive");
    }
    if (n_members == 0) throw DataError("experiment grid: n_members must be positive");
    base.validate();
}

namespace {

std::string format_lr(double lr) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(0) << lr;
    return os.str();
}

std::string make_cell_id(EnsembleStrategy s, FineTuningVariant v, double lr) {
    return to_string(s) + "-" + to_string(v) + "-lr" + format_lr(lr);
}

}  // namespace

GridResults run_experiment_grid(const ExperimentGrid& grid, const DatasetSplit& train,
                                const DatasetSplit& valid,
                                const PreprocessingProfile& profile,
                                const EncoderFactory& make_encoder,
                                const NerAnnotator* annotator) {
    grid.validate();
    GridResults results;

    for (const auto& [strategy, variant] : grid.strategies) {
        for (double lr : grid.learning_rates) {
            GridCell cell;
            cell.cell_id = make_cell_id(strategy, variant, lr);
            cell.learning_rate = lr;
            cell.strategy = strategy;
            cell.variant = variant;

            try {
                TrainConfig base = grid.base;
                base.learning_rate = lr;
                base.epochs = grid.epochs;

                DatasetSplit cell_train = train;
                DatasetSplit cell_valid = valid;

                if (variant == FineTuningVariant::Ei) {
                    if (annotator == nullptr) {
                        throw DataError("entity-integration cell needs an annotator");
                    }
                    // unknown-ness is judged against the encoder vocabulary,
                    // which is fixed before any task-side transform
                    std::unique_ptr<TrainableEncoder> probe = make_encoder(base.seed);
                    for (auto* split : {&cell_train, &cell_valid}) {
                        for (Tweet& t : split->tweets) t.text = normalize(t.text, profile);
                        *split = integrate_entities_corpus(*split, *annotator,
                                                           probe->vocabulary());
                    }
                }

                EnsembleConfig cfg = EnsembleConfig::with_derived_seeds(
                    grid.n_members, strategy, base);

                EncoderFactory factory = make_encoder;
                if (variant == FineTuningVariant::Lm) {
                    std::vector<std::string> corpus;
                    for (const Tweet& t : cell_train.tweets) {
                        corpus.push_back(normalize(t.text, profile));
                    }
                    factory = [&, corpus](std::uint64_t seed) {
                        std::unique_ptr<TrainableEncoder> enc = make_encoder(seed);
                        TrainConfig adapt = base;
                        adapt.seed = seed;
                        lm_adapt(*enc, corpus, adapt);
                        return enc;
                    };
                }

                EnsembleResult ens = run_self_ensemble(cfg, factory, cell_train,
                                                       cell_valid, cell_valid, profile);
                cell.predictions = ens.labels;
                cell.report = evaluate(ens.labels, cell_valid.labels);
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            results.cells.push_back(std::move(cell));
        }
    }
    return results;
}

std::string GridResults::to_ndjson() const {
    std::string out;
    for (const GridCell& c : cells) {
        nlohmann::json j{{"cell_id", c.cell_id},
                         {"learning_rate", c.learning_rate},
                         {"strategy", to_string(c.strategy)},
                         {"variant", to_string(c.variant)}};
        if (c.report) {
            j["precision"] = c.report->precision;
            j["recall"] = c.report->recall;
            j["f1"] = c.report->f1;
        } else {
            j["error"] = c.error;
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string GridResults::render_table() const {
    // column groups per learning rate, strategy/variant rows
    std::vector<double> lrs;
    std::vector<std::pair<EnsembleStrategy, FineTuningVariant>> rows;
    for (const GridCell& c : cells) {
        if (std::find(lrs.begin(), lrs.end(), c.learning_rate) == lrs.end()) {
            lrs.push_back(c.learning_rate);
        }
        auto key = std::make_pair(c.strategy, c.variant);
        if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
    }

    auto find_cell = [&](EnsembleStrategy s, FineTuningVariant v,
                         double lr) -> const GridCell* {
        for (const GridCell& c : cells) {
            if (c.strategy == s && c.variant == v && c.learning_rate == lr) return &c;
        }
        return nullptr;
    };

    std::ostringstream os;
    os << std::left << std::setw(14) << "Strategy";
    for (double lr : lrs) {
        std::ostringstream head;
        head << "lr=" << format_lr(lr);
        os << std::setw(27) << head.str();
    }
    os << '\n' << std::setw(14) << "";
    for (std::size_t i = 0; i < lrs.size(); ++i) {
        os << std::setw(9) << "P" << std::setw(9) << "R" << std::setw(9) << "F1";
    }
    os << '\n';

    for (const auto& [strategy, variant] : rows) {
        std::string label = to_string(strategy);
        if (variant != FineTuningVariant::None) label += "+" + to_string(variant);
        os << std::setw(14) << label;
        for (double lr : lrs) {
            const GridCell* c = find_cell(strategy, variant, lr);
            if (c == nullptr) {
                os << std::setw(27) << "-";
            } else if (!c->report) {
                os << std::setw(27) << "FAILED";
            } else {
                os << std::fixed << std::setprecision(4) << std::setw(9)
                   << c->report->precision << std::setw(9) << c->report->recall
                   << std::setw(9) << c->report->f1;
                os.unsetf(std::ios::fixed);
            }
        }
        os << '\n';
    }
    return os.str();
}

std::vector<PublishedResult> load_published_results(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    std::vector<PublishedResult> out;
    for (const auto& row : doc.at("results")) {
        PublishedResult r;
        r.table = row.at("table").get<std::string>();
        r.row = row.at("row").get<std::string>();
        r.precision = row.at("precision").get<double>();
        r.recall = row.at("recall").get<double>();
        r.f1 = row.at("f1").get<double>();
        r.identity_consistent = row.value("identity_consistent", true);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace infotweet
