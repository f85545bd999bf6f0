#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace infotweet {

// INFORMATIVE is the positive class everywhere metrics are involved.
enum class ClassLabel { Informative, Uninformative };

std::string to_string(ClassLabel label);

// Case-insensitive; throws DataError on anything else.
ClassLabel parse_label(const std::string& text);

struct Tweet {
    std::string id;
    std::string text;
};

struct LabeledTweet {
    Tweet tweet;
    ClassLabel label;
};

// One split of the task dataset. Either every record carries a label or
// none does; record order is exactly the file order.
struct DatasetSplit {
    std::string name;
    std::vector<Tweet> tweets;
    std::vector<ClassLabel> labels;  // size() == tweets.size() when labeled
    bool labeled = false;

    std::size_t size() const { return tweets.size(); }
    LabeledTweet labeled_at(std::size_t i) const { return {tweets[i], labels[i]}; }
};

// Reads `Id<TAB>Text` (unlabeled) or `Id<TAB>Text<TAB>Label` (labeled)
// lines, UTF-8, LF or CRLF. Empty lines are skipped. Malformed lines,
// unknown labels and duplicate ids raise DataError naming the offender.
DatasetSplit load_dataset(const std::filesystem::path& path, bool labeled,
                          const std::string& split_name = "");

// Inverse of load_dataset on (id, text[, label]) triples.
void write_dataset(const std::filesystem::path& path, const DatasetSplit& split);

// (informative, uninformative); DataError on an unlabeled split.
std::pair<std::size_t, std::size_t> class_distribution(const DatasetSplit& split);

// `Id<TAB>LABEL` per prediction, input order, uppercase labels, trailing LF.
void write_predictions(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, ClassLabel>>& predictions);

std::vector<std::pair<std::string, ClassLabel>> load_predictions(
    const std::filesystem::path& path);

}  // namespace infotweet
