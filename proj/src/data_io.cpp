#include "infotweet/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "infotweet/errors.hpp"

namespace infotweet {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower_ascii(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

}  // namespace

std::string to_string(ClassLabel label) {
    return label == ClassLabel::Informative ? "INFORMATIVE" : "UNINFORMATIVE";
}

ClassLabel parse_label(const std::string& text) {
    std::string norm = lower_ascii(trim(text));
    if (norm == "informative") return ClassLabel::Informative;
    if (norm == "uninformative") return ClassLabel::Uninformative;
    throw DataError("unknown label \"" + text + "\" (expected INFORMATIVE or UNINFORMATIVE)");
}

DatasetSplit load_dataset(const std::filesystem::path& path, bool labeled,
                          const std::string& split_name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path.string());

    DatasetSplit split;
    split.name = split_name.empty() ? path.filename().string() : split_name;
    split.labeled = labeled;

    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    const std::size_t expected_fields = labeled ? 3 : 2;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != expected_fields) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected " + std::to_string(expected_fields) +
                            " tab-separated fields, got " + std::to_string(fields.size()));
        }

        Tweet tweet{trim(fields[0]), fields[1]};
        if (tweet.id.empty()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty id");
        }
        if (trim(tweet.text).empty()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": empty text for id " + tweet.id);
        }
        if (!seen_ids.insert(tweet.id).second) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": duplicate id " + tweet.id);
        }

        split.tweets.push_back(std::move(tweet));
        if (labeled) split.labels.push_back(parse_label(fields[2]));
    }
    return split;
}

void write_dataset(const std::filesystem::path& path, const DatasetSplit& split) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write dataset file: " + path.string());
    for (std::size_t i = 0; i < split.size(); ++i) {
        out << split.tweets[i].id << '\t' << split.tweets[i].text;
        if (split.labeled) out << '\t' << to_string(split.labels[i]);
        out << '\n';
    }
    if (!out) throw DataError("I/O failure writing " + path.string());
}

std::pair<std::size_t, std::size_t> class_distribution(const DatasetSplit& split) {
    if (!split.labeled) {
        throw DataError("class_distribution requires a labeled split (split \"" +
                        split.name + "\" is unlabeled)");
    }
    std::size_t informative = 0;
    for (ClassLabel l : split.labels) {
        if (l == ClassLabel::Informative) ++informative;
    }
    return {informative, split.labels.size() - informative};
}

void write_predictions(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, ClassLabel>>& predictions) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write predictions file: " + path.string());
    for (const auto& [id, label] : predictions) {
        out << id << '\t' << to_string(label) << '\n';
    }
    if (!out) throw DataError("I/O failure writing " + path.string());
}

std::vector<std::pair<std::string, ClassLabel>> load_predictions(
    const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open predictions file: " + path.string());
    std::vector<std::pair<std::string, ClassLabel>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != 2) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected Id<TAB>Label");
        }
        out.emplace_back(trim(fields[0]), parse_label(fields[1]));
    }
    return out;
}

}  // namespace infotweet
