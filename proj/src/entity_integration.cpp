#include "infotweet/entity_integration.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "infotweet/data_io.hpp"
#include "infotweet/errors.hpp"

namespace infotweet {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

struct TokenRange {
    std::size_t start;
    std::size_t end;  // exclusive
};

std::vector<TokenRange> token_ranges(std::string_view text) {
    std::vector<TokenRange> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) out.push_back({start, i});
    }
    return out;
}

std::string lower_ascii(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool starts_capitalized(std::string_view token) {
    return !token.empty() && token[0] >= 'A' && token[0] <= 'Z';
}

}  // namespace

SetVocabulary::SetVocabulary(std::vector<std::string> words) : words_(std::move(words)) {
    std::sort(words_.begin(), words_.end());
}

bool SetVocabulary::is_known(std::string_view token) const {
    return std::binary_search(words_.begin(), words_.end(), token);
}

RuleBasedAnnotator::RuleBasedAnnotator(std::unordered_map<std::string, std::string> gazetteer)
    : gazetteer_(std::move(gazetteer)) {
    for (const auto& [surface, _] : gazetteer_) {
        std::size_t tokens = 1 + static_cast<std::size_t>(
            std::count(surface.begin(), surface.end(), ' '));
        max_entry_tokens_ = std::max(max_entry_tokens_, tokens);
    }
}

RuleBasedAnnotator RuleBasedAnnotator::from_gazetteer_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open gazetteer: " + path.string());
    std::unordered_map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected <surface><TAB><CATEGORY>");
        }
        entries[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return RuleBasedAnnotator(std::move(entries));
}

std::vector<EntitySpan> RuleBasedAnnotator::annotate(std::string_view text) const {
    std::vector<TokenRange> tokens = token_ranges(text);
    std::vector<EntitySpan> spans;

    std::size_t t = 0;
    while (t < tokens.size()) {
        // longest gazetteer match starting at token t
        bool matched = false;
        std::size_t max_len = std::min(max_entry_tokens_, tokens.size() - t);
        for (std::size_t len = max_len; len >= 1; --len) {
            std::string surface(text.substr(tokens[t].start,
                                            tokens[t + len - 1].end - tokens[t].start));
            auto it = gazetteer_.find(surface);
            if (it == gazetteer_.end()) continue;
            spans.push_back({tokens[t].start, tokens[t + len - 1].end, it->second});
            t += len;
            matched = true;
            break;
        }
        if (matched) continue;
        std::string_view tok = text.substr(tokens[t].start, tokens[t].end - tokens[t].start);
        if (starts_capitalized(tok)) {
            spans.push_back({tokens[t].start, tokens[t].end, "PERSON"});
        }
        ++t;
    }
    return spans;
}

std::vector<EntitySpan> detect_unknown_tokens(std::string_view text,
                                              const VocabularyView& vocab) {
    std::vector<EntitySpan> out;
    for (const TokenRange& r : token_ranges(text)) {
        std::string_view tok = text.substr(r.start, r.end - r.start);
        if (!vocab.is_known(tok)) out.push_back({r.start, r.end, "UNKNOWN"});
    }
    return out;
}

std::string integrate_entities(std::string_view text, const NerAnnotator& ner,
                               const VocabularyView& vocab) {
    std::vector<EntitySpan> spans = ner.annotate(text);
    for (const EntitySpan& s : spans) {
        if (s.start >= s.end || s.end > text.size()) {
            throw DataError("annotator returned span [" + std::to_string(s.start) + ", " +
                            std::to_string(s.end) + ") outside text of length " +
                            std::to_string(text.size()));
        }
    }

    std::string out;
    out.reserve(text.size());
    std::size_t cursor = 0;
    for (const TokenRange& r : token_ranges(text)) {
        out.append(text.substr(cursor, r.start - cursor));  // inter-token whitespace
        cursor = r.end;
        std::string_view tok = text.substr(r.start, r.end - r.start);

        const EntitySpan* covering = nullptr;
        for (const EntitySpan& s : spans) {
            if (s.start < r.end && r.start < s.end) {  // any overlap
                covering = &s;
                break;
            }
        }
        if (covering != nullptr && !vocab.is_known(tok)) {
            out += lower_ascii(covering->category);
        } else {
            out.append(tok);
        }
    }
    out.append(text.substr(cursor));
    return out;
}

DatasetSplit integrate_entities_corpus(const DatasetSplit& split, const NerAnnotator& ner,
                                       const VocabularyView& vocab) {
    DatasetSplit out = split;
    for (std::size_t i = 0; i < out.tweets.size(); ++i) {
        try {
            out.tweets[i].text = integrate_entities(out.tweets[i].text, ner, vocab);
        } catch (const std::exception& e) {
            throw DataError("entity integration failed for tweet id " + out.tweets[i].id +
                            ": " + e.what());
        }
    }
    return out;
}

}  // namespace infotweet
