#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace infotweet {

struct DatasetSplit;

// Half-open byte range [start, end) into the UTF-8 text, tagged with an
// entity category such as PERSON, GPE or ORG. Spans from one annotation
// pass never overlap.
struct EntitySpan {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string category;
};

class NerAnnotator {
public:
    virtual ~NerAnnotator() = default;
    // Returned spans must satisfy 0 <= start < end <= text.size().
    // Implementations must be safe for concurrent calls if the caller
    // fans out across threads.
    virtual std::vector<EntitySpan> annotate(std::string_view text) const = 0;
};

class VocabularyView {
public:
    virtual ~VocabularyView() = default;
    // Deterministic per encoder instance.
    virtual bool is_known(std::string_view token) const = 0;
};

// Fixed word list; anything absent is unknown. Test and toy usage.
class SetVocabulary : public VocabularyView {
public:
    explicit SetVocabulary(std::vector<std::string> words);
    bool is_known(std::string_view token) const override;

private:
    std::vector<std::string> words_;
};

// Rule-based annotator: exact gazetteer matches (longest multi-token match
// first) get the gazetteer category; remaining capitalized tokens are
// tagged PERSON. Hermetic stand-in for an external NER model.
class RuleBasedAnnotator : public NerAnnotator {
public:
    // `<surface form><TAB><CATEGORY>` per line
    static RuleBasedAnnotator from_gazetteer_file(const std::filesystem::path& path);
    explicit RuleBasedAnnotator(
        std::unordered_map<std::string, std::string> gazetteer = {});

    std::vector<EntitySpan> annotate(std::string_view text) const override;

private:
    std::unordered_map<std::string, std::string> gazetteer_;
    std::size_t max_entry_tokens_ = 1;
};

// Whitespace tokens for which vocab.is_known is false, as spans with
// category "UNKNOWN".
std::vector<EntitySpan> detect_unknown_tokens(std::string_view text,
                                              const VocabularyView& vocab);

// Replaces each token that is unknown to the vocabulary and covered by an
// entity span with the span's category word, lowercased. One token in, one
// token out; known tokens and unknown tokens outside any span are
// untouched. Whitespace is preserved byte for byte.
std::string integrate_entities(std::string_view text, const NerAnnotator& ner,
                               const VocabularyView& vocab);

// integrate_entities over every record; annotator failures are rethrown
// with the offending tweet id attached.
DatasetSplit integrate_entities_corpus(const DatasetSplit& split,
                                       const NerAnnotator& ner,
                                       const VocabularyView& vocab);

}  // namespace infotweet
