#include "infotweet/wordpiece.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "infotweet/errors.hpp"

namespace infotweet {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::vector<std::string_view> whitespace_tokens(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) tokens.push_back(text.substr(start, i - start));
    }
    return tokens;
}

std::size_t utf8_char_len(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xE) return 3;
    if ((lead >> 3) == 0x1E) return 4;
    return 1;  // invalid byte, treat as one unit
}

std::vector<std::string_view> codepoints(std::string_view word) {
    std::vector<std::string_view> cps;
    std::size_t i = 0;
    while (i < word.size()) {
        std::size_t len = std::min(utf8_char_len(static_cast<unsigned char>(word[i])),
                                   word.size() - i);
        cps.push_back(word.substr(i, len));
        i += len;
    }
    return cps;
}

}  // namespace

WordPieceVocab WordPieceVocab::build(std::span<const std::string> texts,
                                     std::size_t max_word_entries) {
    std::map<std::string, std::size_t> word_counts;  // ordered for determinism
    std::set<std::string> chars;
    for (const std::string& text : texts) {
        for (std::string_view tok : whitespace_tokens(text)) {
            ++word_counts[std::string(tok)];
            for (std::string_view cp : codepoints(tok)) chars.insert(std::string(cp));
        }
    }

    std::vector<std::string> pieces = {std::string(kPad), std::string(kUnk),
                                       std::string(kCls), std::string(kMask)};
    for (const std::string& c : chars) pieces.push_back(c);
    for (const std::string& c : chars) pieces.push_back("##" + c);

    // frequent words, count desc then lexicographic, skipping single chars
    // already present
    std::vector<std::pair<std::string, std::size_t>> by_freq(word_counts.begin(),
                                                             word_counts.end());
    std::stable_sort(by_freq.begin(), by_freq.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::set<std::string> have(pieces.begin(), pieces.end());
    std::size_t added = 0;
    for (const auto& [word, count] : by_freq) {
        if (added >= max_word_entries) break;
        if (have.insert(word).second) {
            pieces.push_back(word);
            ++added;
        }
    }
    return from_pieces(std::move(pieces));
}

WordPieceVocab WordPieceVocab::from_pieces(std::vector<std::string> pieces) {
    WordPieceVocab v;
    if (pieces.size() < kFirstRegularId || pieces[0] != kPad || pieces[1] != kUnk ||
        pieces[2] != kCls || pieces[3] != kMask) {
        throw DataError("word-piece table must start with [PAD] [UNK] [CLS] [MASK]");
    }
    v.pieces_ = std::move(pieces);
    for (std::size_t i = 0; i < v.pieces_.size(); ++i) {
        if (!v.ids_.emplace(v.pieces_[i], static_cast<int>(i)).second) {
            throw DataError("duplicate word-piece: " + v.pieces_[i]);
        }
        v.max_piece_bytes_ = std::max(v.max_piece_bytes_, v.pieces_[i].size());
    }
    return v;
}

std::vector<int> WordPieceVocab::encode_token(std::string_view word) const {
    if (word.empty()) return {unk_id()};
    auto whole = ids_.find(std::string(word));
    if (whole != ids_.end()) return {whole->second};

    std::vector<std::string_view> cps = codepoints(word);
    if (cps.size() > kMaxWordCodepoints) return {unk_id()};

    std::vector<int> out;
    std::size_t pos = 0;  // codepoint index
    std::string candidate;
    while (pos < cps.size()) {
        int matched = -1;
        std::size_t matched_len = 0;
        // longest piece starting at pos; continuation pieces carry "##"
        for (std::size_t end = cps.size(); end > pos; --end) {
            candidate.clear();
            if (pos > 0) candidate = "##";
            for (std::size_t k = pos; k < end; ++k) candidate += cps[k];
            if (candidate.size() > max_piece_bytes_) continue;
            auto it = ids_.find(candidate);
            if (it != ids_.end()) {
                matched = it->second;
                matched_len = end - pos;
                break;
            }
        }
        if (matched < 0) return {unk_id()};
        out.push_back(matched);
        pos += matched_len;
    }
    return out;
}

std::vector<int> WordPieceVocab::encode(std::string_view text, std::size_t max_len) const {
    std::vector<int> ids = {cls_id()};
    for (std::string_view tok : whitespace_tokens(text)) {
        for (int id : encode_token(tok)) {
            if (ids.size() >= max_len) return ids;
            ids.push_back(id);
        }
    }
    return ids;
}

bool WordPieceVocab::is_known(std::string_view token) const {
    std::vector<int> ids = encode_token(token);
    return std::none_of(ids.begin(), ids.end(),
                        [this](int id) { return id == unk_id(); });
}

}  // namespace infotweet
