#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "infotweet/entity_integration.hpp"

namespace infotweet {

// Subword vocabulary with greedy longest-match segmentation. Built from a
// training corpus: special tokens, every observed character (initial and
// "##" continuation form) and the most frequent whole words. A whitespace
// token is "known" exactly when segmenting it never falls back to [UNK].
class WordPieceVocab : public VocabularyView {
public:
    static constexpr std::string_view kPad = "[PAD]";
    static constexpr std::string_view kUnk = "[UNK]";
    static constexpr std::string_view kCls = "[CLS]";
    static constexpr std::string_view kMask = "[MASK]";
    static constexpr std::size_t kMaxWordCodepoints = 64;

    static WordPieceVocab build(std::span<const std::string> texts,
                                std::size_t max_word_entries = 2000);
    static WordPieceVocab from_pieces(std::vector<std::string> pieces);

    const std::vector<std::string>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    const std::string& piece(int id) const { return pieces_[static_cast<std::size_t>(id)]; }

    int pad_id() const { return 0; }
    int unk_id() const { return 1; }
    int cls_id() const { return 2; }
    int mask_id() const { return 3; }
    static constexpr int kFirstRegularId = 4;

    // Subword ids for one whitespace token; {unk_id} when segmentation
    // gets stuck or the token is degenerate.
    std::vector<int> encode_token(std::string_view word) const;

    // [CLS] followed by the subword ids of every whitespace token,
    // truncated to max_len ids total.
    std::vector<int> encode(std::string_view text, std::size_t max_len) const;

    bool is_known(std::string_view token) const override;

private:
    std::vector<std::string> pieces_;
    std::unordered_map<std::string, int> ids_;
    std::size_t max_piece_bytes_ = 1;
};

}  // namespace infotweet
