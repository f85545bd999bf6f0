#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>

namespace infotweet {

// DESCRIPTIVE renders "slightly smiling face", COLON_DELIMITED renders
// ":slightly_smiling_face:".
enum class EmojiFormat { Descriptive, ColonDelimited };

// Codepoint-sequence -> snake_case name table. The bundled table is a
// pinned snapshot compiled into the binary; golden fixtures depend on its
// exact content, so it never tracks an external library at build time.
class EmojiLexicon {
public:
    // `<hex codepoints joined by '-'><TAB><snake_case_name>` per line.
    static EmojiLexicon from_file(const std::filesystem::path& path);
    static EmojiLexicon from_tsv(std::string_view tsv, const std::string& origin);
    static const EmojiLexicon& bundled();

    // Replaces every known emoji sequence with its name in the requested
    // format, separated from adjacent non-space text by single spaces.
    // Unknown sequences and all other text pass through byte-identical.
    std::string convert(std::string_view text, EmojiFormat format) const;

    std::size_t size() const { return names_.size(); }
    bool contains(std::string_view utf8_sequence) const;

private:
    std::unordered_map<std::string, std::string> names_;  // UTF-8 bytes -> name
    std::size_t max_key_bytes_ = 0;
    bool lead_byte_[256] = {};
};

// Conversion against the bundled snapshot.
std::string convert_emoji(std::string_view text, EmojiFormat format);

}  // namespace infotweet
