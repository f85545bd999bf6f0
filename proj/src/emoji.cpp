#include "infotweet/emoji.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "infotweet/errors.hpp"

namespace infotweet {

namespace detail {
// generated from data/emoji_lexicon.tsv, see CMakeLists
extern const char kEmojiLexiconTsv[];
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string decode_hex_sequence(std::string_view field, const std::string& origin,
                                std::size_t line_no) {
    std::string utf8;
    std::uint32_t cp = 0;
    bool in_cp = false;
    for (char c : field) {
        if (c == '-') {
            if (!in_cp) throw DataError(origin + ":" + std::to_string(line_no) +
                                        ": malformed codepoint sequence");
            append_utf8(utf8, cp);
            cp = 0;
            in_cp = false;
            continue;
        }
        std::uint32_t digit;
        if (c >= '0' && c <= '9') digit = static_cast<std::uint32_t>(c - '0');
        else if (c >= 'A' && c <= 'F') digit = static_cast<std::uint32_t>(c - 'A' + 10);
        else if (c >= 'a' && c <= 'f') digit = static_cast<std::uint32_t>(c - 'a' + 10);
        else throw DataError(origin + ":" + std::to_string(line_no) +
                             ": bad hex digit in codepoint sequence");
        cp = cp * 16 + digit;
        in_cp = true;
    }
    if (!in_cp) throw DataError(origin + ":" + std::to_string(line_no) +
                                ": empty codepoint sequence");
    append_utf8(utf8, cp);
    return utf8;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string render(const std::string& name, EmojiFormat format) {
    if (format == EmojiFormat::ColonDelimited) return ":" + name + ":";
    std::string out = name;
    for (char& c : out)
        if (c == '_') c = ' ';
    return out;
}

}  // namespace

EmojiLexicon EmojiLexicon::from_tsv(std::string_view tsv, const std::string& origin) {
    EmojiLexicon lex;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= tsv.size()) {
        std::size_t end = tsv.find('\n', start);
        if (end == std::string_view::npos) end = tsv.size();
        std::string_view line = tsv.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            if (start > tsv.size()) break;
            continue;
        }
        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw DataError(origin + ":" + std::to_string(line_no) +
                            ": expected <codepoints><TAB><name>");
        }
        std::string key = decode_hex_sequence(line.substr(0, tab), origin, line_no);
        std::string name(line.substr(tab + 1));
        if (name.empty()) {
            throw DataError(origin + ":" + std::to_string(line_no) + ": empty name");
        }
        lex.max_key_bytes_ = std::max(lex.max_key_bytes_, key.size());
        lex.lead_byte_[static_cast<unsigned char>(key[0])] = true;
        lex.names_[std::move(key)] = std::move(name);
    }
    return lex;
}

EmojiLexicon EmojiLexicon::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open emoji lexicon: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_tsv(buf.str(), path.string());
}

const EmojiLexicon& EmojiLexicon::bundled() {
    static const EmojiLexicon lex =
        from_tsv(detail::kEmojiLexiconTsv, "<bundled emoji lexicon>");
    return lex;
}

bool EmojiLexicon::contains(std::string_view utf8_sequence) const {
    return names_.find(std::string(utf8_sequence)) != names_.end();
}

std::string EmojiLexicon::convert(std::string_view text, EmojiFormat format) const {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    std::string probe;
    while (i < text.size()) {
        unsigned char lead = static_cast<unsigned char>(text[i]);
        if (lead_byte_[lead]) {
            // longest match wins so ZWJ/skin-tone sequences stay single units
            std::size_t limit = std::min(max_key_bytes_, text.size() - i);
            for (std::size_t len = limit; len >= 1; --len) {
                probe.assign(text, i, len);
                auto it = names_.find(probe);
                if (it == names_.end()) continue;
                if (!out.empty() && !is_space(out.back())) out.push_back(' ');
                out += render(it->second, format);
                i += len;
                if (i < text.size() && !is_space(text[i])) out.push_back(' ');
                goto matched;
            }
        }
        out.push_back(text[i]);
        ++i;
    matched:;
    }
    return out;
}

std::string convert_emoji(std::string_view text, EmojiFormat format) {
    return EmojiLexicon::bundled().convert(text, format);
}

}  // namespace infotweet
