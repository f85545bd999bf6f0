#include "infotweet/preprocessing.hpp"

#include <algorithm>
#include <cctype>

#include "infotweet/errors.hpp"

namespace infotweet {

namespace {

constexpr std::string_view kMentionToken = "@USER";
constexpr std::string_view kUrlToken = "HTTPURL";

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::vector<std::string> whitespace_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

void apply_policy(std::vector<std::string>& tokens, std::string_view target,
                  const TokenPolicy& policy) {
    if (policy.mode == TokenPolicy::Mode::Keep) return;
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (auto& t : tokens) {
        if (t != target) {
            out.push_back(std::move(t));
        } else if (policy.mode == TokenPolicy::Mode::Replace) {
            out.push_back(policy.filler);
        }  // Remove drops the token
    }
    tokens = std::move(out);
}

}  // namespace

TokenPolicy TokenPolicy::replace_with(std::string filler) {
    if (filler.empty() ||
        std::any_of(filler.begin(), filler.end(), [](char c) { return is_space(c); })) {
        throw DataError("token filler must be non-empty and contain no whitespace");
    }
    return {Mode::Replace, std::move(filler)};
}

PreprocessingProfile builtin_profile(EncoderFamily family) {
    PreprocessingProfile p;
    switch (family) {
        case EncoderFamily::CovidTwitterBert:
            p.name = "covid-twitter-bert";
            p.mention_policy = TokenPolicy::replace_with("twitteruser");
            p.url_policy = TokenPolicy::replace_with("twitterurl");
            p.emoji_format = EmojiFormat::ColonDelimited;
            p.lowercase = true;
            break;
        case EncoderFamily::Bertweet:
            p.name = "bertweet";
            p.mention_policy = TokenPolicy::replace_with("@USER");
            p.url_policy = TokenPolicy::replace_with("HTTPURL");
            p.emoji_format = EmojiFormat::ColonDelimited;
            p.lowercase = false;
            p.case_exempt_tokens = {"@USER", "HTTPURL"};
            break;
        case EncoderFamily::GenericCased:
            p.name = "generic-cased";
            p.mention_policy = TokenPolicy::remove();
            p.url_policy = TokenPolicy::remove();
            p.emoji_format = EmojiFormat::Descriptive;
            p.lowercase = false;
            break;
        case EncoderFamily::GenericUncased:
            p.name = "generic-uncased";
            p.mention_policy = TokenPolicy::remove();
            p.url_policy = TokenPolicy::remove();
            p.emoji_format = EmojiFormat::Descriptive;
            p.lowercase = true;
            break;
    }
    return p;
}

PreprocessingProfile profile_by_name(const std::string& name) {
    if (name == "covid-twitter-bert") return builtin_profile(EncoderFamily::CovidTwitterBert);
    if (name == "bertweet") return builtin_profile(EncoderFamily::Bertweet);
    if (name == "generic-cased") return builtin_profile(EncoderFamily::GenericCased);
    if (name == "generic-uncased") return builtin_profile(EncoderFamily::GenericUncased);
    std::string valid;
    for (const auto& n : builtin_profile_names()) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw UsageError("unknown profile \"" + name + "\" (valid: " + valid + ")");
}

std::vector<std::string> builtin_profile_names() {
    return {"covid-twitter-bert", "bertweet", "generic-cased", "generic-uncased"};
}

std::string normalize(std::string_view text, const PreprocessingProfile& profile,
                      const EmojiLexicon& lexicon) {
    // steps 1+2: mention/URL policies over whitespace tokens
    std::vector<std::string> tokens = whitespace_tokens(text);
    apply_policy(tokens, kMentionToken, profile.mention_policy);
    apply_policy(tokens, kUrlToken, profile.url_policy);

    // step 3: emoji conversion
    std::string converted = lexicon.convert(join(tokens), profile.emoji_format);

    // step 4: casing, with per-token exemptions
    if (profile.lowercase) {
        tokens = whitespace_tokens(converted);
        for (auto& t : tokens) {
            if (std::find(profile.case_exempt_tokens.begin(),
                          profile.case_exempt_tokens.end(),
                          t) != profile.case_exempt_tokens.end()) {
                continue;
            }
            std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) {
                return static_cast<char>(std::tolower(c));
            });
        }
        converted = join(tokens);
    }

    // step 5: collapse + trim (token join above already collapses, but the
    // uncased path may not have re-tokenized)
    return join(whitespace_tokens(converted));
}

}  // namespace infotweet
