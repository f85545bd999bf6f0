#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "infotweet/emoji.hpp"

namespace infotweet {

// What to do with a masked-token occurrence (@USER / HTTPURL).
struct TokenPolicy {
    enum class Mode { Remove, Replace, Keep };

    Mode mode = Mode::Keep;
    std::string filler;  // Replace only; non-empty, no whitespace

    static TokenPolicy remove() { return {Mode::Remove, ""}; }
    static TokenPolicy keep() { return {Mode::Keep, ""}; }
    static TokenPolicy replace_with(std::string filler);
};

enum class EncoderFamily {
    CovidTwitterBert,
    Bertweet,
    GenericCased,
    GenericUncased,
};

// Per-encoder-family normalization policy. Application is deterministic:
// the same (text, profile) pair always yields the same output.
struct PreprocessingProfile {
    std::string name;
    TokenPolicy mention_policy;
    TokenPolicy url_policy;
    EmojiFormat emoji_format = EmojiFormat::Descriptive;
    bool lowercase = false;
    // Tokens the lowercase step must not touch. Pretrained vocabularies
    // expect their fillers in exact case.
    std::vector<std::string> case_exempt_tokens;
};

PreprocessingProfile builtin_profile(EncoderFamily family);

// Profile lookup by CLI name ("covid-twitter-bert", "bertweet",
// "generic-cased", "generic-uncased"); UsageError on anything else.
PreprocessingProfile profile_by_name(const std::string& name);
std::vector<std::string> builtin_profile_names();

// Normalization pipeline, applied in this order:
//   1. mention policy on literal "@USER" tokens
//   2. URL policy on literal "HTTPURL" tokens
//   3. emoji conversion per profile
//   4. lowercasing (ASCII) if profile.lowercase, skipping exempt tokens
//   5. whitespace collapse and trim
// The order keeps fillers out of emoji conversion and applies casing last.
std::string normalize(std::string_view text, const PreprocessingProfile& profile,
                      const EmojiLexicon& lexicon = EmojiLexicon::bundled());

}  // namespace infotweet
