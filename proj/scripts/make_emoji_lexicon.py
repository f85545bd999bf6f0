#!/usr/bin/env python3
"""Generate data/emoji_lexicon.tsv, the pinned emoji-name snapshot.

One mapping per line: '<hex codepoints joined by "-">\t<snake_case_name>'.
Names come from unicodedata, lowercased and underscore-joined, with a short
override list where the common short name differs from the formal character
name. The output file is committed; regenerating it must be a conscious
decision because normalization golden files depend on its exact content.
"""

import sys
import unicodedata

# Blocks scanned for emoji-like symbols.
RANGES = [
    (0x2139, 0x2139),
    (0x2190, 0x21FF),   # arrows (subset filtered by name)
    (0x2300, 0x23FF),   # misc technical (watch, hourglass, ...)
    (0x25A0, 0x25FF),
    (0x2600, 0x26FF),   # misc symbols
    (0x2700, 0x27BF),   # dingbats
    (0x2B00, 0x2BFF),
    (0x1F000, 0x1F02F),
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
]

# Keep only codepoints whose formal name looks like a pictograph, not an
# abstract arrow/box-drawing symbol. Everything in the dedicated emoji
# blocks passes; the shared symbol blocks are filtered by keyword.
DEDICATED = [(0x1F300, 0x1F5FF), (0x1F600, 0x1F64F), (0x1F680, 0x1F6FF),
             (0x1F900, 0x1F9FF), (0x1FA70, 0x1FAFF)]
KEYWORDS = ("FACE", "HEART", "HAND", "STAR", "SUN ", "CLOUD", "UMBRELLA",
            "SNOW", "COMET", "MOON", "FIRE", "DROPLET", "BALLOON", "PARTY",
            "SPARKLE", "CHECK", "CROSS MARK", "WARNING", "HOURGLASS",
            "WATCH", "ALARM", "TIMER", "ARROW", "RECYCLING", "ANCHOR",
            "AIRPLANE", "TENT", "FOUNTAIN", "FLAG", "SKULL", "CAT",
            "DOG", "WHITE MEDIUM", "BLACK CIRCLE", "WHITE CIRCLE")

OVERRIDES = {
    (0x2764,): "red_heart",
    (0x2764, 0xFE0F): "red_heart",
    (0x1F44D,): "thumbs_up",
    (0x1F44E,): "thumbs_down",
    (0x1F44F,): "clapping_hands",
    (0x1F64F,): "folded_hands",
    (0x1F602,): "face_with_tears_of_joy",
    (0x1F62D,): "loudly_crying_face",
    (0x1F525,): "fire",
    (0x1F389,): "party_popper",
    (0x1F4AA,): "flexed_biceps",
    (0x1F937,): "person_shrugging",
    (0x1F926,): "person_facepalming",
    (0x1F680,): "rocket",
    (0x1F4A9,): "pile_of_poo",
    (0x1F923,): "rolling_on_the_floor_laughing",
    (0x1F970,): "smiling_face_with_hearts",
    (0x1F97A,): "pleading_face",
    (0x263A,): "smiling_face",
    (0x263A, 0xFE0F): "smiling_face",
    (0x1F637,): "face_with_medical_mask",
    (0x1F9A0,): "microbe",
    (0x1F3FB,): "light_skin_tone",
    (0x1F3FC,): "medium_light_skin_tone",
    (0x1F3FD,): "medium_skin_tone",
    (0x1F3FE,): "medium_dark_skin_tone",
    (0x1F3FF,): "dark_skin_tone",
}

# Hand-picked multi-codepoint sequences so ZWJ and skin-tone handling is
# exercised end to end. Kept deliberately small.
SEQUENCES = {
    (0x1F44D, 0x1F3FB): "thumbs_up_light_skin_tone",
    (0x1F44D, 0x1F3FF): "thumbs_up_dark_skin_tone",
    (0x1F64F, 0x1F3FD): "folded_hands_medium_skin_tone",
    (0x1F468, 0x200D, 0x2695, 0xFE0F): "man_health_worker",
    (0x1F469, 0x200D, 0x2695, 0xFE0F): "woman_health_worker",
    (0x1F468, 0x200D, 0x1F469, 0x200D, 0x1F466): "family_man_woman_boy",
    (0x1F3F3, 0xFE0F, 0x200D, 0x1F308): "rainbow_flag",
    (0x23, 0xFE0F, 0x20E3): "keycap_hash",
    (0x31, 0xFE0F, 0x20E3): "keycap_1",
}


def snake(name: str) -> str:
    out = []
    for ch in name.lower():
        out.append(ch if ch.isalnum() else "_")
    s = "".join(out)
    while "__" in s:
        s = s.replace("__", "_")
    return s.strip("_")


def wanted(cp: int, name: str) -> bool:
    for lo, hi in DEDICATED:
        if lo <= cp <= hi:
            return True
    if cp >= 0x2600 and cp <= 0x27BF:
        return True
    return any(k in name for k in KEYWORDS)


def main() -> int:
    rows = {}
    for lo, hi in RANGES:
        for cp in range(lo, hi + 1):
            try:
                name = unicodedata.name(chr(cp))
            except ValueError:
                continue
            if not wanted(cp, name):
                continue
            rows[(cp,)] = snake(name)
            # presentation-selector variant maps to the same name
            rows[(cp, 0xFE0F)] = snake(name)
    rows.update({k: v for k, v in OVERRIDES.items()})
    rows.update(SEQUENCES)

    with open(sys.argv[1] if len(sys.argv) > 1 else "data/emoji_lexicon.tsv",
              "w", encoding="utf-8") as f:
        for seq in sorted(rows):
            key = "-".join(f"{cp:X}" for cp in seq)
            f.write(f"{key}\t{rows[seq]}\n")
    print(f"{len(rows)} entries")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
