"""Word stock and page-text generation for synthetic documents.

The word lists are hand-picked to stay inside what the cell inventory
and the matra composer can reproduce exactly:

* only characters present in the mapping tables (no nukta consonants,
  no vocalic r, no candrabindu, no visarga);
* an independent vowel never follows a bare consonant inside a word
  (vowels after matras are fine), so print -> cells -> print is lossless;
* no word starts with a letter whose cell has no left-column dot
  (Devanagari kha/bha), because the leftmost inked column of a line
  anchors cell segmentation;
* every word contains at least one cell with a top-row dot, since the
  first inked row of a line anchors its band.
"""

from __future__ import annotations

import random

ENGLISH_WORDS = (
    "the", "and", "that", "this", "then", "them", "they", "there", "here",
    "where", "when", "what", "which", "while", "white", "water", "weather",
    "father", "mother", "brother", "another", "together", "gather",
    "feather", "leather", "rather", "other", "bead", "bean", "beam",
    "bear", "beat", "east", "easy", "each", "reach", "teach", "beach",
    "read", "ready", "really", "sea", "season", "reason", "great",
    "asked", "walked", "filled", "needed", "wanted", "played", "opened",
    "turned", "happened", "learned", "listened", "started", "seemed",
    "looked", "worked", "lived", "loved", "moved", "used", "called",
    "ended", "added", "edge", "under", "over", "after", "later", "never",
    "better", "letter", "matter", "summer", "winter", "dinner", "paper",
    "river", "silver", "member", "number", "wonder", "order", "offer",
    "cover", "corner", "garden", "market", "modern", "person", "but",
    "can", "from", "for", "of", "with", "was", "his", "her", "had",
    "has", "have", "not", "are", "all", "one", "two", "out", "our",
    "old", "new", "now", "how", "who", "why", "yes", "you", "your",
    "time", "year", "work", "life", "hand", "part", "home", "side",
    "child", "world", "school", "house", "place", "night", "point",
    "story", "fact", "idea", "small", "large", "early", "young",
    "found", "heard", "stood", "light", "green", "round", "paint",
)

HINDI_WORDS = (
    "राम", "नाम", "काम", "पानी", "समय", "जीवन", "सुबह", "शाम", "रात",
    "दिन", "सूरज", "चंदा", "तारा", "आकाश", "धरती", "नदी", "पर्वत",
    "जंगल", "फूल", "फल", "दूध", "घास", "गाय", "तोता", "मोर", "हाथी",
    "शेर", "हिरन", "मकान", "कमरा", "रसोई", "किताब", "कलम", "कागज",
    "शिक्षक", "पुस्तक", "मंदिर", "नगर", "गांव", "रास्ता", "बाजार",
    "दुकान", "पैसा", "रुपया", "सोना", "चांदी", "लोहा", "पत्थर",
    "मिट्टी", "हवा", "आग", "पौधा", "पत्ता", "बीज", "किसान", "अनाज",
    "चावल", "दाल", "रोटी", "दही", "मिठाई", "चाय", "नमक", "चीनी",
    "तेल", "आटा", "माता", "पिता", "बहन", "बेटा", "बेटी", "दादा",
    "दादी", "नानी", "चाचा", "मामा", "दोस्त", "मित्र", "गुरु", "राजा",
    "रानी", "सपना", "कहानी", "गीत", "संगीत", "नाच", "बाल", "मन",
    "तन", "धन", "जल", "वन", "हल", "नया", "पुराना", "अच्छा", "छोटा",
    "लंबा", "ऊंचा", "नीचा", "गरम", "ठंडा", "मीठा", "लाल", "पीला",
    "हरा", "नीला", "काला", "सफेद", "धूप", "छाया", "वर्षा", "बादल",
    "बिजली", "तूफान", "हिमालय", "गंगा", "यमुना", "सागर", "झील",
    "तालाब", "कुआं", "नाव", "जाल", "लहर", "रेत", "मोती", "हीरा",
)

TAMIL_WORDS = (
    "நான்", "நீங்கள்", "அவன்", "அவள்", "அது", "இது", "யார்", "என்ன",
    "எங்கே", "வணக்கம்", "நன்றி", "தமிழ்", "மொழி", "நாடு", "ஊர்",
    "வீடு", "கதவு", "ஜன்னல்", "மரம்", "இலை", "பூ", "காய்", "பழம்",
    "வேர்", "விதை", "மண்", "நீர்", "தண்ணீர்", "காற்று", "நெருப்பு",
    "வானம்", "நிலா", "சூரியன்", "கடல்", "மலை", "ஆறு", "மழை", "பனி",
    "வெயில்", "காடு", "வயல்", "நெல்", "அரிசி", "சோறு", "பால்",
    "தேநீர்", "தேன்", "உப்பு", "இனிப்பு", "காரம்", "அம்மா", "அப்பா",
    "அண்ணன்", "தங்கை", "தாத்தா", "பாட்டி", "மாமா", "நண்பன்",
    "ஆசிரியர்", "மாணவன்", "பள்ளி", "புத்தகம்", "பேனா", "பலகை",
    "வகுப்பு", "பாடம்", "கதை", "பாட்டு", "இசை", "நடனம்", "ஓட்டம்",
    "நடை", "கை", "கால்", "கண்", "காது", "மூக்கு", "வாய்", "பல்",
    "தலை", "முடி", "வயிறு", "இதயம்", "நகரம்", "தெரு", "கடை",
    "சந்தை", "பணம்", "வேலை", "மீன்", "படகு", "வலை", "ஆடு", "மாடு",
    "குதிரை", "யானை", "புலி", "சிங்கம்", "கரடி", "நரி", "முயல்",
    "காகம்", "குயில்", "மயில்", "கோழி", "முட்டை", "பாம்பு", "தேனீ",
    "வண்டு", "நல்ல", "பெரிய", "சிறிய", "புதிய", "பழைய", "அழகு",
    "வெள்ளை", "கருப்பு", "சிவப்பு", "மஞ்சள்", "பச்சை", "நீலம்",
)

_WORDS = {"en": ENGLISH_WORDS, "hi": HINDI_WORDS, "ta": TAMIL_WORDS}
_SENTENCE_END = {"en": ".", "hi": "।", "ta": "."}


def word_stock(language: str) -> tuple[str, ...]:
    try:
        return _WORDS[language]
    except KeyError:
        raise ValueError(f"no word stock for language {language!r}") from None


def make_page_text(language: str, n_words: int, seed: int) -> str:
    """Deterministic page of n_words whitespace-separated tokens.

    Sentences of 6..14 words with end marks, occasional commas and
    integer tokens; English additionally sees ! ; : and quoted words.
    """
    if n_words <= 0:
        raise ValueError("n_words must be positive")
    stock = word_stock(language)
    end_mark = _SENTENCE_END[language]
    rng = random.Random(seed)
    tokens: list[str] = []
    while len(tokens) < n_words:
        remaining = n_words - len(tokens)
        length = remaining if remaining < 6 else min(rng.randint(6, 14), remaining)
        sent = [rng.choice(stock) for _ in range(length)]
        if length >= 8 and rng.random() < 0.25:
            sent[rng.randrange(2, length - 2)] = str(rng.randint(1, 9999))
        if language == "en":
            if rng.random() < 0.12:
                k = rng.randrange(1, length - 1) if length > 2 else 0
                sent[k] = '"' + sent[k] + '"'
            if length >= 9 and rng.random() < 0.25:
                sent[length // 2] += rng.choice((";", ":"))
        if length >= 9 and rng.random() < 0.5:
            k = length // 2 - 1
            if not sent[k][-1] in ',;:':
                sent[k] += ","
        mark = end_mark
        if language == "en" and rng.random() < 0.15:
            mark = "!"
        sent[-1] += mark
        tokens.extend(sent)
    return " ".join(tokens)
