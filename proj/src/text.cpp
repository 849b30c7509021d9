#include "emerge/text.hpp"

#include <cstdint>

#include "emerge/csv.hpp"
#include "emerge/error.hpp"

namespace emerge {

namespace {

enum class CharClass { letter, digit, hyphen, apostrophe, space, punct };

struct CodePoint {
    char32_t value;
    std::size_t length;  // bytes consumed
    bool valid;
};

CodePoint decode(std::string_view s, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) return {b0, 1, true};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {0xFFFD, 1, false};
    }
    if (i + len > s.size()) return {0xFFFD, 1, false};
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return {0xFFFD, 1, false};
        cp = (cp << 6) | (b & 0x3F);
    }
    return {cp, len, true};
}

void encode(char32_t cp, std::string& out) {
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

CharClass classify(const CodePoint& cp) {
    const char32_t c = cp.value;
    if (!cp.valid) return CharClass::punct;
    if (c < 0x80) {
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return CharClass::letter;
        if (c >= '0' && c <= '9') return CharClass::digit;
        if (c == '-') return CharClass::hyphen;
        if (c == '\'') return CharClass::apostrophe;
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v')
            return CharClass::space;
        return CharClass::punct;
    }
    if (c == 0x00A0 || c == 0x2007 || c == 0x202F || c == 0x3000 || (c >= 0x2000 && c <= 0x200A))
        return CharClass::space;
    if (c == 0x2010 || c == 0x2011) return CharClass::hyphen;
    if (c == 0x2019) return CharClass::apostrophe;
    if ((c >= 0x00A1 && c <= 0x00BF) || c == 0x00D7 || c == 0x00F7 ||
        (c >= 0x2000 && c <= 0x206F) || (c >= 0x2190 && c <= 0x2BFF) ||
        (c >= 0x2E00 && c <= 0x2E7F) || (c >= 0x3000 && c <= 0x303F) ||
        (c >= 0xFE30 && c <= 0xFE4F) || (c >= 0xFF00 && c <= 0xFF0F) ||
        (c >= 0xFF1A && c <= 0xFF20) || (c >= 0xFF3B && c <= 0xFF40) ||
        (c >= 0xFF5B && c <= 0xFF65) || c == 0xFEFF || c == 0xFFFD)
        return CharClass::punct;
    return CharClass::letter;
}

char32_t to_lower(char32_t c) {
    if (c >= 'A' && c <= 'Z') return c + 32;
    if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 32;
    if (c >= 0x0100 && c <= 0x017F && c != 0x0130 && c != 0x0131 && c != 0x0138 && c != 0x0149 &&
        c != 0x017F) {
        // Latin Extended-A pairs: even upper, odd lower, except the
        // 0x0139-0x0148 and 0x0179-0x017E runs which are odd upper.
        const bool odd_upper = (c >= 0x0139 && c <= 0x0148) || (c >= 0x0179 && c <= 0x017E);
        if (odd_upper) return (c % 2 == 1) ? c + 1 : c;
        return (c % 2 == 0) ? c + 1 : c;
    }
    return c;
}

struct Char {
    char32_t value;
    CharClass cls;
};

// A raw word between separators, plus whether punctuation followed it.
struct Chunk {
    std::vector<Char> chars;
    bool punct_after = false;
};

std::string to_utf8(const std::vector<Char>& chars, std::size_t b, std::size_t e, bool lower) {
    std::string out;
    for (std::size_t i = b; i < e; ++i) {
        if (chars[i].cls == CharClass::apostrophe) continue;
        encode(lower ? to_lower(chars[i].value) : chars[i].value, out);
    }
    return out;
}

std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    return n;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string apply_suffix_rules(std::string_view w) {
    std::string s(w);
    if (ends_with(s, "ies")) {
        if (s.size() > 4) return s.substr(0, s.size() - 3) + "y";
        return s.substr(0, s.size() - 1);
    }
    if (ends_with(s, "sses")) return s.substr(0, s.size() - 2);
    if (ends_with(s, "xes") || ends_with(s, "ches") || ends_with(s, "shes"))
        return s.substr(0, s.size() - 2);
    if (ends_with(s, "s") && s.size() > 3 && !ends_with(s, "ss") && !ends_with(s, "us") &&
        !ends_with(s, "is"))
        return s.substr(0, s.size() - 1);
    return s;
}

enum class ItemKind { content, connector, brk };

struct Item {
    ItemKind kind;
    std::string word;
    std::string surface;
};

}  // namespace

std::vector<std::string> TokenSequence::tokens() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < words.size(); ++i)
        if (!connector[i]) out.push_back(words[i]);
    return out;
}

void TokenSequence::append_segment(const TokenSequence& other) {
    if (other.empty()) return;
    if (!boundary_after.empty()) boundary_after.back() = true;
    words.insert(words.end(), other.words.begin(), other.words.end());
    connector.insert(connector.end(), other.connector.begin(), other.connector.end());
    boundary_after.insert(boundary_after.end(), other.boundary_after.begin(),
                          other.boundary_after.end());
    surfaces.insert(surfaces.end(), other.surfaces.begin(), other.surfaces.end());
}

std::string TokenSequence::to_text() const {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        out += words[i];
        if (i + 1 < words.size()) out += boundary_after[i] ? ". " : " ";
    }
    return out;
}

std::unordered_set<std::string> parse_stopword_list(std::string_view text) {
    std::unordered_set<std::string> out;
    for (auto line : csv::lines(text)) {
        line = csv::trim(line);
        if (line.empty() || line.front() == '#') continue;
        out.emplace(line);
    }
    return out;
}

std::unordered_map<std::string, std::string> parse_lemma_exceptions(std::string_view text) {
    std::unordered_map<std::string, std::string> out;
    for (auto line : csv::lines(text)) {
        line = csv::trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            // A bare word is its own lemma.
            if (line.find(' ') != std::string_view::npos)
                throw ConfigError("lemma exceptions: expected 'word<TAB>lemma', got '" + std::string(line) + "'");
            out.emplace(std::string(line), std::string(line));
        } else {
            out.emplace(std::string(csv::trim(line.substr(0, tab))),
                        std::string(csv::trim(line.substr(tab + 1))));
        }
    }
    return out;
}

TextNormalizer::TextNormalizer()
    : TextNormalizer(parse_stopword_list(builtin_stopwords_text()),
                     parse_lemma_exceptions(builtin_lemma_exceptions_text())) {}

TextNormalizer::TextNormalizer(std::unordered_set<std::string> stopwords,
                               std::unordered_map<std::string, std::string> lemma_exceptions)
    : stopwords_(std::move(stopwords)), exceptions_(std::move(lemma_exceptions)) {
    // Exception targets must be fixed points or lemmatize stops being idempotent.
    for (const auto& [word, lemma] : exceptions_) {
        if (this->lemmatize(lemma) != lemma)
            throw ConfigError("lemma exception '" + word + "' -> '" + lemma +
                              "' maps to a non-fixed-point lemma");
    }
}

TextNormalizer TextNormalizer::from_files(const std::filesystem::path& stopwords_path,
                                          const std::filesystem::path& exceptions_path) {
    auto stop = stopwords_path.empty() ? parse_stopword_list(builtin_stopwords_text())
                                       : parse_stopword_list(csv::read_file(stopwords_path));
    auto exc = exceptions_path.empty() ? parse_lemma_exceptions(builtin_lemma_exceptions_text())
                                       : parse_lemma_exceptions(csv::read_file(exceptions_path));
    return TextNormalizer(std::move(stop), std::move(exc));
}

bool TextNormalizer::is_stopword(std::string_view word) const {
    return stopwords_.contains(std::string(word));
}

bool TextNormalizer::is_connector(std::string_view word) {
    return word == "of" || word == "for" || word == "on" || word == "in" || word == "and";
}

std::string TextNormalizer::lemmatize(std::string_view token) const {
    if (auto it = exceptions_.find(std::string(token)); it != exceptions_.end()) return it->second;
    auto lemma = apply_suffix_rules(token);
    if (auto it = exceptions_.find(lemma); it != exceptions_.end()) return it->second;
    return lemma;
}

TokenSequence TextNormalizer::normalize(std::string_view raw_text) const {
    // Pass 1: chunks of word characters separated by spaces or punctuation.
    std::vector<Chunk> chunks;
    Chunk current;
    auto flush = [&](bool punct) {
        if (!current.chars.empty()) {
            current.punct_after = punct;
            chunks.push_back(std::move(current));
            current = Chunk{};
        } else if (punct && !chunks.empty()) {
            chunks.back().punct_after = true;
        }
    };
    for (std::size_t i = 0; i < raw_text.size();) {
        const auto cp = decode(raw_text, i);
        i += cp.length;
        const auto cls = classify(cp);
        if (cls == CharClass::space) {
            flush(false);
        } else if (cls == CharClass::punct) {
            flush(true);
        } else {
            current.chars.push_back({cp.value, cls});
        }
    }
    flush(false);

    // Pass 2: split chunks on non-internal hyphens, classify words.
    std::vector<Item> items;
    auto brk = [&] {
        if (!items.empty() && items.back().kind != ItemKind::brk) items.push_back({ItemKind::brk, {}, {}});
    };
    auto is_wordchar = [](CharClass c) { return c == CharClass::letter || c == CharClass::digit; };

    auto emit_word = [&](const std::vector<Char>& chars, std::size_t b, std::size_t e) {
        // Possessive "'s" is dropped; other apostrophes are deleted.
        if (e - b >= 2 && chars[e - 2].cls == CharClass::apostrophe &&
            (chars[e - 1].value == 's' || chars[e - 1].value == 'S'))
            e -= 2;
        while (b < e && chars[b].cls == CharClass::apostrophe) ++b;
        while (e > b && chars[e - 1].cls == CharClass::apostrophe) --e;
        if (b >= e) return;
        bool has_digit = false;
        for (std::size_t k = b; k < e; ++k) has_digit |= chars[k].cls == CharClass::digit;
        std::string lower = to_utf8(chars, b, e, true);
        if (has_digit || utf8_length(lower) < 2) {
            brk();
            return;
        }
        if (is_connector(lower)) {
            items.push_back({ItemKind::connector, lower, to_utf8(chars, b, e, false)});
            return;
        }
        if (is_stopword(lower)) {
            brk();
            return;
        }
        auto lemma = lemmatize(lower);
        if (utf8_length(lemma) < 2 || is_stopword(lemma) || is_connector(lemma)) {  // "others" -> "other"
            brk();
            return;
        }
        items.push_back({ItemKind::content, std::move(lemma), to_utf8(chars, b, e, false)});
    };

    for (const auto& chunk : chunks) {
        const auto& cs = chunk.chars;
        std::size_t start = 0;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (cs[k].cls != CharClass::hyphen) continue;
            const bool internal = k > 0 && k + 1 < cs.size() && is_wordchar(cs[k - 1].cls) &&
                                  is_wordchar(cs[k + 1].cls);
            if (internal) continue;
            emit_word(cs, start, k);
            brk();
            start = k + 1;
        }
        emit_word(cs, start, cs.size());
        if (chunk.punct_after) brk();
    }

    // Pass 3: keep connectors only between two content words.
    TokenSequence seq;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& it = items[i];
        if (it.kind == ItemKind::brk) {
            if (!seq.empty()) seq.boundary_after.back() = true;
            continue;
        }
        if (it.kind == ItemKind::connector) {
            const bool inside = i > 0 && items[i - 1].kind == ItemKind::content &&
                                i + 1 < items.size() && items[i + 1].kind == ItemKind::content;
            if (!inside) {
                if (!seq.empty()) seq.boundary_after.back() = true;
                continue;
            }
        }
        seq.words.push_back(it.word);
        seq.connector.push_back(it.kind == ItemKind::connector);
        seq.boundary_after.push_back(false);
        seq.surfaces.push_back(it.surface);
    }
    return seq;
}

TokenSequence TextNormalizer::normalize_record(std::string_view title,
                                               std::string_view abstract) const {
    auto seq = normalize(title);
    seq.append_segment(normalize(abstract));
    return seq;
}

const TextNormalizer& default_normalizer() {
    static const TextNormalizer instance;
    return instance;
}

TokenSequence normalize(std::string_view raw_text) { return default_normalizer().normalize(raw_text); }

std::string lemmatize(std::string_view token) { return default_normalizer().lemmatize(token); }

std::string lowercase(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        const auto cp = decode(text, i);
        if (cp.valid) {
            encode(to_lower(cp.value), out);
        } else {
            out.push_back(text[i]);
        }
        i += cp.length;
    }
    return out;
}

}  // namespace emerge
