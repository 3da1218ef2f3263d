#include "llr/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "llr/error.hpp"

namespace llr::textprep {

const std::array<PreprocessConfig, 4>& PreprocessConfig::all() {
    static const std::array<PreprocessConfig, 4> configs{{
        {false, false}, // none
        {true, false},  // stem
        {false, true},  // stop
        {true, true},   // stemstop
    }};
    return configs;
}

std::string_view PreprocessConfig::label() const {
    if (stemming && stopping) return "stemstop";
    if (stemming) return "stem";
    if (stopping) return "stop";
    return "none";
}

PreprocessConfig PreprocessConfig::from_label(std::string_view label) {
    for (const auto& cfg : all()) {
        if (cfg.label() == label) return cfg;
    }
    throw ConfigError("unknown preprocessing label: " + std::string(label));
}

TokenStream tokenize(std::string_view text) {
    TokenStream tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2 &&
            !std::all_of(current.begin(), current.end(), [](unsigned char c) {
                return std::isdigit(c);
            })) {
            tokens.push_back(current);
        }
        current.clear();
    };
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open stopword file: " + path.string());
    }
    StopwordSet words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    return words;
}

TokenStream remove_stopwords(TokenStream stream, const StopwordSet& stopwords) {
    std::erase_if(stream,
                  [&](const std::string& t) { return stopwords.contains(t); });
    return stream;
}

// ---------------------------------------------------------------------------
// Porter stemmer, original 1980 definition. Within each step the longest
// matching suffix selects the rule; if that rule's condition fails, the step
// does nothing. Words shorter than 3 letters are returned unchanged.
// ---------------------------------------------------------------------------
namespace {

class Porter {
public:
    explicit Porter(std::string word) : w_(std::move(word)) {}

    std::string run() {
        if (w_.size() < 3) return w_;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
        return w_;
    }

private:
    std::string w_;

    bool is_consonant(std::size_t i) const {
        switch (w_[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(i - 1);
        default:
            return true;
        }
    }

    // m of w_[0..len): the VC-sequence count in [C](VC){m}[V].
    int measure(std::size_t len) const {
        int m = 0;
        std::size_t i = 0;
        while (i < len && is_consonant(i)) ++i;
        while (i < len) {
            while (i < len && !is_consonant(i)) ++i;
            if (i >= len) break;
            ++m;
            while (i < len && is_consonant(i)) ++i;
        }
        return m;
    }

    bool has_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i) {
            if (!is_consonant(i)) return true;
        }
        return false;
    }

    // *d: stem ends with a double consonant.
    bool double_consonant(std::size_t len) const {
        return len >= 2 && w_[len - 1] == w_[len - 2] && is_consonant(len - 1);
    }

    // *o: stem ends cvc where the final c is not w, x or y.
    bool cvc(std::size_t len) const {
        if (len < 3) return false;
        if (!is_consonant(len - 3) || is_consonant(len - 2) ||
            !is_consonant(len - 1)) {
            return false;
        }
        char c = w_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view suffix) const {
        return w_.size() >= suffix.size() &&
               std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
    }

    std::size_t stem_len(std::string_view suffix) const {
        return w_.size() - suffix.size();
    }

    void replace(std::string_view suffix, std::string_view with) {
        w_.resize(w_.size() - suffix.size());
        w_.append(with);
    }

    struct Rule {
        std::string_view suffix;
        std::string_view replacement;
        int min_measure; // condition m(stem) > min_measure
    };

    // Applies the longest matching rule if its measure condition holds.
    void apply_rules(std::initializer_list<Rule> rules) {
        const Rule* best = nullptr;
        for (const auto& r : rules) {
            if (ends(r.suffix) &&
                (!best || r.suffix.size() > best->suffix.size())) {
                best = &r;
            }
        }
        if (best && measure(stem_len(best->suffix)) > best->min_measure) {
            replace(best->suffix, best->replacement);
        }
    }

    void step1a() {
        if (ends("sses")) {
            replace("sses", "ss");
        } else if (ends("ies")) {
            replace("ies", "i");
        } else if (ends("ss")) {
            // unchanged
        } else if (ends("s")) {
            replace("s", "");
        }
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(stem_len("eed")) > 0) replace("eed", "ee");
            return;
        }
        bool fired = false;
        if (ends("ed") && has_vowel(stem_len("ed"))) {
            replace("ed", "");
            fired = true;
        } else if (ends("ing") && has_vowel(stem_len("ing"))) {
            replace("ing", "");
            fired = true;
        }
        if (!fired) return;
        if (ends("at") || ends("bl") || ends("iz")) {
            w_.push_back('e');
        } else if (double_consonant(w_.size()) && !ends("l") && !ends("s") &&
                   !ends("z")) {
            w_.pop_back();
        } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
            w_.push_back('e');
        }
    }

    void step1c() {
        if (ends("y") && has_vowel(stem_len("y"))) {
            w_.back() = 'i';
        }
    }

    void step2() {
        apply_rules({
            {"ational", "ate", 0}, {"tional", "tion", 0}, {"enci", "ence", 0},
            {"anci", "ance", 0},   {"izer", "ize", 0},    {"abli", "able", 0},
            {"alli", "al", 0},     {"entli", "ent", 0},   {"eli", "e", 0},
            {"ousli", "ous", 0},   {"ization", "ize", 0}, {"ation", "ate", 0},
            {"ator", "ate", 0},    {"alism", "al", 0},    {"iveness", "ive", 0},
            {"fulness", "ful", 0}, {"ousness", "ous", 0}, {"aliti", "al", 0},
            {"iviti", "ive", 0},   {"biliti", "ble", 0},
        });
    }

    void step3() {
        apply_rules({
            {"icate", "ic", 0}, {"ative", "", 0}, {"alize", "al", 0},
            {"iciti", "ic", 0}, {"ical", "ic", 0}, {"ful", "", 0},
            {"ness", "", 0},
        });
    }

    void step4() {
        // ion carries the extra (*S or *T) condition, handled separately if
        // it is the longest match.
        const Rule* best = nullptr;
        static constexpr Rule rules[] = {
            {"al", "", 1},    {"ance", "", 1}, {"ence", "", 1}, {"er", "", 1},
            {"ic", "", 1},    {"able", "", 1}, {"ible", "", 1}, {"ant", "", 1},
            {"ement", "", 1}, {"ment", "", 1}, {"ent", "", 1},  {"ion", "", 1},
            {"ou", "", 1},    {"ism", "", 1},  {"ate", "", 1},  {"iti", "", 1},
            {"ous", "", 1},   {"ive", "", 1},  {"ize", "", 1},
        };
        for (const auto& r : rules) {
            if (ends(r.suffix) &&
                (!best || r.suffix.size() > best->suffix.size())) {
                best = &r;
            }
        }
        if (!best) return;
        std::size_t len = stem_len(best->suffix);
        if (measure(len) <= 1) return;
        if (best->suffix == "ion" && !(len >= 1 && (w_[len - 1] == 's' ||
                                                    w_[len - 1] == 't'))) {
            return;
        }
        replace(best->suffix, "");
    }

    void step5a() {
        if (!ends("e")) return;
        std::size_t len = stem_len("e");
        int m = measure(len);
        if (m > 1 || (m == 1 && !cvc(len))) {
            replace("e", "");
        }
    }

    void step5b() {
        if (measure(w_.size()) > 1 && double_consonant(w_.size()) &&
            ends("l")) {
            w_.pop_back();
        }
    }
};

} // namespace

std::string porter_stem(std::string_view word) {
    return Porter(std::string(word)).run();
}

TokenStream stem(TokenStream stream) {
    for (auto& token : stream) {
        token = porter_stem(token);
    }
    return stream;
}

TokenStream preprocess(std::string_view text, PreprocessConfig cfg,
                       const StopwordSet& stopwords) {
    TokenStream tokens = tokenize(text);
    if (cfg.stopping) tokens = remove_stopwords(std::move(tokens), stopwords);
    if (cfg.stemming) tokens = stem(std::move(tokens));
    return tokens;
}

} // namespace llr::textprep
