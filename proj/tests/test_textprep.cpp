#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "llr/error.hpp"
#include "llr/textprep.hpp"

using namespace llr;
using namespace llr::textprep;

TEST_CASE("tokenize lowercases, splits on non-alphanumerics, filters noise") {
    CHECK(tokenize("DB-connection pool!") ==
          TokenStream{"db", "connection", "pool"});
    CHECK(tokenize("") == TokenStream{});
    CHECK(tokenize("a 42 risk") == TokenStream{"risk"});
    CHECK(tokenize("x9 9x 99 xx") == TokenStream{"x9", "9x", "xx"});
    CHECK(tokenize("Server__outage...DB") ==
          TokenStream{"server", "outage", "db"});
}

TEST_CASE("stopword removal drops common words and keeps order") {
    CHECK(remove_stopwords({"the", "risk", "is", "high"}) ==
          TokenStream{"risk", "high"});
    CHECK(remove_stopwords({}) == TokenStream{});
    TokenStream none{"server", "outage", "db"};
    CHECK(remove_stopwords(none) == none);
}

TEST_CASE("stopword removal is idempotent") {
    std::mt19937 gen(7);
    std::vector<std::string> pool{"the", "risk", "is", "of", "cache",
                                  "with", "latency", "and", "db", "index"};
    for (int trial = 0; trial < 50; ++trial) {
        TokenStream stream;
        int n = static_cast<int>(gen() % 12);
        for (int i = 0; i < n; ++i) stream.push_back(pool[gen() % pool.size()]);
        auto once = remove_stopwords(stream);
        CHECK(remove_stopwords(once) == once);
    }
}

TEST_CASE("embedded stopword list matches the shipped resource file") {
    auto from_file = load_stopwords(
        std::filesystem::path(LLR_SOURCE_DIR) / "resources/stopwords_en.txt");
    CHECK(from_file.size() == 174);
    CHECK(from_file == default_stopwords());
}

TEST_CASE("stopword file override") {
    auto path = std::filesystem::temp_directory_path() / "llr_stops.txt";
    {
        std::ofstream out(path);
        out << "risk\nhigh\n";
    }
    auto custom = load_stopwords(path);
    CHECK(remove_stopwords({"the", "risk", "is", "high"}, custom) ==
          TokenStream{"the", "is"});
    CHECK_THROWS_AS(load_stopwords("/nonexistent/stopwords.txt"), ParseError);
}

// Expected stems hand-traced through the 1980 algorithm definition; the
// suffix-step vocabulary below is the algorithm's own published example set.
TEST_CASE("porter stems the published example vocabulary") {
    auto expect = [](std::string_view word, std::string_view stemmed) {
        CAPTURE(word);
        CHECK(porter_stem(word) == stemmed);
    };
    // step 1a
    expect("caresses", "caress");
    expect("ponies", "poni");
    expect("ties", "ti");
    expect("caress", "caress");
    expect("cats", "cat");
    // step 1b and its fix-ups
    expect("feed", "feed");
    expect("agreed", "agre");
    expect("plastered", "plaster");
    expect("bled", "bled");
    expect("motoring", "motor");
    expect("sing", "sing");
    expect("hopping", "hop");
    expect("tanned", "tan");
    expect("falling", "fall");
    expect("hissing", "hiss");
    expect("fizzed", "fizz");
    expect("failing", "fail");
    expect("filing", "file");
    // step 1c
    expect("happy", "happi");
    expect("sky", "sky");
    // steps 2-5 chains
    expect("relational", "relat"); // ate lands in step 5a's (m>1) E rule
    expect("conditional", "condit");
    expect("rational", "ration");
    expect("electricity", "electr");
    expect("hopefulness", "hope");
    expect("generalizations", "gener");
    expect("oscillators", "oscil");
    expect("replacement", "replac");
    expect("adjustable", "adjust");
    expect("dependent", "depend");
    // step 5
    expect("probate", "probat");
    expect("rate", "rate");
    expect("cease", "ceas");
    expect("controlled", "control");
    expect("rolled", "roll");
    // already stems
    expect("risk", "risk");
    expect("managers", "manag");
    expect("managed", "manag");
    // too short to touch
    expect("is", "is");
    expect("db", "db");
}

TEST_CASE("stem preserves order and count") {
    TokenStream stream{"managers", "managed", "risk"};
    CHECK(stem(stream) == TokenStream{"manag", "manag", "risk"});
}

TEST_CASE("preprocess pipelines") {
    PreprocessConfig none{false, false};
    PreprocessConfig both{true, true};
    PreprocessConfig stop_only{false, true};

    CHECK(preprocess("the managers managed", none) ==
          tokenize("the managers managed"));
    CHECK(preprocess("the managers managed", both) ==
          TokenStream{"manag", "manag"});
    CHECK(preprocess("the managers managed", stop_only) ==
          TokenStream{"managers", "managed"});
}

TEST_CASE("preprocess never grows the token stream") {
    std::mt19937 gen(11);
    auto random_text = [&] {
        std::string text;
        int n = static_cast<int>(gen() % 120);
        static const char alphabet[] =
            "abcdefghijklmnopqrstuvwxyzABC0123 .,!-_";
        for (int i = 0; i < n; ++i) {
            text.push_back(alphabet[gen() % (sizeof(alphabet) - 1)]);
        }
        return text;
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::string text = random_text();
        auto base = tokenize(text);
        for (const auto& cfg : PreprocessConfig::all()) {
            auto out = preprocess(text, cfg);
            CHECK(out.size() <= base.size());
            for (const auto& token : out) {
                CHECK(!token.empty());
                CHECK(token.find(' ') == std::string::npos);
            }
        }
    }
}

TEST_CASE("stemming cannot grow the vocabulary") {
    std::vector<std::string> words{
        "managers", "managed", "managing", "management", "risk",  "risks",
        "risky",    "caresses", "caress",  "relational", "relate"};
    std::set<std::string> before(words.begin(), words.end());
    std::set<std::string> after;
    for (const auto& word : words) after.insert(porter_stem(word));
    CHECK(after.size() <= before.size());
}

TEST_CASE("the four preprocessing configs enumerate in fixed order") {
    const auto& all = PreprocessConfig::all();
    REQUIRE(all.size() == 4);
    CHECK(all[0].label() == "none");
    CHECK(all[1].label() == "stem");
    CHECK(all[2].label() == "stop");
    CHECK(all[3].label() == "stemstop");
    for (const auto& cfg : all) {
        CHECK(PreprocessConfig::from_label(cfg.label()) == cfg);
    }
    CHECK_THROWS_AS(PreprocessConfig::from_label("porter"), ConfigError);
}
