#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "llr/error.hpp"
#include "llr/vsm.hpp"

using namespace llr;
using namespace llr::vsm;
using llr::textprep::TokenStream;

namespace {

TermDocMatrix toy_matrix(WeightingScheme scheme) {
    // 3 documents over a small vocabulary
    std::vector<TokenStream> docs{
        {"db", "pool", "outage", "db"},
        {"db", "migration", "freeze"},
        {"outage", "postmortem", "pool", "pool"},
    };
    return build_matrix_from_tokens(docs, {"d1", "d2", "d3"}, scheme);
}

double weight_of(const TermDocMatrix& m, const std::string& term, int doc) {
    auto it = m.vocabulary.find(term);
    REQUIRE(it != m.vocabulary.end());
    for (const auto& [t, w] : m.columns[doc]) {
        if (t == it->second) return w;
    }
    return 0.0;
}

} // namespace

TEST_CASE("tfidf weights follow tf * ln(N/df)") {
    // 2 docs; "pool" appears 3 times in doc 0 only -> 3 * ln 2
    std::vector<TokenStream> docs{{"pool", "pool", "pool", "db"}, {"db"}};
    auto m = build_matrix_from_tokens(docs, {"a", "b"}, WeightingScheme::tfidf);
    CHECK(weight_of(m, "pool", 0) == doctest::Approx(3.0 * std::log(2.0)));
    // "db" appears in every document: idf = ln(2/2) = 0
    CHECK(weight_of(m, "db", 0) == 0.0);
    CHECK(weight_of(m, "db", 1) == 0.0);
}

TEST_CASE("sublinear weight at tf=1 equals idf") {
    std::vector<TokenStream> docs{{"pool", "db"}, {"db"}};
    auto m = build_matrix_from_tokens(docs, {"a", "b"},
                                      WeightingScheme::sublinear_tfidf);
    CHECK(weight_of(m, "pool", 0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("boolean weights are 0/1") {
    auto m = toy_matrix(WeightingScheme::boolean);
    for (const auto& column : m.columns) {
        for (const auto& [_, w] : column) CHECK(w == 1.0);
    }
}

TEST_CASE("matrix invariants: df >= 1, weights >= 0") {
    for (auto scheme : {WeightingScheme::tfidf, WeightingScheme::sublinear_tfidf,
                        WeightingScheme::boolean}) {
        auto m = toy_matrix(scheme);
        for (int df : m.doc_freq) CHECK(df >= 1);
        for (const auto& column : m.columns) {
            for (const auto& [_, w] : column) CHECK(w >= 0.0);
        }
    }
}

TEST_CASE("empty document set or vocabulary is a build error") {
    CHECK_THROWS_AS(build_matrix_from_tokens({}, {}, WeightingScheme::tfidf),
                    ValidationError);
    std::vector<TokenStream> empty_docs{{}, {}};
    CHECK_THROWS_AS(
        build_matrix_from_tokens(empty_docs, {"a", "b"}, WeightingScheme::tfidf),
        Error);
}

TEST_CASE("query_vector drops out-of-vocabulary terms") {
    auto m = toy_matrix(WeightingScheme::tfidf);
    CHECK(query_vector({"unseen"}, m).empty());
    auto boolean = toy_matrix(WeightingScheme::boolean);
    auto vec = query_vector({"db", "unseen", "pool"}, boolean);
    REQUIRE(vec.size() == 2);
    for (const auto& [_, w] : vec) CHECK(w == 1.0);
}

TEST_CASE("query_vector sublinear arithmetic") {
    // idf(risk) = ln 2; query tf = 2 -> (1 + ln 2) * ln 2
    std::vector<TokenStream> docs{{"risk", "db"}, {"db"}};
    auto m = build_matrix_from_tokens(docs, {"a", "b"},
                                      WeightingScheme::sublinear_tfidf);
    auto vec = query_vector({"risk", "risk"}, m);
    REQUIRE(vec.size() == 1);
    CHECK(vec[0].second ==
          doctest::Approx((1.0 + std::log(2.0)) * std::log(2.0)));
}

TEST_CASE("query identical to a unique document ranks it first, score 1") {
    std::vector<TokenStream> docs{
        {"db", "pool", "outage", "db"},
        {"migration", "freeze"},
        {"outage", "postmortem", "pool", "pool"},
    };
    auto m = build_matrix_from_tokens(docs, {"d1", "d2", "d3"},
                                      WeightingScheme::tfidf);
    auto list = vsm_rank(docs[0], m, SimilarityKind::cosine);
    REQUIRE(!list.empty());
    CHECK(list.items[0].doc_id == "d1");
    CHECK(list.items[0].score == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("query with no shared terms yields an empty list") {
    auto m = toy_matrix(WeightingScheme::tfidf);
    CHECK(vsm_rank({"unrelated", "terms"}, m, SimilarityKind::cosine).empty());
    CHECK(vsm_rank({}, m, SimilarityKind::overlap).empty());
}

TEST_CASE("hand-computed cosine order on the toy corpus") {
    // tfidf weights: idf(db)=ln(3/2), idf(pool)=ln(3/2), idf(outage)=ln(3/2),
    // idf(migration)=idf(freeze)=idf(postmortem)=ln 3.
    // query {pool, outage}: q = (pool: ln1.5, outage: ln1.5)
    // d1 = (db:2ln1.5, pool:ln1.5, outage:ln1.5)
    // d2 = (db:ln1.5, migration:ln3, freeze:ln3) -> no shared term
    // d3 = (outage:ln1.5, postmortem:ln3, pool:2ln1.5)
    const double l15 = std::log(1.5);
    const double l3 = std::log(3.0);
    auto m = toy_matrix(WeightingScheme::tfidf);
    auto list = vsm_rank({"pool", "outage"}, m, SimilarityKind::cosine);

    double q_norm = std::sqrt(2.0) * l15;
    double d1_norm = std::sqrt(4 * l15 * l15 + l15 * l15 + l15 * l15);
    double d3_norm = std::sqrt(l15 * l15 + l3 * l3 + 4 * l15 * l15);
    double expect_d1 = (l15 * l15 + l15 * l15) / (q_norm * d1_norm);
    double expect_d3 = (l15 * l15 + 2 * l15 * l15) / (q_norm * d3_norm);

    REQUIRE(list.size() == 2);
    CHECK(list.items[0].doc_id == "d3");
    CHECK(list.items[0].score == doctest::Approx(expect_d3));
    CHECK(list.items[1].doc_id == "d1");
    CHECK(list.items[1].score == doctest::Approx(expect_d1));
}

TEST_CASE("overlap similarity: weighted overlap coefficient") {
    // boolean: |Q n D| / min(|Q|, |D|)
    auto m = toy_matrix(WeightingScheme::boolean);
    auto list = vsm_rank({"db", "pool"}, m, SimilarityKind::overlap);
    REQUIRE(list.size() == 3);
    // d1 {db,pool,outage}: inter 2, min(2,3) -> 1.0
    CHECK(list.items[0].doc_id == "d1");
    CHECK(list.items[0].score == doctest::Approx(1.0));
    // d2 {db,migration,freeze}: 1/2; d3 {outage,postmortem,pool}: 1/2
    CHECK(list.items[1].score == doctest::Approx(0.5));
    CHECK(list.items[2].score == doctest::Approx(0.5));
    CHECK(list.items[1].doc_id == "d2"); // tie broken by doc id
    CHECK(list.items[2].doc_id == "d3");
}

namespace {

// random token corpora for property checks
struct RandomCorpus {
    std::vector<TokenStream> docs;
    std::vector<std::string> ids;
    TokenStream query;
};

RandomCorpus random_corpus(std::mt19937& gen) {
    static const std::vector<std::string> vocab{
        "db", "pool", "outage", "risk", "cache", "index",
        "latency", "deploy", "rollback", "quota", "shard", "retry"};
    RandomCorpus rc;
    int n_docs = 2 + static_cast<int>(gen() % 6);
    for (int d = 0; d < n_docs; ++d) {
        TokenStream doc;
        int n = 1 + static_cast<int>(gen() % 10);
        for (int i = 0; i < n; ++i) doc.push_back(vocab[gen() % vocab.size()]);
        rc.docs.push_back(doc);
        rc.ids.push_back("doc" + std::to_string(d));
    }
    int qn = 1 + static_cast<int>(gen() % 6);
    for (int i = 0; i < qn; ++i) rc.query.push_back(vocab[gen() % vocab.size()]);
    return rc;
}

void check_ranked_list_invariants(const RankedList& list) {
    for (int i = 0; i < list.size(); ++i) {
        const auto& item = list.items[i];
        CHECK(item.score > 0.0);
        CHECK(item.rank == i + 1);
        if (i > 0) {
            const auto& prev = list.items[i - 1];
            bool ordered = prev.score > item.score ||
                           (prev.score == item.score &&
                            prev.doc_id < item.doc_id);
            CHECK(ordered);
        }
    }
}

} // namespace

TEST_CASE("vsm_rank output satisfies RankedList invariants (property)") {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        auto rc = random_corpus(gen);
        for (auto scheme : {WeightingScheme::tfidf,
                            WeightingScheme::sublinear_tfidf,
                            WeightingScheme::boolean}) {
            TermDocMatrix m;
            try {
                m = build_matrix_from_tokens(rc.docs, rc.ids, scheme);
            } catch (const Error&) {
                continue; // all-empty corpus draw
            }
            for (auto sim : {SimilarityKind::cosine, SimilarityKind::overlap}) {
                auto list = vsm_rank(rc.query, m, sim);
                check_ranked_list_invariants(list);
                for (const auto& item : list.items) {
                    CHECK(item.score <= 1.0 + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("scaling a document column leaves cosine order unchanged") {
    std::mt19937 gen(23);
    for (int trial = 0; trial < 100; ++trial) {
        auto rc = random_corpus(gen);
        TermDocMatrix m;
        try {
            m = build_matrix_from_tokens(rc.docs, rc.ids,
                                         WeightingScheme::tfidf);
        } catch (const Error&) {
            continue;
        }
        auto baseline = vsm_rank(rc.query, m, SimilarityKind::cosine);

        TermDocMatrix scaled = m;
        for (std::size_t d = 0; d < scaled.columns.size(); ++d) {
            double factor = 0.25 + static_cast<double>(gen() % 16);
            for (auto& [_, w] : scaled.columns[d]) w *= factor;
            scaled.column_norm[d] *= factor;
            scaled.column_sum[d] *= factor;
        }
        auto rescored = vsm_rank(rc.query, scaled, SimilarityKind::cosine);

        REQUIRE(rescored.size() == baseline.size());
        for (int i = 0; i < baseline.size(); ++i) {
            CHECK(rescored.items[i].doc_id == baseline.items[i].doc_id);
        }
    }
}

TEST_CASE("boolean cosine equals the set formula |QnD|/sqrt(|Q||D|)") {
    std::mt19937 gen(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto rc = random_corpus(gen);
        TermDocMatrix m;
        try {
            m = build_matrix_from_tokens(rc.docs, rc.ids,
                                         WeightingScheme::boolean);
        } catch (const Error&) {
            continue;
        }
        auto list = vsm_rank(rc.query, m, SimilarityKind::cosine);

        std::set<std::string> q_set;
        for (const auto& t : rc.query) {
            if (m.vocabulary.contains(t)) q_set.insert(t);
        }
        if (q_set.empty()) continue;
        for (const auto& item : list.items) {
            std::size_t d = 0;
            while (rc.ids[d] != item.doc_id) ++d;
            std::set<std::string> d_set(rc.docs[d].begin(), rc.docs[d].end());
            int inter = 0;
            for (const auto& t : q_set) inter += d_set.contains(t) ? 1 : 0;
            double expected =
                inter / std::sqrt(static_cast<double>(q_set.size()) *
                                  static_cast<double>(d_set.size()));
            CHECK(item.score == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}
