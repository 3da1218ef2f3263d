#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "llr/corpus.hpp"
#include "llr/error.hpp"
#include "llr/eval.hpp"

using namespace llr;
using namespace llr::corpus;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("llr_corpus_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

void write_file(const fs::path& path, const std::string& data) {
    std::ofstream out(path);
    out << data;
}

const char* kLessons =
    R"({"id":"L1","project_id":"P1","context":"mobile app scope","problem":"overhead eats profit","recommended_actions":"outsource the implementation"})"
    "\n"
    R"({"id":"L2","project_id":"P1","context":"","problem":"db pool exhausted","recommended_actions":""})"
    "\n"
    R"({"id":"L3","project_id":"P2","context":"legacy migration","problem":"","recommended_actions":"freeze scope"})"
    "\n";

const char* kArtifacts =
    R"({"id":"A1","kind":"issue","title":"server outage","description":"db connection pool exhausted"})"
    "\n";

} // namespace

TEST_CASE("load_corpus parses well-formed files") {
    TempDir dir;
    write_file(dir.path / "lessons.jsonl", kLessons);
    write_file(dir.path / "artifacts.jsonl", kArtifacts);
    write_file(dir.path / "judgments.tsv", "A1\tL2\n");

    Corpus corpus = load_corpus_dir(dir.path);
    CHECK(corpus.lessons.size() == 3);
    CHECK(corpus.artifacts.size() == 1);
    CHECK(corpus.judgments.size() == 1);
    CHECK(corpus.judgments.at("A1").contains("L2"));
    CHECK(corpus.find_lesson("L3") != nullptr);
    CHECK(corpus.find_artifact("A1")->kind == ArtifactKind::issue);
}

TEST_CASE("load_corpus rejects dangling judgment references") {
    TempDir dir;
    write_file(dir.path / "lessons.jsonl", kLessons);
    write_file(dir.path / "artifacts.jsonl", kArtifacts);
    write_file(dir.path / "judgments.tsv", "A1\tL9\n");
    CHECK_THROWS_AS(load_corpus_dir(dir.path), ValidationError);

    write_file(dir.path / "judgments.tsv", "A9\tL1\n");
    CHECK_THROWS_AS(load_corpus_dir(dir.path), ValidationError);
}

TEST_CASE("load_corpus reports parse errors with line numbers") {
    TempDir dir;
    write_file(dir.path / "lessons.jsonl",
               std::string(kLessons) + "{not json}\n");
    write_file(dir.path / "artifacts.jsonl", kArtifacts);
    write_file(dir.path / "judgments.tsv", "");
    try {
        load_corpus_dir(dir.path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":4:") != std::string::npos);
    }

    write_file(dir.path / "lessons.jsonl", kLessons);
    write_file(dir.path / "judgments.tsv", "A1 L2\n"); // no tab
    CHECK_THROWS_AS(load_corpus_dir(dir.path), ParseError);
}

TEST_CASE("load_corpus rejects duplicate ids and textless lessons") {
    TempDir dir;
    write_file(dir.path / "artifacts.jsonl", kArtifacts);
    write_file(dir.path / "judgments.tsv", "");

    write_file(dir.path / "lessons.jsonl",
               std::string(kLessons) +
                   R"({"id":"L1","project_id":"P9","context":"x","problem":"","recommended_actions":""})"
                   "\n");
    CHECK_THROWS_AS(load_corpus_dir(dir.path), ValidationError);

    write_file(dir.path / "lessons.jsonl",
               R"({"id":"L1","project_id":"P1","context":"","problem":"","recommended_actions":""})"
               "\n");
    CHECK_THROWS_AS(load_corpus_dir(dir.path), ValidationError);

    write_file(dir.path / "lessons.jsonl", "");
    CHECK_THROWS_AS(load_corpus_dir(dir.path), ValidationError);

    // duplicate artifact id
    write_file(dir.path / "lessons.jsonl", kLessons);
    write_file(dir.path / "artifacts.jsonl",
               std::string(kArtifacts) + kArtifacts);
    CHECK_THROWS_AS(load_corpus_dir(dir.path), ValidationError);
}

TEST_CASE("artifact kind must be issue or risk") {
    TempDir dir;
    write_file(dir.path / "lessons.jsonl", kLessons);
    write_file(dir.path / "artifacts.jsonl",
               R"({"id":"A1","kind":"hazard","title":"t","description":"d"})"
               "\n");
    write_file(dir.path / "judgments.tsv", "");
    CHECK_THROWS_AS(load_corpus_dir(dir.path), ParseError);
}

TEST_CASE("artifact_query_string concatenates title and description") {
    QueryArtifact artifact{"A1", ArtifactKind::issue, "server outage",
                           "db connection pool exhausted"};
    CHECK(artifact_query_string(artifact) ==
          "server outage db connection pool exhausted");
    CHECK(artifact_query_string({"A2", ArtifactKind::risk, "", "x"}) == "x");
    CHECK(artifact_query_string({"A3", ArtifactKind::risk, "x", ""}) == "x");
    CHECK(artifact_query_string({"A4", ArtifactKind::risk, "", ""}).empty());
}

TEST_CASE("lesson_document_text keeps field order and content") {
    LessonRecord lesson{"L1", "P1", "ctx", "prob", "act"};
    CHECK(lesson_document_text(lesson) == "ctx prob act");
    CHECK(lesson_document_text({"L2", "P1", "", "prob", ""}) == "prob");

    // the introductory example record: text passes through untransformed
    LessonRecord example{
        "L3", "P1",
        "the project scope includes an implementation of a small-sized "
        "mobile application",
        "organizational process overhead will affect the profit",
        "outsource the implementation to an external mobile application "
        "specialized company"};
    CHECK(lesson_document_text(example).find("outsource the implementation") !=
          std::string::npos);
}

TEST_CASE("save then load round-trips a synthetic corpus") {
    TempDir dir;
    Corpus corpus = eval::generate_synthetic_corpus(7, 40, 10, 4);
    save_corpus_dir(corpus, dir.path);
    Corpus reloaded = load_corpus_dir(dir.path);
    CHECK(reloaded == corpus);
}

TEST_CASE("content_hash tracks corpus content") {
    Corpus a = eval::generate_synthetic_corpus(7, 20, 5, 2);
    Corpus b = eval::generate_synthetic_corpus(7, 20, 5, 2);
    CHECK(content_hash(a) == content_hash(b));
    b.lessons[0].problem += " extra";
    CHECK(content_hash(a) != content_hash(b));
}
