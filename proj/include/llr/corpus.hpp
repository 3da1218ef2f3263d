#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace llr::corpus {

/// One unstructured lessons-learned record.
struct LessonRecord {
    std::string id;
    std::string project_id;
    std::string context;
    std::string problem;
    std::string recommended_actions;

    bool operator==(const LessonRecord&) const = default;
};

enum class ArtifactKind { issue, risk };

std::string_view to_string(ArtifactKind kind);
ArtifactKind artifact_kind_from(std::string_view s);

/// A project-management issue or risk record; its text fields form the
/// automatic query string.
struct QueryArtifact {
    std::string id;
    ArtifactKind kind = ArtifactKind::issue;
    std::string title;
    std::string description;

    bool operator==(const QueryArtifact&) const = default;
};

/// artifact id -> ids of lessons judged relevant to it. Sets may be empty;
/// such artifacts still count in the top-K denominator.
using RelevanceJudgments = std::map<std::string, std::set<std::string>>;

struct Corpus {
    std::vector<LessonRecord> lessons;
    std::vector<QueryArtifact> artifacts;
    RelevanceJudgments judgments;

    const LessonRecord* find_lesson(std::string_view id) const;
    const QueryArtifact* find_artifact(std::string_view id) const;

    bool operator==(const Corpus&) const = default;
};

/// File names used by the directory-based load/save helpers.
inline constexpr std::string_view kLessonsFile = "lessons.jsonl";
inline constexpr std::string_view kArtifactsFile = "artifacts.jsonl";
inline constexpr std::string_view kJudgmentsFile = "judgments.tsv";

/// Loads and validates a corpus. Lessons and artifacts are JSON Lines,
/// judgments a two-column TSV (artifact_id TAB lesson_id). Throws ParseError
/// with file/line context, or ValidationError for duplicate ids, dangling
/// judgment references, lessons with no text, or an empty lesson set.
Corpus load_corpus(const std::filesystem::path& lessons_path,
                   const std::filesystem::path& artifacts_path,
                   const std::filesystem::path& judgments_path);

/// load_corpus over the conventional file names inside `dir`.
Corpus load_corpus_dir(const std::filesystem::path& dir);

void save_corpus(const Corpus& corpus,
                 const std::filesystem::path& lessons_path,
                 const std::filesystem::path& artifacts_path,
                 const std::filesystem::path& judgments_path);

void save_corpus_dir(const Corpus& corpus, const std::filesystem::path& dir);

/// Query text for an artifact: title and description joined by one space;
/// empty fields simply shorten the string.
std::string artifact_query_string(const QueryArtifact& artifact);

/// Document text for a lesson: context, problem, recommended_actions joined
/// by single spaces, content untransformed and in that fixed order.
std::string lesson_document_text(const LessonRecord& lesson);

/// Content hash over lessons, artifacts and judgments; keys model caches.
std::uint64_t content_hash(const Corpus& corpus);

} // namespace llr::corpus
