#include "llr/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "llr/error.hpp"

namespace llr::corpus {

using nlohmann::json;

std::string_view to_string(ArtifactKind kind) {
    return kind == ArtifactKind::issue ? "issue" : "risk";
}

ArtifactKind artifact_kind_from(std::string_view s) {
    if (s == "issue") return ArtifactKind::issue;
    if (s == "risk") return ArtifactKind::risk;
    throw ParseError("unknown artifact kind: " + std::string(s));
}

const LessonRecord* Corpus::find_lesson(std::string_view id) const {
    for (const auto& lesson : lessons) {
        if (lesson.id == id) return &lesson;
    }
    return nullptr;
}

const QueryArtifact* Corpus::find_artifact(std::string_view id) const {
    for (const auto& artifact : artifacts) {
        if (artifact.id == id) return &artifact;
    }
    return nullptr;
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path.string());
    return in;
}

[[noreturn]] void fail_line(const std::filesystem::path& path, int line_no,
                            const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " +
                     what);
}

std::string require_string(const json& obj, const char* key,
                           const std::filesystem::path& path, int line_no) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        fail_line(path, line_no,
                  std::string("missing or non-string key \"") + key + "\"");
    }
    return it->get<std::string>();
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Strips a trailing \r so CRLF files parse identically.
std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

Corpus load_corpus(const std::filesystem::path& lessons_path,
                   const std::filesystem::path& artifacts_path,
                   const std::filesystem::path& judgments_path) {
    Corpus corpus;

    {
        auto in = open_or_throw(lessons_path);
        std::string line;
        int line_no = 0;
        std::unordered_set<std::string> seen;
        while (std::getline(in, line)) {
            ++line_no;
            line = chomp(line);
            if (blank(line)) continue;
            json obj = json::parse(line, nullptr, false);
            if (obj.is_discarded() || !obj.is_object()) {
                fail_line(lessons_path, line_no, "malformed JSON object");
            }
            LessonRecord lesson;
            lesson.id = require_string(obj, "id", lessons_path, line_no);
            lesson.project_id =
                require_string(obj, "project_id", lessons_path, line_no);
            lesson.context = require_string(obj, "context", lessons_path, line_no);
            lesson.problem = require_string(obj, "problem", lessons_path, line_no);
            lesson.recommended_actions =
                require_string(obj, "recommended_actions", lessons_path, line_no);
            if (lesson.id.empty()) {
                fail_line(lessons_path, line_no, "empty lesson id");
            }
            if (!seen.insert(lesson.id).second) {
                throw ValidationError("duplicate lesson id: " + lesson.id);
            }
            if (lesson.context.empty() && lesson.problem.empty() &&
                lesson.recommended_actions.empty()) {
                throw ValidationError("lesson " + lesson.id +
                                      " has no text in any field");
            }
            corpus.lessons.push_back(std::move(lesson));
        }
    }
    if (corpus.lessons.empty()) {
        throw ValidationError("corpus has no lessons: " +
                              lessons_path.string());
    }

    {
        auto in = open_or_throw(artifacts_path);
        std::string line;
        int line_no = 0;
        std::unordered_set<std::string> seen;
        while (std::getline(in, line)) {
            ++line_no;
            line = chomp(line);
            if (blank(line)) continue;
            json obj = json::parse(line, nullptr, false);
            if (obj.is_discarded() || !obj.is_object()) {
                fail_line(artifacts_path, line_no, "malformed JSON object");
            }
            QueryArtifact artifact;
            artifact.id = require_string(obj, "id", artifacts_path, line_no);
            std::string kind =
                require_string(obj, "kind", artifacts_path, line_no);
            try {
                artifact.kind = artifact_kind_from(kind);
            } catch (const ParseError&) {
                fail_line(artifacts_path, line_no,
                          "kind must be \"issue\" or \"risk\", got \"" + kind +
                              "\"");
            }
            artifact.title = require_string(obj, "title", artifacts_path, line_no);
            artifact.description =
                require_string(obj, "description", artifacts_path, line_no);
            if (artifact.id.empty()) {
                fail_line(artifacts_path, line_no, "empty artifact id");
            }
            if (!seen.insert(artifact.id).second) {
                throw ValidationError("duplicate artifact id: " + artifact.id);
            }
            corpus.artifacts.push_back(std::move(artifact));
        }
    }

    {
        auto in = open_or_throw(judgments_path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            line = chomp(line);
            if (blank(line)) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos || tab == 0 ||
                tab + 1 == line.size() ||
                line.find('\t', tab + 1) != std::string::npos) {
                fail_line(judgments_path, line_no,
                          "expected exactly two tab-separated columns");
            }
            std::string artifact_id = line.substr(0, tab);
            std::string lesson_id = line.substr(tab + 1);
            if (!corpus.find_artifact(artifact_id)) {
                throw ValidationError(
                    judgments_path.string() + ":" + std::to_string(line_no) +
                    ": judgment references unknown artifact id: " + artifact_id);
            }
            if (!corpus.find_lesson(lesson_id)) {
                throw ValidationError(
                    judgments_path.string() + ":" + std::to_string(line_no) +
                    ": judgment references unknown lesson id: " + lesson_id);
            }
            corpus.judgments[artifact_id].insert(lesson_id);
        }
    }

    return corpus;
}

Corpus load_corpus_dir(const std::filesystem::path& dir) {
    return load_corpus(dir / kLessonsFile, dir / kArtifactsFile,
                       dir / kJudgmentsFile);
}

void save_corpus(const Corpus& corpus,
                 const std::filesystem::path& lessons_path,
                 const std::filesystem::path& artifacts_path,
                 const std::filesystem::path& judgments_path) {
    {
        std::ofstream out(lessons_path);
        if (!out) throw Error("cannot write file: " + lessons_path.string());
        for (const auto& lesson : corpus.lessons) {
            json obj{{"id", lesson.id},
                     {"project_id", lesson.project_id},
                     {"context", lesson.context},
                     {"problem", lesson.problem},
                     {"recommended_actions", lesson.recommended_actions}};
            out << obj.dump() << '\n';
        }
    }
    {
        std::ofstream out(artifacts_path);
        if (!out) throw Error("cannot write file: " + artifacts_path.string());
        for (const auto& artifact : corpus.artifacts) {
            json obj{{"id", artifact.id},
                     {"kind", std::string(to_string(artifact.kind))},
                     {"title", artifact.title},
                     {"description", artifact.description}};
            out << obj.dump() << '\n';
        }
    }
    {
        std::ofstream out(judgments_path);
        if (!out) throw Error("cannot write file: " + judgments_path.string());
        for (const auto& [artifact_id, lesson_ids] : corpus.judgments) {
            for (const auto& lesson_id : lesson_ids) {
                out << artifact_id << '\t' << lesson_id << '\n';
            }
        }
    }
}

void save_corpus_dir(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    save_corpus(corpus, dir / kLessonsFile, dir / kArtifactsFile,
                dir / kJudgmentsFile);
}

std::string artifact_query_string(const QueryArtifact& artifact) {
    if (artifact.title.empty()) return artifact.description;
    if (artifact.description.empty()) return artifact.title;
    return artifact.title + " " + artifact.description;
}

std::string lesson_document_text(const LessonRecord& lesson) {
    std::string text;
    for (const std::string* field :
         {&lesson.context, &lesson.problem, &lesson.recommended_actions}) {
        if (field->empty()) continue;
        if (!text.empty()) text.push_back(' ');
        text.append(*field);
    }
    return text;
}

std::uint64_t content_hash(const Corpus& corpus) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto add = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= 0x1f; // field separator
        h *= 0x100000001b3ull;
    };
    for (const auto& lesson : corpus.lessons) {
        add("L");
        add(lesson.id);
        add(lesson.project_id);
        add(lesson.context);
        add(lesson.problem);
        add(lesson.recommended_actions);
    }
    for (const auto& artifact : corpus.artifacts) {
        add("A");
        add(artifact.id);
        add(to_string(artifact.kind));
        add(artifact.title);
        add(artifact.description);
    }
    for (const auto& [artifact_id, lesson_ids] : corpus.judgments) {
        add("J");
        add(artifact_id);
        for (const auto& lesson_id : lesson_ids) add(lesson_id);
    }
    return h;
}

} // namespace llr::corpus
