#pragma once

// Internal: versioned binary serialization of built models for --cache-dir.
// Layout: <cache>/<corpus-hash-hex>/<config-id>.model
// File: magic "LLRM", u32 format version, u64 corpus hash, config id string,
// u8 family tag, family payload. Doubles are raw IEEE-754 little-endian.
// Readers reject any mismatch (magic, version, hash, config id) by returning
// nullopt, which makes a stale cache fall back to a rebuild.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "llr/lda.hpp"
#include "llr/lsi.hpp"
#include "llr/vsm.hpp"

namespace llr::grid::cache {

inline constexpr std::uint32_t kFormatVersion = 1;

std::filesystem::path model_path(const std::filesystem::path& cache_dir,
                                 std::uint64_t corpus_hash,
                                 const std::string& config_id);

void write_vsm(const std::filesystem::path& path, std::uint64_t corpus_hash,
               const std::string& config_id, const vsm::TermDocMatrix& matrix);
void write_lsi(const std::filesystem::path& path, std::uint64_t corpus_hash,
               const std::string& config_id, const vsm::TermDocMatrix& matrix,
               const lsi::LsiModel& model);
void write_lda(const std::filesystem::path& path, std::uint64_t corpus_hash,
               const std::string& config_id, const lda::LdaModel& model);

std::optional<vsm::TermDocMatrix> read_vsm(const std::filesystem::path& path,
                                           std::uint64_t corpus_hash,
                                           const std::string& config_id);
std::optional<std::pair<vsm::TermDocMatrix, lsi::LsiModel>>
read_lsi(const std::filesystem::path& path, std::uint64_t corpus_hash,
         const std::string& config_id);
std::optional<lda::LdaModel> read_lda(const std::filesystem::path& path,
                                      std::uint64_t corpus_hash,
                                      const std::string& config_id);

} // namespace llr::grid::cache
