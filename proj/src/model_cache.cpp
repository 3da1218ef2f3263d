#include "model_cache.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace llr::grid::cache {

namespace {

constexpr char kMagic[4] = {'L', 'L', 'R', 'M'};

enum class Family : std::uint8_t { vsm = 0, lsi = 1, lda = 2 };

class Writer {
public:
    explicit Writer(const std::filesystem::path& path)
        : out_(path, std::ios::binary) {}

    bool ok() const { return static_cast<bool>(out_); }

    void raw(const void* data, std::size_t n) {
        out_.write(static_cast<const char*>(data),
                   static_cast<std::streamsize>(n));
    }
    void u8(std::uint8_t v) { raw(&v, 1); }
    void u32(std::uint32_t v) { raw(&v, 4); }
    void u64(std::uint64_t v) { raw(&v, 8); }
    void i32(std::int32_t v) { raw(&v, 4); }
    void f64(double v) { raw(&v, 8); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
    void str_list(const std::vector<std::string>& v) {
        u32(static_cast<std::uint32_t>(v.size()));
        for (const auto& s : v) str(s);
    }
    void f64_list(const std::vector<double>& v) {
        u32(static_cast<std::uint32_t>(v.size()));
        raw(v.data(), v.size() * sizeof(double));
    }

private:
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::filesystem::path& path)
        : in_(path, std::ios::binary) {}

    bool ok() const { return ok_ && static_cast<bool>(in_); }

    void raw(void* data, std::size_t n) {
        if (!in_.read(static_cast<char*>(data),
                      static_cast<std::streamsize>(n))) {
            ok_ = false;
            std::memset(data, 0, n);
        }
    }
    std::uint8_t u8() { std::uint8_t v = 0; raw(&v, 1); return v; }
    std::uint32_t u32() { std::uint32_t v = 0; raw(&v, 4); return v; }
    std::uint64_t u64() { std::uint64_t v = 0; raw(&v, 8); return v; }
    std::int32_t i32() { std::int32_t v = 0; raw(&v, 4); return v; }
    double f64() { double v = 0; raw(&v, 8); return v; }
    std::string str() {
        std::uint32_t n = u32();
        if (!ok() || n > kMaxField) { ok_ = false; return {}; }
        std::string s(n, '\0');
        raw(s.data(), n);
        return s;
    }
    std::vector<std::string> str_list() {
        std::uint32_t n = u32();
        if (!ok() || n > kMaxField) { ok_ = false; return {}; }
        std::vector<std::string> v(n);
        for (auto& s : v) s = str();
        return v;
    }
    std::vector<double> f64_list() {
        std::uint32_t n = u32();
        if (!ok() || n > kMaxField) { ok_ = false; return {}; }
        std::vector<double> v(n);
        raw(v.data(), n * sizeof(double));
        return v;
    }

private:
    static constexpr std::uint32_t kMaxField = 1u << 28;
    std::ifstream in_;
    bool ok_ = true;
};

bool write_header(Writer& w, std::uint64_t corpus_hash,
                  const std::string& config_id, Family family) {
    if (!w.ok()) return false;
    w.raw(kMagic, sizeof(kMagic));
    w.u32(kFormatVersion);
    w.u64(corpus_hash);
    w.str(config_id);
    w.u8(static_cast<std::uint8_t>(family));
    return w.ok();
}

bool check_header(Reader& r, std::uint64_t corpus_hash,
                  const std::string& config_id, Family family) {
    char magic[4] = {};
    r.raw(magic, sizeof(magic));
    if (!r.ok() || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) return false;
    if (r.u32() != kFormatVersion) return false;
    if (r.u64() != corpus_hash) return false;
    if (r.str() != config_id) return false;
    if (r.u8() != static_cast<std::uint8_t>(family)) return false;
    return r.ok();
}

void write_matrix_payload(Writer& w, const vsm::TermDocMatrix& matrix) {
    w.u8(static_cast<std::uint8_t>(matrix.scheme));
    w.str_list(matrix.terms);
    w.str_list(matrix.doc_ids);
    w.u32(static_cast<std::uint32_t>(matrix.doc_freq.size()));
    for (int df : matrix.doc_freq) w.i32(df);
    for (const auto& column : matrix.columns) {
        w.u32(static_cast<std::uint32_t>(column.size()));
        for (const auto& [term, weight] : column) {
            w.i32(term);
            w.f64(weight);
        }
    }
}

std::optional<vsm::TermDocMatrix> read_matrix_payload(Reader& r) {
    vsm::TermDocMatrix matrix;
    matrix.scheme = static_cast<vsm::WeightingScheme>(r.u8());
    matrix.terms = r.str_list();
    matrix.doc_ids = r.str_list();
    std::uint32_t n_terms = r.u32();
    if (!r.ok() || n_terms != matrix.terms.size()) return std::nullopt;
    matrix.doc_freq.resize(n_terms);
    for (auto& df : matrix.doc_freq) df = r.i32();
    matrix.columns.resize(matrix.doc_ids.size());
    matrix.column_norm.assign(matrix.doc_ids.size(), 0.0);
    matrix.column_sum.assign(matrix.doc_ids.size(), 0.0);
    for (std::size_t d = 0; d < matrix.columns.size(); ++d) {
        std::uint32_t n = r.u32();
        if (!r.ok()) return std::nullopt;
        auto& column = matrix.columns[d];
        column.resize(n);
        double norm_sq = 0.0;
        double sum = 0.0;
        for (auto& [term, weight] : column) {
            term = r.i32();
            weight = r.f64();
            norm_sq += weight * weight;
            sum += weight;
        }
        matrix.column_norm[d] = std::sqrt(norm_sq);
        matrix.column_sum[d] = sum;
    }
    if (!r.ok()) return std::nullopt;
    for (std::size_t t = 0; t < matrix.terms.size(); ++t) {
        matrix.vocabulary.emplace(matrix.terms[t], static_cast<int>(t));
    }
    return matrix;
}

void write_dense(Writer& w, const Eigen::MatrixXd& m) {
    w.u32(static_cast<std::uint32_t>(m.rows()));
    w.u32(static_cast<std::uint32_t>(m.cols()));
    w.raw(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
}

std::optional<Eigen::MatrixXd> read_dense(Reader& r) {
    std::uint32_t rows = r.u32();
    std::uint32_t cols = r.u32();
    if (!r.ok() || std::uint64_t(rows) * cols > (1u << 28)) return std::nullopt;
    Eigen::MatrixXd m(rows, cols);
    r.raw(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
    if (!r.ok()) return std::nullopt;
    return m;
}

} // namespace

std::filesystem::path model_path(const std::filesystem::path& cache_dir,
                                 std::uint64_t corpus_hash,
                                 const std::string& config_id) {
    std::ostringstream hash_hex;
    hash_hex << std::hex << corpus_hash;
    return cache_dir / hash_hex.str() / (config_id + ".model");
}

void write_vsm(const std::filesystem::path& path, std::uint64_t corpus_hash,
               const std::string& config_id, const vsm::TermDocMatrix& matrix) {
    std::filesystem::create_directories(path.parent_path());
    Writer w(path);
    if (!write_header(w, corpus_hash, config_id, Family::vsm)) return;
    write_matrix_payload(w, matrix);
}

void write_lsi(const std::filesystem::path& path, std::uint64_t corpus_hash,
               const std::string& config_id, const vsm::TermDocMatrix& matrix,
               const lsi::LsiModel& model) {
    std::filesystem::create_directories(path.parent_path());
    Writer w(path);
    if (!write_header(w, corpus_hash, config_id, Family::lsi)) return;
    write_matrix_payload(w, matrix);
    w.i32(model.requested_k);
    w.i32(model.k);
    w.u8(static_cast<std::uint8_t>(model.scheme));
    write_dense(w, model.term_space);
    Eigen::MatrixXd sv = model.singular_values;
    write_dense(w, sv);
    write_dense(w, model.doc_space);
}

void write_lda(const std::filesystem::path& path, std::uint64_t corpus_hash,
               const std::string& config_id, const lda::LdaModel& model) {
    std::filesystem::create_directories(path.parent_path());
    Writer w(path);
    if (!write_header(w, corpus_hash, config_id, Family::lda)) return;
    w.i32(model.k);
    w.f64(model.alpha);
    w.f64(model.beta);
    w.u64(model.seed);
    w.i32(model.iterations);
    w.i32(model.infer_sweeps);
    w.str_list(model.terms);
    w.str_list(model.doc_ids);
    for (const auto& row : model.phi) w.f64_list(row);
    for (const auto& row : model.doc_theta) w.f64_list(row);
}

std::optional<vsm::TermDocMatrix> read_vsm(const std::filesystem::path& path,
                                           std::uint64_t corpus_hash,
                                           const std::string& config_id) {
    Reader r(path);
    if (!r.ok() || !check_header(r, corpus_hash, config_id, Family::vsm)) {
        return std::nullopt;
    }
    return read_matrix_payload(r);
}

std::optional<std::pair<vsm::TermDocMatrix, lsi::LsiModel>>
read_lsi(const std::filesystem::path& path, std::uint64_t corpus_hash,
         const std::string& config_id) {
    Reader r(path);
    if (!r.ok() || !check_header(r, corpus_hash, config_id, Family::lsi)) {
        return std::nullopt;
    }
    auto matrix = read_matrix_payload(r);
    if (!matrix) return std::nullopt;
    lsi::LsiModel model;
    model.requested_k = r.i32();
    model.k = r.i32();
    model.scheme = static_cast<vsm::WeightingScheme>(r.u8());
    auto term_space = read_dense(r);
    auto sv = read_dense(r);
    auto doc_space = read_dense(r);
    if (!term_space || !sv || !doc_space || sv->cols() != 1) {
        return std::nullopt;
    }
    model.term_space = std::move(*term_space);
    model.singular_values = sv->col(0);
    model.doc_space = std::move(*doc_space);
    return std::make_pair(std::move(*matrix), std::move(model));
}

std::optional<lda::LdaModel> read_lda(const std::filesystem::path& path,
                                      std::uint64_t corpus_hash,
                                      const std::string& config_id) {
    Reader r(path);
    if (!r.ok() || !check_header(r, corpus_hash, config_id, Family::lda)) {
        return std::nullopt;
    }
    lda::LdaModel model;
    model.k = r.i32();
    model.alpha = r.f64();
    model.beta = r.f64();
    model.seed = r.u64();
    model.iterations = r.i32();
    model.infer_sweeps = r.i32();
    model.terms = r.str_list();
    model.doc_ids = r.str_list();
    if (!r.ok() || model.k < 1) return std::nullopt;
    model.phi.resize(model.k);
    for (auto& row : model.phi) {
        row = r.f64_list();
        if (row.size() != model.terms.size()) return std::nullopt;
    }
    model.doc_theta.resize(model.doc_ids.size());
    for (auto& row : model.doc_theta) {
        row = r.f64_list();
        if (row.size() != static_cast<std::size_t>(model.k)) return std::nullopt;
    }
    if (!r.ok()) return std::nullopt;
    for (std::size_t t = 0; t < model.terms.size(); ++t) {
        model.vocabulary.emplace(model.terms[t], static_cast<int>(t));
    }
    return model;
}

} // namespace llr::grid::cache
