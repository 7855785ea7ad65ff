#include "glasso/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "glasso/errors.hpp"

namespace glasso {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string location(const std::string& path, int line) {
    return path + ":" + std::to_string(line);
}

double parse_double(std::string_view tok, const std::string& path, int line) {
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
    double v = 0.0;
    const auto [p, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || p != end)
        throw ParseError(location(path, line) + ": expected a number, got '" + std::string(tok) + "'");
    return v;
}

long long parse_int(std::string_view tok, const std::string& path, int line) {
    const double v = parse_double(tok, path, line);
    const long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw ParseError(location(path, line) + ": expected an integer, got '" + std::string(tok) + "'");
    return i;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<std::string> whitespace_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

// validate near-symmetry (<= 1e-12 max deviation), then average the triangles
SymMatrix symmetrized(const std::vector<double>& dense, int n, const std::string& path) {
    double max_dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            max_dev = std::max(max_dev, std::abs(dense[static_cast<std::size_t>(i) * n + j] -
                                                 dense[static_cast<std::size_t>(j) * n + i]));
    if (max_dev > 1e-12)
        throw AsymmetricInput(path + ": input is not symmetric (max deviation " +
                              format_double(max_dev) + ")");
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, dense[static_cast<std::size_t>(i) * n + i]);
        for (int j = 0; j < i; ++j)
            m.set(i, j, 0.5 * (dense[static_cast<std::size_t>(i) * n + j] +
                               dense[static_cast<std::size_t>(j) * n + i]));
    }
    return m;
}

SymMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    ++lineno;
    auto header = whitespace_tokens(line);
    if (header.size() < 5 || header[0] != "%%MatrixMarket" || header[1] != "matrix" ||
        header[2] != "coordinate")
        throw ParseError(location(path, lineno) + ": expected '%%MatrixMarket matrix coordinate ...'");
    const std::string& field = header[3];
    const std::string& symmetry = header[4];
    if (field != "real" && field != "integer")
        throw ParseError(location(path, lineno) + ": unsupported field type '" + field + "'");
    if (symmetry != "symmetric" && symmetry != "general")
        throw ParseError(location(path, lineno) + ": unsupported symmetry '" + symmetry + "'");

    // size line (after comments)
    int rows = 0, cols = 0;
    long long nnz = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == '%') continue;
        const auto t = whitespace_tokens(line);
        if (t.size() != 3) throw ParseError(location(path, lineno) + ": expected 'rows cols nnz'");
        rows = static_cast<int>(parse_int(t[0], path, lineno));
        cols = static_cast<int>(parse_int(t[1], path, lineno));
        nnz = parse_int(t[2], path, lineno);
        break;
    }
    if (rows <= 0 || cols <= 0) throw ParseError(path + ": missing size line");
    if (rows != cols)
        throw DimensionError(path + ": matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                             ", expected square");

    const int n = rows;
    std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
    long long seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == '%') continue;
        const auto t = whitespace_tokens(line);
        if (t.size() != 3) throw ParseError(location(path, lineno) + ": expected 'i j value'");
        const long long i = parse_int(t[0], path, lineno) - 1;
        const long long j = parse_int(t[1], path, lineno) - 1;
        const double v = parse_double(t[2], path, lineno);
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw ParseError(location(path, lineno) + ": index out of range");
        dense[static_cast<std::size_t>(i) * n + j] = v;
        if (symmetry == "symmetric") dense[static_cast<std::size_t>(j) * n + i] = v;
        ++seen;
    }
    if (seen != nnz)
        throw ParseError(path + ": header declares " + std::to_string(nnz) + " entries, found " +
                         std::to_string(seen));
    return symmetrized(dense, n, path);
}

SymMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        std::vector<double> row;
        for (const auto& tok : split(line, ',')) row.push_back(parse_double(tok, path, lineno));
        if (!rows.empty() && row.size() != rows.front().size())
            throw DimensionError(location(path, lineno) + ": row has " + std::to_string(row.size()) +
                                 " columns, expected " + std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": empty file");
    const int n = static_cast<int>(rows.size());
    if (rows.front().size() != static_cast<std::size_t>(n))
        throw DimensionError(path + ": matrix is " + std::to_string(n) + "x" +
                             std::to_string(rows.front().size()) + ", expected square");
    std::vector<double> dense(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            dense[static_cast<std::size_t>(i) * n + j] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return symmetrized(dense, n, path);
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw SerializationError(std::string("non-finite value in field '") + what +
                                 "' is forbidden in schema v1");
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

SymMatrix read_matrix(const std::string& path, MatrixFormat format) {
    return format == MatrixFormat::MatrixMarket ? read_matrix_market(path) : read_matrix_csv(path);
}

SampleSet read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        std::vector<double> row;
        for (const auto& tok : split(line, ',')) row.push_back(parse_double(tok, path, lineno));
        if (!rows.empty() && row.size() != rows.front().size())
            throw RaggedRows(location(path, lineno) + ": row has " + std::to_string(row.size()) +
                             " values, expected " + std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw EmptyFile(path + ": no samples");

    SampleSet out;
    out.m = static_cast<int>(rows.size());
    out.n = static_cast<int>(rows.front().size());
    out.samples.reserve(static_cast<std::size_t>(out.m) * out.n);
    for (const auto& r : rows) out.samples.insert(out.samples.end(), r.begin(), r.end());
    return out;
}

void write_samples(const SampleSet& samples, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (int i = 0; i < samples.m; ++i) {
        for (int j = 0; j < samples.n; ++j) {
            if (j) out << ",";
            out << format_double(samples(i, j));
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_matrix_market(const SymMatrix& m, const std::string& path) {
    const int n = m.n();
    long long nnz = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) nnz += m(i, j) != 0.0;

    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << n << " " << n << " " << nnz << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (m(i, j) != 0.0) out << (i + 1) << " " << (j + 1) << " " << format_double(m(i, j)) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

void write_matrix_csv(const SymMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    const int n = m.n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ",";
            out << format_double(m(i, j));
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

static const char* const kTraceHeader = "iter,f_total,min_subgrad_l1,min_subgrad_fro,nnz,step_t,linesearch_trials,wall_ms";

void write_trace(const std::vector<IterTrace>& traces, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << kTraceHeader << "\n";
    for (const IterTrace& t : traces) {
        out << t.iter << "," << format_double(t.f_total) << "," << format_double(t.min_subgrad_l1) << ","
            << format_double(t.min_subgrad_fro) << "," << t.nnz << "," << format_double(t.step_t) << ","
            << t.linesearch_trials << "," << format_double(t.wall_ms) << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<IterTrace> read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceHeader) throw ParseError(path + ": unexpected trace header '" + line + "'");

    std::vector<IterTrace> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto t = split(line, ',');
        if (t.size() != 8) throw ParseError(location(path, lineno) + ": expected 8 columns");
        IterTrace rec;
        rec.iter = static_cast<int>(parse_int(t[0], path, lineno));
        rec.f_total = parse_double(t[1], path, lineno);
        rec.min_subgrad_l1 = parse_double(t[2], path, lineno);
        rec.min_subgrad_fro = parse_double(t[3], path, lineno);
        rec.nnz = parse_int(t[4], path, lineno);
        rec.step_t = parse_double(t[5], path, lineno);
        rec.linesearch_trials = static_cast<int>(parse_int(t[6], path, lineno));
        rec.wall_ms = parse_double(t[7], path, lineno);
        out.push_back(rec);
    }
    return out;
}

void write_result(const RunRecord& record, const std::string& path) {
    require_finite(record.alpha, "alpha");
    require_finite(record.shift, "shift");
    require_finite(record.config.stop_rel, "stop_rel");
    require_finite(record.config.t_init, "t_init");
    require_finite(record.config.backtrack, "backtrack");
    require_finite(record.config.t_floor, "t_floor");
    require_finite(record.config.fallback_safety, "fallback_safety");
    require_finite(record.f_final, "f_final");
    require_finite(record.subgrad_l1, "subgrad_l1");
    require_finite(record.subgrad_fro, "subgrad_fro");
    require_finite(record.wall_seconds, "wall_seconds");

    ordered_json j;
    j["schema"] = "v1";
    j["problem"] = {{"kind", record.kind}, {"n", record.n},         {"m", record.m},
                    {"alpha", record.alpha}, {"seed", record.seed}, {"shift", record.shift}};
    j["solver"] = record.solver;
    j["config"] = {{"max_iter", record.config.max_iter},
                   {"stop_rel", record.config.stop_rel},
                   {"t_init", record.config.t_init},
                   {"backtrack", record.config.backtrack},
                   {"t_floor", record.config.t_floor},
                   {"fallback_safety", record.config.fallback_safety},
                   {"trace", record.config.trace}};
    j["result"] = {{"converged", record.converged},
                   {"iterations", record.iterations},
                   {"termination", record.termination},
                   {"f_final", record.f_final},
                   {"subgrad_l1", record.subgrad_l1},
                   {"subgrad_fro", record.subgrad_fro},
                   {"nnz", record.nnz},
                   {"wall_seconds", record.wall_seconds}};

    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

RunRecord read_result(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        if (j.at("schema").get<std::string>() != "v1")
            throw ParseError(path + ": unsupported schema version");
        RunRecord r;
        const auto& p = j.at("problem");
        r.kind = p.at("kind").get<std::string>();
        r.n = p.at("n").get<int>();
        r.m = p.at("m").get<int>();
        r.alpha = p.at("alpha").get<double>();
        r.seed = p.at("seed").get<std::uint64_t>();
        r.shift = p.at("shift").get<double>();
        r.solver = j.at("solver").get<std::string>();
        const auto& c = j.at("config");
        r.config.max_iter = c.at("max_iter").get<int>();
        r.config.stop_rel = c.at("stop_rel").get<double>();
        r.config.t_init = c.at("t_init").get<double>();
        r.config.backtrack = c.at("backtrack").get<double>();
        r.config.t_floor = c.at("t_floor").get<double>();
        r.config.fallback_safety = c.at("fallback_safety").get<double>();
        r.config.trace = c.at("trace").get<bool>();
        const auto& res = j.at("result");
        r.converged = res.at("converged").get<bool>();
        r.iterations = res.at("iterations").get<int>();
        r.termination = res.at("termination").get<std::string>();
        r.f_final = res.at("f_final").get<double>();
        r.subgrad_l1 = res.at("subgrad_l1").get<double>();
        r.subgrad_fro = res.at("subgrad_fro").get<double>();
        r.nnz = res.at("nnz").get<long long>();
        r.wall_seconds = res.at("wall_seconds").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace glasso
