#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glasso/problems.hpp"
#include "glasso/solver.hpp"
#include "glasso/sym_matrix.hpp"

namespace glasso {

enum class MatrixFormat { DenseCSV, MatrixMarket };

// Shortest round-trip decimal formatting; every writer below uses it so
// outputs are deterministic and re-read values are bit-identical.
std::string format_double(double v);

// MatrixMarket coordinate files ("symmetric" storage expands the triangle;
// "general" storage is validated symmetric within 1e-12, then symmetrized)
// or dense CSV (validated symmetric within 1e-12, then symmetrized).
SymMatrix read_matrix(const std::string& path, MatrixFormat format);

// One sample per row, comma-separated, consistent column count.
SampleSet read_samples(const std::string& path);

// One sample per row, comma-separated; inverse of read_samples up to the
// decimal round-trip guarantee of format_double.
void write_samples(const SampleSet& samples, const std::string& path);

// Symmetric coordinate MatrixMarket, keeping exact nonzeros of the lower
// triangle only, so the full-matrix nonzero count is auditable from the file.
void write_matrix_market(const SymMatrix& m, const std::string& path);

// Dense CSV, one row per line.
void write_matrix_csv(const SymMatrix& m, const std::string& path);

// CSV with header iter,f_total,min_subgrad_l1,min_subgrad_fro,nnz,step_t,
// linesearch_trials,wall_ms; one row per trace record.
void write_trace(const std::vector<IterTrace>& traces, const std::string& path);
std::vector<IterTrace> read_trace(const std::string& path);

// One solver run: problem descriptor, solver + config echo, result summary.
// Round-trips through JSON bit-identically for all finite values; NaN or
// infinity in any field raises SerializationError (forbidden in schema v1).
struct RunRecord {
    // problem descriptor
    std::string kind;  // chain | random | planar | file
    int n = 0;
    int m = 0;         // samples used (0 when a covariance was given directly)
    double alpha = 0.0;
    std::uint64_t seed = 0;
    double shift = 0.0;

    // solver
    std::string solver; // pista | gista
    SolverConfig config;

    // result summary
    bool converged = false;
    int iterations = 0;
    std::string termination;
    double f_final = 0.0;
    double subgrad_l1 = 0.0;
    double subgrad_fro = 0.0;
    long long nnz = 0;
    double wall_seconds = 0.0;

    bool operator==(const RunRecord&) const = default;
};

void write_result(const RunRecord& record, const std::string& path);
RunRecord read_result(const std::string& path);

} // namespace glasso
