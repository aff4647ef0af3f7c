#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "proxpoint/ista.hpp"
#include "proxpoint/ppp.hpp"

namespace proxpoint::io {

/// Writes "n,inner_iters,psi,norm_v,norm_eps,mu" and one row per outer
/// iteration, floating point with 15 significant digits.
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows);

/// ISTA trace in the same schema: one row per iteration with inner_iters = 1,
/// norm_v the gradient-mapping norm ||u_k - u_{k+1}|| / s and mu = 0.
std::vector<TraceRow> ista_trace_rows(const IstaResult& result, double step_size);

void write_vector_csv(const std::string& path, const Vector& v);
Vector read_vector_csv(const std::string& path);

/// Row-major, header-free matrix of comma-separated values.
Matrix read_dense_csv(const std::string& path);

/// Binary (P5) 8-bit PGM, max-normalized: values are scaled by 255/max and
/// clamped below at 0; an all-nonpositive image comes out black.
void write_pgm(const std::string& path, const Vector& image, Index rows, Index cols);

std::string format_double(double x);  // %.15g

}  // namespace proxpoint::io
