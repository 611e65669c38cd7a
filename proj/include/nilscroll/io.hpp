#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilscroll/curves.hpp"
#include "nilscroll/mat3.hpp"
#include "nilscroll/verify.hpp"

namespace nilscroll {

/// CSV with a header row; returns named columns. All rows must be complete.
std::map<std::string, std::vector<double>> load_csv(const std::string& path);

/// Sampled curve `s,x1,x2,x3` (strictly increasing s) as a spline-backed
/// Nil3 curve; `s,B1,B2,B3` loads the same way for rulings.
struct SampledColumns {
    std::vector<double> s;
    std::vector<FrameVector> v;
    Span span() const { return {s.front(), s.back()}; }
};

SampledColumns load_sampled_curve(const std::string& path, const std::string& c1,
                                  const std::string& c2, const std::string& c3);

/// `s,k1` (or any single named column over s).
ScalarFn load_sampled_scalar(const std::string& path, const std::string& column, Span* span);

/// 9-number row-major JSON array.
Mat3 load_matrix_json(const std::string& path);

/// Mesh rows `s,t,x1,x2,x3`, one per sample, fixed 9 significant digits.
void write_mesh_csv(const std::string& path, const MapFn& f, const GridSpec& grid);

/// OBJ with a regular quad grid; coordinates are written as Euclidean R^3
/// positions (exp is a global diffeomorphism onto R^3).
void write_mesh_obj(const std::string& path, const MapFn& f, const GridSpec& grid);

void write_text(const std::string& path, const std::string& content);

/// Test-runner-compatible summary of one or more reports.
std::string junit_xml(const std::vector<VerificationReport>& reports);

}  // namespace nilscroll
